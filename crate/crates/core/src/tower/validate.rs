//! Irreducibility evidence for each step, tried in order: a valuation witness at a
//! tracked place, the syntactic corollary, the brute-force oracle.

use std::fmt;

use num_integer::Integer;

use crate::gf::{Elem, FiniteField, MAX_FIELD_SIZE};
use crate::poly::{
    bivariate_irreducible_bruteforce, corollary_irreducible, factor_univariate, is_linearized_image,
    roots, CorollaryVerdict, ImageVerdict, PolyError,
};

use super::classify::LocalDatum;
use super::fiber::{walk_from, FiberTables};
use super::local::{lift_with_retry, rhs_datum, LocalPlace, Start};
use super::spec::{StepKind, StepSpec, TowerSpec};
use super::TowerError;

/// Largest constant field searched for witnesses after base change.
const WITNESS_FIELD_LIMIT: u64 = 1 << 14;
/// Local trees built per constant field while searching.
const WITNESS_START_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tier {
    ValuationWitness,
    Corollary,
    BruteForce,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::ValuationWitness => "valuation witness",
            Tier::Corollary => "corollary",
            Tier::BruteForce => "brute-force oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepEvidence {
    /// One-based: step `i` adjoins `x_{i+1}`.
    pub step: usize,
    pub tier: Tier,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidatedTower {
    spec: TowerSpec,
    evidence: Vec<StepEvidence>,
}

impl ValidatedTower {
    pub fn spec(&self) -> &TowerSpec {
        &self.spec
    }

    /// Number of validated steps.
    pub fn depth(&self) -> usize {
        self.evidence.len()
    }

    /// Highest level whose function field is known to exist.
    pub fn max_level(&self) -> usize {
        self.evidence.len() + 1
    }

    pub fn evidence(&self) -> &[StepEvidence] {
        &self.evidence
    }

    pub fn summary(&self) -> String {
        let mut tiers: Vec<Tier> = Vec::new();
        for e in &self.evidence {
            if !tiers.contains(&e.tier) {
                tiers.push(e.tier);
            }
        }
        let names: Vec<String> = tiers.iter().map(Tier::to_string).collect();
        let label = if names.len() == 1 { "tier" } else { "tiers" };
        format!("{} steps validated ({label}: {})", self.evidence.len(), names.join(", "))
    }
}

/// Validates the first `depth` steps.
pub fn build_tower(spec: &TowerSpec, depth: usize) -> Result<ValidatedTower, TowerError> {
    if depth == 0 {
        return Err(TowerError::InvalidStep("depth must be at least 1".into()));
    }
    let mut evidence = Vec::with_capacity(depth);
    for i in 0..depth {
        let (tier, detail) = if i == 0 { validate_first(spec)? } else { validate_later(spec, i)? };
        evidence.push(StepEvidence { step: i + 1, tier, detail });
    }
    Ok(ValidatedTower { spec: spec.clone(), evidence })
}

fn place_name(field: &FiniteField, factor: &crate::poly::UPoly) -> String {
    if factor.degree() == Some(1) {
        format!("x_1 = {}", field.fmt_elem(field.neg(factor.coeff(0))))
    } else {
        format!("the place {factor}")
    }
}

/// The first right-hand side lives in `F_Q(x_1)`, where every place is visible.
fn validate_first(spec: &TowerSpec) -> Result<(Tier, String), TowerError> {
    let step = spec.step(0);
    let field = spec.field();
    let p = field.characteristic();
    let rhs = &step.rhs;
    let mut vals: Vec<(i64, String)> = vec![(rhs.valuation_at_infinity(), "P_inf".to_string())];
    for (g, mult) in factor_univariate(rhs.num())? {
        vals.push((mult as i64, place_name(field, &g)));
    }
    for (g, mult) in factor_univariate(rhs.den())? {
        vals.push((-(mult as i64), place_name(field, &g)));
    }
    match &step.kind {
        StepKind::Kummer { k } => {
            if let Some((v, at)) = vals.iter().find(|(v, _)| v.unsigned_abs().gcd(k) == 1) {
                return Ok((Tier::ValuationWitness, format!("v = {v} at {at}, prime to {k}")));
            }
            let g = vals.iter().fold(*k, |g, (v, _)| g.gcd(&v.unsigned_abs()));
            if g == 1 {
                let list: Vec<String> = vals.iter().map(|(v, at)| format!("{v} at {at}")).collect();
                return Ok((Tier::ValuationWitness, format!("valuations {} have gcd 1 with {k}", list.join(", "))));
            }
            Err(TowerError::InvalidStep(format!(
                "every valuation of the rhs is divisible by {g}, a divisor of k = {k}"
            )))
        }
        StepKind::ArtinSchreier(lhs) => {
            if let Some((v, at)) = vals.iter().find(|(v, _)| *v < 0 && v.unsigned_abs() % p != 0) {
                return Ok((Tier::ValuationWitness, format!("pole of order {} at {at}, prime to {p}", -v)));
            }
            if !rhs.is_polynomial() {
                return Err(TowerError::IrreducibilityUnverified { step: 1 });
            }
            let poly = lhs.poly();
            if !poly.splits() {
                return Err(TowerError::IrreducibilityUnverified { step: 1 });
            }
            let f = rhs.num().scale(field.inv(poly.expanded().lc())?);
            if let CorollaryVerdict::Irreducible { d } = corollary_irreducible(&f) {
                return Ok((Tier::Corollary, format!("term of degree {d} prime to {p} without p-power multiples")));
            }
            match bivariate_irreducible_bruteforce(poly.support(), &f) {
                Ok(true) => return Ok((Tier::BruteForce, "no index-p quotient reduces to a constant".into())),
                Ok(false) => return Err(TowerError::LinearizedImage),
                Err(PolyError::SearchTooLarge(_)) => {}
                Err(e) => return Err(e.into()),
            }
            match is_linearized_image(&f, poly.support()) {
                Ok(ImageVerdict::Irreducible) => {
                    Ok((Tier::BruteForce, "no proper subgroup gives a linearized preimage".into()))
                }
                Ok(ImageVerdict::Reducible { .. }) => Err(TowerError::LinearizedImage),
                Err(PolyError::SearchTooLarge(_)) => Err(TowerError::IrreducibilityUnverified { step: 1 }),
                Err(e) => Err(e.into()),
            }
        }
    }
}

/// Accumulates valuations seen at tracked places until one certifies the step.
struct WitnessSearch {
    p: u64,
    kummer_gcd: u64,
    seen: Vec<String>,
}

impl WitnessSearch {
    fn offer(&mut self, step: &StepSpec, datum: LocalDatum, at: &str) -> Option<String> {
        let v = datum.valuation;
        match &step.kind {
            StepKind::ArtinSchreier(_) => (v < 0 && !v.unsigned_abs().is_multiple_of(self.p))
                .then(|| format!("pole of order {} at {at}, prime to {}", -v, self.p)),
            StepKind::Kummer { k } => {
                if v.unsigned_abs().gcd(k) == 1 {
                    return Some(format!("v = {v} at {at}, prime to {k}"));
                }
                self.kummer_gcd = self.kummer_gcd.gcd(&v.unsigned_abs());
                self.seen.push(format!("{v} at {at}"));
                (self.kummer_gcd == 1)
                    .then(|| format!("valuations {} have gcd 1 with {k}", self.seen.join(", ")))
            }
        }
    }

    fn offer_places(&mut self, step: &StepSpec, places: &[LocalPlace], what: &str) -> Option<String> {
        for pl in places {
            let Ok(d) = rhs_datum(step, pl) else { continue };
            if let Some(found) = self.offer(step, d, what) {
                return Some(found);
            }
        }
        None
    }
}

fn describe_start(field: &FiniteField, start: Start, level: usize) -> String {
    match start {
        Start::Infinity => format!("a level-{level} place above P_inf over F_{}", field.size()),
        Start::Point(a) => format!("a level-{level} place above x_1 = {} over F_{}", field.fmt_elem(a), field.size()),
    }
}

/// Later right-hand sides are checked at degree-one places of the level below,
/// first over `F_Q`, then over `F_{Q^2}`. Starts are chosen where a residue walk
/// meets a pole or a zero of the right-hand side.
fn validate_later(spec: &TowerSpec, i: usize) -> Result<(Tier, String), TowerError> {
    let level = i + 1;
    let base = spec.field();
    let step = spec.step(i);
    let k0 = match &step.kind {
        StepKind::Kummer { k } => *k,
        StepKind::ArtinSchreier(_) => 0,
    };
    let mut search = WitnessSearch { p: base.characteristic(), kummer_gcd: k0, seen: Vec::new() };
    for s in 1..=2u32 {
        let size = base.size().checked_pow(s).unwrap_or(u64::MAX);
        if s > 1 && (size > WITNESS_FIELD_LIMIT || size > MAX_FIELD_SIZE) {
            break;
        }
        let over = if s == 1 {
            spec.clone()
        } else {
            spec.base_change(&FiniteField::of(base.characteristic(), base.degree() * s))?
        };
        let field = over.field().clone();
        let step_here = over.step(i).clone();
        if let Ok(tree) = lift_with_retry(&over, Start::Infinity, level) {
            let what = describe_start(&field, Start::Infinity, level);
            if let Some(found) = search.offer_places(&step_here, tree.places_at(level), &what) {
                return Ok((Tier::ValuationWitness, found));
            }
        }
        let mut interesting: Vec<Elem> = roots(step_here.rhs.den())?;
        if k0 > 0 {
            interesting.extend(roots(step_here.rhs.num())?);
        }
        let tables = FiberTables::new(&over);
        let mut tried = 0;
        for a in field.elements() {
            let walk = walk_from(&over, &tables, a, level);
            let hit = !walk.special.is_empty()
                || walk.etale.iter().any(|t| interesting.contains(t.last().expect("non-empty")));
            if !hit {
                continue;
            }
            tried += 1;
            if tried > WITNESS_START_LIMIT {
                break;
            }
            let Ok(tree) = lift_with_retry(&over, Start::Point(a), level) else { continue };
            let what = describe_start(&field, Start::Point(a), level);
            if let Some(found) = search.offer_places(&step_here, tree.places_at(level), &what) {
                return Ok((Tier::ValuationWitness, found));
            }
        }
    }
    Err(TowerError::IrreducibilityUnverified { step: i + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{RatFunc, UPoly};
    use crate::tower::{family_tower_a, AsLhs, Family, FamilyParams};

    #[test]
    fn family_a_depth_three() {
        let spec = family_tower_a(&FamilyParams::new(Family::A, 2, 2, 1).unwrap()).unwrap();
        let t = build_tower(&spec, 3).unwrap();
        assert_eq!(t.summary(), "3 steps validated (tier: valuation witness)");
    }

    #[test]
    fn as_pole_at_infinity() {
        let f4 = FiniteField::of(2, 2);
        let lhs = AsLhs::trace_form(&f4, 2, 2).unwrap();
        let rhs = RatFunc::from_poly(UPoly::monomial(&f4, f4.one(), 3));
        let spec = TowerSpec::new(&f4, 2, 2, vec![StepSpec::artin_schreier(lhs, rhs)], "x^3").unwrap();
        let t = build_tower(&spec, 1).unwrap();
        assert_eq!(t.evidence()[0].tier, Tier::ValuationWitness);
        assert!(t.evidence()[0].detail.contains("P_inf"));
    }

    #[test]
    fn kummer_power_is_rejected() {
        let f4 = FiniteField::of(2, 2);
        let w = UPoly::from_ints(&f4, &[1, 1, 1]).pow(3);
        let spec = TowerSpec::new(&f4, 2, 2, vec![StepSpec::kummer(3, RatFunc::from_poly(w))], "cube").unwrap();
        assert!(matches!(build_tower(&spec, 1), Err(TowerError::InvalidStep(_))));
    }
}
