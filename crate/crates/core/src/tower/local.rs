//! Places above a chosen degree-one place of the rational function field, followed
//! one step at a time through truncated Laurent expansions.

use num_integer::Integer;

use crate::gf::{Elem, FiniteField};

use super::classify::{classify_as_place, classify_kummer_place, LocalDatum, PlaceClass};
use super::laurent::Laurent;
use super::spec::{AsLhs, StepKind, StepSpec, TowerSpec};
use super::TowerError;

pub const DEFAULT_PRECISION: usize = 32;
pub const MAX_PRECISION: usize = 256;

/// Degree-one place of the rational function field where a chain starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Start {
    /// `x_1 = a`, uniformizer `x_1 - a`.
    Point(Elem),
    /// Pole of `x_1`, uniformizer `1 / x_1`.
    Infinity,
}

/// A degree-one place at some level, as expansions of `x_1, ..., x_i` in a local
/// uniformizer `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPlace {
    pub start: Start,
    pub precision: usize,
    pub xs: Vec<Laurent>,
    /// Ramification index of each step taken so far.
    pub ram: Vec<u64>,
    /// Residue representative chosen at each step.
    pub branch: Vec<Elem>,
}

impl LocalPlace {
    pub fn start(field: &FiniteField, start: Start, precision: usize) -> Self {
        let x1 = match start {
            Start::Point(a) => Laurent::shifted_uniformizer(field, a, precision),
            Start::Infinity => Laurent::monomial(field, field.one(), -1, precision),
        };
        LocalPlace { start, precision, xs: vec![x1], ram: Vec::new(), branch: Vec::new() }
    }

    pub fn level(&self) -> usize {
        self.xs.len()
    }

    pub fn top(&self) -> &Laurent {
        self.xs.last().expect("at least x_1")
    }

    /// Exact valuations of the generators, when known.
    pub fn valuations(&self) -> Vec<Option<i64>> {
        self.xs.iter().map(Laurent::valuation).collect()
    }

    /// `x_i` has valuation >= 0 for every `i`.
    pub fn is_affine(&self) -> bool {
        self.xs.iter().all(|x| x.valuation().map_or(x.abs_prec() >= 0, |v| v >= 0))
    }

    /// Residues `x_i(P)` when the place is affine.
    pub fn residues(&self) -> Option<Vec<Elem>> {
        self.xs
            .iter()
            .map(|x| match x.valuation() {
                Some(v) if v > 0 => Some(Elem::ZERO),
                Some(0) => x.lead(),
                Some(_) => None,
                None => (x.abs_prec() > 0).then_some(Elem::ZERO),
            })
            .collect()
    }

    /// Substitutes `t = s_expr(s)` into every expansion.
    fn reparametrize(&self, s_expr: &Laurent) -> Result<Vec<Laurent>, TowerError> {
        self.xs
            .iter()
            .map(|x| {
                x.compose(s_expr)
                    .map(|c| c.truncate(self.precision))
                    .ok_or(TowerError::PrecisionExhausted)
            })
            .collect()
    }

    fn extended(&self, xs: Vec<Laurent>, y: Laurent, e: u64, branch: Elem) -> LocalPlace {
        let mut xs = xs;
        xs.push(y.truncate(self.precision));
        let mut ram = self.ram.clone();
        ram.push(e);
        let mut br = self.branch.clone();
        br.push(branch);
        LocalPlace { start: self.start, precision: self.precision, xs, ram, branch: br }
    }
}

/// Places of the next level above `place`: the classification of the fiber and
/// expansions for each degree-one place in it.
#[derive(Clone, Debug)]
pub struct Lifted {
    pub class: PlaceClass,
    pub places: Vec<LocalPlace>,
}

fn rhs_series(step: &StepSpec, place: &LocalPlace) -> Result<Laurent, TowerError> {
    place.top().eval_ratfunc(&step.rhs).ok_or(TowerError::PrecisionExhausted)
}

/// Valuation and leading coefficient of the step's right-hand side at `place`.
pub fn rhs_datum(step: &StepSpec, place: &LocalPlace) -> Result<LocalDatum, TowerError> {
    let w = rhs_series(step, place)?;
    match (w.valuation(), w.lead()) {
        (Some(valuation), Some(lead)) => Ok(LocalDatum { valuation, lead }),
        _ => Err(TowerError::PrecisionExhausted),
    }
}

/// Lifts through one step at the place's current precision.
pub fn lift_local_place(step: &StepSpec, place: &LocalPlace) -> Result<Lifted, TowerError> {
    let field = place.top().field().clone();
    let w = rhs_series(step, place)?;
    let (Some(v), Some(c)) = (w.valuation(), w.lead()) else {
        return Err(TowerError::PrecisionExhausted);
    };
    let datum = LocalDatum { valuation: v, lead: c };
    let (class, places) = match &step.kind {
        StepKind::Kummer { k } => {
            let class = classify_kummer_place(&field, *k, datum)?;
            (class, kummer_lift(&field, *k, &w, place)?)
        }
        StepKind::ArtinSchreier(lhs) => {
            let class = classify_as_place(lhs, datum)?;
            let places = if v < 0 {
                vec![as_pole_lift(&field, lhs, &w, place)?]
            } else {
                as_unramified_lift(&field, lhs, &w, place)?
            };
            (class, places)
        }
    };
    Ok(Lifted { class, places })
}

fn bezout(a: i64, b: i64) -> (i64, i64) {
    let r = a.extended_gcd(&b);
    debug_assert_eq!(r.gcd.abs(), 1);
    if r.gcd < 0 {
        (-r.x, -r.y)
    } else {
        (r.x, r.y)
    }
}

/// `y^k = w` with `w = c t^v (1 + ...)`. With `g = gcd(v, k)` and `e = k / g` the
/// degree-one places above correspond to the roots `eta` of `eta^g = c`.
fn kummer_lift(
    field: &FiniteField,
    k: u64,
    w: &Laurent,
    place: &LocalPlace,
) -> Result<Vec<LocalPlace>, TowerError> {
    let v = w.valuation().ok_or(TowerError::PrecisionExhausted)?;
    let c = w.lead().ok_or(TowerError::PrecisionExhausted)?;
    let g = v.unsigned_abs().gcd(&k);
    let e = k / g;
    let v_red = v / g as i64;
    let (alpha, beta) = bezout(v_red, e as i64);
    let n = place.precision;
    let mut out = Vec::new();
    for eta in field.roots_of_power(c, g) {
        let lambda = field.pow_signed(eta, -alpha)?;
        let rho = field.pow_signed(eta, beta)?;
        // t = lambda s^e, y = s^{v/g} Y(s) with Y(0) = rho
        let t_of_s = Laurent::monomial(field, lambda, e as i64, n);
        let xs = place.reparametrize(&t_of_s)?;
        let w_s = w.compose(&t_of_s).ok_or(TowerError::PrecisionExhausted)?;
        let unit = w_s.shift(-v * e as i64);
        let y = unit.nth_root(k, rho).ok_or(TowerError::PrecisionExhausted)?.shift(v_red);
        out.push(place.extended(xs, y, e, eta));
    }
    Ok(out)
}

fn lhs_terms(field: &FiniteField, lhs: &AsLhs) -> Vec<(u64, Elem)> {
    let _ = field;
    lhs.poly().expanded().terms().map(|(d, c)| (d as u64, c)).collect()
}

/// `L(y) = w` with `v(w) >= 0`: residues `y_0` with `L(y_0) = w(0)`, refined by the
/// contraction `delta = (w - w(0) - sum_{deg > 1} a_i delta^deg) / a_1`.
fn as_unramified_lift(
    field: &FiniteField,
    lhs: &AsLhs,
    w: &Laurent,
    place: &LocalPlace,
) -> Result<Vec<LocalPlace>, TowerError> {
    let gamma = w.coeff(0).ok_or(TowerError::PrecisionExhausted)?;
    let terms = lhs_terms(field, lhs);
    let a1 = terms.iter().find(|(d, _)| *d == 1).map(|&(_, c)| c).ok_or(TowerError::LinearizedImage)?;
    let a1_inv = field.inv(a1)?;
    let r = w.add_const(field.neg(gamma));
    let mut delta = r.scale(a1_inv);
    for _ in 0..=2 * place.precision {
        let mut acc = r.clone();
        for &(d, a) in &terms {
            if d > 1 {
                acc = acc.sub(&delta.pow(d).scale(a));
            }
        }
        let next = acc.scale(a1_inv).truncate(place.precision);
        if next == delta {
            break;
        }
        delta = next;
    }
    let mut out = Vec::new();
    for y0 in field.elements().filter(|&y| lhs.poly().apply(y) == gamma) {
        let y = delta.add_const(y0);
        out.push(place.extended(place.xs.clone(), y, 1, y0));
    }
    Ok(out)
}

/// `L(y) = w` with `v(w) = -m`, `p` not dividing `m`: one place, totally ramified of
/// index `D = deg L`. With `y = mu s^{-m}` and `t = s^D sigma(s)` the equation becomes
/// `sigma^m R(s) = W(s^D sigma)` where `W = t^m w`.
fn as_pole_lift(
    field: &FiniteField,
    lhs: &AsLhs,
    w: &Laurent,
    place: &LocalPlace,
) -> Result<LocalPlace, TowerError> {
    let v = w.valuation().ok_or(TowerError::PrecisionExhausted)?;
    let c = w.lead().ok_or(TowerError::PrecisionExhausted)?;
    let m = v.unsigned_abs();
    if m % field.characteristic() == 0 {
        return Err(TowerError::WildUnreduced { m });
    }
    let terms = lhs_terms(field, lhs);
    let (big_d, a_d) = *terms.last().expect("nonzero lhs");
    let (alpha, beta) = bezout(big_d as i64, m as i64);
    let ratio = field.div(c, a_d)?;
    let mu = field.pow_signed(ratio, alpha)?;
    let sigma0 = field.pow_signed(ratio, beta)?;
    let n = place.precision;
    let mut r_coeffs = vec![Elem::ZERO; (m * big_d) as usize + n];
    for &(d, a) in &terms {
        let idx = (m * (big_d - d)) as usize;
        if idx < r_coeffs.len() {
            r_coeffs[idx] = field.mul(a, field.pow(mu, d));
        }
    }
    let r = Laurent::new(field, 0, r_coeffs);
    let unit_w = w.shift(m as i64);
    let mut sigma = Laurent::monomial(field, sigma0, 0, n);
    let mut stable = false;
    for _ in 0..=2 * n {
        let t_of_s = sigma.shift(big_d as i64);
        let lhs_s = unit_w.compose(&t_of_s).ok_or(TowerError::PrecisionExhausted)?;
        let next = lhs_s
            .div(&r)
            .and_then(|q| q.nth_root(m, sigma0))
            .ok_or(TowerError::PrecisionExhausted)?
            .truncate(n);
        if next == sigma {
            stable = true;
            break;
        }
        sigma = next;
    }
    if !stable || sigma.rel_prec() == 0 {
        return Err(TowerError::PrecisionExhausted);
    }
    let t_of_s = sigma.shift(big_d as i64);
    let xs = place.reparametrize(&t_of_s)?;
    let y = Laurent::monomial(field, mu, -(m as i64), n);
    Ok(place.extended(xs, y, big_d, mu))
}

/// All degree-one places up to `level` above `start`, with the classification of
/// each fiber. `fibers[j]` lists the classes of the steps out of `levels[j]`.
#[derive(Clone, Debug)]
pub struct LocalTree {
    pub precision: usize,
    pub levels: Vec<Vec<LocalPlace>>,
    pub fibers: Vec<Vec<PlaceClass>>,
}

impl LocalTree {
    pub fn places_at(&self, level: usize) -> &[LocalPlace] {
        &self.levels[level - 1]
    }
}

fn build_local_tree(
    spec: &TowerSpec,
    start: Start,
    level: usize,
    precision: usize,
) -> Result<LocalTree, TowerError> {
    let root = LocalPlace::start(spec.field(), start, precision);
    let mut levels = vec![vec![root]];
    let mut fibers = Vec::new();
    for j in 1..level {
        let step = spec.step(j - 1);
        let mut next = Vec::new();
        let mut classes = Vec::new();
        for p in &levels[j - 1] {
            let lifted = lift_local_place(step, p)?;
            debug_assert_eq!(lifted.class.degree_sum(), step.degree());
            if lifted.places.len() as u64 != lifted.class.degree_one_count() {
                return Err(TowerError::PrecisionExhausted);
            }
            classes.push(lifted.class);
            next.extend(lifted.places);
        }
        fibers.push(classes);
        levels.push(next);
    }
    Ok(LocalTree { precision, levels, fibers })
}

/// Local tree above `start`, doubling the precision from the spec's starting
/// precision up to [`MAX_PRECISION`] while it is exhausted.
pub fn lift_with_retry(spec: &TowerSpec, start: Start, level: usize) -> Result<LocalTree, TowerError> {
    let mut n = spec.precision();
    loop {
        match build_local_tree(spec, start, level, n) {
            Err(TowerError::PrecisionExhausted) if n < MAX_PRECISION => n *= 2,
            other => return other,
        }
    }
}
