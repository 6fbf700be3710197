//! Genus of `T_2` from the Hurwitz formula, and a recursive upper bound beyond.

use num_integer::Integer;
use num_rational::Rational64;

use crate::poly::factor_univariate;
use crate::tower::{StepKind, TowerError, TowerSpec};

use super::AnalysisError;

#[derive(Clone, Debug, PartialEq)]
pub struct GenusReport {
    pub level: usize,
    pub exact: Option<u64>,
    pub deg_diff: u64,
    pub deg_diff_exact: bool,
    /// Family formula, when the tower belongs to a family.
    pub upper_bound: Option<Rational64>,
    pub lambda_bound: Option<Rational64>,
    pub dv_bound: Option<f64>,
    /// `(place, deg P * d_P)` for each ramified place of `T_1`.
    pub contributions: Vec<(String, u64)>,
}

/// `2g - 2 = [T_2 : T_1](-2) + degDiff`, with the different read off the zeros and
/// poles of the first right-hand side.
pub fn genus_level2_exact(spec: &TowerSpec) -> Result<GenusReport, AnalysisError> {
    let step = spec.step(0);
    let rhs = &step.rhs;
    let field = spec.field();
    let p = field.characteristic();
    let big_d = step.degree();
    let mut places: Vec<(String, u64, i64)> = vec![("P_inf".into(), 1, rhs.valuation_at_infinity())];
    for (g, mult) in factor_univariate(rhs.num())? {
        places.push((g.to_string(), g.degree().unwrap_or(0) as u64, mult as i64));
    }
    for (g, mult) in factor_univariate(rhs.den())? {
        places.push((g.to_string(), g.degree().unwrap_or(0) as u64, -(mult as i64)));
    }
    let mut contributions = Vec::new();
    for (label, deg, v) in places {
        let d = match &step.kind {
            StepKind::ArtinSchreier(_) if v < 0 => {
                let m = v.unsigned_abs();
                if m % p == 0 {
                    return Err(TowerError::WildUnreduced { m }.into());
                }
                (big_d - 1) * (m + 1)
            }
            StepKind::ArtinSchreier(_) => 0,
            StepKind::Kummer { k } if v != 0 => k - v.unsigned_abs().gcd(k),
            StepKind::Kummer { .. } => 0,
        };
        if d > 0 {
            contributions.push((label, deg * d));
        }
    }
    let deg_diff: u64 = contributions.iter().map(|c| c.1).sum();
    let two_g_minus_2 = deg_diff as i64 - 2 * big_d as i64;
    if two_g_minus_2 < -2 || two_g_minus_2 % 2 != 0 {
        return Err(AnalysisError::NonIntegralGenus(two_g_minus_2));
    }
    Ok(GenusReport {
        level: 2,
        exact: Some(((two_g_minus_2 + 2) / 2) as u64),
        deg_diff,
        deg_diff_exact: true,
        upper_bound: None,
        lambda_bound: None,
        dv_bound: None,
        contributions,
    })
}

/// Upper bound for `g(T_level)` starting from the exact level-2 genus. At each step
/// the different is at most `(D - 1)` times the degree of the support of the
/// right-hand side's divisor, which is at most `2 h [T_i : F_Q(x_i)]` with `h` the
/// height of the right-hand side; and `[T_{i+1} : F_Q(x_{i+1})] = h [T_i : F_Q(x_i)]`.
pub fn genus_bound_recursive(spec: &TowerSpec, level: usize) -> Result<u64, AnalysisError> {
    if level < 2 {
        return Ok(0);
    }
    let mut g = genus_level2_exact(spec)?.exact.expect("exact at level 2") as i128;
    let mut d_here: i128 = spec.step(0).rhs.height() as i128;
    for s in 1..level - 1 {
        let step = spec.step(s);
        let big_d = step.degree() as i128;
        let h = step.rhs.height() as i128;
        g = big_d * (g - 1) + 1 + (big_d - 1) * h * d_here;
        d_here *= h;
        if g > i64::MAX as i128 {
            return Err(AnalysisError::ScaleExceeded("genus bound overflows".into()));
        }
    }
    Ok(g as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FiniteField;
    use crate::poly::{RatFunc, UPoly};
    use crate::tower::{family_tower_a, AsLhs, Family, FamilyParams, StepSpec};

    #[test]
    fn elliptic_as_curve() {
        let f4 = FiniteField::of(2, 2);
        let lhs = AsLhs::trace_form(&f4, 2, 2).unwrap();
        let rhs = RatFunc::from_poly(UPoly::monomial(&f4, f4.one(), 3));
        let spec = TowerSpec::new(&f4, 2, 2, vec![StepSpec::artin_schreier(lhs, rhs)], "y^2+y=x^3").unwrap();
        let r = genus_level2_exact(&spec).unwrap();
        assert_eq!(r.exact, Some(1));
        assert_eq!(r.deg_diff, 4);
    }

    #[test]
    fn family_a_level_two() {
        let spec = family_tower_a(&FamilyParams::new(Family::A, 2, 2, 1).unwrap()).unwrap();
        let r = genus_level2_exact(&spec).unwrap();
        assert_eq!(r.deg_diff, 6);
        assert_eq!(r.exact, Some(1));
        assert!(genus_bound_recursive(&spec, 3).unwrap() >= 1);
    }
}
