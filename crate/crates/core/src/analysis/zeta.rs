//! Genus from point counts over constant field extensions, by recovering the
//! numerator `L(T)` of the zeta function and checking its functional equation.

use crate::gf::{FiniteField, MAX_FIELD_SIZE};
use crate::tower::TowerSpec;

use super::count::count_unguarded;
use super::AnalysisError;

/// Bound on `Q^{2G} [T_j : T_1]`.
pub const ZETA_WORK_LIMIT: u64 = 100_000_000;

/// Smallest `g <= max_genus` whose `L`-polynomial, determined by `N_1, ..., N_{2G}`
/// through Newton's identities, has degree `2g` and satisfies
/// `a_{2g-j} = Q^{g-j} a_j`.
pub fn zeta_genus_oracle(spec: &TowerSpec, level: usize, max_genus: u64) -> Result<u64, AnalysisError> {
    let base = spec.field();
    let q = base.size() as i128;
    let s_max = (2 * max_genus) as u32;
    let mut deg: u64 = 1;
    for i in 0..level.saturating_sub(1) {
        deg = deg.saturating_mul(spec.step(i).degree());
    }
    let top = base.size().checked_pow(s_max).unwrap_or(u64::MAX);
    if top.saturating_mul(deg) > ZETA_WORK_LIMIT || top > MAX_FIELD_SIZE {
        return Err(AnalysisError::ScaleExceeded(format!(
            "Q^{s_max} [T_{level} : T_1] = {} exceeds the zeta budget",
            top.saturating_mul(deg)
        )));
    }
    let mut power_sums = Vec::with_capacity(s_max as usize);
    for s in 1..=s_max {
        let n_s = if s == 1 {
            count_unguarded(spec, level, false)?.total
        } else {
            let big = FiniteField::of(base.characteristic(), base.degree() * s);
            count_unguarded(&spec.base_change(&big)?, level, false)?.total
        };
        power_sums.push(q.pow(s) + 1 - n_s as i128);
    }
    let inconsistent = AnalysisError::NoConsistentGenus(max_genus);
    // j a_j = -sum_{i=1}^{j} S_i a_{j-i}
    let mut a: Vec<i128> = vec![1];
    for j in 1..=s_max as usize {
        let sum: i128 = (1..=j).map(|i| power_sums[i - 1] * a[j - i]).sum();
        if sum % j as i128 != 0 {
            return Err(inconsistent);
        }
        a.push(-sum / j as i128);
    }
    for g in 0..=max_genus as usize {
        let tail_zero = a[2 * g + 1..].iter().all(|&x| x == 0);
        let symmetric = (0..=g).all(|j| a[2 * g - j] == q.pow((g - j) as u32) * a[j]);
        if tail_zero && symmetric {
            return Ok(g as u64);
        }
    }
    Err(inconsistent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{RatFunc, UPoly};
    use crate::tower::{AsLhs, StepSpec};

    #[test]
    fn elliptic_curve_over_f4() {
        let f4 = FiniteField::of(2, 2);
        let lhs = AsLhs::trace_form(&f4, 2, 2).unwrap();
        let rhs = RatFunc::from_poly(UPoly::monomial(&f4, f4.one(), 3));
        let spec = TowerSpec::new(&f4, 2, 2, vec![StepSpec::artin_schreier(lhs, rhs)], "y^2+y=x^3").unwrap();
        assert_eq!(count_unguarded(&spec, 2, false).unwrap().total, 9);
        assert_eq!(zeta_genus_oracle(&spec, 2, 2).unwrap(), 1);
        assert_eq!(zeta_genus_oracle(&spec, 1, 2).unwrap(), 0);
    }
}
