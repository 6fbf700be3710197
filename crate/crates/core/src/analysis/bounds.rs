//! Closed-form bounds for the Kummer families and the Drinfeld–Vladut bound.

use num_rational::Rational64;

use crate::gf::prime_factors;

use super::AnalysisError;

fn check_prime_power(q: u64) -> Result<(), AnalysisError> {
    if q < 2 || prime_factors(q).len() != 1 {
        return Err(AnalysisError::InvalidArgument(format!("{q} is not a prime power")));
    }
    Ok(())
}

/// `(q - 2)(k^{j-1} - 1) / 2`, a strict upper bound for `g(T_j)` in family A.
pub fn genus_bound_family_a(q: u64, k: u64, j: u32) -> Result<Rational64, AnalysisError> {
    check_prime_power(q)?;
    if j == 0 {
        return Err(AnalysisError::InvalidArgument("levels start at 1".into()));
    }
    let kj = (k as i64).checked_pow(j - 1).ok_or_else(|| AnalysisError::ScaleExceeded("k^(j-1) overflows".into()))?;
    Ok(Rational64::new((q as i64 - 2) * (kj - 1), 2))
}

/// `2 / (q - 2)`.
pub fn lambda_bound_family_a(q: u64) -> Result<Rational64, AnalysisError> {
    check_prime_power(q)?;
    if q <= 2 {
        return Err(AnalysisError::InvalidArgument("family A needs q > 2".into()));
    }
    Ok(Rational64::new(2, q as i64 - 2))
}

/// `2 / (l_m - 1)`.
pub fn lambda_bound_family_b(l: u64) -> Result<Rational64, AnalysisError> {
    if l < 2 {
        return Err(AnalysisError::InvalidArgument("family B needs l_m >= 2".into()));
    }
    Ok(Rational64::new(2, l as i64 - 1))
}

/// Both forms of the different bound at level `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegDiffBound {
    /// `q (k - 1)(1 + k + ... + k^{j-2})`.
    pub transitive: u64,
    /// `q (k^{j-1} - 1)`.
    pub simplified: u64,
}

pub fn degdiff_bound_family_a(q: u64, k: u64, j: u32) -> Result<DegDiffBound, AnalysisError> {
    check_prime_power(q)?;
    if j < 2 {
        return Err(AnalysisError::InvalidArgument("the different bound starts at level 2".into()));
    }
    let series: u64 = (0..=j - 2).map(|i| k.pow(i)).sum();
    Ok(DegDiffBound { transitive: q * (k - 1) * series, simplified: q * (k.pow(j - 1) - 1) })
}

/// `sqrt(q) - 1`.
pub fn dv_bound(q: u64) -> Result<f64, AnalysisError> {
    check_prime_power(q)?;
    Ok((q as f64).sqrt() - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances() {
        assert_eq!(genus_bound_family_a(4, 3, 3).unwrap(), Rational64::from_integer(8));
        assert_eq!(lambda_bound_family_a(4).unwrap(), Rational64::from_integer(1));
        assert_eq!(lambda_bound_family_b(2).unwrap(), Rational64::from_integer(2));
        assert_eq!(degdiff_bound_family_a(4, 3, 2).unwrap(), DegDiffBound { transitive: 8, simplified: 8 });
        assert_eq!(degdiff_bound_family_a(4, 3, 3).unwrap(), DegDiffBound { transitive: 32, simplified: 32 });
        assert_eq!(dv_bound(4).unwrap(), 1.0);
        assert_eq!(dv_bound(9).unwrap(), 2.0);
        assert!(dv_bound(1).is_err());
        assert!(dv_bound(6).is_err());
    }
}
