//! The two Kummer families `x_{i+1}^k + z_i^k = c_i` with `z_i = a_i x_i^{r_i} + b_i`.

use crate::gf::{Elem, FiniteField};
use crate::poly::{RatFunc, UPoly};

use super::spec::{StepSpec, TowerSpec};
use super::TowerError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `x_{i+1}^{k_m} + z_i^{k_m} = b_i^{k_m}`, `k_m = (p^n - 1)/(p^m - 1)`.
    A,
    /// `x_{i+1}^{l_m} + z_i^{l_m} = 1`, `l_m = p^m - 1`.
    B,
}

/// Parameters of a family tower over `F_{p^n}`. Coefficient sequences shorter than
/// the depth repeat their last entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub family: Family,
    pub p: u64,
    pub n: u32,
    pub m: u32,
    field: FiniteField,
    pub a: Vec<Elem>,
    pub b: Vec<Elem>,
    /// `r_i` for family A, `s_i` for family B.
    pub exps: Vec<u64>,
}

impl FamilyParams {
    /// `a = b = 1`, exponent 1.
    pub fn new(family: Family, p: u64, n: u32, m: u32) -> Result<Self, TowerError> {
        if n == 0 || m == 0 || !n.is_multiple_of(m) {
            return Err(TowerError::InvalidParams(format!("m = {m} must divide n = {n}")));
        }
        let field = FiniteField::new(p, n, None).map_err(|e| TowerError::InvalidParams(e.to_string()))?;
        let one = field.one();
        Ok(FamilyParams { family, p, n, m, field, a: vec![one], b: vec![one], exps: vec![1] })
    }

    pub fn with_coefficients(mut self, a: Vec<Elem>, b: Vec<Elem>, exps: Vec<u64>) -> Self {
        self.a = a;
        self.b = b;
        self.exps = exps;
        self
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// `p^m`.
    pub fn subfield_size(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// `k_m` for family A, `l_m` for family B.
    pub fn exponent(&self) -> u64 {
        let qm = self.subfield_size();
        match self.family {
            Family::A => (self.field.size() - 1) / (qm - 1),
            Family::B => qm - 1,
        }
    }

    fn at<T: Copy>(v: &[T], i: usize) -> T {
        v[i.min(v.len() - 1)]
    }

    fn validate(&self) -> Result<(), TowerError> {
        let qm = self.subfield_size();
        match self.family {
            Family::A if self.m == self.n => {
                return Err(TowerError::InvalidParams("family A needs m != n".into()))
            }
            Family::B if self.field.size() <= 4 => {
                return Err(TowerError::InvalidParams("family B needs p^n > 4".into()))
            }
            _ => {}
        }
        if self.exponent() < 2 {
            return Err(TowerError::InvalidParams(format!("exponent {} is below 2", self.exponent())));
        }
        if self.a.is_empty() || self.b.is_empty() || self.exps.is_empty() {
            return Err(TowerError::InvalidParams("empty coefficient sequence".into()));
        }
        for (name, seq) in [("a", &self.a), ("b", &self.b)] {
            for &c in seq.iter() {
                if c.is_zero() || !self.field.is_in_subfield(c, qm)? {
                    return Err(TowerError::InvalidParams(format!(
                        "{name} = {} is not a nonzero element of F_{qm}",
                        self.field.fmt_elem(c)
                    )));
                }
            }
        }
        for &r in &self.exps {
            let mut t = r;
            while t > 1 && t % self.p == 0 {
                t /= self.p;
            }
            if t != 1 {
                return Err(TowerError::InvalidParams(format!("exponent {r} is not a power of {}", self.p)));
            }
        }
        Ok(())
    }

    fn steps(&self) -> Vec<StepSpec> {
        let f = &self.field;
        let k = self.exponent();
        let len = self.a.len().max(self.b.len()).max(self.exps.len());
        (0..len)
            .map(|i| {
                let (a, b, r) = (Self::at(&self.a, i), Self::at(&self.b, i), Self::at(&self.exps, i));
                let z = UPoly::from_terms(f, &[(r as usize, a), (0, b)]);
                let c = match self.family {
                    Family::A => f.pow(b, k),
                    Family::B => f.one(),
                };
                let rhs = &UPoly::constant(f, c) - &z.pow(k);
                StepSpec::kummer(k, RatFunc::from_poly(rhs))
            })
            .collect()
    }

    fn build(&self, expect: Family) -> Result<TowerSpec, TowerError> {
        if self.family != expect {
            return Err(TowerError::InvalidParams(format!("parameters are for family {:?}", self.family)));
        }
        self.validate()?;
        let label = format!(
            "family {:?} p={} n={} m={}",
            self.family, self.p, self.n, self.m
        );
        TowerSpec::new(&self.field, self.subfield_size(), self.n / self.m, self.steps(), label)
    }
}

pub fn family_tower_a(params: &FamilyParams) -> Result<TowerSpec, TowerError> {
    params.build(Family::A)
}

pub fn family_tower_b(params: &FamilyParams) -> Result<TowerSpec, TowerError> {
    params.build(Family::B)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_equations() {
        let pa = FamilyParams::new(Family::A, 2, 2, 1).unwrap();
        let ta = family_tower_a(&pa).unwrap();
        let f4 = ta.field().clone();
        // 1 - (x + 1)^3 = x^3 + x^2 + x in characteristic 2
        assert_eq!(ta.step(0).rhs.num(), &UPoly::from_ints(&f4, &[0, 1, 1, 1]));
        assert_eq!(ta.step(0).degree(), 3);
        let pb = FamilyParams::new(Family::B, 3, 2, 1).unwrap();
        let tb = family_tower_b(&pb).unwrap();
        let f9 = tb.field().clone();
        // 1 - (x + 1)^2 = -x^2 - 2x
        assert_eq!(tb.step(0).rhs.num(), &UPoly::from_ints(&f9, &[0, -2, -1]));
        assert_eq!(tb.step(0).degree(), 2);
    }

    #[test]
    fn invalid_parameters() {
        let pa = FamilyParams::new(Family::A, 2, 2, 2).unwrap();
        assert!(matches!(family_tower_a(&pa), Err(TowerError::InvalidParams(_))));
        assert!(matches!(FamilyParams::new(Family::A, 2, 3, 2), Err(TowerError::InvalidParams(_))));
        let pb = FamilyParams::new(Family::B, 2, 2, 1).unwrap();
        assert!(matches!(family_tower_b(&pb), Err(TowerError::InvalidParams(_))));
        let f4 = FiniteField::of(2, 2);
        let omega = f4.from_coeffs(&[0, 1]).unwrap();
        let bad = FamilyParams::new(Family::A, 2, 2, 1).unwrap().with_coefficients(vec![omega], vec![f4.one()], vec![1]);
        assert!(matches!(family_tower_a(&bad), Err(TowerError::InvalidParams(_))));
        let bad_exp = FamilyParams::new(Family::A, 2, 2, 1).unwrap().with_coefficients(vec![f4.one()], vec![f4.one()], vec![3]);
        assert!(matches!(family_tower_a(&bad_exp), Err(TowerError::InvalidParams(_))));
    }
}
