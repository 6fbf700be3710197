use std::fmt;

use super::{PolyError, UPoly};
use crate::gf::{Elem, Embedding, FiniteField};

/// Reduced quotient `num/den` with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self, PolyError> {
        if num.field() != den.field() {
            return Err(PolyError::CtxMismatch);
        }
        if den.is_zero() {
            return Err(PolyError::DivisionByZeroPoly);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(RatFunc { num, den: UPoly::one(&field) });
        }
        let g = num.gcd(&den)?;
        let num = num.exact_div(&g)?;
        let den = den.exact_div(&g)?;
        let lc_inv = field.inv(den.lc())?;
        Ok(RatFunc { num: num.scale(lc_inv), den: den.scale(lc_inv) })
    }

    pub fn from_poly(p: UPoly) -> Self {
        let one = UPoly::one(p.field());
        RatFunc { num: p, den: one }
    }

    pub fn constant(field: &FiniteField, c: Elem) -> Self {
        Self::from_poly(UPoly::constant(field, c))
    }

    pub fn field(&self) -> &FiniteField {
        self.num.field()
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// `None` at a pole.
    pub fn eval(&self, x: Elem) -> Option<Elem> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        self.field().div(self.num.eval(x), d).ok()
    }

    /// `max(deg num, deg den)`: the degree of the induced map on the projective line.
    pub fn height(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// Valuation at the place of a monic irreducible `pi`. `i64::MAX` for zero.
    pub fn valuation_at(&self, pi: &UPoly) -> Result<i64, PolyError> {
        if self.is_zero() {
            return Ok(i64::MAX);
        }
        Ok(poly_valuation(&self.num, pi)? - poly_valuation(&self.den, pi)?)
    }

    pub fn valuation_at_point(&self, a: Elem) -> Result<i64, PolyError> {
        let f = self.field();
        let pi = UPoly::new(f, vec![f.neg(a), f.one()]);
        self.valuation_at(&pi)
    }

    /// `deg den - deg num`.
    pub fn valuation_at_infinity(&self) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        self.den.deg_i64() - self.num.deg_i64()
    }

    /// Leading coefficient of the expansion in `1/x` at infinity.
    pub fn leading_at_infinity(&self) -> Elem {
        self.num.lc()
    }

    pub fn try_add(&self, o: &RatFunc) -> Result<RatFunc, PolyError> {
        let n = self.num.try_mul(&o.den)?.try_add(&o.num.try_mul(&self.den)?)?;
        RatFunc::new(n, self.den.try_mul(&o.den)?)
    }

    pub fn try_sub(&self, o: &RatFunc) -> Result<RatFunc, PolyError> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &RatFunc) -> Result<RatFunc, PolyError> {
        RatFunc::new(self.num.try_mul(&o.num)?, self.den.try_mul(&o.den)?)
    }

    pub fn try_div(&self, o: &RatFunc) -> Result<RatFunc, PolyError> {
        if o.is_zero() {
            return Err(PolyError::DivisionByZeroPoly);
        }
        RatFunc::new(self.num.try_mul(&o.den)?, self.den.try_mul(&o.num)?)
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: Elem) -> RatFunc {
        if c.is_zero() {
            return RatFunc::from_poly(UPoly::zero(self.field()));
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn map_into(&self, emb: &Embedding) -> RatFunc {
        RatFunc { num: self.num.map_into(emb), den: self.den.map_into(emb) }
    }

    pub fn has_coeffs_in(&self, q: u64) -> Result<bool, crate::gf::FieldError> {
        Ok(self.num.has_coeffs_in(q)? && self.den.has_coeffs_in(q)?)
    }
}

/// Multiplicity of `pi` in `f` (`f` nonzero).
pub(crate) fn poly_valuation(f: &UPoly, pi: &UPoly) -> Result<i64, PolyError> {
    let mut v = 0;
    let mut g = f.clone();
    loop {
        let (q, r) = g.divmod(pi)?;
        if !r.is_zero() || g.is_zero() {
            return Ok(v);
        }
        v += 1;
        g = q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalises() {
        let f = FiniteField::of(3, 1);
        // (2x^2 + 2x) / (2x) = x + 1
        let r = RatFunc::new(UPoly::from_ints(&f, &[0, 2, 2]), UPoly::from_ints(&f, &[0, 2])).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &UPoly::from_ints(&f, &[1, 1]));
    }

    #[test]
    fn valuations() {
        let f = FiniteField::of(3, 1);
        // x^2 / (x-1)^3
        let num = UPoly::from_ints(&f, &[0, 0, 1]);
        let den = UPoly::from_ints(&f, &[-1, 1]).pow(3);
        let r = RatFunc::new(num, den).unwrap();
        assert_eq!(r.valuation_at_point(f.zero()).unwrap(), 2);
        assert_eq!(r.valuation_at_point(f.one()).unwrap(), -3);
        assert_eq!(r.valuation_at_point(f.from_int(2)).unwrap(), 0);
        assert_eq!(r.valuation_at_infinity(), 1);
        assert_eq!(r.eval(f.one()), None);
    }

    #[test]
    fn field_ops_round_trip() {
        let f = FiniteField::of(5, 1);
        let a = RatFunc::new(UPoly::from_ints(&f, &[1, 2]), UPoly::from_ints(&f, &[3, 0, 1])).unwrap();
        let b = RatFunc::new(UPoly::from_ints(&f, &[0, 1]), UPoly::from_ints(&f, &[1, 1])).unwrap();
        let s = a.try_add(&b).unwrap();
        assert_eq!(s.try_sub(&b).unwrap(), a);
        assert_eq!(a.try_mul(&b).unwrap().try_div(&b).unwrap(), a);
    }
}
