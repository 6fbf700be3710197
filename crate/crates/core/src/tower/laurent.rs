//! Truncated Laurent series `t^val (c_0 + c_1 t + ... ) + O(t^{val + len})`.

use std::fmt;

use crate::gf::{Elem, FiniteField};
use crate::poly::{RatFunc, UPoly};

/// A series known up to absolute order `val + coeffs.len()`. When `coeffs` is
/// empty the series is zero to that order and `val` is the order itself.
#[derive(Clone, PartialEq, Eq)]
pub struct Laurent {
    field: FiniteField,
    val: i64,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .take(6)
            .map(|(i, &c)| format!("{}*t^{}", self.field.fmt_elem(c), self.val + i as i64))
            .collect();
        write!(f, "{} + O(t^{})", terms.join(" + "), self.abs_prec())
    }
}

impl Laurent {
    pub fn new(field: &FiniteField, val: i64, coeffs: Vec<Elem>) -> Self {
        let mut s = Laurent { field: field.clone(), val, coeffs };
        s.normalize();
        s
    }

    /// Zero up to absolute order `abs`.
    pub fn zero(field: &FiniteField, abs: i64) -> Self {
        Laurent { field: field.clone(), val: abs, coeffs: Vec::new() }
    }

    /// `c t^v` with relative precision `prec`.
    pub fn monomial(field: &FiniteField, c: Elem, v: i64, prec: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; prec.max(1)];
        coeffs[0] = c;
        Self::new(field, v, coeffs)
    }

    /// `a + t` with relative precision `prec`.
    pub fn shifted_uniformizer(field: &FiniteField, a: Elem, prec: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; prec.max(2)];
        coeffs[0] = a;
        coeffs[1] = field.one();
        Self::new(field, 0, coeffs)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(i) => {
                self.coeffs.drain(..i);
                self.val += i as i64;
            }
            None => {
                self.val += self.coeffs.len() as i64;
                self.coeffs.clear();
            }
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Exact valuation, or `None` when the series vanishes to the known order.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    pub fn lead(&self) -> Option<Elem> {
        self.coeffs.first().copied()
    }

    pub fn rel_prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn abs_prec(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    /// Coefficient of `t^i`, `None` beyond the known order.
    pub fn coeff(&self, i: i64) -> Option<Elem> {
        if i >= self.abs_prec() {
            None
        } else if i < self.val {
            Some(Elem::ZERO)
        } else {
            Some(self.coeffs[(i - self.val) as usize])
        }
    }

    pub fn truncate(&self, prec: usize) -> Laurent {
        let mut s = self.clone();
        s.coeffs.truncate(prec);
        s
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let abs = self.abs_prec().min(o.abs_prec());
        let v = self.val.min(o.val);
        if abs <= v {
            return Laurent::zero(&self.field, abs);
        }
        let f = &self.field;
        let coeffs = (v..abs)
            .map(|i| f.add(self.coeff(i).unwrap(), o.coeff(i).unwrap()))
            .collect();
        Laurent::new(f, v, coeffs)
    }

    pub fn neg(&self) -> Laurent {
        let f = &self.field;
        Laurent {
            field: f.clone(),
            val: self.val,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    /// Adds an exact constant.
    pub fn add_const(&self, c: Elem) -> Laurent {
        if c.is_zero() || self.abs_prec() <= 0 {
            return self.clone();
        }
        let f = &self.field;
        let v = self.val.min(0);
        let coeffs = (v..self.abs_prec())
            .map(|i| {
                let x = self.coeff(i).unwrap();
                if i == 0 {
                    f.add(x, c)
                } else {
                    x
                }
            })
            .collect();
        Laurent::new(f, v, coeffs)
    }

    pub fn scale(&self, c: Elem) -> Laurent {
        if c.is_zero() {
            return Laurent::zero(&self.field, self.abs_prec());
        }
        let f = &self.field;
        Laurent {
            field: f.clone(),
            val: self.val,
            coeffs: self.coeffs.iter().map(|&x| f.mul(x, c)).collect(),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Laurent {
        let mut s = self.clone();
        s.val += k;
        s
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let f = &self.field;
        match (self.coeffs.is_empty(), o.coeffs.is_empty()) {
            (true, true) => return Laurent::zero(f, self.val + o.val),
            (true, false) => return Laurent::zero(f, self.val + o.val),
            (false, true) => return Laurent::zero(f, self.val + o.val),
            _ => {}
        }
        let n = self.coeffs.len().min(o.coeffs.len());
        let mut out = vec![Elem::ZERO; n];
        for (i, &a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().take(n - i).enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Laurent::new(f, self.val + o.val, out)
    }

    /// Multiplicative inverse; `None` when the series is zero to known order.
    pub fn inv(&self) -> Option<Laurent> {
        let f = &self.field;
        let c0 = *self.coeffs.first()?;
        let n = self.coeffs.len();
        let inv0 = f.inv(c0).ok()?;
        let mut out = vec![Elem::ZERO; n];
        out[0] = inv0;
        for k in 1..n {
            let mut s = Elem::ZERO;
            for j in 1..=k {
                s = f.add(s, f.mul(self.coeffs[j], out[k - j]));
            }
            out[k] = f.neg(f.mul(s, inv0));
        }
        Some(Laurent::new(f, -self.val, out))
    }

    pub fn div(&self, o: &Laurent) -> Option<Laurent> {
        Some(self.mul(&o.inv()?))
    }

    /// `self^{p^s}` computed coefficientwise, which keeps more precision than repeated products.
    pub fn frobenius_power(&self, e: u64) -> Laurent {
        let f = &self.field;
        if self.coeffs.is_empty() {
            return Laurent::zero(f, self.val.saturating_mul(e as i64));
        }
        let e_us = e as usize;
        let mut out = vec![Elem::ZERO; (self.coeffs.len() - 1) * e_us + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * e_us] = f.pow(c, e);
        }
        // (sum_{i<n} c_i t^i + O(t^n))^e is known up to O(t^{ne})
        out.extend(std::iter::repeat_n(Elem::ZERO, e_us - 1));
        Laurent::new(f, self.val * e as i64, out)
    }

    pub fn pow(&self, e: u64) -> Laurent {
        let p = self.field.characteristic();
        if e == 0 {
            return Laurent::monomial(&self.field, self.field.one(), 0, self.coeffs.len().max(1));
        }
        if e.is_multiple_of(p) {
            return self.pow(e / p).frobenius_power(p);
        }
        let mut result: Option<Laurent> = None;
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result.expect("e > 0")
    }

    pub fn pow_signed(&self, e: i64) -> Option<Laurent> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            Some(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// `sum c_i t^i` evaluated at `self`, by Horner.
    pub fn eval_poly(&self, p: &UPoly) -> Laurent {
        let f = &self.field;
        let n = self.coeffs.len().max(1);
        let Some((&top, rest)) = p.coeffs().split_last() else {
            return Laurent::zero(f, n as i64);
        };
        let mut acc = Laurent::monomial(f, top, 0, n);
        for &c in rest.iter().rev() {
            acc = acc.mul(self).add_const(c);
        }
        acc
    }

    pub fn eval_ratfunc(&self, r: &RatFunc) -> Option<Laurent> {
        self.eval_poly(r.num()).div(&self.eval_poly(r.den()))
    }

    /// `self(s)` for a series `s` of positive valuation.
    pub fn compose(&self, s: &Laurent) -> Option<Laurent> {
        debug_assert!(s.valuation().is_some_and(|v| v > 0));
        let f = &self.field;
        let (&top, rest) = self.coeffs.split_last()?;
        let mut acc = Laurent::monomial(f, top, 0, s.rel_prec().max(1));
        for &c in rest.iter().rev() {
            acc = acc.mul(s).add_const(c);
        }
        // the unknown tail O(t^{len}) becomes O(s^{len})
        let sv = s.valuation()?;
        let unknown = self.coeffs.len() as i64 * sv;
        let acc = acc.add(&Laurent::zero(f, unknown));
        Some(acc.mul(&s.pow_signed(self.val)?))
    }

    /// The `m`-th root with residue `rho` of a unit-part series, `p` not dividing `m`.
    /// Requires `m | val` and `rho^m = lead`.
    pub fn nth_root(&self, m: u64, rho: Elem) -> Option<Laurent> {
        let f = &self.field;
        let v = self.valuation()?;
        if v % m as i64 != 0 || f.pow(rho, m) != self.lead()? {
            return None;
        }
        let n = self.coeffs.len();
        let unit = Laurent::new(f, 0, self.coeffs.clone());
        if m == 1 {
            return Some(self.clone());
        }
        let inv_m = f.inv(f.from_int(m as i64)).ok()?;
        let m1 = f.from_int(m as i64 - 1);
        let mut y = Laurent::monomial(f, rho, 0, n);
        for _ in 0..64 {
            // y <- ((m-1) y + u / y^{m-1}) / m
            let next = y.scale(m1).add(&unit.div(&y.pow(m - 1))?).scale(inv_m);
            if next == y {
                break;
            }
            y = next;
        }
        Some(y.truncate(n).shift(v / m as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_roots() {
        let f = FiniteField::of(3, 2);
        let x = Laurent::shifted_uniformizer(&f, f.from_int(2), 12);
        let inv = x.inv().unwrap();
        let one = x.mul(&inv);
        assert_eq!(one.valuation(), Some(0));
        assert_eq!(one.lead(), Some(f.one()));
        assert!((1..12).all(|i| one.coeff(i) == Some(Elem::ZERO)));
        // square root of 1 + t with residue 1 squares back
        let u = Laurent::shifted_uniformizer(&f, f.one(), 12);
        let r = u.nth_root(2, f.one()).unwrap();
        let back = r.pow(2).sub(&u);
        assert!(back.valuation().is_none());
    }

    #[test]
    fn frobenius_matches_product() {
        let f = FiniteField::of(2, 2);
        let x = Laurent::new(&f, -1, vec![f.one(), f.from_coeffs(&[0, 1]).unwrap(), f.one(), f.zero()]);
        let sq = x.mul(&x);
        let fr = x.frobenius_power(2);
        assert!(fr.abs_prec() >= sq.abs_prec());
        assert!(sq.sub(&fr).valuation().is_none());
    }

    #[test]
    fn compose_substitution() {
        let f = FiniteField::of(5, 1);
        // (1/t)(s + s^2) has the same product with s + s^2 as 1
        let inv_t = Laurent::monomial(&f, f.one(), -1, 10);
        let s = Laurent::new(&f, 1, vec![f.one(), f.one(), f.zero(), f.zero(), f.zero(), f.zero(), f.zero(), f.zero()]);
        let c = inv_t.compose(&s).unwrap();
        let prod = c.mul(&s);
        assert_eq!(prod.lead(), Some(f.one()));
        assert!(prod.add_const(f.neg(f.one())).valuation().is_none());
    }
}
