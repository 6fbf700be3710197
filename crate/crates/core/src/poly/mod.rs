//! Polynomials and rational functions over a [`FiniteField`].

mod factor;
mod linearized;
mod multi;
mod ratfunc;
pub mod text;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::gf::{Elem, Embedding, FieldError, FiniteField};

pub use factor::{factor_univariate, is_irreducible, roots};
pub use linearized::{
    bivariate_irreducible_bruteforce, coprime_degree, corollary_irreducible, enumerate_subgroups,
    is_linearized_image, span_basis, CorollaryVerdict, ImageVerdict, LinearizedPoly,
};
pub use multi::MultiPoly;
pub use ratfunc::RatFunc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operands live in different fields")]
    CtxMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("set is not an additive subgroup")]
    NotSubgroup,
    #[error("search space too large: {0}")]
    SearchTooLarge(String),
    #[error("exponent vector has the wrong length")]
    Arity,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Dense univariate polynomial, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    field: FiniteField,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::format_poly(self))
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::format_poly(self))
    }
}

impl UPoly {
    pub fn new(field: &FiniteField, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &FiniteField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &FiniteField) -> Self {
        Self::constant(field, field.one())
    }

    pub fn x(field: &FiniteField) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn constant(field: &FiniteField, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    pub fn monomial(field: &FiniteField, c: Elem, deg: usize) -> Self {
        let mut v = vec![Elem::ZERO; deg + 1];
        v[deg] = c;
        Self::new(field, v)
    }

    /// Polynomial with prime-field integer coefficients, constant term first.
    pub fn from_ints(field: &FiniteField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Sum of `c * x^d` terms.
    pub fn from_terms(field: &FiniteField, terms: &[(usize, Elem)]) -> Self {
        let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut v = vec![Elem::ZERO; deg + 1];
        for &(d, c) in terms {
            v[d] = field.add(v[d], c);
        }
        Self::new(field, v)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = -1`, convenient for valuation arithmetic.
    pub fn deg_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == self.field.one()
    }

    /// Nonzero terms as `(degree, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, Elem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, c))
    }

    fn check(&self, other: &UPoly) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::CtxMismatch)
        }
    }

    pub fn try_add(&self, other: &UPoly) -> Result<UPoly, PolyError> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(UPoly::new(f, v))
    }

    pub fn try_sub(&self, other: &UPoly) -> Result<UPoly, PolyError> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Ok(UPoly::new(f, v))
    }

    pub fn try_mul(&self, other: &UPoly) -> Result<UPoly, PolyError> {
        self.check(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(UPoly::zero(f));
        }
        let mut v = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Ok(UPoly::new(f, v))
    }

    pub fn scale(&self, c: Elem) -> UPoly {
        let f = &self.field;
        UPoly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn shift(&self, by: usize) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Elem::ZERO; by];
        v.extend_from_slice(&self.coeffs);
        UPoly::new(&self.field, v)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lc()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn divmod(&self, divisor: &UPoly) -> Result<(UPoly, UPoly), PolyError> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZeroPoly);
        }
        let f = &self.field;
        let dd = divisor.coeffs.len() - 1;
        let inv_lc = f.inv(divisor.lc())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UPoly::zero(f), self.clone()));
        }
        let mut q = vec![Elem::ZERO; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(r[top], inv_lc);
            if c.is_zero() {
                continue;
            }
            let shift = top - dd;
            q[shift] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, d));
            }
        }
        Ok((UPoly::new(f, q), UPoly::new(f, r)))
    }

    pub fn rem(&self, divisor: &UPoly) -> Result<UPoly, PolyError> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Quotient when the division is known to be exact.
    pub fn exact_div(&self, divisor: &UPoly) -> Result<UPoly, PolyError> {
        let (q, r) = self.divmod(divisor)?;
        debug_assert!(r.is_zero(), "inexact division");
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(f, 0)` is the monic normalisation of `f`.
    pub fn gcd(&self, other: &UPoly) -> Result<UPoly, PolyError> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &UPoly) -> Result<UPoly, PolyError> {
        self.check(inner)?;
        let mut acc = UPoly::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = acc.try_mul(inner)?.try_add(&UPoly::constant(&self.field, c))?;
        }
        Ok(acc)
    }

    pub fn pow(&self, mut e: u64) -> UPoly {
        let mut result = UPoly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn powmod(&self, mut e: u64, modulus: &UPoly) -> Result<UPoly, PolyError> {
        let mut result = UPoly::one(&self.field).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?.rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?.rem(modulus)?;
            }
        }
        Ok(result)
    }

    pub fn derivative(&self) -> UPoly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect();
        UPoly::new(f, v)
    }

    /// Coefficients pushed through a field embedding.
    pub fn map_into(&self, emb: &Embedding) -> UPoly {
        UPoly::new(emb.target(), self.coeffs.iter().map(|&c| emb.apply(c)).collect())
    }

    /// True when every coefficient lies in the subfield `F_q`.
    pub fn has_coeffs_in(&self, q: u64) -> Result<bool, FieldError> {
        for &c in &self.coeffs {
            if !self.field.is_in_subfield(c, q)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Deterministic ordering: degree, then coefficient sequence.
    pub fn canonical_cmp(&self, other: &UPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        self.try_add(rhs).expect("polynomials over the same field")
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self.try_sub(rhs).expect("polynomials over the same field")
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        self.try_mul(rhs).expect("polynomials over the same field")
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        let f = &self.field;
        UPoly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Add for UPoly {
    type Output = UPoly;
    fn add(self, rhs: UPoly) -> UPoly {
        &self + &rhs
    }
}

impl Sub for UPoly {
    type Output = UPoly;
    fn sub(self, rhs: UPoly) -> UPoly {
        &self - &rhs
    }
}

impl Mul for UPoly {
    type Output = UPoly;
    fn mul(self, rhs: UPoly) -> UPoly {
        &self * &rhs
    }
}
