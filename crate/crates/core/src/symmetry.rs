//! Functions of `t` obtained by evaluating a cyclically invariant polynomial on the
//! Frobenius orbit `(t, t^q, ..., t^{q^{n-1}})`. With `F_q` coefficients they map
//! `F_{q^n}` into `F_q`.

use thiserror::Error;

use crate::gf::{FieldError, FiniteField};
use crate::poly::{MultiPoly, PolyError, RatFunc, UPoly};

/// Largest ambient field scanned by exhaustive checks.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("source polynomial is not fixed by the cyclic shift")]
    NotQuasiSymmetric,
    #[error("polynomial has a root in the subfield: {0}")]
    HasSubfieldRoot(String),
    #[error("inner function does not map into the subfield")]
    NotSubfieldValued,
    #[error("coefficients do not lie in F_{0}")]
    CoefficientsOutsideSubfield(u64),
    #[error("index {i} outside 1..={n}")]
    BadIndex { i: usize, n: usize },
    #[error("field of size {0} too large for exhaustive scan")]
    TooLarge(u64),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NQFunction {
    n: usize,
    q: u64,
    num: MultiPoly,
    den: MultiPoly,
    specialized: RatFunc,
}

impl NQFunction {
    /// Verifies cyclic invariance of numerator and denominator, then specializes.
    pub fn new(q: u64, num: MultiPoly, den: Option<MultiPoly>) -> Result<Self, SymmetryError> {
        let n = num.nvars();
        let den = den.unwrap_or_else(|| MultiPoly::constant(num.field(), n, num.field().one()));
        if !is_quasi_symmetric(&num) || !is_quasi_symmetric(&den) {
            return Err(SymmetryError::NotQuasiSymmetric);
        }
        num.field()
            .subfield_degree(q)
            .ok_or(FieldError::NotSubfield { q, size: num.field().size() })?;
        let specialized = RatFunc::new(num.specialize_orbit(q), den.specialize_orbit(q))?;
        Ok(NQFunction { n, q, num, den, specialized })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn field(&self) -> &FiniteField {
        self.num.field()
    }

    pub fn source_num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn source_den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn specialized(&self) -> &RatFunc {
        &self.specialized
    }

    pub fn has_subfield_coeffs(&self) -> Result<bool, FieldError> {
        Ok(self.num.has_coeffs_in(self.q)? && self.den.has_coeffs_in(self.q)?)
    }
}

fn subsets(n: usize, i: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == i)
        .map(|m| (0..n).filter(|b| m >> b & 1 == 1).collect())
        .collect()
}

/// `i`-th elementary symmetric polynomial in `n` variables, specialized on the orbit.
pub fn elementary_symmetric_nq(
    field: &FiniteField,
    n: usize,
    q: u64,
    i: usize,
) -> Result<NQFunction, SymmetryError> {
    if i == 0 || i > n {
        return Err(SymmetryError::BadIndex { i, n });
    }
    let terms = subsets(n, i).into_iter().map(|s| {
        let mut e = vec![0u32; n];
        for j in s {
            e[j] = 1;
        }
        (e, field.one())
    });
    NQFunction::new(q, MultiPoly::from_terms(field, n, terms)?, None)
}

/// `x1 x2^i + x2 x3^i + x3 x1^i`.
pub fn qs_three_var_family(field: &FiniteField, i: u32, q: u64) -> Result<NQFunction, SymmetryError> {
    let mut src = MultiPoly::zero(field, 3);
    for j in 0..3 {
        let mut e = vec![0u32; 3];
        e[j] += 1;
        e[(j + 1) % 3] += i;
        src.add_term(e, field.one())?;
    }
    NQFunction::new(q, src, None)
}

/// Syntactic invariance under `x_i -> x_{i+1}`.
pub fn is_quasi_symmetric(f: &MultiPoly) -> bool {
    f.cyclic_shift() == *f
}

/// Syntactic invariance under every adjacent transposition (which generate `S_n`).
pub fn is_symmetric(f: &MultiPoly) -> bool {
    let n = f.nvars();
    (0..n.saturating_sub(1)).all(|i| {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        f.permute(&perm) == *f
    })
}

/// True when every finite value on the ambient field lies in `F_q`.
pub fn subfield_valued_check(f: &NQFunction) -> Result<bool, SymmetryError> {
    let field = f.field();
    if field.size() > EXHAUSTIVE_LIMIT {
        return Err(SymmetryError::TooLarge(field.size()));
    }
    for t in field.elements() {
        if let Some(v) = f.specialized().eval(t) {
            if !field.is_in_subfield(v, f.q())? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `i_poly(inner)`, zero-free on the ambient field whenever `i_poly` has no root in
/// `F_q` and `inner` takes values in `F_q`.
pub fn compose_no_zeros(i_poly: &UPoly, inner: &NQFunction) -> Result<NQFunction, SymmetryError> {
    let field = inner.field();
    let q = inner.q();
    if i_poly.field() != field {
        return Err(PolyError::CtxMismatch.into());
    }
    if !i_poly.has_coeffs_in(q)? {
        return Err(SymmetryError::CoefficientsOutsideSubfield(q));
    }
    if !inner.has_subfield_coeffs()? {
        return Err(SymmetryError::CoefficientsOutsideSubfield(q));
    }
    if let Some(r) = field.subfield_members(q)?.into_iter().find(|&a| i_poly.eval(a).is_zero()) {
        return Err(SymmetryError::HasSubfieldRoot(field.fmt_elem(r)));
    }
    if !subfield_valued_check(inner)? {
        return Err(SymmetryError::NotSubfieldValued);
    }
    // i(N/D) = sum_j c_j N^j D^{d-j} / D^d
    let d = i_poly.degree().unwrap_or(0) as u32;
    let n = inner.n();
    let mut num = MultiPoly::zero(field, n);
    for (j, c) in i_poly.terms() {
        let term = inner
            .source_num()
            .pow(j as u32)
            .try_mul(&inner.source_den().pow(d - j as u32))?
            .scale(c);
        num = num.try_add(&term)?;
    }
    let den = inner.source_den().pow(d);
    NQFunction::new(q, num, Some(den))
}
