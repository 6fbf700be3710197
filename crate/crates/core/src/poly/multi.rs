use std::collections::BTreeMap;
use std::fmt;

use super::{PolyError, UPoly};
use crate::gf::{Elem, FiniteField};

/// Sparse polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: FiniteField,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Elem>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let mut s = self.field.fmt_elem(c);
                for (i, &d) in e.iter().enumerate() {
                    match d {
                        0 => {}
                        1 => s.push_str(&format!("*x{}", i + 1)),
                        _ => s.push_str(&format!("*x{}^{}", i + 1, d)),
                    }
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl MultiPoly {
    pub fn zero(field: &FiniteField, nvars: usize) -> Self {
        MultiPoly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        field: &FiniteField,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Elem)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(field, nvars);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn constant(field: &FiniteField, nvars: usize, c: Elem) -> Self {
        Self::from_terms(field, nvars, [(vec![0; nvars], c)]).expect("valid arity")
    }

    /// The variable `x_{i+1}` (zero-based index).
    pub fn var(field: &FiniteField, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(field, nvars, [(e, field.one())]).expect("valid arity")
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Elem) -> Result<(), PolyError> {
        if exps.len() != self.nvars {
            return Err(PolyError::Arity);
        }
        let v = self.field.add(self.terms.get(&exps).copied().unwrap_or(Elem::ZERO), c);
        if v.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, v);
        }
        Ok(())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, Elem)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    fn check(&self, o: &MultiPoly) -> Result<(), PolyError> {
        if self.field != o.field {
            Err(PolyError::CtxMismatch)
        } else if self.nvars != o.nvars {
            Err(PolyError::Arity)
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(o)?;
        let mut r = self.clone();
        for (e, &c) in &o.terms {
            r.add_term(e.clone(), c)?;
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(o)?;
        let mut r = MultiPoly::zero(&self.field, self.nvars);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &o.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                r.add_term(e, self.field.mul(ca, cb))?;
            }
        }
        Ok(r)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut r = MultiPoly::constant(&self.field, self.nvars, self.field.one());
        for _ in 0..e {
            r = r.try_mul(self).expect("same ring");
        }
        r
    }

    pub fn scale(&self, c: Elem) -> MultiPoly {
        let mut r = MultiPoly::zero(&self.field, self.nvars);
        if !c.is_zero() {
            for (e, &v) in &self.terms {
                r.terms.insert(e.clone(), self.field.mul(v, c));
            }
        }
        r
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> MultiPoly {
        let mut r = MultiPoly::zero(&self.field, self.nvars);
        for (e, &c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (i, &d) in e.iter().enumerate() {
                ne[perm[i]] = d;
            }
            r.terms.insert(ne, c);
        }
        r
    }

    /// Image under `x_i -> x_{i+1}`, indices mod n.
    pub fn cyclic_shift(&self) -> MultiPoly {
        let perm: Vec<usize> = (0..self.nvars).map(|i| (i + 1) % self.nvars).collect();
        self.permute(&perm)
    }

    pub fn eval(&self, point: &[Elem]) -> Result<Elem, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::Arity);
        }
        let f = &self.field;
        Ok(self.terms.iter().fold(Elem::ZERO, |acc, (e, &c)| {
            let m = e
                .iter()
                .zip(point)
                .fold(c, |m, (&d, &x)| f.mul(m, f.pow(x, d as u64)));
            f.add(acc, m)
        }))
    }

    /// Substitutes `x_i = t^{q^i}`.
    pub fn specialize_orbit(&self, q: u64) -> UPoly {
        let terms: Vec<(usize, Elem)> = self
            .terms
            .iter()
            .map(|(e, &c)| {
                let deg = e
                    .iter()
                    .enumerate()
                    .map(|(i, &d)| d as u64 * q.pow(i as u32))
                    .sum::<u64>();
                (deg as usize, c)
            })
            .collect();
        if terms.is_empty() {
            return UPoly::zero(&self.field);
        }
        UPoly::from_terms(&self.field, &terms)
    }

    pub fn has_coeffs_in(&self, q: u64) -> Result<bool, crate::gf::FieldError> {
        for &c in self.terms.values() {
            if !self.field.is_in_subfield(c, q)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
