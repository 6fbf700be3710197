//! Splitting an additive step of degree `p^r` into `r` steps of degree `p`, one
//! for each vector of a basis of the kernel.

use crate::gf::Elem;
use crate::poly::{span_basis, LinearizedPoly, UPoly};

use super::TowerError;

/// Chain `y_i^p - B_i^{p-1} y_i = y_{i-1}` with `y_0 = f` and `y_r = y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubextChain {
    pub basis: Vec<Elem>,
    /// `beta[i - 1][j - 1] = beta_{i,j}` for `1 <= j <= i`.
    pub beta: Vec<Vec<Elem>>,
    /// `big_b[i - 1] = B_i`.
    pub big_b: Vec<Elem>,
    /// `steps[i - 1] = T^p - B_i^{p-1} T`.
    pub steps: Vec<UPoly>,
}

impl SubextChain {
    /// `P_1 o P_2 o ... o P_r`, which is the additive polynomial the chain resolves.
    pub fn composed(&self) -> UPoly {
        let field = self.steps[0].field();
        let mut acc = UPoly::x(field);
        for s in self.steps.iter().rev() {
            acc = s.compose(&acc).expect("same field");
        }
        acc
    }
}

/// Builds the chain from `b_1, ..., b_r` via `beta_{r,j} = b_{r-j+1}` and
/// `beta_{i-1,j} = beta_{i,j}^p - B_i^{p-1} beta_{i,j}` with `B_i = beta_{i,i}`.
pub fn resolve_subextensions(lhs: &LinearizedPoly, basis: &[Elem]) -> Result<SubextChain, TowerError> {
    let field = lhs.field();
    let p = field.characteristic();
    let deg = lhs.degree() as u64;
    let mut r = 0usize;
    let mut d = 1u64;
    while d < deg {
        d *= p;
        r += 1;
    }
    if d != deg || r == 0 || basis.len() != r {
        return Err(TowerError::NotABasis);
    }
    if basis.iter().any(|&b| b.is_zero() || !lhs.apply(b).is_zero()) {
        return Err(TowerError::NotABasis);
    }
    if span_basis(field, basis).len() != r {
        return Err(TowerError::NotABasis);
    }
    let mut beta: Vec<Vec<Elem>> = vec![Vec::new(); r];
    beta[r - 1] = (1..=r).map(|j| basis[r - j]).collect();
    let mut big_b = vec![Elem::ZERO; r];
    for i in (1..=r).rev() {
        let b_i = beta[i - 1][i - 1];
        if b_i.is_zero() {
            return Err(TowerError::DegenerateB(i));
        }
        big_b[i - 1] = b_i;
        if i > 1 {
            let c = field.pow(b_i, p - 1);
            beta[i - 2] = (0..i - 1)
                .map(|j| {
                    let x = beta[i - 1][j];
                    field.sub(field.pow(x, p), field.mul(c, x))
                })
                .collect();
        }
    }
    let steps = big_b
        .iter()
        .map(|&b| {
            UPoly::from_terms(field, &[(p as usize, field.one()), (1, field.neg(field.pow(b, p - 1)))])
        })
        .collect();
    Ok(SubextChain { basis: basis.to_vec(), beta, big_b, steps })
}
