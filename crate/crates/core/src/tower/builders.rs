//! Artin–Schreier towers `T^{q^{n-1}} + ... + T = g/h` with quasi-symmetric `g, h`.

use crate::poly::{
    factor_univariate, is_linearized_image, roots, ImageVerdict, PolyError, RatFunc,
};
use crate::symmetry::{NQFunction, SymmetryError};

use super::spec::{AsLhs, StepSpec, TowerSpec};
use super::TowerError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AsVariant {
    /// `deg g <= deg h`: every degree-one place splits completely.
    AllSplit,
    /// `deg g > deg h`: every degree-one place except the pole of `x_1` splits.
    AllButInfinity,
}

pub fn builder_as_tower(
    n: u32,
    q: u64,
    g: &NQFunction,
    h: &NQFunction,
    variant: AsVariant,
) -> Result<TowerSpec, TowerError> {
    let field = g.field().clone();
    if h.field() != &field {
        return Err(TowerError::InvalidStep("g and h over different fields".into()));
    }
    for f in [g, h] {
        if f.q() != q {
            return Err(TowerError::InvalidStep(format!("function built for q = {}, expected {q}", f.q())));
        }
        if !f.has_subfield_coeffs()? {
            return Err(SymmetryError::CoefficientsOutsideSubfield(q).into());
        }
    }
    let hs = h.specialized();
    for part in [hs.num(), hs.den()] {
        if let Some(r) = roots(part)?.first() {
            // zeros of h's numerator and poles of h both make g/h undefined or infinite
            return Err(TowerError::HasSubfieldRoot(field.fmt_elem(*r)));
        }
    }
    let gs = g.specialized();
    if let Some(r) = roots(gs.den())?.first() {
        return Err(TowerError::HasSubfieldRoot(field.fmt_elem(*r)));
    }
    let rhs = gs.try_div(hs)?;
    let (dn, dd) = (rhs.num().deg_i64(), rhs.den().deg_i64());
    match variant {
        AsVariant::AllSplit if dn > dd => {
            return Err(TowerError::DegreeConstraintViolated(format!("deg g = {dn} > deg h = {dd}")))
        }
        AsVariant::AllButInfinity if dn <= dd => {
            return Err(TowerError::DegreeConstraintViolated(format!("deg g = {dn} <= deg h = {dd}")))
        }
        _ => {}
    }
    let lhs = AsLhs::trace_form(&field, q, n)?;
    check_not_image(&rhs, &lhs)?;
    let label = format!("AS tower q={q} n={n} {:?}", variant);
    TowerSpec::new(&field, q, n, vec![StepSpec::artin_schreier(lhs, rhs)], label)
}

/// A pole of order prime to `p` anywhere rules out `g/h = L(u) + c`. Polynomials
/// without such a pole go through the exact image test.
fn check_not_image(rhs: &RatFunc, lhs: &AsLhs) -> Result<(), TowerError> {
    let p = rhs.field().characteristic();
    let v_inf = rhs.valuation_at_infinity();
    if v_inf < 0 && !v_inf.unsigned_abs().is_multiple_of(p) {
        return Ok(());
    }
    if factor_univariate(rhs.den())?.iter().any(|(_, mult)| !(*mult as u64).is_multiple_of(p)) {
        return Ok(());
    }
    if rhs.is_polynomial() {
        return match is_linearized_image(rhs.num(), lhs.poly().support()) {
            Ok(ImageVerdict::Irreducible) => Ok(()),
            Ok(ImageVerdict::Reducible { .. }) => Err(TowerError::LinearizedImage),
            Err(PolyError::SearchTooLarge(_)) => Err(TowerError::LinearizedImage),
            Err(e) => Err(e.into()),
        };
    }
    Err(TowerError::LinearizedImage)
}
