//! Decomposition of a degree-one place in one step, from the valuation and leading
//! coefficient of the right-hand side there.

use num_integer::Integer;

use crate::gf::{Elem, FiniteField};
use crate::poly::{factor_univariate, RatFunc, UPoly};

use super::{AsLhs, TowerError};

/// Valuation and leading coefficient of the right-hand side at a place, with
/// respect to a chosen uniformizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalDatum {
    pub valuation: i64,
    pub lead: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Branch {
    pub e: u64,
    pub f: u64,
    pub d: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceClass {
    Split { count: u64 },
    TotallyRamified { e: u64, d: u64, m: u64 },
    Branches(Vec<Branch>),
}

impl PlaceClass {
    /// Places of residue degree one above.
    pub fn degree_one_count(&self) -> u64 {
        match self {
            PlaceClass::Split { count } => *count,
            PlaceClass::TotallyRamified { .. } => 1,
            PlaceClass::Branches(bs) => bs.iter().filter(|b| b.f == 1).count() as u64,
        }
    }

    /// `sum e f`, which must equal the step degree.
    pub fn degree_sum(&self) -> u64 {
        match self {
            PlaceClass::Split { count } => *count,
            PlaceClass::TotallyRamified { e, .. } => *e,
            PlaceClass::Branches(bs) => bs.iter().map(|b| b.e * b.f).sum(),
        }
    }

    /// `sum f d`, the contribution to the different of a degree-one place.
    pub fn different_degree(&self) -> u64 {
        match self {
            PlaceClass::Split { .. } => 0,
            PlaceClass::TotallyRamified { d, .. } => *d,
            PlaceClass::Branches(bs) => bs.iter().map(|b| b.f * b.d).sum(),
        }
    }

    pub fn is_ramified(&self) -> bool {
        match self {
            PlaceClass::Split { .. } => false,
            PlaceClass::TotallyRamified { e, .. } => *e > 1,
            PlaceClass::Branches(bs) => bs.iter().any(|b| b.e > 1),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            PlaceClass::Split { count } => format!("Split {count}"),
            PlaceClass::TotallyRamified { e, d, m } => format!("TotallyRamified e={e} d={d} m={m}"),
            PlaceClass::Branches(bs) => {
                let parts: Vec<String> =
                    bs.iter().map(|b| format!("(f={} e={} d={})", b.f, b.e, b.d)).collect();
                format!("Branches {}", parts.join(" "))
            }
        }
    }
}

fn branches_from_factors(poly: &UPoly, e: u64) -> Result<Vec<Branch>, TowerError> {
    let mut out = Vec::new();
    for (g, mult) in factor_univariate(poly)? {
        debug_assert_eq!(mult, 1, "separable residue equation");
        out.push(Branch { e, f: g.degree().unwrap_or(0) as u64, d: e - 1 });
    }
    out.sort();
    Ok(out)
}

/// Artin–Schreier step `L(y) = w` at a degree-one place.
pub fn classify_as_place(lhs: &AsLhs, datum: LocalDatum) -> Result<PlaceClass, TowerError> {
    let field = lhs.poly().field();
    let deg = lhs.degree();
    if datum.valuation < 0 {
        let m = datum.valuation.unsigned_abs();
        if m.is_multiple_of(field.characteristic()) {
            return Err(TowerError::WildUnreduced { m });
        }
        return Ok(PlaceClass::TotallyRamified { e: deg, d: (deg - 1) * (m + 1), m });
    }
    let gamma = if datum.valuation == 0 { datum.lead } else { Elem::ZERO };
    if let Some(q) = lhs.trace_q() {
        if field.is_in_subfield(gamma, q)? {
            return Ok(PlaceClass::Split { count: deg });
        }
    }
    let eq = lhs.poly().expanded() - &UPoly::constant(field, gamma);
    Ok(PlaceClass::Branches(branches_from_factors(&eq, 1)?))
}

/// Kummer step `y^k = w` at a degree-one place (tame, `p` not dividing `k`).
pub fn classify_kummer_place(
    field: &FiniteField,
    k: u64,
    datum: LocalDatum,
) -> Result<PlaceClass, TowerError> {
    if datum.lead.is_zero() {
        return Err(TowerError::ZeroResidue);
    }
    let g = datum.valuation.unsigned_abs().gcd(&k);
    let e = k / g;
    if g == 1 {
        return Ok(PlaceClass::TotallyRamified { e: k, d: k - 1, m: datum.valuation.unsigned_abs() });
    }
    if e == 1 && field.is_kth_power(datum.lead, k) {
        return Ok(PlaceClass::Split { count: k });
    }
    // eta^g = lead, with eta = y^e t^{-v/g}
    let eq = UPoly::from_terms(field, &[(g as usize, field.one()), (0, field.neg(datum.lead))]);
    Ok(PlaceClass::Branches(branches_from_factors(&eq, e)?))
}

/// Datum of `w` at `x = a`, uniformizer `x - a`.
pub fn datum_at_point(w: &RatFunc, a: Elem) -> Result<LocalDatum, TowerError> {
    let field = w.field();
    let valuation = w.valuation_at_point(a)?;
    let pi = UPoly::new(field, vec![field.neg(a), field.one()]);
    let strip = |p: &UPoly| -> Result<Elem, TowerError> {
        let mut p = p.clone();
        loop {
            let (quo, r) = p.divmod(&pi)?;
            if !r.is_zero() {
                return Ok(p.eval(a));
            }
            p = quo;
        }
    };
    let lead = field.div(strip(w.num())?, strip(w.den())?)?;
    Ok(LocalDatum { valuation, lead })
}

/// Datum of `w` at infinity, uniformizer `1/x`.
pub fn datum_at_infinity(w: &RatFunc) -> LocalDatum {
    LocalDatum { valuation: w.valuation_at_infinity(), lead: w.leading_at_infinity() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn as_examples() {
        let f4 = FiniteField::of(2, 2);
        let lhs = AsLhs::trace_form(&f4, 2, 2).unwrap();
        let ram = classify_as_place(&lhs, LocalDatum { valuation: -3, lead: f4.one() }).unwrap();
        assert_eq!(ram, PlaceClass::TotallyRamified { e: 2, d: 4, m: 3 });
        let w = f4.from_coeffs(&[0, 1]).unwrap();
        let inert = classify_as_place(&lhs, LocalDatum { valuation: 0, lead: w }).unwrap();
        assert_eq!(inert, PlaceClass::Branches(vec![Branch { e: 1, f: 2, d: 0 }]));
        assert_eq!(inert.degree_sum(), 2);
        assert!(matches!(
            classify_as_place(&lhs, LocalDatum { valuation: -2, lead: w }),
            Err(TowerError::WildUnreduced { m: 2 })
        ));
        let f27 = FiniteField::of(3, 3);
        let lhs27 = AsLhs::trace_form(&f27, 3, 3).unwrap();
        let split = classify_as_place(&lhs27, LocalDatum { valuation: 0, lead: f27.one() }).unwrap();
        assert_eq!(split, PlaceClass::Split { count: 9 });
    }

    #[test]
    fn kummer_examples() {
        let f4 = FiniteField::of(2, 2);
        let one = f4.one();
        assert_eq!(
            classify_kummer_place(&f4, 3, LocalDatum { valuation: 0, lead: one }).unwrap(),
            PlaceClass::Split { count: 3 }
        );
        assert_eq!(
            classify_kummer_place(&f4, 3, LocalDatum { valuation: -1, lead: one }).unwrap(),
            PlaceClass::TotallyRamified { e: 3, d: 2, m: 1 }
        );
        let f9 = FiniteField::of(3, 2);
        let minus_one = f9.from_int(-1);
        assert_eq!(
            classify_kummer_place(&f9, 2, LocalDatum { valuation: 0, lead: minus_one }).unwrap(),
            PlaceClass::Split { count: 2 }
        );
        assert_eq!(
            classify_kummer_place(&f9, 2, LocalDatum { valuation: 0, lead: Elem::ZERO }),
            Err(TowerError::ZeroResidue)
        );
    }

    #[test]
    fn kummer_inert_degrees_match_order_mod_powers() {
        let f16 = FiniteField::of(2, 4);
        for k in [3u64, 5, 15] {
            for u in f16.elements().skip(1) {
                let c = classify_kummer_place(&f16, k, LocalDatum { valuation: 0, lead: u }).unwrap();
                assert_eq!(c.degree_sum(), k);
                let order = f16.order_mod_powers(u, k).unwrap();
                match c {
                    PlaceClass::Split { .. } => assert_eq!(order, 1),
                    PlaceClass::Branches(bs) => assert!(bs.iter().all(|b| b.f == order)),
                    other => panic!("{other:?}"),
                }
            }
        }
    }

    #[test]
    fn data_from_rational_functions() {
        let f = FiniteField::of(3, 1);
        // 2 x^2 (x - 1) / (x + 1)
        let num = UPoly::from_ints(&f, &[0, 0, -2, 2]);
        let w = RatFunc::new(num, UPoly::from_ints(&f, &[1, 1])).unwrap();
        let d0 = datum_at_point(&w, f.zero()).unwrap();
        // near 0: 2 x^2 (-1)/1 = x^2 * 1
        assert_eq!(d0, LocalDatum { valuation: 2, lead: f.one() });
        let dinf = datum_at_infinity(&w);
        assert_eq!(dinf, LocalDatum { valuation: -2, lead: f.from_int(2) });
    }
}
