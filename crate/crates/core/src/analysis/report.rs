//! Per-level table of `N(T_j)`, genus information and `N/g`.

use std::fmt::Write as _;

use num_rational::Rational64;

use crate::tower::{Family, FamilyParams, TowerSpec};

use super::bounds::{dv_bound, genus_bound_family_a, lambda_bound_family_a, lambda_bound_family_b};
use super::count::count_rational_places;
use super::genus::{genus_bound_recursive, genus_level2_exact};
use super::AnalysisError;

pub const CSV_HEADER: &str = "j,N_affine,N_infinite,N_total,genus_kind,genus_value,ratio,lambda_bound,dv_bound";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenusKind {
    Exact,
    Bound,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioRow {
    pub j: usize,
    pub n_affine: u64,
    pub n_infinite: u64,
    pub n_total: u64,
    pub genus_kind: GenusKind,
    pub genus: Rational64,
    /// `N / g`; `None` for genus 0. A lower bound when the genus is a bound.
    pub ratio: Option<f64>,
    pub lambda_bound: Option<Rational64>,
    pub dv_bound: f64,
}

/// Rows for levels `1..=depth`. Level 1 has genus 0, level 2 the Hurwitz genus;
/// beyond that the smaller of the family formula (family A) and the recursive bound.
pub fn ratio_report(
    spec: &TowerSpec,
    depth: usize,
    family: Option<&FamilyParams>,
) -> Result<Vec<RatioRow>, AnalysisError> {
    let q = spec.field().size();
    let dv = dv_bound(q)?;
    let lambda_bound = match family {
        Some(f) if f.family == Family::A => Some(lambda_bound_family_a(q)?),
        Some(f) => Some(lambda_bound_family_b(f.exponent())?),
        None => None,
    };
    let mut rows = Vec::with_capacity(depth);
    for j in 1..=depth {
        let counts = count_rational_places(spec, j)?;
        let (genus_kind, genus) = match j {
            1 => (GenusKind::Exact, Rational64::from_integer(0)),
            2 => {
                let g = genus_level2_exact(spec)?.exact.expect("exact at level 2");
                (GenusKind::Exact, Rational64::from_integer(g as i64))
            }
            _ => {
                let mut bound = Rational64::from_integer(genus_bound_recursive(spec, j)? as i64);
                if let Some(f) = family.filter(|f| f.family == Family::A) {
                    bound = bound.min(genus_bound_family_a(q, f.exponent(), j as u32)?);
                }
                (GenusKind::Bound, bound)
            }
        };
        let ratio = (genus != Rational64::from_integer(0))
            .then(|| counts.total as f64 / (*genus.numer() as f64 / *genus.denom() as f64));
        rows.push(RatioRow {
            j,
            n_affine: counts.n_affine,
            n_infinite: counts.n_infinite,
            n_total: counts.total,
            genus_kind,
            genus,
            ratio,
            lambda_bound,
            dv_bound: dv,
        });
    }
    Ok(rows)
}

pub fn ratio_csv(rows: &[RatioRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let kind = match r.genus_kind {
            GenusKind::Exact => "exact",
            GenusKind::Bound => "bound",
        };
        let ratio = r.ratio.map_or("inf".to_string(), |x| format!("{x:.6}"));
        let lambda = r.lambda_bound.map_or("-".to_string(), |l| l.to_string());
        let _ = writeln!(
            s,
            "{},{},{},{},{kind},{},{ratio},{lambda},{:.6}",
            r.j, r.n_affine, r.n_infinite, r.n_total, r.genus, r.dv_bound
        );
    }
    s
}
