//! Degree-one places of `T_j`: exhaustive residue enumeration over unramified
//! chains, the local engine over every chain that meets a pole or a Kummer zero,
//! and the classifier's prediction for each fiber.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::gf::{Elem, FiniteField};
use crate::tower::fiber::{walk_from, FiberTables};
use crate::tower::{
    classify_as_place, classify_kummer_place, datum_at_infinity, datum_at_point, lift_with_retry,
    rhs_datum, LocalDatum, LocalTree, PlaceClass, Start, StepKind, StepSpec, TowerError, TowerSpec,
};

use super::AnalysisError;

/// Largest constant field enumerated directly.
pub const ENUM_FIELD_LIMIT: u64 = 1 << 10;
/// Largest `[T_j : T_1]` enumerated.
pub const ENUM_DEGREE_LIMIT: u64 = 10_000_000;

fn guard(spec: &TowerSpec, level: usize) -> Result<(), AnalysisError> {
    if level == 0 {
        return Err(AnalysisError::InvalidArgument("levels start at 1".into()));
    }
    let size = spec.field().size();
    if size > ENUM_FIELD_LIMIT {
        return Err(AnalysisError::ScaleExceeded(format!("|F| = {size} exceeds {ENUM_FIELD_LIMIT}")));
    }
    let mut deg: u64 = 1;
    for i in 0..level - 1 {
        deg = deg.saturating_mul(spec.step(i).degree());
    }
    if deg > ENUM_DEGREE_LIMIT {
        return Err(AnalysisError::ScaleExceeded(format!(
            "[T_{level} : T_1] = {deg} exceeds {ENUM_DEGREE_LIMIT}"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffinePoint {
    pub coords: Vec<Elem>,
    /// Index of `x_1` in the element order of the field.
    pub fiber: usize,
}

/// All `(a_1, ..., a_j)` over the constant field satisfying every step with finite
/// right-hand sides. Branches reaching a pole stop there.
pub fn enumerate_affine_points(spec: &TowerSpec, level: usize) -> Result<Vec<AffinePoint>, AnalysisError> {
    guard(spec, level)?;
    let tables = FiberTables::new(spec);
    let field = spec.field();
    let starts: Vec<Elem> = field.elements().collect();
    let per_start: Vec<Vec<AffinePoint>> = starts
        .par_iter()
        .map(|&a| {
            let mut out = Vec::new();
            let mut stack = vec![vec![a]];
            while let Some(t) = stack.pop() {
                if t.len() == level {
                    out.push(AffinePoint { coords: t, fiber: a.index() });
                    continue;
                }
                let step = spec.step(t.len() - 1);
                let Some(w) = step.rhs.eval(*t.last().expect("non-empty")) else { continue };
                for &y in tables.table(t.len() - 1).preimages(w) {
                    let mut next = t.clone();
                    next.push(y);
                    stack.push(next);
                }
            }
            out.sort();
            out
        })
        .collect();
    Ok(per_start.into_iter().flatten().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberMethod {
    /// Every chain above the start is unramified with finite residues.
    Enumeration,
    LocalEngine,
}

/// Degree-one places of the level above one degree-one place of `T_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberRecord {
    pub start: Start,
    pub enumerated: u64,
    /// Places where every `x_i` is regular.
    pub affine: u64,
    pub predicted: Option<u64>,
    pub ramified: bool,
    pub method: FiberMethod,
    /// Classification summary of each step along the fiber.
    pub trail: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub level: usize,
    pub n_affine: u64,
    pub n_infinite: u64,
    pub total: u64,
    pub fibers: Vec<FiberRecord>,
}

impl SplittingReport {
    /// Fibers where the classifier's prediction differs from the count.
    pub fn mismatches(&self) -> Vec<&FiberRecord> {
        self.fibers.iter().filter(|f| f.predicted.is_some_and(|p| p != f.enumerated)).collect()
    }

    pub fn fiber(&self, start: Start) -> Option<&FiberRecord> {
        self.fibers.iter().find(|f| f.start == start)
    }

    pub fn to_text(&self, field: &FiniteField) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "level {}: N_affine = {}, N_infinite = {}, N = {}",
            self.level, self.n_affine, self.n_infinite, self.total
        );
        for f in &self.fibers {
            let predicted = f.predicted.map_or("-".to_string(), |p| p.to_string());
            let method = match f.method {
                FiberMethod::Enumeration => "enumeration",
                FiberMethod::LocalEngine => "local engine",
            };
            let _ = writeln!(
                s,
                "  {}: {} places ({method}), predicted {predicted}{}{}",
                start_label(field, f.start),
                f.enumerated,
                if f.ramified { ", ramified" } else { "" },
                if f.trail.is_empty() { String::new() } else { format!(" [{}]", f.trail.join(" | ")) }
            );
        }
        s
    }
}

/// `x_1=a` or `P_inf`, without commas so it can sit in a CSV cell.
pub(crate) fn start_label(field: &FiniteField, start: Start) -> String {
    match start {
        Start::Point(a) => format!("x_1={}", field.fmt_elem(a).replace(',', " ")),
        Start::Infinity => "P_inf".to_string(),
    }
}

pub(crate) fn classify_step(step: &StepSpec, datum: LocalDatum) -> Result<PlaceClass, TowerError> {
    match &step.kind {
        StepKind::ArtinSchreier(lhs) => classify_as_place(lhs, datum),
        StepKind::Kummer { k } => classify_kummer_place(step.rhs.field(), *k, datum),
    }
}

fn summarize(classes: &[PlaceClass]) -> String {
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for c in classes {
        *tally.entry(c.describe()).or_default() += 1;
    }
    let parts: Vec<String> = tally
        .into_iter()
        .map(|(d, n)| if n == 1 { d } else { format!("{n}x {d}") })
        .collect();
    parts.join("; ")
}

fn fiber_record(
    spec: &TowerSpec,
    tables: &FiberTables,
    start: Start,
    level: usize,
    predict: bool,
) -> Result<FiberRecord, TowerError> {
    if level == 1 {
        let affine = matches!(start, Start::Point(_)) as u64;
        return Ok(FiberRecord {
            start,
            enumerated: 1,
            affine,
            predicted: predict.then_some(1),
            ramified: false,
            method: FiberMethod::Enumeration,
            trail: Vec::new(),
        });
    }
    let walk = match start {
        Start::Point(a) => Some(walk_from(spec, tables, a, level)),
        Start::Infinity => None,
    };
    let mut tree: Option<LocalTree> = None;
    let (enumerated, affine, method) = match &walk {
        Some(w) if w.special.is_empty() => {
            let n = w.etale.len() as u64;
            (n, n, FiberMethod::Enumeration)
        }
        _ => {
            let t = lift_with_retry(spec, start, level)?;
            let places = t.places_at(level);
            let affine = places.iter().filter(|p| p.is_affine()).count() as u64;
            let n = places.len() as u64;
            tree = Some(t);
            (n, affine, FiberMethod::LocalEngine)
        }
    };
    let mut ramified = tree
        .as_ref()
        .is_some_and(|t| t.fibers.iter().flatten().any(PlaceClass::is_ramified));
    let mut predicted = None;
    let mut trail = Vec::new();
    if predict {
        let last = spec.step(level - 2);
        let classes: Vec<PlaceClass> = if level == 2 {
            let datum = match start {
                Start::Point(a) => datum_at_point(&last.rhs, a)?,
                Start::Infinity => datum_at_infinity(&last.rhs),
            };
            vec![classify_step(last, datum)?]
        } else {
            let below = match &tree {
                Some(t) => LocalTree {
                    precision: t.precision,
                    levels: t.levels[..level - 1].to_vec(),
                    fibers: t.fibers[..level - 2].to_vec(),
                },
                None => lift_with_retry(spec, start, level - 1)?,
            };
            for classes in &below.fibers {
                trail.push(summarize(classes));
                ramified |= classes.iter().any(PlaceClass::is_ramified);
            }
            below
                .places_at(level - 1)
                .iter()
                .map(|p| classify_step(last, rhs_datum(last, p)?))
                .collect::<Result<_, _>>()?
        };
        ramified |= classes.iter().any(PlaceClass::is_ramified);
        predicted = Some(classes.iter().map(PlaceClass::degree_one_count).sum());
        trail.push(summarize(&classes));
    }
    Ok(FiberRecord { start, enumerated, affine, predicted, ramified, method, trail })
}

/// Count without the scale guard, for callers with their own budget.
pub fn count_unguarded(spec: &TowerSpec, level: usize, predict: bool) -> Result<SplittingReport, AnalysisError> {
    let tables = FiberTables::new(spec);
    let mut starts: Vec<Start> = spec.field().elements().map(Start::Point).collect();
    starts.push(Start::Infinity);
    let fibers = starts
        .par_iter()
        .map(|&s| fiber_record(spec, &tables, s, level, predict))
        .collect::<Result<Vec<_>, _>>()?;
    let total = fibers.iter().map(|f| f.enumerated).sum();
    let n_affine = fibers.iter().map(|f| f.affine).sum();
    Ok(SplittingReport { level, n_affine, n_infinite: total - n_affine, total, fibers })
}

/// `N(T_j)`, split into places with all coordinates regular and the rest.
pub fn count_rational_places(spec: &TowerSpec, level: usize) -> Result<SplittingReport, AnalysisError> {
    guard(spec, level)?;
    count_unguarded(spec, level, false)
}

/// Counts together with the classifier's predicted fiber sizes.
pub fn splitting_report(spec: &TowerSpec, level: usize) -> Result<SplittingReport, AnalysisError> {
    guard(spec, level)?;
    count_unguarded(spec, level, true)
}
