//! Point counts, splitting cross-checks, genera and bounds for towers.

mod bounds;
mod count;
mod genus;
mod report;
mod zeta;

use thiserror::Error;

use crate::gf::FieldError;
use crate::poly::PolyError;
use crate::tower::TowerError;

pub use bounds::{
    degdiff_bound_family_a, dv_bound, genus_bound_family_a, lambda_bound_family_a,
    lambda_bound_family_b, DegDiffBound,
};
pub use count::{
    count_rational_places, count_unguarded, enumerate_affine_points, splitting_report, AffinePoint,
    FiberMethod, FiberRecord, SplittingReport, ENUM_DEGREE_LIMIT, ENUM_FIELD_LIMIT,
};
pub use genus::{genus_bound_recursive, genus_level2_exact, GenusReport};
pub use report::{ratio_report, ratio_csv, GenusKind, RatioRow, CSV_HEADER};
pub use zeta::{zeta_genus_oracle, ZETA_WORK_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("scale guard exceeded: {0}")]
    ScaleExceeded(String),
    #[error("no genus up to {0} is consistent with the point counts")]
    NoConsistentGenus(u64),
    #[error("Hurwitz formula gave a non-integral or negative genus (2g - 2 = {0})")]
    NonIntegralGenus(i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}
