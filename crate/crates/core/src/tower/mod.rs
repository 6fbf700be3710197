//! Towers of Artin–Schreier and Kummer steps over `F_Q(x_1)`: specifications,
//! place classification, a Laurent-series engine for special places, validation,
//! subextension chains and the named families.

mod builders;
mod classify;
mod families;
pub mod fiber;
pub mod laurent;
mod local;
mod spec;
mod subext;
mod validate;

use thiserror::Error;

use crate::gf::FieldError;
use crate::poly::PolyError;
use crate::symmetry::SymmetryError;

pub use builders::{builder_as_tower, AsVariant};
pub use classify::{
    classify_as_place, classify_kummer_place, datum_at_infinity, datum_at_point, Branch,
    LocalDatum, PlaceClass,
};
pub use families::{family_tower_a, family_tower_b, Family, FamilyParams};
pub use local::{
    lift_local_place, lift_with_retry, rhs_datum, Lifted, LocalPlace, LocalTree, Start, DEFAULT_PRECISION,
    MAX_PRECISION,
};
pub use spec::{AsLhs, StepKind, StepSpec, TowerSpec};
pub use subext::{resolve_subextensions, SubextChain};
pub use validate::{build_tower, StepEvidence, Tier, ValidatedTower};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error("invalid step: {0}")]
    InvalidStep(String),
    #[error("irreducibility of step {step} could not be verified")]
    IrreducibilityUnverified { step: usize },
    #[error("pole order {m} divisible by the characteristic")]
    WildUnreduced { m: u64 },
    #[error("zero residue where a unit was required")]
    ZeroResidue,
    #[error("series precision exhausted")]
    PrecisionExhausted,
    #[error("invalid family parameters: {0}")]
    InvalidParams(String),
    #[error("degree constraint violated: {0}")]
    DegreeConstraintViolated(String),
    #[error("denominator has a root in the constant field: {0}")]
    HasSubfieldRoot(String),
    #[error("right-hand side is a linearized image")]
    LinearizedImage,
    #[error("elements do not form a basis of the kernel")]
    NotABasis,
    #[error("B_{0} vanished")]
    DegenerateB(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}
