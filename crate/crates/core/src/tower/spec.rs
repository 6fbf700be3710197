use crate::gf::{Elem, FiniteField};
use crate::poly::{LinearizedPoly, RatFunc, UPoly};

use super::local::{DEFAULT_PRECISION, MAX_PRECISION};
use super::TowerError;

/// Additive left-hand side of an Artin–Schreier step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsLhs {
    poly: LinearizedPoly,
    /// `Some(q)` when the polynomial is the all-ones form `T^{q^{n-1}} + ... + T`.
    trace_q: Option<u64>,
}

impl AsLhs {
    pub fn trace_form(field: &FiniteField, q: u64, n: u32) -> Result<Self, TowerError> {
        Ok(AsLhs { poly: LinearizedPoly::trace_form(field, q, n)?, trace_q: Some(q) })
    }

    /// `sum_i a_i T^{q^i}`; recognised as the all-ones form when every `a_i = 1`.
    pub fn from_q_coeffs(field: &FiniteField, q: u64, a: &[Elem]) -> Result<Self, TowerError> {
        let poly = LinearizedPoly::from_q_coeffs(field, q, a)?;
        let all_ones = !a.is_empty() && a.iter().all(|&c| c == field.one());
        Ok(AsLhs { poly, trace_q: all_ones.then_some(q) })
    }

    pub fn poly(&self) -> &LinearizedPoly {
        &self.poly
    }

    pub fn trace_q(&self) -> Option<u64> {
        self.trace_q
    }

    pub fn degree(&self) -> u64 {
        self.poly.degree() as u64
    }

    fn map_into(&self, emb: &crate::gf::Embedding) -> Result<Self, TowerError> {
        Ok(AsLhs {
            poly: LinearizedPoly::from_expanded(self.poly.expanded().map_into(emb))?,
            trace_q: self.trace_q,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    ArtinSchreier(AsLhs),
    Kummer { k: u64 },
}

/// `lhs(x_{i+1}) = rhs(x_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepSpec {
    pub kind: StepKind,
    pub rhs: RatFunc,
}

impl StepSpec {
    pub fn artin_schreier(lhs: AsLhs, rhs: RatFunc) -> Self {
        StepSpec { kind: StepKind::ArtinSchreier(lhs), rhs }
    }

    pub fn kummer(k: u64, rhs: RatFunc) -> Self {
        StepSpec { kind: StepKind::Kummer { k }, rhs }
    }

    pub fn degree(&self) -> u64 {
        match &self.kind {
            StepKind::ArtinSchreier(l) => l.degree(),
            StepKind::Kummer { k } => *k,
        }
    }

    /// Left-hand side evaluated at a constant.
    pub fn lhs_value(&self, field: &FiniteField, y: Elem) -> Elem {
        match &self.kind {
            StepKind::ArtinSchreier(l) => l.poly().apply(y),
            StepKind::Kummer { k } => field.pow(y, *k),
        }
    }

    /// Left-hand side as a polynomial in `T`.
    pub fn lhs_poly(&self, field: &FiniteField) -> UPoly {
        match &self.kind {
            StepKind::ArtinSchreier(l) => l.poly().expanded().clone(),
            StepKind::Kummer { k } => UPoly::monomial(field, field.one(), *k as usize),
        }
    }
}

/// Constant field `F_Q` (with `F_q` inside it), and the steps. Levels beyond the
/// listed steps repeat the last one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSpec {
    field: FiniteField,
    q: u64,
    n: u32,
    steps: Vec<StepSpec>,
    label: String,
    /// Starting precision of the local engine.
    precision: usize,
}

impl TowerSpec {
    pub fn new(
        field: &FiniteField,
        q: u64,
        n: u32,
        steps: Vec<StepSpec>,
        label: impl Into<String>,
    ) -> Result<Self, TowerError> {
        if field.subfield_degree(q).is_none() {
            return Err(TowerError::InvalidStep(format!("F_{q} is not a subfield of F_{}", field.size())));
        }
        if steps.is_empty() {
            return Err(TowerError::InvalidStep("a tower needs at least one step".into()));
        }
        for (i, s) in steps.iter().enumerate() {
            if s.rhs.field() != field {
                return Err(TowerError::InvalidStep(format!("step {}: rhs over a different field", i + 1)));
            }
            match &s.kind {
                StepKind::ArtinSchreier(l) => {
                    if l.poly().field() != field {
                        return Err(TowerError::InvalidStep(format!("step {}: lhs over a different field", i + 1)));
                    }
                    if l.degree() < 2 {
                        return Err(TowerError::InvalidStep(format!("step {}: lhs of degree < 2", i + 1)));
                    }
                }
                StepKind::Kummer { k } => {
                    if *k < 2 || !(field.size() - 1).is_multiple_of(*k) {
                        return Err(TowerError::InvalidStep(format!(
                            "step {}: k = {k} must be at least 2 and divide {}",
                            i + 1,
                            field.size() - 1
                        )));
                    }
                }
            }
        }
        Ok(TowerSpec { field: field.clone(), q, n, steps, label: label.into(), precision: DEFAULT_PRECISION })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Starting precision for local expansions; retries still double it up to
    /// [`MAX_PRECISION`].
    pub fn with_precision(mut self, precision: usize) -> Result<Self, TowerError> {
        if !(4..=MAX_PRECISION).contains(&precision) {
            return Err(TowerError::InvalidParams(format!("precision {precision} outside 4..={MAX_PRECISION}")));
        }
        self.precision = precision;
        Ok(self)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn listed_steps(&self) -> &[StepSpec] {
        &self.steps
    }

    /// Step from level `i + 1` to level `i + 2` (zero-based `i`).
    pub fn step(&self, i: usize) -> &StepSpec {
        &self.steps[i.min(self.steps.len() - 1)]
    }

    /// `[T_j : T_1]`.
    pub fn degree_to(&self, level: usize) -> u64 {
        (0..level.saturating_sub(1)).map(|i| self.step(i).degree()).product()
    }

    /// Same tower over a larger constant field.
    pub fn base_change(&self, big: &FiniteField) -> Result<TowerSpec, TowerError> {
        let emb = self.field.embedding_into(big)?;
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let kind = match &s.kind {
                    StepKind::ArtinSchreier(l) => StepKind::ArtinSchreier(l.map_into(&emb)?),
                    StepKind::Kummer { k } => StepKind::Kummer { k: *k },
                };
                Ok(StepSpec { kind, rhs: s.rhs.map_into(&emb) })
            })
            .collect::<Result<Vec<_>, TowerError>>()?;
        Ok(TowerSpec {
            field: big.clone(),
            q: self.q,
            n: self.n,
            steps,
            label: format!("{} over F_{}", self.label, big.size()),
            precision: self.precision,
        })
    }
}
