//! Subcommand bodies. Each returns the text to emit, so output can be checked
//! byte for byte.

use std::fmt::Write as _;

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use towerlab::analysis::{
    dv_bound, genus_bound_family_a, genus_bound_recursive, genus_level2_exact, lambda_bound_family_a,
    lambda_bound_family_b, ratio_csv, ratio_report, splitting_report, AnalysisError, FiberMethod,
};
use towerlab::poly::text::format_poly;
use towerlab::poly::{roots, span_basis};
use towerlab::tower::{build_tower, resolve_subextensions, Family, Start, StepKind, TowerError};

use crate::specfile::{LoadedSpec, SpecFileError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecFileError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for validation failures, 3 for the scale guard, 4 for unparsable input.
    pub fn exit_code(&self) -> i32 {
        fn tower_code(e: &TowerError) -> i32 {
            match e {
                TowerError::IrreducibilityUnverified { .. } | TowerError::InvalidStep(_) => 2,
                _ => 1,
            }
        }
        match self {
            CliError::Spec(SpecFileError::Parse { .. }) => 4,
            CliError::Tower(e) | CliError::Analysis(AnalysisError::Tower(e)) => tower_code(e),
            CliError::Analysis(AnalysisError::ScaleExceeded(_)) => 3,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Text,
}

pub fn cmd_build(spec: &LoadedSpec, depth: usize) -> Result<String, CliError> {
    let tower = build_tower(&spec.tower, depth)?;
    let mut s = String::new();
    for e in tower.evidence() {
        let _ = writeln!(s, "step {}: {} ({})", e.step, e.tier, e.detail);
    }
    let _ = writeln!(s, "{}", tower.summary());
    Ok(s)
}

pub fn cmd_count(spec: &LoadedSpec, depth: usize, format: Format) -> Result<String, CliError> {
    if depth == 0 {
        return Err(CliError::Usage("--depth must be at least 1".into()));
    }
    match format {
        Format::Csv => Ok(ratio_csv(&ratio_report(&spec.tower, depth, spec.family.as_ref())?)),
        Format::Text => {
            let mut s = String::new();
            for j in 1..=depth {
                s.push_str(&splitting_report(&spec.tower, j)?.to_text(spec.tower.field()));
            }
            Ok(s)
        }
    }
}

/// How the step into `level` behaves above each degree-one place of `T_1`.
pub fn cmd_classify(spec: &LoadedSpec, level: usize, format: Format) -> Result<String, CliError> {
    if level < 2 {
        return Err(CliError::Usage("--level must be at least 2".into()));
    }
    let report = splitting_report(&spec.tower, level)?;
    if format == Format::Text {
        return Ok(report.to_text(spec.tower.field()));
    }
    let field = spec.tower.field();
    let mut s = String::from("place,class,predicted,enumerated,method\n");
    for f in &report.fibers {
        let place = match f.start {
            Start::Point(a) => format!("x_1={}", field.fmt_elem(a).replace(',', " ")),
            Start::Infinity => "P_inf".into(),
        };
        let class = f.trail.last().map_or("-".to_string(), |c| c.replace(',', " "));
        let predicted = f.predicted.map_or("-".to_string(), |p| p.to_string());
        let method = match f.method {
            FiberMethod::Enumeration => "enumeration",
            FiberMethod::LocalEngine => "local engine",
        };
        let _ = writeln!(s, "{place},{class},{predicted},{},{method}", f.enumerated);
    }
    Ok(s)
}

pub fn cmd_genus(spec: &LoadedSpec, depth: usize, format: Format) -> Result<String, CliError> {
    let tower = &spec.tower;
    let q = tower.field().size();
    let mut report = genus_level2_exact(tower)?;
    report.dv_bound = Some(dv_bound(q)?);
    if let Some(f) = &spec.family {
        report.lambda_bound = Some(match f.family {
            Family::A => lambda_bound_family_a(q)?,
            Family::B => lambda_bound_family_b(f.exponent())?,
        });
        if f.family == Family::A {
            report.upper_bound = Some(genus_bound_family_a(q, f.exponent(), 2)?);
        }
    }
    let g2 = report.exact.expect("exact at level 2");
    let mut bounds: Vec<(usize, Rational64)> = Vec::new();
    for j in 3..=depth {
        let mut b = Rational64::from_integer(genus_bound_recursive(tower, j)? as i64);
        if let Some(f) = spec.family.as_ref().filter(|f| f.family == Family::A) {
            b = b.min(genus_bound_family_a(q, f.exponent(), j as u32)?);
        }
        bounds.push((j, b));
    }
    let mut s = String::new();
    match format {
        Format::Csv => {
            s.push_str("level,kind,genus\n1,exact,0\n");
            let _ = writeln!(s, "2,exact,{g2}");
            for (j, b) in bounds {
                let _ = writeln!(s, "{j},bound,{b}");
            }
        }
        Format::Text => {
            let _ = writeln!(s, "g(T_2) = {g2} (Hurwitz)");
            let _ = writeln!(s, "degDiff(T_2/T_1) = {}", report.deg_diff);
            for (place, c) in &report.contributions {
                let _ = writeln!(s, "  {place}: {c}");
            }
            if let Some(u) = report.upper_bound {
                let _ = writeln!(s, "family bound: g(T_2) < {u}");
            }
            for (j, b) in bounds {
                let _ = writeln!(s, "g(T_{j}) <= {b}");
            }
            if let Some(l) = report.lambda_bound {
                let _ = writeln!(s, "lambda >= {l}");
            }
            let _ = writeln!(s, "Drinfeld-Vladut bound: {:.6}", report.dv_bound.expect("set above"));
        }
    }
    Ok(s)
}

/// Chain of degree-`p` steps for the first Artin–Schreier step. The kernel basis is
/// picked greedily in element order, or in a seeded shuffled order.
pub fn cmd_subext(spec: &LoadedSpec, seed: Option<u64>) -> Result<String, CliError> {
    let StepKind::ArtinSchreier(lhs) = &spec.tower.step(0).kind else {
        return Err(CliError::Usage("subext needs an Artin-Schreier first step".into()));
    };
    let field = spec.tower.field();
    let lin = lhs.poly();
    let mut kernel: Vec<_> = roots(lin.expanded())
        .map_err(TowerError::from)?
        .into_iter()
        .filter(|b| !b.is_zero())
        .collect();
    if let Some(seed) = seed {
        kernel.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut basis = Vec::new();
    for &b in &kernel {
        basis.push(b);
        if span_basis(field, &basis).len() < basis.len() {
            basis.pop();
        }
    }
    let chain = resolve_subextensions(lin, &basis)?;
    let mut s = String::new();
    let names: Vec<String> = chain.basis.iter().map(|&b| field.fmt_elem(b)).collect();
    let _ = writeln!(s, "basis: {}", names.join(" "));
    for (i, (step, b)) in chain.steps.iter().zip(&chain.big_b).enumerate() {
        let _ = writeln!(s, "step {}: B = {}, {}", i + 1, field.fmt_elem(*b), format_poly(step));
    }
    let composed = chain.composed();
    let _ = writeln!(s, "composition: {}", format_poly(&composed));
    let _ = writeln!(s, "equals lhs: {}", &composed == lin.expanded());
    Ok(s)
}
