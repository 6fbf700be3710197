//! Parameter sweeps over the Kummer families.
//!
//! A grid file is TOML with a global `depth` and a list of `[[points]]` tables, each
//! giving `family`, lists `p`, `n`, `m`, and `coefficients = "ones" | "random"`.

use std::fmt::Write as _;
use std::path::Path;

use num_integer::Roots;
use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use towerlab::analysis::{
    count_rational_places, dv_bound, lambda_bound_family_a, lambda_bound_family_b, AnalysisError,
};
use towerlab::tower::{family_tower_a, family_tower_b, Family, FamilyParams};

use crate::commands::CliError;
use crate::specfile::SpecFileError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Deserialize)]
pub enum FamilyTag {
    A,
    B,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coefficients {
    #[default]
    Ones,
    Random,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridRange {
    pub family: FamilyTag,
    pub p: Vec<u64>,
    pub n: Vec<u32>,
    pub m: Vec<u32>,
    #[serde(default)]
    pub coefficients: Coefficients,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusGrid {
    pub depth: usize,
    pub points: Vec<GridRange>,
}

pub fn parse_grid(text: &str) -> Result<CensusGrid, SpecFileError> {
    toml::from_str(text).map_err(|e| {
        let offset = e.span().map_or(0, |s| s.start);
        let before = &text[..offset];
        SpecFileError::Parse {
            line: before.matches('\n').count() + 1,
            col: before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1,
            msg: e.message().to_string(),
        }
    })
}

pub fn load_grid(path: &Path) -> Result<CensusGrid, SpecFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| SpecFileError::Io { path: path.display().to_string(), source })?;
    parse_grid(&text)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct PointKey {
    family: FamilyTag,
    p: u64,
    n: u32,
    m: u32,
    coefficients: Coefficients,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusRow {
    key: PointKey,
    q: Option<u64>,
    exponent: Option<u64>,
    counts: Vec<Option<u64>>,
    lambda_bound: Option<Rational64>,
    dv_bound: Option<f64>,
    optimal: bool,
    note: String,
}

/// `lambda == sqrt(q) - 1` exactly; only possible when `q` is a square.
fn is_optimal(lambda: Rational64, q: u64) -> bool {
    let s = q.sqrt();
    s * s == q && lambda == Rational64::from_integer(s as i64 - 1)
}

fn clean(s: impl ToString) -> String {
    s.to_string().replace([',', '\n'], ";")
}

fn run_point(key: PointKey, depth: usize, seed: u64, index: u64) -> CensusRow {
    let mut row = CensusRow {
        key,
        q: None,
        exponent: None,
        counts: vec![None; depth],
        lambda_bound: None,
        dv_bound: None,
        optimal: false,
        note: String::new(),
    };
    let family = match key.family {
        FamilyTag::A => Family::A,
        FamilyTag::B => Family::B,
    };
    let params = match FamilyParams::new(family, key.p, key.n, key.m) {
        Ok(p) => p,
        Err(e) => {
            row.note = format!("skipped: {}", clean(e));
            return row;
        }
    };
    let params = if key.coefficients == Coefficients::Random {
        let field = params.field().clone();
        let sub: Vec<_> = field
            .elements()
            .filter(|&x| !x.is_zero() && field.is_in_subfield(x, params.subfield_size()).unwrap_or(false))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(index));
        let a = *sub.choose(&mut rng).expect("subfield has units");
        let b = *sub.choose(&mut rng).expect("subfield has units");
        let e = params.exps.clone();
        params.with_coefficients(vec![a], vec![b], e)
    } else {
        params
    };
    let q = params.field().size();
    row.q = Some(q);
    row.exponent = Some(params.exponent());
    let tower = match family {
        Family::A => family_tower_a(&params),
        Family::B => family_tower_b(&params),
    };
    let tower = match tower {
        Ok(t) => t,
        Err(e) => {
            row.note = format!("skipped: {}", clean(e));
            return row;
        }
    };
    let lambda = match family {
        Family::A => lambda_bound_family_a(q),
        Family::B => lambda_bound_family_b(params.exponent()),
    };
    match lambda {
        Ok(l) => {
            row.lambda_bound = Some(l);
            row.optimal = is_optimal(l, q);
        }
        Err(e) => row.note = clean(e),
    }
    row.dv_bound = dv_bound(q).ok();
    if key.coefficients == Coefficients::Random {
        let f = params.field();
        row.note = format!("a={} b={}", f.fmt_elem(params.a[0]), f.fmt_elem(params.b[0])).replace(',', " ");
    }
    for j in 1..=depth {
        match count_rational_places(&tower, j) {
            Ok(r) => row.counts[j - 1] = Some(r.total),
            Err(AnalysisError::ScaleExceeded(_)) => {
                let sep = if row.note.is_empty() { "" } else { "; " };
                row.note = format!("{}{sep}scale guard from level {j}", row.note);
                break;
            }
            Err(e) => {
                row.note = format!("count failed: {}", clean(e));
                break;
            }
        }
    }
    row
}

/// Grid points in parallel; rows sorted by `(family, p, n, m, coefficients)`.
pub fn run_census(grid: &CensusGrid, seed: u64) -> Vec<CensusRow> {
    let mut keys = Vec::new();
    for r in &grid.points {
        for &p in &r.p {
            for &n in &r.n {
                for &m in &r.m {
                    keys.push(PointKey { family: r.family, p, n, m, coefficients: r.coefficients });
                }
            }
        }
    }
    keys.sort();
    keys.dedup();
    let mut rows: Vec<CensusRow> = keys
        .par_iter()
        .enumerate()
        .map(|(i, &k)| run_point(k, grid.depth, seed, i as u64))
        .collect();
    rows.sort_by_key(|a| a.key);
    rows
}

pub fn census_csv(rows: &[CensusRow], depth: usize) -> String {
    let mut s = String::from("family,p,n,m,q,exponent,coefficients");
    for j in 1..=depth {
        let _ = write!(s, ",N_{j}");
    }
    s.push_str(",lambda_bound,dv_bound,optimal,note\n");
    let dash = || "-".to_string();
    for r in rows {
        let k = r.key;
        let fam = match k.family {
            FamilyTag::A => "A",
            FamilyTag::B => "B",
        };
        let coeffs = match k.coefficients {
            Coefficients::Ones => "ones",
            Coefficients::Random => "random",
        };
        let _ = write!(
            s,
            "{fam},{},{},{},{},{},{coeffs}",
            k.p,
            k.n,
            k.m,
            r.q.map_or_else(dash, |q| q.to_string()),
            r.exponent.map_or_else(dash, |e| e.to_string())
        );
        for c in &r.counts {
            let _ = write!(s, ",{}", c.map_or_else(dash, |c| c.to_string()));
        }
        let _ = writeln!(
            s,
            ",{},{},{},{}",
            r.lambda_bound.map_or_else(dash, |l| l.to_string()),
            r.dv_bound.map_or_else(dash, |d| format!("{d:.6}")),
            r.optimal,
            r.note
        );
    }
    s
}

pub fn census_text(rows: &[CensusRow]) -> String {
    let mut s = String::new();
    for r in rows {
        let k = r.key;
        let counts: Vec<String> = r.counts.iter().map(|c| c.map_or("-".into(), |c| c.to_string())).collect();
        let _ = writeln!(
            s,
            "{:?} p={} n={} m={} ({:?}): N = [{}], lambda >= {}, optimal {}{}",
            k.family,
            k.p,
            k.n,
            k.m,
            k.coefficients,
            counts.join(", "),
            r.lambda_bound.map_or("-".into(), |l| l.to_string()),
            r.optimal,
            if r.note.is_empty() { String::new() } else { format!(" [{}]", r.note) }
        );
    }
    s
}

pub fn cmd_census(grid: &CensusGrid, seed: u64, format: crate::commands::Format) -> Result<String, CliError> {
    if grid.depth == 0 {
        return Err(CliError::Usage("census depth must be at least 1".into()));
    }
    let rows = run_census(grid, seed);
    Ok(match format {
        crate::commands::Format::Csv => census_csv(&rows, grid.depth),
        crate::commands::Format::Text => census_text(&rows),
    })
}
