//! Tower spec files in TOML.
//!
//! Explicit towers give `p`, `q` (the subfield `F_q`), `n` (so `F_Q = F_{q^n}`) and a
//! list of `[[steps]]`, each with `kind = "artin_schreier" | "kummer"`, `k` for Kummer
//! steps, `lhs` (optional `q`-coefficients of an Artin–Schreier left-hand side) and
//! `rhs_num`/`rhs_den` in polynomial text form. An explicit tower with `alpha` and no
//! steps is the abelian tower `T^{q^{n-1}} + ... + T = 1/(Tr(x)^2 - alpha)`.
//!
//! Family towers give `family = "A" | "B"`, `p`, `n`, `m` and optionally `a`, `b` and
//! `r` (family A) or `s` (family B). Field elements are integers or strings in the
//! element text form, e.g. `"(0,1)"`.

use std::ops::Range;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

use towerlab::gf::{Elem, FiniteField};
use towerlab::poly::text::{parse_elem, parse_poly};
use towerlab::poly::{MultiPoly, RatFunc, UPoly};
use towerlab::symmetry::{elementary_symmetric_nq, NQFunction};
use towerlab::tower::{
    builder_as_tower, family_tower_a, family_tower_b, AsLhs, AsVariant, Family, FamilyParams, StepSpec,
    TowerSpec,
};

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

/// A parsed tower, with the family parameters when it came from a family shortcut.
#[derive(Clone, Debug)]
pub struct LoadedSpec {
    pub tower: TowerSpec,
    pub family: Option<FamilyParams>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ElemText {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StepFile {
    kind: Spanned<String>,
    k: Option<Spanned<u64>>,
    lhs: Option<Vec<Spanned<ElemText>>>,
    rhs_num: Spanned<String>,
    rhs_den: Option<Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    label: Option<String>,
    family: Option<Spanned<String>>,
    p: Spanned<u64>,
    q: Option<Spanned<u64>>,
    n: Spanned<u32>,
    m: Option<Spanned<u32>>,
    alpha: Option<Spanned<ElemText>>,
    a: Option<Vec<Spanned<ElemText>>>,
    b: Option<Vec<Spanned<ElemText>>>,
    r: Option<Vec<Spanned<u64>>>,
    s: Option<Vec<Spanned<u64>>>,
    #[serde(default)]
    steps: Vec<StepFile>,
}

/// 1-based line and column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn err_at(&self, offset: usize, msg: impl Into<String>) -> SpecFileError {
        let (line, col) = line_col(self.text, offset);
        SpecFileError::Parse { line, col, msg: msg.into() }
    }

    fn err<T>(&self, span: Range<usize>, msg: impl Into<String>) -> Result<T, SpecFileError> {
        Err(self.err_at(span.start, msg))
    }

    /// Offset of the `col`-th character inside a string value starting at `span`.
    fn inner_offset(&self, span: &Range<usize>, col: usize) -> usize {
        let body = &self.text[span.start + 1..span.end];
        span.start + 1 + body.chars().take(col.saturating_sub(1)).map(char::len_utf8).sum::<usize>()
    }

    fn poly(&self, field: &FiniteField, s: &Spanned<String>) -> Result<UPoly, SpecFileError> {
        parse_poly(field, s.get_ref()).map_err(|e| self.err_at(self.inner_offset(&s.span(), e.col), e.msg))
    }

    fn elem(&self, field: &FiniteField, e: &Spanned<ElemText>) -> Result<Elem, SpecFileError> {
        match e.get_ref() {
            ElemText::Int(i) => Ok(field.from_int(*i)),
            ElemText::Text(t) => {
                parse_elem(field, t).map_err(|err| self.err_at(self.inner_offset(&e.span(), err.col), err.msg))
            }
        }
    }

    fn elems(&self, field: &FiniteField, v: &Option<Vec<Spanned<ElemText>>>) -> Result<Option<Vec<Elem>>, SpecFileError> {
        v.as_ref().map(|v| v.iter().map(|e| self.elem(field, e)).collect()).transpose()
    }
}

pub fn parse_spec(text: &str) -> Result<LoadedSpec, SpecFileError> {
    let file: SpecFile = toml::from_str(text).map_err(|e| {
        let (line, col) = line_col(text, e.span().map_or(0, |s| s.start));
        SpecFileError::Parse { line, col, msg: e.message().to_string() }
    })?;
    let src = Source { text };
    match &file.family {
        Some(f) => family_spec(&src, &file, f),
        None => explicit_spec(&src, &file),
    }
}

pub fn load_spec(path: &Path) -> Result<LoadedSpec, SpecFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| SpecFileError::Io { path: path.display().to_string(), source })?;
    parse_spec(&text)
}

fn family_spec(src: &Source, file: &SpecFile, tag: &Spanned<String>) -> Result<LoadedSpec, SpecFileError> {
    let family = match tag.get_ref().as_str() {
        "A" => Family::A,
        "B" => Family::B,
        other => return src.err(tag.span(), format!("unknown family '{other}', expected \"A\" or \"B\"")),
    };
    let Some(m) = &file.m else {
        return src.err(tag.span(), "family towers need m");
    };
    if !file.steps.is_empty() || file.alpha.is_some() || file.q.is_some() {
        return src.err(tag.span(), "family towers take p, n, m, a, b, r/s only");
    }
    let (exps, wrong) = match family {
        Family::A => (&file.r, &file.s),
        Family::B => (&file.s, &file.r),
    };
    if let Some(w) = wrong.as_ref().and_then(|w| w.first()) {
        let name = if family == Family::A { "s" } else { "r" };
        return src.err(w.span(), format!("'{name}' does not belong to family {}", tag.get_ref()));
    }
    let mut params = FamilyParams::new(family, *file.p.get_ref(), *file.n.get_ref(), *m.get_ref())
        .map_err(|e| src.err_at(file.p.span().start, e.to_string()))?;
    let field = params.field().clone();
    let a = src.elems(&field, &file.a)?.unwrap_or_else(|| params.a.clone());
    let b = src.elems(&field, &file.b)?.unwrap_or_else(|| params.b.clone());
    let e = exps.as_ref().map_or_else(|| params.exps.clone(), |v| v.iter().map(|x| *x.get_ref()).collect());
    for (name, empty) in [("a", a.is_empty()), ("b", b.is_empty()), ("r/s", e.is_empty())] {
        if empty {
            return src.err(tag.span(), format!("'{name}' must not be empty"));
        }
    }
    params = params.with_coefficients(a, b, e);
    let tower = match family {
        Family::A => family_tower_a(&params),
        Family::B => family_tower_b(&params),
    }
    .map_err(|e| src.err_at(tag.span().start, e.to_string()))?;
    let tower = match &file.label {
        Some(l) => relabel(tower, l),
        None => tower,
    };
    Ok(LoadedSpec { tower, family: Some(params) })
}

fn relabel(t: TowerSpec, label: &str) -> TowerSpec {
    let precision = t.precision();
    TowerSpec::new(t.field(), t.q(), t.n(), t.listed_steps().to_vec(), label)
        .and_then(|s| s.with_precision(precision))
        .expect("relabelling keeps a valid spec")
}

fn explicit_spec(src: &Source, file: &SpecFile) -> Result<LoadedSpec, SpecFileError> {
    let p = *file.p.get_ref();
    let Some(q) = &file.q else {
        return src.err(file.p.span(), "explicit towers need q");
    };
    let qv = *q.get_ref();
    let mut k = 0u32;
    let mut pk = 1u64;
    while pk < qv {
        pk = pk.saturating_mul(p);
        k += 1;
    }
    if pk != qv || k == 0 {
        return src.err(q.span(), format!("q = {qv} is not a power of p = {p}"));
    }
    let n = *file.n.get_ref();
    let field = FiniteField::new(p, k * n, None).map_err(|e| src.err_at(file.p.span().start, e.to_string()))?;
    for (name, v) in [("m", file.m.as_ref().map(|m| m.span())), ("a", file.a.as_ref().and_then(|a| a.first()).map(|a| a.span()))] {
        if let Some(span) = v {
            return src.err(span, format!("'{name}' is only used by family towers"));
        }
    }
    let label = file.label.clone().unwrap_or_else(|| format!("tower over F_{}", field.size()));
    if file.steps.is_empty() {
        let Some(alpha) = &file.alpha else {
            return src.err(file.p.span(), "explicit towers need [[steps]] or alpha");
        };
        let alpha_e = src.elem(&field, alpha)?;
        let tower = abelian_tower(&field, qv, n, alpha_e, &label).map_err(|m| src.err_at(alpha.span().start, m))?;
        return Ok(LoadedSpec { tower, family: None });
    }
    if let Some(alpha) = &file.alpha {
        return src.err(alpha.span(), "alpha is only used when no steps are given");
    }
    let mut steps = Vec::new();
    for s in &file.steps {
        let num = src.poly(&field, &s.rhs_num)?;
        let den = match &s.rhs_den {
            Some(d) => src.poly(&field, d)?,
            None => UPoly::constant(&field, field.one()),
        };
        let rhs = RatFunc::new(num, den).map_err(|e| {
            let at = s.rhs_den.as_ref().map_or(s.rhs_num.span(), |d| d.span());
            src.err_at(at.start, e.to_string())
        })?;
        let step = match s.kind.get_ref().as_str() {
            "artin_schreier" => {
                if let Some(k) = &s.k {
                    return src.err(k.span(), "k belongs to kummer steps");
                }
                let lhs = match src.elems(&field, &s.lhs)? {
                    Some(a) => AsLhs::from_q_coeffs(&field, qv, &a),
                    None => AsLhs::trace_form(&field, qv, n),
                }
                .map_err(|e| src.err_at(s.kind.span().start, e.to_string()))?;
                StepSpec::artin_schreier(lhs, rhs)
            }
            "kummer" => {
                let Some(k) = &s.k else {
                    return src.err(s.kind.span(), "kummer steps need k");
                };
                if let Some(l) = s.lhs.as_ref().and_then(|l| l.first()) {
                    return src.err(l.span(), "lhs belongs to artin_schreier steps");
                }
                StepSpec::kummer(*k.get_ref(), rhs)
            }
            other => {
                return src.err(
                    s.kind.span(),
                    format!("unknown step kind '{other}', expected \"artin_schreier\" or \"kummer\""),
                )
            }
        };
        steps.push(step);
    }
    let first = file.steps[0].kind.span().start;
    let tower = TowerSpec::new(&field, qv, n, steps, label).map_err(|e| src.err_at(first, e.to_string()))?;
    Ok(LoadedSpec { tower, family: None })
}

fn abelian_tower(field: &FiniteField, q: u64, n: u32, alpha: Elem, label: &str) -> Result<TowerSpec, String> {
    let nv = n as usize;
    let one = NQFunction::new(q, MultiPoly::constant(field, nv, field.one()), None).map_err(|e| e.to_string())?;
    let s1 = elementary_symmetric_nq(field, nv, q, 1).map_err(|e| e.to_string())?;
    let h_num = s1
        .source_num()
        .pow(2)
        .try_add(&MultiPoly::constant(field, nv, field.neg(alpha)))
        .map_err(|e| e.to_string())?;
    let h = NQFunction::new(q, h_num, None).map_err(|e| e.to_string())?;
    let t = builder_as_tower(n, q, &one, &h, AsVariant::AllSplit).map_err(|e| e.to_string())?;
    Ok(relabel(t, label))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_and_column() {
        assert_eq!(line_col("ab\ncd", 4), (2, 2));
        assert_eq!(line_col("x", 0), (1, 1));
    }
}
