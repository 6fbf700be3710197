//! Factorisation over `F_Q`: square-free split, distinct-degree, then equal-degree
//! splitting (Cantor–Zassenhaus, with the trace map in characteristic 2).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PolyError, UPoly};
use crate::gf::{prime_factors, Elem};

/// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
pub fn factor_univariate(f: &UPoly) -> Result<Vec<(UPoly, u32)>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::DivisionByZeroPoly);
    }
    let mut out: Vec<(UPoly, u32)> = Vec::new();
    for (sf, mult) in squarefree(&f.monic())? {
        for (g, d) in distinct_degree(&sf)? {
            for h in equal_degree(&g, d)? {
                out.push((h, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let mut merged: Vec<(UPoly, u32)> = Vec::with_capacity(out.len());
    for (g, m) in out {
        match merged.last_mut() {
            Some(last) if last.0 == g => last.1 += m,
            _ => merged.push((g, m)),
        }
    }
    Ok(merged)
}

/// Distinct roots in `F_Q`, ascending.
pub fn roots(f: &UPoly) -> Result<Vec<Elem>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::DivisionByZeroPoly);
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let field = f.field();
    let x = UPoly::x(field);
    let fm = f.monic();
    let xq = x.powmod(field.size(), &fm)?;
    let split = fm.gcd(&(&xq - &x))?;
    let mut r: Vec<Elem> = equal_degree(&split, 1)?
        .into_iter()
        .map(|g| field.neg(g.coeff(0)))
        .collect();
    r.sort();
    Ok(r)
}

/// Rabin's test.
pub fn is_irreducible(f: &UPoly) -> Result<bool, PolyError> {
    let n = match f.degree() {
        None => return Err(PolyError::DivisionByZeroPoly),
        Some(0) => return Ok(false),
        Some(n) => n,
    };
    let field = f.field();
    let fm = f.monic();
    let x = UPoly::x(field);
    let q = field.size();
    let frob_iter = |times: usize| -> Result<UPoly, PolyError> {
        let mut h = x.rem(&fm)?;
        for _ in 0..times {
            h = h.powmod(q, &fm)?;
        }
        Ok(h)
    };
    if (&frob_iter(n)? - &x).rem(&fm)?.is_zero() {
        for r in prime_factors(n as u64) {
            let h = frob_iter(n / r as usize)?;
            if fm.gcd(&(&h - &x))?.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    } else {
        Ok(false)
    }
}

fn pth_root(f: &UPoly) -> UPoly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let e = field.size() / p as u64;
    let v = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| field.pow(c, e))
        .collect();
    UPoly::new(field, v)
}

/// Square-free decomposition of a monic polynomial: `f = prod g_i^{m_i}`.
fn squarefree(f: &UPoly) -> Result<Vec<(UPoly, u32)>, PolyError> {
    let p = f.field().characteristic() as u32;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, m) in squarefree(&pth_root(f))? {
            out.push((g, m * p));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&d)?;
    let mut w = f.exact_div(&c)?;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c)?;
        let fac = w.exact_div(&y)?;
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w)?;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        for (g, m) in squarefree(&pth_root(&c))? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// Splits a square-free monic polynomial into products of equal-degree irreducibles.
fn distinct_degree(f: &UPoly) -> Result<Vec<(UPoly, usize)>, PolyError> {
    let field = f.field();
    let q = field.size();
    let x = UPoly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(q, &rest)?;
        let g = rest.gcd(&(&h - &x))?;
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    if let Some(n) = rest.degree() {
        if n > 0 {
            out.push((rest, n));
        }
    }
    Ok(out)
}

fn equal_degree(f: &UPoly, d: usize) -> Result<Vec<UPoly>, PolyError> {
    let n = match f.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    if n == d {
        return Ok(vec![f.monic()]);
    }
    let field = f.field();
    let q = field.size();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (n as u64) << 8 ^ d as u64);
    loop {
        let a = UPoly::new(
            field,
            (0..n).map(|_| field.elem_from_index(rng.gen_range(0..q as usize))).collect(),
        );
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let probe = if field.characteristic() == 2 {
            // absolute trace of a in F_Q[x]/f restricted to the degree-d component
            let bits = field.degree() as usize * d;
            let mut t = a.rem(f)?;
            let mut acc = t.clone();
            for _ in 1..bits {
                t = t.try_mul(&t)?.rem(f)?;
                acc = &acc + &t;
            }
            acc
        } else {
            // a^{(Q^d - 1)/2} = (a^{1 + Q + ... + Q^{d-1}})^{(Q-1)/2}
            let mut conj = a.rem(f)?;
            let mut norm = conj.clone();
            for _ in 1..d {
                conj = conj.powmod(q, f)?;
                norm = norm.try_mul(&conj)?.rem(f)?;
            }
            &norm.powmod((q - 1) / 2, f)? - &UPoly::one(field)
        };
        let g = f.gcd(&probe)?;
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let mut out = equal_degree(&g, d)?;
            out.extend(equal_degree(&f.exact_div(&g)?, d)?);
            return Ok(out);
        }
    }
}
