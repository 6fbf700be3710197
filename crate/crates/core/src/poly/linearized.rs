//! Additive polynomials `L_V(T) = prod_{v in V} (T - v)` and the irreducibility tests
//! for curves `L_V(T) = f(x)`.

use std::collections::BTreeSet;

use super::{factor, PolyError, UPoly};
use crate::gf::{gcd, Elem, FiniteField};

/// Largest `|V| * deg f` the brute-force oracle accepts.
pub const BRUTEFORCE_BUDGET: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPoly {
    support: Vec<Elem>,
    expanded: UPoly,
}

impl LinearizedPoly {
    /// `prod_{v in V}(T - v)` for an additive subgroup `V`.
    pub fn from_subgroup(field: &FiniteField, v: &[Elem]) -> Result<Self, PolyError> {
        let set: BTreeSet<Elem> = v.iter().copied().collect();
        if !set.contains(&Elem::ZERO) {
            return Err(PolyError::NotSubgroup);
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&field.add(a, b)) {
                    return Err(PolyError::NotSubgroup);
                }
            }
        }
        let mut expanded = UPoly::one(field);
        for &a in &set {
            expanded = &expanded * &UPoly::new(field, vec![field.neg(a), field.one()]);
        }
        Ok(LinearizedPoly { support: set.into_iter().collect(), expanded })
    }

    /// `sum_i a_i T^{q^i}`; the support is the set of roots inside the field.
    pub fn from_q_coeffs(field: &FiniteField, q: u64, a: &[Elem]) -> Result<Self, PolyError> {
        let terms: Vec<(usize, Elem)> = a
            .iter()
            .enumerate()
            .map(|(i, &c)| (q.pow(i as u32) as usize, c))
            .collect();
        Self::from_expanded(UPoly::from_terms(field, &terms))
    }

    /// Wraps an additive polynomial given in expanded form (terms only in degrees
    /// `p^i`, nonzero linear term).
    pub fn from_expanded(expanded: UPoly) -> Result<Self, PolyError> {
        let p = expanded.field().characteristic() as usize;
        let additive = expanded.terms().all(|(d, _)| {
            let mut d = d;
            while d > 1 && d % p == 0 {
                d /= p;
            }
            d == 1
        });
        if !additive || expanded.coeff(1).is_zero() {
            return Err(PolyError::NotSubgroup);
        }
        let support = factor::roots(&expanded)?;
        Ok(LinearizedPoly { support, expanded })
    }

    /// `T^{q^{n-1}} + ... + T^q + T`.
    pub fn trace_form(field: &FiniteField, q: u64, n: u32) -> Result<Self, PolyError> {
        Self::from_q_coeffs(field, q, &vec![field.one(); n as usize])
    }

    pub fn field(&self) -> &FiniteField {
        self.expanded.field()
    }

    /// Roots lying in the ambient field.
    pub fn support(&self) -> &[Elem] {
        &self.support
    }

    pub fn expanded(&self) -> &UPoly {
        &self.expanded
    }

    pub fn degree(&self) -> usize {
        self.expanded.degree().unwrap_or(0)
    }

    /// True when every root lies in the ambient field.
    pub fn splits(&self) -> bool {
        self.support.len() == self.degree()
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.expanded.eval(x)
    }

    /// `sum_i c_i g^{p^i}`, computed term by term so that large degrees stay cheap.
    pub fn apply_poly(&self, g: &UPoly) -> Result<UPoly, PolyError> {
        let field = self.field();
        let mut acc = UPoly::zero(field);
        for (deg, c) in self.expanded.terms() {
            let frob: Vec<(usize, Elem)> = g
                .terms()
                .map(|(j, gj)| (j * deg, field.pow(gj, deg as u64)))
                .collect();
            if frob.is_empty() {
                continue;
            }
            acc = acc.try_add(&UPoly::from_terms(field, &frob).scale(c))?;
        }
        Ok(acc)
    }
}

/// F_p-basis of the additive span of `elems`, via row reduction on coordinates.
pub fn span_basis(field: &FiniteField, elems: &[Elem]) -> Vec<Elem> {
    let p = field.characteristic();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for &e in elems {
        let mut v = field.coeffs(e);
        for (row, &piv) in rows.iter().zip(&pivots) {
            if v[piv] != 0 {
                let c = v[piv];
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + (p - c) * r) % p;
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let inv = inv_mod(v[piv], p);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            for row in rows.iter_mut() {
                if row[piv] != 0 {
                    let c = row[piv];
                    for (x, r) in row.iter_mut().zip(&v) {
                        *x = (*x + (p - c) * r) % p;
                    }
                }
            }
            rows.push(v);
            pivots.push(piv);
        }
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    order
        .into_iter()
        .map(|i| field.from_coeffs(&rows[i]).expect("valid residues"))
        .collect()
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// All F_p-combinations of `basis`.
fn span(field: &FiniteField, basis: &[Elem]) -> Vec<Elem> {
    let p = field.characteristic();
    let mut out = vec![Elem::ZERO];
    for &b in basis {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for &x in &out {
            let mut y = x;
            for _ in 0..p {
                next.push(y);
                y = field.add(y, b);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Every subgroup of `V`, each as a sorted element list. Subspaces of `F_p^r` are
/// produced once each from their reduced row echelon generator matrices.
pub fn enumerate_subgroups(field: &FiniteField, v: &[Elem]) -> Vec<Vec<Elem>> {
    let basis = span_basis(field, v);
    let r = basis.len();
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    for dim in 0..=r {
        for pivots in combinations(r, dim) {
            // free slots: (row, col) with col > pivot(row) and col not a pivot
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(row, &pc)| {
                    (pc + 1..r)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (row, c))
                })
                .collect();
            let total = p.pow(free.len() as u32);
            for code in 0..total {
                let mut m = vec![vec![0usize; r]; dim];
                for (row, &pc) in pivots.iter().enumerate() {
                    m[row][pc] = 1;
                }
                let mut c = code;
                for &(row, col) in &free {
                    m[row][col] = c % p;
                    c /= p;
                }
                let gens: Vec<Elem> = m
                    .iter()
                    .map(|row| {
                        row.iter().zip(&basis).fold(Elem::ZERO, |acc, (&a, &b)| {
                            field.add(acc, field.mul(field.from_int(a as i64), b))
                        })
                    })
                    .collect();
                out.push(span(field, &gens));
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImageVerdict {
    /// `f = L_{W'}(g) + c` with `W' = L_W(V)`, so `L_W(T) - g` splits off a factor.
    Reducible { w: Vec<Elem>, g: UPoly },
    Irreducible,
}

/// Decides (absolute) reducibility of `L_V(T) - f(x)` by looking for a proper
/// subgroup `W` and a polynomial `g` with `f - L_{L_W(V)}(g)` constant.
pub fn is_linearized_image(f: &UPoly, v: &[Elem]) -> Result<ImageVerdict, PolyError> {
    let field = f.field();
    let p = field.characteristic() as usize;
    let lv = LinearizedPoly::from_subgroup(field, v)?;
    let vsize = lv.support().len();
    if vsize > p.pow(4) {
        return Err(PolyError::SearchTooLarge(format!("|V| = {vsize} exceeds p^4")));
    }
    for w in enumerate_subgroups(field, lv.support()) {
        if w.len() == vsize {
            continue;
        }
        let lw = LinearizedPoly::from_subgroup(field, &w)?;
        let image: BTreeSet<Elem> = lv.support().iter().map(|&x| lw.apply(x)).collect();
        let image: Vec<Elem> = image.into_iter().collect();
        let lwp = LinearizedPoly::from_subgroup(field, &image)?;
        if let Some(g) = solve_linearized(f, &lwp)? {
            return Ok(ImageVerdict::Reducible { w, g });
        }
    }
    Ok(ImageVerdict::Irreducible)
}

/// Non-constant `g` with `f - L(g)` constant, by matching coefficients from the top.
fn solve_linearized(f: &UPoly, l: &LinearizedPoly) -> Result<Option<UPoly>, PolyError> {
    let field = f.field();
    let big_p = l.degree();
    let fd = f.degree().unwrap_or(0);
    if fd == 0 {
        return Ok(Some(UPoly::zero(field)));
    }
    if !fd.is_multiple_of(big_p) {
        return Ok(None);
    }
    let gd = fd / big_p;
    let lcoeffs: Vec<(usize, Elem)> = l.expanded().terms().filter(|t| t.0 != big_p).collect();
    let mut g = vec![Elem::ZERO; gd + 1];
    for j in (1..=gd).rev() {
        let mut c = f.coeff(j * big_p);
        for &(pi, a) in &lcoeffs {
            let idx = j * big_p / pi;
            if idx <= gd {
                c = field.sub(c, field.mul(a, field.pow(g[idx], pi as u64)));
            }
        }
        g[j] = frobenius_root(field, c, big_p as u64);
    }
    let g = UPoly::new(field, g);
    let diff = f.try_sub(&l.apply_poly(&g)?)?;
    if diff.degree().unwrap_or(0) == 0 {
        Ok(Some(g))
    } else {
        Ok(None)
    }
}

/// Inverse of `x -> x^P` for `P = p^s`: Frobenius has order `k` on `F_{p^k}`.
fn frobenius_root(field: &FiniteField, c: Elem, big_p: u64) -> Elem {
    let p = field.characteristic();
    let k = field.degree() as u64;
    let mut s = 0;
    let mut t = 1;
    while t < big_p {
        t *= p;
        s += 1;
    }
    let back = (k - s % k) % k;
    field.pow(c, p.pow(back as u32))
}

/// Largest degree with a nonzero coefficient and prime to `p`.
pub fn coprime_degree(f: &UPoly) -> Option<usize> {
    let p = f.field().characteristic();
    f.terms()
        .map(|t| t.0)
        .filter(|&d| gcd(d as u64, p) == 1)
        .max()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorollaryVerdict {
    Irreducible { d: usize },
    Inconclusive,
}

/// Sufficient syntactic test: some term of degree `d` prime to `p` with no term of
/// degree `d p^i`, `i > 0`.
pub fn corollary_irreducible(f: &UPoly) -> CorollaryVerdict {
    let p = f.field().characteristic() as usize;
    let degs: BTreeSet<usize> = f.terms().map(|t| t.0).collect();
    let top = degs.iter().next_back().copied().unwrap_or(0);
    for &d in degs.iter().rev() {
        if d == 0 || d % p == 0 {
            continue;
        }
        let mut e = d * p;
        let mut clash = false;
        while e <= top {
            if degs.contains(&e) {
                clash = true;
                break;
            }
            e *= p;
        }
        if !clash {
            return CorollaryVerdict::Irreducible { d };
        }
    }
    CorollaryVerdict::Inconclusive
}

/// Oracle: `L_V(T) - f` is reducible iff for some index-`p` subgroup `U` of `V` the
/// degree-`p` quotient curve `Z^p - a^{p-1} Z = f` (with `<a> = L_U(V)`) is, i.e. iff
/// `f / a^p` reduces to a constant modulo `h^p - h`.
pub fn bivariate_irreducible_bruteforce(v: &[Elem], f: &UPoly) -> Result<bool, PolyError> {
    let field = f.field();
    let lv = LinearizedPoly::from_subgroup(field, v)?;
    let budget = lv.support().len() * f.degree().unwrap_or(0).max(1);
    if budget > BRUTEFORCE_BUDGET {
        return Err(PolyError::SearchTooLarge(format!(
            "|V| * deg f = {budget} exceeds {BRUTEFORCE_BUDGET}"
        )));
    }
    let p = field.characteristic() as usize;
    if lv.support().len() == 1 {
        return Ok(true);
    }
    let target = lv.support().len() / p;
    for u in enumerate_subgroups(field, lv.support()) {
        if u.len() != target {
            continue;
        }
        let lu = LinearizedPoly::from_subgroup(field, &u)?;
        let a = lv
            .support()
            .iter()
            .map(|&x| lu.apply(x))
            .find(|y| !y.is_zero())
            .expect("quotient of order p");
        let scale = field.inv(field.pow(a, p as u64))?;
        if as_reduce(&f.scale(scale)).degree().unwrap_or(0) == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Normal form modulo `{h^p - h}`: each `c x^{p e}` becomes `c^{1/p} x^e`.
fn as_reduce(f: &UPoly) -> UPoly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let inv_frob = field.size() / p as u64;
    let mut c: Vec<Elem> = f.coeffs().to_vec();
    for d in (1..c.len()).rev() {
        if d % p == 0 && !c[d].is_zero() {
            let r = field.pow(c[d], inv_frob);
            c[d / p] = field.add(c[d / p], r);
            c[d] = Elem::ZERO;
        }
    }
    UPoly::new(field, c)
}
