//! Finite fields `F_{p^k}` for desk-scale `p^k`.
//!
//! Elements are stored as indices into log/exp tables. The index of an
//! element is its coefficient tuple `(c_0, ..., c_{k-1})` read as a base-`p`
//! number with `c_0` as the most significant digit, so integer order on
//! [`Elem`] is the lexicographic order on coefficient tuples (constant term
//! compared first).

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field cardinality.
pub const MAX_FIELD_SIZE: u64 = 1 << 21;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be monic of degree {0} with coefficients reduced mod p")]
    BadModulus(u32),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("field of size {0} exceeds the supported maximum")]
    TooLarge(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("elements or polynomials live in different fields")]
    CtxMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{q} is not a power of p whose degree divides {k}")]
    NotSubpower { q: u64, k: u32 },
    #[error("F_{q} is not a subfield of F_{size}")]
    NotSubfield { q: u64, size: u64 },
    #[error("every element is a {0}-th power")]
    AllPowers(u64),
    #[error("coefficient {0} is not reduced mod p")]
    BadCoefficient(u64),
}

/// A field element. Only meaningful together with the [`FiniteField`] that
/// produced it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    p: u32,
    k: u32,
    size: u32,
    modulus: Vec<u32>,
    one: u32,
    // exp has length 2(size-1) so log sums never need a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Shared handle to an immutable field context.
#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Tables>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.inner.p, self.inner.k, self.inner.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FiniteField {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(m as i128) as u64
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

/// Dense polynomials over the prime field, lowest degree first. Used only to
/// pick and verify the modulus.
mod fp {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let inv_lc = inv(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * inv_lc % p;
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(&result, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        rem(&result, m, p)
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        let mut r = 1u64;
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

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    /// Rabin's irreducibility test for a monic `f` of degree `k`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let k = (f.len() - 1) as u64;
        if k == 1 {
            return true;
        }
        let x = vec![0u64, 1];
        // x^{p^j} mod f for j = 0..=k
        let mut frob = vec![x.clone()];
        for j in 1..=k as usize {
            let prev = frob[j - 1].clone();
            frob.push(powmod(&prev, p, f, p));
        }
        if !sub(&frob[k as usize], &x, p).is_empty() {
            return false;
        }
        for r in super::prime_factors(k) {
            let h = sub(&frob[(k / r) as usize], &x, p);
            let g = gcd(f, &h, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

impl FiniteField {
    /// Builds `F_{p^k}`. Without an explicit modulus the lexicographically
    /// least monic irreducible polynomial of degree `k` is used (coefficients
    /// compared constant term first).
    pub fn new(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let size = p
            .checked_pow(k)
            .filter(|&s| s <= MAX_FIELD_SIZE)
            .ok_or(FieldError::TooLarge(p.saturating_pow(k)))?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadModulus(k));
                }
                if !fp::is_irreducible(m, p) {
                    return Err(FieldError::ReducibleModulus(p as u32));
                }
                m.to_vec()
            }
            None => least_irreducible(p, k),
        };
        Ok(Self::from_modulus(p as u32, k, size as u32, modulus))
    }

    /// `F_p^k` with the default modulus; panics on invalid input. Intended for
    /// tests and literals.
    pub fn of(p: u64, k: u32) -> Self {
        Self::new(p, k, None).expect("valid field parameters")
    }

    fn from_modulus(p: u32, k: u32, size: u32, modulus: Vec<u64>) -> Self {
        let pk = p as u64;
        let one_digits = {
            let mut d = vec![0u64; k as usize];
            d[0] = 1;
            d
        };
        let encode = |d: &[u64]| -> u32 {
            let mut idx = 0u64;
            for i in 0..k as usize {
                idx = idx * pk + d.get(i).copied().unwrap_or(0);
            }
            idx as u32
        };
        let decode = |mut idx: u32| -> Vec<u64> {
            let mut d = vec![0u64; k as usize];
            for i in (0..k as usize).rev() {
                d[i] = (idx % p) as u64;
                idx /= p;
            }
            d
        };
        let order = (size - 1) as u64;
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut log = vec![0u32; size as usize];
        let one = encode(&one_digits);
        if order == 1 {
            exp.push(one);
            exp.push(one);
        } else {
            let factors = prime_factors(order);
            let gen = (1..size)
                .map(decode)
                .find(|g| {
                    factors.iter().all(|&r| {
                        let mut h = fp::powmod(g, order / r, &modulus, pk);
                        h.resize(k as usize, 0);
                        h != one_digits
                    })
                })
                .expect("multiplicative group is cyclic");
            let mut cur = one_digits.clone();
            for _ in 0..order {
                exp.push(encode(&cur));
                cur = fp::mulmod(&cur, &gen, &modulus, pk);
                cur.resize(k as usize, 0);
            }
            let first: Vec<u32> = exp.clone();
            exp.extend(first);
        }
        for (i, &e) in exp.iter().take(order as usize).enumerate() {
            log[e as usize] = i as u32;
        }
        FiniteField {
            inner: Arc::new(Tables {
                p,
                k,
                size,
                modulus: modulus.iter().map(|&c| c as u32).collect(),
                one,
                exp,
                log,
            }),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn size(&self) -> u64 {
        self.inner.size as u64
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> Vec<u64> {
        self.inner.modulus.iter().map(|&c| c as u64).collect()
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(self.inner.one)
    }

    /// All elements in lexicographic order of their coefficient tuples.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.inner.size).map(Elem)
    }

    pub fn elem_from_index(&self, idx: usize) -> Elem {
        assert!(idx < self.inner.size as usize);
        Elem(idx as u32)
    }

    /// Element with the given coefficients over the prime field, constant term first.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem, FieldError> {
        let p = self.inner.p as u64;
        if coeffs.len() > self.inner.k as usize
            && coeffs[self.inner.k as usize..].iter().any(|&c| c != 0) {
                return Err(FieldError::BadModulus(self.inner.k));
            }
        let mut idx = 0u64;
        for i in 0..self.inner.k as usize {
            let c = coeffs.get(i).copied().unwrap_or(0);
            if c >= p {
                return Err(FieldError::BadCoefficient(c));
            }
            idx = idx * p + c;
        }
        Ok(Elem(idx as u32))
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u64> {
        let p = self.inner.p;
        let k = self.inner.k as usize;
        let mut d = vec![0u64; k];
        let mut idx = x.0;
        for i in (0..k).rev() {
            d[i] = (idx % p) as u64;
            idx /= p;
        }
        d
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, c: i64) -> Elem {
        let p = self.inner.p as i64;
        let r = c.rem_euclid(p) as u32;
        let unit = self.inner.size / self.inner.p;
        Elem(r * unit)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.inner.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut res = 0u32;
        let mut place = 1u32;
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            res += d * place;
            place *= p;
            x /= p;
            y /= p;
        }
        Elem(res)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.inner.p;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut res = 0u32;
        let mut place = 1u32;
        while x > 0 {
            let d = (p - x % p) % p;
            res += d * place;
            place *= p;
            x /= p;
        }
        Elem(res)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem(0);
        }
        let t = &self.inner;
        Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let t = &self.inner;
        let order = t.size - 1;
        Ok(Elem(t.exp[((order - t.log[a.0 as usize]) % order) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with the exponent reduced mod `p^k - 1` for nonzero `a`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return Elem(0);
        }
        let t = &self.inner;
        let order = (t.size - 1) as u64;
        let l = (t.log[a.0 as usize] as u64 * (e % order)) % order;
        Elem(t.exp[l as usize])
    }

    /// `a^e` for a signed exponent; `a` must be nonzero when `e < 0`.
    pub fn pow_signed(&self, a: Elem, e: i64) -> Result<Elem, FieldError> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Discrete logarithm with respect to the table generator.
    pub fn log(&self, a: Elem) -> Option<u64> {
        (a.0 != 0).then(|| self.inner.log[a.0 as usize] as u64)
    }

    /// `g^e` for the table generator `g`.
    pub fn exp(&self, e: u64) -> Elem {
        let order = self.size() - 1;
        Elem(self.inner.exp[(e % order) as usize])
    }

    /// All solutions of `x^m = c`, ascending.
    pub fn roots_of_power(&self, c: Elem, m: u64) -> Vec<Elem> {
        let Some(l) = self.log(c) else {
            return vec![Elem::ZERO];
        };
        let order = self.size() - 1;
        let d = gcd(m % order, order);
        if l % d != 0 {
            return Vec::new();
        }
        let sub = order / d;
        // m x = l (mod order)  <=>  (m/d) x = l/d (mod order/d)
        let x0: u64 = if sub == 1 {
            0
        } else {
            let inv = mod_inverse((m / d) % sub, sub);
            (((l / d) % sub) as u128 * inv as u128 % sub as u128) as u64
        };
        let mut out: Vec<Elem> = (0..d).map(|j| self.exp(x0 + j * sub)).collect();
        out.sort();
        out
    }

    /// Degree `a` of the subfield `F_q`, `q = p^a`, if `a | k`.
    pub fn subfield_degree(&self, q: u64) -> Option<u32> {
        let p = self.inner.p as u64;
        let mut a = 0u32;
        let mut acc = 1u64;
        while acc < q {
            acc = acc.checked_mul(p)?;
            a += 1;
        }
        (acc == q && a >= 1 && self.inner.k.is_multiple_of(a)).then_some(a)
    }

    fn check_subfield(&self, q: u64) -> Result<u32, FieldError> {
        self.subfield_degree(q).ok_or(FieldError::NotSubfield { q, size: self.size() })
    }

    /// `x^q` for `q = p^a`, `a | k`.
    pub fn frobenius(&self, x: Elem, q: u64) -> Result<Elem, FieldError> {
        self.subfield_degree(q)
            .ok_or(FieldError::NotSubpower { q, k: self.inner.k })?;
        Ok(self.pow(x, q))
    }

    /// Relative trace `sum_{i<n} x^{q^i}` down to `F_q`.
    pub fn trace_to(&self, x: Elem, q: u64) -> Result<Elem, FieldError> {
        let a = self.check_subfield(q)?;
        let n = self.inner.k / a;
        let mut acc = Elem(0);
        let mut cur = x;
        for _ in 0..n {
            acc = self.add(acc, cur);
            cur = self.pow(cur, q);
        }
        Ok(acc)
    }

    /// Relative norm `x^{(q^n - 1)/(q - 1)}` down to `F_q`.
    pub fn norm_to(&self, x: Elem, q: u64) -> Result<Elem, FieldError> {
        self.check_subfield(q)?;
        if x.is_zero() {
            return Ok(x);
        }
        Ok(self.pow(x, (self.size() - 1) / (q - 1)))
    }

    pub fn is_kth_power(&self, x: Elem, m: u64) -> bool {
        if x.is_zero() {
            return true;
        }
        let order = self.size() - 1;
        let g = gcd(m, order);
        self.pow(x, order / g) == self.one()
    }

    /// Least element (in coefficient-tuple order) that is not an `m`-th power.
    pub fn find_non_kth_power(&self, m: u64) -> Result<Elem, FieldError> {
        if gcd(m, self.size() - 1) == 1 {
            return Err(FieldError::AllPowers(m));
        }
        self.elements()
            .find(|&x| !self.is_kth_power(x, m))
            .ok_or(FieldError::AllPowers(m))
    }

    pub fn is_in_subfield(&self, x: Elem, q: u64) -> Result<bool, FieldError> {
        self.check_subfield(q)?;
        Ok(self.pow(x, q) == x)
    }

    /// The `q` elements of the subfield `F_q`, in element order.
    pub fn subfield_members(&self, q: u64) -> Result<Vec<Elem>, FieldError> {
        self.check_subfield(q)?;
        Ok(self.elements().filter(|&x| self.pow(x, q) == x).collect())
    }

    /// Multiplicative order of `x` in `F^* / (F^*)^m` when `m | size - 1`.
    pub fn order_mod_powers(&self, x: Elem, m: u64) -> Option<u64> {
        let l = self.log(x)?;
        let order = self.size() - 1;
        if !order.is_multiple_of(m) {
            return None;
        }
        // x^f is an m-th power iff m | f * log(x)
        Some(m / gcd(m, l % m))
    }

    /// Embedding of `self` into a larger field of the same characteristic.
    pub fn embedding_into(&self, big: &FiniteField) -> Result<Embedding, FieldError> {
        if big.characteristic() != self.characteristic() || !big.degree().is_multiple_of(self.degree()) {
            return Err(FieldError::NotSubfield { q: self.size(), size: big.size() });
        }
        let modulus = self.modulus();
        let root = big
            .elements()
            .find(|&t| {
                let mut acc = big.zero();
                for &c in modulus.iter().rev() {
                    acc = big.add(big.mul(acc, t), big.from_int(c as i64));
                }
                acc.is_zero()
            })
            .expect("a finite field contains roots of irreducibles of dividing degree");
        let powers: Vec<Elem> = (0..self.degree() as u64).map(|i| big.pow(root, i)).collect();
        let table = self
            .elements()
            .map(|x| {
                self.coeffs(x)
                    .iter()
                    .zip(&powers)
                    .fold(big.zero(), |acc, (&c, &pw)| {
                        big.add(acc, big.mul(big.from_int(c as i64), pw))
                    })
            })
            .collect();
        Ok(Embedding { source: self.clone(), target: big.clone(), table })
    }

    /// Element rendered as its coefficient tuple, or a bare integer for prime fields.
    pub fn fmt_elem(&self, x: Elem) -> String {
        let c = self.coeffs(x);
        if c.len() == 1 {
            c[0].to_string()
        } else {
            let parts: Vec<String> = c.iter().map(|d| d.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }
}

fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let mut lower = vec![0u64; k];
    loop {
        let mut f = lower.clone();
        f.push(1);
        if fp::is_irreducible(&f, p) {
            return f;
        }
        // increment with c_0 as the most significant digit
        let mut i = k;
        loop {
            assert!(i > 0, "irreducible polynomials exist in every degree");
            i -= 1;
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
        }
    }
}

/// Field embedding `F_{p^a} -> F_{p^b}` for `a | b`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FiniteField,
    target: FiniteField,
    table: Vec<Elem>,
}

impl Embedding {
    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x.index()]
    }

    pub fn source(&self) -> &FiniteField {
        &self.source
    }

    pub fn target(&self) -> &FiniteField {
        &self.target
    }
}
