//! Field arithmetic against a schoolbook polynomial-residue oracle, plus
//! Frobenius, trace and norm laws. Seed with `TOWERLAB_SEED`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use towerlab::gf::{Elem, FiniteField};

fn rng() -> ChaCha8Rng {
    let seed = std::env::var("TOWERLAB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20240601);
    ChaCha8Rng::seed_from_u64(seed)
}

fn fields() -> Vec<FiniteField> {
    [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (5, 3), (2, 6), (7, 2)]
        .into_iter()
        .map(|(p, k)| FiniteField::of(p, k))
        .collect()
}

fn random(f: &FiniteField, r: &mut ChaCha8Rng) -> Elem {
    f.elem_from_index(r.gen_range(0..f.size() as usize))
}

/// Product of coefficient vectors reduced by the monic modulus.
fn oracle_mul(f: &FiniteField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let p = f.characteristic();
    let m = f.modulus();
    let k = m.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (i, &mi) in m.iter().enumerate() {
            prod[d - k + i] = (prod[d - k + i] + (p - c) * mi % p) % p;
        }
    }
    prod.truncate(k);
    prod
}

#[test]
fn multiplication_matches_oracle() {
    let mut r = rng();
    for f in fields() {
        for _ in 0..300 {
            let (a, b) = (random(&f, &mut r), random(&f, &mut r));
            let want = oracle_mul(&f, &f.coeffs(a), &f.coeffs(b));
            assert_eq!(f.coeffs(f.mul(a, b)), want);
        }
    }
}

#[test]
fn addition_is_coefficientwise() {
    let mut r = rng();
    for f in fields() {
        let p = f.characteristic();
        for _ in 0..300 {
            let (a, b) = (random(&f, &mut r), random(&f, &mut r));
            let want: Vec<u64> = f.coeffs(a).iter().zip(f.coeffs(b)).map(|(x, y)| (x + y) % p).collect();
            assert_eq!(f.coeffs(f.add(a, b)), want);
            assert_eq!(f.add(f.sub(a, b), b), a);
            assert_eq!(f.add(a, f.neg(a)), f.zero());
        }
    }
}

#[test]
fn field_axioms() {
    let mut r = rng();
    for f in fields() {
        for _ in 0..300 {
            let (a, b, c) = (random(&f, &mut r), random(&f, &mut r), random(&f, &mut r));
            assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                assert_eq!(f.pow(a, f.size() - 1), f.one());
            }
        }
        assert!(f.inv(f.zero()).is_err());
    }
}

#[test]
fn pow_matches_repeated_multiplication() {
    let mut r = rng();
    for f in fields() {
        let a = random(&f, &mut r);
        let mut acc = f.one();
        for e in 0..40u64 {
            assert_eq!(f.pow(a, e), acc);
            acc = f.mul(acc, a);
        }
    }
}

#[test]
fn f4_examples() {
    let f4 = FiniteField::of(2, 2);
    assert_eq!(f4.modulus(), vec![1, 1, 1]);
    let w = f4.from_coeffs(&[0, 1]).unwrap();
    let w_plus_1 = f4.from_coeffs(&[1, 1]).unwrap();
    assert_eq!(f4.mul(w, w), w_plus_1);
    assert_eq!(f4.frobenius(w, 2).unwrap(), w_plus_1);
    assert_eq!(f4.trace_to(w, 2).unwrap(), f4.one());
    assert_eq!(f4.norm_to(w, 2).unwrap(), f4.one());
}

/// Least monic irreducible cubic over `F_3`, coefficients compared constant term
/// first; a cubic is irreducible iff it has no root.
#[test]
fn f27_modulus_is_least_irreducible_cubic() {
    let f27 = FiniteField::of(3, 3);
    let mut best = None;
    'outer: for c0 in 0..3u64 {
        for c1 in 0..3u64 {
            for c2 in 0..3u64 {
                if (0..3u64).all(|x| (x * x * x + c2 * x * x + c1 * x + c0) % 3 != 0) {
                    best = Some(vec![c0, c1, c2, 1]);
                    break 'outer;
                }
            }
        }
    }
    assert_eq!(Some(f27.modulus()), best);
}

#[test]
fn frobenius_is_a_field_automorphism() {
    let mut r = rng();
    for f in fields() {
        let p = f.characteristic();
        for _ in 0..100 {
            let (a, b) = (random(&f, &mut r), random(&f, &mut r));
            assert_eq!(f.frobenius(f.add(a, b), p).unwrap(), f.add(f.frobenius(a, p).unwrap(), f.frobenius(b, p).unwrap()));
            assert_eq!(f.frobenius(f.mul(a, b), p).unwrap(), f.mul(f.frobenius(a, p).unwrap(), f.frobenius(b, p).unwrap()));
            assert_eq!(f.pow(a, f.size()), a);
        }
    }
}

#[test]
fn trace_is_onto_and_balanced() {
    let f27 = FiniteField::of(3, 3);
    let mut fibers = [0usize; 3];
    for x in f27.elements() {
        let t = f27.trace_to(x, 3).unwrap();
        assert!(f27.is_in_subfield(t, 3).unwrap());
        let c = f27.coeffs(t);
        assert!(c[1..].iter().all(|&d| d == 0));
        fibers[c[0] as usize] += 1;
    }
    assert_eq!(fibers, [9, 9, 9]);
}

#[test]
fn trace_is_subfield_linear() {
    let mut r = rng();
    let f = FiniteField::of(2, 6);
    let sub = f.subfield_members(4).unwrap();
    for _ in 0..200 {
        let (a, b) = (random(&f, &mut r), random(&f, &mut r));
        let c = sub[r.gen_range(0..sub.len())];
        let lhs = f.trace_to(f.add(f.mul(c, a), b), 4).unwrap();
        let rhs = f.add(f.mul(c, f.trace_to(a, 4).unwrap()), f.trace_to(b, 4).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn norm_is_multiplicative() {
    let f9 = FiniteField::of(3, 2);
    for a in f9.elements() {
        for b in f9.elements() {
            assert_eq!(
                f9.norm_to(f9.mul(a, b), 3).unwrap(),
                f9.mul(f9.norm_to(a, 3).unwrap(), f9.norm_to(b, 3).unwrap())
            );
        }
    }
}

#[test]
fn norm_exponent_powers_form_the_subfield() {
    let f27 = FiniteField::of(3, 3);
    let mut powers: Vec<Elem> = f27.elements().filter(|x| !x.is_zero()).map(|x| f27.pow(x, 13)).collect();
    powers.sort();
    powers.dedup();
    let mut sub: Vec<Elem> = f27.subfield_members(3).unwrap().into_iter().filter(|x| !x.is_zero()).collect();
    sub.sort();
    assert_eq!(powers, sub);
}

#[test]
fn kth_powers_and_roots() {
    let mut r = rng();
    for f in fields() {
        let qm1 = f.size() - 1;
        for m in (1..=qm1).filter(|m| qm1 % m == 0).take(5) {
            for _ in 0..30 {
                let c = random(&f, &mut r);
                let brute: Vec<Elem> = f.elements().filter(|&y| f.pow(y, m) == c).collect();
                let mut got = f.roots_of_power(c, m);
                got.sort();
                assert_eq!(got, brute);
                assert_eq!(f.is_kth_power(c, m), !brute.is_empty());
            }
        }
    }
    let f3 = FiniteField::of(3, 1);
    assert!(!f3.is_kth_power(f3.from_int(2), 2));
    assert_eq!(f3.find_non_kth_power(2).unwrap(), f3.from_int(2));
    let f9 = FiniteField::of(3, 2);
    let least = f9.elements().find(|&x| !x.is_zero() && !f9.is_kth_power(x, 2)).unwrap();
    assert_eq!(f9.find_non_kth_power(2).unwrap(), least);
}

#[test]
fn embeddings_are_homomorphisms() {
    let mut r = rng();
    for (small, big) in [((2, 2), (2, 6)), ((3, 1), (3, 3)), ((2, 3), (2, 6)), ((3, 3), (3, 6))] {
        let s = FiniteField::of(small.0, small.1);
        let b = FiniteField::of(big.0, big.1);
        let e = s.embedding_into(&b).unwrap();
        assert_eq!(e.apply(s.one()), b.one());
        for _ in 0..100 {
            let (x, y) = (random(&s, &mut r), random(&s, &mut r));
            assert_eq!(e.apply(s.mul(x, y)), b.mul(e.apply(x), e.apply(y)));
            assert_eq!(e.apply(s.add(x, y)), b.add(e.apply(x), e.apply(y)));
        }
    }
}
