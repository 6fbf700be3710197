//! Polynomial arithmetic, factorization and the additive-polynomial tests against
//! brute-force oracles. Seed with `TOWERLAB_SEED`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use towerlab::gf::{Elem, FiniteField};
use towerlab::poly::text::{parse_poly, to_sparse};
use towerlab::poly::{
    bivariate_irreducible_bruteforce, coprime_degree, corollary_irreducible, enumerate_subgroups,
    factor_univariate, is_irreducible, is_linearized_image, roots, CorollaryVerdict, ImageVerdict,
    LinearizedPoly, RatFunc, UPoly,
};

fn rng() -> ChaCha8Rng {
    let seed = std::env::var("TOWERLAB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20240601);
    ChaCha8Rng::seed_from_u64(seed)
}

fn elem(f: &FiniteField, r: &mut ChaCha8Rng) -> Elem {
    f.elem_from_index(r.gen_range(0..f.size() as usize))
}

fn random_poly(f: &FiniteField, deg: usize, r: &mut ChaCha8Rng) -> UPoly {
    let mut c: Vec<Elem> = (0..deg).map(|_| elem(f, r)).collect();
    c.push(f.elem_from_index(r.gen_range(1..f.size() as usize)));
    UPoly::new(f, c)
}

/// Every monic polynomial of the given degree.
fn monics(f: &FiniteField, deg: usize) -> Vec<UPoly> {
    let q = f.size() as usize;
    (0..q.pow(deg as u32))
        .map(|mut i| {
            let mut c = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                c.push(f.elem_from_index(i % q));
                i /= q;
            }
            c.push(f.one());
            UPoly::new(f, c)
        })
        .collect()
}

/// Irreducible iff no monic divisor of degree `1..=deg/2`.
fn oracle_irreducible(g: &UPoly) -> bool {
    let d = g.degree().unwrap();
    d >= 1 && (1..=d / 2).all(|k| monics(g.field(), k).iter().all(|h| !g.rem(h).unwrap().is_zero()))
}

#[test]
fn factorization_reconstructs_and_is_irreducible() {
    let mut r = rng();
    for (p, k) in [(2, 2), (3, 2), (5, 1), (2, 3)] {
        let f = FiniteField::of(p, k);
        for _ in 0..25 {
            let deg = r.gen_range(1..=5);
            let g = random_poly(&f, deg, &mut r);
            let factors = factor_univariate(&g).unwrap();
            let mut prod = UPoly::constant(&f, g.lc());
            for (h, m) in &factors {
                assert!(h.is_monic());
                assert!(oracle_irreducible(h), "{h:?} reducible");
                prod = &prod * &h.pow(*m as u64);
            }
            assert_eq!(prod, g);
            assert_eq!(is_irreducible(&g).unwrap(), oracle_irreducible(&g));
        }
    }
}

#[test]
fn products_of_irreducibles_refactor() {
    let mut r = rng();
    let f9 = FiniteField::of(3, 2);
    let irr: Vec<UPoly> = (1..=2).flat_map(|d| monics(&f9, d)).filter(oracle_irreducible).collect();
    for _ in 0..50 {
        let mut picked: Vec<UPoly> = (0..3).map(|_| irr[r.gen_range(0..irr.len())].clone()).collect();
        let prod = picked.iter().fold(UPoly::one(&f9), |a, b| &a * b);
        let mut got: Vec<UPoly> = Vec::new();
        for (h, m) in factor_univariate(&prod).unwrap() {
            for _ in 0..m {
                got.push(h.clone());
            }
        }
        picked.sort_by(|a, b| a.canonical_cmp(b));
        got.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(got, picked);
    }
}

#[test]
fn roots_match_evaluation() {
    let mut r = rng();
    let f = FiniteField::of(3, 3);
    for _ in 0..30 {
        let g = random_poly(&f, r.gen_range(1..=6), &mut r);
        let brute: Vec<Elem> = f.elements().filter(|&a| g.eval(a).is_zero()).collect();
        let mut got = roots(&g).unwrap();
        got.sort();
        assert_eq!(got, brute);
    }
}

#[test]
fn evaluation_is_a_ring_map() {
    let mut r = rng();
    let f9 = FiniteField::of(3, 2);
    for _ in 0..50 {
        let (a, b) = (random_poly(&f9, 4, &mut r), random_poly(&f9, 3, &mut r));
        let x = elem(&f9, &mut r);
        assert_eq!((&a * &b).eval(x), f9.mul(a.eval(x), b.eval(x)));
        assert_eq!((&a + &b).eval(x), f9.add(a.eval(x), b.eval(x)));
        assert_eq!(a.compose(&b).unwrap().eval(x), a.eval(b.eval(x)));
    }
}

#[test]
fn division_and_gcd() {
    let mut r = rng();
    let f = FiniteField::of(2, 3);
    for _ in 0..50 {
        let (a, b, h) = (random_poly(&f, 5, &mut r), random_poly(&f, 3, &mut r), random_poly(&f, 2, &mut r));
        let (qt, rm) = a.divmod(&b).unwrap();
        assert_eq!(&(&qt * &b) + &rm, a);
        assert!(rm.degree().is_none_or(|d| d < 3));
        let g = (&a * &h).gcd(&(&b * &h)).unwrap();
        assert!(g.rem(&h.monic()).unwrap().is_zero());
        assert!((&a * &h).rem(&g).unwrap().is_zero());
    }
}

#[test]
fn text_round_trip() {
    let mut r = rng();
    let f = FiniteField::of(3, 3);
    for _ in 0..30 {
        let g = random_poly(&f, r.gen_range(0..=8), &mut r);
        assert_eq!(parse_poly(&f, &to_sparse(&g)).unwrap(), g);
    }
    let f4 = FiniteField::of(2, 2);
    let g = parse_poly(&f4, "[0, 1, 1]").unwrap();
    let w = f4.from_coeffs(&[0, 1]).unwrap();
    assert_eq!(g.eval(w), f4.one());
}

#[test]
fn valuations_of_rational_functions() {
    let mut r = rng();
    let f = FiniteField::of(5, 1);
    for _ in 0..30 {
        let a = elem(&f, &mut r);
        let lin = UPoly::new(&f, vec![f.neg(a), f.one()]);
        let (k1, k2) = (r.gen_range(0..4u64), r.gen_range(0..4u64));
        let mut num = random_poly(&f, 2, &mut r);
        let mut den = random_poly(&f, 2, &mut r);
        while num.eval(a).is_zero() {
            num = random_poly(&f, 2, &mut r);
        }
        while den.eval(a).is_zero() {
            den = random_poly(&f, 2, &mut r);
        }
        let rf = RatFunc::new(&num * &lin.pow(k1), &den * &lin.pow(k2)).unwrap();
        assert_eq!(rf.valuation_at_point(a).unwrap(), k1 as i64 - k2 as i64);
        assert_eq!(rf.valuation_at_infinity(), (2 + k2 as i64) - (2 + k1 as i64));
    }
}

#[test]
fn subgroup_polynomials_are_additive() {
    let f4 = FiniteField::of(2, 2);
    let v = f4.subfield_members(2).unwrap();
    let lv = LinearizedPoly::from_subgroup(&f4, &v).unwrap();
    assert_eq!(lv.expanded(), &UPoly::from_ints(&f4, &[0, 1, 1]));
    for a in f4.elements() {
        for b in f4.elements() {
            assert_eq!(lv.apply(f4.add(a, b)), f4.add(lv.apply(a), lv.apply(b)));
        }
    }
    // subspaces of F_2^3: 1 + 7 + 7 + 1
    let f8 = FiniteField::of(2, 3);
    let all: Vec<Elem> = f8.elements().collect();
    assert_eq!(enumerate_subgroups(&f8, &all).len(), 16);
}

#[test]
fn image_test_examples() {
    let f4 = FiniteField::of(2, 2);
    let v = vec![f4.zero(), f4.one()];
    let x2x = UPoly::from_ints(&f4, &[0, 1, 1]);
    match is_linearized_image(&x2x, &v).unwrap() {
        ImageVerdict::Reducible { w, g } => {
            assert_eq!(w, vec![f4.zero()]);
            assert_eq!(g, UPoly::x(&f4));
        }
        ImageVerdict::Irreducible => panic!("x^2 + x is an image"),
    }
    let x3 = UPoly::monomial(&f4, f4.one(), 3);
    assert_eq!(is_linearized_image(&x3, &v).unwrap(), ImageVerdict::Irreducible);
    assert!(!bivariate_irreducible_bruteforce(&v, &x2x).unwrap());
    assert!(bivariate_irreducible_bruteforce(&v, &x3).unwrap());
    assert!(matches!(corollary_irreducible(&x3), CorollaryVerdict::Irreducible { d: 3 }));
    let x6x3 = UPoly::from_terms(&f4, &[(6, f4.one()), (3, f4.one())]);
    assert_eq!(coprime_degree(&x6x3), Some(3));
    assert!(matches!(corollary_irreducible(&x6x3), CorollaryVerdict::Inconclusive));
}

#[test]
fn images_are_detected() {
    let mut r = rng();
    let f4 = FiniteField::of(2, 2);
    let v = vec![f4.zero(), f4.one()];
    let lv = LinearizedPoly::from_subgroup(&f4, &v).unwrap();
    for _ in 0..25 {
        let mut h = random_poly(&f4, r.gen_range(1..=3), &mut r);
        // the constant term of g is only determined up to the kernel
        h = &h - &UPoly::constant(&f4, h.coeff(0));
        let f = lv.apply_poly(&h).unwrap();
        match is_linearized_image(&f, &v).unwrap() {
            ImageVerdict::Reducible { g, .. } => {
                assert_eq!(lv.apply_poly(&g).unwrap(), f);
                assert_eq!(&g - &UPoly::constant(&f4, g.coeff(0)), h);
            }
            ImageVerdict::Irreducible => panic!("missed image"),
        }
    }
}

/// Reducibility of `T^p - T - f` over the algebraic closure, by a direct search
/// for `g` with `g^p - g - f` constant among polynomials of degree `deg f / p`.
fn oracle_as_reducible(f: &UPoly) -> bool {
    let field = f.field();
    let p = field.characteristic() as usize;
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return true;
    }
    if !d.is_multiple_of(p) {
        return false;
    }
    let gd = d / p;
    let q = field.size() as usize;
    (0..q.pow(gd as u32 + 1)).any(|mut i| {
        let mut c = Vec::new();
        for _ in 0..=gd {
            c.push(field.elem_from_index(i % q));
            i /= q;
        }
        let g = UPoly::new(field, c);
        let lhs = &(&g.pow(p as u64) - &g) - f;
        lhs.degree().unwrap_or(0) == 0
    })
}

#[test]
fn degree_p_oracle_agrees() {
    let mut r = rng();
    for (p, k) in [(2, 2), (3, 1), (3, 2)] {
        let f = FiniteField::of(p, k);
        let v = f.subfield_members(p).unwrap();
        for _ in 0..40 {
            let g = random_poly(&f, r.gen_range(1..=6), &mut r);
            let reducible = oracle_as_reducible(&g);
            assert_eq!(!bivariate_irreducible_bruteforce(&v, &g).unwrap(), reducible, "{g:?}");
            assert_eq!(matches!(is_linearized_image(&g, &v).unwrap(), ImageVerdict::Reducible { .. }), reducible);
            if reducible {
                assert!(!matches!(corollary_irreducible(&g), CorollaryVerdict::Irreducible { .. }));
            }
        }
    }
}
