//! Counting, genus and report invariants.

use std::collections::BTreeSet;

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use towerlab::analysis::{
    count_rational_places, enumerate_affine_points, genus_bound_family_a, genus_bound_recursive,
    genus_level2_exact, ratio_csv, ratio_report, splitting_report, zeta_genus_oracle, AnalysisError, GenusKind,
    CSV_HEADER,
};
use towerlab::gf::{Elem, FiniteField};
use towerlab::poly::{RatFunc, UPoly};
use towerlab::tower::{family_tower_a, AsLhs, Family, FamilyParams, Start, StepSpec, TowerSpec};

fn rng() -> ChaCha8Rng {
    let seed = std::env::var("TOWERLAB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20240601);
    ChaCha8Rng::seed_from_u64(seed)
}

fn family_a(p: u64, n: u32, m: u32) -> (FamilyParams, TowerSpec) {
    let params = FamilyParams::new(Family::A, p, n, m).unwrap();
    let spec = family_tower_a(&params).unwrap();
    (params, spec)
}

fn random_poly(r: &mut ChaCha8Rng, f: &FiniteField, deg: usize) -> UPoly {
    let mut c: Vec<Elem> = (0..deg).map(|_| f.elem_from_index(r.gen_range(0..f.size() as usize))).collect();
    c.push(f.elem_from_index(r.gen_range(1..f.size() as usize)));
    UPoly::new(f, c)
}

/// Brute force over nested loops, independent of the fiber tables.
fn nested_points(spec: &TowerSpec, level: usize) -> BTreeSet<Vec<Elem>> {
    let f = spec.field();
    let mut layer: Vec<Vec<Elem>> = f.elements().map(|a| vec![a]).collect();
    for i in 0..level - 1 {
        let step = spec.step(i);
        let mut next = Vec::new();
        for t in &layer {
            let Some(w) = step.rhs.eval(*t.last().unwrap()) else { continue };
            let lhs = step.lhs_poly(f);
            for y in f.elements() {
                if lhs.eval(y) == w {
                    let mut u = t.clone();
                    u.push(y);
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer.into_iter().collect()
}

#[test]
fn enumeration_matches_nested_loops() {
    for (p, n, m) in [(2u64, 2u32, 1u32), (2, 3, 1), (3, 2, 1), (2, 4, 2)] {
        let (_, spec) = family_a(p, n, m);
        for level in 1..=3 {
            let fast: BTreeSet<Vec<Elem>> =
                enumerate_affine_points(&spec, level).unwrap().into_iter().map(|a| a.coords).collect();
            assert_eq!(fast, nested_points(&spec, level), "p={p} n={n} m={m} level={level}");
        }
    }
}

#[test]
fn fiber_counts_add_up() {
    for (p, n, m) in [(2u64, 2u32, 1u32), (3, 2, 1), (2, 3, 1)] {
        let (_, spec) = family_a(p, n, m);
        for level in 2..=3 {
            let r = splitting_report(&spec, level).unwrap();
            assert_eq!(r.fibers.len() as u64, spec.field().size() + 1);
            assert_eq!(r.fibers.iter().map(|f| f.enumerated).sum::<u64>(), r.total);
            assert_eq!(r.n_affine + r.n_infinite, r.total);
            assert_eq!(r.fibers.iter().map(|f| f.affine).sum::<u64>(), r.n_affine);
            assert!(r.mismatches().is_empty());
            let pinf = r.fiber(Start::Infinity).unwrap();
            assert_eq!(pinf.affine, 0);
        }
    }
}

#[test]
fn hurwitz_agrees_with_zeta_for_artin_schreier_curves() {
    let mut r = rng();
    let f4 = FiniteField::of(2, 2);
    let lhs = AsLhs::trace_form(&f4, 2, 2).unwrap();
    for _ in 0..6 {
        let m = [1usize, 3, 5][r.gen_range(0..3)];
        let rhs = RatFunc::from_poly(random_poly(&mut r, &f4, m));
        let spec = TowerSpec::new(&f4, 2, 2, vec![StepSpec::artin_schreier(lhs.clone(), rhs)], "as").unwrap();
        let g = genus_level2_exact(&spec).unwrap().exact.unwrap();
        assert_eq!(g, (m as u64 - 1) / 2);
        assert_eq!(zeta_genus_oracle(&spec, 2, 2).unwrap(), g);
    }
}

#[test]
fn hurwitz_agrees_with_zeta_for_kummer_curves() {
    let mut r = rng();
    let f9 = FiniteField::of(3, 2);
    let f4 = FiniteField::of(2, 2);
    let mut done = 0;
    while done < 8 {
        let (f, k, deg) = if done % 2 == 0 { (&f9, 2u64, r.gen_range(3..=4)) } else { (&f4, 3, r.gen_range(1..=2)) };
        let u = random_poly(&mut r, f, deg);
        if u.gcd(&u.derivative()).unwrap().degree() != Some(0) {
            continue;
        }
        let spec = TowerSpec::new(f, f.characteristic(), f.degree(), vec![StepSpec::kummer(k, RatFunc::from_poly(u))], "k")
            .unwrap();
        let g = genus_level2_exact(&spec).unwrap().exact.unwrap();
        assert_eq!(zeta_genus_oracle(&spec, 2, 2).unwrap(), g, "k={k} over F_{}", f.size());
        done += 1;
    }
}

#[test]
fn family_a_genus_stays_below_the_family_formula() {
    for (p, n, m) in [(2u64, 2u32, 1u32), (2, 3, 1), (3, 2, 1), (2, 4, 2), (2, 4, 1)] {
        let (params, spec) = family_a(p, n, m);
        let q = spec.field().size();
        let k = params.exponent();
        let g2 = genus_level2_exact(&spec).unwrap().exact.unwrap();
        assert!(Rational64::from_integer(g2 as i64) < genus_bound_family_a(q, k, 2).unwrap());
        for j in 3..=4 {
            assert!(genus_bound_recursive(&spec, j).unwrap() >= genus_bound_recursive(&spec, j - 1).unwrap());
        }
    }
}

#[test]
fn family_a_ratios_reach_the_lambda_bound() {
    let (params, spec) = family_a(2, 2, 1);
    let rows = ratio_report(&spec, 4, Some(&params)).unwrap();
    assert_eq!(rows.iter().map(|r| r.n_total).collect::<Vec<_>>(), vec![5, 9, 15, 33]);
    assert_eq!(rows[0].ratio, None);
    assert_eq!(rows[1].genus_kind, GenusKind::Exact);
    for r in &rows[1..] {
        assert!(r.ratio.unwrap() >= 1.0, "level {}", r.j);
        assert_eq!(r.dv_bound, 1.0);
    }
    assert_eq!(rows[2].genus_kind, GenusKind::Bound);
}

#[test]
fn scale_guard_refuses_large_fields() {
    let (_, spec) = family_a(2, 11, 1);
    assert!(matches!(count_rational_places(&spec, 2), Err(AnalysisError::ScaleExceeded(_))));
    let (_, spec) = family_a(2, 2, 1);
    assert!(matches!(count_rational_places(&spec, 20), Err(AnalysisError::ScaleExceeded(_))));
    assert!(matches!(count_rational_places(&spec, 0), Err(AnalysisError::InvalidArgument(_))));
    let f4 = FiniteField::of(2, 2);
    let lhs = AsLhs::trace_form(&f4, 2, 2).unwrap();
    let rhs = RatFunc::from_poly(UPoly::monomial(&f4, f4.one(), 3));
    let spec = TowerSpec::new(&f4, 2, 2, vec![StepSpec::artin_schreier(lhs, rhs)], "e").unwrap();
    assert!(matches!(zeta_genus_oracle(&spec, 2, 20), Err(AnalysisError::ScaleExceeded(_))));
}

#[test]
fn ratio_csv_layout() {
    let (params, spec) = family_a(2, 2, 1);
    let csv = ratio_csv(&ratio_report(&spec, 3, Some(&params)).unwrap());
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 4);
    for l in &lines[1..] {
        assert_eq!(l.split(',').count(), CSV_HEADER.split(',').count());
    }
    assert!(lines[1].starts_with("1,4,1,5,exact,0,inf,1,"));
    assert!(lines[2].starts_with("2,6,3,9,exact,1,9.000000,1,"));
}
