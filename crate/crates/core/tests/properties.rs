mod common;

use common::*;
use nalgebra::DMatrix;
use num_traits::Zero;
use orbitwidth::exec::Execution;
use orbitwidth::gt_pattern::{edge_point, enumerate_edges_at_lambda, is_primitive, validate_pattern};
use orbitwidth::oracle::{
    random_orbit_point, random_special_orthogonal, sample_valid_pattern, verify_interlacing_with,
    verify_roundtrip_with,
};
use orbitwidth::orbit_matrix::{
    char_poly, charpoly_residual, embed_lambda, embed_values, gt_map, gt_torus_act, pfaffian,
    spectrum_to_chamber,
};
use orbitwidth::reconstruction::{
    build_orbit_point, extend_even, extend_odd, solve_cauchy_weights, InterlacingPair,
};
use orbitwidth::root_system::{
    coroot_pairings, min_coroot_pairing, positive_coroots, simple_root_minimum, Root,
};
use orbitwidth::width_bound::{bound, standard_torus_comparison, Conclusion};
use orbitwidth::{Family, GroupSpec, Rational, SkewMatrix, WeylPoint};
use proptest::prelude::*;

fn group_strategy(max_rank: usize) -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1..=max_rank).prop_map(GroupSpec::b),
        (2..=max_rank).prop_map(GroupSpec::d),
    ]
}

/// Regular rational points: distinct numerators over a common denominator.
fn regular_rational(max_rank: usize) -> impl Strategy<Value = WeylPoint<Rational>> {
    group_strategy(max_rank).prop_flat_map(|g| {
        let n = g.rank();
        let lo = if g.family() == Family::B { 1 } else { 0 };
        (
            Just(g),
            prop::collection::btree_set(lo..200i64, n),
            1..12i64,
            any::<bool>(),
        )
            .prop_map(|(g, set, den, flip)| {
                let mut v: Vec<Rational> = set.iter().rev().map(|x| q(*x, den)).collect();
                if g.family() == Family::D && flip {
                    let last = v.len() - 1;
                    v[last] = -v[last].clone();
                }
                WeylPoint::new(g, v).unwrap()
            })
    })
}

/// Regular float points with rational coordinates.
fn regular_f64(max_rank: usize) -> impl Strategy<Value = WeylPoint> {
    regular_rational(max_rank).prop_map(|p| p.to_f64())
}

fn well_separated(p: &WeylPoint) -> bool {
    let c = p.coords();
    let mut mags: Vec<f64> = c.iter().map(|x| x.abs()).collect();
    mags.sort_by(|a, b| b.partial_cmp(a).unwrap());
    mags.windows(2).all(|w| w[0] - w[1] > 1e-3) && c.iter().all(|x| x.abs() < 1e4)
}

fn interlaced(values: &[i64]) -> (Vec<f64>, Vec<f64>) {
    let first = values.iter().step_by(2).map(|x| *x as f64 / 4.0).collect();
    let second = values.iter().skip(1).step_by(2).map(|x| *x as f64 / 4.0).collect();
    (first, second)
}

fn desc(set: &std::collections::BTreeSet<i64>) -> Vec<i64> {
    set.iter().rev().copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn regular_minimum_is_the_simple_root_formula(lam in regular_rational(6)) {
        let (_, min) = min_coroot_pairing(lam.group(), &lam, false).unwrap();
        prop_assert_eq!(&min, &simple_root_minimum(&lam));
        prop_assert_eq!(Some(min), min_positive(all_coroot_values(lam.group().family(), lam.coords())));
    }

    #[test]
    fn d_pairings_are_symmetric_in_the_last_sign(lam in regular_rational(6)) {
        prop_assume!(lam.group().family() == Family::D);
        let mut flipped = lam.coords().to_vec();
        let last = flipped.len() - 1;
        flipped[last] = -flipped[last].clone();
        let other = WeylPoint::new(lam.group(), flipped).unwrap();
        let sorted = |p: &WeylPoint<Rational>| {
            let mut v: Vec<Rational> = coroot_pairings(p.group(), p).unwrap().into_iter().map(|(_, v)| v).collect();
            v.sort();
            v
        };
        prop_assert_eq!(sorted(&lam), sorted(&other));
    }

    #[test]
    fn edges_at_the_vertex(lam in regular_rational(6), t in 0u32..=8) {
        let g = lam.group();
        let n = g.rank();
        let edges = enumerate_edges_at_lambda(&lam).unwrap();
        let expected = match g.family() { Family::B => n * n, Family::D => n * (n - 1) };
        prop_assert_eq!(edges.len(), expected);
        prop_assert_eq!(positive_coroots(g).len(), expected);
        let t = q(t as i64, 8);
        for e in &edges {
            prop_assert!(is_primitive(&e.weight), "{} has weight {:?}", e.label(), e.weight);
            let p = edge_point(e, &lam, &t).unwrap();
            prop_assert!(validate_pattern(&p, &Rational::zero()).unwrap().is_empty(), "{}", e.label());
        }
        let min = edges.iter().map(|e| e.lattice_length.clone()).min().unwrap();
        prop_assert_eq!(bound(&lam).unwrap().bound, min);
    }

    #[test]
    fn bound_is_homogeneous(lam in regular_rational(5), c in 1i64..50, d in 1i64..50) {
        let c = q(c, d);
        let scaled = lam.scaled(&c);
        prop_assert_eq!(bound(&scaled).unwrap().bound, bound(&lam).unwrap().bound * c);
    }

    #[test]
    fn nonregular_bound_matches_formula(seed in any::<u64>(), pick in 0usize..5) {
        let g = [GroupSpec::b(2), GroupSpec::b(3), GroupSpec::b(5), GroupSpec::d(3), GroupSpec::d(5)][pick];
        let lam = random_single_block_rational(g, &mut rng(seed));
        let r = bound(&lam).unwrap();
        prop_assert!(r.bound > Rational::zero());
        prop_assert_eq!(r.bound, nonregular_formula(g.family(), lam.coords()));
    }

    #[test]
    fn cauchy_weights(set in prop::collection::btree_set(1i64..60, 2..=12usize)) {
        let v = desc(&set);
        let k = v.len() / 2;
        let (b, a) = interlaced(&v[..2 * k]);
        let a_sq: Vec<f64> = a.iter().map(|x| x * x).collect();
        let b_sq: Vec<f64> = b.iter().map(|x| x * x).collect();
        let w = solve_cauchy_weights(&a_sq, &b_sq).unwrap();
        prop_assert!(w.iter().all(|x| *x > 0.0));
        let trace: f64 = b_sq.iter().sum::<f64>() - a_sq.iter().sum::<f64>();
        let sum: f64 = w.iter().sum();
        prop_assert!((sum - trace).abs() <= 1e-10 * trace.abs());
        let dense = dense_cauchy_solve(&a_sq, &b_sq);
        let scale = dense.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for (x, y) in w.iter().zip(&dense) {
            prop_assert!((x - y).abs() <= 1e-10 * scale, "{:?} vs {:?}", w, dense);
        }
    }

    #[test]
    fn odd_extension_reproduces_char_poly(
        set in prop::collection::btree_set(1i64..80, 2..=12usize),
        flip in any::<bool>(),
        angles in prop::collection::vec(-3.2f64..3.2, 6),
    ) {
        let v = desc(&set);
        let k = v.len() / 2;
        // outer b_1 ≥ inner a_1 ≥ ... ≥ b_k ≥ |a_k|
        let (outer, mut inner) = interlaced(&v[..2 * k]);
        if flip {
            inner[k - 1] = -inner[k - 1];
        }
        let pair = InterlacingPair::odd(inner, outer).unwrap();
        let s = extend_odd(&pair, Some(&angles[..k])).unwrap();
        prop_assert!(s.residual(&pair).unwrap() <= 1e-9);
    }

    #[test]
    fn even_extension_reproduces_char_poly_and_pfaffian(
        set in prop::collection::btree_set(1i64..80, 1..=11usize),
        flip in any::<bool>(),
        angles in prop::collection::vec(-3.2f64..3.2, 5),
    ) {
        let mut v = desc(&set);
        if v.len().is_multiple_of(2) {
            v.pop();
        }
        let k = v.len().div_ceil(2);
        let (mut outer, inner) = interlaced(&v);
        if flip {
            outer[k - 1] = -outer[k - 1];
        }
        let target: f64 = outer.iter().map(|x| -x).product();
        let pair = InterlacingPair::even(inner.clone(), outer).unwrap();
        let s = extend_even(&pair, Some(&angles[..k - 1])).unwrap();
        prop_assert!(s.residual(&pair).unwrap() <= 1e-9);
        let base = embed_values(&inner, 2 * k - 1);
        let minus: Vec<f64> = s.y.iter().map(|x| -x).collect();
        let plus = pfaffian(&base.bordered(&s.y).unwrap()).unwrap();
        let reflected = pfaffian(&base.bordered(&minus).unwrap()).unwrap();
        prop_assert!((plus - target).abs() <= 1e-9 * target.abs());
        prop_assert!((reflected + target).abs() <= 1e-9 * target.abs());
    }

    #[test]
    fn random_valid_patterns_round_trip(lam in regular_f64(4), seed in any::<u64>()) {
        prop_assume!(well_separated(&lam));
        let p = sample_valid_pattern(&lam, &mut rng(seed));
        let m = build_orbit_point(&lam, &p, None).unwrap();
        prop_assert_eq!(m.matrix() + m.matrix().transpose(), DMatrix::zeros(m.size(), m.size()));
        let back = gt_map(&m, lam.group()).unwrap();
        prop_assert!(back.max_abs_diff(&p).unwrap() <= 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn conjugation_invariants(size in 2usize..=9, seed in any::<u64>()) {
        let m = SkewMatrix::new(random_skew(&mut rng(seed), size)).unwrap();
        let q = random_special_orthogonal(size, seed ^ 0x5eed);
        let c = m.conjugate(&q);
        prop_assert_eq!(c.matrix() + c.matrix().transpose(), DMatrix::zeros(size, size));
        prop_assert!(charpoly_residual(&char_poly(&c), &char_poly(&m)) <= 1e-9);
        if size % 2 == 0 {
            let (a, b) = (pfaffian(&m).unwrap(), pfaffian(&c).unwrap());
            let scale = m.max_abs().powi(size as i32 / 2).max(1.0);
            prop_assert!((a - b).abs() <= 1e-9 * scale, "{} vs {}", a, b);
        }
    }

    #[test]
    fn spectrum_of_the_embedding(lam in regular_f64(6)) {
        let s = spectrum_to_chamber(&embed_lambda(&lam)).unwrap();
        for (x, y) in s.values.iter().zip(lam.coords()) {
            prop_assert!((x - y).abs() <= 1e-10 * (1.0 + y.abs()));
        }
    }

    #[test]
    fn torus_action_keeps_gt_values(
        lam in regular_f64(4),
        seed in any::<u64>(),
        level_pick in any::<prop::sample::Index>(),
        angles in prop::collection::vec(-3.2f64..3.2, 4),
    ) {
        let g = lam.group();
        let m = random_orbit_point(&lam, seed);
        let level = 2 + level_pick.index(g.matrix_size() - 1);
        let moved = gt_torus_act(&m, g, level, &angles[..level / 2]).unwrap();
        prop_assert_eq!(moved.matrix() + moved.matrix().transpose(), DMatrix::zeros(m.size(), m.size()));
        let diff = gt_map(&moved, g).unwrap().max_abs_diff(&gt_map(&m, g).unwrap()).unwrap();
        prop_assert!(diff <= 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn oracle_reports_are_deterministic_and_clean(lam in regular_f64(4), seed in any::<u64>()) {
        let a = verify_interlacing_with(&lam, 40, seed, Execution::Parallel, None).unwrap();
        let b = verify_interlacing_with(&lam, 40, seed, Execution::Sequential, None).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.passed());
        prop_assume!(well_separated(&lam));
        let r = verify_roundtrip_with(&lam, 20, seed, Execution::Parallel, None).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures.first());
        prop_assert!(r.max_residual < 1e-7);
    }
}

#[test]
fn standard_region_is_weaker_for_every_long_short_pair() {
    for g in [GroupSpec::b(2), GroupSpec::b(3)] {
        let mut checked = 0;
        for seed in 0..20 {
            let p = random_regular_rational(g, &mut rng(seed));
            for alpha in Root::all(g).into_iter().filter(|r| r.norm_sq() == 2) {
                for beta in Root::all(g).into_iter().filter(|r| r.norm_sq() == 1) {
                    if alpha.dot(&beta) == 0 {
                        continue;
                    }
                    let c = standard_torus_comparison(&p, &alpha, &beta).unwrap();
                    assert_eq!(c.conclusion, Conclusion::StandardWeaker, "{alpha} {beta}");
                    assert!(c.t_cut.unwrap() < c.coroot_bound);
                    checked += 1;
                }
            }
        }
        assert!(checked > 0);
    }
}
