mod oracles;

use proptest::prelude::*;
use workbench_core::corpus::{gen_noisy_coset_set, gen_random_set, zoo};
use workbench_core::regularity::{cayley_graph, PairKind, RegularityOutcome, DEFAULT_SIZE_CAP};
use workbench_core::{coset_partition, enumerate_normal_subgroups, Rational, Side, SubsetMask};

use oracles::{density_naive, from_bits};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[test]
fn edges_match_the_table() {
    for g in zoo(16) {
        let a = gen_random_set(&g, 3);
        let graph = cayley_graph(&g, &a);
        for v in 0..g.order() {
            assert_eq!(graph.row(v).count(), a.count());
            for w in 0..g.order() {
                assert_eq!(graph.has_edge(v, w), a.contains(g.mul(v, w)));
                assert_eq!(graph.col(w).contains(v), a.contains(g.mul(v, w)));
            }
        }
    }
}

#[test]
fn coset_degrees_are_constant() {
    for g in zoo(32) {
        let n = g.order();
        for h in enumerate_normal_subgroups(&g, n) {
            let parts = coset_partition(&g, &h);
            for seed in 0..2 {
                let a = gen_random_set(&g, seed);
                let graph = cayley_graph(&g, &a);
                for (i, ci) in parts.cosets.iter().enumerate() {
                    let x = parts.representatives[i];
                    for (j, cj) in parts.cosets.iter().enumerate() {
                        let y = parts.representatives[j];
                        let xy_h = g.left_translate(g.mul(x, y), h.elements());
                        let h_xy = g.right_translate(h.elements(), g.mul(x, y));
                        let left = a.intersection_count(&xy_h);
                        let right = a.intersection_count(&h_xy);
                        for v in ci.iter() {
                            assert_eq!(graph.degree(Side::Left, v, cj), left, "{}", g.descriptor());
                        }
                        for w in cj.iter() {
                            assert_eq!(graph.degree(Side::Right, w, ci), right, "{}", g.descriptor());
                        }
                    }
                }
            }
        }
    }
}

/// Every uniformly ε²-good coset pair with `|C| ≤ 12` from noisy coset sets:
/// exactly one density case holds, and the pair is ε-regular.
#[test]
fn good_pairs_satisfy_the_dichotomy_and_are_regular() {
    let eps = r(1, 3);
    let mut checked = 0;
    for g in zoo(32) {
        for h in enumerate_normal_subgroups(&g, g.order()) {
            if h.order() > 12 || h.index() > 8 {
                continue;
            }
            let parts = coset_partition(&g, &h);
            for (flips, seed) in [(0, 1), (1, 2)] {
                let a = gen_noisy_coset_set(&g, &h, flips, seed).unwrap();
                let graph = cayley_graph(&g, &a);
                for ci in &parts.cosets {
                    for cj in &parts.cosets {
                        let good = graph.is_uniformly_good(ci, cj, eps * eps).unwrap();
                        if good.kind == PairKind::Fail {
                            continue;
                        }
                        let rep = graph.proposition_dichotomy_check(ci, cj, eps).unwrap();
                        assert!(rep.confirmed(), "{} {:?}", g.descriptor(), rep);
                        assert!(!(rep.sparse_case_holds && rep.dense_case_holds));
                        let reg = graph.is_regular_exact(ci, cj, eps, DEFAULT_SIZE_CAP).unwrap();
                        assert_eq!(reg.outcome, RegularityOutcome::Regular);
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn dichotomy_extremes_match_brute_force() {
    // Z/16 with A = the order-8 subgroup plus one element, cosets of order 4
    let g = workbench_core::build_group("cyclic:16").unwrap();
    let h = enumerate_normal_subgroups(&g, 4).into_iter().find(|h| h.index() == 4).unwrap();
    let parts = coset_partition(&g, &h);
    let mut a = SubsetMask::from_indices(16, (0..16).step_by(2));
    a.toggle(1);
    let graph = cayley_graph(&g, &a);
    let eps = r(2, 5);
    for ci in &parts.cosets {
        for cj in &parts.cosets {
            let Ok(rep) = graph.proposition_dichotomy_check(ci, cj, eps) else { continue };
            let (xs, ys) = (ci.to_vec(), cj.to_vec());
            let mut lo = (1, 1);
            let mut hi = (0, 1);
            for mx in 1u32..16 {
                for my in 1u32..16 {
                    let x0: Vec<usize> = (0..4).filter(|i| mx >> i & 1 == 1).map(|i| xs[i]).collect();
                    let y0: Vec<usize> = (0..4).filter(|i| my >> i & 1 == 1).map(|i| ys[i]).collect();
                    let big = r(x0.len() as i64, 1) >= eps * r(4, 1) || r(y0.len() as i64, 1) >= eps * r(4, 1);
                    if !big {
                        continue;
                    }
                    let d = density_naive(&g, &a, &x0, &y0);
                    let d = (d.0 as i64, d.1 as i64);
                    if r(d.0, d.1) < r(lo.0, lo.1) {
                        lo = d;
                    }
                    if r(d.0, d.1) > r(hi.0, hi.1) {
                        hi = d;
                    }
                }
            }
            assert_eq!(rep.min_density, r(lo.0, lo.1));
            assert_eq!(rep.max_density, r(hi.0, hi.1));
        }
    }
}

fn pair_strategy() -> impl Strategy<Value = (usize, u64, u64, u64)> {
    let groups = zoo(16).len();
    (0..groups).prop_flat_map(|i| {
        let n = zoo(16)[i].order();
        (Just(i), 0u64..1 << n, 1u64..1 << n, 1u64..1 << n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn density_is_an_exact_edge_ratio((gi, a, x, y) in pair_strategy()) {
        let g = &zoo(16)[gi];
        let n = g.order();
        let (a, x, y) = (from_bits(n, a), from_bits(n, x), from_bits(n, y));
        let graph = cayley_graph(g, &a);
        let d = graph.density(&x, &y).unwrap();
        let edges = d * Rational::from_integer((x.count() * y.count()) as i64);
        prop_assert!(edges.is_integer());
        prop_assert_eq!(edges.to_integer() as usize, graph.edge_count(&x, &y));
        prop_assert!(d >= r(0, 1) && d <= r(1, 1));
        let naive = density_naive(g, &a, &x.to_vec(), &y.to_vec());
        prop_assert_eq!(d, r(naive.0 as i64, naive.1 as i64));
        let left_sum: usize = x.iter().map(|v| graph.degree(Side::Left, v, &y)).sum();
        let right_sum: usize = y.iter().map(|w| graph.degree(Side::Right, w, &x)).sum();
        prop_assert_eq!(left_sum, right_sum);
    }

    #[test]
    fn failures_carry_checkable_witnesses((gi, a, x, y) in pair_strategy(), seed in 0u64..1000) {
        let g = &zoo(16)[gi];
        let n = g.order();
        let (a, x, y) = (from_bits(n, a), from_bits(n, x), from_bits(n, y));
        let graph = cayley_graph(g, &a);
        let eps = r(1, 4);
        let base = graph.density(&x, &y).unwrap();
        let recheck = |w: &workbench_core::regularity::IrregularWitness| {
            let d = graph.density(&w.x0, &w.y0).unwrap();
            let gap = if d > base { d - base } else { base - d };
            d == w.density
                && w.x0.is_subset(&x)
                && w.y0.is_subset(&y)
                && r(w.x0.count() as i64, 1) >= eps * r(x.count() as i64, 1)
                && r(w.y0.count() as i64, 1) >= eps * r(y.count() as i64, 1)
                && gap >= eps
        };
        let sampled = graph.is_regular_sampled(&x, &y, eps, 50, seed).unwrap();
        prop_assert!(sampled.outcome != RegularityOutcome::Regular);
        if let Some(w) = &sampled.witness {
            prop_assert!(recheck(w));
        }
        if x.count() + y.count() <= 20 {
            let exact = graph.is_regular_exact(&x, &y, eps, DEFAULT_SIZE_CAP).unwrap();
            match &exact.witness {
                Some(w) => prop_assert!(recheck(w)),
                None => prop_assert_eq!(sampled.outcome, RegularityOutcome::NoViolationFound),
            }
        }
        if x.count() == y.count() {
            let v = graph.is_uniformly_good(&x, &y, eps).unwrap();
            prop_assert_eq!(v.kind == PairKind::Fail, v.witness.is_some());
        }
    }
}
