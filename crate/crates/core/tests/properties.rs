use std::collections::BTreeMap;

use num_rational::BigRational;
use proptest::prelude::*;

use fusscat::census::{
    census_enumerated, count_coarse, count_full, fuss_catalan, rothe_first_laurent, rothe_second_laurent,
    DEFAULT_ORACLE_CAP,
};
use fusscat::complex::{
    build_complex, coarsen, enumerate_trees, CoarseColourVector, ColourVector, Composition, DecompositionTree,
};
use fusscat::geometry::{lift_point, schlegel, RationalPoint};
use fusscat::series::{esym_checks, g_residuals, jacobian_check, solve_g};

/// A tree picked by position in the canonical order.
fn arb_tree() -> impl Strategy<Value = DecompositionTree> {
    (2usize..=4, 0usize..=5, any::<prop::sample::Index>()).prop_map(|(d, n, i)| {
        let total: usize = fuss_catalan(d as u64, n as u64).try_into().unwrap();
        enumerate_trees(d, n).unwrap().nth(i.index(total)).unwrap()
    })
}

fn arb_gamma(d: usize, max: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..=max, d + 1)
}

fn arb_rational() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=20).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

proptest! {
    #[test]
    fn encoding_round_trips(t in arb_tree()) {
        prop_assert_eq!(DecompositionTree::decode(&t.encode(), t.d()).unwrap(), t);
    }

    #[test]
    fn built_complexes_are_rainbow(t in arb_tree()) {
        let cx = build_complex(&t);
        let (d, n) = (t.d(), t.index());
        prop_assert_eq!(cx.vertex_count(), n + d);
        prop_assert_eq!(cx.simplices().len(), n);
        prop_assert!(cx.is_proper());
        for s in cx.simplices() {
            let mut colours: Vec<usize> = s.iter().map(|&v| cx.colour(v)).collect();
            colours.sort_unstable();
            prop_assert_eq!(colours, (0..=d).collect::<Vec<_>>());
        }
        let gamma = cx.colour_vector();
        prop_assert_eq!(count_full(&gamma) > 0u32.into(), true);
    }

    #[test]
    fn full_count_symmetric_in_the_facet_colours(
        gamma in arb_gamma(4, 4),
        perm in Just((1..=4).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let mut shuffled = gamma.clone();
        for (k, &p) in perm.iter().enumerate() {
            shuffled[k + 1] = gamma[p];
        }
        prop_assert_eq!(
            count_full(&ColourVector::new(gamma)),
            count_full(&ColourVector::new(shuffled))
        );
    }

    #[test]
    fn coarse_count_is_a_block_sum(d in 2usize..=4, seed in any::<prop::sample::Index>(), total in 0u64..=5) {
        let all = Composition::all_of(d + 1);
        let beta = &all[seed.index(all.len())];
        let n = total as usize;
        // sum of count_full over the fibre of every coarse vector
        let mut sums: BTreeMap<Vec<u64>, fusscat::census::BigCount> = BTreeMap::new();
        let mut stack = vec![Vec::new()];
        while let Some(g) = stack.pop() {
            if g.len() == d + 1 {
                if g.iter().sum::<u64>() == (n + d) as u64 {
                    let coarse = coarsen(&ColourVector::new(g.clone()), beta).unwrap();
                    *sums.entry(coarse.counts().to_vec()).or_default() += count_full(&ColourVector::new(g));
                }
                continue;
            }
            let used: u64 = g.iter().sum();
            for x in 0..=(n + d) as u64 - used {
                let mut next = g.clone();
                next.push(x);
                stack.push(next);
            }
        }
        for (g, c) in sums {
            let direct = count_coarse(beta, &CoarseColourVector::new(g.clone())).unwrap();
            prop_assert_eq!(direct, c, "beta {:?} gamma {:?}", beta, g);
        }
    }

    #[test]
    fn convolutions_hold(lo in 1u64..=4, hi in 1u64..=4, extra in 0u64..=4) {
        let gamma = lo + hi + extra;
        let (l, r) = rothe_first_laurent(lo, hi, gamma).unwrap();
        prop_assert_eq!(l, r);
        let (l, r) = rothe_second_laurent(lo, hi, gamma).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn jacobian_identity_at_random_points(point in prop::collection::vec(arb_rational(), 1..=5)) {
        match jacobian_check(&point) {
            Ok((l, r)) => prop_assert_eq!(l, r),
            Err(_) => {
                let one = BigRational::from_integer(1.into());
                let two = BigRational::from_integer(2.into());
                prop_assert!(point.iter().any(|x| *x == -&one || &two * x == -&one));
            }
        }
        prop_assert!(esym_checks(&point));
    }

    #[test]
    fn lift_is_injective(a in prop::collection::vec(arb_rational(), 3), b in prop::collection::vec(arb_rational(), 3)) {
        let (pa, pb) = (RationalPoint(a), RationalPoint(b));
        if pa != pb {
            prop_assert_ne!(lift_point(&pa), lift_point(&pb));
        }
    }

    #[test]
    fn diagram_shape(t in arb_tree()) {
        let sd = schlegel(&t);
        let (d, n) = (t.d(), t.index());
        prop_assert_eq!(sd.vertices().len(), d + n);
        prop_assert_eq!(sd.cells().len(), n * (d - 1) + 1);
        prop_assert!(sd.inside_base());
        prop_assert!(sd.scaled_to_integers().is_some());
    }
}

#[test]
fn census_invariant_under_facet_colour_permutations() {
    for (d, n) in [(3, 4), (4, 3)] {
        let table = census_enumerated(d, n, DEFAULT_ORACLE_CAP).unwrap();
        // reverse and rotate the facet colours
        let perms: [Box<dyn Fn(usize) -> usize>; 2] = [Box::new(move |k| d + 1 - k), Box::new(move |k| k % d + 1)];
        for p in &perms {
            for (g, c) in table.entries() {
                let mut moved = g.clone();
                for k in 1..=d {
                    moved[p(k)] = g[k];
                }
                assert_eq!(&table.get(&moved), c, "{g:?} -> {moved:?}");
            }
        }
    }
}

#[test]
fn one_simplex_has_one_apex_colour() {
    for d in 2..=6 {
        let t = enumerate_trees(d, 1).unwrap().next().unwrap();
        let cx = build_complex(&t);
        assert_eq!(cx.colours().iter().filter(|&&c| c == 0).count(), 1);
    }
}

#[test]
fn g_system_solved_exactly() {
    for (d, t) in [(2, 9), (3, 6), (4, 5)] {
        assert!(g_residuals(&solve_g(d, t)).iter().all(|r| r.is_zero()), "d={d}");
    }
}
