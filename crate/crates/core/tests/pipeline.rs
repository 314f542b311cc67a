//! Cross-module checks: optimal families from the search, compressed, then
//! pushed through the exact probability bounds.

use ekr_core::extremal::{max_intersecting_family, verify_ekr, SearchBudget, SearchMode};
use ekr_core::independent::{enumerate_independent, star, star_size_formula};
use ekr_core::sampler::bound_chain_check;
use ekr_core::set::is_intersecting;
use ekr_core::shifting::{random_intersecting_family, shift_full};
use ekr_core::{Graph, VertexId};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn shifted_optima_respect_the_probability_bounds() {
    for n in 2..=4 {
        let g = Graph::p3_union(n).unwrap();
        for r in 1..=n / 2 {
            let best =
                max_intersecting_family(&g, r, SearchMode::Full, SearchBudget::default()).unwrap();
            let (shifted, rep) = shift_full(&g, &best.witness).unwrap();
            assert!(rep.is_shifted && rep.l_intersecting);
            let chain = bound_chain_check(&g, &shifted, r).unwrap();
            assert!(chain.ok, "n={n} r={r}: {chain:?}");
            assert!(chain.top_stratum_empty);
        }
    }
}

#[test]
fn random_shifted_families_respect_the_probability_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (n, r) in [(2, 1), (3, 1), (4, 2)] {
        let g = Graph::p3_union(n).unwrap();
        let pool = enumerate_independent(&g, r);
        for _ in 0..25 {
            let f = random_intersecting_family(&pool, &mut rng);
            let (shifted, _) = shift_full(&g, &f).unwrap();
            assert!(bound_chain_check(&g, &shifted, r).unwrap().ok);
        }
    }
}

#[test]
fn leaf_stars_are_largest_and_match_the_formula() {
    for n in 1..=5 {
        let g = Graph::p3_union(n).unwrap();
        for r in 1..=n {
            let v = verify_ekr(&g, r, SearchMode::ShiftedReduced, SearchBudget::default()).unwrap();
            assert!(v.leaf_attains_largest_star, "n={n} r={r}");
            assert_eq!(BigUint::from(v.leaf_star_size), star_size_formula(n, r));
            assert_eq!(star(&g, VertexId(0), r).len(), v.leaf_star_size);
            assert!(is_intersecting(&v.witness));
        }
    }
}

#[test]
fn claw_verdicts_in_the_open_range() {
    for k in 3..=4 {
        for n in 2..=3 {
            let g = Graph::kclaw_union(n, k).unwrap();
            for r in 1..=n / 2 {
                let v = verify_ekr(&g, r, SearchMode::Full, SearchBudget::default()).unwrap();
                assert!(v.max_intersecting >= v.star_size);
                assert_eq!(v.k, k);
            }
        }
    }
}
