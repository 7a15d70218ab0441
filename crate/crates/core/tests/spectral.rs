use obstruct_core::filtcomplex::{truncate_with_inclusion, FilteredChainMap};
use obstruct_core::fixtures::{self, random_filtered, random_mw_instance, rng, RandomShape};
use obstruct_core::specseq::{
    compare_with_oracle, comparison_sequences, e_infinity, induced_page_map, page, page_by_homology_all,
    page_entry, stabilization_index, verify_convergence,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pages_agree_with_homology_of_the_previous_page(seed in any::<u64>()) {
        let f = random_filtered(&mut rng(seed), RandomShape::default());
        let top = stabilization_index(&f);
        let oracle = page_by_homology_all(&f, top).unwrap();
        for (k, o) in oracle.iter().enumerate() {
            let p = page(&f, k as i64 + 1).unwrap();
            prop_assert_eq!(p.square_zero_violation(), None);
            for (&(s, t), _) in p.differentials() {
                prop_assert_eq!(p.target_of(s, t), (s + p.r, t - p.r + 1));
            }
            prop_assert!(compare_with_oracle(&p, o).is_ok(), "page {} of seed {}", k + 1, seed);
        }
    }

    #[test]
    fn infinity_page_is_the_graded_cohomology(seed in any::<u64>()) {
        let f = random_filtered(&mut rng(seed), RandomShape::default());
        let rep = verify_convergence(&f).unwrap();
        prop_assert!(rep.passed(), "first failure {:?}", rep.first_failure());
    }

    #[test]
    fn truncation_keeps_weights_from_j_and_kills_the_rest(seed in any::<u64>(), a in 0i64..4) {
        let f = random_filtered(&mut rng(seed), RandomShape::default());
        let j = (f.p_min() + a).min(f.p_max() + 1);
        let (t, incl) = truncate_with_inclusion(&f, j).unwrap();
        let phi = FilteredChainMap::new(t.clone(), f.clone(), incl).unwrap();
        for s in f.p_min()..=f.p_max() {
            for n in f.complex().degrees() {
                let full = page_entry(&f, 1, s, n - s);
                let tr = page_entry(&t, 1, s, n - s);
                if s < j {
                    prop_assert!(tr.is_zero());
                } else {
                    prop_assert!(induced_page_map(&phi, &tr, &full).unwrap().is_isomorphism());
                }
            }
        }
    }
}

#[test]
fn comparison_sequences_hold_on_fixtures() {
    for name in fixtures::NAMES {
        let fx = fixtures::named(name).unwrap();
        let rep = comparison_sequences(&fx.comparison().unwrap()).unwrap();
        assert!(rep.passed(), "{name}: {:?}", rep.first_failure());
    }
}

#[test]
fn comparison_sequences_hold_on_random_top_replacements() {
    let mut r = rng(2);
    for k in 0..50 {
        let fx = random_mw_instance(&mut r, RandomShape::default());
        let rep = comparison_sequences(&fx.comparison().unwrap()).unwrap();
        assert!(rep.passed(), "instance {k}: {:?}", rep.first_failure());
    }
}

#[test]
fn killing_fixture_stabilizes_at_zero() {
    let f = fixtures::killing().filtered;
    assert!(e_infinity(&f).unwrap().page.is_zero());
}
