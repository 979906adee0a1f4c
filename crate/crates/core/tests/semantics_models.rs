mod common;

use common::*;
use proptest::prelude::*;
use subseq::search::Prover;
use subseq::semantics::{countermodel, enumerate_models, neighborhood_families, CountermodelResult, Model};
use subseq::Calculus;

/// Upward-closed families containing W, by brute force over all families.
fn count_upsets(n: usize) -> usize {
    let subsets = 1usize << n;
    (0u32..1 << subsets)
        .filter(|fam| fam >> (subsets - 1) & 1 == 1)
        .filter(|fam| {
            (0..subsets).all(|x| fam >> x & 1 == 0 || (0..subsets).filter(|y| y & x == x).all(|y| fam >> y & 1 == 1))
        })
        .count()
}

#[test]
fn family_counts_match_brute_force() {
    for n in 1..=3 {
        assert_eq!(neighborhood_families(n, true).len(), count_upsets(n));
        assert_eq!(neighborhood_families(n, false).len(), 1 << ((1 << n) - 1));
    }
}

#[test]
fn enumeration_is_exhaustive_and_closed() {
    let atoms = vec!["p".to_string(), "q".to_string()];
    for n in 1..=2 {
        let models: Vec<Model> = enumerate_models(n, true, &atoms).unwrap().collect();
        let families = neighborhood_families(n, true).len();
        assert_eq!(models.len(), families.pow(n as u32) << (2 * n));
        for m in &models {
            // Rebuilding through the validating constructor succeeds.
            assert_eq!(&Model::from_json(&m.to_json()).unwrap(), m);
        }
    }
    let restarted: Vec<Model> = enumerate_models(1, true, &atoms).unwrap().collect();
    let again: Vec<Model> = enumerate_models(1, true, &atoms).unwrap().collect();
    assert_eq!(restarted, again);
    assert!(enumerate_models(4, true, &atoms).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// Proved sequents have no countermodel; found countermodels really refute.
    #[test]
    fn soundness_on_random_sequents(s in arb_sequent(arb_frm())) {
        let proved = Prover::new(Calculus::Gwf).provable(&s);
        match countermodel(&s, 2).unwrap() {
            CountermodelResult::Found { model, world } => {
                prop_assert!(!proved, "countermodel for provable {}", s);
                prop_assert!(model.failing_worlds(&s).unwrap() >> world & 1 == 1);
            }
            CountermodelResult::Exhausted => {}
        }
    }
}

#[test]
fn known_invalidities_have_small_countermodels() {
    for s in ["p, p -> q |- q", "p -> q, q -> r |- p -> r", "|- p | (p -> bot)", "p -> q |- q"] {
        assert!(countermodel(&seq(s), 2).unwrap().is_found(), "{s}");
    }
}
