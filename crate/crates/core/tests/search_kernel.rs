mod common;

use common::*;
use proptest::prelude::*;
use subseq::kernel::{applicable_rules, check_derivation, check_derivation_with, CutPolicy, KernelError};
use subseq::search::{prove, Prover, SearchOutcome};
use subseq::{Calculus, Derivation, Position, RuleId, Sequent};

fn reversed(s: &Sequent) -> Sequent {
    let mut a = s.antecedent.clone();
    let mut b = s.succedent.clone();
    a.reverse();
    b.reverse();
    Sequent::new(a, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn proofs_check_and_are_cut_free(s in arb_sequent(arb_frm2())) {
        match prove(&s, Calculus::Gwf).unwrap() {
            SearchOutcome::Proved(d) => {
                prop_assert!(d.conclusion.multiset_eq(&s));
                prop_assert!(d.is_cut_free());
                check_derivation(&d, Calculus::Gwf).unwrap();
            }
            SearchOutcome::NotProvable(_) => {}
        }
    }

    #[test]
    fn provability_ignores_order(s in arb_sequent(arb_frm2())) {
        let mut prover = Prover::new(Calculus::Gwf);
        prop_assert_eq!(prover.provable(&s), prover.provable(&reversed(&s)));
    }

    #[test]
    fn modal_proofs_check(s in arb_sequent(arb_frm2())) {
        let image = subseq::embedding::translate_sequent(&s).unwrap().image;
        if let Some(d) = prove(&image, Calculus::MNec).unwrap().into_derivation() {
            check_derivation(&d, Calculus::MNec).unwrap();
        }
    }
}

#[test]
fn premises_are_lighter_on_small_corpus() {
    for s in sequents(&formulas_by_leaves(3, Lang::Frm2), 3) {
        let w: usize = s.formulas().map(subseq::syntax::weight).sum();
        for app in applicable_rules(&s, Calculus::Gwf) {
            for p in &app.premises {
                assert!(p.formulas().map(subseq::syntax::weight).sum::<usize>() < w, "{} on {s}", app.rule);
            }
        }
    }
}

#[test]
fn checker_rejects_tampering() {
    let d = prove(&seq("p & q |- q"), Calculus::Gwf).unwrap().into_derivation().unwrap();
    let mut bad = d.clone();
    bad.premises[0].conclusion = seq("p, q |- p");
    assert!(matches!(check_derivation(&bad, Calculus::Gwf), Err(KernelError::RuleMismatch { .. })));
    let mut wrong = d.clone();
    wrong.principal = vec![Position::right(0)];
    assert!(check_derivation(&wrong, Calculus::Gwf).is_err());
    assert!(check_derivation(&d, Calculus::MNec).is_err());

    let id = Derivation::leaf(seq("p |- p"), RuleId::Id, vec![Position::left(0), Position::right(0)]);
    let cut = Derivation::new(seq("p |- p"), RuleId::Cut, vec![], vec![id.clone(), id]);
    assert!(matches!(check_derivation(&cut, Calculus::Gwf), Err(KernelError::CutNotAllowed { .. })));
    check_derivation_with(&cut, Calculus::Gwf, CutPolicy::Allow).unwrap();
}

#[test]
fn documented_decisions() {
    let mut gwf = Prover::new(Calculus::Gwf);
    assert!(gwf.provable(&seq("|- p & q -> p")));
    assert!(gwf.provable(&seq("p -> q |- p -> q")));
    assert!(!gwf.provable(&seq("p, p -> q |- q")));
    assert!(!gwf.provable(&seq("p -> q, q -> r |- p -> r")));
    let mut mnec = Prover::new(Calculus::MNec);
    assert!(mnec.provable(&seq("[](p => q) |- [](p => q)")));
    assert!(mnec.provable(&seq("|- [](p => p)")));
    assert!(!mnec.provable(&seq("[]p |- []q")));
}
