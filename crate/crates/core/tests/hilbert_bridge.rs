mod common;

use common::*;
use subseq::hilbert::{
    check_hilbert, deduction_check, hilbert_to_sequent, sequent_formula, sequent_to_hilbert, HilbertError,
    HilbertLine, HilbertProof, Justification,
};
use subseq::kernel::{check_derivation_with, CutPolicy};
use subseq::search::Prover;
use subseq::text::{decode_hilbert, encode_hilbert, HilbertDocument};
use subseq::Calculus;

#[test]
fn compiled_proofs_round_trip() {
    let mut prover = Prover::new(Calculus::Gwf);
    for s in sequents(&formulas_by_leaves(3, Lang::Frm), 3) {
        if s.succedent.is_empty() {
            continue;
        }
        let Some(d) = prover.prove(&s).unwrap().into_derivation() else {
            continue;
        };
        let proof = sequent_to_hilbert(&d).unwrap();
        let doc = HilbertDocument {
            assumptions: vec![],
            proof: proof.clone(),
        };
        let read = decode_hilbert(&encode_hilbert(&doc)).unwrap();
        assert_eq!(read, doc);
        assert_eq!(Some(check_hilbert(&proof, &[]).unwrap()), sequent_formula(&s));
        // And back to a sequent proof.
        let back = hilbert_to_sequent(&proof, &s).unwrap();
        check_derivation_with(&back, Calculus::Gwf, CutPolicy::Allow).unwrap();
        assert!(back.conclusion.multiset_eq(&s));
    }
}

#[test]
fn restricted_rules_refuse_assumptions() {
    // AF on an assumption would give local modus ponens through the back door.
    let proof = HilbertProof {
        lines: vec![
            HilbertLine {
                formula: fml("q"),
                just: Justification::Assumption(0),
            },
            HilbertLine {
                formula: fml("p -> q"),
                just: Justification::Rule {
                    rule: 8,
                    premises: vec![0],
                },
            },
        ],
    };
    assert!(matches!(
        check_hilbert(&proof, &[fml("q")]),
        Err(HilbertError::RestrictionViolated { line: 2, rule: 8 })
    ));
    // Conjunction is unrestricted.
    let proof = HilbertProof {
        lines: vec![
            HilbertLine {
                formula: fml("q"),
                just: Justification::Assumption(0),
            },
            HilbertLine {
                formula: fml("q & q"),
                just: Justification::Rule {
                    rule: 12,
                    premises: vec![0, 0],
                },
            },
        ],
    };
    assert_eq!(check_hilbert(&proof, &[fml("q")]).unwrap(), fml("q & q"));
}

#[test]
fn weak_deduction() {
    for (a, b) in [("p & q", "q"), ("p", "q"), ("p", "q -> p"), ("p -> q", "p -> q | r"), ("bot", "p")] {
        let (local, global) = deduction_check(&fml(a), &fml(b));
        assert_eq!(local, global, "{a}, {b}");
    }
}
