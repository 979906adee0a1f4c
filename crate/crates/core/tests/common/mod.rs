//! Shared corpora for the integration and acceptance tests: every formula over
//! the leaves `p`, `q`, `bot` up to a leaf count, and every sequent built from
//! them within a total leaf budget.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use subseq::{Formula, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lang {
    /// `∧ ∨ → ⊥`.
    Frm,
    /// `Frm` plus `⊃` between `Frm` formulas, closed under `∧ ∨`.
    Frm2,
    /// `∧ ∨ ⊃ □ ⊥`, no strict implication.
    Modal,
}

impl Lang {
    fn admits(self, f: &Formula) -> bool {
        match self {
            Lang::Frm => f.is_frm(),
            Lang::Frm2 => f.is_frm2(),
            Lang::Modal => !f.contains_strict(),
        }
    }
}

pub fn leaves() -> Vec<Formula> {
    vec![Formula::atom("p"), Formula::atom("q"), Formula::bottom()]
}

/// `out[k]` holds every formula of `lang` with exactly `k` leaves, for
/// `k ≤ max_leaves` (`out[0]` is empty). Boxes do not count as leaves; in the
/// modal language a box is allowed over any non-box formula.
pub fn formulas_by_leaves(max_leaves: usize, lang: Lang) -> Vec<Vec<Formula>> {
    // All trees in the superset language, filtered at the end.
    let mut all: Vec<Vec<Formula>> = vec![vec![]; max_leaves + 1];
    if max_leaves >= 1 {
        all[1] = leaves();
        if lang == Lang::Modal {
            let boxed: Vec<Formula> = all[1].iter().map(|f| Formula::boxed(f.clone())).collect();
            all[1].extend(boxed);
        }
    }
    for k in 2..=max_leaves {
        let mut out = vec![];
        for i in 1..k {
            for a in &all[i] {
                for b in &all[k - i] {
                    let (a, b) = (a.clone(), b.clone());
                    out.push(Formula::and(a.clone(), b.clone()));
                    out.push(Formula::or(a.clone(), b.clone()));
                    match lang {
                        Lang::Frm => out.push(Formula::strict(a, b)),
                        Lang::Frm2 => {
                            out.push(Formula::strict(a.clone(), b.clone()));
                            out.push(Formula::mat(a, b));
                        }
                        Lang::Modal => out.push(Formula::mat(a, b)),
                    }
                }
            }
        }
        if lang == Lang::Modal {
            let boxed: Vec<Formula> = out
                .iter()
                .filter(|f| !matches!(f.kind(), subseq::Kind::Box(_)))
                .map(|f| Formula::boxed(f.clone()))
                .collect();
            out.extend(boxed);
        }
        all[k] = out;
    }
    all.into_iter()
        .map(|fs| fs.into_iter().filter(|f| lang.admits(f)).collect())
        .collect()
}

/// Every sequent (as a pair of multisets) whose formulas come from `by_leaves`
/// and whose total leaf count is between 1 and `max_leaves`.
pub fn sequents(by_leaves: &[Vec<Formula>], max_leaves: usize) -> Vec<Sequent> {
    // Index formulas globally so multisets can be enumerated as sorted index lists.
    let mut pool: Vec<(usize, &Formula)> = vec![];
    for (k, fs) in by_leaves.iter().enumerate().take(max_leaves + 1) {
        for f in fs {
            pool.push((k, f));
        }
    }
    let mut multisets: Vec<(usize, Vec<usize>)> = vec![(0, vec![])];
    let mut frontier = multisets.clone();
    while !frontier.is_empty() {
        let mut next = vec![];
        for (cost, ms) in &frontier {
            let start = ms.last().copied().unwrap_or(0);
            for (i, (k, _)) in pool.iter().enumerate().skip(start) {
                if cost + k <= max_leaves {
                    let mut m = ms.clone();
                    m.push(i);
                    next.push((cost + k, m));
                }
            }
        }
        multisets.extend(next.iter().cloned());
        frontier = next;
    }
    let build = |ms: &[usize]| ms.iter().map(|&i| pool[i].1.clone()).collect::<Vec<_>>();
    let mut out = vec![];
    for (ca, a) in &multisets {
        for (cs, s) in &multisets {
            if ca + cs >= 1 && ca + cs <= max_leaves {
                out.push(Sequent::new(build(a), build(s)));
            }
        }
    }
    out
}

pub fn flatten(by_leaves: &[Vec<Formula>]) -> Vec<Formula> {
    by_leaves.iter().flatten().cloned().collect()
}

pub fn atoms_of(s: &Sequent) -> BTreeSet<String> {
    s.formulas().flat_map(|f| f.atoms()).collect()
}

pub fn seq(s: &str) -> Sequent {
    subseq::text::parse_sequent(s).unwrap()
}

pub fn fml(s: &str) -> Formula {
    subseq::text::parse_formula(s).unwrap()
}

fn leaf() -> impl Strategy<Value = Formula> {
    prop_oneof![
        Just(Formula::atom("p")),
        Just(Formula::atom("q")),
        Just(Formula::atom("r")),
        Just(Formula::bottom()),
    ]
}

/// Random `Frm` formulas.
pub fn arb_frm() -> BoxedStrategy<Formula> {
    leaf().prop_recursive(4, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::strict(a, b)),
        ]
    })
    .boxed()
}

/// Random `Frm2` formulas: `∧`/`∨` combinations of `Frm` formulas and
/// material implications between them.
pub fn arb_frm2() -> BoxedStrategy<Formula> {
    let frm1 = prop_oneof![
        3 => arb_frm(),
        1 => (arb_frm(), arb_frm()).prop_map(|(a, b)| Formula::mat(a, b)),
    ];
    frm1.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::or(a, b)),
        ]
    })
    .boxed()
}

pub fn arb_sequent<S: Strategy<Value = Formula> + Clone>(f: S) -> impl Strategy<Value = Sequent> {
    (prop::collection::vec(f.clone(), 0..3), prop::collection::vec(f, 0..3))
        .prop_map(|(a, s)| Sequent::new(a, s))
}
