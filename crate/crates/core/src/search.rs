//! Backward proof search.
//!
//! GWF_N2 and G3M_Nec are decided by exhaustive search: every backward rule
//! application lowers the total weight, so memoized search terminates without a
//! loop check. GWF^s_N2 is decided through GWF_N2 and a proof is then found by
//! a loop-checked direct search.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use thiserror::Error;

use crate::kernel::{
    initial_application, rule_applications, Calculus, Derivation, RuleApplication, RuleId,
};
use crate::sequent::{Position, Sequent};
use crate::syntax::{Formula, Kind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Proved(Derivation),
    /// The sequents at which every branch of the search got stuck.
    NotProvable(BTreeSet<Sequent>),
}

impl SearchOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, SearchOutcome::Proved(_))
    }

    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            SearchOutcome::Proved(d) => Some(d),
            SearchOutcome::NotProvable(_) => None,
        }
    }

    pub fn into_derivation(self) -> Option<Derivation> {
        match self {
            SearchOutcome::Proved(d) => Some(d),
            SearchOutcome::NotProvable(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("`{formula}` is outside the language of {calculus}")]
    OutOfLanguage { formula: String, calculus: Calculus },
    #[error("single-succedent search needs exactly one succedent formula, found {0}")]
    NotSingleSuccedent(usize),
    /// The single/multi-succedent correspondence does not cover the input.
    #[error("outside the covered fragment: {0}")]
    Scope(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

type Memo = Result<Arc<Derivation>, Arc<BTreeSet<Sequent>>>;

/// Memoizing decision procedure for GWF_N2 or G3M_Nec. The memo persists
/// across calls, so one prover can be reused over a corpus.
pub struct Prover {
    calculus: Calculus,
    memo: HashMap<Sequent, Memo>,
}

impl Prover {
    pub fn new(calculus: Calculus) -> Prover {
        assert!(
            calculus != Calculus::GwfSingle,
            "use prove_single for the single-succedent calculus"
        );
        Prover {
            calculus,
            memo: HashMap::new(),
        }
    }

    pub fn calculus(&self) -> Calculus {
        self.calculus
    }

    pub fn prove(&mut self, s: &Sequent) -> Result<SearchOutcome, SearchError> {
        if let Some(f) = s.formulas().find(|f| !self.calculus.admits(f)) {
            return Err(SearchError::OutOfLanguage {
                formula: f.to_string(),
                calculus: self.calculus,
            });
        }
        Ok(match self.search(&s.canonical()) {
            Ok(d) => {
                let d = Derivation::clone(&d)
                    .with_conclusion(s.clone())
                    .expect("canonical form is a permutation");
                SearchOutcome::Proved(d)
            }
            Err(leaves) => SearchOutcome::NotProvable(BTreeSet::clone(&leaves)),
        })
    }

    /// Whether `s` is provable; cheaper than `prove` since no tree is copied.
    pub fn provable(&mut self, s: &Sequent) -> bool {
        self.search(&s.canonical()).is_ok()
    }

    fn search(&mut self, c: &Sequent) -> Memo {
        if let Some(m) = self.memo.get(c) {
            return m.clone();
        }
        let result = self.expand(c);
        self.memo.insert(c.clone(), result.clone());
        result
    }

    fn expand(&mut self, c: &Sequent) -> Memo {
        if let Some(app) = initial_application(c, self.calculus) {
            return Ok(Arc::new(Derivation::leaf(c.clone(), app.rule, app.principal)));
        }
        let rules: Vec<RuleId> = RuleId::rules_of(self.calculus)
            .filter(|r| !r.is_initial())
            .collect();
        for &rule in rules.iter().filter(|r| r.is_invertible()) {
            if let Some(app) = rule_applications(c, rule).into_iter().next() {
                return self.close(c, app);
            }
        }
        let mut leaves = BTreeSet::new();
        let mut any = false;
        for &rule in rules.iter().filter(|r| !r.is_invertible()) {
            for app in rule_applications(c, rule) {
                any = true;
                match self.close(c, app) {
                    Ok(d) => return Ok(d),
                    Err(l) => leaves.extend(l.iter().cloned()),
                }
            }
        }
        if !any {
            leaves.insert(c.clone());
        }
        Err(Arc::new(leaves))
    }

    /// Proves every premise of `app`, failing on the first unprovable one.
    fn close(&mut self, c: &Sequent, app: RuleApplication) -> Memo {
        let mut premises = Vec::with_capacity(app.premises.len());
        for p in &app.premises {
            let d = self.search(&p.canonical())?;
            premises.push(
                Derivation::clone(&d)
                    .with_conclusion(p.clone())
                    .expect("canonical form is a permutation"),
            );
        }
        Ok(Arc::new(Derivation::new(
            c.clone(),
            app.rule,
            app.principal,
            premises,
        )))
    }
}

/// Decides `s` in GWF_N2 or G3M_Nec; for GWF^s_N2 this is [`prove_single`].
pub fn prove(s: &Sequent, calculus: Calculus) -> Result<SearchOutcome, SearchError> {
    match calculus {
        Calculus::GwfSingle => prove_single(s),
        _ => Prover::new(calculus).prove(s),
    }
}

/// Decides `Γ ⇒ X` in GWF^s_N2.
///
/// Provability is settled in GWF_N2; a GWF^s_N2 proof is then found by direct
/// search. When GWF_N2 proves the sequent but the direct search does not, the
/// answer is a [`SearchError::Scope`] for `X ∉ Frm` (the correspondence
/// between the calculi is only claimed for `X ∈ Frm`) and an invariant
/// failure otherwise.
pub fn prove_single(s: &Sequent) -> Result<SearchOutcome, SearchError> {
    check_single(s)?;
    match Prover::new(Calculus::Gwf).prove(s)? {
        SearchOutcome::NotProvable(leaves) => Ok(SearchOutcome::NotProvable(leaves)),
        SearchOutcome::Proved(_) => match search_single(s, None)? {
            Some(d) => Ok(SearchOutcome::Proved(d)),
            None if s.succedent[0].is_frm() => Err(SearchError::Invariant(format!(
                "GWF_N2 proves `{s}` but no GWF^s_N2 proof was found"
            ))),
            None => Err(SearchError::Scope(format!(
                "GWF_N2 proves `{s}`, the succedent is not in Frm and direct search found no GWF^s_N2 proof"
            ))),
        },
    }
}

fn check_single(s: &Sequent) -> Result<(), SearchError> {
    if s.succedent.len() != 1 {
        return Err(SearchError::NotSingleSuccedent(s.succedent.len()));
    }
    match s.formulas().find(|f| !f.is_frm2()) {
        Some(f) => Err(SearchError::OutOfLanguage {
            formula: f.to_string(),
            calculus: Calculus::GwfSingle,
        }),
        None => Ok(()),
    }
}

/// Direct GWF^s_N2 search with a branch loop check and an optional depth bound.
pub fn search_single(s: &Sequent, depth_bound: Option<usize>) -> Result<Option<Derivation>, SearchError> {
    check_single(s)?;
    let mut search = SingleSearch {
        proved: HashMap::new(),
        failed: HashSet::new(),
        path: HashSet::new(),
        bound: depth_bound,
    };
    Ok(search.search(&s.canonical(), 0).ok().map(|d| {
        Derivation::clone(&d)
            .with_conclusion(s.clone())
            .expect("canonical form is a permutation")
    }))
}

struct SingleSearch {
    proved: HashMap<Sequent, Arc<Derivation>>,
    /// Failures that did not depend on the loop check or the depth bound.
    failed: HashSet<Sequent>,
    path: HashSet<Sequent>,
    bound: Option<usize>,
}

/// Failure flag: `true` when the failure depends on the current branch.
type SingleResult = Result<Arc<Derivation>, bool>;

impl SingleSearch {
    fn search(&mut self, c: &Sequent, depth: usize) -> SingleResult {
        if let Some(d) = self.proved.get(c) {
            return Ok(d.clone());
        }
        if self.failed.contains(c) {
            return Err(false);
        }
        if self.path.contains(c) || self.bound.is_some_and(|b| depth > b) {
            return Err(true);
        }
        self.path.insert(c.clone());
        let result = self.expand(c, depth);
        self.path.remove(c);
        match &result {
            Ok(d) => {
                self.proved.insert(c.clone(), d.clone());
            }
            Err(false) => {
                self.failed.insert(c.clone());
            }
            Err(true) => {}
        }
        result
    }

    fn expand(&mut self, c: &Sequent, depth: usize) -> SingleResult {
        if let Some(app) = initial_application(c, Calculus::GwfSingle) {
            return Ok(Arc::new(Derivation::leaf(c.clone(), app.rule, app.principal)));
        }
        let rules: Vec<RuleId> = RuleId::rules_of(Calculus::GwfSingle)
            .filter(|r| !r.is_initial())
            .collect();
        for &rule in rules.iter().filter(|r| r.is_invertible()) {
            if let Some(app) = rule_applications(c, rule).into_iter().next() {
                return self.close(c, app, depth);
            }
        }
        let mut dependent = false;
        for &rule in rules.iter().filter(|r| !r.is_invertible()) {
            for app in rule_applications(c, rule) {
                match self.close(c, app, depth) {
                    Ok(d) => return Ok(d),
                    Err(dep) => dependent |= dep,
                }
            }
        }
        Err(dependent)
    }

    fn close(&mut self, c: &Sequent, app: RuleApplication, depth: usize) -> SingleResult {
        let mut premises = Vec::with_capacity(app.premises.len());
        for p in &app.premises {
            let d = self.search(&p.canonical(), depth + 1)?;
            premises.push(
                Derivation::clone(&d)
                    .with_conclusion(p.clone())
                    .expect("canonical form is a permutation"),
            );
        }
        Ok(Arc::new(Derivation::new(
            c.clone(),
            app.rule,
            app.principal,
            premises,
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Disjunct {
    Left,
    Right,
}

/// For a GWF^s_N2-provable `⇒ X ∨ Y`, the disjunct whose proof the normal
/// proof ends with.
pub fn disjunction_split(x: &Formula, y: &Formula) -> Result<Disjunct, SearchError> {
    let s = Sequent::new(vec![], vec![Formula::or(x.clone(), y.clone())]);
    match prove_single(&s)? {
        SearchOutcome::NotProvable(_) => Err(SearchError::Precondition(format!("`{s}` is not provable"))),
        SearchOutcome::Proved(d) => match d.rule {
            RuleId::ROrLS => Ok(Disjunct::Left),
            RuleId::ROrRS => Ok(Disjunct::Right),
            other => Err(SearchError::Invariant(format!(
                "proof of `{s}` ends in {other}, not a disjunction rule"
            ))),
        },
    }
}

/// A cut-free GWF_N2 derivation of `X, Γ ⇒ Δ, X` by recursion on `X`.
pub fn derive_general_id(x: &Formula, gamma: &[Formula], delta: &[Formula]) -> Result<Derivation, SearchError> {
    if let Some(f) = std::iter::once(x).chain(gamma).chain(delta).find(|f| !f.is_frm2()) {
        return Err(SearchError::OutOfLanguage {
            formula: f.to_string(),
            calculus: Calculus::Gwf,
        });
    }
    Ok(general_id(x, gamma, delta))
}

fn general_id(x: &Formula, gamma: &[Formula], delta: &[Formula]) -> Derivation {
    let cat = |head: &[Formula], tail: &[Formula]| {
        let mut v = head.to_vec();
        v.extend_from_slice(tail);
        v
    };
    let conclusion = Sequent::new(cat(&[x.clone()], gamma), cat(delta, &[x.clone()]));
    let top = Position::left(0);
    let last = Position::right(delta.len());
    let infer = |rule, conclusion, principal, premises| {
        Derivation::infer(rule, conclusion, principal, premises).expect("general identity step")
    };
    match x.kind() {
        Kind::Atom(_) => Derivation::leaf(conclusion, RuleId::Id, vec![top, last]),
        Kind::Bottom => Derivation::leaf(conclusion, RuleId::LBot, vec![top]),
        Kind::And(a, b) => {
            // L∧ then R∧ on the copies of a and b.
            let inner = Sequent::new(cat(&[a.clone(), b.clone()], gamma), conclusion.succedent.clone());
            let left = general_id(a, &cat(&[b.clone()], gamma), delta);
            let right = general_id(b, &cat(&[a.clone()], gamma), delta);
            let r_and = infer(
                RuleId::RAnd,
                inner.clone(),
                vec![Position::right(delta.len())],
                vec![left, right],
            );
            infer(RuleId::LAnd, conclusion, vec![top], vec![r_and])
        }
        Kind::Or(a, b) => {
            let inner = Sequent::new(conclusion.antecedent.clone(), cat(delta, &[a.clone(), b.clone()]));
            let left = general_id(a, gamma, &cat(delta, &[b.clone()]));
            let right = general_id(b, gamma, &cat(delta, &[a.clone()]));
            let l_or = infer(RuleId::LOr, inner, vec![top], vec![left, right]);
            infer(RuleId::ROr, conclusion, vec![last], vec![l_or])
        }
        Kind::MatImp(a, b) => {
            let inner = Sequent::new(cat(&[a.clone()], &conclusion.antecedent), cat(delta, &[b.clone()]));
            let left = general_id(a, gamma, &cat(delta, &[b.clone()]));
            let right = general_id(b, &cat(&[a.clone()], gamma), delta);
            let l_mat = infer(RuleId::LMat, inner, vec![Position::left(1)], vec![left, right]);
            infer(RuleId::RMat, conclusion, vec![last], vec![l_mat])
        }
        Kind::StrictImp(a, b) => {
            let mat = Formula::mat(a.clone(), b.clone());
            let inner = Sequent::new(vec![mat, a.clone()], vec![b.clone()]);
            let left = general_id(a, &[], &[b.clone()]);
            let right = general_id(b, &[a.clone()], &[]);
            let l_mat = infer(RuleId::LMat, inner, vec![top], vec![left, right]);
            infer(RuleId::LRStrict, conclusion, vec![top, last], vec![l_mat])
        }
        Kind::Box(_) => unreachable!("checked to be in Frm2"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::check_derivation;
    use crate::text::{parse_formula, parse_sequent};

    fn seq(t: &str) -> Sequent {
        parse_sequent(t).unwrap()
    }

    fn proved(t: &str, calculus: Calculus) -> bool {
        let s = seq(t);
        match prove(&s, calculus).unwrap() {
            SearchOutcome::Proved(d) => {
                assert_eq!(d.conclusion, s);
                assert!(d.is_cut_free());
                check_derivation(&d, calculus).unwrap();
                true
            }
            SearchOutcome::NotProvable(_) => false,
        }
    }

    #[test]
    fn gwf_examples() {
        assert!(proved("|- (p & q) -> p", Calculus::Gwf));
        assert!(!proved("p, p -> q |- q", Calculus::Gwf));
        assert!(!proved("p -> q, q -> r |- p -> r", Calculus::Gwf));
        assert!(proved("|- p -> p | q", Calculus::Gwf));
        assert!(proved("p & (q | r) |- p & q, p & r", Calculus::Gwf));
    }

    #[test]
    fn modal_examples() {
        assert!(proved("[](p => q) |- [](p => q)", Calculus::MNec));
        assert!(proved("|- [](p => p)", Calculus::MNec));
        assert!(!proved("p, [](p => q) |- q", Calculus::MNec));
    }

    #[test]
    fn not_provable_reports_stuck_leaves() {
        match prove(&seq("p |- q"), Calculus::Gwf).unwrap() {
            SearchOutcome::NotProvable(leaves) => assert!(leaves.contains(&seq("p |- q"))),
            _ => panic!(),
        }
    }

    #[test]
    fn single_succedent_examples() {
        assert!(proved("|- p -> p", Calculus::GwfSingle));
        let d = prove_single(&seq("bot |- q")).unwrap().into_derivation().unwrap();
        assert_eq!(d.height(), 0);
        assert!(!proved("p | q |- p", Calculus::GwfSingle));
        assert!(proved("p => q, p |- q", Calculus::GwfSingle));
        assert!(matches!(
            prove_single(&seq("p |- p, q")),
            Err(SearchError::NotSingleSuccedent(2))
        ));
    }

    #[test]
    fn direct_search_respects_depth_bound() {
        let s = seq("p & q |- q & p");
        assert!(search_single(&s, Some(0)).unwrap().is_none());
        assert!(search_single(&s, Some(3)).unwrap().is_some());
    }

    #[test]
    fn disjunction_examples() {
        let f = |t: &str| parse_formula(t).unwrap();
        assert_eq!(disjunction_split(&f("p -> p"), &f("q")), Ok(Disjunct::Left));
        assert_eq!(disjunction_split(&f("p"), &f("q -> q")), Ok(Disjunct::Right));
        assert!(matches!(
            disjunction_split(&f("p"), &f("q")),
            Err(SearchError::Precondition(_))
        ));
    }

    #[test]
    fn general_identity() {
        let gamma = [parse_formula("r").unwrap()];
        let delta = [parse_formula("s -> s").unwrap()];
        for x in [
            "p",
            "bot",
            "p -> q",
            "p => q",
            "(p => q) & (q | r -> s)",
            "(p & q => r) | (p -> q -> r)",
        ] {
            let x = parse_formula(x).unwrap();
            let d = derive_general_id(&x, &gamma, &delta).unwrap();
            check_derivation(&d, Calculus::Gwf).unwrap();
            assert_eq!(d.conclusion.antecedent[0], x);
            assert_eq!(d.conclusion.succedent.last(), Some(&x));
        }
        let d = derive_general_id(&parse_formula("p -> q").unwrap(), &[], &[]).unwrap();
        assert_eq!(d.rule, RuleId::LRStrict);
        assert_eq!(d.premises[0].conclusion, seq("p => q, p |- q"));
    }
}
