//! The Hilbert system WF_N2 with the restricted consequence relation, and
//! translations between Hilbert proofs and GWF_N2 derivations.
//!
//! Axioms 1–6 and 14, rules 7 (MP), 8 (AF), 9, 10, 11, 12 (conjunction) and
//! 13 (N2). With assumptions, rules 8, 9, 10, 11, 13 need assumption-free
//! premises and MP needs an assumption-free `A→B`; rule 12 is unrestricted.
//! Assumption sets are tracked per line, so restricted rules may be used
//! inside assumption-free parts of a larger proof.

mod compile;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::kernel::{Calculus, Derivation, KernelError, RuleId};
use crate::search::{derive_general_id, Prover};
use crate::sequent::{Sequent, Side};
use crate::syntax::{conjoin, disjoin, Formula, Kind};
use crate::transform::{
    eliminate_cut, invert, unbox_arrow, weaken, CutInstance, TransformError,
};

pub use compile::sequent_to_hilbert;

pub const AXIOMS: [u8; 7] = [1, 2, 3, 4, 5, 6, 14];
pub const RULES: [u8; 7] = [7, 8, 9, 10, 11, 12, 13];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// Schema number and the formulas substituted for its metavariables.
    Axiom {
        schema: u8,
        subst: BTreeMap<String, Formula>,
    },
    /// Rule number and 0-based references to earlier lines.
    Rule { rule: u8, premises: Vec<usize> },
    /// 0-based index into the assumption list.
    Assumption(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertLine {
    pub formula: Formula,
    pub just: Justification,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HilbertProof {
    pub lines: Vec<HilbertLine>,
}

impl HilbertProof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

/// Line numbers in errors are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    #[error("empty proof")]
    Empty,
    #[error("line {line}: `{formula}` is not in Frm")]
    NotFrm { line: usize, formula: String },
    #[error("line {line}: not an instance of axiom {schema}: {reason}")]
    BadAxiomInstance {
        line: usize,
        schema: u8,
        reason: String,
    },
    #[error("line {line}: rule {rule} needs assumption-free premises")]
    RestrictionViolated { line: usize, rule: u8 },
    #[error("line {line}: reference to line {target} does not point backward")]
    DanglingRef { line: usize, target: usize },
    #[error("line {line}: rule {rule} does not apply: {reason}")]
    BadRule {
        line: usize,
        rule: u8,
        reason: String,
    },
    #[error("line {line}: no assumption {index}")]
    BadAssumption { line: usize, index: usize },
}

fn meta(subst: &BTreeMap<String, Formula>, name: &str) -> Result<Formula, String> {
    subst
        .get(name)
        .cloned()
        .ok_or_else(|| format!("no formula given for {name}"))
}

/// The instance of an axiom schema under a substitution of its metavariables.
pub fn axiom_instance(schema: u8, subst: &BTreeMap<String, Formula>) -> Result<Formula, String> {
    use Formula as F;
    let a = || meta(subst, "A");
    let b = || meta(subst, "B");
    Ok(match schema {
        1 => F::strict(a()?, F::or(a()?, b()?)),
        2 => F::strict(b()?, F::or(a()?, b()?)),
        3 => F::strict(F::and(a()?, b()?), a()?),
        4 => F::strict(F::and(a()?, b()?), b()?),
        5 => {
            let (a, b, c) = (a()?, b()?, meta(subst, "C")?);
            F::strict(
                F::and(a.clone(), F::or(b.clone(), c.clone())),
                F::or(F::and(a.clone(), b), F::and(a, c)),
            )
        }
        6 => F::strict(a()?, a()?),
        14 => F::strict(F::bottom(), a()?),
        _ => return Err("no such axiom schema".into()),
    })
}

fn strict_parts(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f.kind() {
        Kind::StrictImp(a, b) => Some((a, b)),
        _ => None,
    }
}

/// The conclusion of rule `rule` applied to premise formulas, given the line
/// it is claimed for (needed by AF, whose antecedent is free).
fn rule_conclusion(rule: u8, premises: &[&Formula], claimed: &Formula) -> Result<Formula, String> {
    use Formula as F;
    let arity = match rule {
        8 => 1,
        7 | 9 | 10 | 11 | 12 | 13 => 2,
        _ => return Err("no such rule".into()),
    };
    if premises.len() != arity {
        return Err(format!("expected {arity} premise(s), found {}", premises.len()));
    }
    let imp = |f: &Formula| {
        strict_parts(f)
            .map(|(a, b)| (a.clone(), b.clone()))
            .ok_or_else(|| format!("`{f}` is not a strict implication"))
    };
    Ok(match rule {
        7 => {
            let (a, b) = imp(premises[1])?;
            if &a != premises[0] {
                return Err(format!("`{}` does not match the antecedent of `{}`", premises[0], premises[1]));
            }
            b
        }
        8 => match strict_parts(claimed) {
            Some((_, a)) if a == premises[0] => claimed.clone(),
            _ => return Err(format!("`{claimed}` is not of the form B -> {}", premises[0])),
        },
        9 => {
            let (a, b) = imp(premises[0])?;
            let (b2, c) = imp(premises[1])?;
            if b != b2 {
                return Err(format!("middle formulas `{b}` and `{b2}` differ"));
            }
            F::strict(a, c)
        }
        10 => {
            let (a, b) = imp(premises[0])?;
            let (a2, c) = imp(premises[1])?;
            if a != a2 {
                return Err(format!("antecedents `{a}` and `{a2}` differ"));
            }
            F::strict(a, F::and(b, c))
        }
        11 => {
            let (a, c) = imp(premises[0])?;
            let (b, c2) = imp(premises[1])?;
            if c != c2 {
                return Err(format!("consequents `{c}` and `{c2}` differ"));
            }
            F::strict(F::or(a, b), c)
        }
        12 => F::and(premises[0].clone(), premises[1].clone()),
        13 => {
            let (c, ad) = imp(premises[0])?;
            let (cb, d) = imp(premises[1])?;
            let Kind::Or(a, d1) = ad.kind() else {
                return Err(format!("`{ad}` is not a disjunction"));
            };
            let Kind::And(c2, b) = cb.kind() else {
                return Err(format!("`{cb}` is not a conjunction"));
            };
            if c != *c2 || d != *d1 {
                return Err("premises do not share C and D".into());
            }
            F::strict(F::strict(a.clone(), b.clone()), F::strict(c, d))
        }
        _ => unreachable!(),
    })
}

/// Checks `p` against the assumptions; returns its last formula.
pub fn check_hilbert(p: &HilbertProof, assumptions: &[Formula]) -> Result<Formula, HilbertError> {
    let mut sets: Vec<BTreeSet<usize>> = Vec::with_capacity(p.lines.len());
    for (i, l) in p.lines.iter().enumerate() {
        let line = i + 1;
        if !l.formula.is_frm() {
            return Err(HilbertError::NotFrm {
                line,
                formula: l.formula.to_string(),
            });
        }
        let set = match &l.just {
            Justification::Axiom { schema, subst } => {
                let bad = |reason: String| HilbertError::BadAxiomInstance {
                    line,
                    schema: *schema,
                    reason,
                };
                if let Some((k, f)) = subst.iter().find(|(_, f)| !f.is_frm()) {
                    return Err(bad(format!("{k} := `{f}` is not in Frm")));
                }
                let inst = axiom_instance(*schema, subst).map_err(bad)?;
                if inst != l.formula {
                    return Err(bad(format!("the instance is `{inst}`")));
                }
                BTreeSet::new()
            }
            Justification::Assumption(index) => {
                if assumptions.get(*index) != Some(&l.formula) {
                    return Err(HilbertError::BadAssumption { line, index: *index });
                }
                BTreeSet::from([*index])
            }
            Justification::Rule { rule, premises } => {
                if let Some(&t) = premises.iter().find(|&&t| t >= i) {
                    return Err(HilbertError::DanglingRef { line, target: t + 1 });
                }
                let formulas: Vec<&Formula> = premises.iter().map(|&t| &p.lines[t].formula).collect();
                let concl = rule_conclusion(*rule, &formulas, &l.formula).map_err(|reason| {
                    HilbertError::BadRule {
                        line,
                        rule: *rule,
                        reason,
                    }
                })?;
                if concl != l.formula {
                    return Err(HilbertError::BadRule {
                        line,
                        rule: *rule,
                        reason: format!("the conclusion is `{concl}`"),
                    });
                }
                let free = |t: usize| sets[t].is_empty();
                let ok = match rule {
                    7 => free(premises[1]),
                    12 => true,
                    _ => premises.iter().all(|&t| free(t)),
                };
                if !ok {
                    return Err(HilbertError::RestrictionViolated { line, rule: *rule });
                }
                premises.iter().flat_map(|&t| sets[t].iter().copied()).collect()
            }
        };
        sets.push(set);
    }
    p.conclusion().cloned().ok_or(HilbertError::Empty)
}

/// The Hilbert formula standing for `Γ ⇒ Δ`: `⋀Γ → ⋁Δ`, or `⋁Δ` when `Γ` is empty.
pub fn sequent_formula(s: &Sequent) -> Option<Formula> {
    let d = disjoin(&s.succedent)?;
    Some(match conjoin(&s.antecedent) {
        Some(c) => Formula::strict(c, d),
        None => d,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("the sequent must have a nonempty succedent")]
    EmptySuccedent,
    #[error("`{0}` is not in Frm")]
    NotFrm(String),
    #[error("the proof concludes `{found}`, expected `{expected}`")]
    WrongConclusion { found: String, expected: String },
    #[error("internal error: {0}")]
    Internal(String),
}

fn step(
    rule: RuleId,
    conclusion: Sequent,
    principal: &[(Side, &Formula)],
    premises: Vec<Derivation>,
) -> Result<Derivation, BridgeError> {
    Derivation::infer_at(rule, conclusion, principal, premises).map_err(BridgeError::Internal)
}

fn gid(x: &Formula, gamma: &[Formula], delta: &[Formula]) -> Result<Derivation, BridgeError> {
    derive_general_id(x, gamma, delta).map_err(|e| BridgeError::Internal(e.to_string()))
}

fn seq(ante: &[&Formula], succ: &[&Formula]) -> Sequent {
    Sequent::new(
        ante.iter().map(|f| (*f).clone()).collect(),
        succ.iter().map(|f| (*f).clone()).collect(),
    )
}

/// `⇒ A→B` by R→ over a derivation of `A ⇒ B`.
fn r_strict(a: &Formula, b: &Formula, premise: Derivation) -> Result<Derivation, BridgeError> {
    let f = Formula::strict(a.clone(), b.clone());
    step(RuleId::RStrict, seq(&[], &[&f]), &[(Side::Right, &f)], vec![premise])
}

/// A cut-free derivation of `⇒ A` for an axiom instance.
fn axiom_derivation(schema: u8, subst: &BTreeMap<String, Formula>) -> Result<Derivation, BridgeError> {
    use RuleId::*;
    use Side::{Left as L, Right as R};
    let get = |k: &str| meta(subst, k).map_err(BridgeError::Internal);
    match schema {
        1 | 2 => {
            let (a, b) = (get("A")?, get("B")?);
            let or = Formula::or(a.clone(), b.clone());
            let (x, other) = if schema == 1 { (&a, &b) } else { (&b, &a) };
            let inner = gid(x, &[], &[other.clone()])?;
            let r_or = step(ROr, seq(&[x], &[&or]), &[(R, &or)], vec![inner])?;
            r_strict(x, &or, r_or)
        }
        3 | 4 => {
            let (a, b) = (get("A")?, get("B")?);
            let and = Formula::and(a.clone(), b.clone());
            let (x, other) = if schema == 3 { (&a, &b) } else { (&b, &a) };
            let inner = gid(x, &[other.clone()], &[])?;
            let l_and = step(LAnd, seq(&[&and], &[x]), &[(L, &and)], vec![inner])?;
            r_strict(&and, x, l_and)
        }
        5 => {
            let (a, b, c) = (get("A")?, get("B")?, get("C")?);
            let bc = Formula::or(b.clone(), c.clone());
            let ab = Formula::and(a.clone(), b.clone());
            let ac = Formula::and(a.clone(), c.clone());
            let lhs = Formula::and(a.clone(), bc.clone());
            let rhs = Formula::or(ab.clone(), ac.clone());
            let left = step(
                RAnd,
                seq(&[&a, &b], &[&ab, &ac]),
                &[(R, &ab)],
                vec![gid(&a, &[b.clone()], &[ac.clone()])?, gid(&b, &[a.clone()], &[ac.clone()])?],
            )?;
            let right = step(
                RAnd,
                seq(&[&a, &c], &[&ab, &ac]),
                &[(R, &ac)],
                vec![gid(&a, &[c.clone()], &[ab.clone()])?, gid(&c, &[a.clone()], &[ab.clone()])?],
            )?;
            let l_or = step(LOr, seq(&[&a, &bc], &[&ab, &ac]), &[(L, &bc)], vec![left, right])?;
            let l_and = step(LAnd, seq(&[&lhs], &[&ab, &ac]), &[(L, &lhs)], vec![l_or])?;
            let r_or = step(ROr, seq(&[&lhs], &[&rhs]), &[(R, &rhs)], vec![l_and])?;
            r_strict(&lhs, &rhs, r_or)
        }
        6 => {
            let a = get("A")?;
            r_strict(&a, &a, gid(&a, &[], &[])?)
        }
        14 => {
            let a = get("A")?;
            let bot = Formula::bottom();
            let leaf = step(LBot, seq(&[&bot], &[&a]), &[(L, &bot)], vec![])?;
            r_strict(&bot, &a, leaf)
        }
        _ => Err(BridgeError::Internal(format!("no axiom {schema}"))),
    }
}

fn cut(left: Derivation, right: Derivation, d: &Formula) -> Result<Derivation, BridgeError> {
    Ok(eliminate_cut(&CutInstance::new(left, right, d.clone())?)?)
}

/// Inverts the last rule producing `f` on `side` until `f` is split into `parts`
/// by right-nested `∧` (left) or `∨` (right).
fn split(mut d: Derivation, side: Side, parts: &[Formula]) -> Result<Derivation, BridgeError> {
    let rule = match side {
        Side::Left => RuleId::LAnd,
        Side::Right => RuleId::ROr,
    };
    for k in 0..parts.len().saturating_sub(1) {
        let rest = match side {
            Side::Left => conjoin(&parts[k..]),
            Side::Right => disjoin(&parts[k..]),
        }
        .expect("nonempty");
        let pos = d
            .conclusion
            .find(side, &rest)
            .ok_or_else(|| BridgeError::Internal(format!("`{rest}` missing")))?;
        d = invert(&d, rule, pos)?.swap_remove(0);
    }
    Ok(d)
}

/// A GWF_N2 derivation of `s` from an assumption-free Hilbert proof of its
/// formula ([`sequent_formula`]).
pub fn hilbert_to_sequent(p: &HilbertProof, s: &Sequent) -> Result<Derivation, BridgeError> {
    if s.succedent.is_empty() {
        return Err(BridgeError::EmptySuccedent);
    }
    if let Some(f) = s.formulas().find(|f| !f.is_frm()) {
        return Err(BridgeError::NotFrm(f.to_string()));
    }
    let concl = check_hilbert(p, &[])?;
    let expected = sequent_formula(s).expect("nonempty succedent");
    if concl != expected {
        return Err(BridgeError::WrongConclusion {
            found: concl.to_string(),
            expected: expected.to_string(),
        });
    }
    let mut ds: Vec<Derivation> = Vec::with_capacity(p.lines.len());
    for l in &p.lines {
        let d = line_derivation(l, &ds)?;
        ds.push(d);
    }
    let mut d = ds.pop().ok_or(HilbertError::Empty)?;
    if !s.antecedent.is_empty() {
        d = unbox_arrow(&d)?;
        d = split(d, Side::Left, &s.antecedent)?;
    }
    d = split(d, Side::Right, &s.succedent)?;
    d.with_conclusion(s.clone())
        .ok_or_else(|| BridgeError::Internal("endsequent mismatch".into()))
}

fn line_derivation(l: &HilbertLine, ds: &[Derivation]) -> Result<Derivation, BridgeError> {
    use RuleId::*;
    use Side::{Left as L, Right as R};
    let (rule, prem) = match &l.just {
        Justification::Axiom { schema, subst } => return axiom_derivation(*schema, subst),
        Justification::Assumption(_) => {
            return Err(BridgeError::Internal("assumption in an assumption-free proof".into()))
        }
        Justification::Rule { rule, premises } => (*rule, premises),
    };
    let pd = |k: usize| ds[prem[k]].clone();
    let pf = |k: usize| ds[prem[k]].conclusion.succedent[0].clone();
    let parts = |f: &Formula| {
        strict_parts(f)
            .map(|(a, b)| (a.clone(), b.clone()))
            .ok_or_else(|| BridgeError::Internal(format!("`{f}` is not a strict implication")))
    };
    match rule {
        7 => {
            // ⇒ A and A ⇒ B cut on A.
            let a = pf(0);
            cut(pd(0), unbox_arrow(&pd(1))?, &a)
        }
        8 => {
            let (b, a) = parts(&l.formula)?;
            r_strict(&b, &a, weaken(&pd(0), L, &b)?)
        }
        9 => {
            let (a, b) = parts(&pf(0))?;
            let (_, c) = parts(&pf(1))?;
            r_strict(&a, &c, cut(unbox_arrow(&pd(0))?, unbox_arrow(&pd(1))?, &b)?)
        }
        10 => {
            let (a, b) = parts(&pf(0))?;
            let (_, c) = parts(&pf(1))?;
            let bc = Formula::and(b, c);
            let r_and = step(RAnd, seq(&[&a], &[&bc]), &[(R, &bc)], vec![unbox_arrow(&pd(0))?, unbox_arrow(&pd(1))?])?;
            r_strict(&a, &bc, r_and)
        }
        11 => {
            let (a, c) = parts(&pf(0))?;
            let (b, _) = parts(&pf(1))?;
            let ab = Formula::or(a, b);
            let l_or = step(LOr, seq(&[&ab], &[&c]), &[(L, &ab)], vec![unbox_arrow(&pd(0))?, unbox_arrow(&pd(1))?])?;
            r_strict(&ab, &c, l_or)
        }
        12 => {
            let f = &l.formula;
            step(RAnd, seq(&[], &[f]), &[(R, f)], vec![pd(0), pd(1)])
        }
        13 => {
            // C ⇒ A, D and C, B ⇒ D; L⊃ on A⊃B, then LR→ and R→.
            let (ab, cd) = parts(&l.formula)?;
            let (a, b) = parts(&ab)?;
            let (c, d) = parts(&cd)?;
            let first = unbox_arrow(&pd(0))?;
            let first = split(first, R, &[a.clone(), d.clone()])?;
            let second = unbox_arrow(&pd(1))?;
            let second = split(second, L, &[c.clone(), b.clone()])?;
            let mat = Formula::mat(a.clone(), b.clone());
            let l_mat = step(LMat, seq(&[&mat, &c], &[&d]), &[(L, &mat)], vec![first, second])?;
            let lr = step(LRStrict, seq(&[&ab], &[&cd]), &[(L, &ab), (R, &cd)], vec![l_mat])?;
            r_strict(&ab, &cd, lr)
        }
        _ => Err(BridgeError::Internal(format!("no rule {rule}"))),
    }
}

/// `(A ⇒ B provable, ⇒ A→B provable)` in GWF_N2; the two agree by the weak
/// deduction theorem.
pub fn deduction_check(a: &Formula, b: &Formula) -> (bool, bool) {
    let mut prover = Prover::new(Calculus::Gwf);
    deduction_check_with(&mut prover, a, b)
}

pub fn deduction_check_with(prover: &mut Prover, a: &Formula, b: &Formula) -> (bool, bool) {
    let local = Sequent::new(vec![a.clone()], vec![b.clone()]);
    let global = Sequent::new(vec![], vec![Formula::strict(a.clone(), b.clone())]);
    (prover.provable(&local), prover.provable(&global))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::check_derivation;
    use crate::text::{parse_formula, parse_sequent};

    fn f(t: &str) -> Formula {
        parse_formula(t).unwrap()
    }

    fn ax(formula: &str, schema: u8, subst: &[(&str, &str)]) -> HilbertLine {
        HilbertLine {
            formula: f(formula),
            just: Justification::Axiom {
                schema,
                subst: subst.iter().map(|(k, v)| (k.to_string(), f(v))).collect(),
            },
        }
    }

    fn rule(formula: &str, rule: u8, premises: &[usize]) -> HilbertLine {
        HilbertLine {
            formula: f(formula),
            just: Justification::Rule {
                rule,
                premises: premises.to_vec(),
            },
        }
    }

    fn assume(formula: &str, index: usize) -> HilbertLine {
        HilbertLine {
            formula: f(formula),
            just: Justification::Assumption(index),
        }
    }

    #[test]
    fn rule_ten_example() {
        let p = HilbertProof {
            lines: vec![
                ax("p & q -> p", 3, &[("A", "p"), ("B", "q")]),
                ax("p & q -> q", 4, &[("A", "p"), ("B", "q")]),
                rule("p & q -> p & q", 10, &[0, 1]),
            ],
        };
        assert_eq!(check_hilbert(&p, &[]), Ok(f("p & q -> p & q")));
        let d = hilbert_to_sequent(&p, &parse_sequent("p & q |- p & q").unwrap()).unwrap();
        check_derivation(&d, Calculus::Gwf).unwrap();
    }

    #[test]
    fn modus_ponens_on_an_assumption_is_restricted() {
        let p = HilbertProof {
            lines: vec![assume("p", 0), assume("p -> q", 1), rule("q", 7, &[0, 1])],
        };
        assert_eq!(
            check_hilbert(&p, &[f("p"), f("p -> q")]),
            Err(HilbertError::RestrictionViolated { line: 3, rule: 7 })
        );
    }

    #[test]
    fn conjunction_is_unrestricted() {
        let p = HilbertProof {
            lines: vec![assume("p", 0), assume("q", 1), rule("p & q", 12, &[0, 1])],
        };
        assert_eq!(check_hilbert(&p, &[f("p"), f("q")]), Ok(f("p & q")));
    }

    #[test]
    fn checker_rejections() {
        let bad = HilbertProof {
            lines: vec![ax("p -> q", 6, &[("A", "p")])],
        };
        assert!(matches!(check_hilbert(&bad, &[]), Err(HilbertError::BadAxiomInstance { .. })));
        let dangling = HilbertProof {
            lines: vec![rule("p & p", 12, &[0, 0])],
        };
        assert!(matches!(check_hilbert(&dangling, &[]), Err(HilbertError::DanglingRef { .. })));
        let af = HilbertProof {
            lines: vec![assume("p", 0), rule("q -> p", 8, &[0])],
        };
        assert!(matches!(
            check_hilbert(&af, &[f("p")]),
            Err(HilbertError::RestrictionViolated { rule: 8, .. })
        ));
    }

    #[test]
    fn n2_builds_two_strict_rules() {
        // C→A∨D from C := p, A := p, D := q and C∧B→D with B := q.
        let p = HilbertProof {
            lines: vec![
                ax("p -> p | q", 1, &[("A", "p"), ("B", "q")]),
                ax("p & q -> q", 4, &[("A", "p"), ("B", "q")]),
                rule("(p -> q) -> p -> q", 13, &[0, 1]),
            ],
        };
        check_hilbert(&p, &[]).unwrap();
        let d = hilbert_to_sequent(&p, &parse_sequent("|- (p -> q) -> p -> q").unwrap()).unwrap();
        check_derivation(&d, Calculus::Gwf).unwrap();
        assert_eq!(d.rule, RuleId::RStrict);
        assert_eq!(d.premises[0].rule, RuleId::LRStrict);
        assert_eq!(d.premises[0].premises[0].rule, RuleId::LMat);
    }

    #[test]
    fn axiom_templates_check() {
        let subst: BTreeMap<String, Formula> =
            [("A", "p -> q"), ("B", "r & s"), ("C", "bot")].iter().map(|(k, v)| (k.to_string(), f(v))).collect();
        for k in AXIOMS {
            let d = axiom_derivation(k, &subst).unwrap();
            check_derivation(&d, Calculus::Gwf).unwrap();
            assert_eq!(d.conclusion.succedent, vec![axiom_instance(k, &subst).unwrap()]);
        }
    }

    #[test]
    fn deduction_examples() {
        assert_eq!(deduction_check(&f("p & q"), &f("p")), (true, true));
        assert_eq!(deduction_check(&f("p"), &f("q")), (false, false));
        assert_eq!(deduction_check(&f("p"), &f("p")), (true, true));
    }
}
