//! GWF_N2 derivations to Hilbert proofs.
//!
//! Every node `Γ ⇒ Δ` over Frm compiles to a theorem `⋀Γ → ⋁Δ`, with the
//! empty conjunction read as `⊥→⊥` and the empty disjunction as `⊥`. Lattice
//! reshaping between different groupings of the same formulas is done by a
//! Whitman-style prover over axioms 1–4, 6, 14 and rules 8–11; the two
//! distributive steps (L∨ and R∧) go through axiom 5.

use std::collections::{BTreeMap, HashMap};

use super::{
    axiom_instance, check_hilbert, rule_conclusion, sequent_formula, BridgeError, HilbertLine,
    HilbertProof, Justification,
};
use crate::kernel::{check_derivation, Calculus, Derivation, RuleId};
use crate::sequent::{Sequent, Side};
use crate::syntax::{conjoin, disjoin, Formula, Kind};
use crate::transform::invert;

type Res<T> = Result<T, BridgeError>;

fn top() -> Formula {
    Formula::strict(Formula::bottom(), Formula::bottom())
}

fn conj(items: &[Formula]) -> Formula {
    conjoin(items).unwrap_or_else(top)
}

fn disj(items: &[Formula]) -> Formula {
    disjoin(items).unwrap_or_else(Formula::bottom)
}

fn internal(msg: impl Into<String>) -> BridgeError {
    BridgeError::Internal(msg.into())
}

#[derive(Default)]
struct Builder {
    proof: HilbertProof,
    /// Line proving each formula, so repeated lemmas are shared.
    proved: HashMap<Formula, usize>,
    leq_memo: HashMap<(Formula, Formula), bool>,
}

impl Builder {
    fn push(&mut self, formula: Formula, just: Justification) -> usize {
        if let Some(&i) = self.proved.get(&formula) {
            return i;
        }
        let i = self.proof.lines.len();
        self.proof.lines.push(HilbertLine {
            formula: formula.clone(),
            just,
        });
        self.proved.insert(formula, i);
        i
    }

    fn formula(&self, line: usize) -> &Formula {
        &self.proof.lines[line].formula
    }

    fn axiom(&mut self, schema: u8, subst: &[(&str, &Formula)]) -> usize {
        let subst: BTreeMap<String, Formula> =
            subst.iter().map(|(k, f)| (k.to_string(), (*f).clone())).collect();
        let f = axiom_instance(schema, &subst).expect("known schema");
        self.push(f, Justification::Axiom { schema, subst })
    }

    fn rule(&mut self, rule: u8, premises: &[usize], claimed: Option<Formula>) -> Res<usize> {
        let formulas: Vec<&Formula> = premises.iter().map(|&i| self.formula(i)).collect();
        let claimed = claimed.unwrap_or_else(top);
        let f = rule_conclusion(rule, &formulas, &claimed)
            .map_err(|e| internal(format!("rule {rule}: {e}")))?;
        Ok(self.push(
            f,
            Justification::Rule {
                rule,
                premises: premises.to_vec(),
            },
        ))
    }

    /// `A→B`, `B→C` ⊢ `A→C`, skipping identities.
    fn chain(&mut self, first: usize, second: usize) -> Res<usize> {
        let is_identity = |f: &Formula| matches!(f.kind(), Kind::StrictImp(a, b) if a == b);
        if is_identity(self.formula(first)) {
            return Ok(second);
        }
        if is_identity(self.formula(second)) {
            return Ok(first);
        }
        self.rule(9, &[first, second], None)
    }

    fn leq(&mut self, x: &Formula, y: &Formula) -> bool {
        let key = (x.clone(), y.clone());
        if let Some(&b) = self.leq_memo.get(&key) {
            return b;
        }
        let b = self.leq_uncached(x, y);
        self.leq_memo.insert(key, b);
        b
    }

    fn leq_uncached(&mut self, x: &Formula, y: &Formula) -> bool {
        if x == y || x.is_bottom() || *y == top() {
            return true;
        }
        if let Kind::And(y1, y2) = y.kind() {
            return self.leq(x, y1) && self.leq(x, y2);
        }
        if let Kind::Or(x1, x2) = x.kind() {
            return self.leq(x1, y) && self.leq(x2, y);
        }
        if let Kind::And(x1, x2) = x.kind() {
            if self.leq(x1, y) || self.leq(x2, y) {
                return true;
            }
        }
        if let Kind::Or(y1, y2) = y.kind() {
            return self.leq(x, y1) || self.leq(x, y2);
        }
        false
    }

    /// A line proving `x → y` in the lattice fragment.
    fn lat(&mut self, x: &Formula, y: &Formula) -> Res<usize> {
        if x == y {
            return Ok(self.axiom(6, &[("A", x)]));
        }
        if x.is_bottom() {
            return Ok(self.axiom(14, &[("A", y)]));
        }
        if *y == top() {
            let t = self.axiom(14, &[("A", &Formula::bottom())]);
            return self.rule(8, &[t], Some(Formula::strict(x.clone(), y.clone())));
        }
        if let Kind::And(y1, y2) = y.kind() {
            let a = self.lat(x, y1)?;
            let b = self.lat(x, y2)?;
            return self.rule(10, &[a, b], None);
        }
        if let Kind::Or(x1, x2) = x.kind() {
            let a = self.lat(x1, y)?;
            let b = self.lat(x2, y)?;
            return self.rule(11, &[a, b], None);
        }
        if let Kind::And(x1, x2) = x.kind() {
            for (schema, part) in [(3, x1), (4, x2)] {
                if self.leq(part, y) {
                    let proj = self.axiom(schema, &[("A", x1), ("B", x2)]);
                    let rest = self.lat(part, y)?;
                    return self.chain(proj, rest);
                }
            }
        }
        if let Kind::Or(y1, y2) = y.kind() {
            for (schema, part) in [(1, y1), (2, y2)] {
                if self.leq(x, part) {
                    let first = self.lat(x, part)?;
                    let inj = self.axiom(schema, &[("A", y1), ("B", y2)]);
                    return self.chain(first, inj);
                }
            }
        }
        Err(internal(format!("`{x}` is not below `{y}` in the lattice")))
    }

    /// From a line `x0 → y0`, a line `x → y` with `x ≤ x0` and `y0 ≤ y`.
    fn convert(&mut self, line: usize, x: &Formula, y: &Formula) -> Res<usize> {
        let Kind::StrictImp(x0, y0) = self.formula(line).kind().clone() else {
            return Err(internal("convert needs an implication"));
        };
        let mut l = line;
        if *x != x0 {
            let pre = self.lat(x, &x0)?;
            l = self.chain(pre, l)?;
        }
        if *y != y0 {
            let post = self.lat(&y0, y)?;
            l = self.chain(l, post)?;
        }
        Ok(l)
    }

    /// `(D∨A)∧(D∨B) → D∨(A∧B)` from two instances of axiom 5.
    fn dual_distributivity(&mut self, d: &Formula, a: &Formula, b: &Formula) -> Res<usize> {
        let p = Formula::or(d.clone(), a.clone());
        let goal = Formula::or(d.clone(), Formula::and(a.clone(), b.clone()));
        let s1 = self.axiom(5, &[("A", &p), ("B", d), ("C", b)]);
        let s2 = self.lat(&Formula::and(p.clone(), d.clone()), &goal)?;
        let pb = Formula::and(p.clone(), b.clone());
        let bp = Formula::and(b.clone(), p.clone());
        let t1 = self.lat(&pb, &bp)?;
        let t2 = self.axiom(5, &[("A", b), ("B", d), ("C", a)]);
        let t3 = self.lat(
            &Formula::or(Formula::and(b.clone(), d.clone()), Formula::and(b.clone(), a.clone())),
            &goal,
        )?;
        let t = self.chain(t1, t2)?;
        let s3 = self.chain(t, t3)?;
        let s4 = self.rule(11, &[s2, s3], None)?;
        self.chain(s1, s4)
    }

    /// A line proving `⋀Γ → ⋁Δ` for the endsequent of `d`.
    fn node(&mut self, d: &Derivation) -> Res<usize> {
        use RuleId::*;
        let s = &d.conclusion;
        if let Some(f) = s.formulas().find(|f| !f.is_frm()) {
            return Err(internal(format!("`{f}` outside Frm at {}", d.rule)));
        }
        let x = conj(&s.antecedent);
        let y = disj(&s.succedent);
        let principal = d.principal_formulas().into_iter().next().cloned();
        match d.rule {
            Id | LBot => self.lat(&x, &y),
            LAnd | ROr => {
                let ih = self.node(&d.premises[0])?;
                self.convert(ih, &x, &y)
            }
            LOr => {
                let pf = principal.expect("one principal");
                let Kind::Or(a, b) = pf.kind() else { unreachable!() };
                let rest = s.without(d.principal[0]).antecedent;
                let l1 = self.node(&d.premises[0])?;
                let l2 = self.node(&d.premises[1])?;
                if rest.is_empty() {
                    let l1 = self.convert(l1, a, &y)?;
                    let l2 = self.convert(l2, b, &y)?;
                    return self.rule(11, &[l1, l2], None);
                }
                let g = conj(&rest);
                let ga = Formula::and(g.clone(), a.clone());
                let gb = Formula::and(g.clone(), b.clone());
                let reshape = self.lat(&x, &Formula::and(g.clone(), pf.clone()))?;
                let dist = self.axiom(5, &[("A", &g), ("B", a), ("C", b)]);
                let l1 = self.convert(l1, &ga, &y)?;
                let l2 = self.convert(l2, &gb, &y)?;
                let cases = self.rule(11, &[l1, l2], None)?;
                let front = self.chain(reshape, dist)?;
                self.chain(front, cases)
            }
            RAnd => {
                let pf = principal.expect("one principal");
                let Kind::And(a, b) = pf.kind() else { unreachable!() };
                let rest = s.without(d.principal[0]).succedent;
                let l1 = self.node(&d.premises[0])?;
                let l2 = self.node(&d.premises[1])?;
                if rest.is_empty() {
                    let l1 = self.convert(l1, &x, a)?;
                    let l2 = self.convert(l2, &x, b)?;
                    return self.rule(10, &[l1, l2], None);
                }
                let dd = disj(&rest);
                let l1 = self.convert(l1, &x, &Formula::or(dd.clone(), a.clone()))?;
                let l2 = self.convert(l2, &x, &Formula::or(dd.clone(), b.clone()))?;
                let both = self.rule(10, &[l1, l2], None)?;
                let dist = self.dual_distributivity(&dd, a, b)?;
                let l = self.chain(both, dist)?;
                self.convert(l, &x, &y)
            }
            RStrict => {
                let pf = principal.expect("one principal");
                let ih = self.node(&d.premises[0])?;
                let af = self.rule(8, &[ih], Some(Formula::strict(x.clone(), pf.clone())))?;
                self.convert(af, &x, &y)
            }
            LRStrict => {
                let cd = s.get(d.principal[0]).expect("checked").clone();
                let ab = s.get(d.principal[1]).expect("checked").clone();
                let (Kind::StrictImp(c, dd), Kind::StrictImp(a, b)) = (cd.kind(), ab.kind()) else {
                    unreachable!()
                };
                // Split C⊃D in the premise into A ⇒ B, C and D, A ⇒ B.
                let premise = &d.premises[0];
                let mat = Formula::mat(c.clone(), dd.clone());
                let pos = premise
                    .conclusion
                    .find(Side::Left, &mat)
                    .ok_or_else(|| internal("LR-> premise without its material implication"))?;
                let halves = invert(premise, LMat, pos)?;
                let first = self.node(&halves[0])?;
                let first = self.convert(first, a, &Formula::or(c.clone(), b.clone()))?;
                let second = self.node(&halves[1])?;
                let second = self.convert(second, &Formula::and(a.clone(), dd.clone()), b)?;
                let n2 = self.rule(13, &[first, second], None)?;
                self.convert(n2, &x, &y)
            }
            other => Err(internal(format!("{other} cannot occur over Frm"))),
        }
    }
}

/// An assumption-free Hilbert proof of `⋀Γ → ⋁Δ` (or `⋁Δ` when `Γ` is empty)
/// for the endsequent `Γ ⇒ Δ` of a cut-free GWF_N2 derivation over Frm.
pub fn sequent_to_hilbert(d: &Derivation) -> Result<HilbertProof, BridgeError> {
    check_derivation(d, Calculus::Gwf)?;
    let s: &Sequent = &d.conclusion;
    if s.succedent.is_empty() {
        return Err(BridgeError::EmptySuccedent);
    }
    if let Some(f) = s.formulas().find(|f| !f.is_frm()) {
        return Err(BridgeError::NotFrm(f.to_string()));
    }
    let mut b = Builder::default();
    let mut line = b.node(d)?;
    if s.antecedent.is_empty() {
        let t = b.axiom(14, &[("A", &Formula::bottom())]);
        line = b.rule(7, &[t, line], None)?;
    }
    let target = sequent_formula(s).expect("nonempty succedent");
    if *b.formula(line) != target {
        return Err(internal(format!("compiled `{}` instead of `{target}`", b.formula(line))));
    }
    // A cached line may sit earlier in the proof: restate it last by MP with A→A.
    if line + 1 != b.proof.lines.len() {
        let id = b.axiom(6, &[("A", &target)]);
        b.proof.lines.push(HilbertLine {
            formula: target,
            just: Justification::Rule {
                rule: 7,
                premises: vec![line, id],
            },
        });
    }
    check_hilbert(&b.proof, &[])?;
    Ok(b.proof)
}
