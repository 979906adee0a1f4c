//! Height-preserving structural transformations and cut elimination.
//!
//! Everything here works on GWF_N2 and G3M_Nec derivations through the rule
//! shapes of the kernel: initial rules absorb context, local rules share it
//! with their premises, and discarding rules (LR→, R→, LR_M, R_N) throw it
//! away. Formulas are located by value, so results are determined up to the
//! order of formulas inside a side.

use thiserror::Error;

use crate::kernel::{
    check_derivation, check_derivation_with, cut_conclusion, expected_premises,
    initial_application, Calculus, CutPolicy, Derivation, KernelError, RuleId, Shape,
};
use crate::sequent::{multiset_minus, Position, Sequent, Side};
use crate::syntax::{weight, Formula, Kind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("invalid input derivation: {0}")]
    Invalid(#[from] KernelError),
    #[error("transformation is not available for {0}")]
    UnsupportedCalculus(Calculus),
    #[error("`{formula}` is outside the language of {calculus}")]
    OutOfLanguage { formula: String, calculus: Calculus },
    #[error("`{formula}` does not occur twice on the {side:?} side")]
    NotDuplicated { formula: String, side: Side },
    #[error("{0} is not invertible")]
    NonInvertible(RuleId),
    #[error("position mismatch: {0}")]
    PositionMismatch(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("derivation contains a cut")]
    ContainsCut,
    #[error("bad cut: {0}")]
    BadCut(String),
    #[error("internal error: {0}")]
    Internal(String),
}

type Result<T> = std::result::Result<T, TransformError>;

fn internal(msg: String) -> TransformError {
    TransformError::Internal(msg)
}

fn multi_calculus(d: &Derivation) -> Result<Calculus> {
    match d.rule.calculus() {
        Calculus::GwfSingle => Err(TransformError::UnsupportedCalculus(Calculus::GwfSingle)),
        c => Ok(c),
    }
}

/// Validates a cut-free input and returns its calculus.
fn validated(d: &Derivation) -> Result<Calculus> {
    let c = multi_calculus(d)?;
    if !d.is_cut_free() {
        return Err(TransformError::ContainsCut);
    }
    check_derivation(d, c)?;
    Ok(c)
}

fn locate(s: &Sequent, side: Side, f: &Formula) -> Result<Position> {
    s.find(side, f)
        .ok_or_else(|| internal(format!("`{f}` missing from the {side:?} side of `{s}`")))
}

/// Re-applies `rule` with the principal formulas found by value in `conclusion`.
fn rebuild(
    rule: RuleId,
    conclusion: Sequent,
    principal: &[(Side, Formula)],
    premises: Vec<Derivation>,
) -> Result<Derivation> {
    let positions = principal
        .iter()
        .map(|(side, f)| locate(&conclusion, *side, f))
        .collect::<Result<Vec<_>>>()?;
    Derivation::infer(rule, conclusion, positions, premises).map_err(internal)
}

fn principal_values(d: &Derivation) -> Vec<(Side, Formula)> {
    d.principal
        .iter()
        .map(|p| (p.side, d.conclusion.get(*p).expect("checked position").clone()))
        .collect()
}

fn is_principal(d: &Derivation, side: Side, f: &Formula) -> bool {
    d.principal
        .iter()
        .any(|p| p.side == side && d.conclusion.get(*p) == Some(f))
}

// ---------------------------------------------------------------- weakening

/// Adds `f` to one side of the endsequent: in front of the antecedent, or at
/// the end of the succedent. The height does not change.
pub fn weaken(d: &Derivation, side: Side, f: &Formula) -> Result<Derivation> {
    let c = multi_calculus(d)?;
    check_derivation_with(d, c, CutPolicy::Allow)?;
    if !c.admits(f) {
        return Err(TransformError::OutOfLanguage {
            formula: f.to_string(),
            calculus: c,
        });
    }
    Ok(weaken_raw(d, side, f))
}

fn weakened(s: &Sequent, side: Side, f: &Formula) -> Sequent {
    let mut s = s.clone();
    match side {
        Side::Left => s.antecedent.insert(0, f.clone()),
        Side::Right => s.succedent.push(f.clone()),
    }
    s
}

fn weaken_raw(d: &Derivation, side: Side, f: &Formula) -> Derivation {
    let conclusion = weakened(&d.conclusion, side, f);
    let shift = |p: &Position| match (side, p.side) {
        (Side::Left, Side::Left) => Position::left(p.index + 1),
        _ => *p,
    };
    let principal: Vec<Position> = d.principal.iter().map(shift).collect();
    match d.rule.shape() {
        Shape::Initial | Shape::Discarding => {
            Derivation::new(conclusion, d.rule, principal, d.premises.clone())
        }
        Shape::Local(_) => {
            let premises = d.premises.iter().map(|p| weaken_raw(p, side, f)).collect();
            Derivation::infer(d.rule, conclusion, principal, premises).expect("weakening a local rule")
        }
        Shape::Cut => {
            let mut premises = d.premises.clone();
            match side {
                Side::Left => premises[0] = weaken_raw(&premises[0], side, f),
                Side::Right => premises[1] = weaken_raw(&premises[1], side, f),
            }
            Derivation::new(conclusion, d.rule, principal, premises)
        }
        Shape::Single => unreachable!("single-succedent derivations are rejected"),
    }
}

/// Weakens `d` up to `target`, which must contain its endsequent.
pub fn weaken_to(d: &Derivation, target: &Sequent) -> Result<Derivation> {
    let add_l = multiset_minus(&target.antecedent, &d.conclusion.antecedent);
    let add_r = multiset_minus(&target.succedent, &d.conclusion.succedent);
    let (Some(add_l), Some(add_r)) = (add_l, add_r) else {
        return Err(TransformError::Shape(format!(
            "`{}` is not contained in `{target}`",
            d.conclusion
        )));
    };
    let mut out = d.clone();
    for f in &add_l {
        out = weaken_raw(&out, Side::Left, f);
    }
    for f in &add_r {
        out = weaken_raw(&out, Side::Right, f);
    }
    out.with_conclusion(target.clone())
        .ok_or_else(|| internal("weakening missed the target".into()))
}

// -------------------------------------------------------------- contraction

/// Removes one of at least two copies of `f` on `side`; the height does not grow.
pub fn contract(d: &Derivation, side: Side, f: &Formula) -> Result<Derivation> {
    validated(d)?;
    contract_raw(d, side, f)
}

fn contract_raw(d: &Derivation, side: Side, f: &Formula) -> Result<Derivation> {
    let copies: Vec<usize> = d
        .conclusion
        .side(side)
        .iter()
        .enumerate()
        .filter(|(_, g)| *g == f)
        .map(|(i, _)| i)
        .collect();
    if copies.len() < 2 {
        return Err(TransformError::NotDuplicated {
            formula: f.to_string(),
            side,
        });
    }
    let principal_here = |i: usize| d.principal.contains(&Position { side, index: i });
    let free: Vec<usize> = copies.iter().copied().filter(|&i| !principal_here(i)).collect();
    let drop = Position {
        side,
        index: *free.last().expect("at most one principal copy per side"),
    };
    let conclusion = d.conclusion.without(drop);
    let principal: Vec<Position> = d
        .principal
        .iter()
        .map(|p| {
            if p.side == side && p.index > drop.index {
                Position { side, index: p.index - 1 }
            } else {
                *p
            }
        })
        .collect();
    match d.rule.shape() {
        Shape::Initial | Shape::Discarding => {
            Ok(Derivation::new(conclusion, d.rule, principal, d.premises.clone()))
        }
        Shape::Local(_) if free.len() >= 2 => {
            let premises = d
                .premises
                .iter()
                .map(|p| contract_raw(p, side, f))
                .collect::<Result<Vec<_>>>()?;
            Derivation::infer(d.rule, conclusion, principal, premises).map_err(internal)
        }
        Shape::Local(_) => {
            // The principal formula is one of the two copies: invert the other
            // copy in each premise, then contract the duplicated components.
            let actives = crate::kernel::local_actives(d.rule, f)
                .ok_or_else(|| internal(format!("{} on `{f}`", d.rule)))?;
            let mut premises = vec![];
            for (i, p) in d.premises.iter().enumerate() {
                let pos = locate(&p.conclusion, side, f)?;
                let mut q = invert_raw(p, d.rule, pos)?.swap_remove(i);
                let (ante, succ) = &actives[i];
                for a in ante {
                    q = contract_raw(&q, Side::Left, a)?;
                }
                for s in succ {
                    q = contract_raw(&q, Side::Right, s)?;
                }
                premises.push(q);
            }
            Derivation::infer(d.rule, conclusion, principal, premises).map_err(internal)
        }
        Shape::Cut => Err(TransformError::ContainsCut),
        Shape::Single => Err(TransformError::UnsupportedCalculus(Calculus::GwfSingle)),
    }
}

/// Contracts `d` down to `target`, a submultiset of its endsequent with the
/// same underlying set of formulas.
pub fn contract_to(d: &Derivation, target: &Sequent) -> Result<Derivation> {
    let mut out = d.clone();
    for side in [Side::Left, Side::Right] {
        loop {
            let excess = out
                .conclusion
                .side(side)
                .iter()
                .find(|f| out.conclusion.count(side, f) > target.count(side, f))
                .cloned();
            match excess {
                Some(f) => out = contract_raw(&out, side, &f)?,
                None => break,
            }
        }
    }
    let shown = out.conclusion.to_string();
    out.with_conclusion(target.clone())
        .ok_or_else(|| internal(format!("contraction of `{shown}` missed `{target}`")))
}

// ---------------------------------------------------------------- inversion

/// Derivations of the premises of `rule` applied at `pos` of the endsequent,
/// each no higher than `d`.
pub fn invert(d: &Derivation, rule: RuleId, pos: Position) -> Result<Vec<Derivation>> {
    let c = validated(d)?;
    if rule.calculus() != c {
        return Err(TransformError::Shape(format!("{rule} does not belong to {c}")));
    }
    invert_raw(d, rule, pos)
}

fn invert_raw(d: &Derivation, rule: RuleId, pos: Position) -> Result<Vec<Derivation>> {
    if !matches!(rule.shape(), Shape::Local(_)) || !rule.is_invertible() {
        return Err(TransformError::NonInvertible(rule));
    }
    let targets = expected_premises(rule, &d.conclusion, &[pos])
        .map_err(TransformError::PositionMismatch)?;
    let f = d.conclusion.get(pos).expect("checked by expected_premises").clone();
    let side = pos.side;
    if d.rule == rule && is_principal(d, side, &f) {
        return d
            .premises
            .iter()
            .zip(&targets)
            .map(|(p, t)| {
                p.clone()
                    .with_conclusion(t.clone())
                    .ok_or_else(|| internal("inverting the last rule".into()))
            })
            .collect();
    }
    match d.rule.shape() {
        Shape::Initial => targets
            .into_iter()
            .map(|t| {
                let app = initial_application(&t, d.rule.calculus())
                    .ok_or_else(|| internal(format!("`{t}` is not initial")))?;
                Ok(Derivation::leaf(t, app.rule, app.principal))
            })
            .collect(),
        Shape::Discarding => {
            let principal = principal_values(d);
            targets
                .into_iter()
                .map(|t| rebuild(d.rule, t, &principal, d.premises.clone()))
                .collect()
        }
        Shape::Local(_) => {
            let mut inverted = vec![];
            for p in &d.premises {
                let at = locate(&p.conclusion, side, &f)?;
                inverted.push(invert_raw(p, rule, at)?);
            }
            let principal = principal_values(d);
            targets
                .into_iter()
                .enumerate()
                .map(|(j, t)| {
                    let premises = inverted.iter().map(|ps| ps[j].clone()).collect();
                    rebuild(d.rule, t, &principal, premises)
                })
                .collect()
        }
        Shape::Cut => Err(TransformError::ContainsCut),
        Shape::Single => Err(TransformError::UnsupportedCalculus(Calculus::GwfSingle)),
    }
}

/// From a derivation of `⇒ A→B`, the derivation of `A ⇒ B` it ends with.
pub fn unbox_arrow(d: &Derivation) -> Result<Derivation> {
    let shape_ok = d.conclusion.antecedent.is_empty()
        && d.conclusion.succedent.len() == 1
        && matches!(d.conclusion.succedent[0].kind(), Kind::StrictImp(..));
    if !shape_ok {
        return Err(TransformError::Shape(format!(
            "expected an endsequent `|- A -> B`, found `{}`",
            d.conclusion
        )));
    }
    let c = d.rule.calculus();
    if c == Calculus::MNec {
        return Err(TransformError::UnsupportedCalculus(c));
    }
    check_derivation(d, c)?;
    match d.rule {
        RuleId::RStrict | RuleId::RStrictS => Ok(d.premises[0].clone()),
        other => Err(internal(format!("`|- A -> B` derived by {other}"))),
    }
}

// ------------------------------------------------------------ cut elimination

/// Two cut-free GWF_N2 derivations composable by a cut on `cut_formula`.
#[derive(Clone, Debug)]
pub struct CutInstance {
    pub left: Derivation,
    pub right: Derivation,
    pub cut_formula: Formula,
}

impl CutInstance {
    pub fn new(left: Derivation, right: Derivation, cut_formula: Formula) -> Result<CutInstance> {
        for d in [&left, &right] {
            if d.rule.calculus() != Calculus::Gwf {
                return Err(TransformError::UnsupportedCalculus(d.rule.calculus()));
            }
            validated(d)?;
        }
        if !cut_formula.is_frm2() {
            return Err(TransformError::OutOfLanguage {
                formula: cut_formula.to_string(),
                calculus: Calculus::Gwf,
            });
        }
        if !left.conclusion.succedent.contains(&cut_formula) {
            return Err(TransformError::BadCut(format!(
                "`{cut_formula}` is not in the succedent of `{}`",
                left.conclusion
            )));
        }
        if !right.conclusion.antecedent.contains(&cut_formula) {
            return Err(TransformError::BadCut(format!(
                "`{cut_formula}` is not in the antecedent of `{}`",
                right.conclusion
            )));
        }
        Ok(CutInstance {
            left,
            right,
            cut_formula,
        })
    }

    pub fn cut_height(&self) -> usize {
        self.left.height() + self.right.height()
    }

    /// `Γ,Γ' ⇒ Δ,Δ'`.
    pub fn conclusion(&self) -> Sequent {
        cut_conclusion(&self.left.conclusion, &self.right.conclusion, &self.cut_formula)
    }

    /// The instance as a single `Cut` node.
    pub fn to_derivation(&self) -> Derivation {
        Derivation::new(
            self.conclusion(),
            RuleId::Cut,
            vec![],
            vec![self.left.clone(), self.right.clone()],
        )
    }
}

/// Counters for the termination measure of cut elimination.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CutStats {
    pub calls: usize,
    /// Recursive calls whose (weight, cut-height) did not decrease
    /// lexicographically relative to the calling instance.
    pub violations: usize,
}

/// A cut-free derivation of the instance's conclusion.
pub fn eliminate_cut(c: &CutInstance) -> Result<Derivation> {
    eliminate_cut_instrumented(c).map(|(d, _)| d)
}

pub fn eliminate_cut_instrumented(c: &CutInstance) -> Result<(Derivation, CutStats)> {
    let mut e = Eliminator::default();
    let d = e.cut(&c.left, &c.right, &c.cut_formula, None)?;
    Ok((d, e.stats))
}

/// Removes every cut from a GWF_N2 derivation, innermost first.
pub fn eliminate_all_cuts(d: &Derivation) -> Result<Derivation> {
    check_derivation_with(d, Calculus::Gwf, CutPolicy::Allow)?;
    let mut e = Eliminator::default();
    e.all(d)
}

#[derive(Default)]
struct Eliminator {
    stats: CutStats,
}

impl Eliminator {
    fn all(&mut self, d: &Derivation) -> Result<Derivation> {
        let premises = d
            .premises
            .iter()
            .map(|p| self.all(p))
            .collect::<Result<Vec<_>>>()?;
        if d.rule != RuleId::Cut {
            return Ok(Derivation::new(d.conclusion.clone(), d.rule, d.principal.clone(), premises));
        }
        let (l, r) = (&premises[0], &premises[1]);
        let cut = crate::kernel::cut_formula(&l.conclusion, &r.conclusion, &d.conclusion)
            .ok_or_else(|| internal("cut node without a cut formula".into()))?;
        self.cut(l, r, &cut, None)?
            .with_conclusion(d.conclusion.clone())
            .ok_or_else(|| internal("cut elimination changed the endsequent".into()))
    }

    /// A cut-free derivation of exactly `cut_conclusion(l, r, cut)`.
    fn cut(
        &mut self,
        l: &Derivation,
        r: &Derivation,
        cut: &Formula,
        parent: Option<(usize, usize)>,
    ) -> Result<Derivation> {
        let measure = (weight(cut), l.height() + r.height());
        self.stats.calls += 1;
        if parent.is_some_and(|p| measure >= p) {
            self.stats.violations += 1;
        }
        let target = cut_conclusion(&l.conclusion, &r.conclusion, cut);
        let here = Some(measure);

        // Left premise initial.
        if l.rule.is_initial() {
            if let Some(app) = initial_application(&target, Calculus::Gwf) {
                return Ok(Derivation::leaf(target, app.rule, app.principal));
            }
            // id with the cut formula principal: the atom is already on the left.
            return weaken_to(r, &target);
        }
        // Cut formula not principal on the left: permute the cut upwards.
        if !is_principal(l, Side::Right, cut) {
            return self.commute_left(l, r, cut, target, here);
        }
        if r.rule.is_initial() {
            if let Some(app) = initial_application(&target, Calculus::Gwf) {
                return Ok(Derivation::leaf(target, app.rule, app.principal));
            }
            return weaken_to(l, &target);
        }
        if !is_principal(r, Side::Left, cut) {
            return self.commute_right(l, r, cut, target, here);
        }
        self.principal(l, r, cut, target, here)
    }

    fn commute_left(
        &mut self,
        l: &Derivation,
        r: &Derivation,
        cut: &Formula,
        target: Sequent,
        here: Option<(usize, usize)>,
    ) -> Result<Derivation> {
        let principal = principal_values(l);
        match l.rule.shape() {
            Shape::Discarding => rebuild(l.rule, target, &principal, l.premises.clone()),
            Shape::Local(_) => {
                let premises = l
                    .premises
                    .iter()
                    .map(|p| self.cut(p, r, cut, here))
                    .collect::<Result<Vec<_>>>()?;
                rebuild(l.rule, target, &principal, premises)
            }
            _ => Err(internal(format!("left commutation through {}", l.rule))),
        }
    }

    fn commute_right(
        &mut self,
        l: &Derivation,
        r: &Derivation,
        cut: &Formula,
        target: Sequent,
        here: Option<(usize, usize)>,
    ) -> Result<Derivation> {
        let principal = principal_values(r);
        match r.rule.shape() {
            Shape::Discarding => rebuild(r.rule, target, &principal, r.premises.clone()),
            Shape::Local(_) => {
                let premises = r
                    .premises
                    .iter()
                    .map(|p| self.cut(l, p, cut, here))
                    .collect::<Result<Vec<_>>>()?;
                rebuild(r.rule, target, &principal, premises)
            }
            _ => Err(internal(format!("right commutation through {}", r.rule))),
        }
    }

    /// Cut formula principal on both sides: replace by cuts on its components.
    fn principal(
        &mut self,
        l: &Derivation,
        r: &Derivation,
        cut: &Formula,
        target: Sequent,
        here: Option<(usize, usize)>,
    ) -> Result<Derivation> {
        use RuleId::*;
        let mismatch = || internal(format!("principal cut on `{cut}` between {} and {}", l.rule, r.rule));
        let d = match (cut.kind(), l.rule, r.rule) {
            (Kind::And(a, b), RAnd, LAnd) => {
                let x = self.cut(&l.premises[0], &r.premises[0], a, here)?;
                self.cut(&l.premises[1], &x, b, here)?
            }
            (Kind::Or(a, b), ROr, LOr) => {
                let x = self.cut(&l.premises[0], &r.premises[0], a, here)?;
                self.cut(&x, &r.premises[1], b, here)?
            }
            (Kind::MatImp(a, b), RMat, LMat) => {
                let x = self.cut(&r.premises[0], &l.premises[0], a, here)?;
                self.cut(&x, &r.premises[1], b, here)?
            }
            (Kind::StrictImp(e, f), RStrict | LRStrict, LRStrict) => {
                // Π, E ⇒ F gives Π ⇒ E⊃F by R⊃; cut that against E⊃F, A ⇒ B
                // and close with LR→ (Π = C⊃G) or R→ (Π empty).
                let mat = Formula::mat(e.clone(), f.clone());
                let premise = &l.premises[0];
                let pi = multiset_minus(&premise.conclusion.antecedent, std::slice::from_ref(e))
                    .ok_or_else(mismatch)?;
                let r_mat = Derivation::infer(
                    RMat,
                    Sequent::new(pi.clone(), vec![mat.clone()]),
                    vec![Position::right(0)],
                    vec![premise.clone()],
                )
                .map_err(internal)?;
                let x = self.cut(&r_mat, &r.premises[0], &mat, here)?;
                let ab = (Side::Right, r.conclusion.get(r.principal[1]).ok_or_else(mismatch)?.clone());
                return if pi.is_empty() {
                    rebuild(RStrict, target, &[ab], vec![x])
                } else {
                    let cg = (Side::Left, l.conclusion.get(l.principal[0]).ok_or_else(mismatch)?.clone());
                    rebuild(LRStrict, target, &[cg, ab], vec![x])
                };
            }
            _ => return Err(mismatch()),
        };
        contract_to(&d, &target)
    }
}

// ------------------------------------------------------- single to multiple

/// Translates a GWF^s_N2 derivation into a GWF_N2 derivation of the same
/// sequent, no higher than the input.
pub fn single_to_multi(d: &Derivation) -> Result<Derivation> {
    check_derivation_with(d, Calculus::GwfSingle, CutPolicy::Allow)?;
    to_multi(d)
}

fn to_multi(d: &Derivation) -> Result<Derivation> {
    use RuleId::*;
    let premises = d.premises.iter().map(to_multi).collect::<Result<Vec<_>>>()?;
    let same = |rule: RuleId, premises: Vec<Derivation>| {
        Derivation::infer(rule, d.conclusion.clone(), d.principal.clone(), premises).map_err(internal)
    };
    let principal = d.principal_formulas().into_iter().next().cloned();
    match d.rule {
        IdS => same(Id, premises),
        LBotS => same(LBot, premises),
        LAndS => same(LAnd, premises),
        RAndS => same(RAnd, premises),
        LOrS => same(LOr, premises),
        RMatS => same(RMat, premises),
        LRStrictS => same(LRStrict, premises),
        RStrictS => same(RStrict, premises),
        CutS => same(Cut, premises),
        ROrLS | ROrRS => {
            let Some(f) = principal else { unreachable!() };
            let Kind::Or(x, y) = f.kind() else { unreachable!() };
            let other = if d.rule == ROrLS { y } else { x };
            let w = weaken_raw(&premises[0], Side::Right, other);
            same(ROr, vec![w])
        }
        LMatS => {
            // Γ ⇒ A still contains A⊃B: weaken by Z, invert L⊃ and contract A.
            let Some(f) = principal else { unreachable!() };
            let Kind::MatImp(a, _) = f.kind() else { unreachable!() };
            let z = &d.conclusion.succedent[0];
            let w = weaken_raw(&premises[0], Side::Right, z);
            let pos = locate(&w.conclusion, Side::Left, &f)?;
            let inv = invert_raw(&w, LMat, pos)?.swap_remove(0);
            let first = contract_raw(&inv, Side::Right, a)?;
            same(LMat, vec![first, premises[1].clone()])
        }
        other => Err(internal(format!("{other} in a single-succedent derivation"))),
    }
}
