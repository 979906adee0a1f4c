//! Rule tables and the independent derivation checker for the three calculi.

use std::fmt;

use thiserror::Error;

use crate::sequent::{matching, multiset_minus, Position, Sequent, Side};
use crate::syntax::{fmt_path, Formula, Kind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Calculus {
    /// Multi-succedent GWF_N2.
    Gwf,
    /// Single-succedent GWF^s_N2.
    GwfSingle,
    /// G3M_Nec, the calculus for monotone modal logic with necessitation.
    MNec,
}

impl Calculus {
    pub const ALL: [Calculus; 3] = [Calculus::Gwf, Calculus::GwfSingle, Calculus::MNec];

    /// Short name used on the command line and in proof files.
    pub fn name(self) -> &'static str {
        match self {
            Calculus::Gwf => "gwfn2",
            Calculus::GwfSingle => "gwfs",
            Calculus::MNec => "mnec",
        }
    }

    pub fn from_name(name: &str) -> Option<Calculus> {
        Calculus::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn title(self) -> &'static str {
        match self {
            Calculus::Gwf => "GWF_N2",
            Calculus::GwfSingle => "GWF^s_N2",
            Calculus::MNec => "G3M_Nec",
        }
    }

    /// Whether `f` belongs to the formula language of this calculus.
    pub fn admits(self, f: &Formula) -> bool {
        match self {
            Calculus::Gwf | Calculus::GwfSingle => f.is_frm2(),
            Calculus::MNec => !f.contains_strict(),
        }
    }

    pub fn cut_rule(self) -> Option<RuleId> {
        match self {
            Calculus::Gwf => Some(RuleId::Cut),
            Calculus::GwfSingle => Some(RuleId::CutS),
            Calculus::MNec => None,
        }
    }
}

impl fmt::Display for Calculus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.title())
    }
}

/// Rule identifiers; the declaration order is the order in which
/// [`applicable_rules`] lists backward applications.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Id,
    LBot,
    LAnd,
    RAnd,
    LOr,
    ROr,
    LMat,
    RMat,
    LRStrict,
    RStrict,
    Cut,

    IdS,
    LBotS,
    LAndS,
    RAndS,
    LOrS,
    ROrLS,
    ROrRS,
    LMatS,
    RMatS,
    LRStrictS,
    RStrictS,
    CutS,

    IdM,
    LBotM,
    LAndM,
    RAndM,
    LOrM,
    ROrM,
    LMatM,
    RMatM,
    /// `A ⇒ B / □A, Γ ⇒ Δ, □B`
    LRM,
    /// `⇒ B / Γ ⇒ Δ, □B`
    RN,
}

/// How a rule treats the side formulas of its conclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Shape {
    Initial,
    /// Context shared into every premise; one principal formula.
    Local(Side),
    /// Premises keep nothing but the active formulas.
    Discarding,
    Cut,
    /// Single-succedent rules, handled separately.
    Single,
}

impl RuleId {
    pub const ALL: [RuleId; 33] = [
        RuleId::Id,
        RuleId::LBot,
        RuleId::LAnd,
        RuleId::RAnd,
        RuleId::LOr,
        RuleId::ROr,
        RuleId::LMat,
        RuleId::RMat,
        RuleId::LRStrict,
        RuleId::RStrict,
        RuleId::Cut,
        RuleId::IdS,
        RuleId::LBotS,
        RuleId::LAndS,
        RuleId::RAndS,
        RuleId::LOrS,
        RuleId::ROrLS,
        RuleId::ROrRS,
        RuleId::LMatS,
        RuleId::RMatS,
        RuleId::LRStrictS,
        RuleId::RStrictS,
        RuleId::CutS,
        RuleId::IdM,
        RuleId::LBotM,
        RuleId::LAndM,
        RuleId::RAndM,
        RuleId::LOrM,
        RuleId::ROrM,
        RuleId::LMatM,
        RuleId::RMatM,
        RuleId::LRM,
        RuleId::RN,
    ];

    pub fn name(self) -> &'static str {
        use RuleId::*;
        match self {
            Id => "id",
            LBot => "Lbot",
            LAnd => "L&",
            RAnd => "R&",
            LOr => "L|",
            ROr => "R|",
            LMat => "L=>",
            RMat => "R=>",
            LRStrict => "LR->",
            RStrict => "R->",
            Cut => "Cut",
            IdS => "id^s",
            LBotS => "Lbot^s",
            LAndS => "L&^s",
            RAndS => "R&^s",
            LOrS => "L|^s",
            ROrLS => "R|l^s",
            ROrRS => "R|r^s",
            LMatS => "L=>^s",
            RMatS => "R=>^s",
            LRStrictS => "LR->^s",
            RStrictS => "R->^s",
            CutS => "Cut^s",
            IdM => "id[]",
            LBotM => "Lbot[]",
            LAndM => "L&[]",
            RAndM => "R&[]",
            LOrM => "L|[]",
            ROrM => "R|[]",
            LMatM => "L=>[]",
            RMatM => "R=>[]",
            LRM => "LRM[]",
            RN => "RN[]",
        }
    }

    pub fn from_name(name: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.name() == name)
    }

    pub fn calculus(self) -> Calculus {
        use RuleId::*;
        match self {
            Id | LBot | LAnd | RAnd | LOr | ROr | LMat | RMat | LRStrict | RStrict | Cut => {
                Calculus::Gwf
            }
            IdS | LBotS | LAndS | RAndS | LOrS | ROrLS | ROrRS | LMatS | RMatS | LRStrictS
            | RStrictS | CutS => Calculus::GwfSingle,
            _ => Calculus::MNec,
        }
    }

    /// Rules of a calculus in enumeration order, excluding cut.
    pub fn rules_of(calculus: Calculus) -> impl Iterator<Item = RuleId> {
        RuleId::ALL
            .into_iter()
            .filter(move |r| r.calculus() == calculus && !r.is_cut())
    }

    pub fn is_cut(self) -> bool {
        matches!(self, RuleId::Cut | RuleId::CutS)
    }

    pub fn is_initial(self) -> bool {
        use RuleId::*;
        matches!(self, Id | LBot | IdS | LBotS | IdM | LBotM)
    }

    /// Number of premises.
    pub fn arity(self) -> usize {
        use RuleId::*;
        match self {
            Id | LBot | IdS | LBotS | IdM | LBotM => 0,
            RAnd | LOr | LMat | Cut | RAndS | LOrS | LMatS | CutS | RAndM | LOrM | LMatM => 2,
            _ => 1,
        }
    }

    /// Number of principal positions recorded on a node.
    pub fn principal_count(self) -> usize {
        use RuleId::*;
        match self {
            Cut | CutS => 0,
            Id | IdS | IdM | LRStrict | LRStrictS | LRM => 2,
            _ => 1,
        }
    }

    /// Whether the rule is invertible, so that backward search may commit to it.
    pub fn is_invertible(self) -> bool {
        use RuleId::*;
        matches!(
            self,
            LAnd | RAnd
                | LOr
                | ROr
                | LMat
                | RMat
                | LAndS
                | RAndS
                | LOrS
                | RMatS
                | LAndM
                | RAndM
                | LOrM
                | ROrM
                | LMatM
                | RMatM
        )
    }

    pub(crate) fn shape(self) -> Shape {
        use RuleId::*;
        match self {
            Id | LBot | IdM | LBotM => Shape::Initial,
            LAnd | LOr | LMat | LAndM | LOrM | LMatM => Shape::Local(Side::Left),
            RAnd | ROr | RMat | RAndM | ROrM | RMatM => Shape::Local(Side::Right),
            LRStrict | RStrict | LRM | RN => Shape::Discarding,
            Cut | CutS => Shape::Cut,
            _ => Shape::Single,
        }
    }

    /// The local rule of `calculus` (multi-succedent or modal) whose principal
    /// formula is `f` on `side`.
    pub(crate) fn local_for(calculus: Calculus, side: Side, f: &Formula) -> Option<RuleId> {
        use RuleId::*;
        let modal = match calculus {
            Calculus::Gwf => false,
            Calculus::MNec => true,
            Calculus::GwfSingle => return None,
        };
        let r = match (side, f.kind()) {
            (Side::Left, Kind::And(..)) => [LAnd, LAndM],
            (Side::Right, Kind::And(..)) => [RAnd, RAndM],
            (Side::Left, Kind::Or(..)) => [LOr, LOrM],
            (Side::Right, Kind::Or(..)) => [ROr, ROrM],
            (Side::Left, Kind::MatImp(..)) => [LMat, LMatM],
            (Side::Right, Kind::MatImp(..)) => [RMat, RMatM],
            _ => return None,
        };
        Some(r[modal as usize])
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite tree of rule applications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub conclusion: Sequent,
    pub rule: RuleId,
    /// Positions of the principal formulas in `conclusion`; empty for cuts.
    pub principal: Vec<Position>,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn new(
        conclusion: Sequent,
        rule: RuleId,
        principal: Vec<Position>,
        premises: Vec<Derivation>,
    ) -> Derivation {
        Derivation {
            conclusion,
            rule,
            principal,
            premises,
        }
    }

    pub fn leaf(conclusion: Sequent, rule: RuleId, principal: Vec<Position>) -> Derivation {
        Derivation::new(conclusion, rule, principal, vec![])
    }

    /// Applies `rule` forward: each premise derivation is reordered to the
    /// exact premise sequent the rule expects. Cut premises are taken as given.
    pub fn infer(
        rule: RuleId,
        conclusion: Sequent,
        principal: Vec<Position>,
        premises: Vec<Derivation>,
    ) -> Result<Derivation, String> {
        if rule.is_cut() {
            return Ok(Derivation::new(conclusion, rule, principal, premises));
        }
        let expected = expected_premises(rule, &conclusion, &principal)?;
        if expected.len() != premises.len() {
            return Err(format!(
                "{rule} expects {} premise(s), got {}",
                expected.len(),
                premises.len()
            ));
        }
        let premises = premises
            .into_iter()
            .zip(expected)
            .map(|(d, want)| {
                let have = d.conclusion.clone();
                d.with_conclusion(want.clone())
                    .ok_or_else(|| format!("{rule}: premise `{have}` should be `{want}`"))
            })
            .collect::<Result<_, _>>()?;
        Ok(Derivation::new(conclusion, rule, principal, premises))
    }

    /// [`Derivation::infer`] with the principal formulas given by value and
    /// located in `conclusion`.
    pub fn infer_at(
        rule: RuleId,
        conclusion: Sequent,
        principal: &[(Side, &Formula)],
        premises: Vec<Derivation>,
    ) -> Result<Derivation, String> {
        let positions = principal
            .iter()
            .map(|(side, f)| {
                conclusion
                    .find(*side, f)
                    .ok_or_else(|| format!("{rule}: `{f}` does not occur in `{conclusion}`"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Derivation::infer(rule, conclusion, positions, premises)
    }

    /// Initial sequents have height 0.
    pub fn height(&self) -> usize {
        self.premises
            .iter()
            .map(|p| p.height() + 1)
            .max()
            .unwrap_or(0)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn is_cut_free(&self) -> bool {
        !self.rule.is_cut() && self.premises.iter().all(Derivation::is_cut_free)
    }

    /// All nodes in pre-order.
    pub fn nodes(&self) -> Vec<&Derivation> {
        let mut out = vec![];
        let mut stack = vec![self];
        while let Some(d) = stack.pop() {
            out.push(d);
            stack.extend(d.premises.iter().rev());
        }
        out
    }

    pub fn uses_rule(&self, rule: RuleId) -> bool {
        self.nodes().iter().any(|d| d.rule == rule)
    }

    pub fn principal_formulas(&self) -> Vec<&Formula> {
        self.principal
            .iter()
            .filter_map(|p| self.conclusion.get(*p))
            .collect()
    }

    /// Same derivation with the conclusion rewritten to an equal multiset in a
    /// different order; principal positions follow their formulas.
    pub fn with_conclusion(mut self, conclusion: Sequent) -> Option<Derivation> {
        let left = matching(&self.conclusion.antecedent, &conclusion.antecedent)?;
        let right = matching(&self.conclusion.succedent, &conclusion.succedent)?;
        for p in &mut self.principal {
            p.index = match p.side {
                Side::Left => left[p.index],
                Side::Right => right[p.index],
            };
        }
        self.conclusion = conclusion;
        Some(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutPolicy {
    Reject,
    /// Structural-extended mode: `Cut` / `Cut^s` nodes are accepted.
    Allow,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("{rule} at {}: {reason}", fmt_path(.path))]
    RuleMismatch {
        path: Vec<usize>,
        rule: RuleId,
        reason: String,
    },
    #[error("formula `{formula}` at {} is outside the language of {calculus}", fmt_path(.path))]
    StratumError {
        path: Vec<usize>,
        formula: String,
        calculus: Calculus,
    },
    #[error("rule {rule} at {} does not belong to {calculus}", fmt_path(.path))]
    WrongCalculus {
        path: Vec<usize>,
        rule: RuleId,
        calculus: Calculus,
    },
    #[error("cut at {} is not accepted without structural-extended mode", fmt_path(.path))]
    CutNotAllowed { path: Vec<usize> },
}

/// One backward application of a rule to a sequent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub premises: Vec<Sequent>,
    pub principal: Vec<Position>,
}

/// Checks `d` against `calculus` with cuts rejected; returns the height.
pub fn check_derivation(d: &Derivation, calculus: Calculus) -> Result<usize, KernelError> {
    check_derivation_with(d, calculus, CutPolicy::Reject)
}

pub fn check_derivation_with(
    d: &Derivation,
    calculus: Calculus,
    cuts: CutPolicy,
) -> Result<usize, KernelError> {
    let mut path = vec![];
    check_node(d, calculus, cuts, &mut path)
}

fn check_node(
    d: &Derivation,
    calculus: Calculus,
    cuts: CutPolicy,
    path: &mut Vec<usize>,
) -> Result<usize, KernelError> {
    let mismatch = |reason: String| KernelError::RuleMismatch {
        path: path.clone(),
        rule: d.rule,
        reason,
    };
    if d.rule.calculus() != calculus {
        return Err(KernelError::WrongCalculus {
            path: path.clone(),
            rule: d.rule,
            calculus,
        });
    }
    check_language(&d.conclusion, calculus).map_err(|f| KernelError::StratumError {
        path: path.clone(),
        formula: f.to_string(),
        calculus,
    })?;
    if d.premises.len() != d.rule.arity() {
        return Err(mismatch(format!(
            "expected {} premise(s), found {}",
            d.rule.arity(),
            d.premises.len()
        )));
    }
    if d.rule.is_cut() {
        if cuts == CutPolicy::Reject {
            return Err(KernelError::CutNotAllowed { path: path.clone() });
        }
        if !d.principal.is_empty() {
            return Err(mismatch("cut nodes record no principal positions".into()));
        }
        let ok = match d.rule {
            RuleId::Cut => cut_formula(&d.premises[0].conclusion, &d.premises[1].conclusion, &d.conclusion).is_some(),
            _ => single_cut_ok(&d.premises[0].conclusion, &d.premises[1].conclusion, &d.conclusion),
        };
        if !ok {
            return Err(mismatch("conclusion is not a cut of the two premises".into()));
        }
    } else {
        let expected = expected_premises(d.rule, &d.conclusion, &d.principal).map_err(mismatch)?;
        for (i, (want, got)) in expected.iter().zip(&d.premises).enumerate() {
            if !want.multiset_eq(&got.conclusion) {
                return Err(mismatch(format!(
                    "premise {i} should be `{want}`, found `{}`",
                    got.conclusion
                )));
            }
        }
    }
    let mut height = 0;
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        let h = check_node(p, calculus, cuts, path)?;
        path.pop();
        height = height.max(h + 1);
    }
    Ok(height)
}

fn check_language<'a>(s: &'a Sequent, calculus: Calculus) -> Result<(), &'a Formula> {
    match s.formulas().find(|f| !calculus.admits(f)) {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

/// Whether `s` is a well-formed sequent of `calculus`.
pub fn sequent_in_language(s: &Sequent, calculus: Calculus) -> bool {
    check_language(s, calculus).is_ok()
        && (calculus != Calculus::GwfSingle || s.succedent.len() == 1)
}

/// The cut formula `D` for which `conclusion` is `Γ,Γ' ⇒ Δ,Δ'` given premises
/// `Γ ⇒ Δ,D` and `D,Γ' ⇒ Δ'`.
pub fn cut_formula(left: &Sequent, right: &Sequent, conclusion: &Sequent) -> Option<Formula> {
    let mut seen: Vec<&Formula> = vec![];
    for d in &left.succedent {
        if seen.contains(&d) || !right.antecedent.contains(d) {
            continue;
        }
        seen.push(d);
        if cut_conclusion(left, right, d).multiset_eq(conclusion) {
            return Some(d.clone());
        }
    }
    None
}

/// `Γ,Γ' ⇒ Δ,Δ'` for the cut of `left` and `right` on `d`.
pub fn cut_conclusion(left: &Sequent, right: &Sequent, d: &Formula) -> Sequent {
    let mut ante = left.antecedent.clone();
    ante.extend(multiset_minus(&right.antecedent, std::slice::from_ref(d)).unwrap_or_default());
    let mut succ = multiset_minus(&left.succedent, std::slice::from_ref(d)).unwrap_or_default();
    succ.extend(right.succedent.iter().cloned());
    Sequent::new(ante, succ)
}

fn single_cut_ok(left: &Sequent, right: &Sequent, conclusion: &Sequent) -> bool {
    if left.succedent.len() != 1 || right.succedent.len() != 1 {
        return false;
    }
    let d = &left.succedent[0];
    right.antecedent.contains(d) && cut_conclusion(left, right, d).multiset_eq(conclusion)
}

/// Active formulas of a context-sharing rule applied to `f`: for each premise,
/// the formulas added to the antecedent and to the succedent.
pub(crate) fn local_actives(rule: RuleId, f: &Formula) -> Option<Vec<(Vec<Formula>, Vec<Formula>)>> {
    use RuleId::*;
    let pair = |x: &Formula, y: &Formula| (x.clone(), y.clone());
    Some(match (rule, f.kind()) {
        (LAnd | LAndM, Kind::And(x, y)) => {
            let (x, y) = pair(x, y);
            vec![(vec![x, y], vec![])]
        }
        (RAnd | RAndM, Kind::And(x, y)) => {
            let (x, y) = pair(x, y);
            vec![(vec![], vec![x]), (vec![], vec![y])]
        }
        (LOr | LOrM, Kind::Or(x, y)) => {
            let (x, y) = pair(x, y);
            vec![(vec![x], vec![]), (vec![y], vec![])]
        }
        (ROr | ROrM, Kind::Or(x, y)) => {
            let (x, y) = pair(x, y);
            vec![(vec![], vec![x, y])]
        }
        (LMat | LMatM, Kind::MatImp(a, b)) => {
            let (a, b) = pair(a, b);
            vec![(vec![], vec![a]), (vec![b], vec![])]
        }
        (RMat | RMatM, Kind::MatImp(a, b)) => {
            let (a, b) = pair(a, b);
            vec![(vec![a], vec![b])]
        }
        _ => return None,
    })
}

/// `rest` with actives prepended to the antecedent and appended to the succedent.
pub(crate) fn extend(rest: &Sequent, ante: &[Formula], succ: &[Formula]) -> Sequent {
    let mut a = ante.to_vec();
    a.extend(rest.antecedent.iter().cloned());
    let mut s = rest.succedent.clone();
    s.extend(succ.iter().cloned());
    Sequent::new(a, s)
}

fn sole(ante: Vec<Formula>, succ: Formula) -> Sequent {
    Sequent::new(ante, vec![succ])
}

/// Sides of the principal positions a rule records, in order.
fn principal_sides(rule: RuleId) -> &'static [Side] {
    use RuleId::*;
    match rule {
        Cut | CutS => &[],
        Id | IdS | IdM | LRStrict | LRStrictS | LRM => &[Side::Left, Side::Right],
        LBot | LBotS | LBotM | LAnd | LOr | LMat | LAndS | LOrS | LMatS | LAndM | LOrM | LMatM => {
            &[Side::Left]
        }
        _ => &[Side::Right],
    }
}

/// The premises a rule demands for the given conclusion and principal positions.
pub fn expected_premises(
    rule: RuleId,
    conclusion: &Sequent,
    principal: &[Position],
) -> Result<Vec<Sequent>, String> {
    use RuleId::*;
    if rule.is_cut() {
        return Err("cut premises are not determined by the conclusion".into());
    }
    if principal.len() != rule.principal_count() {
        return Err(format!(
            "expected {} principal position(s), found {}",
            rule.principal_count(),
            principal.len()
        ));
    }
    let mut fs = Vec::with_capacity(principal.len());
    for p in principal {
        match conclusion.get(*p) {
            Some(f) => fs.push(f.clone()),
            None => return Err(format!("principal position {p} is out of range")),
        }
    }
    let want_sides = principal_sides(rule);
    if principal.iter().map(|p| p.side).ne(want_sides.iter().copied()) {
        return Err("principal positions are on the wrong side".into());
    }
    if rule.calculus() == Calculus::GwfSingle {
        return single_premises(rule, conclusion, principal, &fs);
    }
    match rule.shape() {
        Shape::Initial => match rule {
            Id | IdM => {
                if fs[0].is_atom() && fs[0] == fs[1] {
                    Ok(vec![])
                } else {
                    Err("initial sequent needs the same atom on both sides".into())
                }
            }
            _ => {
                if fs[0].is_bottom() {
                    Ok(vec![])
                } else {
                    Err("principal formula is not bot".into())
                }
            }
        },
        Shape::Local(_) => {
            let actives = local_actives(rule, &fs[0])
                .ok_or_else(|| format!("principal formula `{}` has the wrong shape", fs[0]))?;
            let rest = conclusion.without(principal[0]);
            Ok(actives.iter().map(|(a, s)| extend(&rest, a, s)).collect())
        }
        Shape::Discarding => discarding_premise(rule, &fs).map(|s| vec![s]),
        Shape::Cut | Shape::Single => unreachable!(),
    }
}

fn discarding_premise(rule: RuleId, fs: &[Formula]) -> Result<Sequent, String> {
    use RuleId::*;
    let shape_err = || "principal formulas have the wrong shape".to_string();
    match rule {
        LRStrict | LRStrictS => match (fs[0].kind(), fs[1].kind()) {
            (Kind::StrictImp(c, d), Kind::StrictImp(a, b)) => Ok(sole(
                vec![Formula::mat(c.clone(), d.clone()), a.clone()],
                b.clone(),
            )),
            _ => Err(shape_err()),
        },
        RStrict | RStrictS => match fs[0].kind() {
            Kind::StrictImp(a, b) => Ok(sole(vec![a.clone()], b.clone())),
            _ => Err(shape_err()),
        },
        LRM => match (fs[0].kind(), fs[1].kind()) {
            (Kind::Box(a), Kind::Box(b)) => Ok(sole(vec![a.clone()], b.clone())),
            _ => Err(shape_err()),
        },
        RN => match fs[0].kind() {
            Kind::Box(b) => Ok(Sequent::new(vec![], vec![b.clone()])),
            _ => Err(shape_err()),
        },
        _ => unreachable!(),
    }
}

fn single_premises(
    rule: RuleId,
    conclusion: &Sequent,
    principal: &[Position],
    fs: &[Formula],
) -> Result<Vec<Sequent>, String> {
    use RuleId::*;
    if conclusion.succedent.len() != 1 {
        return Err("single-succedent rule needs exactly one succedent formula".into());
    }
    let z = &conclusion.succedent[0];
    let gamma = &conclusion.antecedent;
    let shape_err = || format!("principal formula `{}` has the wrong shape", fs[0]);
    let rest = || conclusion.without(principal[0]).antecedent;
    let with = |head: &[Formula], tail: Vec<Formula>| {
        let mut v = head.to_vec();
        v.extend(tail);
        v
    };
    Ok(match (rule, fs[0].kind()) {
        (IdS, _) => {
            if fs[0].is_atom() && fs[0] == fs[1] {
                vec![]
            } else {
                return Err("initial sequent needs the same atom on both sides".into());
            }
        }
        (LBotS, Kind::Bottom) => vec![],
        (LAndS, Kind::And(x, y)) => vec![sole(with(&[x.clone(), y.clone()], rest()), z.clone())],
        (RAndS, Kind::And(x, y)) => vec![sole(gamma.clone(), x.clone()), sole(gamma.clone(), y.clone())],
        (LOrS, Kind::Or(x, y)) => vec![
            sole(with(&[x.clone()], rest()), z.clone()),
            sole(with(&[y.clone()], rest()), z.clone()),
        ],
        (ROrLS, Kind::Or(x, _)) => vec![sole(gamma.clone(), x.clone())],
        (ROrRS, Kind::Or(_, y)) => vec![sole(gamma.clone(), y.clone())],
        (LMatS, Kind::MatImp(a, b)) => vec![
            sole(gamma.clone(), a.clone()),
            sole(with(&[b.clone()], rest()), z.clone()),
        ],
        (RMatS, Kind::MatImp(a, b)) => vec![sole(with(&[a.clone()], gamma.clone()), b.clone())],
        (LRStrictS | RStrictS, _) => vec![discarding_premise(rule, fs)?],
        _ => return Err(shape_err()),
    })
}

/// The initial rule matching `s`, with its principal positions.
pub fn initial_application(s: &Sequent, calculus: Calculus) -> Option<RuleApplication> {
    let (id, bot) = match calculus {
        Calculus::Gwf => (RuleId::Id, RuleId::LBot),
        Calculus::GwfSingle => (RuleId::IdS, RuleId::LBotS),
        Calculus::MNec => (RuleId::IdM, RuleId::LBotM),
    };
    if calculus == Calculus::GwfSingle && s.succedent.len() != 1 {
        return None;
    }
    for (i, f) in s.antecedent.iter().enumerate() {
        if f.is_atom() {
            if let Some(j) = s.succedent.iter().position(|g| g == f) {
                return Some(RuleApplication {
                    rule: id,
                    premises: vec![],
                    principal: vec![Position::left(i), Position::right(j)],
                });
            }
        }
    }
    let i = s.antecedent.iter().position(Formula::is_bottom)?;
    Some(RuleApplication {
        rule: bot,
        premises: vec![],
        principal: vec![Position::left(i)],
    })
}

/// `id` (or its variant) when `s` is an instance, else `L⊥` when it applies.
pub fn is_initial(s: &Sequent, calculus: Calculus) -> Option<RuleId> {
    initial_application(s, calculus).map(|a| a.rule)
}

/// Every backward application of `rule` to `s`, leftmost principal first.
pub fn rule_applications(s: &Sequent, rule: RuleId) -> Vec<RuleApplication> {
    let mut out = vec![];
    if rule.is_cut() {
        return out;
    }
    let mut push = |principal: Vec<Position>| {
        if let Ok(premises) = expected_premises(rule, s, &principal) {
            out.push(RuleApplication {
                rule,
                premises,
                principal,
            });
        }
    };
    let (nl, nr) = (s.antecedent.len(), s.succedent.len());
    match rule.principal_count() {
        2 => {
            for i in 0..nl {
                for j in 0..nr {
                    push(vec![Position::left(i), Position::right(j)]);
                }
            }
        }
        _ => {
            if principal_sides(rule) == [Side::Left] {
                (0..nl).for_each(|i| push(vec![Position::left(i)]));
            } else {
                (0..nr).for_each(|j| push(vec![Position::right(j)]));
            }
        }
    }
    out
}

/// The complete list of backward rule applications (initial rules included),
/// by rule order and then leftmost principal. Empty for sequents outside the
/// calculus' language.
pub fn applicable_rules(s: &Sequent, calculus: Calculus) -> Vec<RuleApplication> {
    if !sequent_in_language(s, calculus) {
        return vec![];
    }
    RuleId::rules_of(calculus)
        .flat_map(|r| rule_applications(s, r))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_sequent;

    fn seq(t: &str) -> Sequent {
        parse_sequent(t).unwrap()
    }

    #[test]
    fn names_round_trip_and_belong_to_one_calculus() {
        for r in RuleId::ALL {
            assert_eq!(RuleId::from_name(r.name()), Some(r));
        }
        let total: usize = Calculus::ALL
            .iter()
            .map(|c| RuleId::ALL.iter().filter(|r| r.calculus() == *c).count())
            .sum();
        assert_eq!(total, RuleId::ALL.len());
    }

    #[test]
    fn id_leaf_has_height_zero() {
        let d = Derivation::leaf(
            seq("p, q |- r, p"),
            RuleId::Id,
            vec![Position::left(0), Position::right(1)],
        );
        assert_eq!(check_derivation(&d, Calculus::Gwf), Ok(0));
    }

    #[test]
    fn id_requires_an_atom() {
        let d = Derivation::leaf(
            seq("p & q |- p & q"),
            RuleId::Id,
            vec![Position::left(0), Position::right(0)],
        );
        assert!(matches!(
            check_derivation(&d, Calculus::Gwf),
            Err(KernelError::RuleMismatch { .. })
        ));
    }

    #[test]
    fn lr_strict_discards_context() {
        let top = seq("r, p -> q |- s, p -> q");
        let prem = seq("p => q, p |- q");
        let leaf1 = Derivation::leaf(
            seq("p |- q, p"),
            RuleId::Id,
            vec![Position::left(0), Position::right(1)],
        );
        let leaf2 = Derivation::leaf(
            seq("q, p |- q"),
            RuleId::Id,
            vec![Position::left(0), Position::right(0)],
        );
        let mid = Derivation::new(prem, RuleId::LMat, vec![Position::left(0)], vec![leaf1, leaf2]);
        let d = Derivation::new(
            top,
            RuleId::LRStrict,
            vec![Position::left(1), Position::right(1)],
            vec![mid],
        );
        assert_eq!(check_derivation(&d, Calculus::Gwf), Ok(2));
        let mut bad = d.clone();
        bad.premises.push(bad.premises[0].clone());
        assert!(check_derivation(&bad, Calculus::Gwf).is_err());
        assert!(matches!(
            check_derivation(&d, Calculus::MNec),
            Err(KernelError::WrongCalculus { .. })
        ));
    }

    #[test]
    fn initial_examples() {
        assert_eq!(is_initial(&seq("bot |- p -> q"), Calculus::GwfSingle), Some(RuleId::LBotS));
        assert_eq!(is_initial(&seq("p |- q"), Calculus::Gwf), None);
        assert_eq!(is_initial(&seq("p, bot |-"), Calculus::Gwf), Some(RuleId::LBot));
    }

    #[test]
    fn applicable_rule_examples() {
        let apps = applicable_rules(&seq("p -> q |- r -> s"), Calculus::Gwf);
        let lr = apps.iter().find(|a| a.rule == RuleId::LRStrict).unwrap();
        assert!(lr.premises[0].multiset_eq(&seq("p => q, r |- s")));
        let r = apps.iter().find(|a| a.rule == RuleId::RStrict).unwrap();
        assert!(r.premises[0].multiset_eq(&seq("r |- s")));

        let apps = applicable_rules(&seq("|- p & q"), Calculus::Gwf);
        assert_eq!(apps.len(), 1);
        assert_eq!(apps[0].rule, RuleId::RAnd);
        assert!(apps[0].premises[0].multiset_eq(&seq("|- p")));
        assert!(apps[0].premises[1].multiset_eq(&seq("|- q")));

        assert!(applicable_rules(&seq("p |-"), Calculus::Gwf).is_empty());
    }

    #[test]
    fn single_succedent_rules() {
        let s = seq("p => q, r |- s");
        let apps = applicable_rules(&s, Calculus::GwfSingle);
        assert_eq!(apps.len(), 1);
        assert_eq!(apps[0].rule, RuleId::LMatS);
        assert!(apps[0].premises[0].multiset_eq(&seq("p => q, r |- p")));
        assert!(apps[0].premises[1].multiset_eq(&seq("q, r |- s")));
        let apps = applicable_rules(&seq("|- p | q"), Calculus::GwfSingle);
        let rules: Vec<_> = apps.iter().map(|a| a.rule).collect();
        assert_eq!(rules, vec![RuleId::ROrLS, RuleId::ROrRS]);
        assert!(applicable_rules(&seq("|- p, q"), Calculus::GwfSingle).is_empty());
    }

    #[test]
    fn modal_rules() {
        let apps = applicable_rules(&seq("[](p => q) |- [](p => q)"), Calculus::MNec);
        let rules: Vec<_> = apps.iter().map(|a| a.rule).collect();
        assert_eq!(rules, vec![RuleId::LRM, RuleId::RN]);
        assert!(apps[0].premises[0].multiset_eq(&seq("p => q |- p => q")));
        assert!(apps[1].premises[0].multiset_eq(&seq("|- p => q")));
        // Disjunction on the right has a single premise.
        let apps = applicable_rules(&seq("p |- p | q"), Calculus::MNec);
        assert_eq!(apps.len(), 1);
        assert!(apps[0].premises[0].multiset_eq(&seq("p |- p, q")));
    }

    #[test]
    fn cuts_need_extended_mode() {
        let left = Derivation::leaf(
            seq("p |- p"),
            RuleId::Id,
            vec![Position::left(0), Position::right(0)],
        );
        let d = Derivation::new(seq("p |- p"), RuleId::Cut, vec![], vec![left.clone(), left]);
        assert!(matches!(
            check_derivation(&d, Calculus::Gwf),
            Err(KernelError::CutNotAllowed { .. })
        ));
        assert_eq!(check_derivation_with(&d, Calculus::Gwf, CutPolicy::Allow), Ok(1));
    }

    #[test]
    fn reordering_conclusion_moves_principal() {
        let d = Derivation::leaf(
            seq("q, p |- p"),
            RuleId::Id,
            vec![Position::left(1), Position::right(0)],
        );
        let e = d.with_conclusion(seq("p, q |- p")).unwrap();
        assert_eq!(e.principal, vec![Position::left(0), Position::right(0)]);
        assert_eq!(check_derivation(&e, Calculus::Gwf), Ok(0));
    }
}
