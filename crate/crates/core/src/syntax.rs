//! Formula trees for the strict-implication language, its material-implication
//! extension, and the monotone modal language used as the translation target.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

/// Formula classes, from most to least restrictive.
///
/// `Frm` is built from atoms and `⊥` with `∧`, `∨`, `→`. `Frm1` adds a single
/// top-level material implication between two `Frm` formulas, and `Frm2` closes
/// `Frm1` under `∧`/`∨`. `Modal` covers formulas that contain `□` (and no `→`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stratum {
    Frm,
    Frm1,
    Frm2,
    Modal,
}

impl Stratum {
    fn rank(self) -> Option<u8> {
        match self {
            Stratum::Frm => Some(0),
            Stratum::Frm1 => Some(1),
            Stratum::Frm2 => Some(2),
            Stratum::Modal => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Stratum::Frm => "Frm",
            Stratum::Frm1 => "Frm1",
            Stratum::Frm2 => "Frm2",
            Stratum::Modal => "Modal",
        }
    }
}

/// `Frm ⊂ Frm1 ⊂ Frm2`; `Modal` is only comparable with itself.
impl PartialOrd for Stratum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.rank(), other.rank()) {
            (Some(a), Some(b)) => Some(a.cmp(&b)),
            (None, None) => Some(Ordering::Equal),
            _ => None,
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("ill-formed formula at {}: {reason}", fmt_path(.path))]
    IllFormed { path: Vec<usize>, reason: &'static str },
    #[error("formula `{formula}` is {found}, expected at most {expected}")]
    Stratum {
        formula: String,
        found: String,
        expected: Stratum,
    },
}

pub(crate) fn fmt_path(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_string()
    } else {
        let parts: Vec<String> = path.iter().map(|i| i.to_string()).collect();
        format!("path {}", parts.join("."))
    }
}

/// Constructors of the formula tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Atom(Arc<str>),
    Bottom,
    And(Formula, Formula),
    Or(Formula, Formula),
    /// Strict implication `A → B` (concrete syntax `->`).
    StrictImp(Formula, Formula),
    /// Material implication `A ⊃ B` (concrete syntax `=>`).
    MatImp(Formula, Formula),
    Box(Formula),
}

#[derive(Clone, Copy, Debug)]
struct Tag {
    stratum: Option<Stratum>,
    has_box: bool,
    has_strict: bool,
}

#[derive(Debug)]
struct Node {
    kind: Kind,
    tag: Tag,
}

/// An immutable, cheaply clonable formula. Equality and ordering are structural.
#[derive(Clone)]
pub struct Formula(Arc<Node>);

fn modal_or_none(has_box: bool, has_strict: bool) -> Option<Stratum> {
    (has_box && !has_strict).then_some(Stratum::Modal)
}

fn is_propositional(s: Option<Stratum>) -> bool {
    matches!(s, Some(Stratum::Frm | Stratum::Frm1 | Stratum::Frm2))
}

impl Formula {
    fn from_kind(kind: Kind) -> Formula {
        let tag = match &kind {
            Kind::Atom(_) | Kind::Bottom => Tag {
                stratum: Some(Stratum::Frm),
                has_box: false,
                has_strict: false,
            },
            Kind::And(a, b) | Kind::Or(a, b) => {
                let (ta, tb) = (a.tag(), b.tag());
                let has_box = ta.has_box || tb.has_box;
                let has_strict = ta.has_strict || tb.has_strict;
                let stratum = match (ta.stratum, tb.stratum) {
                    (Some(Stratum::Frm), Some(Stratum::Frm)) => Some(Stratum::Frm),
                    (x, y) if is_propositional(x) && is_propositional(y) => Some(Stratum::Frm2),
                    _ => modal_or_none(has_box, has_strict),
                };
                Tag {
                    stratum,
                    has_box,
                    has_strict,
                }
            }
            Kind::StrictImp(a, b) => {
                let both_frm = a.stratum() == Some(Stratum::Frm) && b.stratum() == Some(Stratum::Frm);
                Tag {
                    stratum: both_frm.then_some(Stratum::Frm),
                    has_box: a.tag().has_box || b.tag().has_box,
                    has_strict: true,
                }
            }
            Kind::MatImp(a, b) => {
                let has_box = a.tag().has_box || b.tag().has_box;
                let has_strict = a.tag().has_strict || b.tag().has_strict;
                let both_frm = a.stratum() == Some(Stratum::Frm) && b.stratum() == Some(Stratum::Frm);
                let stratum = if both_frm {
                    Some(Stratum::Frm1)
                } else {
                    modal_or_none(has_box, has_strict)
                };
                Tag {
                    stratum,
                    has_box,
                    has_strict,
                }
            }
            Kind::Box(a) => Tag {
                stratum: modal_or_none(true, a.tag().has_strict),
                has_box: true,
                has_strict: a.tag().has_strict,
            },
        };
        Formula(Arc::new(Node { kind, tag }))
    }

    fn tag(&self) -> Tag {
        self.0.tag
    }

    pub fn atom(name: &str) -> Formula {
        Formula::from_kind(Kind::Atom(Arc::from(name)))
    }

    pub fn bottom() -> Formula {
        Formula::from_kind(Kind::Bottom)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::from_kind(Kind::And(a, b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::from_kind(Kind::Or(a, b))
    }

    pub fn strict(a: Formula, b: Formula) -> Formula {
        Formula::from_kind(Kind::StrictImp(a, b))
    }

    pub fn mat(a: Formula, b: Formula) -> Formula {
        Formula::from_kind(Kind::MatImp(a, b))
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::from_kind(Kind::Box(a))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    /// Least stratum containing the formula, or `None` if it is ill-formed.
    pub fn stratum(&self) -> Option<Stratum> {
        self.0.tag.stratum
    }

    pub fn is_atom(&self) -> bool {
        matches!(self.kind(), Kind::Atom(_))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self.kind(), Kind::Bottom)
    }

    pub fn atom_name(&self) -> Option<&str> {
        match self.kind() {
            Kind::Atom(n) => Some(n),
            _ => None,
        }
    }

    pub fn contains_box(&self) -> bool {
        self.0.tag.has_box
    }

    pub fn contains_strict(&self) -> bool {
        self.0.tag.has_strict
    }

    /// True for members of `Frm2` (every formula the subintuitionistic calculi accept).
    pub fn is_frm2(&self) -> bool {
        is_propositional(self.stratum())
    }

    pub fn is_frm(&self) -> bool {
        self.stratum() == Some(Stratum::Frm)
    }

    /// True for formulas of the modal language `{∧, ∨, ⊃, ⊥, □}`.
    pub fn is_modal_language(&self) -> bool {
        !self.contains_strict()
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self.kind() {
            Kind::Atom(_) | Kind::Bottom => vec![],
            Kind::And(a, b) | Kind::Or(a, b) | Kind::StrictImp(a, b) | Kind::MatImp(a, b) => {
                vec![a, b]
            }
            Kind::Box(a) => vec![a],
        }
    }

    /// Atom names occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        if let Kind::Atom(n) = self.kind() {
            out.insert(n.to_string());
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    /// Number of leaf occurrences (atoms and `⊥`).
    pub fn leaves(&self) -> usize {
        match self.kind() {
            Kind::Atom(_) | Kind::Bottom => 1,
            _ => self.children().iter().map(|c| c.leaves()).sum(),
        }
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state)
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.0.kind.cmp(&other.0.kind)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self)
    }
}

/// Returns the least stratum containing `f`, or the position of the offending node.
pub fn classify(f: &Formula) -> Result<Stratum, SyntaxError> {
    if let Some(s) = f.stratum() {
        return Ok(s);
    }
    let mut path = Vec::new();
    let mut node = f;
    if node.contains_box() {
        // Box mixed with strict implication: descend to the smallest such subtree.
        loop {
            let next = node
                .children()
                .into_iter()
                .enumerate()
                .find(|(_, c)| c.contains_box() && c.contains_strict());
            match next {
                Some((i, c)) => {
                    path.push(i);
                    node = c;
                }
                None => break,
            }
        }
        return Err(SyntaxError::IllFormed {
            path,
            reason: "□ mixed with strict implication",
        });
    }
    loop {
        let next = node
            .children()
            .into_iter()
            .enumerate()
            .find(|(_, c)| c.stratum().is_none());
        match next {
            Some((i, c)) => {
                path.push(i);
                node = c;
            }
            None => break,
        }
    }
    let reason = match node.kind() {
        Kind::StrictImp(..) => "material implication under strict implication",
        Kind::MatImp(..) => "nested material implication",
        _ => "ill-formed",
    };
    Err(SyntaxError::IllFormed { path, reason })
}

/// Checks `f` against a stratum bound (`Frm`, `Frm1` or `Frm2`).
pub fn require_stratum(f: &Formula, bound: Stratum) -> Result<Stratum, SyntaxError> {
    let s = classify(f)?;
    if s <= bound {
        Ok(s)
    } else {
        Err(SyntaxError::Stratum {
            formula: f.to_string(),
            found: s.to_string(),
            expected: bound,
        })
    }
}

/// Formula weight: atoms and `⊥` weigh 0, `→` adds 2, every other connective
/// (including `□` on the modal side) adds 1.
pub fn weight(f: &Formula) -> usize {
    match f.kind() {
        Kind::Atom(_) | Kind::Bottom => 0,
        Kind::StrictImp(a, b) => weight(a) + weight(b) + 2,
        Kind::MatImp(a, b) | Kind::And(a, b) | Kind::Or(a, b) => weight(a) + weight(b) + 1,
        Kind::Box(a) => weight(a) + 1,
    }
}

/// Extended subformulas: the subformula closure in which `A → B` also
/// contributes `A ⊃ B`.
pub fn ext_subformulas(f: &Formula) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    collect_ext(f, &mut out);
    out
}

fn collect_ext(f: &Formula, out: &mut BTreeSet<Formula>) {
    if !out.insert(f.clone()) {
        return;
    }
    match f.kind() {
        Kind::Atom(_) | Kind::Bottom => {}
        Kind::And(a, b) | Kind::Or(a, b) | Kind::MatImp(a, b) => {
            collect_ext(a, out);
            collect_ext(b, out);
        }
        Kind::StrictImp(a, b) => collect_ext(&Formula::mat(a.clone(), b.clone()), out),
        Kind::Box(a) => collect_ext(a, out),
    }
}

/// The □-translation: homomorphic on atoms, `⊥`, `∧`, `∨`, `⊃`, and
/// `(A → B)^□ = □(A^□ ⊃ B^□)`. Defined on `Frm2`.
pub fn box_translate(f: &Formula) -> Result<Formula, SyntaxError> {
    require_stratum(f, Stratum::Frm2)?;
    Ok(translate_unchecked(f))
}

fn translate_unchecked(f: &Formula) -> Formula {
    match f.kind() {
        Kind::Atom(_) | Kind::Bottom => f.clone(),
        Kind::And(a, b) => Formula::and(translate_unchecked(a), translate_unchecked(b)),
        Kind::Or(a, b) => Formula::or(translate_unchecked(a), translate_unchecked(b)),
        Kind::MatImp(a, b) => Formula::mat(translate_unchecked(a), translate_unchecked(b)),
        Kind::StrictImp(a, b) => Formula::boxed(Formula::mat(
            translate_unchecked(a),
            translate_unchecked(b),
        )),
        Kind::Box(_) => unreachable!("Frm2 formulas contain no box"),
    }
}

/// Partial inverse of [`box_translate`]. Every `□` must wrap a material
/// implication whose operands are translations of `Frm` formulas.
pub fn box_untranslate(f: &Formula) -> Option<Formula> {
    let g = untranslate(f)?;
    g.is_frm2().then_some(g)
}

fn untranslate(f: &Formula) -> Option<Formula> {
    Some(match f.kind() {
        Kind::Atom(_) | Kind::Bottom => f.clone(),
        Kind::And(a, b) => Formula::and(untranslate(a)?, untranslate(b)?),
        Kind::Or(a, b) => Formula::or(untranslate(a)?, untranslate(b)?),
        Kind::MatImp(a, b) => Formula::mat(untranslate(a)?, untranslate(b)?),
        Kind::Box(inner) => match inner.kind() {
            Kind::MatImp(a, b) => {
                let (a, b) = (untranslate(a)?, untranslate(b)?);
                if !(a.is_frm() && b.is_frm()) {
                    return None;
                }
                Formula::strict(a, b)
            }
            _ => return None,
        },
        Kind::StrictImp(..) => return None,
    })
}

/// Right-nested conjunction `x1 ∧ (x2 ∧ (…))`; `None` for an empty list.
pub fn conjoin(items: &[Formula]) -> Option<Formula> {
    let (last, init) = items.split_last()?;
    Some(
        init.iter()
            .rev()
            .fold(last.clone(), |acc, x| Formula::and(x.clone(), acc)),
    )
}

/// Right-nested disjunction; `None` for an empty list.
pub fn disjoin(items: &[Formula]) -> Option<Formula> {
    let (last, init) = items.split_last()?;
    Some(
        init.iter()
            .rev()
            .fold(last.clone(), |acc, x| Formula::or(x.clone(), acc)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }
    fn r() -> Formula {
        Formula::atom("r")
    }
    fn s() -> Formula {
        Formula::atom("s")
    }

    #[test]
    fn classify_examples() {
        let f = Formula::and(p(), Formula::strict(q(), r()));
        assert_eq!(classify(&f), Ok(Stratum::Frm));
        let g = Formula::and(Formula::mat(p(), q()), Formula::strict(r(), s()));
        assert_eq!(classify(&g), Ok(Stratum::Frm2));
        let h = Formula::mat(Formula::mat(p(), q()), r());
        assert!(matches!(
            classify(&h),
            Err(SyntaxError::IllFormed { ref path, reason: "nested material implication" }) if path.is_empty()
        ));
    }

    #[test]
    fn classify_blames_innermost_offender() {
        let bad = Formula::strict(p(), Formula::mat(q(), r()));
        let f = Formula::and(s(), bad);
        match classify(&f) {
            Err(SyntaxError::IllFormed { path, reason }) => {
                assert_eq!(path, vec![1]);
                assert_eq!(reason, "material implication under strict implication");
            }
            other => panic!("unexpected {other:?}"),
        }
        let mixed = Formula::or(Formula::boxed(p()), Formula::strict(p(), q()));
        assert!(matches!(
            classify(&mixed),
            Err(SyntaxError::IllFormed { reason: "□ mixed with strict implication", .. })
        ));
    }

    #[test]
    fn modal_formulas() {
        let f = Formula::boxed(Formula::mat(p(), q()));
        assert_eq!(classify(&f), Ok(Stratum::Modal));
        let g = Formula::mat(f.clone(), r());
        assert_eq!(classify(&g), Ok(Stratum::Modal));
        assert!(Stratum::Modal.partial_cmp(&Stratum::Frm2).is_none());
        assert!(Stratum::Frm < Stratum::Frm1 && Stratum::Frm1 < Stratum::Frm2);
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&Formula::bottom()), 0);
        assert_eq!(weight(&Formula::strict(p(), q())), 2);
        assert_eq!(weight(&Formula::and(Formula::mat(p(), q()), r())), 2);
    }

    #[test]
    fn ext_subformula_examples() {
        assert_eq!(ext_subformulas(&p()), BTreeSet::from([p()]));
        let imp = Formula::strict(p(), q());
        assert_eq!(
            ext_subformulas(&imp),
            BTreeSet::from([imp.clone(), Formula::mat(p(), q()), p(), q()])
        );
        // (p∧q)⊃r: the formula itself, p∧q, p, q, r.
        let pq = Formula::and(p(), q());
        let f = Formula::mat(pq.clone(), r());
        assert_eq!(
            ext_subformulas(&f),
            BTreeSet::from([f.clone(), pq, p(), q(), r()])
        );
    }

    #[test]
    fn translation_examples() {
        assert_eq!(box_translate(&p()).unwrap(), p());
        let pq = Formula::strict(p(), q());
        let boxed = Formula::boxed(Formula::mat(p(), q()));
        assert_eq!(box_translate(&pq).unwrap(), boxed);
        // ((p→q)→r)^□ = □(□(p⊃q) ⊃ r)
        let nested = Formula::strict(pq, r());
        assert_eq!(
            box_translate(&nested).unwrap(),
            Formula::boxed(Formula::mat(boxed.clone(), r()))
        );
        assert_eq!(box_untranslate(&box_translate(&nested).unwrap()), Some(nested));
        assert_eq!(box_untranslate(&Formula::boxed(p())), None);
    }

    #[test]
    fn folds_are_right_nested() {
        let c = conjoin(&[p(), q(), r()]).unwrap();
        assert_eq!(c, Formula::and(p(), Formula::and(q(), r())));
        assert_eq!(disjoin(&[p()]).unwrap(), p());
        assert_eq!(conjoin(&[]), None);
    }
}
