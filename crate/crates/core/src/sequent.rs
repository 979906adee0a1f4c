use std::fmt;

use crate::syntax::{weight, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
        }
    }
}

/// A formula occurrence in a sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub side: Side,
    pub index: usize,
}

impl Position {
    pub fn left(index: usize) -> Position {
        Position {
            side: Side::Left,
            index,
        }
    }

    pub fn right(index: usize) -> Position {
        Position {
            side: Side::Right,
            index,
        }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side.letter(), self.index)
    }
}

/// `Γ ⇒ Δ` with both sides finite multisets.
///
/// The vectors keep the order formulas were written in, for display; every
/// comparison the kernel makes goes through [`Sequent::multiset_eq`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Vec<Formula>) -> Sequent {
        Sequent {
            antecedent,
            succedent,
        }
    }

    pub fn side(&self, side: Side) -> &[Formula] {
        match side {
            Side::Left => &self.antecedent,
            Side::Right => &self.succedent,
        }
    }

    pub fn side_mut(&mut self, side: Side) -> &mut Vec<Formula> {
        match side {
            Side::Left => &mut self.antecedent,
            Side::Right => &mut self.succedent,
        }
    }

    pub fn get(&self, pos: Position) -> Option<&Formula> {
        self.side(pos.side).get(pos.index)
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.antecedent.iter().chain(self.succedent.iter())
    }

    /// Sum of formula weights on both sides.
    pub fn weight(&self) -> usize {
        self.formulas().map(weight).sum()
    }

    pub fn len(&self) -> usize {
        self.antecedent.len() + self.succedent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Both sides sorted; equal for any two orderings of the same multisets.
    pub fn canonical(&self) -> Sequent {
        let mut c = self.clone();
        c.antecedent.sort();
        c.succedent.sort();
        c
    }

    pub fn multiset_eq(&self, other: &Sequent) -> bool {
        multiset_eq(&self.antecedent, &other.antecedent)
            && multiset_eq(&self.succedent, &other.succedent)
    }

    pub fn count(&self, side: Side, f: &Formula) -> usize {
        self.side(side).iter().filter(|g| *g == f).count()
    }

    pub fn find(&self, side: Side, f: &Formula) -> Option<Position> {
        self.side(side)
            .iter()
            .position(|g| g == f)
            .map(|index| Position { side, index })
    }

    /// Copy with the occurrence at `pos` removed.
    pub fn without(&self, pos: Position) -> Sequent {
        let mut s = self.clone();
        s.side_mut(pos.side).remove(pos.index);
        s
    }

    /// Copy with the first occurrence of `f` on `side` removed, if any.
    pub fn without_formula(&self, side: Side, f: &Formula) -> Option<Sequent> {
        self.find(side, f).map(|p| self.without(p))
    }

    pub fn with(&self, side: Side, f: Formula) -> Sequent {
        let mut s = self.clone();
        s.side_mut(side).push(f);
        s
    }

    /// Multiset union, left operand first.
    pub fn union(&self, other: &Sequent) -> Sequent {
        let mut s = self.clone();
        s.antecedent.extend(other.antecedent.iter().cloned());
        s.succedent.extend(other.succedent.iter().cloned());
        s
    }

    /// Whether every formula of `self` occurs in `other` with at least the same multiplicity.
    pub fn is_submultiset_of(&self, other: &Sequent) -> bool {
        submultiset(&self.antecedent, &other.antecedent)
            && submultiset(&self.succedent, &other.succedent)
    }
}

pub fn multiset_eq(a: &[Formula], b: &[Formula]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut x: Vec<&Formula> = a.iter().collect();
    let mut y: Vec<&Formula> = b.iter().collect();
    x.sort();
    y.sort();
    x == y
}

pub fn submultiset(a: &[Formula], b: &[Formula]) -> bool {
    let mut pool: Vec<&Formula> = b.iter().collect();
    a.iter().all(|f| match pool.iter().position(|g| *g == f) {
        Some(i) => {
            pool.swap_remove(i);
            true
        }
        None => false,
    })
}

/// Multiset difference `a − b`, preserving the order of `a`. `None` if `b ⊄ a`.
pub fn multiset_minus(a: &[Formula], b: &[Formula]) -> Option<Vec<Formula>> {
    let mut out = a.to_vec();
    for f in b {
        let i = out.iter().position(|g| g == f)?;
        out.remove(i);
    }
    Some(out)
}

/// For two equal multisets, `perm[i]` is an index of `to` holding `from[i]`, bijectively.
pub(crate) fn matching(from: &[Formula], to: &[Formula]) -> Option<Vec<usize>> {
    if from.len() != to.len() {
        return None;
    }
    let mut used = vec![false; to.len()];
    from.iter()
        .map(|f| {
            let j = (0..to.len()).find(|&j| !used[j] && to[j] == *f)?;
            used[j] = true;
            Some(j)
        })
        .collect()
}
