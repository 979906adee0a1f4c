//! Finite N-neighborhood models for `Frm`: forcing, validity, exhaustive
//! enumeration of small models and countermodel search.
//!
//! Sets of worlds are bitmasks (`u8`, bit `i` = world `i`); a neighborhood
//! family is a bitmask over those sets (`u64`, bit `X` = the set `X`).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sequent::Sequent;
use crate::syntax::{require_stratum, Formula, Kind, Stratum, SyntaxError};

/// Largest model [`Model::new`] accepts; the subset families fit a `u64`.
pub const MAX_MODEL_WORLDS: usize = 6;
/// Largest world count for enumeration and countermodel search.
pub const MAX_SEARCH_WORLDS: usize = 3;
/// Refuse to enumerate more models than this.
pub const MODEL_CAP: u128 = 50_000_000;

pub type WorldSet = u8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemanticsError {
    #[error(transparent)]
    Stratum(#[from] SyntaxError),
    #[error("world count {0} is outside 1..={1}")]
    WorldCount(usize, usize),
    #[error("{0} models exceed the enumeration cap")]
    SizeCap(u128),
    #[error("ill-formed model: {0}")]
    Invalid(String),
}

type Result<T> = std::result::Result<T, SemanticsError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    worlds: usize,
    neighborhoods: Vec<u64>,
    valuation: BTreeMap<String, WorldSet>,
    superset_closed: bool,
}

fn full(n: usize) -> WorldSet {
    ((1u16 << n) - 1) as WorldSet
}

fn is_upward_closed(family: u64, n: usize) -> bool {
    let top = full(n);
    (0..=top).all(|x| {
        family >> x & 1 == 0 || (0..=top).all(|y| y & x != x || family >> y & 1 == 1)
    })
}

impl Model {
    /// Checks `W ∈ N(w)` for every world and, when `superset_closed`, that every
    /// family is upward closed.
    pub fn new(
        worlds: usize,
        neighborhoods: Vec<u64>,
        valuation: BTreeMap<String, WorldSet>,
        superset_closed: bool,
    ) -> Result<Model> {
        if worlds == 0 || worlds > MAX_MODEL_WORLDS {
            return Err(SemanticsError::WorldCount(worlds, MAX_MODEL_WORLDS));
        }
        if neighborhoods.len() != worlds {
            return Err(SemanticsError::Invalid(format!(
                "{} neighborhood families for {worlds} worlds",
                neighborhoods.len()
            )));
        }
        let top = full(worlds);
        let sets = 1u128 << (1usize << worlds);
        for (w, &family) in neighborhoods.iter().enumerate() {
            if (family as u128) >= sets {
                return Err(SemanticsError::Invalid(format!("N({w}) mentions a non-subset")));
            }
            if family >> top & 1 == 0 {
                return Err(SemanticsError::Invalid(format!("W is not in N({w})")));
            }
            if superset_closed && !is_upward_closed(family, worlds) {
                return Err(SemanticsError::Invalid(format!("N({w}) is not closed under supersets")));
            }
        }
        if let Some((a, _)) = valuation.iter().find(|(_, &v)| v & !top != 0) {
            return Err(SemanticsError::Invalid(format!("V({a}) mentions a missing world")));
        }
        Ok(Model {
            worlds,
            neighborhoods,
            valuation,
            superset_closed,
        })
    }

    /// Convenience constructor from explicit world lists.
    pub fn from_sets(
        worlds: usize,
        neighborhoods: &[Vec<Vec<usize>>],
        valuation: &[(&str, Vec<usize>)],
        superset_closed: bool,
    ) -> Result<Model> {
        let set = |ws: &[usize]| -> Result<WorldSet> {
            ws.iter().try_fold(0, |acc, &w| {
                if w < worlds.min(MAX_MODEL_WORLDS) {
                    Ok(acc | 1 << w)
                } else {
                    Err(SemanticsError::Invalid(format!("no world {w}")))
                }
            })
        };
        let mut fams = vec![];
        for fam in neighborhoods {
            let mut bits = 0u64;
            for x in fam {
                bits |= 1 << set(x)?;
            }
            fams.push(bits);
        }
        let mut val = BTreeMap::new();
        for (a, ws) in valuation {
            val.insert(a.to_string(), set(ws)?);
        }
        Model::new(worlds, fams, val, superset_closed)
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn superset_closed(&self) -> bool {
        self.superset_closed
    }

    pub fn valuation(&self) -> &BTreeMap<String, WorldSet> {
        &self.valuation
    }

    /// `X ∈ N(w)`.
    pub fn in_neighborhood(&self, w: usize, x: WorldSet) -> bool {
        self.neighborhoods[w] >> x & 1 == 1
    }

    pub fn neighborhood(&self, w: usize) -> Vec<WorldSet> {
        (0..=full(self.worlds)).filter(|&x| self.in_neighborhood(w, x)).collect()
    }

    /// The truth set of a formula. Atoms missing from the valuation are
    /// false everywhere.
    pub fn extension(&self, f: &Formula) -> Result<WorldSet> {
        require_stratum(f, Stratum::Frm)?;
        Ok(self.ext(f))
    }

    fn ext(&self, f: &Formula) -> WorldSet {
        let top = full(self.worlds);
        match f.kind() {
            Kind::Atom(a) => self.valuation.get(&**a).copied().unwrap_or(0),
            Kind::Bottom => 0,
            Kind::And(a, b) => self.ext(a) & self.ext(b),
            Kind::Or(a, b) => self.ext(a) | self.ext(b),
            Kind::StrictImp(a, b) => {
                let x = (!self.ext(a) | self.ext(b)) & top;
                (0..self.worlds)
                    .filter(|&w| self.in_neighborhood(w, x))
                    .fold(0, |acc, w| acc | 1 << w)
            }
            Kind::MatImp(..) | Kind::Box(_) => unreachable!("checked to be in Frm"),
        }
    }

    pub fn eval(&self, w: usize, f: &Formula) -> Result<bool> {
        if w >= self.worlds {
            return Err(SemanticsError::Invalid(format!("no world {w}")));
        }
        Ok(self.extension(f)? >> w & 1 == 1)
    }

    /// Worlds forcing all of Γ and none of Δ.
    pub fn failing_worlds(&self, s: &Sequent) -> Result<WorldSet> {
        for f in s.formulas() {
            require_stratum(f, Stratum::Frm)?;
        }
        let ante = s.antecedent.iter().fold(full(self.worlds), |acc, f| acc & self.ext(f));
        let succ = s.succedent.iter().fold(0, |acc, f| acc | self.ext(f));
        Ok(ante & !succ)
    }

    pub fn sequent_valid(&self, s: &Sequent) -> Result<bool> {
        Ok(self.failing_worlds(s)? == 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ModelJson::from(self)).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Model> {
        let m: ModelJson = serde_json::from_str(text).map_err(|e| SemanticsError::Invalid(e.to_string()))?;
        let fams: Vec<Vec<Vec<usize>>> = m.neighborhoods;
        let val: Vec<(&str, Vec<usize>)> = m.valuation.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
        Model::from_sets(m.worlds, &fams, &val, m.superset_closed)
    }
}

pub fn sequent_valid(m: &Model, s: &Sequent) -> Result<bool> {
    m.sequent_valid(s)
}

fn members(x: WorldSet) -> Vec<usize> {
    (0..8).filter(|i| x >> i & 1 == 1).collect()
}

fn fmt_set(x: WorldSet) -> String {
    let ws: Vec<String> = members(x).iter().map(|w| w.to_string()).collect();
    format!("{{{}}}", ws.join(","))
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = (0..self.worlds).map(|w| w.to_string()).collect();
        writeln!(f, "worlds: {}", ws.join(" "))?;
        for w in 0..self.worlds {
            let n: Vec<String> = self.neighborhood(w).into_iter().map(fmt_set).collect();
            writeln!(f, "N({w}): {}", n.join(" "))?;
        }
        for (a, &v) in &self.valuation {
            writeln!(f, "V({a}): {}", fmt_set(v))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    worlds: usize,
    superset_closed: bool,
    neighborhoods: Vec<Vec<Vec<usize>>>,
    valuation: BTreeMap<String, Vec<usize>>,
}

impl From<&Model> for ModelJson {
    fn from(m: &Model) -> Self {
        ModelJson {
            worlds: m.worlds,
            superset_closed: m.superset_closed,
            neighborhoods: (0..m.worlds)
                .map(|w| m.neighborhood(w).into_iter().map(members).collect())
                .collect(),
            valuation: m.valuation.iter().map(|(a, &v)| (a.clone(), members(v))).collect(),
        }
    }
}

/// Every admissible neighborhood family on `n` worlds, in increasing bitmask
/// order.
pub fn neighborhood_families(n: usize, superset_closed: bool) -> Vec<u64> {
    let top = full(n) as u64;
    let subsets = 1u64 << n;
    // Families over the proper subsets, with W added.
    (0..1u64 << (subsets - 1))
        .map(|rest| rest | 1 << top)
        .filter(|&fam| !superset_closed || is_upward_closed(fam, n))
        .collect()
}

/// A restartable, duplicate-free enumeration of all models on `n` worlds over
/// the given atoms. Frames vary slowest, valuations fastest.
#[derive(Clone, Debug)]
pub struct ModelEnumerator {
    n: usize,
    superset_closed: bool,
    atoms: Vec<String>,
    families: Vec<u64>,
    frame: Vec<usize>,
    valuation: u64,
    done: bool,
}

impl ModelEnumerator {
    pub fn total(&self) -> u128 {
        (self.families.len() as u128).pow(self.n as u32) << (self.n * self.atoms.len())
    }
}

pub fn enumerate_models(n: usize, superset_closed: bool, atoms: &[String]) -> Result<ModelEnumerator> {
    if n == 0 || n > MAX_SEARCH_WORLDS {
        return Err(SemanticsError::WorldCount(n, MAX_SEARCH_WORLDS));
    }
    let atoms: Vec<String> = atoms.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if n * atoms.len() >= 64 {
        return Err(SemanticsError::SizeCap(u128::MAX));
    }
    let e = ModelEnumerator {
        n,
        superset_closed,
        atoms,
        families: neighborhood_families(n, superset_closed),
        frame: vec![0; n],
        valuation: 0,
        done: false,
    };
    if e.total() > MODEL_CAP {
        return Err(SemanticsError::SizeCap(e.total()));
    }
    Ok(e)
}

impl Iterator for ModelEnumerator {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        if self.done {
            return None;
        }
        let mask = full(self.n) as u64;
        let valuation = self
            .atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), (self.valuation >> (i * self.n) & mask) as WorldSet))
            .collect();
        let model = Model {
            worlds: self.n,
            neighborhoods: self.frame.iter().map(|&i| self.families[i]).collect(),
            valuation,
            superset_closed: self.superset_closed,
        };
        // Advance: valuation first, then the frame odometer.
        self.valuation += 1;
        if self.valuation >> (self.n * self.atoms.len()) != 0 {
            self.valuation = 0;
            let mut i = 0;
            loop {
                if i == self.n {
                    self.done = true;
                    break;
                }
                self.frame[i] += 1;
                if self.frame[i] < self.families.len() {
                    break;
                }
                self.frame[i] = 0;
                i += 1;
            }
        }
        Some(model)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CountermodelResult {
    /// A superset-closed model and a world forcing Γ but no member of Δ.
    Found { model: Model, world: usize },
    /// No countermodel up to the world bound; this proves nothing.
    Exhausted,
}

impl CountermodelResult {
    pub fn is_found(&self) -> bool {
        matches!(self, CountermodelResult::Found { .. })
    }
}

/// The first superset-closed model on at most `max_worlds` worlds refuting
/// `s`, smallest models first.
pub fn countermodel(s: &Sequent, max_worlds: usize) -> Result<CountermodelResult> {
    for f in s.formulas() {
        require_stratum(f, Stratum::Frm)?;
    }
    if max_worlds == 0 || max_worlds > MAX_SEARCH_WORLDS {
        return Err(SemanticsError::WorldCount(max_worlds, MAX_SEARCH_WORLDS));
    }
    let atoms: Vec<String> = s.formulas().flat_map(|f| f.atoms()).collect();
    for n in 1..=max_worlds {
        for model in enumerate_models(n, true, &atoms)? {
            let bad = model.failing_worlds(s)?;
            if bad != 0 {
                return Ok(CountermodelResult::Found {
                    model,
                    world: bad.trailing_zeros() as usize,
                });
            }
        }
    }
    Ok(CountermodelResult::Exhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_formula, parse_sequent};

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn two_world() -> Model {
        // w = 0, v = 1; N(0) ⊇ {{1}}.
        Model::from_sets(
            2,
            &[vec![vec![1], vec![0, 1]], vec![vec![0, 1]]],
            &[("p", vec![0]), ("q", vec![1])],
            true,
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        let m = Model::from_sets(1, &[vec![vec![0]]], &[("p", vec![0])], true).unwrap();
        assert!(m.eval(0, &f("p -> p")).unwrap());
        let m = two_world();
        assert!(m.eval(0, &f("p -> q")).unwrap());
        assert!(!m.eval(0, &f("q")).unwrap());
        assert!(!m.eval(0, &f("bot")).unwrap());
        assert!(!m.eval(0, &f("r")).unwrap());
        assert!(m.eval(0, &f("p => q")).is_err());
    }

    #[test]
    fn validity_examples() {
        let m = two_world();
        assert!(m.sequent_valid(&parse_sequent("p |- p").unwrap()).unwrap());
        assert!(!m.sequent_valid(&parse_sequent("p, p -> q |- q").unwrap()).unwrap());
        assert!(m.sequent_valid(&parse_sequent("bot |-").unwrap()).unwrap());
    }

    #[test]
    fn model_invariants() {
        assert!(Model::from_sets(2, &[vec![vec![1]], vec![vec![0, 1]]], &[], false).is_err());
        assert!(Model::from_sets(2, &[vec![vec![1], vec![0, 1]], vec![vec![], vec![0, 1]]], &[], true).is_err());
        assert!(Model::from_sets(2, &[vec![vec![1], vec![0, 1]], vec![vec![], vec![0, 1]]], &[], false).is_ok());
        assert!(Model::from_sets(0, &[], &[], true).is_err());
    }

    #[test]
    fn family_counts() {
        assert_eq!(neighborhood_families(1, true).len(), 2);
        assert_eq!(neighborhood_families(2, true).len(), 5);
        assert_eq!(neighborhood_families(3, true).len(), 19);
        assert_eq!(neighborhood_families(2, false).len(), 8);
        assert!(enumerate_models(0, true, &[]).is_err());
        let atoms = vec!["p".to_string()];
        let all: Vec<Model> = enumerate_models(2, true, &atoms).unwrap().collect();
        assert_eq!(all.len(), 25 * 4);
        let distinct: BTreeSet<String> = all.iter().map(Model::to_json).collect();
        assert_eq!(distinct.len(), all.len());
    }

    #[test]
    fn countermodel_examples() {
        let s = parse_sequent("p |- q").unwrap();
        let CountermodelResult::Found { model, world } = countermodel(&s, 3).unwrap() else {
            panic!("expected a countermodel");
        };
        assert_eq!(model.worlds(), 1);
        assert!(model.eval(world, &f("p")).unwrap() && !model.eval(world, &f("q")).unwrap());
        assert!(countermodel(&parse_sequent("p, p -> q |- q").unwrap(), 2).unwrap().is_found());
        assert_eq!(countermodel(&parse_sequent("|- p -> p").unwrap(), 3).unwrap(), CountermodelResult::Exhausted);
    }

    #[test]
    fn json_round_trip() {
        let m = two_world();
        assert_eq!(Model::from_json(&m.to_json()).unwrap(), m);
        assert!(m.to_string().contains("N(0): {1} {0,1}"));
    }
}
