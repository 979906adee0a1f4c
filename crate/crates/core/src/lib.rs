//! Proof theory for the subintuitionistic logic WF_N2.
//!
//! Formulas and sequents live in [`syntax`] and [`sequent`]; [`kernel`] checks
//! derivations of GWF_N2, its single-succedent variant and the modal calculus
//! G3M_Nec. The remaining modules build derivations ([`search`]), transform
//! them ([`transform`]), bridge to the Hilbert system ([`hilbert`]) and to the
//! modal companion ([`embedding`]), and search for neighborhood countermodels
//! ([`semantics`]).

pub mod embedding;
pub mod hilbert;
pub mod kernel;
pub mod search;
pub mod semantics;
pub mod sequent;
pub mod syntax;
pub mod transform;
pub mod text;

pub use kernel::{Calculus, Derivation, RuleId};
pub use sequent::{Position, Sequent, Side};
pub use syntax::{Formula, Kind, Stratum};
