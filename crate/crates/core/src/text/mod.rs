//! Surface syntax, printing and the proof interchange formats.

mod hilbert_file;
mod parse;
mod print;
mod proof_file;

pub use hilbert_file::{decode_hilbert, encode_hilbert, HilbertDocument, HilbertFileError};
pub use parse::{parse_formula, parse_sequent, ParseError, SourceSpan};
pub use print::{print_derivation, print_formula, print_sequent, print_sequent_compact};
pub use proof_file::{decode_proof, encode_proof, ProofFileError};
