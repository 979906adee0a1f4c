//! The `subseq-hilbert` v1 format: JSON lines, a header with the assumption
//! list followed by one object per proof line. Line and assumption numbers in
//! the file are 1-based.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hilbert::{HilbertLine, HilbertProof, Justification};
use crate::syntax::Formula;
use crate::text::{parse_formula, ParseError};

const FORMAT: &str = "subseq-hilbert";
const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum HilbertFileError {
    #[error("line {line} of the file: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("not a {FORMAT} v{VERSION} file")]
    Format,
    #[error("proof line {line} is numbered {found}")]
    Numbering { line: usize, found: usize },
    #[error("proof line {line}: reference {reference} is not a line or assumption number")]
    BadReference { line: usize, reference: usize },
    #[error("bad formula `{text}`: {source}")]
    Formula {
        text: String,
        #[source]
        source: ParseError,
    },
}

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    #[serde(default)]
    assumptions: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct Line {
    line: usize,
    formula: String,
    just: Just,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Just {
    Axiom {
        axiom: u8,
        #[serde(default)]
        subst: BTreeMap<String, String>,
    },
    Rule {
        rule: u8,
        premises: Vec<usize>,
    },
    Assumption {
        assumption: usize,
    },
}

/// A Hilbert proof together with the assumptions it may cite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HilbertDocument {
    pub assumptions: Vec<Formula>,
    pub proof: HilbertProof,
}

pub fn encode_hilbert(doc: &HilbertDocument) -> String {
    let header = Header {
        format: FORMAT.into(),
        version: VERSION,
        assumptions: doc.assumptions.iter().map(Formula::to_string).collect(),
    };
    let mut out = serde_json::to_string(&header).expect("header serializes");
    out.push('\n');
    for (i, l) in doc.proof.lines.iter().enumerate() {
        let just = match &l.just {
            Justification::Axiom { schema, subst } => Just::Axiom {
                axiom: *schema,
                subst: subst.iter().map(|(k, f)| (k.clone(), f.to_string())).collect(),
            },
            Justification::Rule { rule, premises } => Just::Rule {
                rule: *rule,
                premises: premises.iter().map(|p| p + 1).collect(),
            },
            Justification::Assumption(k) => Just::Assumption { assumption: k + 1 },
        };
        let line = Line {
            line: i + 1,
            formula: l.formula.to_string(),
            just,
        };
        out.push_str(&serde_json::to_string(&line).expect("line serializes"));
        out.push('\n');
    }
    out
}

fn formula(text: &str) -> Result<Formula, HilbertFileError> {
    parse_formula(text).map_err(|source| HilbertFileError::Formula {
        text: text.to_string(),
        source,
    })
}

/// Parses a Hilbert file. Only the format is checked here; validity is the
/// business of [`crate::hilbert::check_hilbert`].
pub fn decode_hilbert(text: &str) -> Result<HilbertDocument, HilbertFileError> {
    let mut rows = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, first) = rows.next().ok_or(HilbertFileError::Format)?;
    let header: Header =
        serde_json::from_str(first).map_err(|source| HilbertFileError::Json { line: 1, source })?;
    if header.format != FORMAT || header.version != VERSION {
        return Err(HilbertFileError::Format);
    }
    let assumptions = header
        .assumptions
        .iter()
        .map(|a| formula(a))
        .collect::<Result<Vec<_>, _>>()?;
    let mut lines = vec![];
    for (n, row) in rows {
        let l: Line = serde_json::from_str(row)
            .map_err(|source| HilbertFileError::Json { line: n + 1, source })?;
        let number = lines.len() + 1;
        if l.line != number {
            return Err(HilbertFileError::Numbering {
                line: number,
                found: l.line,
            });
        }
        let bad = |reference| HilbertFileError::BadReference {
            line: number,
            reference,
        };
        let just = match l.just {
            Just::Axiom { axiom, subst } => Justification::Axiom {
                schema: axiom,
                subst: subst
                    .into_iter()
                    .map(|(k, v)| Ok((k, formula(&v)?)))
                    .collect::<Result<_, HilbertFileError>>()?,
            },
            Just::Rule { rule, premises } => Justification::Rule {
                rule,
                premises: premises
                    .into_iter()
                    .map(|p| p.checked_sub(1).ok_or_else(|| bad(p)))
                    .collect::<Result<_, _>>()?,
            },
            Just::Assumption { assumption } => {
                Justification::Assumption(assumption.checked_sub(1).ok_or_else(|| bad(assumption))?)
            }
        };
        lines.push(HilbertLine {
            formula: formula(&l.formula)?,
            just,
        });
    }
    Ok(HilbertDocument {
        assumptions,
        proof: HilbertProof { lines },
    })
}
