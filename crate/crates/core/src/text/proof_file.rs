//! The `subseq-proof` v1 interchange format: a JSON tree of
//! `{rule, conclusion, principal, premises}` nodes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{check_derivation_with, Calculus, CutPolicy, Derivation, KernelError, RuleId};
use crate::sequent::{Position, Side};
use crate::text::{parse_sequent, ParseError};

const FORMAT: &str = "subseq-proof";
const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ProofFileError {
    #[error("malformed proof file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("not a {FORMAT} v{VERSION} file (found {format} v{version})")]
    Format { format: String, version: u32 },
    #[error("unknown calculus `{0}`")]
    UnknownCalculus(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("bad principal position `{0}`")]
    BadPosition(String),
    #[error("bad sequent `{text}`: {source}")]
    Sequent {
        text: String,
        #[source]
        source: ParseError,
    },
    #[error("proof rejected by the checker: {0}")]
    Rejected(#[from] KernelError),
}

#[derive(Serialize, Deserialize)]
struct ProofFile {
    format: String,
    version: u32,
    calculus: String,
    proof: Node,
}

#[derive(Serialize, Deserialize)]
struct Node {
    rule: String,
    conclusion: String,
    #[serde(default)]
    principal: Vec<String>,
    #[serde(default)]
    premises: Vec<Node>,
}

fn to_node(d: &Derivation) -> Node {
    Node {
        rule: d.rule.name().to_string(),
        conclusion: d.conclusion.to_string(),
        principal: d.principal.iter().map(Position::to_string).collect(),
        premises: d.premises.iter().map(to_node).collect(),
    }
}

fn parse_position(text: &str) -> Result<Position, ProofFileError> {
    let bad = || ProofFileError::BadPosition(text.to_string());
    let side = match text.chars().next() {
        Some('L') => Side::Left,
        Some('R') => Side::Right,
        _ => return Err(bad()),
    };
    let index = text[1..].parse().map_err(|_| bad())?;
    Ok(Position { side, index })
}

fn from_node(n: Node) -> Result<Derivation, ProofFileError> {
    let rule = RuleId::from_name(&n.rule).ok_or_else(|| ProofFileError::UnknownRule(n.rule.clone()))?;
    let conclusion = parse_sequent(&n.conclusion).map_err(|source| ProofFileError::Sequent {
        text: n.conclusion.clone(),
        source,
    })?;
    let principal = n
        .principal
        .iter()
        .map(|p| parse_position(p))
        .collect::<Result<_, _>>()?;
    let premises = n.premises.into_iter().map(from_node).collect::<Result<_, _>>()?;
    Ok(Derivation::new(conclusion, rule, principal, premises))
}

/// Serializes a derivation; the calculus is that of the root rule.
pub fn encode_proof(d: &Derivation) -> String {
    let file = ProofFile {
        format: FORMAT.into(),
        version: VERSION,
        calculus: d.rule.calculus().name().into(),
        proof: to_node(d),
    };
    serde_json::to_string_pretty(&file).expect("proof trees serialize")
}

/// Parses and re-validates a proof file (cuts are accepted).
pub fn decode_proof(text: &str) -> Result<Derivation, ProofFileError> {
    let file: ProofFile = serde_json::from_str(text)?;
    if file.format != FORMAT || file.version != VERSION {
        return Err(ProofFileError::Format {
            format: file.format,
            version: file.version,
        });
    }
    let calculus = Calculus::from_name(&file.calculus)
        .ok_or_else(|| ProofFileError::UnknownCalculus(file.calculus.clone()))?;
    let d = from_node(file.proof)?;
    check_derivation_with(&d, calculus, CutPolicy::Allow)?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::RuleId;

    fn id_leaf() -> Derivation {
        Derivation::leaf(
            parse_sequent("p |- p").unwrap(),
            RuleId::Id,
            vec![Position::left(0), Position::right(0)],
        )
    }

    #[test]
    fn round_trip() {
        let d = Derivation::new(
            parse_sequent("|- p -> p").unwrap(),
            RuleId::RStrict,
            vec![Position::right(0)],
            vec![id_leaf()],
        );
        let text = encode_proof(&d);
        let back = decode_proof(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(encode_proof(&back), text);
    }

    #[test]
    fn lr_strict_with_two_premises_is_rejected() {
        let text = r#"{"format":"subseq-proof","version":1,"calculus":"gwfn2","proof":
            {"rule":"LR->","conclusion":"p -> q |- p -> q","principal":["L0","R0"],"premises":[
              {"rule":"id","conclusion":"p |- p","principal":["L0","R0"]},
              {"rule":"id","conclusion":"p |- p","principal":["L0","R0"]}]}}"#;
        assert!(matches!(decode_proof(text), Err(ProofFileError::Rejected(_))));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(decode_proof("{"), Err(ProofFileError::Json(_))));
        let unknown = r#"{"format":"subseq-proof","version":1,"calculus":"gwfn2",
            "proof":{"rule":"nope","conclusion":"p |- p"}}"#;
        assert!(matches!(decode_proof(unknown), Err(ProofFileError::UnknownRule(_))));
        let version = r#"{"format":"subseq-proof","version":2,"calculus":"gwfn2",
            "proof":{"rule":"id","conclusion":"p |- p"}}"#;
        assert!(matches!(decode_proof(version), Err(ProofFileError::Format { .. })));
    }
}
