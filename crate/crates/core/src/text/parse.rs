//! Recursive-descent parser for the ASCII surface syntax.
//!
//! ```text
//! sequent  := list? "|-" list?
//! list     := formula ("," formula)*
//! formula  := strict ("=>" strict)?          non-associative
//! strict   := or ("->" strict)?               right-associative
//! or       := and ("|" or)?                   right-associative
//! and      := unary ("&" and)?                right-associative
//! unary    := "[]" unary | "bot" | atom | "(" formula ")"
//! atom     := [a-z][a-z0-9_]*
//! ```

use std::fmt;

use thiserror::Error;

use crate::sequent::Sequent;
use crate::syntax::{classify, Formula, SyntaxError};

/// Byte offsets into the input text, `start <= end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("parse error at {span}: expected {expected}, found {found}")]
    Syntax {
        span: SourceSpan,
        expected: String,
        found: String,
    },
    #[error("ill-formed formula at {span}: {source}")]
    IllFormed {
        span: SourceSpan,
        #[source]
        source: SyntaxError,
    },
}

impl ParseError {
    pub fn span(&self) -> SourceSpan {
        match self {
            ParseError::Syntax { span, .. } | ParseError::IllFormed { span, .. } => *span,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bot,
    LParen,
    RParen,
    Comma,
    And,
    Or,
    Turnstile,
    Strict,
    Mat,
    Box,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("atom `{s}`"),
            Tok::Bot => "`bot`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Turnstile => "`|-`".into(),
            Tok::Strict => "`->`".into(),
            Tok::Mat => "`=>`".into(),
            Tok::Box => "`[]`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = |s: &[u8]| bytes[i..].starts_with(s);
        let tok = if two(b"|-") {
            i += 2;
            Tok::Turnstile
        } else if two(b"->") {
            i += 2;
            Tok::Strict
        } else if two(b"=>") {
            i += 2;
            Tok::Mat
        } else if two(b"[]") {
            i += 2;
            Tok::Box
        } else if c.is_ascii_lowercase() {
            while i < bytes.len()
                && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == b'_')
            {
                i += 1;
            }
            match &text[start..i] {
                "bot" => Tok::Bot,
                name => Tok::Ident(name.to_string()),
            }
        } else {
            i += 1;
            match c {
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b',' => Tok::Comma,
                b'&' => Tok::And,
                b'|' => Tok::Or,
                _ => {
                    let ch = text[start..].chars().next().unwrap_or('?');
                    return Err(ParseError::Syntax {
                        span: SourceSpan {
                            start,
                            end: start + ch.len_utf8(),
                        },
                        expected: "a formula token".into(),
                        found: format!("`{ch}`"),
                    });
                }
            }
        };
        out.push((tok, SourceSpan { start, end: i }));
    }
    out.push((
        Tok::End,
        SourceSpan {
            start: text.len(),
            end: text.len(),
        },
    ));
    Ok(out)
}

/// Parsed formula with the source span of every node, used to locate
/// classification errors.
struct Spanned {
    formula: Formula,
    span: SourceSpan,
    children: Vec<Spanned>,
}

impl Spanned {
    fn span_at(&self, path: &[usize]) -> SourceSpan {
        match path.split_first() {
            Some((i, rest)) => self
                .children
                .get(*i)
                .map_or(self.span, |c| c.span_at(rest)),
            None => self.span,
        }
    }
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            span: self.span(),
            expected: expected.to_string(),
            found: self.peek().describe(),
        })
    }

    fn binary(
        lhs: Spanned,
        rhs: Spanned,
        make: fn(Formula, Formula) -> Formula,
    ) -> Spanned {
        Spanned {
            formula: make(lhs.formula.clone(), rhs.formula.clone()),
            span: lhs.span.join(rhs.span),
            children: vec![lhs, rhs],
        }
    }

    fn formula(&mut self) -> Result<Spanned, ParseError> {
        let lhs = self.strict()?;
        if *self.peek() == Tok::Mat {
            self.bump();
            let rhs = self.strict()?;
            if *self.peek() == Tok::Mat {
                return self.fail("parentheses around nested `=>`");
            }
            return Ok(Self::binary(lhs, rhs, Formula::mat));
        }
        Ok(lhs)
    }

    fn strict(&mut self) -> Result<Spanned, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Strict {
            self.bump();
            let rhs = self.strict()?;
            return Ok(Self::binary(lhs, rhs, Formula::strict));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Spanned, ParseError> {
        let lhs = self.and()?;
        if *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.or()?;
            return Ok(Self::binary(lhs, rhs, Formula::or));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Spanned, ParseError> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::And {
            self.bump();
            let rhs = self.and()?;
            return Ok(Self::binary(lhs, rhs, Formula::and));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Spanned, ParseError> {
        match self.peek().clone() {
            Tok::Box => {
                let (_, start) = self.bump();
                let body = self.unary()?;
                Ok(Spanned {
                    formula: Formula::boxed(body.formula.clone()),
                    span: start.join(body.span),
                    children: vec![body],
                })
            }
            Tok::Bot => {
                let (_, span) = self.bump();
                Ok(Spanned {
                    formula: Formula::bottom(),
                    span,
                    children: vec![],
                })
            }
            Tok::Ident(name) => {
                let (_, span) = self.bump();
                Ok(Spanned {
                    formula: Formula::atom(&name),
                    span,
                    children: vec![],
                })
            }
            Tok::LParen => {
                let (_, open) = self.bump();
                let mut inner = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return self.fail("`)`");
                }
                let (_, close) = self.bump();
                inner.span = open.join(close);
                Ok(inner)
            }
            _ => self.fail("a formula"),
        }
    }

    fn checked_formula(&mut self) -> Result<Formula, ParseError> {
        let sp = self.formula()?;
        match classify(&sp.formula) {
            Ok(_) => Ok(sp.formula),
            Err(source) => {
                let span = match &source {
                    SyntaxError::IllFormed { path, .. } => sp.span_at(path),
                    _ => sp.span,
                };
                Err(ParseError::IllFormed { span, source })
            }
        }
    }

    fn list(&mut self, stop: &Tok) -> Result<Vec<Formula>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == stop {
            return Ok(out);
        }
        loop {
            out.push(self.checked_formula()?);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.fail("end of input")
        }
    }
}

/// Parses one formula; rejects anything outside the known strata.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.checked_formula()?;
    p.expect_end()?;
    Ok(f)
}

/// Parses `Γ |- Δ`; either side may be empty and duplicates are kept.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let antecedent = p.list(&Tok::Turnstile)?;
    if *p.peek() != Tok::Turnstile {
        return p.fail("`,` or `|-`");
    }
    p.bump();
    let succedent = p.list(&Tok::End)?;
    p.expect_end()?;
    Ok(Sequent::new(antecedent, succedent))
}
