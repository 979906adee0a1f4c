//! Printer for the ASCII surface syntax.
//!
//! Parentheses are omitted wherever precedence and the right associativity of
//! `->` make them redundant. Nested `&`/`|` chains keep their parentheses so
//! that the printed text shows the tree shape. The alternate form (`{:#}`)
//! drops the spaces around binary connectives.

use std::fmt;

use crate::kernel::Derivation;
use crate::sequent::Sequent;
use crate::syntax::{Formula, Kind};

const MAT: u8 = 1;
const STRICT: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const BOX: u8 = 5;
const LEAF: u8 = 6;

fn prec(f: &Formula) -> u8 {
    match f.kind() {
        Kind::MatImp(..) => MAT,
        Kind::StrictImp(..) => STRICT,
        Kind::Or(..) => OR,
        Kind::And(..) => AND,
        Kind::Box(_) => BOX,
        Kind::Atom(_) | Kind::Bottom => LEAF,
    }
}

fn operand(out: &mut fmt::Formatter<'_>, f: &Formula, min: u8) -> fmt::Result {
    if prec(f) >= min {
        write_formula(out, f)
    } else {
        out.write_str("(")?;
        write_formula(out, f)?;
        out.write_str(")")
    }
}

fn write_formula(out: &mut fmt::Formatter<'_>, f: &Formula) -> fmt::Result {
    let (a, b, op, lmin, rmin) = match f.kind() {
        Kind::Atom(name) => return out.write_str(name),
        Kind::Bottom => return out.write_str("bot"),
        Kind::Box(body) => {
            out.write_str("[]")?;
            return operand(out, body, BOX);
        }
        Kind::And(a, b) => (a, b, " & ", AND + 1, AND + 1),
        Kind::Or(a, b) => (a, b, " | ", OR + 1, OR + 1),
        Kind::StrictImp(a, b) => (a, b, " -> ", STRICT + 1, STRICT),
        Kind::MatImp(a, b) => (a, b, " => ", MAT + 1, MAT + 1),
    };
    operand(out, a, lmin)?;
    out.write_str(if out.alternate() { op.trim() } else { op })?;
    operand(out, b, rmin)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self)
    }
}

fn write_list(out: &mut fmt::Formatter<'_>, items: &[Formula]) -> fmt::Result {
    for (i, f) in items.iter().enumerate() {
        if i > 0 {
            out.write_str(", ")?;
        }
        write_formula(out, f)?;
    }
    Ok(())
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.antecedent)?;
        if !self.antecedent.is_empty() {
            f.write_str(" ")?;
        }
        f.write_str("|-")?;
        if !self.succedent.is_empty() {
            f.write_str(" ")?;
        }
        write_list(f, &self.succedent)
    }
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

pub fn print_sequent(s: &Sequent) -> String {
    s.to_string()
}

/// `[](p=>q) |- [](p=>q)` rather than `[](p => q) |- [](p => q)`.
pub fn print_sequent_compact(s: &Sequent) -> String {
    format!("{s:#}")
}

/// One line per node, `RULE : sequent`, premises indented below their conclusion.
pub fn print_derivation(d: &Derivation) -> String {
    let mut out = String::new();
    let mut stack = vec![(d, 0usize)];
    while let Some((node, depth)) = stack.pop() {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&format!("{} : {}\n", node.rule, node.conclusion));
        stack.extend(node.premises.iter().rev().map(|p| (p, depth + 1)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_formula, parse_sequent};

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn compact_form() {
        let s = parse_sequent("[](p => q), p & q |- [](p => q)").unwrap();
        assert_eq!(print_sequent_compact(&s), "[](p=>q), p&q |- [](p=>q)");
        assert_eq!(parse_sequent(&print_sequent_compact(&s)).unwrap(), s);
    }

    #[test]
    fn printing_examples() {
        let f = Formula::strict(a("p"), Formula::or(a("q"), a("r")));
        assert_eq!(print_formula(&f), "p -> q | r");
        let g = Formula::boxed(Formula::mat(a("p"), a("q")));
        assert_eq!(print_formula(&g), "[](p => q)");
        let h = Formula::and(a("p"), Formula::and(a("q"), a("r")));
        assert_eq!(print_formula(&h), "p & (q & r)");
        let l = Formula::strict(Formula::strict(a("p"), a("q")), a("r"));
        assert_eq!(print_formula(&l), "(p -> q) -> r");
        let r = Formula::strict(a("p"), Formula::strict(a("q"), a("r")));
        assert_eq!(print_formula(&r), "p -> q -> r");
        assert_eq!(print_formula(&Formula::boxed(Formula::boxed(Formula::bottom()))), "[][]bot");
    }

    #[test]
    fn sequent_printing() {
        for text in ["p, q |- r", "|- p -> p", "p |-", "|-", "p => q, p |- q"] {
            assert_eq!(print_sequent(&parse_sequent(text).unwrap()), text);
        }
    }

    #[test]
    fn reparse_is_identity() {
        for text in [
            "(p | q) & r",
            "p & q | r",
            "((p -> q) -> r) -> s",
            "p & (q -> r) => s | bot",
            "[](([]p => q) => r)",
            "[](p & q) | []p",
        ] {
            let f = parse_formula(text).unwrap();
            assert_eq!(parse_formula(&print_formula(&f)).unwrap(), f, "{text}");
        }
    }
}
