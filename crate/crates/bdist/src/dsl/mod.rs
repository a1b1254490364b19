//! The textual expression language: parser, canonical printer, value
//! lowering and file serialization.
//!
//! Grammar sketch (whitespace-insensitive, `+` is XOR everywhere;
//! precedence from loosest: `+`, then `(x)`/`(*)`, then `*`/`.`, then the
//! named wrappers; binary operators associate left):
//!
//! ```text
//! rat  := INT | INT "/" POSINT | DECIMAL
//! set  := "{" [rat ("," rat)*] "}" | "PROG(" rat "," rat ")"
//!       | "PROGP(" rat "," rat ")" | "PROGM(" rat "," rat ")"
//!       | set ("U" | "D") set
//! fn   := "0" | "1" | "CHI{(" rat "," rat ")}" | "CHI{" rat "}"
//!       | fn "+" fn | fn "*" fn | "TR(" rat "," fn ")"
//!       | "LIMF-(" fn ")" | "LIMF+(" fn ")" | "DF-(" fn ")" | "DF+(" fn ")"
//!       | "(" fn ")"
//! dist := "REG" set | "DELTA(" rat ")" | "DELTAL" set | "DELTAR" set
//!       | "PARITY" | "INTDL" | "INTDR" | dist "+" dist | fn "." dist
//!       | "TR(" rat "," dist ")" | "LIM-(" dist ")" | "LIM+(" dist ")"
//!       | "D-(" dist ")" | "D+(" dist ")" | dist "(x)" dist
//!       | dist "(*)" dist | "(" dist ")"
//! fn2  := "0" | "CHI2{" factor "x" factor "}" | fn2 "+" fn2 | fn2 "*" fn2
//!       | "TR2(" rat "," rat "," fn2 ")" | "SWAP(" fn2 ")" | "(" fn2 ")"
//! factor := "(" rat "," rat ")" | "{" rat "}"
//! ```
//!
//! Serialized files carry the canonical text under a one-line version
//! header; the `.bd` extension is conventional.

pub mod ast;
mod lexer;
pub mod parser;
pub mod printer;
pub mod value;

use std::fmt;

pub use ast::{DistExpr, ExprAst, Factor2, Fn2Expr, FnExpr, ProgKind, SetExpr, Sp, Span};
pub use parser::{parse_dist_str, parse_expr_str, parse_fn2_str, parse_fn_str, parse_set_str};
pub use printer::{print_dist, print_expr, print_fn, print_fn2, print_set};
pub use value::{
    dist_to_ast, fn2_to_ast, fn_to_ast, lower_dist, lower_dist_value, lower_fn, lower_fn2,
    lower_set, set_to_ast, DistValue,
};

use crate::dist::Distribution;
use crate::point_set::LocallyFiniteSet;
use crate::step_fn::StepFunction;
use crate::test_fn::{TestFunction, TestFunction2};

/// Positioned syntax error.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

/// Error while turning syntax into a value.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LowerError {
    #[error("progression period must be positive")]
    ZeroPeriod,
    #[error("characteristic interval is empty")]
    EmptyInterval,
    #[error("union operands overlap at {0}")]
    OverlappingUnion(String),
    #[error("set operation failed: {0}")]
    Set(String),
    #[error("two-variable product used where a one-variable distribution is required")]
    TensorInScalarContext,
    #[error("convolution result has unbounded support and cannot be nested")]
    ConvolutionNotClosed,
    #[error("{0}")]
    Convolution(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Lower(#[from] LowerError),
    #[error("unsupported serialization version header `{0}`")]
    VersionMismatch(String),
    #[error("value is not expressible in the language")]
    Unprintable,
}

// ---- combined parse + lower ----------------------------------------------

pub fn set_from_str(text: &str) -> Result<LocallyFiniteSet, DslError> {
    Ok(lower_set(&parse_set_str(text)?)?)
}

pub fn step_fn_from_str(text: &str) -> Result<StepFunction, DslError> {
    Ok(lower_fn(&parse_fn_str(text)?)?)
}

pub fn dist_from_str(text: &str) -> Result<Distribution, DslError> {
    Ok(lower_dist(&parse_dist_str(text)?)?)
}

pub fn dist_value_from_str(text: &str) -> Result<DistValue, DslError> {
    Ok(lower_dist_value(&parse_dist_str(text)?)?)
}

pub fn fn2_from_str(text: &str) -> Result<TestFunction2, DslError> {
    Ok(lower_fn2(&parse_fn2_str(text)?)?)
}

// ---- canonical value printing ---------------------------------------------

pub fn print_set_value(s: &LocallyFiniteSet) -> String {
    print_set(&set_to_ast(s))
}

pub fn print_fn_value(f: &StepFunction) -> Result<String, DslError> {
    fn_to_ast(f).map(|a| print_fn(&a)).ok_or(DslError::Unprintable)
}

pub fn print_dist_value(d: &Distribution) -> Result<String, DslError> {
    dist_to_ast(d)
        .map(|a| print_dist(&a))
        .ok_or(DslError::Unprintable)
}

pub fn print_fn2_value(f: &TestFunction2) -> String {
    print_fn2(&fn2_to_ast(f))
}

// ---- serialization ---------------------------------------------------------

pub const FILE_HEADER: &str = "#bd 1";

fn serialize_text(body: &str) -> String {
    format!("{FILE_HEADER}\n{body}\n")
}

fn strip_header(text: &str) -> Result<&str, DslError> {
    let mut lines = text.splitn(2, '\n');
    let header = lines.next().unwrap_or("").trim_end_matches('\r');
    if header != FILE_HEADER {
        return Err(DslError::VersionMismatch(header.to_string()));
    }
    Ok(lines.next().unwrap_or("").trim())
}

pub fn serialize_set(s: &LocallyFiniteSet) -> String {
    serialize_text(&print_set_value(s))
}

pub fn deserialize_set(text: &str) -> Result<LocallyFiniteSet, DslError> {
    set_from_str(strip_header(text)?)
}

pub fn serialize_fn(f: &StepFunction) -> Result<String, DslError> {
    Ok(serialize_text(&print_fn_value(f)?))
}

pub fn deserialize_fn(text: &str) -> Result<StepFunction, DslError> {
    step_fn_from_str(strip_header(text)?)
}

pub fn serialize_test_fn(f: &TestFunction) -> Result<String, DslError> {
    serialize_fn(f.as_step())
}

pub fn deserialize_test_fn(text: &str) -> Result<TestFunction, DslError> {
    let f = deserialize_fn(text)?;
    TestFunction::try_from_step(f)
        .map_err(|e| DslError::Lower(LowerError::Set(e.to_string())))
}

pub fn serialize_dist(d: &Distribution) -> Result<String, DslError> {
    Ok(serialize_text(&print_dist_value(d)?))
}

pub fn deserialize_dist(text: &str) -> Result<Distribution, DslError> {
    dist_from_str(strip_header(text)?)
}

pub fn serialize_fn2(f: &TestFunction2) -> String {
    serialize_text(&print_fn2_value(f))
}

pub fn deserialize_fn2(text: &str) -> Result<TestFunction2, DslError> {
    fn2_from_str(strip_header(text)?)
}

impl fmt::Display for Distribution {
    /// Canonical expression form; falls back to the debug tree for the rare
    /// multiplier that the syntax cannot express.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match print_dist_value(self) {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "{self:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bit::Bit;
    use crate::rational::Rational;
    use crate::step_fn::{chi_open, chi_point};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_basic_distributions() {
        let d = dist_from_str("REG{0,1}").unwrap();
        assert_eq!(
            d,
            Distribution::Regular(LocallyFiniteSet::from_points([q("0"), q("1")]))
        );
        let dl = dist_from_str("D-(REG{0})").unwrap();
        assert!(matches!(dl, Distribution::DerivLeft(_)));
        assert_eq!(dist_from_str("DELTA(0)").unwrap(), Distribution::delta(q("0")));
    }

    #[test]
    fn parse_half_open_indicator() {
        let f = step_fn_from_str("CHI{(0,1)} + CHI{1}").unwrap();
        assert_eq!(f.eval(&q("1")), Bit::One);
        assert_eq!(f.eval(&q("1/2")), Bit::One);
        assert_eq!(f.eval(&q("0")), Bit::Zero);
    }

    #[test]
    fn print_sorts_set_literals() {
        let ast = parse_dist_str("REG{1,0}").unwrap();
        assert_eq!(print_dist(&ast), "REG{0, 1}");
    }

    #[test]
    fn print_parse_fixpoint() {
        let samples = [
            "REG{0, 1}",
            "REG PROG(0, 1) D {0}",
            "DELTAL{0} + DELTAR{1/2}",
            "CHI{(0, 1)} . (PARITY + INTDL)",
            "TR(1/2, LIM-(REG{0}))",
            "D+(D-(REG{} ) )",
            "REG{0} (x) REG{1}",
            "REG{0, 1} (*) REG{0, 1} + PARITY",
            "CHI{0} * (CHI{(0, 2)} + 1) . DELTA(3)",
        ];
        for s in samples {
            let a1 = parse_dist_str(s).unwrap();
            let printed = print_dist(&a1);
            let a2 = parse_dist_str(&printed).unwrap();
            assert_eq!(a1, a2, "fixpoint failed for `{s}` -> `{printed}`");
            assert_eq!(printed, print_dist(&a2));
        }
    }

    #[test]
    fn errors_are_positioned() {
        let err = parse_dist_str("REG{0} & 1").unwrap_err();
        assert_eq!(err.pos, 7);
        let err2 = parse_dist_str("REG{0,}").unwrap_err();
        assert!(err2.pos > 0);
    }

    #[test]
    fn lowering_errors() {
        assert_eq!(
            dist_from_str("REG PROG(0, 0)"),
            Err(DslError::Lower(LowerError::ZeroPeriod))
        );
        assert_eq!(
            step_fn_from_str("CHI{(1, 0)}"),
            Err(DslError::Lower(LowerError::EmptyInterval))
        );
        assert!(matches!(
            dist_from_str("REG {0} U {0}"),
            Err(DslError::Lower(LowerError::OverlappingUnion(_)))
        ));
        assert_eq!(
            dist_from_str("REG{0} (x) REG{1}"),
            Err(DslError::Lower(LowerError::TensorInScalarContext))
        );
    }

    #[test]
    fn fn2_parsing_and_lowering() {
        let f = fn2_from_str("CHI2{(0, 1)x{2}} + TR2(1, 0, CHI2{(0, 1)x(0, 1)})").unwrap();
        assert_eq!(f.eval2(&q("1/2"), &q("2")), Bit::One);
        assert_eq!(f.eval2(&q("3/2"), &q("1/2")), Bit::One);
        let swapped = fn2_from_str("SWAP(CHI2{(0, 1)x{2}})").unwrap();
        assert_eq!(swapped.eval2(&q("2"), &q("1/2")), Bit::One);
    }

    #[test]
    fn value_printing_roundtrips() {
        let f = chi_open(q("0"), q("1"))
            .xor(&chi_point(q("1")))
            .xor(&chi_open(q("1"), q("2")));
        let text = print_fn_value(&f).unwrap();
        assert_eq!(text, "CHI{(0, 2)}");
        assert_eq!(step_fn_from_str(&text).unwrap(), f);

        let ray = crate::step_fn::StepFunction::from_parts(
            vec![q("0")],
            vec![Bit::One],
            vec![Bit::One, Bit::Zero],
        );
        assert_eq!(print_fn_value(&ray), Err(DslError::Unprintable));

        let both_tails = crate::step_fn::StepFunction::one().xor(&chi_point(q("0")));
        let text = print_fn_value(&both_tails).unwrap();
        assert_eq!(step_fn_from_str(&text).unwrap(), both_tails);
    }

    #[test]
    fn serialization_roundtrips() {
        let d = dist_from_str("DELTAL{0} + CHI{(0, 1)} . PARITY").unwrap();
        let text = serialize_dist(&d).unwrap();
        assert!(text.starts_with("#bd 1\n"));
        assert_eq!(deserialize_dist(&text).unwrap(), d);

        let bad = deserialize_dist("#bd 2\nREG{0}");
        assert!(matches!(bad, Err(DslError::VersionMismatch(_))));
    }

    #[test]
    fn fn2_value_printing_roundtrips() {
        let f = fn2_from_str("CHI2{(0, 1)x(0, 1)} + CHI2{{0}x{0}}").unwrap();
        let printed = print_fn2_value(&f);
        assert_eq!(fn2_from_str(&printed).unwrap(), f);
        assert_eq!(print_fn2_value(&TestFunction2::zero()), "0");
    }

    #[test]
    fn every_doc_expression_parses() {
        let dists = [
            "REG{}",
            "REG{0,1}",
            "DELTA(0)",
            "DELTAL{0}",
            "DELTAR{0}",
            "PARITY",
            "INTDL",
            "INTDR",
            "CHI{(-1,1)} . REG{0,5}",
            "TR(2, REG{0})",
            "LIM-(REG{0})",
            "LIM+(REG{0})",
            "D-(REG{0})",
            "D+(REG{0})",
            "REG{0} (*) DELTAL{0}",
            "REG PROGP(0,1)",
        ];
        for s in dists {
            parse_dist_str(s).unwrap_or_else(|e| panic!("`{s}`: {e}"));
        }
        let fns = [
            "0",
            "1",
            "CHI{(0,1)}",
            "CHI{1}",
            "CHI{(0,2)} + CHI{1}",
            "CHI{(0,2)} * CHI{(1,3)}",
            "TR(1/2, CHI{0})",
            "LIMF-(CHI{0})",
            "DF-(CHI{(0,1)})",
            "DF+(CHI{(0,1)})",
        ];
        for s in fns {
            parse_fn_str(s).unwrap_or_else(|e| panic!("`{s}`: {e}"));
        }
        let sets = ["{0, 1/2}", "PROG(0,1)", "PROGP(0,1)", "PROGM(0,1)", "{0} U {1}", "{0} D {1}"];
        for s in sets {
            parse_set_str(s).unwrap_or_else(|e| panic!("`{s}`: {e}"));
        }
    }
}
