//! Abstract syntax of the expression language. Nodes carry source spans
//! for diagnostics; spans are ignored by equality so a reprinted and
//! reparsed tree compares equal to the original.

use std::fmt;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

/// Spanned child pointer; equality ignores the span.
#[derive(Debug, Clone)]
pub struct Sp<T> {
    pub node: Box<T>,
    pub span: Span,
}

impl<T> Sp<T> {
    pub fn new(node: T, span: Span) -> Self {
        Sp {
            node: Box::new(node),
            span,
        }
    }

    pub fn unspanned(node: T) -> Self {
        Sp::new(node, Span::default())
    }
}

impl<T: PartialEq> PartialEq for Sp<T> {
    fn eq(&self, other: &Self) -> bool {
        self.node == other.node
    }
}

impl<T: Eq> Eq for Sp<T> {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProgKind {
    AllIntegers,
    NonNegative,
    NonPositive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    /// Sorted, duplicate-free literal.
    Literal(Vec<Rational>),
    Prog {
        kind: ProgKind,
        offset: Rational,
        period: Rational,
    },
    Union(Sp<SetExpr>, Sp<SetExpr>),
    SymDiff(Sp<SetExpr>, Sp<SetExpr>),
}

impl SetExpr {
    pub fn literal(mut points: Vec<Rational>) -> Self {
        points.sort();
        points.dedup();
        SetExpr::Literal(points)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FnExpr {
    Zero,
    One,
    ChiPoint(Rational),
    ChiOpen(Rational, Rational),
    Xor(Sp<FnExpr>, Sp<FnExpr>),
    And(Sp<FnExpr>, Sp<FnExpr>),
    Translate(Rational, Sp<FnExpr>),
    LimitLeft(Sp<FnExpr>),
    LimitRight(Sp<FnExpr>),
    DerivLeft(Sp<FnExpr>),
    DerivRight(Sp<FnExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistExpr {
    Regular(Sp<SetExpr>),
    Delta(Rational),
    DeltaLeft(Sp<SetExpr>),
    DeltaRight(Sp<SetExpr>),
    Parity,
    IntDerivLeft,
    IntDerivRight,
    Xor(Sp<DistExpr>, Sp<DistExpr>),
    Scale(Sp<FnExpr>, Sp<DistExpr>),
    Translate(Rational, Sp<DistExpr>),
    LimitLeft(Sp<DistExpr>),
    LimitRight(Sp<DistExpr>),
    DerivLeft(Sp<DistExpr>),
    DerivRight(Sp<DistExpr>),
    TensorOp(Sp<DistExpr>, Sp<DistExpr>),
    ConvOp(Sp<DistExpr>, Sp<DistExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor2 {
    Point(Rational),
    Open(Rational, Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fn2Expr {
    Zero2,
    Chi2(Factor2, Factor2),
    Xor2(Sp<Fn2Expr>, Sp<Fn2Expr>),
    And2(Sp<Fn2Expr>, Sp<Fn2Expr>),
    Translate2(Rational, Rational, Sp<Fn2Expr>),
    Swap(Sp<Fn2Expr>),
}

/// Any expression of the language, used by generic printing helpers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    Set(SetExpr),
    Fn(FnExpr),
    Dist(DistExpr),
    Fn2(Fn2Expr),
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::printer::print_expr(self))
    }
}
