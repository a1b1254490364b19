//! Hand-written recursive-descent parser with precedence climbing.
//!
//! Precedence, loosest to tightest: `+`, then `(x)` and `(*)`, then `*` and
//! the multiplier dot, then the unary wrappers; binary operators associate
//! to the left (the multiplier dot chains to the right by its typing: the
//! left operand is always a function).

use crate::rational::Rational;

use super::ast::*;
use super::lexer::{lex, Tok, Token};
use super::ParseError;

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    pub fn new(input: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(input)?,
            pos: 0,
            input_len: input.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|t| t.span.start)
            .unwrap_or(self.input_len)
    }

    fn span_from(&self, start: usize) -> Span {
        let end = self
            .toks
            .get(self.pos.saturating_sub(1))
            .map(|t| t.span.end)
            .unwrap_or(self.input_len);
        Span { start, end }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.here(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn eat_ident(&mut self, name: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == name) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.toks.len()
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(ParseError {
                pos: self.here(),
                message: "unexpected trailing input".into(),
            })
        }
    }

    // ---- rationals -----------------------------------------------------

    pub fn parse_rational(&mut self) -> Result<Rational, ParseError> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.here();
        let Some(Tok::Num(body)) = self.bump() else {
            return Err(ParseError {
                pos: start,
                message: "expected a number".into(),
            });
        };
        let mut text = if neg { format!("-{body}") } else { body };
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let Some(Tok::Num(den)) = self.bump() else {
                return self.err("expected a denominator");
            };
            text.push('/');
            text.push_str(&den);
        }
        text.parse::<Rational>().map_err(|e| ParseError {
            pos: start,
            message: e.to_string(),
        })
    }

    // ---- sets ----------------------------------------------------------

    pub fn parse_set(&mut self) -> Result<Sp<SetExpr>, ParseError> {
        let start = self.here();
        let mut lhs = self.parse_set_atom()?;
        loop {
            if self.eat_ident("U") {
                let rhs = self.parse_set_atom()?;
                lhs = Sp::new(SetExpr::Union(lhs, rhs), self.span_from(start));
            } else if self.eat_ident("D") {
                let rhs = self.parse_set_atom()?;
                lhs = Sp::new(SetExpr::SymDiff(lhs, rhs), self.span_from(start));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_set_atom(&mut self) -> Result<Sp<SetExpr>, ParseError> {
        let start = self.here();
        match self.peek() {
            Some(Tok::LBrace) => {
                self.pos += 1;
                let mut points = Vec::new();
                if self.peek() != Some(&Tok::RBrace) {
                    points.push(self.parse_rational()?);
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        points.push(self.parse_rational()?);
                    }
                }
                self.expect(Tok::RBrace, "`}`")?;
                Ok(Sp::new(SetExpr::literal(points), self.span_from(start)))
            }
            Some(Tok::Ident(name)) if matches!(name.as_str(), "PROG" | "PROGP" | "PROGM") => {
                let kind = match name.as_str() {
                    "PROG" => ProgKind::AllIntegers,
                    "PROGP" => ProgKind::NonNegative,
                    _ => ProgKind::NonPositive,
                };
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let offset = self.parse_rational()?;
                self.expect(Tok::Comma, "`,`")?;
                let period = self.parse_rational()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Sp::new(
                    SetExpr::Prog {
                        kind,
                        offset,
                        period,
                    },
                    self.span_from(start),
                ))
            }
            _ => self.err("expected a set"),
        }
    }

    // ---- one-variable functions ----------------------------------------

    pub fn parse_fn(&mut self) -> Result<Sp<FnExpr>, ParseError> {
        let start = self.here();
        let mut lhs = self.parse_fn_prod()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let rhs = self.parse_fn_prod()?;
            lhs = Sp::new(FnExpr::Xor(lhs, rhs), self.span_from(start));
        }
        Ok(lhs)
    }

    fn parse_fn_prod(&mut self) -> Result<Sp<FnExpr>, ParseError> {
        let start = self.here();
        let mut lhs = self.parse_fn_atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.parse_fn_atom()?;
            lhs = Sp::new(FnExpr::And(lhs, rhs), self.span_from(start));
        }
        Ok(lhs)
    }

    fn parse_fn_atom(&mut self) -> Result<Sp<FnExpr>, ParseError> {
        let start = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) if n == "0" => {
                self.pos += 1;
                Ok(Sp::new(FnExpr::Zero, self.span_from(start)))
            }
            Some(Tok::Num(n)) if n == "1" => {
                self.pos += 1;
                Ok(Sp::new(FnExpr::One, self.span_from(start)))
            }
            Some(Tok::Ident(name)) if name == "CHI" => {
                self.pos += 1;
                self.expect(Tok::LBrace, "`{`")?;
                let node = if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let a = self.parse_rational()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let b = self.parse_rational()?;
                    self.expect(Tok::RParen, "`)`")?;
                    FnExpr::ChiOpen(a, b)
                } else {
                    FnExpr::ChiPoint(self.parse_rational()?)
                };
                self.expect(Tok::RBrace, "`}`")?;
                Ok(Sp::new(node, self.span_from(start)))
            }
            Some(Tok::Ident(name)) if name == "TR" => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let tau = self.parse_rational()?;
                self.expect(Tok::Comma, "`,`")?;
                let inner = self.parse_fn()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Sp::new(FnExpr::Translate(tau, inner), self.span_from(start)))
            }
            Some(Tok::Ident(name))
                if matches!(name.as_str(), "LIMF-" | "LIMF+" | "DF-" | "DF+") =>
            {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let inner = self.parse_fn()?;
                self.expect(Tok::RParen, "`)`")?;
                let node = match name.as_str() {
                    "LIMF-" => FnExpr::LimitLeft(inner),
                    "LIMF+" => FnExpr::LimitRight(inner),
                    "DF-" => FnExpr::DerivLeft(inner),
                    _ => FnExpr::DerivRight(inner),
                };
                Ok(Sp::new(node, self.span_from(start)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.parse_fn()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.err("expected a function"),
        }
    }

    // ---- distributions ---------------------------------------------------

    pub fn parse_dist(&mut self) -> Result<Sp<DistExpr>, ParseError> {
        let start = self.here();
        let mut lhs = self.parse_dist_prod_level()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let rhs = self.parse_dist_prod_level()?;
            lhs = Sp::new(DistExpr::Xor(lhs, rhs), self.span_from(start));
        }
        Ok(lhs)
    }

    fn parse_dist_prod_level(&mut self) -> Result<Sp<DistExpr>, ParseError> {
        let start = self.here();
        let mut lhs = self.parse_dist_term()?;
        loop {
            match self.peek() {
                Some(Tok::TensorOp) => {
                    self.pos += 1;
                    let rhs = self.parse_dist_term()?;
                    lhs = Sp::new(DistExpr::TensorOp(lhs, rhs), self.span_from(start));
                }
                Some(Tok::ConvOp) => {
                    self.pos += 1;
                    let rhs = self.parse_dist_term()?;
                    lhs = Sp::new(DistExpr::ConvOp(lhs, rhs), self.span_from(start));
                }
                _ => return Ok(lhs),
            }
        }
    }

    /// Multiplier-dot chains: `ψ1 . ψ2 . atom`.
    fn parse_dist_term(&mut self) -> Result<Sp<DistExpr>, ParseError> {
        let start = self.here();
        let mut multipliers: Vec<Sp<FnExpr>> = Vec::new();
        loop {
            let save = self.pos;
            match self.parse_fn_prod() {
                Ok(f) if self.peek() == Some(&Tok::Dot) => {
                    self.pos += 1;
                    multipliers.push(f);
                }
                _ => {
                    self.pos = save;
                    break;
                }
            }
        }
        let mut acc = self.parse_dist_atom()?;
        for f in multipliers.into_iter().rev() {
            acc = Sp::new(DistExpr::Scale(f, acc), self.span_from(start));
        }
        Ok(acc)
    }

    fn parse_dist_atom(&mut self) -> Result<Sp<DistExpr>, ParseError> {
        let start = self.here();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) if name == "REG" => {
                self.pos += 1;
                let set = self.parse_set()?;
                Ok(Sp::new(DistExpr::Regular(set), self.span_from(start)))
            }
            Some(Tok::Ident(name)) if name == "DELTA" => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let t = self.parse_rational()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Sp::new(DistExpr::Delta(t), self.span_from(start)))
            }
            Some(Tok::Ident(name)) if name == "DELTAL" || name == "DELTAR" => {
                self.pos += 1;
                let set = self.parse_set()?;
                let node = if name == "DELTAL" {
                    DistExpr::DeltaLeft(set)
                } else {
                    DistExpr::DeltaRight(set)
                };
                Ok(Sp::new(node, self.span_from(start)))
            }
            Some(Tok::Ident(name)) if name == "PARITY" => {
                self.pos += 1;
                Ok(Sp::new(DistExpr::Parity, self.span_from(start)))
            }
            Some(Tok::Ident(name)) if name == "INTDL" => {
                self.pos += 1;
                Ok(Sp::new(DistExpr::IntDerivLeft, self.span_from(start)))
            }
            Some(Tok::Ident(name)) if name == "INTDR" => {
                self.pos += 1;
                Ok(Sp::new(DistExpr::IntDerivRight, self.span_from(start)))
            }
            Some(Tok::Ident(name)) if name == "TR" => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let tau = self.parse_rational()?;
                self.expect(Tok::Comma, "`,`")?;
                let inner = self.parse_dist()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Sp::new(DistExpr::Translate(tau, inner), self.span_from(start)))
            }
            Some(Tok::Ident(name))
                if matches!(name.as_str(), "LIM-" | "LIM+" | "D-" | "D+") =>
            {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let inner = self.parse_dist()?;
                self.expect(Tok::RParen, "`)`")?;
                let node = match name.as_str() {
                    "LIM-" => DistExpr::LimitLeft(inner),
                    "LIM+" => DistExpr::LimitRight(inner),
                    "D-" => DistExpr::DerivLeft(inner),
                    _ => DistExpr::DerivRight(inner),
                };
                Ok(Sp::new(node, self.span_from(start)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.parse_dist()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.err("expected a distribution"),
        }
    }

    // ---- two-variable functions ------------------------------------------

    pub fn parse_fn2(&mut self) -> Result<Sp<Fn2Expr>, ParseError> {
        let start = self.here();
        let mut lhs = self.parse_fn2_prod()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let rhs = self.parse_fn2_prod()?;
            lhs = Sp::new(Fn2Expr::Xor2(lhs, rhs), self.span_from(start));
        }
        Ok(lhs)
    }

    fn parse_fn2_prod(&mut self) -> Result<Sp<Fn2Expr>, ParseError> {
        let start = self.here();
        let mut lhs = self.parse_fn2_atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.parse_fn2_atom()?;
            lhs = Sp::new(Fn2Expr::And2(lhs, rhs), self.span_from(start));
        }
        Ok(lhs)
    }

    fn parse_factor2(&mut self) -> Result<Factor2, ParseError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let a = self.parse_rational()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.parse_rational()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Factor2::Open(a, b))
            }
            Some(Tok::LBrace) => {
                self.pos += 1;
                let t = self.parse_rational()?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(Factor2::Point(t))
            }
            _ => self.err("expected `(a, b)` or `{t}`"),
        }
    }

    fn parse_fn2_atom(&mut self) -> Result<Sp<Fn2Expr>, ParseError> {
        let start = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(n)) if n == "0" => {
                self.pos += 1;
                Ok(Sp::new(Fn2Expr::Zero2, self.span_from(start)))
            }
            Some(Tok::Ident(name)) if name == "CHI2" => {
                self.pos += 1;
                self.expect(Tok::LBrace, "`{`")?;
                let tf = self.parse_factor2()?;
                if !self.eat_ident("x") {
                    return self.err("expected `x`");
                }
                let uf = self.parse_factor2()?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(Sp::new(Fn2Expr::Chi2(tf, uf), self.span_from(start)))
            }
            Some(Tok::Ident(name)) if name == "TR2" => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let tau = self.parse_rational()?;
                self.expect(Tok::Comma, "`,`")?;
                let nu = self.parse_rational()?;
                self.expect(Tok::Comma, "`,`")?;
                let inner = self.parse_fn2()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Sp::new(
                    Fn2Expr::Translate2(tau, nu, inner),
                    self.span_from(start),
                ))
            }
            Some(Tok::Ident(name)) if name == "SWAP" => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let inner = self.parse_fn2()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Sp::new(Fn2Expr::Swap(inner), self.span_from(start)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.parse_fn2()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.err("expected a two-variable function"),
        }
    }
}

pub fn parse_set_str(input: &str) -> Result<SetExpr, ParseError> {
    let mut p = Parser::new(input)?;
    let out = p.parse_set()?;
    p.expect_end()?;
    Ok(*out.node)
}

pub fn parse_fn_str(input: &str) -> Result<FnExpr, ParseError> {
    let mut p = Parser::new(input)?;
    let out = p.parse_fn()?;
    p.expect_end()?;
    Ok(*out.node)
}

pub fn parse_dist_str(input: &str) -> Result<DistExpr, ParseError> {
    let mut p = Parser::new(input)?;
    let out = p.parse_dist()?;
    p.expect_end()?;
    Ok(*out.node)
}

pub fn parse_fn2_str(input: &str) -> Result<Fn2Expr, ParseError> {
    let mut p = Parser::new(input)?;
    let out = p.parse_fn2()?;
    p.expect_end()?;
    Ok(*out.node)
}

/// Category-agnostic entry point: tries the distribution, one-variable
/// function, two-variable function and set grammars in that order.
pub fn parse_expr_str(input: &str) -> Result<ExprAst, ParseError> {
    if let Ok(d) = parse_dist_str(input) {
        return Ok(ExprAst::Dist(d));
    }
    if let Ok(f) = parse_fn_str(input) {
        return Ok(ExprAst::Fn(f));
    }
    if let Ok(f2) = parse_fn2_str(input) {
        return Ok(ExprAst::Fn2(f2));
    }
    parse_set_str(input).map(ExprAst::Set)
}
