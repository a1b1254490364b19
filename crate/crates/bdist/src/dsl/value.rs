//! Lowering parsed syntax into engine values and raising values back into
//! canonical syntax.

use crate::convolution::{convolve, Convolution};
use crate::dist::Distribution;
use crate::point_set::{LocallyFiniteSet, Progression, ProgressionRange, SetError};
use crate::rational::Rational;
use crate::step_fn::{chi, ChiDesc, StepFunction, SupportComponent};
use crate::test_fn::{Factor, TestFunction, TestFunction2};

use super::ast::*;
use super::LowerError;

// ---- lowering -----------------------------------------------------------

pub fn lower_set(e: &SetExpr) -> Result<LocallyFiniteSet, LowerError> {
    match e {
        SetExpr::Literal(points) => Ok(LocallyFiniteSet::from_points(points.iter().cloned())),
        SetExpr::Prog {
            kind,
            offset,
            period,
        } => {
            let range = match kind {
                ProgKind::AllIntegers => ProgressionRange::AllIntegers,
                ProgKind::NonNegative => ProgressionRange::NonNegative,
                ProgKind::NonPositive => ProgressionRange::NonPositive,
            };
            Progression::new(offset.clone(), period.clone(), range)
                .map(LocallyFiniteSet::from_progression)
                .map_err(|_| LowerError::ZeroPeriod)
        }
        SetExpr::Union(a, b) => {
            let left = lower_set(&a.node)?;
            let right = lower_set(&b.node)?;
            left.union_disjoint(&right).map_err(|e| match e {
                SetError::OverlappingUnion(t) => LowerError::OverlappingUnion(t.to_string()),
                other => LowerError::Set(other.to_string()),
            })
        }
        SetExpr::SymDiff(a, b) => Ok(lower_set(&a.node)?.sym_diff(&lower_set(&b.node)?)),
    }
}

pub fn lower_fn(e: &FnExpr) -> Result<StepFunction, LowerError> {
    match e {
        FnExpr::Zero => Ok(StepFunction::zero()),
        FnExpr::One => Ok(StepFunction::one()),
        FnExpr::ChiPoint(t) => Ok(chi(ChiDesc::Point(t.clone())).expect("points are never empty")),
        FnExpr::ChiOpen(a, b) => {
            chi(ChiDesc::Open(a.clone(), b.clone())).map_err(|_| LowerError::EmptyInterval)
        }
        FnExpr::Xor(a, b) => Ok(lower_fn(&a.node)?.xor(&lower_fn(&b.node)?)),
        FnExpr::And(a, b) => Ok(lower_fn(&a.node)?.and(&lower_fn(&b.node)?)),
        FnExpr::Translate(tau, f) => Ok(lower_fn(&f.node)?.translate(tau)),
        FnExpr::LimitLeft(f) => Ok(lower_fn(&f.node)?.limit_fn_left()),
        FnExpr::LimitRight(f) => Ok(lower_fn(&f.node)?.limit_fn_right()),
        FnExpr::DerivLeft(f) => Ok(lower_fn(&f.node)?.deriv_left()),
        FnExpr::DerivRight(f) => Ok(lower_fn(&f.node)?.deriv_right()),
    }
}

/// A distribution expression evaluated to a value: a member of the closed
/// algebra, or a window-lazy convolution at the top level.
#[derive(Debug, Clone)]
pub enum DistValue {
    Closed(Distribution),
    LazyConv(Convolution),
}

impl DistValue {
    pub fn apply(
        &self,
        phi: &TestFunction,
    ) -> Result<crate::bit::Bit, crate::dist::DistError> {
        match self {
            DistValue::Closed(d) => d.apply(phi),
            DistValue::LazyConv(c) => c.apply(phi),
        }
    }
}

pub fn lower_dist(e: &DistExpr) -> Result<Distribution, LowerError> {
    match lower_dist_value(e)? {
        DistValue::Closed(d) => Ok(d),
        DistValue::LazyConv(_) => Err(LowerError::ConvolutionNotClosed),
    }
}

pub fn lower_dist_value(e: &DistExpr) -> Result<DistValue, LowerError> {
    let closed = |e: &Sp<DistExpr>| -> Result<Distribution, LowerError> {
        match lower_dist_value(&e.node)? {
            DistValue::Closed(d) => Ok(d),
            DistValue::LazyConv(_) => Err(LowerError::ConvolutionNotClosed),
        }
    };
    let v = match e {
        DistExpr::Regular(s) => DistValue::Closed(Distribution::Regular(lower_set(&s.node)?)),
        DistExpr::Delta(t) => DistValue::Closed(Distribution::delta(t.clone())),
        DistExpr::DeltaLeft(s) => {
            DistValue::Closed(Distribution::DeltaLeft(lower_set(&s.node)?))
        }
        DistExpr::DeltaRight(s) => {
            DistValue::Closed(Distribution::DeltaRight(lower_set(&s.node)?))
        }
        DistExpr::Parity => DistValue::Closed(Distribution::Parity),
        DistExpr::IntDerivLeft => DistValue::Closed(Distribution::IntDerivLeft),
        DistExpr::IntDerivRight => DistValue::Closed(Distribution::IntDerivRight),
        DistExpr::Xor(a, b) => DistValue::Closed(closed(a)?.xor_dist(closed(b)?)),
        DistExpr::Scale(f, d) => {
            DistValue::Closed(Distribution::scale_dist(lower_fn(&f.node)?, closed(d)?))
        }
        DistExpr::Translate(tau, d) => DistValue::Closed(closed(d)?.translate_dist(tau.clone())),
        DistExpr::LimitLeft(d) => DistValue::Closed(closed(d)?.limit_left()),
        DistExpr::LimitRight(d) => DistValue::Closed(closed(d)?.limit_right()),
        DistExpr::DerivLeft(d) => DistValue::Closed(closed(d)?.deriv_left_dist()),
        DistExpr::DerivRight(d) => DistValue::Closed(closed(d)?.deriv_right_dist()),
        DistExpr::TensorOp(..) => return Err(LowerError::TensorInScalarContext),
        DistExpr::ConvOp(a, b) => {
            let conv = convolve(&closed(a)?, &closed(b)?)
                .map_err(|e| LowerError::Convolution(e.to_string()))?;
            match conv {
                Convolution::Closed(d) => DistValue::Closed(d),
                lazy => DistValue::LazyConv(lazy),
            }
        }
    };
    Ok(v)
}

pub fn lower_fn2(e: &Fn2Expr) -> Result<TestFunction2, LowerError> {
    match e {
        Fn2Expr::Zero2 => Ok(TestFunction2::zero()),
        Fn2Expr::Chi2(tf, uf) => {
            let conv = |f: &Factor2| match f {
                Factor2::Point(t) => Factor::Point(t.clone()),
                Factor2::Open(a, b) => Factor::Open(a.clone(), b.clone()),
            };
            TestFunction2::chi2(conv(tf), conv(uf)).map_err(|_| LowerError::EmptyInterval)
        }
        Fn2Expr::Xor2(a, b) => Ok(lower_fn2(&a.node)?.xor2(&lower_fn2(&b.node)?)),
        Fn2Expr::And2(a, b) => Ok(lower_fn2(&a.node)?.and2(&lower_fn2(&b.node)?)),
        Fn2Expr::Translate2(tau, nu, f) => Ok(lower_fn2(&f.node)?.translate2(tau, nu)),
        Fn2Expr::Swap(f) => Ok(lower_fn2(&f.node)?.transpose()),
    }
}

// ---- raising values back to canonical syntax ------------------------------

pub fn set_to_ast(s: &LocallyFiniteSet) -> SetExpr {
    let mut acc: Option<SetExpr> = None;
    let chain = |e: SetExpr, acc: &mut Option<SetExpr>| {
        *acc = Some(match acc.take() {
            None => e,
            Some(cur) => SetExpr::SymDiff(Sp::unspanned(cur), Sp::unspanned(e)),
        });
    };
    for p in s.progressions() {
        let kind = match p.range() {
            ProgressionRange::AllIntegers => ProgKind::AllIntegers,
            ProgressionRange::NonNegative => ProgKind::NonNegative,
            ProgressionRange::NonPositive => ProgKind::NonPositive,
        };
        chain(
            SetExpr::Prog {
                kind,
                offset: p.offset().clone(),
                period: p.period().clone(),
            },
            &mut acc,
        );
    }
    if !s.toggles().is_empty() || acc.is_none() {
        chain(SetExpr::literal(s.toggles().to_vec()), &mut acc);
    }
    acc.expect("at least the literal part is present")
}

/// Canonical bounded form: XOR of point and open-interval indicators, with
/// a leading `1 +` complement when both tails are 1. Functions with exactly
/// one unbounded tail are not expressible in the syntax.
pub fn fn_to_ast(f: &StepFunction) -> Option<FnExpr> {
    let (one_prefix, bounded) = match (f.tail_left().is_one(), f.tail_right().is_one()) {
        (false, false) => (false, f.clone()),
        (true, true) => (true, f.xor(&StepFunction::one())),
        _ => return None,
    };
    let mut terms: Vec<FnExpr> = Vec::new();
    if one_prefix {
        terms.push(FnExpr::One);
    }
    for comp in bounded.support_descriptor().components {
        match comp {
            SupportComponent::Point(t) => terms.push(FnExpr::ChiPoint(t)),
            SupportComponent::Interval {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => {
                if lo_closed {
                    terms.push(FnExpr::ChiPoint(lo.clone()));
                }
                terms.push(FnExpr::ChiOpen(lo, hi.clone()));
                if hi_closed {
                    terms.push(FnExpr::ChiPoint(hi));
                }
            }
            _ => unreachable!("bounded function has no rays"),
        }
    }
    let mut iter = terms.into_iter();
    let first = iter.next().unwrap_or(FnExpr::Zero);
    Some(iter.fold(first, |acc, t| {
        FnExpr::Xor(Sp::unspanned(acc), Sp::unspanned(t))
    }))
}

pub fn dist_to_ast(d: &Distribution) -> Option<DistExpr> {
    let ast = match d {
        Distribution::Regular(s) => DistExpr::Regular(Sp::unspanned(set_to_ast(s))),
        Distribution::DeltaLeft(s) => DistExpr::DeltaLeft(Sp::unspanned(set_to_ast(s))),
        Distribution::DeltaRight(s) => DistExpr::DeltaRight(Sp::unspanned(set_to_ast(s))),
        Distribution::Parity => DistExpr::Parity,
        Distribution::IntDerivLeft => DistExpr::IntDerivLeft,
        Distribution::IntDerivRight => DistExpr::IntDerivRight,
        Distribution::Xor(a, b) => DistExpr::Xor(
            Sp::unspanned(dist_to_ast(a)?),
            Sp::unspanned(dist_to_ast(b)?),
        ),
        Distribution::Scale(psi, a) => DistExpr::Scale(
            Sp::unspanned(fn_to_ast(psi)?),
            Sp::unspanned(dist_to_ast(a)?),
        ),
        Distribution::Translate(tau, a) => {
            DistExpr::Translate(tau.clone(), Sp::unspanned(dist_to_ast(a)?))
        }
        Distribution::LimitLeft(a) => DistExpr::LimitLeft(Sp::unspanned(dist_to_ast(a)?)),
        Distribution::LimitRight(a) => DistExpr::LimitRight(Sp::unspanned(dist_to_ast(a)?)),
        Distribution::DerivLeft(a) => DistExpr::DerivLeft(Sp::unspanned(dist_to_ast(a)?)),
        Distribution::DerivRight(a) => DistExpr::DerivRight(Sp::unspanned(dist_to_ast(a)?)),
    };
    Some(ast)
}

pub fn fn2_to_ast(f: &TestFunction2) -> Fn2Expr {
    let t_bps = f.t_breakpoints();
    let u_bps = f.u_breakpoints();
    let mut terms: Vec<Fn2Expr> = Vec::new();
    let factor = |bps: &[Rational], cell: usize| -> Option<Factor2> {
        if cell % 2 == 1 {
            Some(Factor2::Point(bps[cell / 2].clone()))
        } else if cell > 0 && cell / 2 < bps.len() {
            Some(Factor2::Open(
                bps[cell / 2 - 1].clone(),
                bps[cell / 2].clone(),
            ))
        } else {
            None // tail cells are zero and never emitted
        }
    };
    for i in 0..(2 * t_bps.len() + 1) {
        for j in 0..(2 * u_bps.len() + 1) {
            let t = match factor(t_bps, i) {
                Some(t) => t,
                None => continue,
            };
            let u = match factor(u_bps, j) {
                Some(u) => u,
                None => continue,
            };
            // probe the cell value through representative coordinates
            let t_probe = match &t {
                Factor2::Point(p) => p.clone(),
                Factor2::Open(a, b) => Rational::midpoint(a, b),
            };
            let u_probe = match &u {
                Factor2::Point(p) => p.clone(),
                Factor2::Open(a, b) => Rational::midpoint(a, b),
            };
            if f.eval2(&t_probe, &u_probe).is_one() {
                terms.push(Fn2Expr::Chi2(t, u));
            }
        }
    }
    let mut iter = terms.into_iter();
    let first = iter.next().unwrap_or(Fn2Expr::Zero2);
    iter.fold(first, |acc, t| {
        Fn2Expr::Xor2(Sp::unspanned(acc), Sp::unspanned(t))
    })
}
