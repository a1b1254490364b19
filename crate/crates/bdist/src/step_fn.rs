//! Canonical finite-breakpoint piecewise-constant B₂ functions of one real
//! variable, with lateral limits, lateral derivatives and the pointwise
//! XOR/AND algebra.
//!
//! A function is stored as its strictly increasing breakpoints, one value
//! per breakpoint, and one value per open interval between consecutive
//! breakpoints (including the two unbounded tails). Constructors always
//! canonicalize, so two values are equal as functions iff they are equal as
//! structures.

use std::fmt;

use crate::bit::Bit;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    breakpoints: Vec<Rational>,
    point_values: Vec<Bit>,
    interval_values: Vec<Bit>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StepError {
    #[error("characteristic interval is empty: lower bound must be below upper")]
    EmptyInterval,
}

/// Argument of [`chi`].
#[derive(Debug, Clone)]
pub enum ChiDesc {
    Point(Rational),
    Open(Rational, Rational),
}

/// Characteristic function of a point or of a bounded open interval.
pub fn chi(desc: ChiDesc) -> Result<StepFunction, StepError> {
    match desc {
        ChiDesc::Point(t) => Ok(StepFunction {
            breakpoints: vec![t],
            point_values: vec![Bit::One],
            interval_values: vec![Bit::Zero, Bit::Zero],
        }),
        ChiDesc::Open(a, b) => {
            if a >= b {
                return Err(StepError::EmptyInterval);
            }
            Ok(StepFunction {
                breakpoints: vec![a, b],
                point_values: vec![Bit::Zero, Bit::Zero],
                interval_values: vec![Bit::Zero, Bit::One, Bit::Zero],
            })
        }
    }
}

/// `chi(ChiDesc::Point(t))` without the fallible plumbing.
pub fn chi_point(t: Rational) -> StepFunction {
    chi(ChiDesc::Point(t)).unwrap()
}

/// `chi(ChiDesc::Open(a, b))`, panicking on an empty interval.
pub fn chi_open(a: Rational, b: Rational) -> StepFunction {
    chi(ChiDesc::Open(a, b)).unwrap()
}

impl StepFunction {
    pub fn constant(v: Bit) -> Self {
        StepFunction {
            breakpoints: Vec::new(),
            point_values: Vec::new(),
            interval_values: vec![v],
        }
    }

    pub fn zero() -> Self {
        Self::constant(Bit::Zero)
    }

    pub fn one() -> Self {
        Self::constant(Bit::One)
    }

    /// Builds from raw parts and canonicalizes. Panics unless the
    /// breakpoints are strictly increasing and the lengths line up.
    pub fn from_parts(
        breakpoints: Vec<Rational>,
        point_values: Vec<Bit>,
        interval_values: Vec<Bit>,
    ) -> Self {
        assert_eq!(point_values.len(), breakpoints.len());
        assert_eq!(interval_values.len(), breakpoints.len() + 1);
        assert!(
            breakpoints.windows(2).all(|w| w[0] < w[1]),
            "breakpoints must be strictly increasing"
        );
        let mut f = StepFunction {
            breakpoints,
            point_values,
            interval_values,
        };
        f.canonicalize();
        f
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn point_values(&self) -> &[Bit] {
        &self.point_values
    }

    pub fn interval_values(&self) -> &[Bit] {
        &self.interval_values
    }

    pub fn tail_left(&self) -> Bit {
        self.interval_values[0]
    }

    pub fn tail_right(&self) -> Bit {
        *self.interval_values.last().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.breakpoints.is_empty() && self.interval_values[0].is_zero()
    }

    pub fn eval(&self, t: &Rational) -> Bit {
        match self.breakpoints.binary_search(t) {
            Ok(i) => self.point_values[i],
            Err(i) => self.interval_values[i],
        }
    }

    /// Value on the open interval immediately left of `t`, i.e. φ(t−0).
    pub fn left_limit(&self, t: &Rational) -> Bit {
        match self.breakpoints.binary_search(t) {
            Ok(i) | Err(i) => self.interval_values[i],
        }
    }

    /// φ(t+0).
    pub fn right_limit(&self, t: &Rational) -> Bit {
        match self.breakpoints.binary_search(t) {
            Ok(i) => self.interval_values[i + 1],
            Err(i) => self.interval_values[i],
        }
    }

    /// D⁻φ: t ↦ φ(t−0) ⊕ φ(t). Supported only at breakpoints of φ.
    pub fn deriv_left(&self) -> StepFunction {
        let spikes = self
            .breakpoints
            .iter()
            .enumerate()
            .map(|(i, _)| self.interval_values[i] ^ self.point_values[i])
            .collect();
        StepFunction::from_parts(
            self.breakpoints.clone(),
            spikes,
            vec![Bit::Zero; self.breakpoints.len() + 1],
        )
    }

    /// D⁺φ: t ↦ φ(t+0) ⊕ φ(t).
    pub fn deriv_right(&self) -> StepFunction {
        let spikes = self
            .breakpoints
            .iter()
            .enumerate()
            .map(|(i, _)| self.interval_values[i + 1] ^ self.point_values[i])
            .collect();
        StepFunction::from_parts(
            self.breakpoints.clone(),
            spikes,
            vec![Bit::Zero; self.breakpoints.len() + 1],
        )
    }

    /// The left limit function φ⁻: t ↦ φ(t−0).
    pub fn limit_fn_left(&self) -> StepFunction {
        let pv = (0..self.breakpoints.len())
            .map(|i| self.interval_values[i])
            .collect();
        StepFunction::from_parts(self.breakpoints.clone(), pv, self.interval_values.clone())
    }

    /// φ⁺: t ↦ φ(t+0).
    pub fn limit_fn_right(&self) -> StepFunction {
        let pv = (0..self.breakpoints.len())
            .map(|i| self.interval_values[i + 1])
            .collect();
        StepFunction::from_parts(self.breakpoints.clone(), pv, self.interval_values.clone())
    }

    fn merge_with(&self, other: &StepFunction, op: impl Fn(Bit, Bit) -> Bit) -> StepFunction {
        let mut bps: Vec<Rational> = self
            .breakpoints
            .iter()
            .chain(&other.breakpoints)
            .cloned()
            .collect();
        bps.sort();
        bps.dedup();
        let point_values = bps.iter().map(|t| op(self.eval(t), other.eval(t))).collect();
        let mut interval_values = Vec::with_capacity(bps.len() + 1);
        for i in 0..=bps.len() {
            let witness = if bps.is_empty() {
                Rational::zero()
            } else if i == 0 {
                &bps[0] - &Rational::one()
            } else if i == bps.len() {
                &bps[i - 1] + &Rational::one()
            } else {
                Rational::midpoint(&bps[i - 1], &bps[i])
            };
            interval_values.push(op(self.eval(&witness), other.eval(&witness)));
        }
        StepFunction::from_parts(bps, point_values, interval_values)
    }

    /// Pointwise XOR.
    pub fn xor(&self, other: &StepFunction) -> StepFunction {
        self.merge_with(other, |a, b| a ^ b)
    }

    /// Pointwise AND.
    pub fn and(&self, other: &StepFunction) -> StepFunction {
        self.merge_with(other, |a, b| a & b)
    }

    /// φ_τ: t ↦ φ(t − τ).
    pub fn translate(&self, tau: &Rational) -> StepFunction {
        StepFunction {
            breakpoints: self.breakpoints.iter().map(|t| t + tau).collect(),
            point_values: self.point_values.clone(),
            interval_values: self.interval_values.clone(),
        }
    }

    /// Decomposition of `{φ = 1}` into maximal connected components plus
    /// unbounded-tail flags.
    pub fn support_descriptor(&self) -> SupportDescriptor {
        let n = self.breakpoints.len();
        let left_unbounded = self.interval_values[0].is_one();
        let right_unbounded = self.interval_values[n].is_one();
        let mut components = Vec::new();
        if n == 0 {
            if self.interval_values[0].is_one() {
                components.push(SupportComponent::FullLine);
            }
            return SupportDescriptor {
                components,
                left_unbounded,
                right_unbounded,
            };
        }

        // linearize into pieces: tail, point, interval, point, ..., tail
        let mut pieces: Vec<(PieceKind, Bit)> = Vec::with_capacity(2 * n + 1);
        pieces.push((PieceKind::LeftTail, self.interval_values[0]));
        for i in 0..n {
            pieces.push((PieceKind::Point(i), self.point_values[i]));
            if i + 1 < n {
                pieces.push((PieceKind::Interval(i), self.interval_values[i + 1]));
            }
        }
        pieces.push((PieceKind::RightTail, self.interval_values[n]));

        let mut run_start: Option<usize> = None;
        for idx in 0..=pieces.len() {
            let on = idx < pieces.len() && pieces[idx].1.is_one();
            match (run_start, on) {
                (None, true) => run_start = Some(idx),
                (Some(start), false) => {
                    components.push(self.component_from_run(pieces[start].0, pieces[idx - 1].0));
                    run_start = None;
                }
                _ => {}
            }
        }
        SupportDescriptor {
            components,
            left_unbounded,
            right_unbounded,
        }
    }

    fn component_from_run(&self, start: PieceKind, end: PieceKind) -> SupportComponent {
        match (start, end) {
            (PieceKind::LeftTail, PieceKind::RightTail) => SupportComponent::FullLine,
            (PieceKind::LeftTail, PieceKind::LeftTail) => SupportComponent::LeftRay {
                hi: self.breakpoints[0].clone(),
                hi_closed: false,
            },
            (PieceKind::RightTail, PieceKind::RightTail) => SupportComponent::RightRay {
                lo: self.breakpoints[self.breakpoints.len() - 1].clone(),
                lo_closed: false,
            },
            (PieceKind::LeftTail, k) => {
                let (hi, hi_closed) = self.upper_edge(k);
                SupportComponent::LeftRay { hi, hi_closed }
            }
            (k, PieceKind::RightTail) => {
                let (lo, lo_closed) = self.lower_edge(k);
                SupportComponent::RightRay { lo, lo_closed }
            }
            (PieceKind::Point(i), PieceKind::Point(j)) if i == j => {
                SupportComponent::Point(self.breakpoints[i].clone())
            }
            (ks, ke) => {
                let (lo, lo_closed) = self.lower_edge(ks);
                let (hi, hi_closed) = self.upper_edge(ke);
                SupportComponent::Interval {
                    lo,
                    lo_closed,
                    hi,
                    hi_closed,
                }
            }
        }
    }

    fn lower_edge(&self, k: PieceKind) -> (Rational, bool) {
        match k {
            PieceKind::Point(i) => (self.breakpoints[i].clone(), true),
            PieceKind::Interval(i) => (self.breakpoints[i].clone(), false),
            _ => unreachable!("tails handled by caller"),
        }
    }

    fn upper_edge(&self, k: PieceKind) -> (Rational, bool) {
        match k {
            PieceKind::Point(i) => (self.breakpoints[i].clone(), true),
            PieceKind::Interval(i) => (self.breakpoints[i + 1].clone(), false),
            _ => unreachable!("tails handled by caller"),
        }
    }

    fn canonicalize(&mut self) {
        loop {
            let mut removed = false;
            for i in 0..self.breakpoints.len() {
                if self.point_values[i] == self.interval_values[i]
                    && self.point_values[i] == self.interval_values[i + 1]
                {
                    self.breakpoints.remove(i);
                    self.point_values.remove(i);
                    self.interval_values.remove(i);
                    removed = true;
                    break;
                }
            }
            if !removed {
                return;
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum PieceKind {
    LeftTail,
    Point(usize),
    Interval(usize),
    RightTail,
}

/// Maximal connected component of the 1-set of a step function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportComponent {
    Point(Rational),
    Interval {
        lo: Rational,
        lo_closed: bool,
        hi: Rational,
        hi_closed: bool,
    },
    LeftRay {
        hi: Rational,
        hi_closed: bool,
    },
    RightRay {
        lo: Rational,
        lo_closed: bool,
    },
    FullLine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportDescriptor {
    pub components: Vec<SupportComponent>,
    pub left_unbounded: bool,
    pub right_unbounded: bool,
}

impl SupportDescriptor {
    pub fn is_bounded(&self) -> bool {
        !self.left_unbounded && !self.right_unbounded
    }

    /// True when every component is a single point.
    pub fn is_discrete(&self) -> bool {
        self.components
            .iter()
            .all(|c| matches!(c, SupportComponent::Point(_)))
    }
}

impl fmt::Display for SupportComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportComponent::Point(t) => write!(f, "{{{t}}}"),
            SupportComponent::Interval {
                lo,
                lo_closed,
                hi,
                hi_closed,
            } => write!(
                f,
                "{}{}, {}{}",
                if *lo_closed { '[' } else { '(' },
                lo,
                hi,
                if *hi_closed { ']' } else { ')' }
            ),
            SupportComponent::LeftRay { hi, hi_closed } => {
                write!(f, "(-inf, {}{}", hi, if *hi_closed { ']' } else { ')' })
            }
            SupportComponent::RightRay { lo, lo_closed } => {
                write!(f, "{}{}, inf)", if *lo_closed { '[' } else { '(' }, lo)
            }
            SupportComponent::FullLine => f.write_str("(-inf, inf)"),
        }
    }
}
