//! The closed algebra of one-variable distributions: linear functionals on
//! test functions built from spike trains, lateral deltas, the parity
//! functional, integrated lateral derivatives, and the closure operations
//! XOR, multiplier scaling, translation, lateral limits and lateral
//! derivatives.
//!
//! Lateral limits are evaluated exactly: the pairing `<f, φ_ε>` is a step
//! function of the shift `ε` whose jumps sit at differences of critical
//! abscissas, so any `ε` below the minimal gap of those abscissas realizes
//! the limit. No approximation is involved.
//!
//! Only the two shift-toward-zero lateral limits are built in. Variant
//! limit notions (approaching a point through a one-sided punctured
//! neighborhood, say) would slot into the same stabilized-shift evaluation
//! scheme as further node kinds; the `LimitNotStabilized` guard exists for
//! such extensions, since for the built-in algebra the two confirmation
//! shifts always agree.

use crate::bit::{mod2_sum, parity_usize, Bit};
use crate::point_set::LocallyFiniteSet;
use crate::rational::Rational;
use crate::step_fn::{StepFunction, SupportComponent};
use crate::test_fn::TestFunction;
use crate::window::Window;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distribution {
    /// The regular distribution `[f]` of a locally integrable spike train:
    /// `φ ↦ XOR of φ over the support`.
    Regular(LocallyFiniteSet),
    /// Train of left lateral deltas: `φ ↦ XOR of φ(s − 0)`.
    DeltaLeft(LocallyFiniteSet),
    /// Train of right lateral deltas: `φ ↦ XOR of φ(s + 0)`.
    DeltaRight(LocallyFiniteSet),
    /// `φ ↦ parity(p + k)` over the canonical support decomposition.
    Parity,
    /// `φ ↦ ∫ D⁻φ`.
    IntDerivLeft,
    /// `φ ↦ ∫ D⁺φ`.
    IntDerivRight,
    Xor(Box<Distribution>, Box<Distribution>),
    Scale(StepFunction, Box<Distribution>),
    Translate(Rational, Box<Distribution>),
    LimitLeft(Box<Distribution>),
    LimitRight(Box<Distribution>),
    DerivLeft(Box<Distribution>),
    DerivRight(Box<Distribution>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistError {
    #[error("lateral limit failed to stabilize between confirmation shifts")]
    LimitNotStabilized,
}

/// Outcome of [`Distribution::classify_regularity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regularity {
    /// Equal to the regular distribution of the given spike support.
    Regular(LocallyFiniteSet),
    Singular,
    Unknown,
}

impl Distribution {
    /// The null distribution.
    pub fn zero() -> Self {
        Distribution::Regular(LocallyFiniteSet::empty())
    }

    /// `[δ_t]`, a genuine function: the indicator of `{t}`.
    pub fn delta(t: Rational) -> Self {
        Distribution::Regular(LocallyFiniteSet::singleton(t))
    }

    pub fn is_zero_node(&self) -> bool {
        matches!(self, Distribution::Regular(s) if s.is_empty())
    }

    /// Exact application `<f, φ>`.
    pub fn apply(&self, phi: &TestFunction) -> Result<Bit, DistError> {
        self.apply_traced(phi, &mut NoTrace)
    }

    /// Application with a hook that observes each node and every chosen
    /// stabilization shift.
    pub fn apply_traced(&self, phi: &TestFunction, tracer: &mut dyn Tracer) -> Result<Bit, DistError> {
        tracer.enter(self, phi);
        let out = match self {
            Distribution::Regular(s) => {
                let bit = match phi.hull() {
                    None => Bit::Zero,
                    Some((lo, hi)) => {
                        let w = Window::new(lo, hi);
                        mod2_sum(s.enumerate(&w).iter().map(|t| phi.eval(t)))
                    }
                };
                Ok(bit)
            }
            Distribution::DeltaLeft(s) => {
                let bit = match phi.hull() {
                    None => Bit::Zero,
                    Some((lo, hi)) => {
                        let w = Window::new(lo, hi).padded(&Rational::one());
                        mod2_sum(s.enumerate(&w).iter().map(|t| phi.left_limit(t)))
                    }
                };
                Ok(bit)
            }
            Distribution::DeltaRight(s) => {
                let bit = match phi.hull() {
                    None => Bit::Zero,
                    Some((lo, hi)) => {
                        let w = Window::new(lo, hi).padded(&Rational::one());
                        mod2_sum(s.enumerate(&w).iter().map(|t| phi.right_limit(t)))
                    }
                };
                Ok(bit)
            }
            Distribution::Parity => {
                let (p, k) = phi.component_count();
                Ok(parity_usize(p + k))
            }
            Distribution::IntDerivLeft => Ok(phi
                .deriv_left()
                .integral()
                .expect("lateral derivative has discrete support")),
            Distribution::IntDerivRight => Ok(phi
                .deriv_right()
                .integral()
                .expect("lateral derivative has discrete support")),
            Distribution::Xor(a, b) => {
                Ok(a.apply_traced(phi, tracer)? ^ b.apply_traced(phi, tracer)?)
            }
            Distribution::Scale(psi, a) => a.apply_traced(&phi.scale_by(psi), tracer),
            Distribution::Translate(tau, a) => a.apply_traced(&phi.translate(&-tau), tracer),
            Distribution::LimitLeft(a) => a.stabilized_limit(phi, Side::Left, tracer),
            Distribution::LimitRight(a) => a.stabilized_limit(phi, Side::Right, tracer),
            Distribution::DerivLeft(a) => {
                Ok(a.apply_traced(phi, tracer)? ^ a.stabilized_limit(phi, Side::Left, tracer)?)
            }
            Distribution::DerivRight(a) => {
                Ok(a.apply_traced(phi, tracer)? ^ a.stabilized_limit(phi, Side::Right, tracer)?)
            }
        };
        if let Ok(bit) = &out {
            tracer.leave(self, *bit);
        }
        out
    }

    /// `lim <self, φ_{±ε}>` by exact gap analysis: the evaluation shift is
    /// pinned strictly below every jump of the shift-to-value step function.
    fn stabilized_limit(
        &self,
        phi: &TestFunction,
        side: Side,
        tracer: &mut dyn Tracer,
    ) -> Result<Bit, DistError> {
        let window = match phi.hull() {
            Some((lo, hi)) => Window::new(lo, hi).padded(&Rational::one()),
            None => Window::new(Rational::from_int(-1), Rational::from_int(1)),
        };
        let mut abscissas = self.critical_abscissas(&window);
        abscissas.extend_from_slice(phi.breakpoints());
        let eps_star = Rational::min(
            Rational::from_pair(1, 2),
            min_positive_gap(&mut abscissas)
                .map(|g| g.half())
                .unwrap_or_else(Rational::one),
        );
        let eval_at = |eps: Rational, tracer: &mut dyn Tracer| {
            let shift = match side {
                Side::Left => eps,
                Side::Right => -eps,
            };
            self.apply_traced(&phi.translate(&shift), tracer)
        };
        let primary = eps_star.half();
        tracer.limit_shift(side, &primary);
        let v1 = eval_at(primary, tracer)?;
        let v2 = eval_at(eps_star.half().half(), tracer)?;
        if v1 != v2 {
            return Err(DistError::LimitNotStabilized);
        }
        Ok(v1)
    }

    /// All abscissas inside `w` at which the node's behavior can change:
    /// supports of spike and delta atoms, breakpoints of multipliers,
    /// shifted through translations.
    pub fn critical_abscissas(&self, w: &Window) -> Vec<Rational> {
        match self {
            Distribution::Regular(s) | Distribution::DeltaLeft(s) | Distribution::DeltaRight(s) => {
                s.enumerate(w)
            }
            Distribution::Parity | Distribution::IntDerivLeft | Distribution::IntDerivRight => {
                Vec::new()
            }
            Distribution::Xor(a, b) => {
                let mut out = a.critical_abscissas(w);
                out.extend(b.critical_abscissas(w));
                out
            }
            Distribution::Scale(psi, a) => {
                let mut out = psi.breakpoints().to_vec();
                out.extend(a.critical_abscissas(w));
                out
            }
            Distribution::Translate(tau, a) => a
                .critical_abscissas(&w.translated(&-tau))
                .into_iter()
                .map(|t| &t + tau)
                .collect(),
            Distribution::LimitLeft(a)
            | Distribution::LimitRight(a)
            | Distribution::DerivLeft(a)
            | Distribution::DerivRight(a) => a.critical_abscissas(w),
        }
    }

    /// XOR of two distributions as functionals.
    pub fn xor_dist(self, other: Distribution) -> Distribution {
        Distribution::Xor(Box::new(self), Box::new(other))
    }

    /// Translation `f_τ`; spike-train nodes absorb the shift.
    pub fn translate_dist(self, tau: Rational) -> Distribution {
        if tau.is_zero() {
            return self;
        }
        match self {
            Distribution::Regular(s) => Distribution::Regular(s.translated(&tau)),
            Distribution::DeltaLeft(s) => Distribution::DeltaLeft(s.translated(&tau)),
            Distribution::DeltaRight(s) => Distribution::DeltaRight(s.translated(&tau)),
            Distribution::Parity => Distribution::Parity,
            Distribution::IntDerivLeft => Distribution::IntDerivLeft,
            Distribution::IntDerivRight => Distribution::IntDerivRight,
            Distribution::Translate(sigma, a) => {
                let total = &tau + &sigma;
                if total.is_zero() {
                    *a
                } else {
                    Distribution::Translate(total, a)
                }
            }
            other => Distribution::Translate(tau, Box::new(other)),
        }
    }

    /// Multiplier product `ψ · f`; a regular child keeps only the support
    /// points where the multiplier is 1.
    pub fn scale_dist(psi: StepFunction, f: Distribution) -> Distribution {
        if psi == StepFunction::one() {
            return f;
        }
        if psi.is_zero() {
            return Distribution::zero();
        }
        match f {
            Distribution::Regular(s) => {
                Distribution::Regular(restrict_to_one_region(&s, &psi))
            }
            other => Distribution::Scale(psi, Box::new(other)),
        }
    }

    /// Left lateral limit `f⁻`, with the iteration rules applied where the
    /// node shape makes them available.
    pub fn limit_left(self) -> Distribution {
        match self {
            Distribution::Regular(s) => Distribution::DeltaLeft(s),
            Distribution::DeltaLeft(s) => Distribution::DeltaLeft(s),
            Distribution::DeltaRight(s) => Distribution::DeltaLeft(s),
            Distribution::Parity => Distribution::Parity,
            Distribution::IntDerivLeft => Distribution::IntDerivLeft,
            Distribution::IntDerivRight => Distribution::IntDerivRight,
            Distribution::LimitLeft(a) => Distribution::LimitLeft(a),
            Distribution::LimitRight(a) => a.limit_left(),
            other => Distribution::LimitLeft(Box::new(other)),
        }
    }

    /// Right lateral limit `f⁺`.
    pub fn limit_right(self) -> Distribution {
        match self {
            Distribution::Regular(s) => Distribution::DeltaRight(s),
            Distribution::DeltaLeft(s) => Distribution::DeltaRight(s),
            Distribution::DeltaRight(s) => Distribution::DeltaRight(s),
            Distribution::Parity => Distribution::Parity,
            Distribution::IntDerivLeft => Distribution::IntDerivLeft,
            Distribution::IntDerivRight => Distribution::IntDerivRight,
            Distribution::LimitRight(a) => Distribution::LimitRight(a),
            Distribution::LimitLeft(a) => a.limit_right(),
            other => Distribution::LimitRight(Box::new(other)),
        }
    }

    /// Left derivative `D⁻f = f ⊕ f⁻`. Composing lateral derivatives
    /// collapses to the inner one.
    pub fn deriv_left_dist(self) -> Distribution {
        match self {
            Distribution::DerivLeft(a) => Distribution::DerivLeft(a),
            Distribution::DerivRight(a) => Distribution::DerivRight(a),
            other => Distribution::DerivLeft(Box::new(other)),
        }
    }

    /// Right derivative `D⁺f = f ⊕ f⁺`.
    pub fn deriv_right_dist(self) -> Distribution {
        match self {
            Distribution::DerivLeft(a) => Distribution::DerivLeft(a),
            Distribution::DerivRight(a) => Distribution::DerivRight(a),
            other => Distribution::DerivRight(Box::new(other)),
        }
    }

    /// Rewrites the expression as a XOR of atoms (point evaluations, left
    /// and right lateral limits, and the parity functional) and reads the
    /// verdict off the surviving coefficient sets.
    pub fn classify_regularity(&self) -> Regularity {
        match self.normal_form() {
            None => Regularity::Unknown,
            Some(nf) => {
                if nf.parity.is_one() || !nf.left.is_empty() || !nf.right.is_empty() {
                    Regularity::Singular
                } else {
                    Regularity::Regular(nf.point)
                }
            }
        }
    }

    /// Atom decomposition; `None` when a multiplier blocks it (a non-constant
    /// multiplier against the parity functional has no atom form).
    pub fn normal_form(&self) -> Option<AtomForm> {
        match self {
            Distribution::Regular(s) => Some(AtomForm::point(s.clone())),
            Distribution::DeltaLeft(s) => Some(AtomForm {
                left: s.clone(),
                ..AtomForm::default()
            }),
            Distribution::DeltaRight(s) => Some(AtomForm {
                right: s.clone(),
                ..AtomForm::default()
            }),
            Distribution::Parity | Distribution::IntDerivLeft | Distribution::IntDerivRight => {
                // the three coincide as functionals: both integrated jump
                // counts have the parity of p + k
                Some(AtomForm {
                    parity: Bit::One,
                    ..AtomForm::default()
                })
            }
            Distribution::Xor(a, b) => Some(a.normal_form()?.xor(&b.normal_form()?)),
            Distribution::Translate(tau, a) => Some(a.normal_form()?.translated(tau)),
            Distribution::Scale(psi, a) => {
                let nf = a.normal_form()?;
                if nf.parity.is_one() && *psi != StepFunction::one() {
                    return None;
                }
                Some(AtomForm {
                    point: restrict_to_one_region(&nf.point, psi),
                    left: restrict_to_one_region(&nf.left, &psi.limit_fn_left()),
                    right: restrict_to_one_region(&nf.right, &psi.limit_fn_right()),
                    parity: nf.parity,
                })
            }
            Distribution::LimitLeft(a) => Some(a.normal_form()?.limit_left()),
            Distribution::LimitRight(a) => Some(a.normal_form()?.limit_right()),
            Distribution::DerivLeft(a) => {
                let nf = a.normal_form()?;
                Some(nf.xor(&nf.limit_left()))
            }
            Distribution::DerivRight(a) => {
                let nf = a.normal_form()?;
                Some(nf.xor(&nf.limit_right()))
            }
        }
    }
}

/// XOR-of-atoms representation of a closed-algebra distribution.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AtomForm {
    /// Support of the point-evaluation part.
    pub point: LocallyFiniteSet,
    /// Support of the left-lateral part.
    pub left: LocallyFiniteSet,
    /// Support of the right-lateral part.
    pub right: LocallyFiniteSet,
    /// Coefficient of the parity functional.
    pub parity: Bit,
}

impl AtomForm {
    fn point(s: LocallyFiniteSet) -> Self {
        AtomForm {
            point: s,
            ..AtomForm::default()
        }
    }

    pub fn xor(&self, other: &AtomForm) -> AtomForm {
        AtomForm {
            point: self.point.sym_diff(&other.point),
            left: self.left.sym_diff(&other.left),
            right: self.right.sym_diff(&other.right),
            parity: self.parity ^ other.parity,
        }
    }

    fn translated(&self, tau: &Rational) -> AtomForm {
        AtomForm {
            point: self.point.translated(tau),
            left: self.left.translated(tau),
            right: self.right.translated(tau),
            parity: self.parity,
        }
    }

    /// Taking the lateral limit sends every set atom to the same-side
    /// lateral atom and fixes the parity functional.
    pub fn limit_left(&self) -> AtomForm {
        AtomForm {
            point: LocallyFiniteSet::empty(),
            left: self.point.sym_diff(&self.left).sym_diff(&self.right),
            right: LocallyFiniteSet::empty(),
            parity: self.parity,
        }
    }

    pub fn limit_right(&self) -> AtomForm {
        AtomForm {
            point: LocallyFiniteSet::empty(),
            left: LocallyFiniteSet::empty(),
            right: self.point.sym_diff(&self.left).sym_diff(&self.right),
            parity: self.parity,
        }
    }

    /// True when the functional is a finite XOR of point and lateral atoms.
    pub fn is_finite_atomic(&self) -> bool {
        self.parity.is_zero()
            && self.point.classify() == crate::point_set::SetClass::Finite
            && self.left.classify() == crate::point_set::SetClass::Finite
            && self.right.classify() == crate::point_set::SetClass::Finite
    }

    /// Rebuilds a distribution from the atom form.
    pub fn to_distribution(&self) -> Distribution {
        let mut acc: Option<Distribution> = None;
        let mut push = |d: Distribution| {
            acc = Some(match acc.take() {
                None => d,
                Some(cur) => cur.xor_dist(d),
            });
        };
        if !self.point.is_empty() {
            push(Distribution::Regular(self.point.clone()));
        }
        if !self.left.is_empty() {
            push(Distribution::DeltaLeft(self.left.clone()));
        }
        if !self.right.is_empty() {
            push(Distribution::DeltaRight(self.right.clone()));
        }
        if self.parity.is_one() {
            push(Distribution::Parity);
        }
        acc.unwrap_or_else(Distribution::zero)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Observer for traced application.
pub trait Tracer {
    fn enter(&mut self, node: &Distribution, phi: &TestFunction);
    fn leave(&mut self, node: &Distribution, value: Bit);
    fn limit_shift(&mut self, side: Side, eps: &Rational);
}

/// Tracer that records nothing.
pub struct NoTrace;

impl Tracer for NoTrace {
    fn enter(&mut self, _: &Distribution, _: &TestFunction) {}
    fn leave(&mut self, _: &Distribution, _: Bit) {}
    fn limit_shift(&mut self, _: Side, _: &Rational) {}
}

/// Minimal positive difference between adjacent sorted abscissas.
fn min_positive_gap(values: &mut Vec<Rational>) -> Option<Rational> {
    values.sort();
    values.dedup();
    values
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
}

/// `s ∩ {ψ = 1}`, exact. Intersection distributes over the symmetric
/// difference, so each progression and toggle is clipped independently
/// against the maximal 1-regions of the multiplier.
pub fn restrict_to_one_region(s: &LocallyFiniteSet, psi: &StepFunction) -> LocallyFiniteSet {
    use crate::point_set::{Progression, ProgressionRange};
    let desc = psi.support_descriptor();
    let mut result = LocallyFiniteSet::empty();
    let mut add = |piece: LocallyFiniteSet| {
        result = result.sym_diff(&piece);
    };
    // toggles: direct membership test
    let kept: Vec<Rational> = s
        .toggles()
        .iter()
        .filter(|t| psi.eval(t).is_one())
        .cloned()
        .collect();
    add(LocallyFiniteSet::from_points(kept));
    for prog in s.progressions() {
        for comp in &desc.components {
            match comp {
                SupportComponent::FullLine => {
                    add(LocallyFiniteSet::from_progression(prog.clone()));
                }
                SupportComponent::Point(t) => {
                    if prog.contains(t) {
                        add(LocallyFiniteSet::singleton(t.clone()));
                    }
                }
                SupportComponent::Interval {
                    lo,
                    lo_closed,
                    hi,
                    hi_closed,
                } => {
                    let pts: Vec<Rational> = prog
                        .enumerate(&Window::new(lo.clone(), hi.clone()))
                        .into_iter()
                        .filter(|t| (t > lo || (*lo_closed && t == lo)) && (t < hi || (*hi_closed && t == hi)))
                        .collect();
                    add(LocallyFiniteSet::from_points(pts));
                }
                SupportComponent::LeftRay { hi, hi_closed } => {
                    add(clip_progression(prog, hi, *hi_closed, true));
                }
                SupportComponent::RightRay { lo, lo_closed } => {
                    add(clip_progression(prog, lo, *lo_closed, false));
                }
            }
        }
    }
    // helper for ray clipping
    fn clip_progression(
        prog: &Progression,
        bound: &Rational,
        closed: bool,
        keep_below: bool,
    ) -> LocallyFiniteSet {
        let period = prog.period().clone();
        // z-range of lattice members on the kept side
        let steps = (bound - prog.offset()) / period.clone();
        if keep_below {
            // members t <= bound (or < bound when open)
            let mut z_max = steps.floor();
            let boundary_hit = steps.is_integer() && !closed;
            if boundary_hit {
                z_max -= 1;
            }
            match prog.range() {
                ProgressionRange::AllIntegers | ProgressionRange::NonPositive => {
                    let own_max = match prog.range() {
                        ProgressionRange::NonPositive => num_bigint::BigInt::from(0).min(z_max),
                        _ => z_max,
                    };
                    let offset = prog.offset()
                        + &(Rational::new(own_max, num_bigint::BigInt::from(1)).unwrap()
                            * period.clone());
                    LocallyFiniteSet::from_progression(
                        Progression::new(offset, period, ProgressionRange::NonPositive).unwrap(),
                    )
                }
                ProgressionRange::NonNegative => {
                    // finite block offset .. bound
                    let mut pts = Vec::new();
                    let mut t = prog.offset().clone();
                    while &t < bound || (closed && &t == bound) {
                        pts.push(t.clone());
                        t = &t + &period;
                    }
                    LocallyFiniteSet::from_points(pts)
                }
            }
        } else {
            // members t >= bound (or > bound when open)
            let mut z_min = steps.ceil();
            let boundary_hit = steps.is_integer() && !closed;
            if boundary_hit {
                z_min += 1;
            }
            match prog.range() {
                ProgressionRange::AllIntegers | ProgressionRange::NonNegative => {
                    let own_min = match prog.range() {
                        ProgressionRange::NonNegative => num_bigint::BigInt::from(0).max(z_min),
                        _ => z_min,
                    };
                    let offset = prog.offset()
                        + &(Rational::new(own_min, num_bigint::BigInt::from(1)).unwrap()
                            * period.clone());
                    LocallyFiniteSet::from_progression(
                        Progression::new(offset, period, ProgressionRange::NonNegative).unwrap(),
                    )
                }
                ProgressionRange::NonPositive => {
                    let mut pts = Vec::new();
                    let mut t = prog.offset().clone();
                    while &t > bound || (closed && &t == bound) {
                        pts.push(t.clone());
                        t = &t - &period;
                    }
                    LocallyFiniteSet::from_points(pts)
                }
            }
        }
    }
    result
}

/// Built-in positive sequences converging to zero.
#[derive(Debug, Clone)]
pub enum TauSpec {
    /// `τ_n = 1 / (n + 1)`.
    Harmonic,
    /// `τ_n = c / (n + 1)` for a positive rational `c`.
    HarmonicScaled(Rational),
}

impl TauSpec {
    pub fn term(&self, n: usize) -> Rational {
        let base = Rational::from_pair(1, (n + 1) as i64);
        match self {
            TauSpec::Harmonic => base,
            TauSpec::HarmonicScaled(c) => c * &base,
        }
    }
}

/// Report for one of the two convergence sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceReport {
    pub values: Vec<Bit>,
    pub stabilized: bool,
    pub limit: Bit,
    /// 1-based first rank from which the sequence stays constant.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub left: SequenceReport,
    pub right: SequenceReport,
}

fn analyze_sequence(values: Vec<Bit>) -> SequenceReport {
    let n = values.len();
    let last = *values.last().expect("nonempty sequence");
    let mut rank = n;
    while rank > 1 && values[rank - 2] == last {
        rank -= 1;
    }
    let stabilized = n + 1 - rank >= 3;
    SequenceReport {
        values,
        stabilized,
        limit: last,
        rank,
    }
}

/// Evaluates the two defining sequences `<f, ψ·φ_{τ_n}>` and
/// `<f, ψ·φ_{−τ_n}>` for `n = 1..=n_max` and reports where they become
/// constant.
pub fn convergence_check(
    f: &Distribution,
    psi: &StepFunction,
    phi: &TestFunction,
    tau: &TauSpec,
    n_max: usize,
) -> Result<ConvergenceReport, DistError> {
    assert!(n_max >= 1);
    let mut left = Vec::with_capacity(n_max);
    let mut right = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let t = tau.term(n);
        left.push(f.apply(&phi.translate(&t).scale_by(psi))?);
        right.push(f.apply(&phi.translate(&-&t).scale_by(psi))?);
    }
    Ok(ConvergenceReport {
        left: analyze_sequence(left),
        right: analyze_sequence(right),
    })
}

/// Verdict of [`counterexample_naive_limit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CounterexampleVerdict {
    /// The translated sequence is constant yet differs from the value on the
    /// left-limit function: the naive limit identity fails.
    Refuted,
    /// The identity happens to hold for this input.
    IdentityHolds,
    /// Degenerate input (the zero function); nothing is refuted.
    NotACounterexampleInput,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    /// `<parity, φ_{τ_n}>` for `n = 1..=n_max`.
    pub sequence: Vec<Bit>,
    pub sequence_constant: bool,
    /// `<parity, φ⁻>`, the target the naive identity would predict.
    pub naive_target: Bit,
    pub verdict: CounterexampleVerdict,
}

/// Runs the classical refutation of `lim <f, φ_{τ_n}> = <f, φ⁻>` for the
/// parity functional. The default input is the open unit indicator, whose
/// translated pairings are constantly 1 while the pairing against its
/// left-limit function is 0.
pub fn counterexample_naive_limit(
    n_max: usize,
    phi: Option<TestFunction>,
) -> Result<CounterexampleReport, DistError> {
    assert!(n_max >= 3, "need at least three sequence terms");
    let phi = match phi {
        Some(p) => p,
        None => TestFunction::try_from_step(crate::step_fn::chi_open(
            Rational::zero(),
            Rational::one(),
        ))
        .expect("bounded"),
    };
    let f = Distribution::Parity;
    let tau = TauSpec::Harmonic;
    let mut sequence = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        sequence.push(f.apply(&phi.translate(&tau.term(n)))?);
    }
    let naive_target = f.apply(&phi.limit_fn_left())?;
    let sequence_constant = sequence.windows(2).all(|w| w[0] == w[1]);
    let verdict = if phi.is_zero() {
        CounterexampleVerdict::NotACounterexampleInput
    } else if sequence_constant && sequence[0] != naive_target {
        CounterexampleVerdict::Refuted
    } else {
        CounterexampleVerdict::IdentityHolds
    };
    Ok(CounterexampleReport {
        sequence,
        sequence_constant,
        naive_target,
        verdict,
    })
}
