//! The four fundamental functions attached to a distribution `f`:
//!
//! - `F(t', t'') = <f, χ_(t',t'')>` on open intervals,
//! - `F₀(t) = <f, χ_{t}>` on points,
//! - `F*(t) = lim F(t−ε, t)` and `F_*(t) = lim F(t, t+ε)`,
//!
//! plus the support probes, the vanishing-family decomposition of a window
//! and the regularity criterion (`F₀` locally finite and `F* = F_* = 0`).

use crate::bit::Bit;
use crate::dist::{DistError, Distribution};
use crate::rational::Rational;
use crate::step_fn::{chi_open, chi_point};
use crate::test_fn::TestFunction;
use crate::window::Window;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FundError {
    #[error("no strictly increasing family makes the interval pairings vanish in this window")]
    NoVanishingFamily,
    #[error(transparent)]
    Dist(#[from] DistError),
}

/// Evaluator bundle for the fundamental functions of one distribution.
///
/// Evaluation is pure recomputation; nothing is cached, which keeps the
/// bundle trivially safe to share.
#[derive(Debug, Clone)]
pub struct FundamentalBundle {
    source: Distribution,
}

/// Which fundamental function witnessed singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessFunction {
    FZero,
    FStar,
    FSubstar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegularityVerdict {
    RegularOnWindow,
    SingularWitness {
        at: Rational,
        function: WitnessFunction,
    },
}

/// Window report of the support probes that carry value 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportWindowReport {
    pub probe_family: Vec<Rational>,
    /// Adjacent probe pairs `(a, b)` with `F(a, b) = 1`.
    pub pair_hits: Vec<(Rational, Rational)>,
    /// Probe points with `F₀ = 1`.
    pub point_hits: Vec<Rational>,
}

impl FundamentalBundle {
    pub fn new(source: Distribution) -> Self {
        FundamentalBundle { source }
    }

    pub fn source(&self) -> &Distribution {
        &self.source
    }

    /// `F(t', t'')`; zero whenever `t' >= t''`.
    pub fn f_open(&self, lo: &Rational, hi: &Rational) -> Result<Bit, DistError> {
        if lo >= hi {
            return Ok(Bit::Zero);
        }
        let phi = TestFunction::try_from_step(chi_open(lo.clone(), hi.clone()))
            .expect("open indicator is a test function");
        self.source.apply(&phi)
    }

    /// `F₀(t)`.
    pub fn f_point(&self, t: &Rational) -> Result<Bit, DistError> {
        let phi = TestFunction::try_from_step(chi_point(t.clone()))
            .expect("point indicator is a test function");
        self.source.apply(&phi)
    }

    /// `F*(t) = lim F(t−ε, t)`, resolved by exact gap analysis.
    pub fn f_star(&self, t: &Rational) -> Result<Bit, DistError> {
        let eps = self.probe_shift(t);
        let v1 = self.f_open(&(t - &eps), t)?;
        let v2 = self.f_open(&(t - &eps.half()), t)?;
        if v1 != v2 {
            return Err(DistError::LimitNotStabilized);
        }
        Ok(v1)
    }

    /// `F_*(t) = lim F(t, t+ε)`.
    pub fn f_substar(&self, t: &Rational) -> Result<Bit, DistError> {
        let eps = self.probe_shift(t);
        let v1 = self.f_open(t, &(t + &eps))?;
        let v2 = self.f_open(t, &(t + &eps.half()))?;
        if v1 != v2 {
            return Err(DistError::LimitNotStabilized);
        }
        Ok(v1)
    }

    /// A shift strictly below half the minimal gap of the critical
    /// abscissas around `t`, so the shrinking interval pairings have
    /// already reached their limit.
    fn probe_shift(&self, t: &Rational) -> Rational {
        let w = Window::new(t - &Rational::one(), t + &Rational::one());
        let mut abscissas = self.source.critical_abscissas(&w);
        abscissas.push(t.clone());
        abscissas.sort();
        abscissas.dedup();
        let min_gap = abscissas
            .windows(2)
            .map(|p| &p[1] - &p[0])
            .min()
            .unwrap_or_else(Rational::one);
        Rational::min(Rational::from_pair(1, 2), min_gap.half()).half()
    }

    /// Indicator of `(t', t'') ∈ supp F`.
    pub fn support_indicator(&self, lo: &Rational, hi: &Rational) -> Result<Bit, DistError> {
        self.f_open(lo, hi)
    }

    /// Probes the window over the source's critical abscissas and reports
    /// which pairs and points carry value 1.
    pub fn support_window_report(&self, w: &Window) -> Result<SupportWindowReport, DistError> {
        let family = self.probe_family(w);
        let mut pair_hits = Vec::new();
        let mut point_hits = Vec::new();
        for t in &family {
            if self.f_point(t)?.is_one() {
                point_hits.push(t.clone());
            }
        }
        for pair in family.windows(2) {
            if self.f_open(&pair[0], &pair[1])?.is_one() {
                pair_hits.push((pair[0].clone(), pair[1].clone()));
            }
        }
        Ok(SupportWindowReport {
            probe_family: family,
            pair_hits,
            point_hits,
        })
    }

    fn probe_family(&self, w: &Window) -> Vec<Rational> {
        let mut family = self.source.critical_abscissas(w);
        family.retain(|t| w.contains(t));
        family.push(w.lo().clone());
        family.push(w.hi().clone());
        family.sort();
        family.dedup();
        family
    }

    /// Strictly increasing family `t_0 < ... < t_m` covering the window such
    /// that between consecutive members the distribution carries no point
    /// mass and each interval pairing is explained by its endpoint laterals:
    /// `F(t_i, t_{i+1}) = F_*(t_i) ⊕ F*(t_{i+1})`.
    ///
    /// Sources whose point mass is everywhere (the parity functional and
    /// the integrated lateral derivatives) admit no such family.
    pub fn decompose(&self, w: &Window) -> Result<Vec<Rational>, FundError> {
        const MAX_REFINEMENTS: usize = 3;
        let mut family = self.probe_family(w);
        for _ in 0..=MAX_REFINEMENTS {
            let mut refinements: Vec<Rational> = Vec::new();
            for pair in family.windows(2) {
                let (a, b) = (&pair[0], &pair[1]);
                let mid = Rational::midpoint(a, b);
                let probes = [
                    mid.clone(),
                    Rational::midpoint(a, &mid),
                    Rational::midpoint(&mid, b),
                ];
                let mut bad = false;
                for p in &probes {
                    if self.f_point(p)?.is_one() {
                        refinements.push(p.clone());
                        bad = true;
                    }
                }
                if bad {
                    continue;
                }
                let lhs = self.f_open(a, b)?;
                let rhs = self.f_substar(a)? ^ self.f_star(b)?;
                if lhs != rhs {
                    refinements.push(mid);
                }
            }
            if refinements.is_empty() {
                return Ok(family);
            }
            family.extend(refinements);
            family.sort();
            family.dedup();
        }
        Err(FundError::NoVanishingFamily)
    }

    /// Checks `F₀` locally finite and `F* = F_* = 0` over the window's
    /// critical abscissas, midpoints and endpoints. The verdict is scoped
    /// to the window.
    pub fn regularity_criterion(&self, w: &Window) -> Result<RegularityVerdict, DistError> {
        let family = self.probe_family(w);
        let criticals: Vec<Rational> = self.source.critical_abscissas(w);
        let mut probes: Vec<(Rational, bool)> = Vec::new();
        for t in &family {
            probes.push((t.clone(), criticals.contains(t)));
        }
        for pair in family.windows(2) {
            probes.push((Rational::midpoint(&pair[0], &pair[1]), false));
        }
        probes.sort_by(|a, b| a.0.cmp(&b.0));
        for (t, is_critical) in &probes {
            if self.f_star(t)?.is_one() {
                return Ok(RegularityVerdict::SingularWitness {
                    at: t.clone(),
                    function: WitnessFunction::FStar,
                });
            }
            if self.f_substar(t)?.is_one() {
                return Ok(RegularityVerdict::SingularWitness {
                    at: t.clone(),
                    function: WitnessFunction::FSubstar,
                });
            }
            if !is_critical && self.f_point(t)?.is_one() {
                // point mass away from every critical abscissa means the
                // 1-set of F₀ is not locally finite
                return Ok(RegularityVerdict::SingularWitness {
                    at: t.clone(),
                    function: WitnessFunction::FZero,
                });
            }
        }
        Ok(RegularityVerdict::RegularOnWindow)
    }

    /// The reconstruction functional fed with this bundle's own pair and
    /// point evaluators.
    pub fn to_functional(&self) -> ReconstructedFunctional {
        let pair_src = self.clone();
        let point_src = self.clone();
        ReconstructedFunctional {
            pair: Box::new(move |a, b| {
                pair_src
                    .f_open(a, b)
                    .expect("closed-algebra pairings stabilize")
            }),
            point: Box::new(move |t| {
                point_src
                    .f_point(t)
                    .expect("closed-algebra pairings stabilize")
            }),
        }
    }
}

/// Interval pairing data `(t', t'') -> Bit`.
pub type PairEvaluator = Box<dyn Fn(&Rational, &Rational) -> Bit>;
/// Point pairing data `t -> Bit`.
pub type PointEvaluator = Box<dyn Fn(&Rational) -> Bit>;

/// A functional rebuilt from abstract pair and point data: applications
/// decompose the test function over its own breakpoints.
pub struct ReconstructedFunctional {
    pair: PairEvaluator,
    point: PointEvaluator,
}

/// Wraps caller-supplied pair and point evaluators. The caller asserts the
/// linearity-compatibility of the data; violations surface as mismatches in
/// the round-trip property tests.
pub fn from_fundamental(
    pair: impl Fn(&Rational, &Rational) -> Bit + 'static,
    point: impl Fn(&Rational) -> Bit + 'static,
) -> ReconstructedFunctional {
    ReconstructedFunctional {
        pair: Box::new(pair),
        point: Box::new(point),
    }
}

impl ReconstructedFunctional {
    /// `⊕ F₀(t_i)·φ(t_i) ⊕ ⊕ F(t_i, t_{i+1})·φ(midpoint)` over φ's own
    /// breakpoints.
    pub fn apply(&self, phi: &TestFunction) -> Bit {
        let bps = phi.breakpoints();
        let mut acc = Bit::Zero;
        for t in bps {
            acc = acc ^ ((self.point)(t) & phi.eval(t));
        }
        for pair in bps.windows(2) {
            let mid = Rational::midpoint(&pair[0], &pair[1]);
            acc = acc ^ ((self.pair)(&pair[0], &pair[1]) & phi.eval(&mid));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_set::LocallyFiniteSet;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn pts(list: &[&str]) -> LocallyFiniteSet {
        LocallyFiniteSet::from_points(list.iter().map(|s| q(s)))
    }

    fn tf(f: crate::step_fn::StepFunction) -> TestFunction {
        TestFunction::try_from_step(f).unwrap()
    }

    #[test]
    fn open_and_point_pairings() {
        let b = FundamentalBundle::new(Distribution::Regular(pts(&["0"])));
        assert_eq!(b.f_open(&q("-1"), &q("1")), Ok(Bit::One));
        assert_eq!(b.f_point(&q("0")), Ok(Bit::One));
        assert_eq!(b.f_point(&q("1")), Ok(Bit::Zero));
        assert_eq!(b.f_open(&q("1"), &q("1")), Ok(Bit::Zero));
        assert_eq!(b.f_open(&q("2"), &q("1")), Ok(Bit::Zero));
    }

    #[test]
    fn one_sided_limits() {
        let reg = FundamentalBundle::new(Distribution::Regular(pts(&["0"])));
        assert_eq!(reg.f_star(&q("0")), Ok(Bit::Zero));
        assert_eq!(reg.f_substar(&q("0")), Ok(Bit::Zero));

        let dl = FundamentalBundle::new(Distribution::DeltaLeft(pts(&["0"])));
        assert_eq!(dl.f_star(&q("0")), Ok(Bit::One));
        assert_eq!(dl.f_substar(&q("0")), Ok(Bit::Zero));

        let zero = FundamentalBundle::new(Distribution::zero());
        for t in ["-1", "0", "7/3"] {
            assert_eq!(zero.f_star(&q(t)), Ok(Bit::Zero));
        }
    }

    #[test]
    fn support_probes() {
        let b = FundamentalBundle::new(Distribution::Regular(pts(&["0"])));
        assert_eq!(b.support_indicator(&q("-1"), &q("1")), Ok(Bit::One));
        let z = FundamentalBundle::new(Distribution::zero());
        assert_eq!(z.support_indicator(&q("-1"), &q("1")), Ok(Bit::Zero));
        let p = FundamentalBundle::new(Distribution::Parity);
        assert_eq!(p.support_indicator(&q("2"), &q("9/4")), Ok(Bit::One));
    }

    #[test]
    fn chasles_additivity() {
        let b = FundamentalBundle::new(
            Distribution::Regular(pts(&["0", "1"]))
                .xor_dist(Distribution::DeltaLeft(pts(&["1/2"]))),
        );
        let (a, m, c) = (q("-1"), q("1/2"), q("2"));
        let lhs = b.f_open(&a, &c).unwrap();
        let rhs =
            b.f_open(&a, &m).unwrap() ^ b.f_point(&m).unwrap() ^ b.f_open(&m, &c).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn decompose_examples() {
        let b = FundamentalBundle::new(Distribution::Regular(pts(&["0", "1"])));
        let w = Window::new(q("-1"), q("2"));
        assert_eq!(b.decompose(&w), Ok(vec![q("-1"), q("0"), q("1"), q("2")]));
        assert_eq!(b.f_open(&q("0"), &q("1")), Ok(Bit::Zero));

        let z = FundamentalBundle::new(Distribution::zero());
        assert_eq!(z.decompose(&w), Ok(vec![q("-1"), q("2")]));

        let p = FundamentalBundle::new(Distribution::Parity);
        assert_eq!(p.decompose(&w), Err(FundError::NoVanishingFamily));
    }

    #[test]
    fn decompose_accepts_lateral_trains() {
        let b = FundamentalBundle::new(Distribution::DeltaLeft(pts(&["0"])));
        let w = Window::new(q("-1"), q("1"));
        let family = b.decompose(&w).unwrap();
        assert_eq!(family, vec![q("-1"), q("0"), q("1")]);
    }

    #[test]
    fn regularity_criterion_examples() {
        let w = Window::new(q("-2"), q("2"));
        let reg = FundamentalBundle::new(Distribution::Regular(pts(&["0", "1"])));
        assert_eq!(
            reg.regularity_criterion(&w),
            Ok(RegularityVerdict::RegularOnWindow)
        );

        let dl = FundamentalBundle::new(Distribution::DeltaLeft(pts(&["0"])));
        match dl
            .regularity_criterion(&Window::new(q("-1"), q("1")))
            .unwrap()
        {
            RegularityVerdict::SingularWitness { .. } => {}
            other => panic!("expected singular witness, got {other:?}"),
        }
        // at the mass point itself the left-shrinking pairing is 1
        assert_eq!(dl.f_star(&q("0")), Ok(Bit::One));

        let idl = FundamentalBundle::new(Distribution::IntDerivLeft);
        match idl
            .regularity_criterion(&Window::new(q("-1"), q("1")))
            .unwrap()
        {
            RegularityVerdict::SingularWitness { function, .. } => {
                assert_eq!(function, WitnessFunction::FStar)
            }
            other => panic!("expected singular witness, got {other:?}"),
        }
    }

    #[test]
    fn window_report_lists_hits() {
        let b = FundamentalBundle::new(
            Distribution::Regular(pts(&["0"])).xor_dist(Distribution::DeltaLeft(pts(&["1"]))),
        );
        let report = b.support_window_report(&Window::new(q("-1"), q("2"))).unwrap();
        assert_eq!(report.probe_family, vec![q("-1"), q("0"), q("1"), q("2")]);
        assert_eq!(report.point_hits, vec![q("0")]);
        // the left-delta mass at 1 makes the pair just left of it light up
        assert_eq!(report.pair_hits, vec![(q("0"), q("1"))]);
    }

    #[test]
    fn functional_roundtrip() {
        let sources = [
            Distribution::Regular(pts(&["0"])),
            Distribution::DeltaLeft(pts(&["0"])),
            Distribution::Parity,
        ];
        let probes = [
            tf(chi_open(q("-1"), q("1"))),
            tf(chi_point(q("0"))),
            tf(chi_open(q("-1"), q("0")).xor(&chi_point(q("0")))),
            TestFunction::zero(),
        ];
        for src in &sources {
            let fun = FundamentalBundle::new(src.clone()).to_functional();
            for phi in &probes {
                assert_eq!(fun.apply(phi), src.apply(phi).unwrap(), "{src:?} on {phi:?}");
            }
        }
    }

    #[test]
    fn null_data_gives_null_functional() {
        let fun = from_fundamental(|_, _| Bit::Zero, |_| Bit::Zero);
        assert_eq!(fun.apply(&tf(chi_open(q("0"), q("1")))), Bit::Zero);
    }
}
