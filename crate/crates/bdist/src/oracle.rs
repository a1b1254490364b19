//! Independent brute-force evaluation, deterministic random instance
//! generators, and the randomized identity suites the rest of the engine is
//! checked against.
//!
//! The oracle evaluator shares no code path with `Distribution::apply`: it
//! decomposes the test function over its own breakpoints and sums pair and
//! point pairings computed by a separately written recursion whose limit
//! routine uses shifts of `gap/3` confirmed at `gap/5`, a deliberately
//! different schedule from the main engine's `gap/4` and `gap/8`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bit::{parity_usize, Bit};
use crate::convolution::convolve;
use crate::dist::{
    counterexample_naive_limit, CounterexampleVerdict, Distribution, Regularity,
};
use crate::dsl;
use crate::dsl::ast::{DistExpr, FnExpr, ProgKind, SetExpr, Sp};
use crate::fundamental::{FundamentalBundle, RegularityVerdict};
use crate::point_set::{LocallyFiniteSet, Progression, ProgressionRange};
use crate::rational::Rational;
use crate::step_fn::StepFunction;
use crate::tensor::{commutativity_check, tensor, Distribution2};
use crate::test_fn::{refute_grid_representable, RefutationOutcome, TestFunction, TestFunction2};
use crate::window::Window;

/// Deterministic generation setup: every case draws from a stream seeded by
/// `(seed, case index)`, so suites are reproducible case by case.
#[derive(Debug, Clone)]
pub struct CasePanel {
    pub seed: u64,
    pub cases: usize,
    /// Largest denominator drawn for abscissas.
    pub max_denominator: i64,
    /// Largest magnitude drawn for abscissas.
    pub max_magnitude: i64,
}

impl CasePanel {
    pub fn new(seed: u64, cases: usize) -> Self {
        CasePanel {
            seed,
            cases,
            max_denominator: 8,
            max_magnitude: 8,
        }
    }

    pub fn rng(&self, case: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ case.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    pub fn gen_rational(&self, rng: &mut impl Rng) -> Rational {
        let den = rng.gen_range(1..=self.max_denominator);
        let num = rng.gen_range(-(self.max_magnitude * den)..=(self.max_magnitude * den));
        Rational::from_pair(num, den)
    }

    fn gen_sorted_abscissas(&self, rng: &mut impl Rng, max_len: usize) -> Vec<Rational> {
        let n = rng.gen_range(0..=max_len);
        let mut points: Vec<Rational> = Vec::new();
        while points.len() < n {
            let t = self.gen_rational(rng);
            if !points.contains(&t) {
                points.push(t);
            }
        }
        points.sort();
        points
    }

    pub fn gen_test_function(&self, rng: &mut impl Rng) -> TestFunction {
        let bps = self.gen_sorted_abscissas(rng, 5);
        let n = bps.len();
        let point_values = (0..n).map(|_| Bit::from_bool(rng.gen_bool(0.5))).collect();
        let mut interval_values = vec![Bit::Zero];
        for _ in 1..n.max(1) {
            interval_values.push(Bit::from_bool(rng.gen_bool(0.5)));
        }
        if n > 0 {
            interval_values.push(Bit::Zero);
        }
        TestFunction::try_from_step(StepFunction::from_parts(bps, point_values, interval_values))
            .expect("tails are zero")
    }

    /// A multiplier: arbitrary step function whose two tails agree, so the
    /// value stays expressible in the language.
    pub fn gen_multiplier(&self, rng: &mut impl Rng) -> StepFunction {
        let bps = self.gen_sorted_abscissas(rng, 4);
        let n = bps.len();
        let tail = Bit::from_bool(rng.gen_bool(0.25));
        let point_values = (0..n).map(|_| Bit::from_bool(rng.gen_bool(0.5))).collect();
        let mut interval_values = vec![tail];
        for _ in 1..n.max(1) {
            interval_values.push(Bit::from_bool(rng.gen_bool(0.5)));
        }
        if n > 0 {
            interval_values.push(tail);
        }
        StepFunction::from_parts(bps, point_values, interval_values)
    }

    pub fn gen_spike_train(&self, rng: &mut impl Rng) -> LocallyFiniteSet {
        let mut set = LocallyFiniteSet::from_points(self.gen_sorted_abscissas(rng, 3));
        if rng.gen_bool(1.0 / 3.0) {
            let period = Rational::from_pair(rng.gen_range(1..=4), 2);
            let offset = self.gen_rational(rng);
            let range = match rng.gen_range(0..3) {
                0 => ProgressionRange::AllIntegers,
                1 => ProgressionRange::NonNegative,
                _ => ProgressionRange::NonPositive,
            };
            set = set.sym_diff(&LocallyFiniteSet::from_progression(
                Progression::new(offset, period, range).expect("period positive"),
            ));
        }
        set
    }

    pub fn gen_finite_train(&self, rng: &mut impl Rng) -> LocallyFiniteSet {
        LocallyFiniteSet::from_points(self.gen_sorted_abscissas(rng, 3))
    }

    pub fn gen_distribution(&self, rng: &mut impl Rng, depth: usize) -> Distribution {
        assert!(depth <= 4);
        if depth == 0 || rng.gen_bool(0.4) {
            return match rng.gen_range(0..7) {
                0 => Distribution::Regular(self.gen_spike_train(rng)),
                1 => Distribution::Regular(self.gen_finite_train(rng)),
                2 => Distribution::DeltaLeft(self.gen_spike_train(rng)),
                3 => Distribution::DeltaRight(self.gen_spike_train(rng)),
                4 => Distribution::Parity,
                5 => Distribution::IntDerivLeft,
                _ => Distribution::IntDerivRight,
            };
        }
        match rng.gen_range(0..8) {
            0 | 7 => {
                let a = self.gen_distribution(rng, depth - 1);
                let b = self.gen_distribution(rng, depth - 1);
                Distribution::Xor(Box::new(a), Box::new(b))
            }
            1 => {
                let psi = self.gen_multiplier(rng);
                Distribution::Scale(psi, Box::new(self.gen_distribution(rng, depth - 1)))
            }
            2 => {
                let tau = self.gen_rational(rng);
                Distribution::Translate(tau, Box::new(self.gen_distribution(rng, depth - 1)))
            }
            3 => Distribution::LimitLeft(Box::new(self.gen_distribution(rng, depth - 1))),
            4 => Distribution::LimitRight(Box::new(self.gen_distribution(rng, depth - 1))),
            5 => Distribution::DerivLeft(Box::new(self.gen_distribution(rng, depth - 1))),
            _ => Distribution::DerivRight(Box::new(self.gen_distribution(rng, depth - 1))),
        }
    }

    pub fn gen_test_function2(&self, rng: &mut impl Rng) -> TestFunction2 {
        let t_bps = self.gen_sorted_abscissas(rng, 3);
        let u_bps = self.gen_sorted_abscissas(rng, 3);
        if t_bps.is_empty() || u_bps.is_empty() {
            return TestFunction2::zero();
        }
        let rows = 2 * t_bps.len() + 1;
        let cols = 2 * u_bps.len() + 1;
        let cells: Vec<Vec<Bit>> = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| {
                        if i == 0 || i == rows - 1 || j == 0 || j == cols - 1 {
                            Bit::Zero
                        } else {
                            Bit::from_bool(rng.gen_bool(0.5))
                        }
                    })
                    .collect()
            })
            .collect();
        TestFunction2::new(t_bps, u_bps, cells).expect("tail cells are zero")
    }
}

// ---- the independent evaluator ---------------------------------------------

/// Critical abscissas collected by an explicit worklist, separate from the
/// engine's recursive collector.
fn oracle_criticals(f: &Distribution, w: &Window) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut work: Vec<(&Distribution, Rational)> = vec![(f, Rational::zero())];
    while let Some((node, shift)) = work.pop() {
        match node {
            Distribution::Regular(s) | Distribution::DeltaLeft(s) | Distribution::DeltaRight(s) => {
                let local = Window::new(w.lo() - &shift, w.hi() - &shift);
                out.extend(s.enumerate(&local).into_iter().map(|t| &t + &shift));
            }
            Distribution::Parity | Distribution::IntDerivLeft | Distribution::IntDerivRight => {}
            Distribution::Xor(a, b) => {
                work.push((a, shift.clone()));
                work.push((b, shift));
            }
            Distribution::Scale(psi, a) => {
                out.extend(psi.breakpoints().iter().map(|t| t + &shift));
                work.push((a, shift));
            }
            Distribution::Translate(tau, a) => work.push((a, &shift + tau)),
            Distribution::LimitLeft(a)
            | Distribution::LimitRight(a)
            | Distribution::DerivLeft(a)
            | Distribution::DerivRight(a) => work.push((a, shift)),
        }
    }
    out
}

fn oracle_limit(f: &Distribution, phi: &TestFunction, toward_left: bool) -> Bit {
    let window = match phi.hull() {
        Some((lo, hi)) => Window::new(lo, hi).padded(&Rational::one()),
        None => Window::new(Rational::from_int(-1), Rational::from_int(1)),
    };
    let mut abscissas = oracle_criticals(f, &window);
    abscissas.extend_from_slice(phi.breakpoints());
    abscissas.sort();
    abscissas.dedup();
    let gap = abscissas
        .windows(2)
        .map(|p| &p[1] - &p[0])
        .min()
        .unwrap_or_else(Rational::one);
    let gap = Rational::min(gap, Rational::one());
    let third = gap.clone() / Rational::from_int(3);
    let fifth = gap / Rational::from_int(5);
    let probe = |eps: Rational| {
        let shift = if toward_left { eps } else { -eps };
        oracle_eval(f, &phi.translate(&shift))
    };
    let v1 = probe(third);
    let v2 = probe(fifth);
    assert_eq!(v1, v2, "oracle limit failed to stabilize");
    v1
}

/// Structural evaluation with routes crossed against the engine where the
/// algebra allows it: the parity functional is evaluated by counting left
/// jumps, the integrated lateral derivatives by counting support components.
pub fn oracle_eval(f: &Distribution, phi: &TestFunction) -> Bit {
    match f {
        Distribution::Regular(s) => match phi.hull() {
            None => Bit::Zero,
            Some((lo, hi)) => {
                let mut acc = Bit::Zero;
                for t in s.enumerate(&Window::new(lo, hi)) {
                    acc = acc ^ phi.eval(&t);
                }
                acc
            }
        },
        Distribution::DeltaLeft(s) => match phi.hull() {
            None => Bit::Zero,
            Some((lo, hi)) => {
                let w = Window::new(lo - Rational::one(), hi + Rational::one());
                let mut acc = Bit::Zero;
                for t in s.enumerate(&w) {
                    acc = acc ^ phi.left_limit(&t);
                }
                acc
            }
        },
        Distribution::DeltaRight(s) => match phi.hull() {
            None => Bit::Zero,
            Some((lo, hi)) => {
                let w = Window::new(lo - Rational::one(), hi + Rational::one());
                let mut acc = Bit::Zero;
                for t in s.enumerate(&w) {
                    acc = acc ^ phi.right_limit(&t);
                }
                acc
            }
        },
        Distribution::Parity => {
            // count left jumps instead of support components
            let jumps = phi
                .breakpoints()
                .iter()
                .filter(|t| phi.left_limit(t) != phi.eval(t))
                .count();
            parity_usize(jumps)
        }
        Distribution::IntDerivLeft | Distribution::IntDerivRight => {
            // count support components instead of jumps
            let (p, k) = phi.component_count();
            parity_usize(p + k)
        }
        Distribution::Xor(a, b) => oracle_eval(a, phi) ^ oracle_eval(b, phi),
        Distribution::Scale(psi, a) => oracle_eval(a, &phi.scale_by(psi)),
        Distribution::Translate(tau, a) => oracle_eval(a, &phi.translate(&-tau)),
        Distribution::LimitLeft(a) => oracle_limit(a, phi, true),
        Distribution::LimitRight(a) => oracle_limit(a, phi, false),
        Distribution::DerivLeft(a) => oracle_eval(a, phi) ^ oracle_limit(a, phi, true),
        Distribution::DerivRight(a) => oracle_eval(a, phi) ^ oracle_limit(a, phi, false),
    }
}

/// Decomposition-path application: the test function is split over its own
/// breakpoints and the pairings against the pieces are summed.
pub fn apply_oracle(f: &Distribution, phi: &TestFunction) -> Bit {
    let bps = phi.breakpoints();
    let mut acc = Bit::Zero;
    for t in bps {
        if phi.eval(t).is_one() {
            let chi = TestFunction::try_from_step(crate::step_fn::chi_point(t.clone()))
                .expect("bounded");
            acc = acc ^ oracle_eval(f, &chi);
        }
    }
    for pair in bps.windows(2) {
        let mid = Rational::midpoint(&pair[0], &pair[1]);
        if phi.eval(&mid).is_one() {
            let chi = TestFunction::try_from_step(crate::step_fn::chi_open(
                pair[0].clone(),
                pair[1].clone(),
            ))
            .expect("bounded");
            acc = acc ^ oracle_eval(f, &chi);
        }
    }
    acc
}

// ---- suites -----------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

pub const SUITE_NAMES: [&str; 18] = [
    "linearity",
    "oracle-equivalence",
    "translation-adjunction",
    "scaling-adjunction",
    "limit-iteration",
    "regular-uniqueness",
    "stabilization-guard",
    "classification-consistency",
    "fundamental-roundtrip",
    "regularity-criterion",
    "naive-limit-counterexample",
    "tensor-laws",
    "convolution-laws",
    "sum-pullback-refutation",
    "representation-roundtrip",
    "dsl-roundtrip",
    "test-space-axioms",
    "regular-membership",
];

struct SuiteRun {
    name: &'static str,
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl SuiteRun {
    fn new(name: &'static str) -> Self {
        SuiteRun {
            name,
            cases: 0,
            failures: 0,
            first: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(witness());
            }
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name.to_string(),
            cases: self.cases,
            failures: self.failures,
            first_counterexample: self.first,
        }
    }
}

fn describe(f: &Distribution, phi: &TestFunction) -> String {
    format!(
        "f = {f}; phi = {}",
        dsl::print_fn_value(phi.as_step()).unwrap_or_else(|_| format!("{phi:?}"))
    )
}

pub fn run_suite(name: &str, panel: &CasePanel) -> Result<SuiteReport, UnknownSuite> {
    match name {
        "linearity" => Ok(suite_linearity(panel)),
        "oracle-equivalence" => Ok(suite_oracle_equivalence(panel)),
        "translation-adjunction" => Ok(suite_translation(panel)),
        "scaling-adjunction" => Ok(suite_scaling(panel)),
        "limit-iteration" => Ok(suite_limit_iteration(panel)),
        "regular-uniqueness" => Ok(suite_regular_uniqueness(panel)),
        "stabilization-guard" => Ok(suite_stabilization(panel)),
        "classification-consistency" => Ok(suite_classification(panel)),
        "fundamental-roundtrip" => Ok(suite_fundamental(panel)),
        "regularity-criterion" => Ok(suite_regularity_criterion(panel)),
        "naive-limit-counterexample" => Ok(suite_counterexample(panel)),
        "tensor-laws" => Ok(suite_tensor(panel)),
        "convolution-laws" => Ok(suite_convolution(panel)),
        "sum-pullback-refutation" => Ok(suite_refutation(panel)),
        "representation-roundtrip" => Ok(suite_representation(panel)),
        "dsl-roundtrip" => Ok(suite_dsl(panel)),
        "test-space-axioms" => Ok(suite_test_space_axioms(panel)),
        "regular-membership" => Ok(suite_regular_membership(panel)),
        other => Err(UnknownSuite(other.to_string())),
    }
}

pub fn run_all(panel: &CasePanel) -> Vec<SuiteReport> {
    SUITE_NAMES
        .iter()
        .map(|n| run_suite(n, panel).expect("registered name"))
        .collect()
}

fn suite_linearity(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("linearity");
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let f = panel.gen_distribution(&mut rng, 2);
        let a = panel.gen_test_function(&mut rng);
        let b = panel.gen_test_function(&mut rng);
        let lhs = f.apply(&a.xor(&b)).unwrap();
        let rhs = f.apply(&a).unwrap() ^ f.apply(&b).unwrap();
        run.record(lhs == rhs, || describe(&f, &a));
    }
    run.finish()
}

fn suite_oracle_equivalence(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("oracle-equivalence");
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let f = panel.gen_distribution(&mut rng, 2);
        let phi = panel.gen_test_function(&mut rng);
        let engine = f.apply(&phi).unwrap();
        let oracle = apply_oracle(&f, &phi);
        run.record(engine == oracle, || describe(&f, &phi));
    }
    run.finish()
}

fn suite_translation(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("translation-adjunction");
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let f = panel.gen_distribution(&mut rng, 2);
        let phi = panel.gen_test_function(&mut rng);
        let tau = panel.gen_rational(&mut rng);
        let lhs = f.clone().translate_dist(tau.clone()).apply(&phi).unwrap();
        let rhs = f.apply(&phi.translate(&-&tau)).unwrap();
        run.record(lhs == rhs, || format!("tau = {tau}; {}", describe(&f, &phi)));
    }
    run.finish()
}

fn suite_scaling(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("scaling-adjunction");
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let f = panel.gen_distribution(&mut rng, 2);
        let phi = panel.gen_test_function(&mut rng);
        let psi = panel.gen_multiplier(&mut rng);
        let lhs = Distribution::scale_dist(psi.clone(), f.clone())
            .apply(&phi)
            .unwrap();
        let rhs = f.apply(&phi.scale_by(&psi)).unwrap();
        run.record(lhs == rhs, || describe(&f, &phi));
    }
    run.finish()
}

fn suite_limit_iteration(panel: &CasePanel) -> SuiteReport {
    use Distribution::{DerivLeft as DL, DerivRight as DR, LimitLeft as LL, LimitRight as LR};
    let mut run = SuiteRun::new("limit-iteration");
    let b = Box::new;
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let f = panel.gen_distribution(&mut rng, 1);
        let phi = panel.gen_test_function(&mut rng);
        // raw nodes so every composition exercises the stabilization path
        let identities: [(Distribution, Distribution); 8] = [
            (LL(b(LL(b(f.clone())))), LL(b(f.clone()))),
            (LR(b(LL(b(f.clone())))), LR(b(f.clone()))),
            (LL(b(LR(b(f.clone())))), LL(b(f.clone()))),
            (LR(b(LR(b(f.clone())))), LR(b(f.clone()))),
            (DL(b(DL(b(f.clone())))), DL(b(f.clone()))),
            (DL(b(DR(b(f.clone())))), DR(b(f.clone()))),
            (DR(b(DL(b(f.clone())))), DL(b(f.clone()))),
            (DR(b(DR(b(f.clone())))), DR(b(f.clone()))),
        ];
        let mut ok = true;
        for (lhs, rhs) in &identities {
            if lhs.apply(&phi).unwrap() != rhs.apply(&phi).unwrap() {
                ok = false;
                break;
            }
        }
        run.record(ok, || describe(&f, &phi));
    }
    run.finish()
}

fn suite_regular_uniqueness(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("regular-uniqueness");
    let w = Window::new(Rational::from_int(-10), Rational::from_int(10));
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let a = panel.gen_spike_train(&mut rng);
        let b = panel.gen_spike_train(&mut rng);
        let da = Distribution::Regular(a.clone());
        let db = Distribution::Regular(b.clone());
        let mut probes = a.enumerate(&w);
        probes.extend(b.enumerate(&w));
        probes.sort();
        probes.dedup();
        let agree_on_probes = probes.iter().all(|t| {
            let chi = TestFunction::try_from_step(crate::step_fn::chi_point(t.clone())).unwrap();
            da.apply(&chi) == db.apply(&chi)
        });
        let supports_equal = a.enumerate(&w) == b.enumerate(&w);
        run.record(agree_on_probes == supports_equal, || {
            format!("a = {a}; b = {b}")
        });
    }
    run.finish()
}

fn suite_stabilization(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("stabilization-guard");
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let f = Distribution::LimitLeft(Box::new(panel.gen_distribution(&mut rng, 2)));
        let phi = panel.gen_test_function(&mut rng);
        // the built-in confirmation shift must agree, twice over
        let first = f.apply(&phi);
        let second = f.apply(&phi);
        run.record(first.is_ok() && first == second, || describe(&f, &phi));
    }
    run.finish()
}

fn suite_classification(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("classification-consistency");
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let f = panel.gen_distribution(&mut rng, 2);
        let phi = panel.gen_test_function(&mut rng);
        let ok = match f.classify_regularity() {
            Regularity::Regular(s) => {
                f.apply(&phi).unwrap() == Distribution::Regular(s).apply(&phi).unwrap()
            }
            Regularity::Singular | Regularity::Unknown => true,
        };
        run.record(ok, || describe(&f, &phi));
    }
    run.finish()
}

fn suite_fundamental(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("fundamental-roundtrip");
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let f = panel.gen_distribution(&mut rng, 2);
        let phi = panel.gen_test_function(&mut rng);
        let bundle = FundamentalBundle::new(f.clone());
        let functional = bundle.to_functional();
        let mut ok = functional.apply(&phi) == f.apply(&phi).unwrap();
        // interval additivity at a random triple a < b < c
        let mut triple = [
            panel.gen_rational(&mut rng),
            panel.gen_rational(&mut rng),
            panel.gen_rational(&mut rng),
        ];
        triple.sort();
        let [a, b, c] = triple;
        if a < b && b < c {
            let lhs = bundle.f_open(&a, &c).unwrap();
            let rhs = bundle.f_open(&a, &b).unwrap()
                ^ bundle.f_point(&b).unwrap()
                ^ bundle.f_open(&b, &c).unwrap();
            ok = ok && lhs == rhs;
        }
        // a regular source has vanishing one-sided limits and its point
        // pairing is the support indicator
        let train = panel.gen_spike_train(&mut rng);
        let reg = FundamentalBundle::new(Distribution::Regular(train.clone()));
        let t = panel.gen_rational(&mut rng);
        ok = ok
            && reg.f_star(&t).unwrap() == Bit::Zero
            && reg.f_substar(&t).unwrap() == Bit::Zero
            && reg.f_point(&t).unwrap() == Bit::from_bool(train.membership(&t));
        run.record(ok, || describe(&f, &phi));
    }
    run.finish()
}

/// Closure axioms of a space of test functions, checked on instances:
/// translations, lateral limit functions, XOR combinations and products
/// with arbitrary step multipliers stay test functions; and any non-null
/// test function exposes a point indicator under multiplication.
fn suite_test_space_axioms(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("test-space-axioms");
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let phi = panel.gen_test_function(&mut rng);
        let chi = panel.gen_test_function(&mut rng);
        let psi = panel.gen_multiplier(&mut rng);
        let tau = panel.gen_rational(&mut rng);
        let still_test = |f: StepFunction| TestFunction::try_from_step(f).is_ok();
        let mut ok = still_test(phi.as_step().translate(&tau))
            && still_test(phi.as_step().limit_fn_left())
            && still_test(phi.as_step().limit_fn_right())
            && still_test(phi.as_step().xor(chi.as_step()))
            && still_test(phi.as_step().and(&psi));
        // minimality: a 1-point of any non-null member yields the point
        // indicator by multiplication
        if let Some(t) = phi
            .breakpoints()
            .iter()
            .find(|t| phi.eval(t).is_one())
            .cloned()
        {
            let point = crate::step_fn::chi_point(t);
            ok = ok && phi.as_step().and(&point) == point;
        }
        run.record(ok, || format!("phi = {phi:?}"));
    }
    run.finish()
}

/// Instance-level membership checks for which functions induce pairings on
/// which spaces: bounded-support multipliers keep every locally finite
/// support finite (so the pairing is summable), finite trains survive any
/// multiplier, and an unbounded train against the constant multiplier has
/// no finite support to sum over.
fn suite_regular_membership(panel: &CasePanel) -> SuiteReport {
    use crate::point_set::SetClass;
    let mut run = SuiteRun::new("regular-membership");
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let train = panel.gen_spike_train(&mut rng);
        let phi = panel.gen_test_function(&mut rng);
        let psi = panel.gen_multiplier(&mut rng);
        let finite = panel.gen_finite_train(&mut rng);
        let restrict = crate::dist::restrict_to_one_region;
        // bounded multiplier against any locally finite support: finite
        let mut ok = restrict(&train, phi.as_step()).classify() == SetClass::Finite;
        // finite train against any multiplier: finite
        ok = ok && restrict(&finite, &psi).classify() == SetClass::Finite;
        // an infinite train against the constant 1 keeps its class
        let everywhere = restrict(&train, &StepFunction::one());
        ok = ok && everywhere.classify() == train.classify();
        run.record(ok, || format!("train = {train}"));
    }
    run.finish()
}

fn suite_regularity_criterion(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("regularity-criterion");
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let t = panel.gen_rational(&mut rng);
        let lo = &t - &Rational::from_int(rng.gen_range(1..=3));
        let hi = &t + &Rational::from_int(rng.gen_range(1..=3));
        let w = Window::new(lo, hi);
        let singulars = [
            Distribution::DeltaLeft(LocallyFiniteSet::singleton(t.clone())),
            Distribution::DeltaRight(LocallyFiniteSet::singleton(t.clone())),
            Distribution::IntDerivLeft,
            Distribution::IntDerivRight,
            Distribution::Parity,
        ];
        let mut ok = singulars.iter().all(|d| {
            matches!(
                FundamentalBundle::new(d.clone()).regularity_criterion(&w),
                Ok(RegularityVerdict::SingularWitness { .. })
            )
        });
        let train = Distribution::Regular(panel.gen_spike_train(&mut rng));
        ok = ok
            && matches!(
                FundamentalBundle::new(train).regularity_criterion(&w),
                Ok(RegularityVerdict::RegularOnWindow)
            );
        run.record(ok, || format!("window = {w}"));
    }
    run.finish()
}

fn suite_counterexample(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("naive-limit-counterexample");
    let n = panel.cases.clamp(3, 10);
    let report = counterexample_naive_limit(n, None).unwrap();
    run.record(
        report.verdict == CounterexampleVerdict::Refuted && report.sequence_constant,
        || format!("{report:?}"),
    );
    run.finish()
}

fn suite_tensor(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("tensor-laws");
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let f = panel.gen_distribution(&mut rng, 1);
        let g = panel.gen_distribution(&mut rng, 1);
        let h = panel.gen_distribution(&mut rng, 1);
        let phi2 = panel.gen_test_function2(&mut rng);
        let (a, b) = commutativity_check(&f, &g, &phi2).unwrap();
        let mut ok = a == b;
        // XOR distributes through the product on the left factor
        let lhs = tensor(f.clone().xor_dist(g.clone()), h.clone())
            .apply2(&phi2)
            .unwrap();
        let rhs = tensor(f.clone(), h.clone()).apply2(&phi2).unwrap()
            ^ tensor(g.clone(), h.clone()).apply2(&phi2).unwrap();
        ok = ok && lhs == rhs;
        // regular pair support agrees with the nested route
        let ra = panel.gen_finite_train(&mut rng);
        let rb = panel.gen_finite_train(&mut rng);
        let normalized = tensor(
            Distribution::Regular(ra.clone()),
            Distribution::Regular(rb.clone()),
        );
        let raw = Distribution2::Tensor(
            Box::new(Distribution::Regular(ra)),
            Box::new(Distribution::Regular(rb)),
        );
        ok = ok && normalized.apply2(&phi2).unwrap() == raw.apply2(&phi2).unwrap();
        run.record(ok, || format!("f = {f}; g = {g}"));
    }
    run.finish()
}

fn suite_convolution(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("convolution-laws");
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let a = panel.gen_finite_train(&mut rng);
        let b = panel.gen_finite_train(&mut rng);
        let c = panel.gen_finite_train(&mut rng);
        let phi = panel.gen_test_function(&mut rng);
        let da = Distribution::Regular(a.clone());
        let db = Distribution::Regular(b.clone());
        let dc = Distribution::Regular(c.clone());
        // pair-parity against the straightforward double sum
        let conv = convolve(&da, &db).unwrap();
        let mut brute = Bit::Zero;
        for xi in a.finite_members() {
            for eta in b.finite_members() {
                brute = brute ^ phi.eval(&(&xi + &eta));
            }
        }
        let mut ok = conv.apply(&phi).unwrap() == brute;
        // commutativity and associativity on finite trains
        let ba = convolve(&db, &da).unwrap();
        ok = ok && conv.apply(&phi).unwrap() == ba.apply(&phi).unwrap();
        let ab_c = convolve(conv.as_distribution().unwrap(), &dc).unwrap();
        let bc = convolve(&db, &dc).unwrap();
        let a_bc = convolve(&da, bc.as_distribution().unwrap()).unwrap();
        ok = ok && ab_c.apply(&phi).unwrap() == a_bc.apply(&phi).unwrap();
        // two-sided unity
        let e = Distribution::delta(Rational::zero());
        let ea = convolve(&e, &da).unwrap();
        let ae = convolve(&da, &e).unwrap();
        ok = ok
            && ea.apply(&phi).unwrap() == da.apply(&phi).unwrap()
            && ae.apply(&phi).unwrap() == da.apply(&phi).unwrap();
        // the left derivative passes through the left factor
        let mixed = Distribution::Regular(a.clone())
            .xor_dist(Distribution::DeltaLeft(b.clone()))
            .xor_dist(Distribution::DeltaRight(c.clone()));
        let fg = convolve(&mixed, &db).unwrap().as_distribution().unwrap().clone();
        let lhs = fg.deriv_left_dist().apply(&phi).unwrap();
        let rhs = convolve(&mixed.clone().deriv_left_dist(), &db)
            .unwrap()
            .apply(&phi)
            .unwrap();
        ok = ok && lhs == rhs;
        run.record(ok, || format!("a = {a}; b = {b}; c = {c}"));
    }
    run.finish()
}

fn suite_refutation(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("sum-pullback-refutation");
    let _ = panel;
    let grid: Vec<Rational> = [-1i64, 0, 1].iter().map(|n| Rational::from_int(*n)).collect();
    let outcome = refute_grid_representable(
        |t, u| Bit::from_bool((t + u).is_zero()),
        &grid,
        &grid,
        4,
    );
    run.record(
        matches!(outcome, RefutationOutcome::Witness { .. }),
        || format!("{outcome:?}"),
    );
    run.finish()
}

fn suite_representation(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("representation-roundtrip");
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let f = panel.gen_multiplier(&mut rng);
        // resample at breakpoints, midpoints and tails, then rebuild
        let bps = f.breakpoints().to_vec();
        let point_values: Vec<Bit> = bps.iter().map(|t| f.eval(t)).collect();
        let mut interval_values = Vec::with_capacity(bps.len() + 1);
        if bps.is_empty() {
            interval_values.push(f.eval(&Rational::zero()));
        } else {
            interval_values.push(f.eval(&(&bps[0] - &Rational::one())));
            for pair in bps.windows(2) {
                interval_values.push(f.eval(&Rational::midpoint(&pair[0], &pair[1])));
            }
            interval_values.push(f.eval(&(bps.last().unwrap() + &Rational::one())));
        }
        let rebuilt = StepFunction::from_parts(bps, point_values, interval_values);
        run.record(rebuilt == f, || format!("{f:?}"));
    }
    run.finish()
}

fn suite_dsl(panel: &CasePanel) -> SuiteReport {
    let mut run = SuiteRun::new("dsl-roundtrip");
    for i in 0..panel.cases {
        let mut rng = panel.rng(i as u64);
        let ast = gen_dist_ast(panel, &mut rng, 3);
        let printed = dsl::print_dist(&ast);
        let ok = match dsl::parse_dist_str(&printed) {
            Ok(reparsed) => reparsed == ast && dsl::print_dist(&reparsed) == printed,
            Err(_) => false,
        };
        run.record(ok, || printed.clone());
    }
    run.finish()
}

// ---- random AST generation (grammar-conformal) -------------------------------

fn gen_set_ast(panel: &CasePanel, rng: &mut impl Rng, depth: usize) -> SetExpr {
    if depth == 0 || rng.gen_bool(0.6) {
        if rng.gen_bool(0.7) {
            let n = rng.gen_range(0..4);
            let pts = (0..n).map(|_| panel.gen_rational(rng)).collect();
            SetExpr::literal(pts)
        } else {
            SetExpr::Prog {
                kind: match rng.gen_range(0..3) {
                    0 => ProgKind::AllIntegers,
                    1 => ProgKind::NonNegative,
                    _ => ProgKind::NonPositive,
                },
                offset: panel.gen_rational(rng),
                period: Rational::from_pair(rng.gen_range(1..=4), 2),
            }
        }
    } else {
        // left-associated combination only: the set grammar has no parens
        let l = gen_set_ast(panel, rng, 0);
        let r = gen_set_ast(panel, rng, 0);
        if rng.gen_bool(0.5) {
            SetExpr::SymDiff(Sp::unspanned(l), Sp::unspanned(r))
        } else {
            SetExpr::Union(Sp::unspanned(l), Sp::unspanned(r))
        }
    }
}

fn gen_fn_ast(panel: &CasePanel, rng: &mut impl Rng, depth: usize) -> FnExpr {
    if depth == 0 || rng.gen_bool(0.5) {
        match rng.gen_range(0..4) {
            0 => FnExpr::Zero,
            1 => FnExpr::One,
            2 => FnExpr::ChiPoint(panel.gen_rational(rng)),
            _ => {
                let a = panel.gen_rational(rng);
                FnExpr::ChiOpen(a.clone(), &a + &Rational::from_int(rng.gen_range(1..=3)))
            }
        }
    } else {
        let child = |rng: &mut _| Sp::unspanned(gen_fn_ast(panel, rng, depth - 1));
        match rng.gen_range(0..7) {
            0 => FnExpr::Xor(child(rng), child(rng)),
            1 => FnExpr::And(child(rng), child(rng)),
            2 => FnExpr::Translate(panel.gen_rational(rng), child(rng)),
            3 => FnExpr::LimitLeft(child(rng)),
            4 => FnExpr::LimitRight(child(rng)),
            5 => FnExpr::DerivLeft(child(rng)),
            _ => FnExpr::DerivRight(child(rng)),
        }
    }
}

pub fn gen_dist_ast(panel: &CasePanel, rng: &mut impl Rng, depth: usize) -> DistExpr {
    if depth == 0 || rng.gen_bool(0.4) {
        match rng.gen_range(0..7) {
            0 => DistExpr::Regular(Sp::unspanned(gen_set_ast(panel, rng, 1))),
            1 => DistExpr::Delta(panel.gen_rational(rng)),
            2 => DistExpr::DeltaLeft(Sp::unspanned(gen_set_ast(panel, rng, 1))),
            3 => DistExpr::DeltaRight(Sp::unspanned(gen_set_ast(panel, rng, 1))),
            4 => DistExpr::Parity,
            5 => DistExpr::IntDerivLeft,
            _ => DistExpr::IntDerivRight,
        }
    } else {
        let child = |rng: &mut _| Sp::unspanned(gen_dist_ast(panel, rng, depth - 1));
        match rng.gen_range(0..9) {
            0 => DistExpr::Xor(child(rng), child(rng)),
            1 => DistExpr::Scale(
                Sp::unspanned(gen_fn_ast(panel, rng, 1)),
                child(rng),
            ),
            2 => DistExpr::Translate(panel.gen_rational(rng), child(rng)),
            3 => DistExpr::LimitLeft(child(rng)),
            4 => DistExpr::LimitRight(child(rng)),
            5 => DistExpr::DerivLeft(child(rng)),
            6 => DistExpr::DerivRight(child(rng)),
            7 => DistExpr::TensorOp(child(rng), child(rng)),
            _ => DistExpr::ConvOp(child(rng), child(rng)),
        }
    }
}
