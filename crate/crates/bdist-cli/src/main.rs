//! Batch command-line front end for the binary distribution calculus:
//! evaluate pairings, canonicalize functions, inspect fundamental data, run
//! randomized suites, convolve, tensor, and plot waveforms.
//!
//! Expression flags accept either an inline expression or a path to a `.bd`
//! file. Results go to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 2 syntax errors, 3 domain errors, 4 missing vanishing family under
//! `--strict`.

mod plot;

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bdist::dist::{DistError, Distribution, Side, Tracer};
use bdist::dsl::{self, DslError, LowerError};
use bdist::fundamental::{FundError, FundamentalBundle, RegularityVerdict, WitnessFunction};
use bdist::oracle::{run_suite, CasePanel, SuiteReport, SUITE_NAMES};
use bdist::rational::Rational;
use bdist::step_fn::StepFunction;
use bdist::tensor::tensor;
use bdist::test_fn::TestFunction;
use bdist::window::Window;
use bdist::Bit;

#[derive(Parser)]
#[command(name = "bdist", version, about = "exact calculus of binary distributions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate `<f, phi>` and print the bit.
    Eval {
        #[arg(long)]
        dist: String,
        #[arg(long)]
        phi: String,
        /// Print the evaluation recursion with the chosen shifts to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Print the canonical form of a function expression.
    Canon {
        #[arg(long = "fn")]
        function: String,
    },
    /// Print the fundamental data of a distribution over a window.
    Fund {
        #[arg(long)]
        dist: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        window: Vec<String>,
        /// Exit with status 4 when no vanishing family exists.
        #[arg(long)]
        strict: bool,
    },
    /// Decide regularity on a window.
    Regular {
        #[arg(long)]
        dist: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        window: Vec<String>,
    },
    /// Convolve two distributions; optionally apply the result.
    Conv {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        phi: Option<String>,
    },
    /// Apply the direct product of two distributions to a two-variable test
    /// function.
    Tensor {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        phi2: String,
    },
    /// Close the XOR-span of generators under convolution and report.
    Algebra {
        /// Generators separated by `;`.
        #[arg(long)]
        gen: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Size of the random test-function panel used for identification.
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run one identity suite, or all of them.
    Check {
        #[arg(long)]
        suite: String,
        /// Defaults to the BDIST_SEED environment variable, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
    /// Render a waveform of a function expression.
    Plot {
        #[arg(long = "fn")]
        function: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        window: Vec<String>,
        #[arg(long, value_enum, default_value_t = PlotFormat::Ascii)]
        format: PlotFormat,
        #[arg(long)]
        out: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotFormat {
    Ascii,
    Svg,
}

enum CliError {
    Syntax(String),
    Domain(String),
    NoVanishingFamily,
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Syntax(_) => 2,
            CliError::Domain(_) => 3,
            CliError::NoVanishingFamily => 4,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Syntax(m) | CliError::Domain(m) | CliError::Io(m) => m.clone(),
            CliError::NoVanishingFamily => {
                "no vanishing family exists in this window".to_string()
            }
        }
    }
}

impl From<DslError> for CliError {
    fn from(e: DslError) -> Self {
        match &e {
            DslError::Parse(_) => CliError::Syntax(e.to_string()),
            DslError::Lower(l) => match l {
                LowerError::ZeroPeriod
                | LowerError::EmptyInterval
                | LowerError::OverlappingUnion(_)
                | LowerError::Set(_)
                | LowerError::TensorInScalarContext => CliError::Syntax(e.to_string()),
                LowerError::ConvolutionNotClosed | LowerError::Convolution(_) => {
                    CliError::Domain(e.to_string())
                }
            },
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<DistError> for CliError {
    fn from(e: DistError) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Inline expression or `.bd` file path; files carry the version header.
fn load_source(arg: &str) -> Result<String, CliError> {
    if arg.ends_with(".bd") {
        let raw = fs::read_to_string(arg)
            .map_err(|e| CliError::Io(format!("cannot read `{arg}`: {e}")))?;
        let mut lines = raw.splitn(2, '\n');
        let header = lines.next().unwrap_or("").trim_end_matches('\r');
        if header != dsl::FILE_HEADER {
            return Err(CliError::Syntax(format!(
                "unsupported version header `{header}` in `{arg}`"
            )));
        }
        Ok(lines.next().unwrap_or("").trim().to_string())
    } else {
        Ok(arg.to_string())
    }
}

fn load_dist(arg: &str) -> Result<Distribution, CliError> {
    Ok(dsl::dist_from_str(&load_source(arg)?)?)
}

fn load_test_fn(arg: &str) -> Result<TestFunction, CliError> {
    let f = dsl::step_fn_from_str(&load_source(arg)?)?;
    TestFunction::try_from_step(f).map_err(|e| CliError::Domain(e.to_string()))
}

fn load_step_fn(arg: &str) -> Result<StepFunction, CliError> {
    Ok(dsl::step_fn_from_str(&load_source(arg)?)?)
}

fn parse_window(parts: &[String]) -> Result<Window, CliError> {
    let lo: Rational = parts[0]
        .parse()
        .map_err(|_| CliError::Syntax(format!("invalid window bound `{}`", parts[0])))?;
    let hi: Rational = parts[1]
        .parse()
        .map_err(|_| CliError::Syntax(format!("invalid window bound `{}`", parts[1])))?;
    Window::try_new(lo, hi)
        .ok_or_else(|| CliError::Syntax("window bounds out of order".to_string()))
}

/// Stderr tracer for `eval --trace`.
struct StderrTracer {
    depth: usize,
}

impl Tracer for StderrTracer {
    fn enter(&mut self, node: &Distribution, phi: &TestFunction) {
        let label = match node {
            Distribution::Regular(_) => "regular",
            Distribution::DeltaLeft(_) => "delta-left",
            Distribution::DeltaRight(_) => "delta-right",
            Distribution::Parity => "parity",
            Distribution::IntDerivLeft => "int-deriv-left",
            Distribution::IntDerivRight => "int-deriv-right",
            Distribution::Xor(..) => "xor",
            Distribution::Scale(..) => "scale",
            Distribution::Translate(..) => "translate",
            Distribution::LimitLeft(_) => "limit-left",
            Distribution::LimitRight(_) => "limit-right",
            Distribution::DerivLeft(_) => "deriv-left",
            Distribution::DerivRight(_) => "deriv-right",
        };
        let support = phi
            .hull()
            .map(|(lo, hi)| format!("[{lo}, {hi}]"))
            .unwrap_or_else(|| "empty".to_string());
        eprintln!("{:indent$}{label} phi-hull={support}", "", indent = 2 * self.depth);
        self.depth += 1;
    }

    fn leave(&mut self, _node: &Distribution, value: Bit) {
        self.depth -= 1;
        eprintln!("{:indent$}= {value}", "", indent = 2 * self.depth);
    }

    fn limit_shift(&mut self, side: Side, eps: &Rational) {
        let dir = match side {
            Side::Left => "left",
            Side::Right => "right",
        };
        eprintln!(
            "{:indent$}stabilized {dir} shift eps = {eps}",
            "",
            indent = 2 * self.depth
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval { dist, phi, trace } => {
            let value = dsl::dist_value_from_str(&load_source(&dist)?)?;
            let phi = load_test_fn(&phi)?;
            let bit = match (&value, trace) {
                (dsl::DistValue::Closed(d), true) => {
                    d.apply_traced(&phi, &mut StderrTracer { depth: 0 })?
                }
                _ => value.apply(&phi)?,
            };
            println!("{bit}");
            Ok(())
        }
        Command::Canon { function } => {
            let f = load_step_fn(&function)?;
            let text =
                dsl::print_fn_value(&f).map_err(|e| CliError::Domain(e.to_string()))?;
            println!("{text}");
            Ok(())
        }
        Command::Fund {
            dist,
            window,
            strict,
        } => {
            let d = load_dist(&dist)?;
            let w = parse_window(&window)?;
            let bundle = FundamentalBundle::new(d);
            println!("window: {w}");
            let family = match bundle.decompose(&w) {
                Ok(family) => {
                    let text: Vec<String> = family.iter().map(|t| t.to_string()).collect();
                    println!("family: {}", text.join(", "));
                    family
                }
                Err(FundError::NoVanishingFamily) => {
                    println!("family: none (point mass on every refinement)");
                    if strict {
                        return Err(CliError::NoVanishingFamily);
                    }
                    bundle_probe_family(&bundle, &w)
                }
                Err(FundError::Dist(e)) => return Err(e.into()),
            };
            println!("t\tF0\tF*\tF_*");
            for t in &family {
                println!(
                    "{t}\t{}\t{}\t{}",
                    bundle.f_point(t)?,
                    bundle.f_star(t)?,
                    bundle.f_substar(t)?
                );
            }
            println!("pair\tF");
            for pair in family.windows(2) {
                println!(
                    "({}, {})\t{}",
                    pair[0],
                    pair[1],
                    bundle.f_open(&pair[0], &pair[1])?
                );
            }
            Ok(())
        }
        Command::Regular { dist, window } => {
            let d = load_dist(&dist)?;
            let w = parse_window(&window)?;
            match FundamentalBundle::new(d).regularity_criterion(&w)? {
                RegularityVerdict::RegularOnWindow => println!("REGULAR on window {w}"),
                RegularityVerdict::SingularWitness { at, function } => {
                    let name = match function {
                        WitnessFunction::FZero => "F0",
                        WitnessFunction::FStar => "F*",
                        WitnessFunction::FSubstar => "F_*",
                    };
                    println!("SINGULAR at t={at} ({name})");
                }
            }
            Ok(())
        }
        Command::Conv { f, g, phi } => {
            let df = load_dist(&f)?;
            let dg = load_dist(&g)?;
            let conv = bdist::convolution::convolve(&df, &dg)
                .map_err(|e| CliError::Domain(e.to_string()))?;
            match phi {
                Some(phi) => {
                    let phi = load_test_fn(&phi)?;
                    println!("{}", conv.apply(&phi)?);
                }
                None => match &conv {
                    bdist::convolution::Convolution::Closed(d) => {
                        match dsl::print_dist_value(d) {
                            Ok(text) => println!("{text}"),
                            Err(_) => println!("{d:?}"),
                        }
                    }
                    lazy => {
                        let w = Window::new(Rational::from_int(-8), Rational::from_int(8));
                        let support = lazy
                            .support_in(&w)
                            .expect("lazy convolution has spike support");
                        let text: Vec<String> =
                            support.iter().map(|t| t.to_string()).collect();
                        println!("window-lazy convolution; support on {w}: {{{}}}", text.join(", "));
                    }
                },
            }
            Ok(())
        }
        Command::Tensor { f, g, phi2 } => {
            let df = load_dist(&f)?;
            let dg = load_dist(&g)?;
            let phi2 = dsl::fn2_from_str(&load_source(&phi2)?)?;
            let bit = tensor(df, dg).apply2(&phi2)?;
            println!("{bit}");
            Ok(())
        }
        Command::Algebra {
            gen,
            depth,
            cases,
            seed,
        } => {
            let mut generators = Vec::new();
            for part in gen.split(';') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                generators.push(load_dist(part)?);
            }
            if generators.is_empty() {
                return Err(CliError::Syntax("no generators given".into()));
            }
            let seed = seed
                .or_else(|| {
                    std::env::var("BDIST_SEED")
                        .ok()
                        .and_then(|s| s.parse().ok())
                })
                .unwrap_or(0);
            let panel_cfg = CasePanel::new(seed, cases);
            let mut panel = Vec::with_capacity(cases);
            for i in 0..cases {
                let mut rng = panel_cfg.rng(i as u64);
                panel.push(panel_cfg.gen_test_function(&mut rng));
            }
            let spec = bdist::convolution::ConvolutionAlgebraSpec {
                generators,
                closure_depth: depth,
            };
            let report = bdist::convolution::algebra_closure_check(&spec, &panel)
                .map_err(|e| CliError::Domain(e.to_string()))?;
            println!(
                "span={} elements={} closed={} unity={}",
                report.span_size,
                report.element_count,
                if report.closed() { "yes" } else { "no" },
                if report.unity_present { "yes" } else { "no" },
            );
            println!(
                "products checked={} identified={} added={}",
                report.products_checked, report.products_identified, report.products_added
            );
            println!(
                "commutative-pairs={} noncommutative-pairs={}",
                report.commutative_pairs, report.noncommutative_pairs
            );
            println!(
                "associative-triples={} nonassociative-triples={}",
                report.associative_triples, report.nonassociative_triples
            );
            Ok(())
        }
        Command::Check { suite, seed, cases } => {
            let seed = seed
                .or_else(|| {
                    std::env::var("BDIST_SEED")
                        .ok()
                        .and_then(|s| s.parse().ok())
                })
                .unwrap_or(0);
            let panel = CasePanel::new(seed, cases);
            let reports: Vec<SuiteReport> = if suite == "all" {
                SUITE_NAMES
                    .iter()
                    .map(|n| run_suite(n, &panel).expect("registered"))
                    .collect()
            } else {
                vec![run_suite(&suite, &panel)
                    .map_err(|e| CliError::Syntax(e.to_string()))?]
            };
            let mut all_pass = true;
            for r in &reports {
                let status = if r.passed() { "pass" } else { "FAIL" };
                let witness = r
                    .first_counterexample
                    .as_ref()
                    .map(|w| format!(" witness={w}"))
                    .unwrap_or_default();
                println!(
                    "SUITE {} cases={} failures={} status={status}{witness}",
                    r.name, r.cases, r.failures
                );
                all_pass &= r.passed();
            }
            if all_pass {
                Ok(())
            } else {
                Err(CliError::Domain("suite failures".to_string()))
            }
        }
        Command::Plot {
            function,
            window,
            format,
            out,
        } => {
            let f = load_step_fn(&function)?;
            let w = parse_window(&window)?;
            if w.lo() >= w.hi() {
                return Err(CliError::Syntax("plot window must be nonempty".into()));
            }
            let content = match format {
                PlotFormat::Ascii => plot::render_ascii(&f, &w),
                PlotFormat::Svg => plot::render_svg(&f, &w),
            };
            fs::write(&out, content)
                .map_err(|e| CliError::Io(format!("cannot write `{out}`: {e}")))?;
            Ok(())
        }
    }
}

fn bundle_probe_family(bundle: &FundamentalBundle, w: &Window) -> Vec<Rational> {
    let mut family = bundle.source().critical_abscissas(w);
    family.retain(|t| w.contains(t));
    family.push(w.lo().clone());
    family.push(w.hi().clone());
    family.sort();
    family.dedup();
    family
}
