//! Exact computation engine for the calculus of distributions over binary
//! (B₂-valued) test functions.
//!
//! Everything here is exact: abscissas are arbitrary-precision rationals,
//! values live in the two-element Boolean ring `{0, 1}` with XOR and AND,
//! and limits are resolved by gap analysis instead of floating-point
//! approximation.
//!
//! The main layers, bottom up:
//!
//! - [`bit`], [`rational`], [`window`] — the scalar ring, the exact time
//!   axis and bounded windows.
//! - [`point_set`] — locally finite subsets of the line (finite points plus
//!   arithmetic progressions), window-enumerable.
//! - [`step_fn`] — canonical piecewise-constant `R -> B2` functions with
//!   lateral limits and derivatives.
//! - [`test_fn`] — bounded-support test functions of one and two variables,
//!   mod-2 integration, component counting, slicing.
//! - [`dist`] — the closed algebra of one-variable distributions and their
//!   exact application.
//! - [`fundamental`] — the four fundamental functions attached to a
//!   distribution, support, decomposition and the regularity criterion.
//! - [`tensor`], [`convolution`] — direct products of distributions and the
//!   convolution product with its algebras.
//! - [`oracle`] — independent brute-force evaluators and the randomized
//!   identity suites.
//! - [`dsl`] — the textual expression language, parser and printer.

pub mod bit;
pub mod convolution;
pub mod dist;
pub mod dsl;
pub mod fundamental;
pub mod oracle;
pub mod point_set;
pub mod rational;
pub mod step_fn;
pub mod tensor;
pub mod test_fn;
pub mod window;

pub use bit::{mod2_sum, parity, parity_additivity_check, Bit};
pub use convolution::{algebra_closure_check, convolve, ConvError, Convolution, ConvolutionAlgebraSpec};
pub use dist::{Distribution, DistError};
pub use fundamental::{FundError, FundamentalBundle, RegularityVerdict};
pub use point_set::{LocallyFiniteSet, Progression, ProgressionRange, SetClass, SetError};
pub use rational::Rational;
pub use step_fn::{chi, ChiDesc, StepError, StepFunction, SupportComponent, SupportDescriptor};
pub use tensor::{tensor, Distribution2};
pub use test_fn::{TestFnError, TestFunction, TestFunction2};
pub use window::Window;
