//! The convolution product `<f∗g, φ> = <f(u), <g(t), φ(t+u)>>` on the pairs
//! where it exists, and closure checking for convolution algebras.
//!
//! Supported pairs:
//!
//! - `f` a finite XOR of point and lateral atoms, `g` arbitrary: the inner
//!   map `u ↦ <g, φ_{-u}>` is consumed atom by atom, which closes in the
//!   algebra (`[δ_s]∗g = g` translated, lateral atoms yield translated
//!   lateral limits of `g`);
//! - both factors regular with finite, both inferiorly finite or both
//!   superiorly finite supports: pair-parity enumeration, kept window-lazy
//!   when a support is infinite;
//! - either factor equal to `[δ]`, the two-sided unity.
//!
//! Everything else is refused: the general direct-product route fails on
//! the pullback along the sum map, which is not a two-variable test
//! function.

use std::collections::BTreeMap;

use crate::bit::{mod2_sum, Bit};
use crate::dist::{DistError, Distribution};
use crate::point_set::{LocallyFiniteSet, SetClass};
use crate::rational::Rational;
use crate::test_fn::TestFunction;
use crate::window::Window;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConvError {
    #[error("convolution undefined for this pair: {0}")]
    ConvolutionUndefined(String),
    #[error("closure failure: {0}")]
    ClosureFailure(String),
}

/// Result of a convolution: either a member of the closed algebra or a
/// window-lazy pair-parity functional over two regular supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Convolution {
    Closed(Distribution),
    RegularPairs(LocallyFiniteSet, LocallyFiniteSet),
}

impl Convolution {
    pub fn apply(&self, phi: &TestFunction) -> Result<Bit, DistError> {
        match self {
            Convolution::Closed(d) => d.apply(phi),
            Convolution::RegularPairs(a, b) => {
                let (lo, hi) = match phi.hull() {
                    None => return Ok(Bit::Zero),
                    Some(h) => h,
                };
                let w = Window::new(lo, hi);
                Ok(mod2_sum(
                    enumerate_pair_sums(a, b, &w)
                        .into_iter()
                        .filter(|(_, odd)| *odd)
                        .map(|(s, _)| phi.eval(&s)),
                ))
            }
        }
    }

    pub fn as_distribution(&self) -> Option<&Distribution> {
        match self {
            Convolution::Closed(d) => Some(d),
            Convolution::RegularPairs(..) => None,
        }
    }

    /// Spike support of the result inside a window (odd-parity sums for the
    /// lazy case).
    pub fn support_in(&self, w: &Window) -> Option<Vec<Rational>> {
        match self {
            Convolution::Closed(d) => match d.normal_form() {
                Some(nf) if nf.parity.is_zero() && nf.left.is_empty() && nf.right.is_empty() => {
                    Some(nf.point.enumerate(w))
                }
                _ => None,
            },
            Convolution::RegularPairs(a, b) => Some(
                enumerate_pair_sums(a, b, w)
                    .into_iter()
                    .filter(|(_, odd)| *odd)
                    .map(|(s, _)| s)
                    .collect(),
            ),
        }
    }
}

/// All sums `ξ + η` with `ξ ∈ a`, `η ∈ b` landing in the window, with their
/// multiplicity parity.
fn enumerate_pair_sums(
    a: &LocallyFiniteSet,
    b: &LocallyFiniteSet,
    w: &Window,
) -> Vec<(Rational, bool)> {
    let mut hits: BTreeMap<Rational, bool> = BTreeMap::new();
    let mut flip = |s: Rational| {
        let e = hits.entry(s).or_insert(false);
        *e = !*e;
    };
    let pair_window = |xi: &Rational| Window::new(w.lo() - xi, w.hi() - xi);
    match (a.classify(), b.classify()) {
        (SetClass::Finite, _) => {
            for xi in a.finite_members() {
                for eta in b.enumerate(&pair_window(&xi)) {
                    flip(&xi + &eta);
                }
            }
        }
        (_, SetClass::Finite) => {
            for eta in b.finite_members() {
                let ew = Window::new(w.lo() - &eta, w.hi() - &eta);
                for xi in a.enumerate(&ew) {
                    flip(&xi + &eta);
                }
            }
        }
        (SetClass::InferiorlyFinite, SetClass::InferiorlyFinite) => {
            let a0 = a.lower_bound().expect("inferiorly finite");
            let b0 = b.lower_bound().expect("inferiorly finite");
            for xi in a.enumerate(&Window::new(a0, w.hi() - &b0)) {
                for eta in b.enumerate(&pair_window(&xi)) {
                    flip(&xi + &eta);
                }
            }
        }
        (SetClass::SuperiorlyFinite, SetClass::SuperiorlyFinite) => {
            let a1 = a.upper_bound().expect("superiorly finite");
            let b1 = b.upper_bound().expect("superiorly finite");
            for xi in a.enumerate(&Window::new(w.lo() - &b1, a1)) {
                for eta in b.enumerate(&pair_window(&xi)) {
                    flip(&xi + &eta);
                }
            }
        }
        classes => unreachable!("unsupported class pair {classes:?} slipped past convolve"),
    }
    hits.into_iter().collect()
}

/// The convolution product, on the supported table of pairs.
pub fn convolve(f: &Distribution, g: &Distribution) -> Result<Convolution, ConvError> {
    let nf = f.normal_form();
    let ng = g.normal_form();
    // unity on either side
    if let Some(form) = &nf {
        if is_unity_form(form) {
            return Ok(Convolution::Closed(g.clone()));
        }
    }
    if let Some(form) = &ng {
        if is_unity_form(form) {
            return Ok(Convolution::Closed(f.clone()));
        }
    }
    // finite atomic left factor against arbitrary right factor
    if let Some(form) = &nf {
        if form.is_finite_atomic() {
            let mut acc: Option<Distribution> = None;
            let mut push = |d: Distribution| {
                acc = Some(match acc.take() {
                    None => d,
                    Some(cur) => cur.xor_dist(d),
                });
            };
            for s in form.point.finite_members() {
                push(g.clone().translate_dist(s));
            }
            for s in form.left.finite_members() {
                push(g.clone().limit_left().translate_dist(s));
            }
            for s in form.right.finite_members() {
                push(g.clone().limit_right().translate_dist(s));
            }
            let result = acc.unwrap_or_else(Distribution::zero);
            // canonicalize to an atom train when the result has one
            let result = match result.normal_form() {
                Some(nf) => nf.to_distribution(),
                None => result,
            };
            return Ok(Convolution::Closed(result));
        }
    }
    // regular against regular with compatible support classes
    if let (Some(a), Some(b)) = (&nf, &ng) {
        let pure_regular = |form: &crate::dist::AtomForm| {
            form.parity.is_zero() && form.left.is_empty() && form.right.is_empty()
        };
        if pure_regular(a) && pure_regular(b) {
            let ca = a.point.classify();
            let cb = b.point.classify();
            let compatible = ca == SetClass::Finite
                || cb == SetClass::Finite
                || (ca == cb && ca != SetClass::LocallyFiniteOnly);
            if compatible {
                return Ok(Convolution::RegularPairs(a.point.clone(), b.point.clone()));
            }
            return Err(ConvError::ConvolutionUndefined(format!(
                "support classes {ca:?} and {cb:?} are incompatible"
            )));
        }
    }
    Err(ConvError::ConvolutionUndefined(
        "left factor is not a finite train of point or lateral atoms".into(),
    ))
}

fn is_unity_form(form: &crate::dist::AtomForm) -> bool {
    form.parity.is_zero()
        && form.left.is_empty()
        && form.right.is_empty()
        && form.point == LocallyFiniteSet::singleton(Rational::zero())
}

/// Generators of a candidate convolution algebra.
#[derive(Debug, Clone)]
pub struct ConvolutionAlgebraSpec {
    pub generators: Vec<Distribution>,
    pub closure_depth: usize,
}

/// Closure report. Commutativity and associativity statistics are gathered
/// over the generator span; closure is verified over every element reached
/// within the requested depth.
#[derive(Debug, Clone)]
pub struct AlgebraReport {
    pub span_size: usize,
    pub element_count: usize,
    pub unity_present: bool,
    pub products_checked: usize,
    pub products_identified: usize,
    pub products_added: usize,
    pub commutative_pairs: usize,
    pub noncommutative_pairs: usize,
    pub associative_triples: usize,
    pub nonassociative_triples: usize,
}

impl AlgebraReport {
    pub fn closed(&self) -> bool {
        self.products_checked == self.products_identified + self.products_added
    }
}

fn signature(c: &Convolution, panel: &[TestFunction]) -> Result<Vec<Bit>, ConvError> {
    panel
        .iter()
        .map(|phi| {
            c.apply(phi)
                .map_err(|e| ConvError::ClosureFailure(format!("application failed: {e}")))
        })
        .collect()
}

fn dist_signature(d: &Distribution, panel: &[TestFunction]) -> Result<Vec<Bit>, ConvError> {
    signature(&Convolution::Closed(d.clone()), panel)
}

/// Closes the XOR-span of the generators under convolution up to the given
/// depth. Every product must either coincide, as a functional on the panel,
/// with a known element, or itself normalize to a finite train of point and
/// lateral atoms, which is then adjoined. Anything else fails the closure.
pub fn algebra_closure_check(
    spec: &ConvolutionAlgebraSpec,
    panel: &[TestFunction],
) -> Result<AlgebraReport, ConvError> {
    assert!(
        spec.generators.len() <= 6,
        "span enumeration is exponential in the generator count"
    );
    assert!(!panel.is_empty());
    // XOR-span of the generators
    let mut elements: Vec<Distribution> = Vec::new();
    let n = spec.generators.len();
    for mask in 0..(1usize << n) {
        let mut acc: Option<Distribution> = None;
        for (i, g) in spec.generators.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc = Some(match acc {
                    None => g.clone(),
                    Some(cur) => cur.xor_dist(g.clone()),
                });
            }
        }
        elements.push(acc.unwrap_or_else(Distribution::zero));
    }
    let span_size = elements.len();
    let mut signatures: Vec<Vec<Bit>> = elements
        .iter()
        .map(|d| dist_signature(d, panel))
        .collect::<Result<_, _>>()?;

    let mut products_checked = 0usize;
    let mut products_identified = 0usize;
    let mut products_added = 0usize;

    for _round in 0..spec.closure_depth {
        let snapshot = elements.clone();
        let mut grew = false;
        for a in &snapshot {
            for b in &snapshot {
                let prod = convolve(a, b)?;
                products_checked += 1;
                let sig = signature(&prod, panel)?;
                if signatures.contains(&sig) {
                    products_identified += 1;
                    continue;
                }
                // re-identify as a finite atom train and adjoin it
                let dist = match &prod {
                    Convolution::Closed(d) => d.clone(),
                    Convolution::RegularPairs(..) => {
                        return Err(ConvError::ClosureFailure(format!(
                            "product of {a:?} and {b:?} left the finite-train space"
                        )))
                    }
                };
                match dist.normal_form() {
                    Some(form) if form.is_finite_atomic() => {
                        elements.push(form.to_distribution());
                        signatures.push(sig);
                        products_added += 1;
                        grew = true;
                    }
                    _ => {
                        return Err(ConvError::ClosureFailure(format!(
                            "product of {a:?} and {b:?} does not normalize to atoms"
                        )))
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }

    let unity_sig = dist_signature(&Distribution::delta(Rational::zero()), panel)?;
    let unity_present = signatures.contains(&unity_sig);

    // commutativity and associativity statistics over the generator span
    let mut commutative_pairs = 0usize;
    let mut noncommutative_pairs = 0usize;
    for i in 0..span_size {
        for j in (i + 1)..span_size {
            let ab = signature(&convolve(&elements[i], &elements[j])?, panel)?;
            let ba = signature(&convolve(&elements[j], &elements[i])?, panel)?;
            if ab == ba {
                commutative_pairs += 1;
            } else {
                noncommutative_pairs += 1;
            }
        }
    }
    let mut associative_triples = 0usize;
    let mut nonassociative_triples = 0usize;
    for a in elements.iter().take(span_size) {
        for b in elements.iter().take(span_size) {
            for c in elements.iter().take(span_size) {
                let left = match convolve(a, b)? {
                    Convolution::Closed(ab) => convolve(&ab, c)?,
                    lazy => {
                        return Err(ConvError::ClosureFailure(format!(
                            "unexpected lazy product in span: {lazy:?}"
                        )))
                    }
                };
                let right = match convolve(b, c)? {
                    Convolution::Closed(bc) => convolve(a, &bc)?,
                    lazy => {
                        return Err(ConvError::ClosureFailure(format!(
                            "unexpected lazy product in span: {lazy:?}"
                        )))
                    }
                };
                if signature(&left, panel)? == signature(&right, panel)? {
                    associative_triples += 1;
                } else {
                    nonassociative_triples += 1;
                }
            }
        }
    }

    Ok(AlgebraReport {
        span_size,
        element_count: elements.len(),
        unity_present,
        products_checked,
        products_identified,
        products_added,
        commutative_pairs,
        noncommutative_pairs,
        associative_triples,
        nonassociative_triples,
    })
}
