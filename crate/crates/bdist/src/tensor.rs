//! Distributions of two variables: the direct (tensor) product of two
//! one-variable distributions, regular pair-supported distributions, and
//! partial lateral limits and derivatives per axis.
//!
//! A tensor application nests the factors: the second factor consumes the
//! u-sections of the two-variable test function (one per t-cell, since
//! sections are constant within a cell), assembling a one-variable test
//! function that the first factor then consumes.

use std::collections::BTreeMap;

use crate::bit::{mod2_sum, Bit};
use crate::dist::{DistError, Distribution, Side};
use crate::point_set::LocallyFiniteSet;
use crate::rational::Rational;
use crate::step_fn::StepFunction;
use crate::test_fn::{TestFunction, TestFunction2};
use crate::window::Window;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    T,
    U,
}

/// Support data of a regular two-variable distribution: explicit pairs XOR
/// a product of locally finite sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Support2 {
    pairs: Vec<(Rational, Rational)>,
    product: Option<(LocallyFiniteSet, LocallyFiniteSet)>,
}

impl Support2 {
    pub fn empty() -> Self {
        Support2::default()
    }

    pub fn from_pairs(mut pairs: Vec<(Rational, Rational)>) -> Self {
        pairs.sort();
        // XOR semantics: even multiplicity cancels
        let mut kept = Vec::with_capacity(pairs.len());
        let mut i = 0;
        while i < pairs.len() {
            let mut j = i + 1;
            while j < pairs.len() && pairs[j] == pairs[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                kept.push(pairs[i].clone());
            }
            i = j;
        }
        Support2 {
            pairs: kept,
            product: None,
        }
    }

    pub fn from_product(t_set: LocallyFiniteSet, u_set: LocallyFiniteSet) -> Self {
        if t_set.is_empty() || u_set.is_empty() {
            return Support2::empty();
        }
        Support2 {
            pairs: Vec::new(),
            product: Some((t_set, u_set)),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty() && self.product.is_none()
    }

    /// Member pairs inside the box, XOR-merged between the explicit list
    /// and the product part.
    pub fn enumerate(&self, tw: &Window, uw: &Window) -> Vec<(Rational, Rational)> {
        let mut hits: BTreeMap<(Rational, Rational), bool> = BTreeMap::new();
        let mut flip = |p: (Rational, Rational)| {
            let e = hits.entry(p).or_insert(false);
            *e = !*e;
        };
        for (t, u) in &self.pairs {
            if tw.contains(t) && uw.contains(u) {
                flip((t.clone(), u.clone()));
            }
        }
        if let Some((ts, us)) = &self.product {
            let t_members = ts.enumerate(tw);
            let u_members = us.enumerate(uw);
            for t in &t_members {
                for u in &u_members {
                    flip((t.clone(), u.clone()));
                }
            }
        }
        hits.into_iter()
            .filter(|(_, odd)| *odd)
            .map(|(p, _)| p)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Distribution2 {
    Tensor(Box<Distribution>, Box<Distribution>),
    Regular2(Support2),
    Xor2(Box<Distribution2>, Box<Distribution2>),
    Translate2(Rational, Rational, Box<Distribution2>),
    PartialLimit(Axis, Side, Box<Distribution2>),
    PartialDeriv(Axis, Side, Box<Distribution2>),
}

/// Direct product; a product of regular factors collapses to a regular
/// pair-supported node.
pub fn tensor(f: Distribution, g: Distribution) -> Distribution2 {
    if f.is_zero_node() || g.is_zero_node() {
        return Distribution2::Regular2(Support2::empty());
    }
    match (f, g) {
        (Distribution::Regular(a), Distribution::Regular(b)) => {
            Distribution2::Regular2(Support2::from_product(a, b))
        }
        (f, g) => Distribution2::Tensor(Box::new(f), Box::new(g)),
    }
}

/// Per-axis lateral limit; on a tensor node it acts on the matching factor.
pub fn partial_limit(f: Distribution2, axis: Axis, side: Side) -> Distribution2 {
    match f {
        Distribution2::Tensor(a, b) => match (axis, side) {
            (Axis::T, Side::Left) => tensor(a.limit_left(), *b),
            (Axis::T, Side::Right) => tensor(a.limit_right(), *b),
            (Axis::U, Side::Left) => tensor(*a, b.limit_left()),
            (Axis::U, Side::Right) => tensor(*a, b.limit_right()),
        },
        other => Distribution2::PartialLimit(axis, side, Box::new(other)),
    }
}

/// Per-axis lateral derivative; on a tensor node it derives the matching
/// factor.
pub fn partial_deriv(f: Distribution2, axis: Axis, side: Side) -> Distribution2 {
    match f {
        Distribution2::Tensor(a, b) => match (axis, side) {
            (Axis::T, Side::Left) => tensor(a.deriv_left_dist(), *b),
            (Axis::T, Side::Right) => tensor(a.deriv_right_dist(), *b),
            (Axis::U, Side::Left) => tensor(*a, b.deriv_left_dist()),
            (Axis::U, Side::Right) => tensor(*a, b.deriv_right_dist()),
        },
        other => Distribution2::PartialDeriv(axis, side, Box::new(other)),
    }
}

impl Distribution2 {
    pub fn zero() -> Self {
        Distribution2::Regular2(Support2::empty())
    }

    pub fn xor2(self, other: Distribution2) -> Distribution2 {
        Distribution2::Xor2(Box::new(self), Box::new(other))
    }

    /// Exact application to a two-variable test function.
    pub fn apply2(&self, phi2: &TestFunction2) -> Result<Bit, DistError> {
        match self {
            Distribution2::Tensor(f, g) => {
                let (bps, point_sections, interval_sections) = phi2.t_cell_sections();
                let mut point_values = Vec::with_capacity(point_sections.len());
                for s in &point_sections {
                    point_values.push(g.apply(s)?);
                }
                let mut interval_values = Vec::with_capacity(interval_sections.len());
                for s in &interval_sections {
                    interval_values.push(g.apply(s)?);
                }
                let inner = StepFunction::from_parts(bps, point_values, interval_values);
                let inner = TestFunction::try_from_step(inner)
                    .expect("tail sections of a test function are zero");
                f.apply(&inner)
            }
            Distribution2::Regular2(s) => {
                let (tw, uw) = match bounding_box(phi2) {
                    None => return Ok(Bit::Zero),
                    Some(b) => b,
                };
                Ok(mod2_sum(
                    s.enumerate(&tw, &uw)
                        .iter()
                        .map(|(t, u)| phi2.eval2(t, u)),
                ))
            }
            Distribution2::Xor2(a, b) => Ok(a.apply2(phi2)? ^ b.apply2(phi2)?),
            Distribution2::Translate2(tau, nu, a) => {
                a.apply2(&phi2.translate2(&-tau, &-nu))
            }
            Distribution2::PartialLimit(axis, side, a) => a.stabilized_partial(phi2, *axis, *side),
            Distribution2::PartialDeriv(axis, side, a) => {
                Ok(a.apply2(phi2)? ^ a.stabilized_partial(phi2, *axis, *side)?)
            }
        }
    }

    fn stabilized_partial(
        &self,
        phi2: &TestFunction2,
        axis: Axis,
        side: Side,
    ) -> Result<Bit, DistError> {
        let axis_bps = match axis {
            Axis::T => phi2.t_breakpoints(),
            Axis::U => phi2.u_breakpoints(),
        };
        let window = if axis_bps.is_empty() {
            Window::new(Rational::from_int(-1), Rational::from_int(1))
        } else {
            Window::new(axis_bps[0].clone(), axis_bps[axis_bps.len() - 1].clone())
                .padded(&Rational::one())
        };
        let mut abscissas = self.critical_axis_abscissas(axis, &window);
        abscissas.extend_from_slice(axis_bps);
        abscissas.sort();
        abscissas.dedup();
        let min_gap = abscissas.windows(2).map(|p| &p[1] - &p[0]).min();
        let eps_star = Rational::min(
            Rational::from_pair(1, 2),
            min_gap.map(|g| g.half()).unwrap_or_else(Rational::one),
        );
        let eval_at = |eps: Rational| {
            let shift = match side {
                Side::Left => eps,
                Side::Right => -eps,
            };
            let moved = match axis {
                Axis::T => phi2.translate2(&shift, &Rational::zero()),
                Axis::U => phi2.translate2(&Rational::zero(), &shift),
            };
            self.apply2(&moved)
        };
        let v1 = eval_at(eps_star.half())?;
        let v2 = eval_at(eps_star.half().half())?;
        if v1 != v2 {
            return Err(DistError::LimitNotStabilized);
        }
        Ok(v1)
    }

    /// Critical abscissas along one axis inside a window.
    pub fn critical_axis_abscissas(&self, axis: Axis, w: &Window) -> Vec<Rational> {
        match self {
            Distribution2::Tensor(f, g) => match axis {
                Axis::T => f.critical_abscissas(w),
                Axis::U => g.critical_abscissas(w),
            },
            Distribution2::Regular2(s) => {
                let mut out: Vec<Rational> = s
                    .pairs
                    .iter()
                    .map(|(t, u)| match axis {
                        Axis::T => t.clone(),
                        Axis::U => u.clone(),
                    })
                    .filter(|x| w.contains(x))
                    .collect();
                if let Some((ts, us)) = &s.product {
                    let set = match axis {
                        Axis::T => ts,
                        Axis::U => us,
                    };
                    out.extend(set.enumerate(w));
                }
                out
            }
            Distribution2::Xor2(a, b) => {
                let mut out = a.critical_axis_abscissas(axis, w);
                out.extend(b.critical_axis_abscissas(axis, w));
                out
            }
            Distribution2::Translate2(tau, nu, a) => {
                let shift = match axis {
                    Axis::T => tau,
                    Axis::U => nu,
                };
                a.critical_axis_abscissas(axis, &w.translated(&-shift))
                    .into_iter()
                    .map(|x| &x + shift)
                    .collect()
            }
            Distribution2::PartialLimit(_, _, a) | Distribution2::PartialDeriv(_, _, a) => {
                a.critical_axis_abscissas(axis, w)
            }
        }
    }
}

fn bounding_box(phi2: &TestFunction2) -> Option<(Window, Window)> {
    let t = phi2.t_breakpoints();
    let u = phi2.u_breakpoints();
    if t.is_empty() || u.is_empty() {
        return None;
    }
    Some((
        Window::new(t[0].clone(), t[t.len() - 1].clone()),
        Window::new(u[0].clone(), u[u.len() - 1].clone()),
    ))
}

/// Returns the two nesting orders of the pair `(f ⊗ g) φ²` and
/// `(g ⊗ f) (φ²)ᵀ`; they must agree.
pub fn commutativity_check(
    f: &Distribution,
    g: &Distribution,
    phi2: &TestFunction2,
) -> Result<(Bit, Bit), DistError> {
    let a = tensor(f.clone(), g.clone()).apply2(phi2)?;
    let b = tensor(g.clone(), f.clone()).apply2(&phi2.transpose())?;
    Ok((a, b))
}
