//! Exact, window-enumerable locally finite subsets of the real line.
//!
//! A set is carried as a list of arithmetic progressions plus a finite list
//! of toggle points, all combined by symmetric difference: a real `t` is a
//! member iff it lies in an odd number of progressions XOR it is a toggle.
//! This keeps the representation closed under the B₂ sum of indicator
//! functions without ever expanding an infinite set.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rational::Rational;
use crate::window::Window;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProgressionRange {
    /// z ranges over all integers.
    AllIntegers,
    /// z >= 0.
    NonNegative,
    /// z <= 0.
    NonPositive,
}

/// The set `{offset + z * period}` with `z` restricted by `range`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Progression {
    offset: Rational,
    period: Rational,
    range: ProgressionRange,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SetError {
    #[error("progression period must be positive")]
    ZeroPeriod,
    #[error("union operands overlap at {0}")]
    OverlappingUnion(Rational),
    #[error("symmetric difference is not representable")]
    Unrepresentable,
}

/// Classification of a locally finite set by how its infinite tails sit on
/// the line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetClass {
    Finite,
    InferiorlyFinite,
    SuperiorlyFinite,
    LocallyFiniteOnly,
}

impl Progression {
    pub fn new(
        offset: Rational,
        period: Rational,
        range: ProgressionRange,
    ) -> Result<Self, SetError> {
        if !period.is_positive() {
            return Err(SetError::ZeroPeriod);
        }
        let mut p = Progression { offset, period, range };
        p.normalize_offset();
        Ok(p)
    }

    /// For a two-sided progression the offset is only defined mod the
    /// period; pin it into `[0, period)` so equality is structural.
    fn normalize_offset(&mut self) {
        if self.range == ProgressionRange::AllIntegers {
            let steps = (self.offset.clone() / self.period.clone()).floor();
            let shift = Rational::new(steps, BigInt::from(1)).unwrap() * self.period.clone();
            self.offset = &self.offset - &shift;
        }
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn period(&self) -> &Rational {
        &self.period
    }

    pub fn range(&self) -> ProgressionRange {
        self.range
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let steps = (t - &self.offset) / self.period.clone();
        if !steps.is_integer() {
            return false;
        }
        match self.range {
            ProgressionRange::AllIntegers => true,
            ProgressionRange::NonNegative => !steps.is_negative(),
            ProgressionRange::NonPositive => !steps.is_positive(),
        }
    }

    pub fn enumerate(&self, w: &Window) -> Vec<Rational> {
        let mut lo_z = ((w.lo() - &self.offset) / self.period.clone()).ceil();
        let mut hi_z = ((w.hi() - &self.offset) / self.period.clone()).floor();
        match self.range {
            ProgressionRange::AllIntegers => {}
            ProgressionRange::NonNegative => {
                if lo_z.is_negative() {
                    lo_z = BigInt::zero();
                }
            }
            ProgressionRange::NonPositive => {
                if hi_z.is_positive() {
                    hi_z = BigInt::zero();
                }
            }
        }
        let mut out = Vec::new();
        let mut z = lo_z;
        while z <= hi_z {
            let zq = Rational::new(z.clone(), BigInt::from(1)).unwrap();
            out.push(&self.offset + &(zq * self.period.clone()));
            z += 1;
        }
        out
    }

    pub fn translated(&self, tau: &Rational) -> Progression {
        let mut p = Progression {
            offset: &self.offset + tau,
            period: self.period.clone(),
            range: self.range,
        };
        p.normalize_offset();
        p
    }

    pub fn reflected(&self) -> Progression {
        let range = match self.range {
            ProgressionRange::AllIntegers => ProgressionRange::AllIntegers,
            ProgressionRange::NonNegative => ProgressionRange::NonPositive,
            ProgressionRange::NonPositive => ProgressionRange::NonNegative,
        };
        let mut p = Progression {
            offset: -&self.offset,
            period: self.period.clone(),
            range,
        };
        p.normalize_offset();
        p
    }

    /// Smallest member, when one exists.
    fn min_member(&self) -> Option<Rational> {
        match self.range {
            ProgressionRange::NonNegative => Some(self.offset.clone()),
            _ => None,
        }
    }

    fn max_member(&self) -> Option<Rational> {
        match self.range {
            ProgressionRange::NonPositive => Some(self.offset.clone()),
            _ => None,
        }
    }

    /// True when the two progressions have the same period and their
    /// offsets differ by an integer multiple of it.
    fn same_lattice(&self, other: &Progression) -> bool {
        self.period == other.period
            && ((&self.offset - &other.offset) / self.period.clone()).is_integer()
    }

    /// Does any point satisfy both progressions' congruence and range
    /// constraints? Exact, via the linear Diophantine equation
    /// `z1*p1 - z2*p2 = offset2 - offset1`.
    fn intersects(&self, other: &Progression) -> Option<Rational> {
        let d = &other.offset - &self.offset;
        // scale to integers
        let denom_lcm = self
            .period
            .denominator()
            .lcm(other.period.denominator())
            .lcm(d.denominator());
        let scale = Rational::new(denom_lcm, BigInt::from(1)).unwrap();
        let a = (&self.period * &scale).numerator().clone();
        let b = (&other.period * &scale).numerator().clone();
        let c = (&d * &scale).numerator().clone();
        let ext = a.extended_gcd(&b);
        let g = ext.gcd.clone();
        if !(&c % &g).is_zero() {
            return None;
        }
        let scale_c = &c / &g;
        // z1 = z1_0 + k*(b/g), z2 = z2_0 + k*(a/g)
        let z1_0 = &ext.x * &scale_c;
        let z2_0 = -(&ext.y * &scale_c);
        let step1 = &b / &g; // > 0
        let step2 = &a / &g; // > 0
        let mut k_lo: Option<BigInt> = None;
        let mut k_hi: Option<BigInt> = None;
        let mut clamp = |z0: &BigInt, step: &BigInt, range: ProgressionRange| {
            // k bound from z0 + k*step constrained by range
            match range {
                ProgressionRange::AllIntegers => {}
                ProgressionRange::NonNegative => {
                    // k >= ceil(-z0/step)
                    let bound = (-z0).div_ceil(step);
                    k_lo = Some(match &k_lo {
                        Some(cur) => bound.max(cur.clone()),
                        None => bound,
                    });
                }
                ProgressionRange::NonPositive => {
                    // k <= floor(-z0/step)
                    let bound = (-z0).div_floor(step);
                    k_hi = Some(match &k_hi {
                        Some(cur) => bound.min(cur.clone()),
                        None => bound,
                    });
                }
            }
        };
        clamp(&z1_0, &step1, self.range);
        clamp(&z2_0, &step2, other.range);
        let k = match (&k_lo, &k_hi) {
            (Some(lo), Some(hi)) if lo > hi => return None,
            (Some(lo), _) => lo.clone(),
            (None, Some(hi)) => hi.clone(),
            (None, None) => BigInt::zero(),
        };
        let z1 = z1_0 + k * step1;
        let z1q = Rational::new(z1, BigInt::from(1)).unwrap();
        Some(&self.offset + &(z1q * self.period.clone()))
    }
}

/// A locally finite subset of R in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LocallyFiniteSet {
    progressions: Vec<Progression>,
    toggles: Vec<Rational>,
}

impl LocallyFiniteSet {
    pub fn empty() -> Self {
        LocallyFiniteSet::default()
    }

    pub fn from_points<I: IntoIterator<Item = Rational>>(points: I) -> Self {
        let mut s = LocallyFiniteSet {
            progressions: Vec::new(),
            toggles: points.into_iter().collect(),
        };
        s.canonicalize();
        s
    }

    pub fn from_progression(p: Progression) -> Self {
        LocallyFiniteSet {
            progressions: vec![p],
            toggles: Vec::new(),
        }
    }

    pub fn singleton(t: Rational) -> Self {
        LocallyFiniteSet::from_points([t])
    }

    pub fn progressions(&self) -> &[Progression] {
        &self.progressions
    }

    pub fn toggles(&self) -> &[Rational] {
        &self.toggles
    }

    pub fn is_empty(&self) -> bool {
        self.progressions.is_empty() && self.toggles.is_empty()
    }

    pub fn membership(&self, t: &Rational) -> bool {
        let mut inside = self.toggles.binary_search(t).is_ok();
        for p in &self.progressions {
            if p.contains(t) {
                inside = !inside;
            }
        }
        inside
    }

    /// Exactly the members inside `[w.lo, w.hi]`, sorted, no duplicates.
    pub fn enumerate(&self, w: &Window) -> Vec<Rational> {
        let mut hits: BTreeMap<Rational, bool> = BTreeMap::new();
        let mut flip = |t: Rational| {
            let e = hits.entry(t).or_insert(false);
            *e = !*e;
        };
        for t in &self.toggles {
            if w.contains(t) {
                flip(t.clone());
            }
        }
        for p in &self.progressions {
            for t in p.enumerate(w) {
                flip(t);
            }
        }
        hits.into_iter().filter(|(_, odd)| *odd).map(|(t, _)| t).collect()
    }

    /// Pointwise XOR of indicator functions.
    pub fn sym_diff(&self, other: &LocallyFiniteSet) -> LocallyFiniteSet {
        let mut s = LocallyFiniteSet {
            progressions: self
                .progressions
                .iter()
                .chain(&other.progressions)
                .cloned()
                .collect(),
            toggles: self.toggles.iter().chain(&other.toggles).cloned().collect(),
        };
        s.canonicalize();
        s
    }

    /// Union that insists the operands are disjoint; with XOR semantics the
    /// result then coincides with the symmetric difference.
    pub fn union_disjoint(&self, other: &LocallyFiniteSet) -> Result<LocallyFiniteSet, SetError> {
        if let Some(t) = self.common_point(other) {
            return Err(SetError::OverlappingUnion(t));
        }
        Ok(self.sym_diff(other))
    }

    fn common_point(&self, other: &LocallyFiniteSet) -> Option<Rational> {
        for t in &self.toggles {
            if self.membership(t) && other.membership(t) {
                return Some(t.clone());
            }
        }
        for t in &other.toggles {
            if self.membership(t) && other.membership(t) {
                return Some(t.clone());
            }
        }
        for p in &self.progressions {
            for q in &other.progressions {
                if let Some(t) = p.intersects(q) {
                    if self.membership(&t) && other.membership(&t) {
                        return Some(t);
                    }
                }
            }
        }
        None
    }

    pub fn translated(&self, tau: &Rational) -> LocallyFiniteSet {
        LocallyFiniteSet {
            progressions: self.progressions.iter().map(|p| p.translated(tau)).collect(),
            toggles: self.toggles.iter().map(|t| t + tau).collect(),
        }
    }

    pub fn reflected(&self) -> LocallyFiniteSet {
        let mut s = LocallyFiniteSet {
            progressions: self.progressions.iter().map(|p| p.reflected()).collect(),
            toggles: self.toggles.iter().map(|t| -t).collect(),
        };
        s.toggles.sort();
        s
    }

    pub fn classify(&self) -> SetClass {
        if self.progressions.is_empty() {
            return SetClass::Finite;
        }
        let all_up = self
            .progressions
            .iter()
            .all(|p| p.range() == ProgressionRange::NonNegative);
        if all_up {
            return SetClass::InferiorlyFinite;
        }
        let all_down = self
            .progressions
            .iter()
            .all(|p| p.range() == ProgressionRange::NonPositive);
        if all_down {
            return SetClass::SuperiorlyFinite;
        }
        SetClass::LocallyFiniteOnly
    }

    /// Some rational `<=` every member (not necessarily attained). `None`
    /// when the set has no lower bound or is empty.
    pub fn lower_bound(&self) -> Option<Rational> {
        match self.classify() {
            SetClass::Finite => self
                .toggles
                .iter()
                .filter(|t| self.membership(t))
                .min()
                .cloned(),
            SetClass::InferiorlyFinite => {
                let mut lo = self
                    .progressions
                    .iter()
                    .filter_map(|p| p.min_member())
                    .min()
                    .expect("inferiorly finite set has an up progression");
                if let Some(t) = self.toggles.iter().min() {
                    lo = Rational::min(lo, t.clone());
                }
                Some(lo)
            }
            _ => None,
        }
    }

    pub fn upper_bound(&self) -> Option<Rational> {
        match self.classify() {
            SetClass::Finite => self
                .toggles
                .iter()
                .filter(|t| self.membership(t))
                .max()
                .cloned(),
            SetClass::SuperiorlyFinite => {
                let mut hi = self
                    .progressions
                    .iter()
                    .filter_map(|p| p.max_member())
                    .max()
                    .expect("superiorly finite set has a down progression");
                if let Some(t) = self.toggles.iter().max() {
                    hi = Rational::max(hi, t.clone());
                }
                Some(hi)
            }
            _ => None,
        }
    }

    /// Members of a finite-class set, sorted. Panics on infinite classes.
    pub fn finite_members(&self) -> Vec<Rational> {
        assert_eq!(self.classify(), SetClass::Finite, "set is not finite");
        self.toggles
            .iter()
            .filter(|t| self.membership(t))
            .cloned()
            .collect()
    }

    fn canonicalize(&mut self) {
        // toggle points survive iff they occur an odd number of times
        self.toggles.sort();
        let mut kept: Vec<Rational> = Vec::with_capacity(self.toggles.len());
        let mut i = 0;
        while i < self.toggles.len() {
            let mut j = i + 1;
            while j < self.toggles.len() && self.toggles[j] == self.toggles[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                kept.push(self.toggles[i].clone());
            }
            i = j;
        }
        self.toggles = kept;

        // fold progressions sharing the same lattice until no reducible
        // pair remains; the finite residue moves into the toggles
        loop {
            let mut reduced = false;
            'outer: for i in 0..self.progressions.len() {
                for j in (i + 1)..self.progressions.len() {
                    if self.progressions[i].same_lattice(&self.progressions[j])
                        && reducible(&self.progressions[i], &self.progressions[j])
                    {
                        let b = self.progressions.remove(j);
                        let a = self.progressions.remove(i);
                        let (repl, extra) = combine_same_lattice(a, b);
                        self.progressions.extend(repl);
                        self.toggles.extend(extra);
                        reduced = true;
                        break 'outer;
                    }
                }
            }
            if !reduced {
                break;
            }
            // re-fold toggle parity after each combination
            self.toggles.sort();
            let old = std::mem::take(&mut self.toggles);
            let mut i = 0;
            while i < old.len() {
                let mut j = i + 1;
                while j < old.len() && old[j] == old[i] {
                    j += 1;
                }
                if (j - i) % 2 == 1 {
                    self.toggles.push(old[i].clone());
                }
                i = j;
            }
        }
        self.progressions.sort_by(|a, b| {
            (a.period(), a.offset(), a.range()).cmp(&(b.period(), b.offset(), b.range()))
        });
    }
}

/// Same-lattice pairs fold away except two half-progressions that face
/// away from each other, which are already disjoint and canonical.
fn reducible(a: &Progression, b: &Progression) -> bool {
    use ProgressionRange::*;
    match (a.range, b.range) {
        (NonNegative, NonPositive) => a.offset <= b.offset,
        (NonPositive, NonNegative) => b.offset <= a.offset,
        _ => true,
    }
}

/// XOR of two progressions on the same lattice; every case strictly lowers
/// the progression count, so canonicalization terminates.
fn combine_same_lattice(a: Progression, b: Progression) -> (Vec<Progression>, Vec<Rational>) {
    use ProgressionRange::*;
    let period = a.period.clone();
    if a == b {
        return (Vec::new(), Vec::new());
    }
    let steps_between = |lo: &Rational, hi: &Rational| -> Vec<Rational> {
        // points lo, lo+p, ..., hi inclusive, on the shared lattice
        let mut out = Vec::new();
        let mut t = lo.clone();
        while &t <= hi {
            out.push(t.clone());
            t = &t + &period;
        }
        out
    };
    match (a.range, b.range) {
        (AllIntegers, AllIntegers) => unreachable!("equal after offset normalization"),
        (NonNegative, NonNegative) => {
            let (lo, hi) = if a.offset < b.offset {
                (a.offset, b.offset)
            } else {
                (b.offset, a.offset)
            };
            let upper = &hi - &period;
            (Vec::new(), steps_between(&lo, &upper))
        }
        (NonPositive, NonPositive) => {
            let (lo, hi) = if a.offset < b.offset {
                (a.offset, b.offset)
            } else {
                (b.offset, a.offset)
            };
            let lower = &lo + &period;
            (Vec::new(), steps_between(&lower, &hi))
        }
        (AllIntegers, NonNegative) | (NonNegative, AllIntegers) => {
            let up = if a.range == NonNegative { &a } else { &b };
            // everything strictly below the up-progression's start
            let p = Progression {
                offset: &up.offset - &period,
                period: period.clone(),
                range: NonPositive,
            };
            (vec![p], Vec::new())
        }
        (AllIntegers, NonPositive) | (NonPositive, AllIntegers) => {
            let down = if a.range == NonPositive { &a } else { &b };
            let p = Progression {
                offset: &down.offset + &period,
                period: period.clone(),
                range: NonNegative,
            };
            (vec![p], Vec::new())
        }
        (NonNegative, NonPositive) | (NonPositive, NonNegative) => {
            let (up, down) = if a.range == NonNegative { (a, b) } else { (b, a) };
            assert!(up.offset <= down.offset, "disjoint pair is not reducible");
            // the halves overlap on {up.offset, ..., down.offset}; the XOR
            // is the full lattice minus that block
            let mut all = Progression {
                offset: up.offset.clone(),
                period: period.clone(),
                range: AllIntegers,
            };
            all.normalize_offset();
            let toggles = steps_between(&up.offset, &down.offset);
            (vec![all], toggles)
        }
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.range {
            ProgressionRange::AllIntegers => "PROG",
            ProgressionRange::NonNegative => "PROGP",
            ProgressionRange::NonPositive => "PROGM",
        };
        write!(f, "{}({}, {})", name, self.offset, self.period)
    }
}

impl fmt::Display for LocallyFiniteSet {
    /// Canonical expression-language form: progressions joined by `D` with
    /// the finite toggle part last, e.g. `PROG(0, 1) D {0}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.progressions.is_empty() {
            f.write_str("{")?;
            for (i, t) in self.toggles.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{t}")?;
            }
            return f.write_str("}");
        }
        for (i, p) in self.progressions.iter().enumerate() {
            if i > 0 {
                f.write_str(" D ")?;
            }
            write!(f, "{p}")?;
        }
        if !self.toggles.is_empty() {
            f.write_str(" D {")?;
            for (i, t) in self.toggles.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn w(lo: &str, hi: &str) -> Window {
        Window::new(q(lo), q(hi))
    }

    fn prog(offset: &str, period: &str, range: ProgressionRange) -> Progression {
        Progression::new(q(offset), q(period), range).unwrap()
    }

    #[test]
    fn enumerate_finite_and_empty() {
        let s = LocallyFiniteSet::from_points([q("0"), q("1")]);
        assert_eq!(s.enumerate(&w("-1", "1/2")), vec![q("0")]);
        assert!(LocallyFiniteSet::empty().enumerate(&w("-5", "5")).is_empty());
    }

    #[test]
    fn enumerate_progression() {
        let s = LocallyFiniteSet::from_progression(prog("0", "1", ProgressionRange::AllIntegers));
        assert_eq!(s.enumerate(&w("-3/2", "3/2")), vec![q("-1"), q("0"), q("1")]);
    }

    #[test]
    fn zero_period_rejected() {
        assert_eq!(
            Progression::new(q("0"), q("0"), ProgressionRange::AllIntegers),
            Err(SetError::ZeroPeriod)
        );
        assert_eq!(
            Progression::new(q("0"), q("-1"), ProgressionRange::AllIntegers),
            Err(SetError::ZeroPeriod)
        );
    }

    #[test]
    fn sym_diff_finite_cases() {
        let a = LocallyFiniteSet::from_points([q("0"), q("1")]);
        let b = LocallyFiniteSet::from_points([q("1"), q("2")]);
        assert_eq!(
            a.sym_diff(&b),
            LocallyFiniteSet::from_points([q("0"), q("2")])
        );
        assert!(a.sym_diff(&a).is_empty());
    }

    #[test]
    fn sym_diff_progression_minus_point() {
        let p = LocallyFiniteSet::from_progression(prog("0", "1", ProgressionRange::AllIntegers));
        let s = p.sym_diff(&LocallyFiniteSet::singleton(q("0")));
        assert_eq!(s.enumerate(&w("-1/2", "3/2")), vec![q("1")]);
        assert!(!s.membership(&q("0")));
        assert!(s.membership(&q("7")));
    }

    #[test]
    fn sym_diff_cancels_equal_lattices() {
        let a = LocallyFiniteSet::from_progression(prog("0", "1", ProgressionRange::AllIntegers));
        let b = LocallyFiniteSet::from_progression(prog("5", "1", ProgressionRange::AllIntegers));
        assert!(a.sym_diff(&b).is_empty());
    }

    #[test]
    fn sym_diff_of_shifted_up_progressions_is_finite() {
        let a = LocallyFiniteSet::from_progression(prog("0", "1", ProgressionRange::NonNegative));
        let b = LocallyFiniteSet::from_progression(prog("3", "1", ProgressionRange::NonNegative));
        let d = a.sym_diff(&b);
        assert_eq!(d.classify(), SetClass::Finite);
        assert_eq!(d.finite_members(), vec![q("0"), q("1"), q("2")]);
    }

    #[test]
    fn translate_and_reflect() {
        let s = LocallyFiniteSet::from_points([q("0"), q("1")]);
        assert_eq!(
            s.translated(&q("2")),
            LocallyFiniteSet::from_points([q("2"), q("3")])
        );
        let p = LocallyFiniteSet::from_progression(prog("0", "1", ProgressionRange::AllIntegers));
        let pt = p.translated(&q("1/2"));
        assert!(pt.membership(&q("1/2")));
        assert!(!pt.membership(&q("0")));
        assert_eq!(
            LocallyFiniteSet::from_points([q("-1"), q("3")]).reflected(),
            LocallyFiniteSet::from_points([q("-3"), q("1")])
        );
    }

    #[test]
    fn classify_cases() {
        assert_eq!(
            LocallyFiniteSet::from_points([q("0"), q("1")]).classify(),
            SetClass::Finite
        );
        let s = LocallyFiniteSet::singleton(q("0")).sym_diff(
            &LocallyFiniteSet::from_progression(prog("1", "1", ProgressionRange::NonNegative)),
        );
        assert_eq!(s.classify(), SetClass::InferiorlyFinite);
        assert_eq!(
            LocallyFiniteSet::from_progression(prog("0", "1", ProgressionRange::AllIntegers))
                .classify(),
            SetClass::LocallyFiniteOnly
        );
        assert_eq!(
            LocallyFiniteSet::from_progression(prog("0", "1", ProgressionRange::NonPositive))
                .classify(),
            SetClass::SuperiorlyFinite
        );
    }

    #[test]
    fn union_disjoint_detects_overlap() {
        let a = LocallyFiniteSet::from_points([q("0"), q("1")]);
        let b = LocallyFiniteSet::from_points([q("1"), q("2")]);
        assert_eq!(
            a.union_disjoint(&b),
            Err(SetError::OverlappingUnion(q("1")))
        );
        let c = LocallyFiniteSet::from_points([q("5")]);
        assert!(a.union_disjoint(&c).is_ok());
        // progression against progression, incompatible residues
        let p1 = LocallyFiniteSet::from_progression(prog("0", "2", ProgressionRange::AllIntegers));
        let p2 = LocallyFiniteSet::from_progression(prog("1", "2", ProgressionRange::AllIntegers));
        assert!(p1.union_disjoint(&p2).is_ok());
        // overlapping lattices with different periods
        let p3 = LocallyFiniteSet::from_progression(prog("0", "3", ProgressionRange::AllIntegers));
        assert!(p1.union_disjoint(&p3).is_err());
        // ranged progressions facing away from each other never meet
        let up = LocallyFiniteSet::from_progression(prog("1", "1", ProgressionRange::NonNegative));
        let down =
            LocallyFiniteSet::from_progression(prog("0", "1", ProgressionRange::NonPositive));
        assert!(up.union_disjoint(&down).is_ok());
    }

    #[test]
    fn enumerate_translation_identity() {
        let s = LocallyFiniteSet::from_progression(prog("1/3", "1/2", ProgressionRange::AllIntegers))
            .sym_diff(&LocallyFiniteSet::from_points([q("0"), q("4/3")]));
        let tau = q("3/4");
        let win = w("-2", "2");
        let translated = s.translated(&tau);
        let lhs = translated.enumerate(&win);
        let shifted_win = Window::new(win.lo() - &tau, win.hi() - &tau);
        let rhs: Vec<Rational> = s.enumerate(&shifted_win).into_iter().map(|t| &t + &tau).collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sym_diff_counting_identity() {
        // |A xor B| = |A| + |B| - 2|A and B| inside a window
        let a = LocallyFiniteSet::from_points([q("0"), q("1"), q("5/2")]);
        let b = LocallyFiniteSet::from_progression(prog("0", "1/2", ProgressionRange::AllIntegers));
        let win = w("-1", "3");
        let ea = a.enumerate(&win);
        let eb = b.enumerate(&win);
        let ed = a.sym_diff(&b).enumerate(&win);
        let inter = ea.iter().filter(|t| eb.contains(t)).count();
        assert_eq!(ed.len(), ea.len() + eb.len() - 2 * inter);
    }
}
