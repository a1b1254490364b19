//! Bounded closed intervals `[lo, hi]` of the exact time axis.

use std::fmt;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    lo: Rational,
    hi: Rational,
}

impl Window {
    /// Panics if `lo > hi`.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "window bounds out of order");
        Window { lo, hi }
    }

    pub fn try_new(lo: Rational, hi: Rational) -> Option<Self> {
        (lo <= hi).then_some(Window { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, t: &Rational) -> bool {
        &self.lo <= t && t <= &self.hi
    }

    /// Widens the window by `pad` on both sides.
    pub fn padded(&self, pad: &Rational) -> Window {
        Window::new(&self.lo - pad, &self.hi + pad)
    }

    pub fn translated(&self, tau: &Rational) -> Window {
        Window::new(&self.lo + tau, &self.hi + tau)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn membership_and_padding() {
        let w = Window::new(q("-1"), q("1/2"));
        assert!(w.contains(&q("0")));
        assert!(w.contains(&q("1/2")));
        assert!(!w.contains(&q("2/3")));
        let p = w.padded(&q("1"));
        assert_eq!(p, Window::new(q("-2"), q("3/2")));
    }

    #[test]
    fn degenerate_window_is_allowed() {
        let w = Window::new(q("3"), q("3"));
        assert!(w.contains(&q("3")));
        assert!(Window::try_new(q("4"), q("3")).is_none());
    }
}
