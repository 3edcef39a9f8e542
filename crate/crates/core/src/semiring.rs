//! Negative-log weights and the two semirings they are combined under.

use core::cmp::Ordering;
use core::fmt;

/// A cost in negative-log space. Lower is more probable; `+inf` is impossible.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Weight(pub f64);

impl Weight {
    pub const ONE: Weight = Weight(0.0);
    pub const ZERO: Weight = Weight(f64::INFINITY);

    #[inline]
    pub fn new(cost: f64) -> Self {
        Weight(cost)
    }

    /// Weight of an event with probability `p`.
    #[inline]
    pub fn from_prob(p: f64) -> Self {
        Weight(-libm::log(p))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn prob(self) -> f64 {
        libm::exp(-self.0)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == f64::INFINITY
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    /// Total order used for Viterbi comparisons (NaN sorts last).
    #[inline]
    pub fn cmp_cost(self, other: Weight) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            f.write_str("Infinity")
        } else if self.0 == f64::NEG_INFINITY {
            f.write_str("-Infinity")
        } else {
            // `{}` on f64 is the shortest representation that reparses equal.
            write!(f, "{}", self.0)
        }
    }
}

/// Which algebra arc weights are combined under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Semiring {
    /// `plus` is -log(e^-a + e^-b).
    Log,
    /// `plus` is min.
    Tropical,
}

impl Semiring {
    #[inline]
    pub fn zero(self) -> Weight {
        Weight::ZERO
    }

    #[inline]
    pub fn one(self) -> Weight {
        Weight::ONE
    }

    #[inline]
    pub fn times(self, a: Weight, b: Weight) -> Weight {
        Weight(a.0 + b.0)
    }

    #[inline]
    pub fn plus(self, a: Weight, b: Weight) -> Weight {
        match self {
            Semiring::Tropical => {
                if a.0 <= b.0 {
                    a
                } else {
                    b
                }
            }
            Semiring::Log => Weight(log_plus(a.0, b.0)),
        }
    }

    /// Left division `a^-1 (x) b`; defined when `a` is not zero.
    #[inline]
    pub fn divide(self, b: Weight, a: Weight) -> Weight {
        if b.is_zero() {
            return Weight::ZERO;
        }
        Weight(b.0 - a.0)
    }

    /// `plus` folded over an iterator, starting from zero.
    pub fn sum<I: IntoIterator<Item = Weight>>(self, it: I) -> Weight {
        it.into_iter()
            .fold(Weight::ZERO, |acc, w| self.plus(acc, w))
    }
}

/// Stable -log(e^-a + e^-b).
#[inline]
pub fn log_plus(a: f64, b: f64) -> f64 {
    if a == f64::INFINITY {
        return b;
    }
    if b == f64::INFINITY {
        return a;
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    lo - libm::log1p(libm::exp(lo - hi))
}
