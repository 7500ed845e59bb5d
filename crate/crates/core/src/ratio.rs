//! Exact non-negative rationals for densities and elasticities.

use core::cmp::Ordering;
use core::fmt;

use crate::arith::gcd_u128;

/// A reduced non-negative fraction `num / den` with `den > 0`.
///
/// Counts stay below `2^64` throughout the crate, so cross products used for
/// comparison and subtraction fit in `u128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: u128,
    den: u128,
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    /// Panics if `den == 0`.
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den != 0, "ratio with zero denominator");
        let g = gcd_u128(num, den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn numer(&self) -> u128 {
        self.num
    }

    pub fn denom(&self) -> u128 {
        self.den
    }

    /// `1 - 1/q`, the atomic density of any ACM with `gcd(a, b) = q`.
    pub fn one_minus_reciprocal(q: u64) -> Self {
        assert!(q > 0);
        Ratio::new(u128::from(q) - 1, u128::from(q))
    }

    pub fn abs_diff(self, other: Ratio) -> Ratio {
        let lhs = self.num * other.den;
        let rhs = other.num * self.den;
        Ratio::new(lhs.abs_diff(rhs), self.den * other.den)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
