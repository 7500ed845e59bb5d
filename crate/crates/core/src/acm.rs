//! Validated congruence monoids and per-element classification.

use alloc::format;
use core::fmt;

use crate::arith::gcd;
use crate::error::{Error, Result};

/// Largest accepted modulus. Keeps `a * a` and member arithmetic inside `u64`
/// after a single `u128` check at construction.
pub const MAX_MODULUS: u64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AcmKind {
    /// `a = 1`, equivalently `gcd(a, b) = 1`.
    Regular,
    /// `a > 1`.
    Singular,
}

/// The monoid `{n >= 1 : n = a (mod b)} U {1}`.
///
/// Construction checks `1 <= a <= b` and the closure condition
/// `a^2 = a (mod b)`, then derives `q = gcd(a, b)`, `a' = a/q`, `b' = b/q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Acm {
    a: u64,
    b: u64,
    q: u64,
    a_prime: u64,
    b_prime: u64,
}

impl Acm {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if b == 0 {
            return Err(Error::validation("b must be at least 1"));
        }
        if b > MAX_MODULUS {
            return Err(Error::validation(format!("b = {b} exceeds the supported maximum {MAX_MODULUS}")));
        }
        if a == 0 || a > b {
            return Err(Error::validation(format!("need 1 <= a <= b, got a = {a}, b = {b}")));
        }
        let a2 = u128::from(a) * u128::from(a);
        if (a2 - u128::from(a)) % u128::from(b) != 0 {
            return Err(Error::validation(format!(
                "closure condition a^2 = a (mod b) fails: {a}^2 - {a} = {} is not divisible by {b}",
                a2 - u128::from(a)
            )));
        }
        let q = gcd(a, b);
        Ok(Acm {
            a,
            b,
            q,
            a_prime: a / q,
            b_prime: b / q,
        })
    }

    /// Every valid monoid with `b <= max_b`, ordered by `b` then `a`.
    pub fn all_up_to(max_b: u64) -> impl Iterator<Item = Acm> {
        (1..=max_b).flat_map(|b| (1..=b).filter_map(move |a| Acm::new(a, b).ok()))
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// `gcd(a, b)`.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn a_prime(&self) -> u64 {
        self.a_prime
    }

    pub fn b_prime(&self) -> u64 {
        self.b_prime
    }

    pub fn kind(&self) -> AcmKind {
        if self.a == 1 {
            AcmKind::Regular
        } else {
            AcmKind::Singular
        }
    }

    pub fn is_regular(&self) -> bool {
        self.kind() == AcmKind::Regular
    }

    /// Residue of the member class, `a mod b`.
    #[inline]
    pub fn residue(&self) -> u64 {
        self.a % self.b
    }

    #[inline]
    pub fn contains(&self, n: u64) -> bool {
        n == 1 || (n != 0 && n % self.b == self.residue())
    }

    /// Smallest member other than 1.
    pub fn first_non_unit(&self) -> u64 {
        if self.a == 1 {
            1 + self.b
        } else {
            self.a
        }
    }

    /// Smallest member of the class `[a]_b` that is `>= x`.
    pub fn next_in_class(&self, x: u64) -> Option<u64> {
        if x <= self.a {
            return Some(self.a);
        }
        let steps = (x - self.a).div_ceil(self.b);
        steps.checked_mul(self.b)?.checked_add(self.a)
    }

    /// Decides the status of `n` by scanning candidate divisors
    /// `d = a (mod b)` with `1 < d <= sqrt(n)` and checking that both `d` and
    /// `n / d` are members. This is the reference check the sieve is tested
    /// against.
    pub fn status(&self, n: u64) -> ElementStatus {
        if n == 1 {
            return ElementStatus::Unit;
        }
        if !self.contains(n) {
            return ElementStatus::NonMember;
        }
        match self.smallest_divisor_pair(n) {
            Some(_) => ElementStatus::Reducible,
            None => ElementStatus::Atom,
        }
    }

    pub fn is_atom(&self, n: u64) -> bool {
        self.status(n) == ElementStatus::Atom
    }

    /// The witness `(d, n/d)` with the smallest `d`, or `None` when `n` is an
    /// atom or the unit. Non-members are a domain error.
    pub fn reducibility_witness(&self, n: u64) -> Result<Option<Witness>> {
        if !self.contains(n) {
            return Err(Error::domain(format!("{n} is not a member of {self}")));
        }
        if n == 1 {
            return Ok(None);
        }
        Ok(self.smallest_divisor_pair(n).map(|(d, e)| Witness { d, e }))
    }

    fn smallest_divisor_pair(&self, n: u64) -> Option<(u64, u64)> {
        let mut d = self.first_non_unit();
        while d <= n / d {
            if n.is_multiple_of(d) {
                let e = n / d;
                if self.contains(d) && self.contains(e) && e != 1 {
                    return Some((d, e));
                }
            }
            d = d.checked_add(self.b)?;
        }
        None
    }
}

impl fmt::Display for Acm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.a, self.b)
    }
}

/// Classification of a positive integer relative to an [`Acm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementStatus {
    NonMember,
    /// Only ever `n = 1`.
    Unit,
    Atom,
    Reducible,
}

impl ElementStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ElementStatus::NonMember => "non_member",
            ElementStatus::Unit => "unit",
            ElementStatus::Atom => "atom",
            ElementStatus::Reducible => "reducible",
        }
    }
}

impl fmt::Display for ElementStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A certificate `n = d * e` with both factors non-unit members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Witness {
    d: u64,
    e: u64,
}

impl Witness {
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn pair(&self) -> (u64, u64) {
        (self.d, self.e)
    }

    /// Re-checks the certificate against `acm` for the element `n`.
    pub fn certifies(&self, acm: &Acm, n: u64) -> bool {
        self.d.checked_mul(self.e) == Some(n)
            && self.d != 1
            && self.e != 1
            && acm.contains(self.d)
            && acm.contains(self.e)
    }
}
