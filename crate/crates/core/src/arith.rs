//! Primes, integer factorization and residue classes.
//!
//! Two factorization routes exist and are tested against each other:
//! a smallest-prime-factor table for bulk work over `[1, N]`, and wheel trial
//! division backed by Pollard-Brent rho for isolated 64-bit inputs.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Products are rejected above this bound unless a caller configures another.
pub const DEFAULT_PRODUCT_CAP: u64 = 1 << 62;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `x * y`, or a resource error when the product overflows or exceeds `cap`.
pub fn checked_product(x: u64, y: u64, cap: u64) -> Result<u64> {
    match x.checked_mul(y) {
        Some(p) if p <= cap => Ok(p),
        _ => Err(Error::resource(format!("product {x} * {y} exceeds cap {cap}"))),
    }
}

/// Integer square root, `floor(sqrt(n))`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    // Newton iteration from above; decreases monotonically to floor(sqrt(n)).
    let mut x = 1u64 << (64 - n.leading_zeros()).div_ceil(2);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Euler's totient by factorization.
pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let f = factorize(n).expect("n >= 1");
    f.factors()
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

// ---------------------------------------------------------------------------
// Prime sieve

/// Tuning and limits for the segmented prime sieve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    /// Numbers per segment.
    pub segment_size: usize,
    /// Largest accepted `limit`.
    pub max_limit: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_size: 1 << 20,
            max_limit: 1 << 32,
        }
    }
}

impl SieveConfig {
    /// All primes `<= limit`, ascending.
    pub fn sieve_primes(&self, limit: u64) -> Result<Vec<u64>> {
        if limit > self.max_limit {
            return Err(Error::resource(format!(
                "prime sieve limit {limit} exceeds cap {}",
                self.max_limit
            )));
        }
        if limit < 2 {
            return Ok(Vec::new());
        }
        let root = isqrt(limit);
        let base = simple_sieve(root);
        let seg = self.segment_size.max(64) as u64;

        let mut primes = base.clone();
        let mut composite = vec![false; seg as usize];
        let mut lo = root + 1;
        while lo <= limit {
            let hi = (lo + seg - 1).min(limit);
            let width = (hi - lo + 1) as usize;
            composite[..width].fill(false);
            for &p in &base {
                let start = (p * p).max(lo.div_ceil(p) * p);
                let mut m = start;
                while m <= hi {
                    composite[(m - lo) as usize] = true;
                    m += p;
                }
            }
            primes.extend(
                composite[..width]
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| !c)
                    .map(|(i, _)| lo + i as u64),
            );
            lo = hi + 1;
        }
        Ok(primes)
    }
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            let mut m = i * i;
            while m <= n {
                composite[m] = true;
                m += i;
            }
        }
        i += 1;
    }
    (2..=n).filter(|&k| !composite[k]).map(|k| k as u64).collect()
}

/// Primes `<= limit` with the default [`SieveConfig`].
pub fn sieve_primes(limit: u64) -> Result<Vec<u64>> {
    SieveConfig::default().sieve_primes(limit)
}

// ---------------------------------------------------------------------------
// Factorizations

/// The prime factorization of a positive integer as ascending
/// `(prime, exponent)` pairs. The factorization of 1 is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PrimeFactorization {
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    /// Builds a factorization from pairs, checking order, exponents and
    /// primality of every base.
    pub fn from_pairs(factors: Vec<(u64, u32)>) -> Result<Self> {
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::validation("primes must be strictly increasing"));
            }
        }
        for &(p, e) in &factors {
            if e == 0 {
                return Err(Error::validation(format!("zero exponent for prime {p}")));
            }
            if !is_prime(p) {
                return Err(Error::validation(format!("{p} is not prime")));
            }
        }
        Ok(PrimeFactorization { factors })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The factored integer, or `None` on overflow.
    pub fn value(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            p.checked_pow(e).and_then(|pe| acc.checked_mul(pe))
        })
    }

    /// Number of prime factors counted with multiplicity (big omega).
    pub fn total_count(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Number of distinct prime factors (little omega).
    pub fn distinct_count(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Each prime repeated by its exponent, ascending.
    pub fn primes_with_multiplicity(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors
            .iter()
            .flat_map(|&(p, e)| core::iter::repeat_n(p, e as usize))
    }

    /// Every positive divisor, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn push_factor(factors: &mut Vec<(u64, u32)>, p: u64) {
    match factors.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += 1,
        None => factors.push((p, 1)),
    }
}

// Offsets between successive integers coprime to 30, starting from 7.
const WHEEL_30: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
const TRIAL_BOUND: u64 = 1 << 16;

/// Factors an isolated `n` by wheel trial division up to 2^16 and Pollard-Brent
/// rho for whatever cofactor remains.
pub fn factorize(n: u64) -> Result<PrimeFactorization> {
    if n == 0 {
        return Err(Error::domain("cannot factor 0"));
    }
    let mut factors = Vec::new();
    let mut n = n;
    for p in [2u64, 3, 5] {
        while n.is_multiple_of(p) {
            push_factor(&mut factors, p);
            n /= p;
        }
    }
    let mut p = 7u64;
    let mut w = 0;
    while p <= TRIAL_BOUND && p * p <= n {
        while n.is_multiple_of(p) {
            push_factor(&mut factors, p);
            n /= p;
        }
        p += WHEEL_30[w];
        w = (w + 1) & 7;
    }
    if n > 1 {
        if p * p > n {
            push_factor(&mut factors, n);
        } else {
            let mut big = Vec::new();
            split_large(n, &mut big);
            for q in big {
                push_factor(&mut factors, q);
            }
        }
    }
    factors.sort_unstable();
    Ok(PrimeFactorization { factors })
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    split_large(d, out);
    split_large(n / d, out);
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for all 64-bit inputs (Miller-Rabin with the
/// first twelve prime bases).
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

// Returns a non-trivial divisor of the odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

/// Smallest-prime-factor table over `[0, limit]` for bulk factorization.
#[derive(Debug, Clone)]
pub struct SpfTable {
    spf: Vec<u32>,
}

impl SpfTable {
    /// Largest supported table limit.
    pub const MAX_LIMIT: u64 = u32::MAX as u64;

    pub fn new(limit: u64) -> Result<Self> {
        if limit > Self::MAX_LIMIT {
            return Err(Error::resource(format!(
                "smallest-prime-factor table limit {limit} exceeds {}",
                Self::MAX_LIMIT
            )));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] != 0 {
                continue;
            }
            spf[i] = i as u32;
            let Some(start) = i.checked_mul(i) else { continue };
            let mut m = start;
            while m <= n {
                if spf[m] == 0 {
                    spf[m] = i as u32;
                }
                m += i;
            }
        }
        Ok(SpfTable { spf })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Smallest prime factor of `n` for `2 <= n <= limit`.
    pub fn smallest_factor(&self, n: u64) -> u64 {
        u64::from(self.spf[n as usize])
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.smallest_factor(n) == n
    }

    pub fn factorize(&self, n: u64) -> Result<PrimeFactorization> {
        if n == 0 {
            return Err(Error::domain("cannot factor 0"));
        }
        if n > self.limit() {
            return Err(Error::resource(format!(
                "{n} is beyond the table limit {}",
                self.limit()
            )));
        }
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let mut n = n;
        while n > 1 {
            let p = self.smallest_factor(n);
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
            n /= p;
        }
        Ok(PrimeFactorization { factors })
    }
}

// ---------------------------------------------------------------------------
// Residue classes

/// The residue class `[residue]_modulus`, with `residue` reduced into
/// `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    residue: u64,
    modulus: u64,
}

impl ResidueClass {
    pub fn new(residue: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::validation("modulus must be at least 1"));
        }
        Ok(ResidueClass {
            residue: residue % modulus,
            modulus,
        })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    #[inline]
    pub fn contains(&self, n: u64) -> bool {
        n % self.modulus == self.residue
    }

    /// True when `gcd(residue, modulus) = 1`. The class `[0]_1` counts as
    /// coprime since every integer lies in it.
    pub fn is_coprime(&self) -> bool {
        self.modulus == 1 || gcd(self.residue, self.modulus) == 1
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.residue, self.modulus)
    }
}

/// All primes `p <= limit` with `p` in `cls`, ascending.
pub fn primes_in_class(cls: ResidueClass, limit: u64) -> Result<Vec<u64>> {
    let mut primes = sieve_primes(limit)?;
    primes.retain(|&p| cls.contains(p));
    Ok(primes)
}

/// Whether repeated primes count once or once per occurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Counting {
    #[default]
    WithMultiplicity,
    Distinct,
}

impl Counting {
    pub fn label(self) -> &'static str {
        match self {
            Counting::WithMultiplicity => "multiplicity",
            Counting::Distinct => "distinct",
        }
    }
}

/// Counts the prime factors of `n` lying in `cls`.
pub fn omega_in_class(n: u64, cls: ResidueClass, counting: Counting) -> Result<u32> {
    let f = factorize(n)?;
    Ok(count_class_primes(&f, cls, counting))
}

/// Prime factors of an already factored integer lying in `cls`.
pub fn count_class_primes(f: &PrimeFactorization, cls: ResidueClass, counting: Counting) -> u32 {
    f.factors()
        .iter()
        .filter(|&&(p, _)| cls.contains(p))
        .map(|&(_, e)| match counting {
            Counting::WithMultiplicity => e,
            Counting::Distinct => 1,
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_is_prime(n: u64) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    fn trial_primes(limit: u64) -> Vec<u64> {
        (0..=limit).filter(|&n| trial_division_is_prime(n)).collect()
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(sieve_primes(0).unwrap(), Vec::<u64>::new());
        assert_eq!(sieve_primes(1).unwrap(), Vec::<u64>::new());
        assert_eq!(sieve_primes(10).unwrap(), trial_primes(10));
        assert_eq!(sieve_primes(10).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(30).unwrap().len(), trial_primes(30).len());
        assert_eq!(sieve_primes(30).unwrap().len(), 10);
    }

    #[test]
    fn sieve_is_segment_size_independent() {
        let reference = trial_primes(5000);
        for seg in [64, 100, 1000, 1 << 20] {
            let cfg = SieveConfig {
                segment_size: seg,
                ..SieveConfig::default()
            };
            assert_eq!(cfg.sieve_primes(5000).unwrap(), reference, "segment {seg}");
        }
    }

    #[test]
    fn sieve_rejects_limit_over_cap() {
        let cfg = SieveConfig {
            max_limit: 100,
            ..SieveConfig::default()
        };
        assert!(matches!(cfg.sieve_primes(101), Err(Error::Resource(_))));
        assert!(cfg.sieve_primes(100).is_ok());
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().is_empty());
        assert_eq!(factorize(441).unwrap().factors(), &[(3, 2), (7, 2)]);
        assert_eq!(factorize(28).unwrap().factors(), &[(2, 2), (7, 1)]);
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
    }

    #[test]
    fn factorize_large_semiprimes_and_primes() {
        let p = 4_294_967_291u64; // largest prime below 2^32
        let q = 4_294_967_279u64;
        assert_eq!(factorize(p * q).unwrap().factors(), &[(q, 1), (p, 1)]);
        let big_prime = 18_446_744_073_709_551_557u64; // largest 64-bit prime
        assert_eq!(factorize(big_prime).unwrap().factors(), &[(big_prime, 1)]);
        let f = factorize(u64::MAX).unwrap();
        assert_eq!(f.value(), Some(u64::MAX));
        assert!(f.factors().iter().all(|&(p, _)| is_prime(p)));
    }

    #[test]
    fn spf_table_agrees_with_trial_division_route() {
        let table = SpfTable::new(20_000).unwrap();
        for n in 1..=20_000 {
            assert_eq!(table.factorize(n).unwrap(), factorize(n).unwrap(), "n = {n}");
        }
        assert!(table.factorize(20_001).is_err());
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial_division_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn primes_in_class_examples() {
        let c = ResidueClass::new(5, 6).unwrap();
        assert_eq!(primes_in_class(c, 30).unwrap(), vec![5, 11, 17, 23, 29]);
        let all = ResidueClass::new(1, 1).unwrap();
        assert_eq!(primes_in_class(all, 10).unwrap(), vec![2, 3, 5, 7]);
        let two_mod_four = ResidueClass::new(2, 4).unwrap();
        assert_eq!(primes_in_class(two_mod_four, 100).unwrap(), vec![2]);
    }

    #[test]
    fn residue_class_rejects_zero_modulus() {
        assert!(ResidueClass::new(1, 0).is_err());
        assert_eq!(ResidueClass::new(11, 6).unwrap().residue(), 5);
    }

    #[test]
    fn omega_in_class_examples() {
        let c = ResidueClass::new(5, 6).unwrap();
        for counting in [Counting::WithMultiplicity, Counting::Distinct] {
            assert_eq!(omega_in_class(1, c, counting).unwrap(), 0);
            assert_eq!(omega_in_class(35, c, counting).unwrap(), 1);
        }
        assert_eq!(omega_in_class(25, c, Counting::WithMultiplicity).unwrap(), 2);
        assert_eq!(omega_in_class(25, c, Counting::Distinct).unwrap(), 1);
    }

    #[test]
    fn divisors_are_sorted_and_complete() {
        let f = factorize(360).unwrap();
        let brute: Vec<u64> = (1..=360).filter(|d| 360 % d == 0).collect();
        assert_eq!(f.divisors(), brute);
    }

    #[test]
    fn checked_product_cap() {
        assert_eq!(checked_product(3, 4, DEFAULT_PRODUCT_CAP).unwrap(), 12);
        assert!(checked_product(1 << 31, 1 << 31, DEFAULT_PRODUCT_CAP).is_ok());
        assert!(checked_product(1 << 32, 1 << 31, DEFAULT_PRODUCT_CAP).is_err());
        assert!(checked_product(u64::MAX, 2, u64::MAX).is_err());
    }

    #[test]
    fn isqrt_boundaries() {
        for n in 0..10_000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        assert_eq!(isqrt(u64::MAX), u32::MAX as u64);
    }

    #[test]
    fn phi_small() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(5), 4);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(90), 24);
    }
}
