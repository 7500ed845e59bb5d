//! Empirical atomic density and checks of the limit `1 - 1/q`.
//!
//! Member counts include the unit 1, so `D_N = atoms(N) / members(N)` has the
//! unit in its denominator. All counts are exact integers; ratios are exact
//! fractions and are only rendered as decimals for display.
//!
//! Finite computation cannot establish a limit. [`verify_theorem`] therefore
//! checks exact counts where a closed form exists (`a = b > 1`) and otherwise
//! applies a [`TrendPolicy`] whose thresholds are engineering choices.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::acm::Acm;
use crate::arith::{Counting, ResidueClass, SieveConfig};
use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::sieve::{AtomSieve, SieveLimits};

/// An ascending, non-empty list of positive checkpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoints(Vec<u64>);

impl Checkpoints {
    pub fn new(points: Vec<u64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::validation("at least one checkpoint is required"));
        }
        if points[0] == 0 {
            return Err(Error::validation("checkpoints must be positive"));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::validation("checkpoints must be strictly ascending"));
        }
        Ok(Checkpoints(points))
    }

    /// `10^3, 10^4, ...` up to `max`, with `max` appended when it is not a
    /// power of ten. A `max` below 1000 yields `[max]`.
    pub fn decades(max: u64) -> Result<Self> {
        let mut points = Vec::new();
        let mut p = 1000u64;
        while p <= max {
            points.push(p);
            match p.checked_mul(10) {
                Some(next) => p = next,
                None => break,
            }
        }
        if points.last() != Some(&max) {
            points.push(max);
        }
        Self::new(points)
    }

    /// `1000, 2000, 4000, ...` up to `max`, with `max` appended when missing.
    pub fn doubling(max: u64) -> Result<Self> {
        let mut points = Vec::new();
        let mut p = 1000u64;
        while p <= max {
            points.push(p);
            match p.checked_mul(2) {
                Some(next) => p = next,
                None => break,
            }
        }
        if points.last() != Some(&max) {
            points.push(max);
        }
        Self::new(points)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn max(&self) -> u64 {
        *self.0.last().expect("non-empty")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Atom and member counts at each checkpoint, with the limit `1 - 1/q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub acm: Acm,
    pub checkpoints: Vec<u64>,
    pub member_counts: Vec<u64>,
    pub atom_counts: Vec<u64>,
    /// `atoms / members` per checkpoint.
    pub empirical: Vec<Ratio>,
    pub limit: Ratio,
    /// `|D_N - limit|` per checkpoint.
    pub errors: Vec<Ratio>,
}

impl DensityReport {
    /// Reads every checkpoint from one finished sieve.
    pub fn from_sieve(sieve: &AtomSieve, checkpoints: &Checkpoints) -> Result<Self> {
        if checkpoints.max() > sieve.limit() {
            return Err(Error::validation(format!(
                "checkpoint {} exceeds the sieve limit {}",
                checkpoints.max(),
                sieve.limit()
            )));
        }
        let acm = sieve.acm();
        let limit = Ratio::one_minus_reciprocal(acm.q());
        let counts = sieve.counts_at(checkpoints.as_slice());
        let empirical: Vec<Ratio> = counts
            .iter()
            .map(|c| Ratio::new(c.atoms.into(), c.members.into()))
            .collect();
        Ok(DensityReport {
            acm,
            checkpoints: checkpoints.as_slice().to_vec(),
            member_counts: counts.iter().map(|c| c.members).collect(),
            atom_counts: counts.iter().map(|c| c.atoms).collect(),
            errors: empirical.iter().map(|d| d.abs_diff(limit)).collect(),
            empirical,
            limit,
        })
    }

    /// For `a = b > 1`, the closed-form atom count `floor(N/b) - floor(N/b^2)`
    /// at each checkpoint.
    pub fn closed_form_atom_counts(&self) -> Option<Vec<u64>> {
        closed_form_applies(&self.acm).then(|| {
            self.checkpoints
                .iter()
                .map(|&n| closed_form_atoms(self.acm.b(), n))
                .collect()
        })
    }
}

fn closed_form_applies(acm: &Acm) -> bool {
    acm.a() == acm.b() && acm.b() > 1
}

/// `floor(n/b) - floor(n/b^2)`: multiples of `b` up to `n` not divisible by
/// `b^2`.
pub fn closed_form_atoms(b: u64, n: u64) -> u64 {
    let b2 = b.checked_mul(b);
    n / b - b2.map_or(0, |b2| n / b2)
}

/// Sieves up to the last checkpoint and reports densities.
pub fn density_report(acm: Acm, checkpoints: &Checkpoints, limits: &SieveLimits) -> Result<DensityReport> {
    let sieve = AtomSieve::with_limits(acm, checkpoints.max(), limits)?;
    DensityReport::from_sieve(&sieve, checkpoints)
}

/// Members split by whether `q^2` divides them.
///
/// `Q` holds members divisible by `q^2`; `R` holds the rest, including the
/// unit. Every reducible member lies in `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionCounts {
    pub n: u64,
    pub q_members: u64,
    pub r_members: u64,
    pub q_atoms: u64,
    pub r_atoms: u64,
}

impl PartitionCounts {
    pub fn total_members(&self) -> u64 {
        self.q_members + self.r_members
    }

    /// True when every non-unit element of `R` is an atom.
    pub fn r_is_all_atoms(&self) -> bool {
        self.r_atoms + u64::from(self.n >= 1) == self.r_members
    }
}

/// Counts the `Q`/`R` partition over `[1, n]`. Only meaningful for singular
/// monoids; regular ones are a domain error.
pub fn qr_partition(sieve: &AtomSieve, n: u64) -> Result<PartitionCounts> {
    let acm = sieve.acm();
    if acm.q() == 1 {
        return Err(Error::domain(format!(
            "{acm} is regular (q = 1); the Q/R partition is trivial"
        )));
    }
    if n > sieve.limit() {
        return Err(Error::validation(format!(
            "checkpoint {n} exceeds the sieve limit {}",
            sieve.limit()
        )));
    }
    let q2 = acm.q().checked_mul(acm.q());
    let mut out = PartitionCounts {
        n,
        q_members: 0,
        r_members: u64::from(n >= 1),
        q_atoms: 0,
        r_atoms: 0,
    };
    let bits = sieve.reducible_bits();
    let (a, b) = (acm.a(), acm.b());
    if n >= a {
        for k in 0..=((n - a) / b) {
            let m = a + k * b;
            let atom = !bits.get(k as usize);
            if q2.is_some_and(|q2| m % q2 == 0) {
                out.q_members += 1;
                out.q_atoms += u64::from(atom);
            } else {
                out.r_members += 1;
                out.r_atoms += u64::from(atom);
            }
        }
    }
    Ok(out)
}

/// Ratios `|{n <= N : at most `bound` prime factors of n lie in cls}| / N` at
/// each checkpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedClassSeries {
    pub cls: ResidueClass,
    pub bound: u32,
    pub counting: Counting,
    pub checkpoints: Vec<u64>,
    pub counts: Vec<u64>,
}

impl BoundedClassSeries {
    pub fn ratios(&self) -> Vec<Ratio> {
        self.checkpoints
            .iter()
            .zip(&self.counts)
            .map(|(&n, &c)| Ratio::new(c.into(), n.into()))
            .collect()
    }
}

/// Largest checkpoint accepted by [`bounded_class_series`] (one byte per
/// integer).
pub const MAX_SERIES_LIMIT: u64 = 1 << 31;

/// Counts, for every `n <= max checkpoint`, the prime factors of `n` in `cls`
/// by sieving over prime powers in the class, then tallies those within
/// `bound`.
pub fn bounded_class_series(
    cls: ResidueClass,
    bound: u32,
    checkpoints: &Checkpoints,
    counting: Counting,
) -> Result<BoundedClassSeries> {
    if !cls.is_coprime() {
        return Err(Error::domain(format!(
            "{cls} is not a coprime class; gcd({}, {}) != 1",
            cls.residue(),
            cls.modulus()
        )));
    }
    let max = checkpoints.max();
    if max > MAX_SERIES_LIMIT {
        return Err(Error::resource(format!(
            "series limit {max} exceeds cap {MAX_SERIES_LIMIT}"
        )));
    }
    let size = max as usize + 1;
    let mut omega = vec![0u8; size];
    for p in SieveConfig::default().sieve_primes(max)? {
        if !cls.contains(p) {
            continue;
        }
        let mut pk = p;
        loop {
            let mut m = pk as usize;
            while m < size {
                omega[m] = omega[m].saturating_add(1);
                m += pk as usize;
            }
            if counting == Counting::Distinct {
                break;
            }
            match pk.checked_mul(p) {
                Some(next) if next <= max => pk = next,
                _ => break,
            }
        }
    }
    let mut counts = Vec::with_capacity(checkpoints.len());
    let mut running = 0u64;
    let mut next = checkpoints.as_slice().iter().peekable();
    for (n, &w) in omega.iter().enumerate().skip(1) {
        running += u64::from(u32::from(w) <= bound);
        while next.peek() == Some(&&(n as u64)) {
            counts.push(running);
            next.next();
        }
    }
    Ok(BoundedClassSeries {
        cls,
        bound,
        counting,
        checkpoints: checkpoints.as_slice().to_vec(),
        counts,
    })
}

/// Acceptance thresholds for the trend check. None of these values follow
/// from the limit statement itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrendPolicy {
    /// Final `|D_N - (1 - 1/q)|` must be below this for `q > 1`.
    pub singular_final_error: Ratio,
    /// Same, for regular monoids where the limit is 0.
    pub regular_final_error: Ratio,
    /// Fewest checkpoints a trend verdict may rest on.
    pub min_checkpoints: usize,
}

impl Default for TrendPolicy {
    fn default() -> Self {
        TrendPolicy {
            singular_final_error: Ratio::new(1, 20),
            regular_final_error: Ratio::new(1, 5),
            min_checkpoints: 5,
        }
    }
}

impl TrendPolicy {
    pub fn threshold_for(&self, acm: &Acm) -> Ratio {
        if acm.q() > 1 {
            self.singular_final_error
        } else {
            self.regular_final_error
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictMode {
    /// `a = b > 1`: atom counts compared with the closed form.
    Exact,
    /// Error series compared against a [`TrendPolicy`].
    Trend,
}

impl VerdictMode {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictMode::Exact => "exact",
            VerdictMode::Trend => "trend",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub mode: VerdictMode,
    pub pass: bool,
    pub report: DensityReport,
    /// Closed-form atom counts, in exact mode.
    pub expected_atoms: Option<Vec<u64>>,
    /// Steps where the error strictly decreased, out of `checkpoints - 1`.
    pub decreasing_steps: usize,
    pub total_steps: usize,
    pub final_error: Ratio,
    /// Trend threshold, in trend mode.
    pub threshold: Option<Ratio>,
    pub reason: alloc::string::String,
}

/// Checks a density report against the limit `1 - 1/q`.
pub fn verify_theorem(report: DensityReport, policy: &TrendPolicy) -> Verdict {
    let total_steps = report.errors.len().saturating_sub(1);
    let decreasing_steps = report.errors.windows(2).filter(|w| w[1] < w[0]).count();
    let final_error = *report.errors.last().expect("non-empty checkpoints");

    if let Some(expected) = report.closed_form_atom_counts() {
        let mismatch = report
            .atom_counts
            .iter()
            .zip(&expected)
            .position(|(got, want)| got != want);
        let reason = match mismatch {
            None => format!("atom counts match floor(N/{0}) - floor(N/{0}^2) at every checkpoint", report.acm.b()),
            Some(i) => format!(
                "at N = {} sieve found {} atoms, closed form gives {}",
                report.checkpoints[i], report.atom_counts[i], expected[i]
            ),
        };
        return Verdict {
            mode: VerdictMode::Exact,
            pass: mismatch.is_none(),
            report,
            expected_atoms: Some(expected),
            decreasing_steps,
            total_steps,
            final_error,
            threshold: None,
            reason,
        };
    }

    let threshold = policy.threshold_for(&report.acm);
    let enough = report.checkpoints.len() >= policy.min_checkpoints;
    let majority = 2 * decreasing_steps > total_steps;
    let small = final_error < threshold;
    let reason = if !enough {
        format!(
            "{} checkpoints, policy requires at least {}",
            report.checkpoints.len(),
            policy.min_checkpoints
        )
    } else {
        format!(
            "error decreased in {decreasing_steps}/{total_steps} steps (majority {}); final error {:.6} {} threshold {:.6}",
            if majority { "yes" } else { "no" },
            final_error.to_f64(),
            if small { "<" } else { ">=" },
            threshold.to_f64()
        )
    };
    Verdict {
        mode: VerdictMode::Trend,
        pass: enough && majority && small,
        report,
        expected_atoms: None,
        decreasing_steps,
        total_steps,
        final_error,
        threshold: Some(threshold),
        reason,
    }
}
