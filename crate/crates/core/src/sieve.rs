//! Atom status over `[1, N]` by product marking.
//!
//! Members of the class `[a]_b` are indexed by `k` with `n = a + k*b`. A
//! member is reducible exactly when it equals `m1 * m2` for non-unit members
//! `m1 <= m2`, so the sieve walks `m1` up to `sqrt(N)` and marks every product
//! with a member `m2`. Stepping `m2` by `b` moves the product index by `m1`.
//!
//! Products of two members are always divisible by `q^2`, so only multiples of
//! `q^2` are ever marked.
//!
//! The index range is cut into segments that are marked independently and
//! concatenated in order, so the result does not depend on how segments are
//! scheduled.

use alloc::format;
use alloc::vec::Vec;
use core::ops::Range;

use crate::acm::{Acm, ElementStatus};
use crate::bits::BitSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveLimits {
    /// Largest accepted `N`.
    pub max_limit: u64,
    /// Member indices per segment.
    pub segment_size: usize,
}

impl Default for SieveLimits {
    fn default() -> Self {
        SieveLimits {
            max_limit: 1 << 33,
            segment_size: 1 << 20,
        }
    }
}

/// A validated sieve request. Each segment can be marked on its own.
#[derive(Debug, Clone, Copy)]
pub struct SievePlan {
    acm: Acm,
    limit: u64,
    class_len: usize,
    segment_size: usize,
}

impl SievePlan {
    pub fn new(acm: Acm, limit: u64, limits: &SieveLimits) -> Result<Self> {
        if limit > limits.max_limit {
            return Err(Error::resource(format!(
                "sieve limit {limit} exceeds cap {}",
                limits.max_limit
            )));
        }
        Ok(SievePlan {
            acm,
            limit,
            class_len: class_len(&acm, limit),
            segment_size: limits.segment_size.max(1),
        })
    }

    pub fn acm(&self) -> Acm {
        self.acm
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Index ranges covering the class, in order.
    pub fn segments(&self) -> Vec<Range<usize>> {
        (0..self.class_len)
            .step_by(self.segment_size)
            .map(|lo| lo..(lo + self.segment_size).min(self.class_len))
            .collect()
    }

    /// Reducible bits for the members with index in `range`.
    pub fn mark(&self, range: Range<usize>) -> BitSet {
        let mut bits = BitSet::new(range.len());
        if range.is_empty() {
            return bits;
        }
        let (a, b) = (self.acm.a(), self.acm.b());
        let lo = a + range.start as u64 * b;
        let hi = a + (range.end as u64 - 1) * b;
        let mut m1 = self.acm.first_non_unit();
        while m1 <= hi / m1 {
            let m2_max = hi / m1;
            let m2_min = lo.div_ceil(m1).max(m1);
            if let Some(m2) = self.acm.next_in_class(m2_min) {
                if m2 <= m2_max {
                    let first = ((m1 * m2 - a) / b) as usize - range.start;
                    let step = m1 as usize;
                    let mut idx = first;
                    while idx < bits.len() {
                        bits.set(idx);
                        idx += step;
                    }
                }
            }
            m1 += b;
        }
        bits
    }

    /// Concatenates segment results produced for [`Self::segments`], in order.
    pub fn assemble(&self, parts: impl IntoIterator<Item = BitSet>) -> Result<AtomSieve> {
        let mut reducible = BitSet::new(0);
        for part in parts {
            reducible.extend_from(&part);
        }
        AtomSieve::from_parts(self.acm, self.limit, reducible)
    }

    /// Marks every segment on the current thread.
    pub fn run(&self) -> AtomSieve {
        let parts = self.segments().into_iter().map(|r| self.mark(r));
        self.assemble(parts).expect("segments cover the class")
    }
}

fn class_len(acm: &Acm, limit: u64) -> usize {
    if limit < acm.a() {
        0
    } else {
        ((limit - acm.a()) / acm.b() + 1) as usize
    }
}

/// Element status for every `n` in `[1, limit]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSieve {
    acm: Acm,
    limit: u64,
    reducible: BitSet,
}

/// Exact counts over `[1, n]`. `members` includes the unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtomCounts {
    pub n: u64,
    pub members: u64,
    pub atoms: u64,
    pub reducible: u64,
}

impl AtomSieve {
    pub fn new(acm: Acm, limit: u64) -> Result<Self> {
        Self::with_limits(acm, limit, &SieveLimits::default())
    }

    pub fn with_limits(acm: Acm, limit: u64, limits: &SieveLimits) -> Result<Self> {
        Ok(SievePlan::new(acm, limit, limits)?.run())
    }

    /// Rebuilds a sieve from its reducible bitset, e.g. after deserializing.
    pub fn from_parts(acm: Acm, limit: u64, reducible: BitSet) -> Result<Self> {
        let expected = class_len(&acm, limit);
        if reducible.len() != expected {
            return Err(Error::validation(format!(
                "bitset holds {} members, expected {expected} for {acm} up to {limit}",
                reducible.len()
            )));
        }
        if acm.a() == 1 && expected > 0 && reducible.get(0) {
            return Err(Error::validation("the unit cannot be reducible"));
        }
        Ok(AtomSieve {
            acm,
            limit,
            reducible,
        })
    }

    pub fn acm(&self) -> Acm {
        self.acm
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Reducible flags indexed by `k` where `n = a + k*b`.
    pub fn reducible_bits(&self) -> &BitSet {
        &self.reducible
    }

    /// Status of `n`, or `None` outside `[1, limit]`.
    pub fn get(&self, n: u64) -> Option<ElementStatus> {
        if n == 0 || n > self.limit {
            return None;
        }
        if n == 1 {
            return Some(ElementStatus::Unit);
        }
        if !self.acm.contains(n) {
            return Some(ElementStatus::NonMember);
        }
        let k = ((n - self.acm.a()) / self.acm.b()) as usize;
        Some(if self.reducible.get(k) {
            ElementStatus::Reducible
        } else {
            ElementStatus::Atom
        })
    }

    /// Panics outside `[1, limit]`.
    pub fn status(&self, n: u64) -> ElementStatus {
        self.get(n)
            .unwrap_or_else(|| panic!("{n} outside sieve range [1, {}]", self.limit))
    }

    /// Members `> 1` up to `n`, which are the class members minus the unit
    /// when `a = 1`.
    fn non_unit_members(&self, n: u64) -> u64 {
        let in_class = class_len(&self.acm, n) as u64;
        if self.acm.a() == 1 {
            in_class.saturating_sub(1)
        } else {
            in_class
        }
    }

    /// Exact counts over `[1, n]`. Panics if `n > limit`.
    pub fn counts(&self, n: u64) -> AtomCounts {
        assert!(n <= self.limit, "{n} beyond sieve limit {}", self.limit);
        let non_unit = self.non_unit_members(n);
        let reducible = self.reducible.count_ones_below(class_len(&self.acm, n)) as u64;
        AtomCounts {
            n,
            members: non_unit + u64::from(n >= 1),
            atoms: non_unit - reducible,
            reducible,
        }
    }

    /// Counts at each checkpoint, which must be ascending and `<= limit`.
    pub fn counts_at(&self, checkpoints: &[u64]) -> Vec<AtomCounts> {
        checkpoints.iter().map(|&n| self.counts(n)).collect()
    }

    /// Atoms in ascending order.
    pub fn atoms(&self) -> impl Iterator<Item = u64> + '_ {
        let (a, b) = (self.acm.a(), self.acm.b());
        let skip = usize::from(a == 1);
        (skip..self.reducible.len())
            .filter(|&k| !self.reducible.get(k))
            .map(move |k| a + k as u64 * b)
    }

    /// Reducible members in ascending order.
    pub fn reducibles(&self) -> impl Iterator<Item = u64> + '_ {
        let (a, b) = (self.acm.a(), self.acm.b());
        self.reducible.iter_ones().map(move |k| a + k as u64 * b)
    }
}
