//! Arithmetical congruence monoids.
//!
//! An arithmetical congruence monoid (ACM) is the multiplicative monoid
//!
//! ```text
//! M(a, b) = { n >= 1 : n = a (mod b) } U { 1 }
//! ```
//!
//! for `1 <= a <= b` with `a^2 = a (mod b)`. This crate decides membership and
//! atomicity, sieves atom status over large ranges, enumerates factorizations,
//! builds the block monoid over the unit group mod `b` together with the
//! transfer map from regular ACMs, and measures atomic density against its
//! limit `1 - 1/gcd(a, b)`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, parallel
//! sieving and the command-line front end live in the `acm-lab` crate.
//!
//! ```
//! use acm_core::{Acm, ElementStatus};
//!
//! let hilbert = Acm::new(1, 4).unwrap();
//! assert_eq!(hilbert.status(21), ElementStatus::Atom);
//! assert_eq!(hilbert.status(441), ElementStatus::Reducible);
//! assert_eq!(hilbert.reducibility_witness(441).unwrap().unwrap().pair(), (9, 49));
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod acm;
pub mod arith;
pub mod bits;
pub mod block;
pub mod density;
mod error;
pub mod factorizer;
pub mod ratio;
pub mod sieve;

pub use acm::{Acm, AcmKind, ElementStatus, Witness};
pub use arith::{
    factorize, omega_in_class, primes_in_class, sieve_primes, Counting, PrimeFactorization,
    ResidueClass, SieveConfig, SpfTable,
};
pub use block::{block_atoms, davenport_constant, transfer, Block, BlockSearch, UnitGroup};
pub use density::{
    bounded_class_series, closed_form_atoms, density_report, qr_partition, verify_theorem, BoundedClassSeries,
    Checkpoints, DensityReport, PartitionCounts, TrendPolicy, Verdict, VerdictMode,
};
pub use error::{Error, Result};
pub use factorizer::{factorizations, length_set, Factorization, FactorizationSet, FactorizerLimits};
pub use ratio::Ratio;
pub use sieve::{AtomCounts, AtomSieve, SieveLimits, SievePlan};
