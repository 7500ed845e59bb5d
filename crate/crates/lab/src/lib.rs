//! Command-line front end, parallel sieving and file formats for `acm-core`.

pub mod cli;
pub mod error;
pub mod parallel;
pub mod report;
pub mod sieve_file;

pub use error::{LabError, Result};
