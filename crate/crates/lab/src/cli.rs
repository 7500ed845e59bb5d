//! Argument parsing and command dispatch for the `acm` binary.

use std::path::PathBuf;

use acm_core::{
    bounded_class_series, factorizations, qr_partition, verify_theorem, Acm, BlockSearch, Checkpoints,
    Counting, DensityReport, FactorizerLimits, Ratio, ResidueClass, SieveLimits, TrendPolicy, UnitGroup,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{LabError, Result};
use crate::parallel::{self, THREADS_ENV};
use crate::report::{self, Format, Header};
use crate::sieve_file;

/// Largest range `atoms` will list element by element.
pub const MAX_LISTING: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "acm", version, about = "Atoms, factorizations and atomic density of arithmetical congruence monoids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Emit JSON instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Member slots per sieve segment.
    #[arg(long, global = true, value_parser = parse_count)]
    pub segment_size: Option<u64>,
    /// Worker threads (defaults to ACM_THREADS, then the core count).
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
    /// How repeated primes are counted by `series`.
    #[arg(long, global = true, value_enum, default_value_t = CountingArg::Multiplicity)]
    pub counting: CountingArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountingArg {
    Multiplicity,
    Distinct,
}

impl From<CountingArg> for Counting {
    fn from(c: CountingArg) -> Self {
        match c {
            CountingArg::Multiplicity => Counting::WithMultiplicity,
            CountingArg::Distinct => Counting::Distinct,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Schedule {
    /// 10^3, 10^4, ... up to the maximum.
    Decades,
    /// 1000, 2000, 4000, ... up to the maximum.
    Doubling,
}

#[derive(Debug, Args)]
pub struct MonoidArgs {
    #[arg(long, value_parser = parse_count)]
    pub a: u64,
    #[arg(long, value_parser = parse_count)]
    pub b: u64,
}

#[derive(Debug, Args)]
pub struct CheckpointArgs {
    /// Largest checkpoint; accepts scientific notation such as 1e7.
    #[arg(long, value_parser = parse_count)]
    pub max: u64,
    #[arg(long, value_enum, default_value_t = Schedule::Decades)]
    pub schedule: Schedule,
    /// Explicit comma-separated checkpoints, overriding the schedule.
    #[arg(long, value_delimiter = ',', value_parser = parse_count)]
    pub checkpoints: Option<Vec<u64>>,
}

impl CheckpointArgs {
    fn resolve(&self) -> Result<Checkpoints> {
        let cps = match &self.checkpoints {
            Some(list) => {
                let mut list = list.clone();
                if list.last() != Some(&self.max) {
                    list.push(self.max);
                }
                Checkpoints::new(list)?
            }
            None => match self.schedule {
                Schedule::Decades => Checkpoints::decades(self.max)?,
                Schedule::Doubling => Checkpoints::doubling(self.max)?,
            },
        };
        Ok(cps)
    }

    fn label(&self) -> &'static str {
        match (&self.checkpoints, self.schedule) {
            (Some(_), _) => "explicit",
            (None, Schedule::Decades) => "decades",
            (None, Schedule::Doubling) => "doubling",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify every n in [1, limit] as non_member, unit, atom or reducible.
    Atoms {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, value_parser = parse_count)]
        limit: u64,
        /// Print totals only.
        #[arg(long)]
        summary: bool,
        /// Also write the sieve in the binary format.
        #[arg(long, value_name = "PATH")]
        binary: Option<PathBuf>,
    },
    /// Atomic density at each checkpoint next to the limit 1 - 1/gcd(a, b).
    Density {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[command(flatten)]
        checkpoints: CheckpointArgs,
    },
    /// Check the density limit: exact counts when a = b, otherwise a trend policy.
    Verify {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[command(flatten)]
        checkpoints: CheckpointArgs,
        /// Final error bound for singular monoids, as a decimal or fraction.
        #[arg(long, value_parser = parse_ratio, default_value = "1/20")]
        singular_threshold: Ratio,
        /// Final error bound for regular monoids.
        #[arg(long, value_parser = parse_ratio, default_value = "1/5")]
        regular_threshold: Ratio,
        #[arg(long, default_value_t = 5)]
        min_checkpoints: usize,
    },
    /// Atoms of the block monoid over the units mod b, and its Davenport constant.
    Block {
        #[arg(long, value_parser = parse_count)]
        b: u64,
        /// Largest group order to enumerate (at most 64).
        #[arg(long, default_value_t = 24)]
        max_order: usize,
    },
    /// Every factorization of n into atoms, its length set and elasticity.
    Factorize {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, value_parser = parse_count)]
        n: u64,
        #[arg(long, value_parser = parse_count, default_value = "1e9")]
        max_value: u64,
    },
    /// Split members by divisibility by q^2 and count atoms in each part.
    Partition {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[command(flatten)]
        checkpoints: CheckpointArgs,
    },
    /// Share of n <= N with at most `bound` prime factors in a residue class.
    Series {
        #[arg(long, value_parser = parse_count)]
        residue: u64,
        #[arg(long, value_parser = parse_count)]
        modulus: u64,
        #[arg(long)]
        bound: u32,
        #[command(flatten)]
        checkpoints: CheckpointArgs,
    },
    /// Summarize a binary sieve file.
    Inspect {
        path: PathBuf,
    },
}

/// A validated command with its output and execution settings.
#[derive(Debug)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub limits: SieveLimits,
    pub threads: usize,
    pub counting: Counting,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let mut limits = SieveLimits::default();
        if let Some(seg) = cli.common.segment_size {
            if seg == 0 {
                return Err(LabError::Usage("--segment-size must be positive".into()));
            }
            limits.segment_size = usize::try_from(seg).map_err(|_| LabError::Usage("--segment-size too large".into()))?;
        }
        if let Command::Atoms { monoid, .. }
        | Command::Density { monoid, .. }
        | Command::Verify { monoid, .. }
        | Command::Factorize { monoid, .. }
        | Command::Partition { monoid, .. } = &cli.command
        {
            Acm::new(monoid.a, monoid.b)?;
        }
        Ok(RunConfig {
            format: if cli.common.json { Format::Json } else { Format::Csv },
            output: cli.common.output,
            limits,
            threads: parallel::resolve_threads(cli.common.threads),
            counting: cli.common.counting.into(),
            command: cli.command,
        })
    }
}

/// What a finished command produced.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    /// Non-zero when the command ran but its check failed.
    pub exit_code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, exit_code: 0 }
    }
}

fn monoid_header(command: &'static str, acm: &Acm) -> Header {
    Header::new(command)
        .with("a", acm.a())
        .with("b", acm.b())
        .with("q", acm.q())
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    let limits = &config.limits;
    let threads = config.threads;
    match &config.command {
        Command::Atoms {
            monoid,
            limit,
            summary,
            binary,
        } => {
            let acm = Acm::new(monoid.a, monoid.b)?;
            if !summary && *limit > MAX_LISTING {
                return Err(acm_core::Error::Resource(format!(
                    "listing {limit} elements exceeds {MAX_LISTING}; use --summary or --binary"
                ))
                .into());
            }
            let sieve = parallel::sieve(acm, *limit, limits, threads)?;
            if let Some(path) = binary {
                let file = std::io::BufWriter::new(std::fs::File::create(path)?);
                sieve_file::write_sieve(&sieve, file)?;
            }
            let header = monoid_header("atoms", &acm).with("limit", *limit);
            Ok(Outcome::ok(report::atoms(&header, &sieve, *summary, config.format)?))
        }
        Command::Density { monoid, checkpoints } => {
            let acm = Acm::new(monoid.a, monoid.b)?;
            let cps = checkpoints.resolve()?;
            let sieve = parallel::sieve(acm, cps.max(), limits, threads)?;
            let density = DensityReport::from_sieve(&sieve, &cps)?;
            let header = monoid_header("density", &acm)
                .with("limit", cps.max())
                .with("schedule", checkpoints.label())
                .with("members_include_unit", true);
            Ok(Outcome::ok(report::density(&header, &density, config.format)?))
        }
        Command::Verify {
            monoid,
            checkpoints,
            singular_threshold,
            regular_threshold,
            min_checkpoints,
        } => {
            let acm = Acm::new(monoid.a, monoid.b)?;
            let cps = checkpoints.resolve()?;
            let sieve = parallel::sieve(acm, cps.max(), limits, threads)?;
            let policy = TrendPolicy {
                singular_final_error: *singular_threshold,
                regular_final_error: *regular_threshold,
                min_checkpoints: *min_checkpoints,
            };
            let verdict = verify_theorem(DensityReport::from_sieve(&sieve, &cps)?, &policy);
            let header = monoid_header("verify", &acm)
                .with("limit", cps.max())
                .with("schedule", checkpoints.label())
                .with("singular_threshold", singular_threshold.to_string())
                .with("regular_threshold", regular_threshold.to_string())
                .with("min_checkpoints", *min_checkpoints);
            Ok(Outcome {
                text: report::verify(&header, &verdict)?,
                exit_code: if verdict.pass { 0 } else { 4 },
            })
        }
        Command::Block { b, max_order } => {
            let search = BlockSearch {
                max_group_order: *max_order,
            };
            let atoms = search.block_atoms(*b)?;
            let order = UnitGroup::new(*b)?.order();
            let header = Header::new("block").with("b", *b);
            Ok(Outcome::ok(report::block(&header, *b, order, &atoms)?))
        }
        Command::Factorize { monoid, n, max_value } => {
            let acm = Acm::new(monoid.a, monoid.b)?;
            let caps = FactorizerLimits {
                max_value: *max_value,
                ..FactorizerLimits::default()
            };
            let set = factorizations(&acm, *n, &caps)?;
            let header = monoid_header("factorize", &acm).with("n", *n);
            Ok(Outcome::ok(report::factorize(&header, &set)?))
        }
        Command::Partition { monoid, checkpoints } => {
            let acm = Acm::new(monoid.a, monoid.b)?;
            let cps = checkpoints.resolve()?;
            let sieve = parallel::sieve(acm, cps.max(), limits, threads)?;
            let rows = cps
                .as_slice()
                .iter()
                .map(|&n| qr_partition(&sieve, n))
                .collect::<acm_core::Result<Vec<_>>>()?;
            let header = monoid_header("partition", &acm)
                .with("limit", cps.max())
                .with("schedule", checkpoints.label());
            Ok(Outcome::ok(report::partition(&header, &rows, config.format)?))
        }
        Command::Series {
            residue,
            modulus,
            bound,
            checkpoints,
        } => {
            let cls = ResidueClass::new(*residue, *modulus)?;
            let cps = checkpoints.resolve()?;
            let series = bounded_class_series(cls, *bound, &cps, config.counting)?;
            let header = Header::new("series")
                .with("residue", cls.residue())
                .with("modulus", cls.modulus())
                .with("bound", *bound)
                .with("limit", cps.max())
                .with("schedule", checkpoints.label())
                .with("counting", config.counting.label());
            Ok(Outcome::ok(report::series(&header, &series, config.format)?))
        }
        Command::Inspect { path } => {
            let file = std::io::BufReader::new(std::fs::File::open(path)?);
            let sieve = sieve_file::read_sieve(file)?;
            let acm = sieve.acm();
            let header = monoid_header("inspect", &acm).with("limit", sieve.limit());
            Ok(Outcome::ok(report::atoms(&header, &sieve, true, config.format)?))
        }
    }
}

/// Parses a non-negative integer, allowing scientific notation (`1e6`,
/// `2.5e3`) and `_` separators. The value must be integral.
pub fn parse_count(s: &str) -> Result<u64, String> {
    let cleaned: String = s.trim().chars().filter(|&c| c != '_').collect();
    let err = || format!("'{s}' is not a non-negative integer");
    let (mantissa, exp) = match cleaned.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.trim_start_matches('+').parse::<u32>().map_err(|_| err())?),
        None => (cleaned.as_str(), 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let frac = frac_part.trim_end_matches('0');
    let digits: u128 = format!("{int_part}{frac}").parse().unwrap_or(0);
    let frac_len = frac.len() as u32;
    if frac_len > exp {
        return Err(format!("'{s}' is not an integer"));
    }
    10u128
        .checked_pow(exp - frac_len)
        .and_then(|scale| digits.checked_mul(scale))
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| format!("'{s}' does not fit in 64 bits"))
}

/// Parses `p/q` or a decimal such as `0.05` into an exact ratio.
pub fn parse_ratio(s: &str) -> Result<Ratio, String> {
    let err = || format!("'{s}' is not a non-negative fraction or decimal");
    if let Some((n, d)) = s.split_once('/') {
        let n: u128 = n.trim().parse().map_err(|_| err())?;
        let d: u128 = d.trim().parse().map_err(|_| err())?;
        if d == 0 {
            return Err(err());
        }
        return Ok(Ratio::new(n, d));
    }
    let (int_part, frac_part) = s.trim().split_once('.').unwrap_or((s.trim(), ""));
    if frac_part.len() > 30 || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let num: u128 = format!("{int_part}{frac_part}").parse().map_err(|_| err())?;
    Ok(Ratio::new(num, 10u128.pow(frac_part.len() as u32)))
}
