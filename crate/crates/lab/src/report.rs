//! CSV and JSON renderings of every command's results.
//!
//! Every output starts with a versioned header carrying the parameters that
//! determine it. Nothing run-dependent (thread count, timing) is written, so a
//! fixed configuration always produces the same bytes.

use std::fmt::Write;

use acm_core::{
    AtomSieve, Block, BoundedClassSeries, DensityReport, FactorizationSet, PartitionCounts, Ratio, Verdict,
};
use serde::Serialize;

use crate::error::Result;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Parameters echoed at the top of every output.
#[derive(Debug, Clone)]
pub struct Header {
    pub tool: &'static str,
    pub format_version: u32,
    pub command: &'static str,
    pub params: Vec<(&'static str, serde_json::Value)>,
}

impl Header {
    pub fn new(command: &'static str) -> Self {
        Header {
            tool: "acm-lab",
            format_version: FORMAT_VERSION,
            command,
            params: Vec::new(),
        }
    }

    pub fn with(mut self, key: &'static str, value: impl Into<serde_json::Value>) -> Self {
        self.params.push((key, value.into()));
        self
    }

    fn csv_line(&self) -> String {
        let mut line = format!("# {} v{} command={}", self.tool, self.format_version, self.command);
        for (k, v) in &self.params {
            match v {
                serde_json::Value::String(s) => {
                    let _ = write!(line, " {k}={s}");
                }
                other => {
                    let _ = write!(line, " {k}={other}");
                }
            }
        }
        line.push('\n');
        line
    }

    fn json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        map.insert("tool".into(), self.tool.into());
        map.insert("format_version".into(), self.format_version.into());
        map.insert("command".into(), self.command.into());
        for (k, v) in &self.params {
            map.insert((*k).into(), v.clone());
        }
        map.into()
    }
}

/// Rounds `r` half-up to six decimal places using integer arithmetic only.
pub fn decimal(r: Ratio) -> String {
    let scaled = (r.numer() * 2_000_000 + r.denom()) / (2 * r.denom());
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

#[derive(Serialize)]
struct Fraction {
    num: u128,
    den: u128,
    decimal: String,
}

impl From<Ratio> for Fraction {
    fn from(r: Ratio) -> Self {
        Fraction {
            num: r.numer(),
            den: r.denom(),
            decimal: decimal(r),
        }
    }
}

fn to_json(header: &Header, body: serde_json::Value) -> Result<String> {
    let mut root = serde_json::Map::new();
    root.insert("header".into(), header.json());
    if let serde_json::Value::Object(fields) = body {
        root.extend(fields);
    }
    let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(root))?;
    s.push('\n');
    Ok(s)
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct AtomSummary {
    limit: u64,
    members: u64,
    atoms: u64,
    reducible: u64,
}

#[derive(Serialize)]
struct ElementRow {
    n: u64,
    status: &'static str,
}

pub fn atoms(header: &Header, sieve: &AtomSieve, summary: bool, format: Format) -> Result<String> {
    let c = sieve.counts(sieve.limit());
    let totals = AtomSummary {
        limit: sieve.limit(),
        members: c.members,
        atoms: c.atoms,
        reducible: c.reducible,
    };
    match format {
        Format::Csv => {
            let mut out = header.csv_line();
            if summary {
                out.push_str("limit,members,atoms,reducible\n");
                let _ = writeln!(out, "{},{},{},{}", totals.limit, totals.members, totals.atoms, totals.reducible);
            } else {
                out.push_str("n,status\n");
                for n in 1..=sieve.limit() {
                    let _ = writeln!(out, "{n},{}", sieve.status(n));
                }
            }
            Ok(out)
        }
        Format::Json => {
            let mut body = serde_json::json!({ "summary": totals });
            if !summary {
                let rows: Vec<ElementRow> = (1..=sieve.limit())
                    .map(|n| ElementRow {
                        n,
                        status: sieve.status(n).as_str(),
                    })
                    .collect();
                body["elements"] = serde_json::to_value(rows)?;
            }
            to_json(header, body)
        }
    }
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct DensityRow {
    n: u64,
    members: u64,
    atoms: u64,
    dn_num: u128,
    dn_den: u128,
    decimal: String,
    limit: String,
    abs_error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form_atoms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form_match: Option<bool>,
}

fn density_rows(report: &DensityReport) -> Vec<DensityRow> {
    let closed = report.closed_form_atom_counts();
    (0..report.checkpoints.len())
        .map(|i| {
            let expected = closed.as_ref().map(|c| c[i]);
            DensityRow {
                n: report.checkpoints[i],
                members: report.member_counts[i],
                atoms: report.atom_counts[i],
                dn_num: report.empirical[i].numer(),
                dn_den: report.empirical[i].denom(),
                decimal: decimal(report.empirical[i]),
                limit: report.limit.to_string(),
                abs_error: decimal(report.errors[i]),
                closed_form_atoms: expected,
                closed_form_match: expected.map(|e| e == report.atom_counts[i]),
            }
        })
        .collect()
}

pub fn density(header: &Header, report: &DensityReport, format: Format) -> Result<String> {
    let rows = density_rows(report);
    match format {
        Format::Csv => {
            let mut out = header.csv_line();
            out.push_str("N,members,atoms,dn_num,dn_den,decimal,limit,abs_error,closed_form_match\n");
            for r in rows {
                let flag = r.closed_form_match.map_or("na".to_string(), |m| m.to_string());
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    r.n, r.members, r.atoms, r.dn_num, r.dn_den, r.decimal, r.limit, r.abs_error, flag
                );
            }
            Ok(out)
        }
        Format::Json => to_json(
            header,
            serde_json::json!({ "limit": Fraction::from(report.limit), "rows": rows }),
        ),
    }
}

// ---------------------------------------------------------------------------

pub fn verify(header: &Header, verdict: &Verdict) -> Result<String> {
    let body = serde_json::json!({
        "verdict": if verdict.pass { "PASS" } else { "FAIL" },
        "mode": verdict.mode.as_str(),
        "reason": verdict.reason,
        "limit": Fraction::from(verdict.report.limit),
        "final_error": Fraction::from(verdict.final_error),
        "threshold": verdict.threshold.map(Fraction::from),
        "decreasing_steps": verdict.decreasing_steps,
        "total_steps": verdict.total_steps,
        "rows": density_rows(&verdict.report),
    });
    to_json(header, body)
}

pub fn block(header: &Header, modulus: u64, group_order: usize, atoms: &[Block]) -> Result<String> {
    let letters: Vec<&[u64]> = atoms.iter().map(Block::letters).collect();
    let davenport = atoms.iter().map(Block::len).max().unwrap_or(0);
    to_json(
        header,
        serde_json::json!({
            "modulus": modulus,
            "group_order": group_order,
            "atom_count": atoms.len(),
            "atoms": letters,
            "davenport": davenport,
        }),
    )
}

pub fn factorize(header: &Header, set: &FactorizationSet) -> Result<String> {
    let lists: Vec<&[u64]> = set.factorizations.iter().map(|f| f.atoms()).collect();
    to_json(
        header,
        serde_json::json!({
            "element": set.element,
            "factorization_count": lists.len(),
            "factorizations": lists,
            "length_set": set.length_set(),
            "elasticity": set.elasticity().map(Fraction::from),
        }),
    )
}

// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct PartitionRow {
    n: u64,
    members: u64,
    q_members: u64,
    r_members: u64,
    q_atoms: u64,
    r_atoms: u64,
    r_all_atoms: bool,
    r_share: String,
}

pub fn partition(header: &Header, counts: &[PartitionCounts], format: Format) -> Result<String> {
    let rows: Vec<PartitionRow> = counts
        .iter()
        .map(|p| PartitionRow {
            n: p.n,
            members: p.total_members(),
            q_members: p.q_members,
            r_members: p.r_members,
            q_atoms: p.q_atoms,
            r_atoms: p.r_atoms,
            r_all_atoms: p.r_is_all_atoms(),
            r_share: decimal(Ratio::new(p.r_members.into(), p.total_members().max(1).into())),
        })
        .collect();
    match format {
        Format::Csv => {
            let mut out = header.csv_line();
            out.push_str("N,members,q_members,r_members,q_atoms,r_atoms,r_all_atoms,r_share\n");
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.n, r.members, r.q_members, r.r_members, r.q_atoms, r.r_atoms, r.r_all_atoms, r.r_share
                );
            }
            Ok(out)
        }
        Format::Json => to_json(header, serde_json::json!({ "rows": rows })),
    }
}

#[derive(Serialize)]
struct SeriesRow {
    n: u64,
    count: u64,
    ratio_num: u128,
    ratio_den: u128,
    decimal: String,
}

pub fn series(header: &Header, series: &BoundedClassSeries, format: Format) -> Result<String> {
    let rows: Vec<SeriesRow> = series
        .checkpoints
        .iter()
        .zip(&series.counts)
        .zip(series.ratios())
        .map(|((&n, &count), r)| SeriesRow {
            n,
            count,
            ratio_num: r.numer(),
            ratio_den: r.denom(),
            decimal: decimal(r),
        })
        .collect();
    match format {
        Format::Csv => {
            let mut out = header.csv_line();
            out.push_str("N,count,ratio_num,ratio_den,decimal\n");
            for r in rows {
                let _ = writeln!(out, "{},{},{},{},{}", r.n, r.count, r.ratio_num, r.ratio_den, r.decimal);
            }
            Ok(out)
        }
        Format::Json => to_json(header, serde_json::json!({ "rows": rows })),
    }
}
