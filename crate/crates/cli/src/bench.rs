//! Growth data for witness lengths across a family of instances.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use bstconn::batch::{self, Strategy};
use bstconn::instances::{DegenerateKind, Family};
use bstconn::oracle::shortest_balanced_escalating;
use bstconn::witness::witness_length_bound;
use bstconn::{build_witness, decide_balanced};
use serde::Serialize;

use crate::commands::{CliError, Status};

/// One CSV row. Field order is the CSV header.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub family: String,
    pub n: usize,
    pub verdict: &'static str,
    pub witness_len: Option<usize>,
    pub oracle_min: Option<usize>,
    pub decide_ns: u64,
    pub witness_ns: u64,
}

pub struct BenchOptions {
    pub oracle_max_n: usize,
    pub seed: u64,
    pub sequential: bool,
}

fn parse_range(range: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Input(format!("bad range `{range}`, expected `LO..HI`"));
    let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn family_at(name: &str, n: usize, seed: u64) -> Result<Family, CliError> {
    Ok(match name {
        "figure1" => Family::Figure1 { n },
        "random" => Family::Random { n, directed_p: 0.3, neutral_p: 0.2, seed },
        other => {
            let kind: DegenerateKind = other
                .parse()
                .map_err(|e: bstconn::instances::GenError| CliError::Input(e.to_string()))?;
            Family::Degenerate { kind, n }
        }
    })
}

fn measure(family: &Family, oracle_max_n: usize) -> Result<BenchRecord, CliError> {
    let inst = family.generate().map_err(|e| CliError::Input(e.to_string()))?;
    let n = inst.n();

    let start = Instant::now();
    let verdict = decide_balanced(&inst);
    let decide_ns = start.elapsed().as_nanos() as u64;

    let start = Instant::now();
    let witness = build_witness(&inst);
    let witness_ns = start.elapsed().as_nanos() as u64;

    let witness_len = witness.as_ref().map(|w| w.len());
    if let Some(len) = witness_len {
        assert!(len as u128 <= witness_length_bound(n), "witness exceeds 16n³ at n={n}");
    }

    let oracle_min = if n <= oracle_max_n {
        match shortest_balanced_escalating(&inst) {
            Ok(found) => found.map(|f| f.length),
            Err(e) => {
                eprintln!("bstconn: oracle skipped at n={n}: {e}");
                None
            }
        }
    } else {
        None
    };

    Ok(BenchRecord {
        family: family.name(),
        n,
        verdict: if verdict.is_yes() { "YES" } else { "NO" },
        witness_len,
        oracle_min,
        decide_ns,
        witness_ns,
    })
}

pub fn records(
    family: &str,
    range: &str,
    step: Option<usize>,
    opts: &BenchOptions,
) -> Result<Vec<BenchRecord>, CliError> {
    let (lo, hi) = parse_range(range)?;
    let grid: Vec<Family> = if family == "figure1" {
        let step = step.unwrap_or(4);
        (lo..=hi)
            .filter(|n| n % 4 == 0 && *n >= 8)
            .step_by((step / 4).max(1))
            .map(|n| Family::Figure1 { n })
            .collect()
    } else {
        (lo..=hi)
            .step_by(step.unwrap_or(1).max(1))
            .map(|n| family_at(family, n, opts.seed))
            .collect::<Result<_, _>>()?
    };
    if grid.is_empty() {
        return Err(CliError::Input(format!("no valid {family} sizes in `{range}`")));
    }
    let strategy = if opts.sequential { Strategy::Sequential } else { Strategy::default() };
    batch::map_with(strategy, &grid, |f| measure(f, opts.oracle_max_n)).into_iter().collect()
}

pub fn write_csv(rows: &[BenchRecord], out: impl Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn run(
    family: &str,
    range: &str,
    step: Option<usize>,
    opts: &BenchOptions,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let rows = records(family, range, step, opts)?;
    match output {
        Some(p) => write_csv(&rows, std::fs::File::create(p)?)?,
        None => write_csv(&rows, out)?,
    }
    Ok(Status::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_and_empty_oracle_field() {
        let rows = vec![BenchRecord {
            family: "figure1".into(),
            n: 64,
            verdict: "YES",
            witness_len: Some(1000),
            oracle_min: None,
            decide_ns: 5,
            witness_ns: 7,
        }];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "family,n,verdict,witness_len,oracle_min,decide_ns,witness_ns\nfigure1,64,YES,1000,,5,7\n"
        );
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("8..64").unwrap(), (8, 64));
        assert_eq!(parse_range("8..=64").unwrap(), (8, 64));
        assert!(parse_range("64..8").is_err());
        assert!(parse_range("8-64").is_err());
    }

    #[test]
    fn figure1_grid_skips_invalid_sizes() {
        let opts = BenchOptions { oracle_max_n: 0, seed: 0, sequential: true };
        let rows = records("figure1", "6..20", None, &opts).unwrap();
        assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![8, 12, 16, 20]);
        assert!(rows.iter().all(|r| r.verdict == "YES" && r.oracle_min.is_none()));
    }
}
