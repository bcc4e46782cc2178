use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use bstconn::diophantine::{reduce_coefficients, solve_bounded, DiophantineError, ReductionProblem};
use bstconn::format::{parse_instance, parse_walk, serialize_instance_with_comments, serialize_walk};
use bstconn::instances::{DegenerateKind, Family};
use bstconn::oracle::{default_bound, shortest_balanced_with, OracleConfig, OracleError};
use bstconn::witness::WitnessError;
use bstconn::{build_witness, decide_balanced, rebalance_existing, verify_walk, Instance, Walk};
use serde::Serialize;
use thiserror::Error;

use crate::GenFamily;

pub const SCHEMA_VERSION: u32 = 1;

/// Process exit status. Stable contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Negative = 1,
    Input = 2,
    Resource = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Resource(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Input(_) | CliError::Io(_) => Status::Input,
            CliError::Resource(_) => Status::Resource,
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(io::Error::other(e))
    }
}

fn read_source(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_instance(path: &Path) -> Result<Instance, CliError> {
    let text = read_source(path)?;
    parse_instance(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_walk(path: &Path) -> Result<Walk, CliError> {
    let text = read_source(path)?;
    parse_walk(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, record: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, record).map_err(io::Error::other)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct DecideRecord {
    schema_version: u32,
    command: &'static str,
    answer: &'static str,
    k0: Option<i64>,
    g: u64,
    reason: Option<String>,
}

pub fn decide(path: &Path, json: bool, out: &mut dyn Write) -> Result<Status, CliError> {
    let inst = load_instance(path)?;
    let v = decide_balanced(&inst);
    let answer = if v.is_yes() { "YES" } else { "NO" };
    if json {
        emit_json(
            out,
            &DecideRecord {
                schema_version: SCHEMA_VERSION,
                command: "decide",
                answer,
                k0: v.k0(),
                g: v.g(),
                reason: v.reason().map(|r| r.to_string()),
            },
        )?;
    } else {
        let k0 = v.k0().map_or("-".to_string(), |k| k.to_string());
        write!(out, "{answer} k0={k0} g={}", v.g())?;
        if let Some(r) = v.reason() {
            write!(out, " reason={r}")?;
        }
        writeln!(out)?;
    }
    Ok(if v.is_yes() { Status::Ok } else { Status::Negative })
}

#[derive(Serialize)]
struct WalkRecord<'a> {
    schema_version: u32,
    command: &'static str,
    answer: &'static str,
    length: Option<usize>,
    walk: Option<&'a Walk>,
}

fn emit_walk(
    command: &'static str,
    walk: Option<&Walk>,
    json: bool,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    if json {
        emit_json(
            out,
            &WalkRecord {
                schema_version: SCHEMA_VERSION,
                command,
                answer: if walk.is_some() { "YES" } else { "NO" },
                length: walk.map(Walk::len),
                walk,
            },
        )?;
    } else if let Some(w) = walk {
        out.write_all(serialize_walk(w).as_bytes())?;
    } else {
        eprintln!("no balanced walk exists");
    }
    Ok(if walk.is_some() { Status::Ok } else { Status::Negative })
}

pub fn witness(path: &Path, json: bool, out: &mut dyn Write) -> Result<Status, CliError> {
    let inst = load_instance(path)?;
    let w = build_witness(&inst);
    emit_walk("witness", w.as_ref(), json, out)
}

pub fn verify(
    instance: &Path,
    walk: &Path,
    json: bool,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let inst = load_instance(instance)?;
    let w = load_walk(walk)?;
    let r = verify_walk(&inst, &w);
    if json {
        #[derive(Serialize)]
        struct Record<'a> {
            schema_version: u32,
            command: &'static str,
            #[serde(flatten)]
            report: &'a bstconn::VerifyReport,
        }
        emit_json(out, &Record { schema_version: SCHEMA_VERSION, command: "verify", report: &r })?;
    } else {
        let imbalance = r.imbalance.map_or("-".to_string(), |x| x.to_string());
        writeln!(
            out,
            "valid={} balanced={} endpoints_ok={} length={} imbalance={}",
            r.valid, r.balanced, r.endpoints_ok, r.length, imbalance
        )?;
        if let Some(e) = &r.error {
            writeln!(out, "error: {e}")?;
        }
    }
    Ok(if r.accepted() { Status::Ok } else { Status::Negative })
}

pub fn rebalance(
    instance: &Path,
    walk: &Path,
    json: bool,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let inst = load_instance(instance)?;
    let w = load_walk(walk)?;
    let q = rebalance_existing(&inst, &w).map_err(|e| match e {
        WitnessError::Arithmetic(DiophantineError::Overflow) => CliError::Resource(e.to_string()),
        _ => CliError::Input(format!("{}: {e}", walk.display())),
    })?;
    emit_walk("rebalance", Some(&q), json, out)
}

pub fn oracle(
    path: &Path,
    bound: Option<u64>,
    print_walk: bool,
    max_states: usize,
    json: bool,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let inst = load_instance(path)?;
    let bound = bound.unwrap_or_else(|| default_bound(inst.n()));
    let found = shortest_balanced_with(&inst, bound, &OracleConfig { max_states })
        .map_err(|e| match e {
            OracleError::ZeroBound => CliError::Input(e.to_string()),
            OracleError::StateBudget { .. } => CliError::Resource(e.to_string()),
        })?;
    if json {
        #[derive(Serialize)]
        struct Record<'a> {
            schema_version: u32,
            command: &'static str,
            bound: u64,
            answer: &'static str,
            length: Option<usize>,
            walk: Option<&'a Walk>,
        }
        emit_json(
            out,
            &Record {
                schema_version: SCHEMA_VERSION,
                command: "oracle",
                bound,
                answer: if found.is_some() { "YES" } else { "NO" },
                length: found.as_ref().map(|f| f.length),
                walk: found.as_ref().filter(|_| print_walk).map(|f| &f.walk),
            },
        )?;
    } else {
        match &found {
            Some(f) => {
                writeln!(out, "length={}", f.length)?;
                if print_walk {
                    out.write_all(serialize_walk(&f.walk).as_bytes())?;
                }
            }
            None => writeln!(out, "none within bound {bound}")?,
        }
    }
    Ok(if found.is_some() { Status::Ok } else { Status::Negative })
}

pub fn family_from_args(family: GenFamily) -> Result<Family, CliError> {
    Ok(match family {
        GenFamily::Figure1 { n } => Family::Figure1 { n },
        GenFamily::Random { n, directed_p, neutral_p, seed } => {
            Family::Random { n, directed_p, neutral_p, seed }
        }
        GenFamily::Degenerate { kind, n } => {
            let kind: DegenerateKind =
                kind.parse().map_err(|e: bstconn::instances::GenError| CliError::Input(e.to_string()))?;
            Family::Degenerate { kind, n }
        }
    })
}

pub fn gen(family: GenFamily, output: Option<&Path>, out: &mut dyn Write) -> Result<Status, CliError> {
    let family = family_from_args(family)?;
    let inst = family.generate().map_err(|e| CliError::Input(e.to_string()))?;
    let text = serialize_instance_with_comments(&inst, &family.provenance());
    match output {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(Status::Ok)
}

pub fn reduce(
    c: Vec<i64>,
    k: i64,
    m: Option<Vec<i64>>,
    json: bool,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let input = |e: DiophantineError| CliError::Input(e.to_string());
    let m = match m {
        Some(m) => m,
        None => match solve_bounded(&c, k).map_err(input)? {
            Some(m) => m,
            None => {
                writeln!(out, "no integer solution: gcd of coefficients does not divide {k}")?;
                return Ok(Status::Negative);
            }
        },
    };
    let problem = ReductionProblem::new(c.clone(), k, m.clone()).map_err(input)?;
    let sol = reduce_coefficients(&problem).map_err(input)?;
    if json {
        #[derive(Serialize)]
        struct Record<'a> {
            schema_version: u32,
            command: &'static str,
            c: &'a [i64],
            k: i64,
            m: &'a [i64],
            #[serde(flatten)]
            solution: &'a bstconn::diophantine::ReducedSolution,
        }
        emit_json(
            out,
            &Record { schema_version: SCHEMA_VERSION, command: "reduce", c: &c, k, m: &m, solution: &sol },
        )?;
        return Ok(Status::Ok);
    }
    let cr = c[c.len() - 1];
    writeln!(out, "c = {c:?}, k = {k}, m = {m:?}")?;
    for (i, (a, b)) in sol.quotients.iter().zip(&sol.remainders).enumerate() {
        writeln!(out, "m_{} = {} = {a}*{cr} + {b}  ->  a = {a}, b = {b}", i + 1, m[i])?;
    }
    let folded: Vec<String> =
        sol.quotients.iter().zip(&c).map(|(a, ci)| format!("({a})*{ci}")).collect();
    let last = *sol.multipliers.last().unwrap();
    if folded.is_empty() {
        writeln!(out, "m'_1 = {last}")?;
    } else {
        writeln!(out, "m'_{} = {} + {} = {last}", c.len(), m[c.len() - 1], folded.join(" + "))?;
    }
    writeln!(out, "m' = {:?}", sol.multipliers)?;
    Ok(Status::Ok)
}
