//! Batch evaluation over many instances.
//!
//! With the `parallel` feature (on by default) work is spread over the rayon
//! thread pool; without it, or with [`Strategy::Sequential`], everything runs
//! on the calling thread. Results always come back in input order.

use std::ops::Range;

use crate::graph::{DirectedGraph, Instance, Vertex};
use crate::oracle::{shortest_balanced_escalating, OracleError};
use crate::solver::{decide_balanced, Verdict};
use crate::witness::build_witness;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

pub fn map_with<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

pub fn map_range_with<R, F>(strategy: Strategy, range: Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().map(f).collect()
        }
        _ => range.map(f).collect(),
    }
}

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_with(Strategy::default(), items, f)
}

pub fn map_range<R, F>(range: Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    map_range_with(Strategy::default(), range, f)
}

pub fn decide_all_with(strategy: Strategy, instances: &[Instance]) -> Vec<Verdict> {
    map_with(strategy, instances, decide_balanced)
}

pub fn decide_all(instances: &[Instance]) -> Vec<Verdict> {
    decide_all_with(Strategy::default(), instances)
}

/// Number of simple digraphs on `n` labeled vertices: `2^(n(n-1))`.
pub fn graph_count(n: usize) -> u64 {
    1u64 << (n * (n - 1))
}

/// The digraph whose edge set is given by the bits of `mask`, one bit per
/// ordered pair `(u, v)`, `u != v`, in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> DirectedGraph {
    let pairs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
    let edges = pairs.enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e);
    DirectedGraph::new(n, edges).expect("mask graphs are simple")
}

/// One query on which two procedures gave different answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Disagreement {
    pub mask: u64,
    pub s: Vertex,
    pub t: Vertex,
    pub solver_yes: bool,
    pub other_yes: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExhaustiveReport {
    pub graphs: u64,
    pub queries: u64,
    pub yes: u64,
    pub disagreements: Vec<Disagreement>,
}

fn sweep_graph<F>(n: usize, mask: u64, mut other: F) -> Result<ExhaustiveReport, OracleError>
where
    F: FnMut(&Instance) -> Result<bool, OracleError>,
{
    let graph = graph_from_mask(n, mask);
    let mut report = ExhaustiveReport { graphs: 1, ..Default::default() };
    for s in 0..n {
        for t in 0..n {
            let inst = Instance::new(graph.clone(), s, t).expect("endpoints in range");
            let solver_yes = decide_balanced(&inst).is_yes();
            let other_yes = other(&inst)?;
            report.queries += 1;
            report.yes += u64::from(solver_yes);
            if solver_yes != other_yes {
                report.disagreements.push(Disagreement { mask, s, t, solver_yes, other_yes });
            }
        }
    }
    Ok(report)
}

fn merge(reports: Vec<Result<ExhaustiveReport, OracleError>>) -> Result<ExhaustiveReport, OracleError> {
    let mut total = ExhaustiveReport::default();
    for r in reports {
        let r = r?;
        total.graphs += r.graphs;
        total.queries += r.queries;
        total.yes += r.yes;
        total.disagreements.extend(r.disagreements);
    }
    Ok(total)
}

/// Compares the solver with the oracle on every digraph with `n` vertices
/// and every ordered endpoint pair.
pub fn exhaustive_oracle_agreement(
    strategy: Strategy,
    n: usize,
) -> Result<ExhaustiveReport, OracleError> {
    let reports = map_range_with(strategy, 0..graph_count(n), |mask| {
        sweep_graph(n, mask, |inst| Ok(shortest_balanced_escalating(inst)?.is_some()))
    });
    merge(reports)
}

/// Compares the solver with witness construction on every digraph with `n`
/// vertices and every ordered endpoint pair.
pub fn exhaustive_witness_agreement(strategy: Strategy, n: usize) -> ExhaustiveReport {
    let reports = map_range_with(strategy, 0..graph_count(n), |mask| {
        sweep_graph(n, mask, |inst| Ok(build_witness(inst).is_some()))
    });
    merge(reports).expect("witness sweep has no fallible step")
}
