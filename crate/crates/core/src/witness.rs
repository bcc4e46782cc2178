//! Constructing balanced walks of polynomial length.
//!
//! Every witness produced here has the same shape: a simple `s -> t` path
//! `P'`, followed by excursions from `t`. Each excursion walks a connector
//! path out to a cycle, loops around it some number of times, and walks the
//! connector back. Connectors are traversed once in each direction, so only
//! the loops change the imbalance. Loop counts come from a solution of
//! `Σ m_i c_i = k` over the distinct cycle imbalances `c_i`, where
//! `k = -imbalance(P')`, reduced so that `Σ |m_i|` stays quadratic in `n`.
//!
//! [`rebalance_existing`] takes its cycles from the decomposition of a
//! given balanced walk; [`build_witness`] takes them from the fundamental
//! cycles of a BFS tree rooted at `t`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::diophantine::{reduce_coefficients, solve_bounded, DiophantineError, ReductionProblem};
use crate::graph::{ClassifiedView, Instance, Vertex, Walk, WalkError};
use crate::solver::{compute_potentials, cycle_gcd, PotentialAssignment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error(transparent)]
    InvalidWalk(#[from] WalkError),
    #[error("walk runs {start} -> {end}, expected {s} -> {t}")]
    WrongEndpoints { start: Vertex, end: Vertex, s: Vertex, t: Vertex },
    #[error("walk is not balanced (imbalance {0})")]
    Unbalanced(i64),
    #[error(transparent)]
    Arithmetic(#[from] DiophantineError),
}

/// Length guaranteed for [`rebalance_existing`] output: `3n³`.
pub fn rebalance_length_bound(n: usize) -> u128 {
    3 * (n as u128).pow(3)
}

/// Length guaranteed for [`build_witness`] output: `16n³`.
pub fn witness_length_bound(n: usize) -> u128 {
    16 * (n as u128).pow(3)
}

/// A simple cycle cut out of a walk during decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcisedCycle {
    pub walk: Walk,
    pub imbalance: i64,
    /// Index into the original walk's vertex sequence at which the cycle closed.
    pub closed_at: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub simple_path: Walk,
    pub path_imbalance: i64,
    pub cycles: Vec<ExcisedCycle>,
}

impl Decomposition {
    pub fn total_len(&self) -> usize {
        self.simple_path.len() + self.cycles.iter().map(|c| c.walk.len()).sum::<usize>()
    }

    pub fn total_imbalance(&self) -> i64 {
        self.path_imbalance + self.cycles.iter().map(|c| c.imbalance).sum::<i64>()
    }
}

/// Splits `walk` into a simple path between its endpoints and the simple
/// cycles excised along the way.
///
/// Vertices are pushed onto a stack; whenever the next vertex is already on
/// the stack, everything above its earlier occurrence is popped off as a
/// closed cycle.
pub fn decompose_walk(view: &ClassifiedView, walk: &Walk) -> Result<Decomposition, WalkError> {
    let total = view.imbalance(walk)?;
    let mut position: Vec<Option<usize>> = vec![None; view.vertex_count()];
    let mut stack: Vec<Vertex> = Vec::new();
    let mut cycles = Vec::new();
    for (i, &x) in walk.vertices().iter().enumerate() {
        match position[x] {
            Some(p) => {
                let mut cycle = stack[p..].to_vec();
                cycle.push(x);
                for &y in &stack[p + 1..] {
                    position[y] = None;
                }
                stack.truncate(p + 1);
                let cycle = Walk::new(cycle);
                let imbalance = view.imbalance(&cycle).expect("sub-walk of a valid walk");
                cycles.push(ExcisedCycle { walk: cycle, imbalance, closed_at: i });
            }
            None => {
                position[x] = Some(stack.len());
                stack.push(x);
            }
        }
    }
    let simple_path = Walk::new(stack);
    let path_imbalance = view.imbalance(&simple_path).expect("sub-walk of a valid walk");
    let d = Decomposition { simple_path, path_imbalance, cycles };
    debug_assert_eq!(d.total_len(), walk.len());
    debug_assert_eq!(d.total_imbalance(), total);
    Ok(d)
}

/// One cycle per distinct imbalance value, oriented to positive imbalance and
/// rotated to start at its anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Excursion {
    pub value: i64,
    pub cycle: Walk,
    pub anchor: Vertex,
    /// Simple tree path from `t` to `anchor`.
    pub connector: Walk,
}

/// Everything needed to assemble a balanced walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RebalancePlan {
    pub simple_path: Walk,
    /// `-imbalance(simple_path)`.
    pub k: i64,
    /// Sorted by ascending `value`.
    pub excursions: Vec<Excursion>,
    /// `Σ multipliers[i] * excursions[i].value = k`.
    pub multipliers: Vec<i64>,
}

impl RebalancePlan {
    pub fn assemble(&self) -> Walk {
        let mut q = self.simple_path.clone();
        for (ex, &m) in self.excursions.iter().zip(&self.multipliers) {
            if m == 0 {
                continue;
            }
            let lap = if m > 0 { ex.cycle.clone() } else { ex.cycle.reversed() };
            q.extend_with(&ex.connector);
            for _ in 0..m.unsigned_abs() {
                q.extend_with(&lap);
            }
            q.extend_with(&ex.connector.reversed());
        }
        q
    }

    /// Length of [`assemble`](Self::assemble)'s output, without building it.
    pub fn assembled_len(&self) -> u128 {
        let mut len = self.simple_path.len() as u128;
        for (ex, &m) in self.excursions.iter().zip(&self.multipliers) {
            if m != 0 {
                len += 2 * ex.connector.len() as u128
                    + u128::from(m.unsigned_abs()) * ex.cycle.len() as u128;
            }
        }
        len
    }
}

/// Closed `cycle` reoriented to non-negative imbalance and rotated to begin
/// at its vertex nearest `t`.
fn normalize_cycle(cycle: &Walk, imbalance: i64, tree: &PotentialAssignment) -> (Walk, Vertex) {
    let oriented = if imbalance < 0 { cycle.reversed() } else { cycle.clone() };
    let body = &oriented.vertices()[..oriented.vertices().len() - 1];
    let (pos, &anchor) = body
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| (tree.depth(v).expect("cycle reachable from t"), v))
        .expect("cycle has vertices");
    (oriented.rotate_closed(pos), anchor)
}

fn check_endpoints(instance: &Instance, walk: &Walk) -> Result<(), WitnessError> {
    let (start, end) = (walk.start().ok_or(WalkError::Empty)?, walk.end().unwrap());
    if start != instance.s() || end != instance.t() {
        return Err(WitnessError::WrongEndpoints {
            start,
            end,
            s: instance.s(),
            t: instance.t(),
        });
    }
    Ok(())
}

/// Plans a short balanced walk from the cycles of a given balanced walk.
type Representative = (usize, Vertex, Walk);

pub fn plan_rebalance(instance: &Instance, walk: &Walk) -> Result<RebalancePlan, WitnessError> {
    let view = instance.view();
    let imbalance = view.imbalance(walk)?;
    check_endpoints(instance, walk)?;
    if imbalance != 0 {
        return Err(WitnessError::Unbalanced(imbalance));
    }

    let decomposition = decompose_walk(&view, walk)?;
    let tree = compute_potentials(&view, instance.t());
    let k = -decomposition.path_imbalance;

    // value -> (net multiplier, best (len, anchor, cycle))
    let mut groups: BTreeMap<i64, (i64, Option<Representative>)> = BTreeMap::new();
    for c in decomposition.cycles.iter().filter(|c| c.imbalance != 0) {
        let value = c.imbalance.abs();
        let entry = groups.entry(value).or_insert((0, None));
        entry.0 += c.imbalance.signum();
        let (cycle, anchor) = normalize_cycle(&c.walk, c.imbalance, &tree);
        let key = (c.walk.len(), anchor);
        if entry.1.as_ref().is_none_or(|(len, a, _)| key < (*len, *a)) {
            entry.1 = Some((key.0, anchor, cycle));
        }
    }

    if groups.is_empty() {
        assert_eq!(k, 0, "balanced walk whose cycles are all neutral must have a neutral path");
        return Ok(RebalancePlan {
            simple_path: decomposition.simple_path,
            k,
            excursions: Vec::new(),
            multipliers: Vec::new(),
        });
    }

    let mut values = Vec::with_capacity(groups.len());
    let mut counts = Vec::with_capacity(groups.len());
    let mut excursions = Vec::with_capacity(groups.len());
    for (value, (count, best)) in groups {
        let (_, anchor, cycle) = best.expect("every group has a representative");
        debug_assert_eq!(view.imbalance(&cycle), Ok(value));
        debug_assert_eq!(view.imbalance(&cycle.reversed()), Ok(-value));
        values.push(value);
        counts.push(count);
        excursions.push(Excursion { value, cycle, anchor, connector: tree.tree_path(instance.t(), anchor) });
    }
    let problem = ReductionProblem::new(values, k, counts)
        .expect("grouped cycle multipliers must account for the path imbalance");
    let multipliers = reduce_coefficients(&problem)?.multipliers;
    Ok(RebalancePlan { simple_path: decomposition.simple_path, k, excursions, multipliers })
}

/// Rewrites a balanced `s -> t` walk into one of length at most `3n³`.
pub fn rebalance_existing(instance: &Instance, walk: &Walk) -> Result<Walk, WitnessError> {
    let q = plan_rebalance(instance, walk)?.assemble();
    debug_assert_eq!(instance.view().imbalance(&q), Ok(0));
    Ok(q)
}

/// Plans a balanced `s -> t` walk from scratch, or `None` if none exists.
pub fn plan_witness(instance: &Instance) -> Result<Option<RebalancePlan>, DiophantineError> {
    let view = instance.view();
    let (s, t) = (instance.s(), instance.t());
    let tree = compute_potentials(&view, t);
    let Some(ps) = tree.potential(s) else {
        return Ok(None);
    };
    let simple_path = tree.tree_path(s, t);
    // potentials are rooted at t, so the tree path s -> t has imbalance -p(s)
    let k = ps;

    // value -> (len, anchor, cycle)
    let mut best: BTreeMap<i64, (usize, Vertex, usize)> = BTreeMap::new();
    let cycles = cycle_gcd(&view, &tree).cycles;
    for (idx, c) in cycles.iter().enumerate().filter(|(_, c)| c.discrepancy != 0) {
        let key = (c.len(&tree), tree.lca(c.u, c.v));
        let value = c.discrepancy.abs();
        match best.get(&value) {
            Some(&(len, anchor, _)) if (len, anchor) <= key => {}
            _ => {
                best.insert(value, (key.0, key.1, idx));
            }
        }
    }

    let values: Vec<i64> = best.keys().copied().collect();
    let Some(multipliers) = solve_bounded(&values, k)? else {
        return Ok(None);
    };
    let excursions = best
        .into_iter()
        .map(|(value, (_, anchor, idx))| {
            let c = cycles[idx];
            let (cycle, found) = normalize_cycle(&c.closed_walk(&tree), c.discrepancy, &tree);
            debug_assert_eq!(found, anchor);
            Excursion { value, cycle, anchor, connector: tree.tree_path(t, anchor) }
        })
        .collect();
    Ok(Some(RebalancePlan { simple_path, k, excursions, multipliers }))
}

/// A balanced `s -> t` walk of length at most `16n³`, or `None` when no
/// balanced walk exists.
pub fn build_witness(instance: &Instance) -> Option<Walk> {
    let plan = plan_witness(instance).expect("multipliers over cycle values fit in i64")?;
    let q = plan.assemble();
    debug_assert_eq!(instance.view().imbalance(&q), Ok(0));
    Some(q)
}

/// Independent re-check of a claimed witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub length: usize,
    /// Absent when the walk is invalid.
    pub imbalance: Option<i64>,
    pub balanced: bool,
    pub endpoints_ok: bool,
    /// Present when the walk is invalid.
    pub error: Option<String>,
}

impl VerifyReport {
    pub fn accepted(&self) -> bool {
        self.valid && self.balanced && self.endpoints_ok
    }
}

pub fn verify_walk(instance: &Instance, walk: &Walk) -> VerifyReport {
    let endpoints_ok =
        walk.start() == Some(instance.s()) && walk.end() == Some(instance.t());
    let (imbalance, error) = match instance.view().imbalance(walk) {
        Ok(x) => (Some(x), None),
        Err(e) => (None, Some(e.to_string())),
    };
    VerifyReport {
        valid: imbalance.is_some(),
        length: walk.len(),
        imbalance,
        balanced: imbalance == Some(0),
        endpoints_ok,
        error,
    }
}
