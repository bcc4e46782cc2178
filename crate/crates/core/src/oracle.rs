//! Exhaustive ground truth for small instances.
//!
//! Breadth-first search over `(vertex, running imbalance)` states, with the
//! running imbalance clamped to `[-B, B]`. The first time `(t, 0)` is
//! dequeued gives the minimum length of a balanced walk whose prefixes all
//! stay within the bound. Any walk of length `L` has prefixes within `[-L, L]`,
//! so once `B` is at least the length of some balanced walk the search is
//! complete; `B = 16n³` always suffices given [`crate::witness::build_witness`].

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Instance, Walk};
use crate::solver::decide_balanced;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("imbalance bound must be at least 1")]
    ZeroBound,
    #[error("search needs {states} states, over the cap of {cap}")]
    StateBudget { states: u128, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_states: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { max_states: 1 << 25 }
    }
}

/// Shortest balanced walk found by the search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleWalk {
    pub length: usize,
    pub walk: Walk,
}

/// `3n³`, the default imbalance bound.
pub fn default_bound(n: usize) -> u64 {
    3 * (n as u64).pow(3)
}

/// `16n³`, large enough for the search to be complete.
pub fn complete_bound(n: usize) -> u64 {
    16 * (n as u64).pow(3)
}

pub fn shortest_balanced(instance: &Instance, bound: u64) -> Result<Option<OracleWalk>, OracleError> {
    shortest_balanced_with(instance, bound, &OracleConfig::default())
}

pub fn shortest_balanced_with(
    instance: &Instance,
    bound: u64,
    config: &OracleConfig,
) -> Result<Option<OracleWalk>, OracleError> {
    if bound == 0 {
        return Err(OracleError::ZeroBound);
    }
    let n = instance.n();
    let width = 2 * u128::from(bound) + 1;
    let states = n as u128 * width;
    if states > config.max_states as u128 || states >= u128::from(u32::MAX) {
        return Err(OracleError::StateBudget { states, cap: config.max_states });
    }
    let width = width as usize;
    let offset = bound as i64;
    let index = |v: usize, b: i64| v * width + (b + offset) as usize;

    let (s, t) = (instance.s(), instance.t());
    if s == t {
        return Ok(Some(OracleWalk { length: 0, walk: Walk::trivial(s) }));
    }

    let view = instance.view();
    const UNSEEN: u32 = u32::MAX;
    let mut parent = vec![UNSEEN; states as usize];
    let start = index(s, 0);
    let goal = index(t, 0);
    parent[start] = start as u32;
    let mut queue = VecDeque::from([(s, 0i64)]);
    while let Some((u, b)) = queue.pop_front() {
        let here = index(u, b);
        for (v, w) in view.neighbors(u) {
            let nb = b + w;
            if nb.abs() > offset {
                continue;
            }
            let next = index(v, nb);
            if parent[next] != UNSEEN {
                continue;
            }
            parent[next] = here as u32;
            if next == goal {
                let walk = reconstruct(&parent, goal, width);
                return Ok(Some(OracleWalk { length: walk.len(), walk }));
            }
            queue.push_back((v, nb));
        }
    }
    Ok(None)
}

fn reconstruct(parent: &[u32], goal: usize, width: usize) -> Walk {
    let mut vertices = Vec::new();
    let mut cur = goal;
    loop {
        vertices.push(cur / width);
        let p = parent[cur] as usize;
        if p == cur {
            break;
        }
        cur = p;
    }
    vertices.reverse();
    Walk::new(vertices)
}

/// Searches with [`default_bound`], retrying once with [`complete_bound`]
/// when that finds nothing but the solver claims a balanced walk exists.
pub fn shortest_balanced_escalating(instance: &Instance) -> Result<Option<OracleWalk>, OracleError> {
    let n = instance.n();
    let found = shortest_balanced(instance, default_bound(n))?;
    if found.is_none() && decide_balanced(instance).is_yes() {
        return shortest_balanced(instance, complete_bound(n));
    }
    Ok(found)
}
