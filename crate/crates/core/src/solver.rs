//! Deciding balanced st-connectivity in near-linear time.
//!
//! Root a BFS spanning tree of the underlying graph at `s` and give every
//! vertex the potential `p(v)`: the imbalance of its tree path from `s`.
//! Each non-tree pair `{u, v}` closes a fundamental cycle whose imbalance is
//! the discrepancy `δ(u, v) = p(u) + w(u -> v) - p(v)`. Every closed walk's
//! imbalance is an integer combination of these discrepancies, and any such
//! combination is realised by detouring from `t` around the corresponding
//! cycles (out-and-back connectors cost nothing). So the imbalances of
//! `s -> t` walks form exactly the coset `p(t) + gℤ`, where `g` is the gcd of
//! all discrepancies, and a balanced walk exists iff that coset contains 0.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::diophantine::gcd;
use crate::graph::{ClassifiedView, Instance, Vertex, Walk};

/// Order in which BFS visits the neighbors of a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NeighborOrder {
    #[default]
    Ascending,
    Descending,
}

/// BFS spanning tree of the root's component with per-vertex potentials.
#[derive(Debug, Clone)]
pub struct PotentialAssignment {
    root: Vertex,
    parent: Vec<Option<Vertex>>,
    potential: Vec<Option<i64>>,
    depth: Vec<usize>,
    order: Vec<Vertex>,
}

impl PotentialAssignment {
    pub fn root(&self) -> Vertex {
        self.root
    }

    /// `p(v)`, or `None` if `v` is outside the root's component.
    pub fn potential(&self, v: Vertex) -> Option<i64> {
        self.potential.get(v).copied().flatten()
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent.get(v).copied().flatten()
    }

    pub fn depth(&self, v: Vertex) -> Option<usize> {
        self.contains(v).then(|| self.depth[v])
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.potential(v).is_some()
    }

    /// Component members in BFS order, root first.
    pub fn component(&self) -> &[Vertex] {
        &self.order
    }

    pub fn is_tree_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.parent(v) == Some(u) || self.parent(u) == Some(v)
    }

    /// Tree path from `a` to `b`; both must lie in the component.
    pub fn tree_path(&self, a: Vertex, b: Vertex) -> Walk {
        assert!(self.contains(a) && self.contains(b), "tree path endpoints outside component");
        let (mut x, mut y) = (a, b);
        let mut up = vec![x];
        let mut down = vec![y];
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].unwrap();
            up.push(x);
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].unwrap();
            down.push(y);
        }
        while x != y {
            x = self.parent[x].unwrap();
            y = self.parent[y].unwrap();
            up.push(x);
            down.push(y);
        }
        down.pop();
        up.extend(down.into_iter().rev());
        Walk::new(up)
    }

    /// Lowest common ancestor of `a` and `b`: the vertex of the tree path
    /// between them closest to the root.
    pub fn lca(&self, a: Vertex, b: Vertex) -> Vertex {
        let (mut x, mut y) = (a, b);
        while self.depth[x] > self.depth[y] {
            x = self.parent[x].unwrap();
        }
        while self.depth[y] > self.depth[x] {
            y = self.parent[y].unwrap();
        }
        while x != y {
            x = self.parent[x].unwrap();
            y = self.parent[y].unwrap();
        }
        x
    }

    /// Number of tree edges between `a` and `b`.
    pub fn tree_distance(&self, a: Vertex, b: Vertex) -> usize {
        let l = self.depth[self.lca(a, b)];
        self.depth[a] + self.depth[b] - 2 * l
    }
}

pub fn compute_potentials(view: &ClassifiedView, root: Vertex) -> PotentialAssignment {
    compute_potentials_ordered(view, root, NeighborOrder::Ascending)
}

pub fn compute_potentials_ordered(
    view: &ClassifiedView,
    root: Vertex,
    order: NeighborOrder,
) -> PotentialAssignment {
    let n = view.vertex_count();
    assert!(root < n, "root {root} out of range");
    let mut parent = vec![None; n];
    let mut potential = vec![None; n];
    let mut depth = vec![0; n];
    let mut visited = Vec::new();
    let mut queue = VecDeque::new();
    potential[root] = Some(0);
    queue.push_back(root);
    while let Some(u) = queue.pop_front() {
        visited.push(u);
        let pu = potential[u].unwrap();
        let mut visit = |(v, w): (Vertex, i64)| {
            if potential[v].is_none() {
                potential[v] = Some(pu + w);
                parent[v] = Some(u);
                depth[v] = depth[u] + 1;
                queue.push_back(v);
            }
        };
        match order {
            NeighborOrder::Ascending => view.neighbors(u).for_each(&mut visit),
            NeighborOrder::Descending => view.neighbors(u).rev().for_each(&mut visit),
        }
    }
    PotentialAssignment { root, parent, potential, depth, order: visited }
}

/// A non-tree pair `{u, v}` (stored with `u < v`) and its discrepancy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FundamentalCycle {
    pub u: Vertex,
    pub v: Vertex,
    pub discrepancy: i64,
}

impl FundamentalCycle {
    /// The closed walk `u -> v` across the pair, then the tree path back to
    /// `u`. Its imbalance equals the discrepancy.
    pub fn closed_walk(&self, tree: &PotentialAssignment) -> Walk {
        let mut vs = vec![self.u];
        vs.extend(tree.tree_path(self.v, self.u).into_vertices());
        Walk::new(vs)
    }

    pub fn len(&self, tree: &PotentialAssignment) -> usize {
        1 + tree.tree_distance(self.u, self.v)
    }
}

#[derive(Debug, Clone)]
pub struct CycleStructure {
    /// gcd of all discrepancy magnitudes; 0 when every discrepancy is 0.
    pub g: u64,
    pub cycles: Vec<FundamentalCycle>,
}

pub fn cycle_gcd(view: &ClassifiedView, tree: &PotentialAssignment) -> CycleStructure {
    let mut g = 0u64;
    let mut cycles = Vec::new();
    for &u in tree.component() {
        let pu = tree.potential(u).expect("component vertex has a potential");
        for (v, w) in view.neighbors(u) {
            if v <= u || tree.is_tree_edge(u, v) {
                continue;
            }
            let pv = tree.potential(v).expect("neighbor of component vertex is in component");
            let discrepancy = pu + w - pv;
            g = gcd(g, discrepancy.unsigned_abs());
            cycles.push(FundamentalCycle { u, v, discrepancy });
        }
    }
    CycleStructure { g, cycles }
}

/// True when `k0 + gℤ` contains 0.
pub fn coset_contains_zero(k0: i64, g: u64) -> bool {
    if g == 0 {
        k0 == 0
    } else {
        k0.unsigned_abs().is_multiple_of(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoReason {
    Disconnected,
    CosetMissesZero,
}

impl fmt::Display for NoReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoReason::Disconnected => "disconnected",
            NoReason::CosetMissesZero => "coset-misses-zero",
        })
    }
}

/// Outcome of [`decide_balanced`].
///
/// `g` is the cycle gcd of `s`'s component. `k0 = p(t)` with potentials
/// rooted at `s`, absent when `t` is unreachable from `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes { k0: i64, g: u64 },
    No { reason: NoReason, k0: Option<i64>, g: u64 },
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes { .. })
    }

    pub fn k0(&self) -> Option<i64> {
        match *self {
            Verdict::Yes { k0, .. } => Some(k0),
            Verdict::No { k0, .. } => k0,
        }
    }

    pub fn g(&self) -> u64 {
        match *self {
            Verdict::Yes { g, .. } | Verdict::No { g, .. } => g,
        }
    }

    pub fn reason(&self) -> Option<NoReason> {
        match *self {
            Verdict::Yes { .. } => None,
            Verdict::No { reason, .. } => Some(reason),
        }
    }
}

pub fn decide_balanced(instance: &Instance) -> Verdict {
    decide_balanced_ordered(instance, NeighborOrder::Ascending)
}

pub fn decide_balanced_ordered(instance: &Instance, order: NeighborOrder) -> Verdict {
    let view = instance.view();
    decide_in_view(&view, instance.s(), instance.t(), order)
}

pub(crate) fn decide_in_view(
    view: &ClassifiedView,
    s: Vertex,
    t: Vertex,
    order: NeighborOrder,
) -> Verdict {
    let tree = compute_potentials_ordered(view, s, order);
    let g = cycle_gcd(view, &tree).g;
    match tree.potential(t) {
        None => Verdict::No { reason: NoReason::Disconnected, k0: None, g },
        Some(k0) if coset_contains_zero(k0, g) => Verdict::Yes { k0, g },
        Some(k0) => Verdict::No { reason: NoReason::CosetMissesZero, k0: Some(k0), g },
    }
}
