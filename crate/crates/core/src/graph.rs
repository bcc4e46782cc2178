//! Directed graphs, their underlying undirected view with per-direction
//! traversal weights, and walk arithmetic over that view.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertex identifier. Vertices of a graph with `n` vertices are `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph must have at least one vertex")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("walk has no vertices")]
    Empty,
    #[error("vertex {vertex} at position {index} is out of range")]
    VertexOutOfRange { index: usize, vertex: Vertex },
    #[error("step {step} ({from} -> {to}) is not an edge of the underlying graph")]
    NoSuchEdge { step: usize, from: Vertex, to: Vertex },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no edge between {0} and {1}")]
pub struct NoSuchEdge(pub Vertex, pub Vertex);

/// A simple directed graph: no self-loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedGraph {
    n: usize,
    edges: BTreeSet<(Vertex, Vertex)>,
}

impl DirectedGraph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range ids.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !set.insert((u, v)) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        Ok(Self { n, edges: set })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Directed edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&(u, v))
    }

    pub fn view(&self) -> ClassifiedView {
        ClassifiedView::new(self)
    }
}

/// Classification of traversing an underlying-graph edge in direction `u -> v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeClass {
    /// Both `(u, v)` and `(v, u)` are present.
    Neutral,
    /// Only `(u, v)` is present.
    Forward,
    /// Only `(v, u)` is present.
    Backward,
}

impl EdgeClass {
    /// Contribution of one traversal to a walk's imbalance.
    pub fn weight(self) -> i64 {
        match self {
            EdgeClass::Neutral => 0,
            EdgeClass::Forward => 1,
            EdgeClass::Backward => -1,
        }
    }

    fn from_weight(w: i8) -> Self {
        match w {
            0 => EdgeClass::Neutral,
            1 => EdgeClass::Forward,
            -1 => EdgeClass::Backward,
            _ => unreachable!("edge weight outside {{-1, 0, 1}}"),
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            EdgeClass::Neutral => EdgeClass::Neutral,
            EdgeClass::Forward => EdgeClass::Backward,
            EdgeClass::Backward => EdgeClass::Forward,
        }
    }
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EdgeClass::Neutral => "neutral",
            EdgeClass::Forward => "forward",
            EdgeClass::Backward => "backward",
        };
        f.write_str(s)
    }
}

/// The underlying undirected graph, with each traversal direction weighted
/// +1 (forward), -1 (backward) or 0 (neutral).
///
/// Neighbor lists are sorted by vertex id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedView {
    adj: Vec<Vec<(Vertex, i8)>>,
    pairs: usize,
}

impl ClassifiedView {
    pub fn new(graph: &DirectedGraph) -> Self {
        let n = graph.vertex_count();
        let mut adj: Vec<Vec<(Vertex, i8)>> = vec![Vec::new(); n];
        let mut pairs = 0;
        for (u, v) in graph.edges() {
            let back = graph.has_edge(v, u);
            if back && v < u {
                // already recorded from (v, u)
                continue;
            }
            let w: i8 = if back { 0 } else { 1 };
            adj[u].push((v, w));
            adj[v].push((u, -w));
            pairs += 1;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Self { adj, pairs }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of unordered vertex pairs joined in the underlying graph.
    pub fn pair_count(&self) -> usize {
        self.pairs
    }

    /// Neighbors of `u` with the weight of `u -> neighbor`, ascending by id.
    pub fn neighbors(&self, u: Vertex) -> impl DoubleEndedIterator<Item = (Vertex, i64)> + '_ {
        self.adj[u].iter().map(|&(v, w)| (v, i64::from(w)))
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adj[u].len()
    }

    /// Weight of traversing `u -> v`, or `None` if the pair is absent.
    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<i64> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| i64::from(list[i].1))
    }

    pub fn classify(&self, u: Vertex, v: Vertex) -> Result<EdgeClass, NoSuchEdge> {
        let list = self.adj.get(u).ok_or(NoSuchEdge(u, v))?;
        list.binary_search_by_key(&v, |&(x, _)| x)
            .map(|i| EdgeClass::from_weight(list[i].1))
            .map_err(|_| NoSuchEdge(u, v))
    }

    /// Sum of traversal weights along `walk`.
    pub fn imbalance(&self, walk: &Walk) -> Result<i64, WalkError> {
        let vs = walk.vertices();
        if vs.is_empty() {
            return Err(WalkError::Empty);
        }
        let n = self.vertex_count();
        if let Some((index, &vertex)) = vs.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(WalkError::VertexOutOfRange { index, vertex });
        }
        let mut total = 0i64;
        for (step, pair) in vs.windows(2).enumerate() {
            let (from, to) = (pair[0], pair[1]);
            total += self
                .weight(from, to)
                .ok_or(WalkError::NoSuchEdge { step, from, to })?;
        }
        Ok(total)
    }
}

/// A walk in the underlying undirected graph, given as its vertex sequence.
///
/// `len()` counts traversed edges, so a single-vertex walk has length 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Walk(Vec<Vertex>);

impl Walk {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Self(vertices)
    }

    pub fn trivial(v: Vertex) -> Self {
        Self(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    /// Number of traversed edges.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// True for the vertex-less walk (not the same as length 0).
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn start(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn end(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    pub fn is_closed(&self) -> bool {
        self.0.len() >= 2 && self.start() == self.end()
    }

    pub fn reversed(&self) -> Walk {
        Walk(self.0.iter().rev().copied().collect())
    }

    /// Appends `other`, whose first vertex must equal this walk's last vertex.
    pub fn extend_with(&mut self, other: &Walk) {
        match (self.end(), other.start()) {
            (_, None) => {}
            (None, Some(_)) => self.0.extend_from_slice(&other.0),
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "concatenated walks must share the junction vertex");
                self.0.extend_from_slice(&other.0[1..]);
            }
        }
    }

    pub fn concat(&self, other: &Walk) -> Walk {
        let mut w = self.clone();
        w.extend_with(other);
        w
    }

    /// Rotates a closed walk so it starts (and ends) at position `at`.
    pub fn rotate_closed(&self, at: usize) -> Walk {
        assert!(self.is_closed(), "only closed walks can be rotated");
        let body = &self.0[..self.0.len() - 1];
        let mut out = Vec::with_capacity(self.0.len());
        out.extend_from_slice(&body[at..]);
        out.extend_from_slice(&body[..at]);
        out.push(body[at]);
        Walk(out)
    }

    /// True when no vertex repeats, except that a closed walk may end where
    /// it starts.
    pub fn is_simple(&self) -> bool {
        let body = if self.is_closed() {
            &self.0[..self.0.len() - 1]
        } else {
            &self.0[..]
        };
        let mut seen = BTreeSet::new();
        body.iter().all(|v| seen.insert(*v))
    }
}

impl From<Vec<Vertex>> for Walk {
    fn from(v: Vec<Vertex>) -> Self {
        Walk(v)
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A query: a directed graph with distinguished endpoints `s` and `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    graph: DirectedGraph,
    s: Vertex,
    t: Vertex,
}

impl Instance {
    pub fn new(graph: DirectedGraph, s: Vertex, t: Vertex) -> Result<Self, GraphError> {
        let n = graph.vertex_count();
        for x in [s, t] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        Ok(Self { graph, s, t })
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn s(&self) -> Vertex {
        self.s
    }

    pub fn t(&self) -> Vertex {
        self.t
    }

    pub fn n(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn view(&self) -> ClassifiedView {
        self.graph.view()
    }

    /// Same graph, different endpoints.
    pub fn with_endpoints(&self, s: Vertex, t: Vertex) -> Result<Self, GraphError> {
        Instance::new(self.graph.clone(), s, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn view(n: usize, edges: &[(Vertex, Vertex)]) -> ClassifiedView {
        DirectedGraph::new(n, edges.iter().copied()).unwrap().view()
    }

    #[test]
    fn classify_single_directed_edge() {
        let v = view(3, &[(0, 1)]);
        assert_eq!(v.classify(0, 1), Ok(EdgeClass::Forward));
        assert_eq!(v.classify(1, 0), Ok(EdgeClass::Backward));
        assert_eq!(v.classify(0, 2), Err(NoSuchEdge(0, 2)));
    }

    #[test]
    fn classify_antiparallel_pair_is_neutral() {
        let v = view(2, &[(0, 1), (1, 0)]);
        assert_eq!(v.classify(0, 1), Ok(EdgeClass::Neutral));
        assert_eq!(v.classify(1, 0), Ok(EdgeClass::Neutral));
        assert_eq!(v.pair_count(), 1);
    }

    #[test]
    fn out_and_back_cancels() {
        let v = view(2, &[(0, 1)]);
        assert_eq!(v.imbalance(&Walk::new(vec![0, 1, 0])), Ok(0));
        assert_eq!(v.imbalance(&Walk::new(vec![1, 0])), Ok(-1));
    }

    #[test]
    fn invalid_step_is_reported_by_index() {
        let v = view(3, &[(0, 1)]);
        assert_eq!(
            v.imbalance(&Walk::new(vec![0, 1, 2])),
            Err(WalkError::NoSuchEdge { step: 1, from: 1, to: 2 })
        );
        assert_eq!(
            v.imbalance(&Walk::new(vec![0, 7])),
            Err(WalkError::VertexOutOfRange { index: 1, vertex: 7 })
        );
        assert_eq!(v.imbalance(&Walk::default()), Err(WalkError::Empty));
    }

    #[test]
    fn graph_rejects_bad_edges() {
        assert_eq!(DirectedGraph::new(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            DirectedGraph::new(2, [(0, 1), (0, 1)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            DirectedGraph::new(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(DirectedGraph::new(0, []), Err(GraphError::Empty));
    }

    #[test]
    fn rotate_closed_walk() {
        let w = Walk::new(vec![0, 1, 2, 0]);
        assert_eq!(w.rotate_closed(1).vertices(), &[1, 2, 0, 1]);
        assert_eq!(w.rotate_closed(0), w);
        assert!(w.is_simple());
        assert!(!Walk::new(vec![0, 1, 0, 1]).is_simple());
    }

    #[test]
    fn concat_shares_junction() {
        let a = Walk::new(vec![0, 1]);
        let b = Walk::new(vec![1, 2]);
        assert_eq!(a.concat(&b).vertices(), &[0, 1, 2]);
        assert_eq!(Walk::default().concat(&b), b);
    }
}
