//! Instance generators.
//!
//! All generators are deterministic in their arguments. Random instances use
//! ChaCha8 seeded through `SeedableRng::seed_from_u64`, drawing only `f64`
//! and `u64` samples so the output is identical across platforms.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{DirectedGraph, Instance, Vertex, Walk};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("figure-1 family needs n divisible by 4 and at least 8, got {0}")]
    Figure1Size(usize),
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("{kind} family needs at least {min} vertices, got {n}")]
    TooSmall { kind: DegenerateKind, min: usize, n: usize },
    #[error("instance needs at least one vertex")]
    NoVertices,
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

/// The worst-case family: a directed `s -> t` path of length `n/2` with a
/// cycle of length `n/2` hanging off its midpoint `v`. Every cycle edge is
/// neutral except one directed edge `(v, u)`.
///
/// Vertex layout: path vertices `p_i = i` for `i in 0..=n/2` (`s = 0`,
/// `t = n/2`, `v = n/4`); cycle vertices `q_j = n/2 + j` for `j in 1..n/2`,
/// so `u = q_{n/2-1} = n - 1`.
///
/// Going around the cycle as `v, q_1, ..., q_{n/2-1}, v` (the "clockwise"
/// direction) ends with the backward step `u -> v`, so each clockwise lap
/// has imbalance -1. The path has imbalance `+n/2`, so the only way to
/// balance is `n/2` clockwise laps, for a total of `n/2 + n²/4` edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Figure1Params {
    n: usize,
}

impl Figure1Params {
    pub fn new(n: usize) -> Result<Self, GenError> {
        if n < 8 || !n.is_multiple_of(4) {
            return Err(GenError::Figure1Size(n));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> Vertex {
        0
    }

    pub fn t(&self) -> Vertex {
        self.n / 2
    }

    pub fn v(&self) -> Vertex {
        self.n / 4
    }

    pub fn u(&self) -> Vertex {
        self.n - 1
    }

    pub fn edge_count(&self) -> usize {
        3 * self.n / 2 - 1
    }

    pub fn instance(&self) -> Instance {
        let half = self.n / 2;
        let mut edges: Vec<(Vertex, Vertex)> = (0..half).map(|i| (i, i + 1)).collect();
        let ring: Vec<Vertex> = std::iter::once(self.v()).chain(half + 1..self.n).collect();
        for pair in ring.windows(2) {
            edges.push((pair[0], pair[1]));
            edges.push((pair[1], pair[0]));
        }
        edges.push((self.v(), self.u()));
        let graph = DirectedGraph::new(self.n, edges).expect("figure-1 edges are well formed");
        debug_assert_eq!(graph.edge_count(), self.edge_count());
        Instance::new(graph, self.s(), self.t()).expect("endpoints in range")
    }

    /// The directed path `s -> t`, imbalance `+n/2`.
    pub fn straight_path(&self) -> Walk {
        Walk::new((0..=self.t()).collect())
    }

    /// One clockwise lap from `v`, imbalance -1.
    pub fn clockwise_lap(&self) -> Walk {
        let mut vs = vec![self.v()];
        vs.extend(self.n / 2 + 1..self.n);
        vs.push(self.v());
        Walk::new(vs)
    }

    /// `s -> v`, then `clockwise` clockwise laps and `counter` counterclockwise
    /// laps, then `v -> t`.
    pub fn looped_walk(&self, clockwise: usize, counter: usize) -> Walk {
        let mut w = Walk::new((0..=self.v()).collect());
        let lap = self.clockwise_lap();
        let back = lap.reversed();
        for _ in 0..clockwise {
            w.extend_with(&lap);
        }
        for _ in 0..counter {
            w.extend_with(&back);
        }
        w.extend_with(&Walk::new((self.v()..=self.t()).collect()));
        w
    }

    /// The balanced walk with `n/2` clockwise laps; length `n/2 + n²/4`.
    pub fn canonical_walk(&self) -> Walk {
        self.looped_walk(self.n / 2, 0)
    }
}

pub fn gen_figure1(n: usize) -> Result<Instance, GenError> {
    Ok(Figure1Params::new(n)?.instance())
}

/// Random digraph on `n` vertices.
///
/// For each pair `u < v`, with probability `neutral_p` both directions are
/// added; otherwise each direction is added independently with probability
/// `directed_p`. Endpoints `s` and `t` are then drawn uniformly.
pub fn gen_random(n: usize, directed_p: f64, neutral_p: f64, seed: u64) -> Result<Instance, GenError> {
    if n == 0 {
        return Err(GenError::NoVertices);
    }
    for p in [directed_p, neutral_p] {
        if !(0.0..=1.0).contains(&p) {
            return Err(GenError::Probability(p));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < neutral_p {
                edges.push((u, v));
                edges.push((v, u));
                continue;
            }
            if rng.random::<f64>() < directed_p {
                edges.push((u, v));
            }
            if rng.random::<f64>() < directed_p {
                edges.push((v, u));
            }
        }
    }
    let s = rng.random_range(0..n as u64) as Vertex;
    let t = rng.random_range(0..n as u64) as Vertex;
    let graph = DirectedGraph::new(n, edges).expect("generated edges are well formed");
    Ok(Instance::new(graph, s, t).expect("endpoints in range"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DegenerateKind {
    /// Heap-shaped tree with alternating edge directions; no cycles.
    Tree,
    /// Path of neutral edges.
    AllNeutral,
    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`; cycle gcd `n`.
    SingleDirectedCycle,
    /// Two neutral paths with no edge between them.
    Disconnected,
}

impl DegenerateKind {
    pub const ALL: [DegenerateKind; 4] = [
        DegenerateKind::Tree,
        DegenerateKind::AllNeutral,
        DegenerateKind::SingleDirectedCycle,
        DegenerateKind::Disconnected,
    ];

    fn min_n(self) -> usize {
        match self {
            // a 2-cycle would be a single neutral pair
            DegenerateKind::SingleDirectedCycle => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for DegenerateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegenerateKind::Tree => "tree",
            DegenerateKind::AllNeutral => "all-neutral",
            DegenerateKind::SingleDirectedCycle => "single-directed-cycle",
            DegenerateKind::Disconnected => "disconnected",
        })
    }
}

impl FromStr for DegenerateKind {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DegenerateKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| GenError::UnknownFamily(s.to_string()))
    }
}

/// Edge-case families. Endpoints are `s = 0` and `t = n - 1`, except the
/// directed cycle, which uses `t = 1`.
pub fn gen_degenerate(kind: DegenerateKind, n: usize) -> Result<Instance, GenError> {
    let min = kind.min_n();
    if n < min {
        return Err(GenError::TooSmall { kind, min, n });
    }
    let neutral_path = |range: std::ops::Range<usize>| {
        range
            .clone()
            .zip(range.skip(1))
            .flat_map(|(a, b)| [(a, b), (b, a)])
            .collect::<Vec<_>>()
    };
    let (edges, t) = match kind {
        DegenerateKind::Tree => {
            let edges = (1..n)
                .map(|i| {
                    let p = (i - 1) / 2;
                    if i % 2 == 1 {
                        (p, i)
                    } else {
                        (i, p)
                    }
                })
                .collect();
            (edges, n - 1)
        }
        DegenerateKind::AllNeutral => (neutral_path(0..n), n - 1),
        DegenerateKind::SingleDirectedCycle => ((0..n).map(|i| (i, (i + 1) % n)).collect(), 1),
        DegenerateKind::Disconnected => {
            let h = n / 2;
            let mut edges = neutral_path(0..h);
            edges.extend(neutral_path(h..n));
            (edges, n - 1)
        }
    };
    let graph = DirectedGraph::new(n, edges).expect("degenerate edges are well formed");
    Ok(Instance::new(graph, 0, t).expect("endpoints in range"))
}

/// A generator together with its arguments.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Figure1 { n: usize },
    Random { n: usize, directed_p: f64, neutral_p: f64, seed: u64 },
    Degenerate { kind: DegenerateKind, n: usize },
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::Figure1 { .. } => "figure1".to_string(),
            Family::Random { .. } => "random".to_string(),
            Family::Degenerate { kind, .. } => kind.to_string(),
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            Family::Figure1 { n } | Family::Random { n, .. } | Family::Degenerate { n, .. } => n,
        }
    }

    pub fn generate(&self) -> Result<Instance, GenError> {
        match *self {
            Family::Figure1 { n } => gen_figure1(n),
            Family::Random { n, directed_p, neutral_p, seed } => {
                gen_random(n, directed_p, neutral_p, seed)
            }
            Family::Degenerate { kind, n } => gen_degenerate(kind, n),
        }
    }

    /// Comment lines recording how an instance was produced.
    pub fn provenance(&self) -> Vec<String> {
        let params = match self {
            Family::Figure1 { n } | Family::Degenerate { n, .. } => format!("n={n}"),
            Family::Random { n, directed_p, neutral_p, .. } => {
                format!("n={n} directed_p={directed_p} neutral_p={neutral_p}")
            }
        };
        let mut lines = vec![format!("generator: {}", self.name()), format!("params: {params}")];
        if let Family::Random { seed, .. } = self {
            lines.push(format!("seed: {seed}"));
        }
        lines
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::serialize_instance;
    use crate::solver::{compute_potentials, cycle_gcd, decide_balanced, NoReason};

    #[test]
    fn figure1_shape() {
        let p = Figure1Params::new(8).unwrap();
        let inst = p.instance();
        assert_eq!(inst.n(), 8);
        assert_eq!(inst.graph().edge_count(), 11);
        assert_eq!((inst.s(), inst.t()), (0, 4));
        let view = inst.view();
        assert_eq!(view.imbalance(&p.straight_path()), Ok(4));
        assert_eq!(view.imbalance(&p.clockwise_lap()), Ok(-1));
        let canonical = p.canonical_walk();
        assert_eq!(canonical.len(), 20);
        assert_eq!(view.imbalance(&canonical), Ok(0));
        assert_eq!(p.looped_walk(12, 8).len(), 84);
        assert_eq!(view.imbalance(&p.looped_walk(12, 8)), Ok(0));
    }

    #[test]
    fn figure1_sizes() {
        for n in (8..=64).step_by(4) {
            let inst = gen_figure1(n).unwrap();
            assert_eq!(inst.n(), n);
            assert_eq!(inst.graph().edge_count(), 3 * n / 2 - 1);
        }
        for n in [0, 4, 6, 10, 13] {
            assert_eq!(gen_figure1(n), Err(GenError::Figure1Size(n)));
        }
    }

    #[test]
    fn figure1_potentials_and_gcd() {
        let inst = gen_figure1(8).unwrap();
        let view = inst.view();
        let p = compute_potentials(&view, inst.s());
        assert_eq!(p.potential(inst.t()), Some(4));
        assert_eq!(cycle_gcd(&view, &p).g, 1);
        assert!(decide_balanced(&inst).is_yes());
    }

    #[test]
    fn random_is_deterministic() {
        let a = gen_random(12, 0.3, 0.2, 7).unwrap();
        let b = gen_random(12, 0.3, 0.2, 7).unwrap();
        assert_eq!(serialize_instance(&a), serialize_instance(&b));
        let c = gen_random(12, 0.3, 0.2, 8).unwrap();
        assert_ne!(serialize_instance(&a), serialize_instance(&c));
    }

    #[test]
    fn random_edge_cases() {
        let one = gen_random(1, 0.5, 0.5, 3).unwrap();
        assert_eq!((one.s(), one.t()), (0, 0));
        assert!(decide_balanced(&one).is_yes());

        for seed in 0..20 {
            let empty = gen_random(6, 0.0, 0.0, seed).unwrap();
            assert_eq!(empty.graph().edge_count(), 0);
            assert_eq!(decide_balanced(&empty).is_yes(), empty.s() == empty.t());
        }
        assert_eq!(gen_random(3, 1.5, 0.0, 0), Err(GenError::Probability(1.5)));
        assert_eq!(gen_random(0, 0.5, 0.0, 0), Err(GenError::NoVertices));
    }

    #[test]
    fn degenerate_families() {
        for n in 2..10 {
            let tree = gen_degenerate(DegenerateKind::Tree, n).unwrap();
            let view = tree.view();
            assert_eq!(view.pair_count(), n - 1);
            assert_eq!(cycle_gcd(&view, &compute_potentials(&view, 0)).g, 0);

            let neutral = gen_degenerate(DegenerateKind::AllNeutral, n).unwrap();
            assert_eq!(decide_balanced(&neutral), crate::solver::Verdict::Yes { k0: 0, g: 0 });

            let split = gen_degenerate(DegenerateKind::Disconnected, n).unwrap();
            assert_eq!(decide_balanced(&split).reason(), Some(NoReason::Disconnected));
        }
        for n in 3..10 {
            let cyc = gen_degenerate(DegenerateKind::SingleDirectedCycle, n).unwrap();
            let v = decide_balanced(&cyc);
            assert_eq!(v.g(), n as u64);
            assert!(!v.is_yes());
        }
        assert!(matches!(
            gen_degenerate(DegenerateKind::SingleDirectedCycle, 2),
            Err(GenError::TooSmall { min: 3, .. })
        ));
        assert_eq!("all-neutral".parse(), Ok(DegenerateKind::AllNeutral));
    }

    #[test]
    fn provenance_lines() {
        let f = Family::Random { n: 8, directed_p: 0.3, neutral_p: 0.2, seed: 42 };
        assert_eq!(
            f.provenance(),
            vec!["generator: random", "params: n=8 directed_p=0.3 neutral_p=0.2", "seed: 42"]
        );
    }
}
