#![allow(dead_code)]

use bstconn::graph::{ClassifiedView, Vertex, Walk};
use rand::Rng;

/// A uniform random walk of exactly `len` steps from `start`, or shorter if
/// it reaches an isolated vertex (only possible at the start).
pub fn random_walk(view: &ClassifiedView, rng: &mut impl Rng, start: Vertex, len: usize) -> Walk {
    let mut vs = vec![start];
    let mut cur = start;
    for _ in 0..len {
        let deg = view.degree(cur);
        if deg == 0 {
            break;
        }
        let (next, _) = view.neighbors(cur).nth(rng.random_range(0..deg)).unwrap();
        vs.push(next);
        cur = next;
    }
    Walk::new(vs)
}

/// A random closed walk from `at`: a random walk cut off at its first return
/// to `at`, or followed by its own reversal if it never returns.
pub fn random_closed_walk(view: &ClassifiedView, rng: &mut impl Rng, at: Vertex, len: usize) -> Walk {
    let out = random_walk(view, rng, at, len);
    if let Some(pos) = out.vertices().iter().skip(1).position(|&v| v == at) {
        return Walk::new(out.vertices()[..=pos + 1].to_vec());
    }
    out.concat(&out.reversed())
}

/// Pads a balanced walk ending at `t` with balanced noise: some closed walk
/// `X` at `t` repeated `a` times in one direction and `a` times reversed,
/// interleaved with a second closed walk.
pub fn inflate(view: &ClassifiedView, rng: &mut impl Rng, walk: &Walk) -> Walk {
    let t = walk.end().unwrap();
    let mut w = walk.clone();
    for _ in 0..rng.random_range(1..4) {
        let (lx, ly) = (rng.random_range(1..12), rng.random_range(1..12));
        let x = random_closed_walk(view, rng, t, lx);
        let y = random_closed_walk(view, rng, t, ly);
        let a = rng.random_range(1..6);
        for _ in 0..a {
            w.extend_with(&x);
            w.extend_with(&y);
        }
        for _ in 0..a {
            w.extend_with(&x.reversed());
            w.extend_with(&y.reversed());
        }
    }
    w
}
