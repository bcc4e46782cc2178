//! Exact integer machinery for `Σ m_i c_i = k` over strictly increasing
//! positive coefficients.
//!
//! [`reduce_coefficients`] rewrites any solution into one whose multipliers
//! are small: every multiplier but the last is replaced by its Euclidean
//! remainder modulo the largest coefficient `c_r`, and the quotients are
//! folded into the last multiplier. The result satisfies
//!
//! * `Σ_{i<r} |m'_i| ≤ (r-1)(c_r - 1)`
//! * `|m'_r| ≤ Σ_{i<r} c_i + ⌈|k| / c_r⌉`
//!
//! All arithmetic is checked; overflow is reported, never wrapped.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiophantineError {
    #[error("coefficients must be non-empty")]
    NoCoefficients,
    #[error("coefficients must be positive and strictly increasing")]
    BadCoefficients,
    #[error("expected {expected} multipliers, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("multipliers do not solve the equation: sum is {actual}, target is {target}")]
    ContractViolation { actual: i128, target: i64 },
    #[error("integer overflow during exact arithmetic")]
    Overflow,
}

/// A solved instance of `Σ m_i c_i = k`, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionProblem {
    c: Vec<i64>,
    k: i64,
    m: Vec<i64>,
}

impl ReductionProblem {
    pub fn new(c: Vec<i64>, k: i64, m: Vec<i64>) -> Result<Self, DiophantineError> {
        if c.is_empty() {
            return Err(DiophantineError::NoCoefficients);
        }
        check_coefficients(&c)?;
        if m.len() != c.len() {
            return Err(DiophantineError::LengthMismatch { expected: c.len(), found: m.len() });
        }
        let actual = weighted_sum_wide(&c, &m);
        if actual != i128::from(k) {
            return Err(DiophantineError::ContractViolation { actual, target: k });
        }
        Ok(Self { c, k, m })
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.c
    }

    pub fn target(&self) -> i64 {
        self.k
    }

    pub fn multipliers(&self) -> &[i64] {
        &self.m
    }
}

/// Reduced multipliers plus the quotient/remainder trail that produced them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducedSolution {
    pub multipliers: Vec<i64>,
    /// `a_i = m_i div c_r` for `i < r`.
    pub quotients: Vec<i64>,
    /// `b_i = m_i mod c_r`, in `[0, c_r)`, for `i < r`.
    pub remainders: Vec<i64>,
}

impl ReducedSolution {
    pub fn l1_norm(&self) -> u128 {
        self.multipliers.iter().map(|m| u128::from(m.unsigned_abs())).sum()
    }
}

fn check_coefficients(c: &[i64]) -> Result<(), DiophantineError> {
    let positive = c.iter().all(|&x| x >= 1);
    let increasing = c.windows(2).all(|w| w[0] < w[1]);
    if positive && increasing {
        Ok(())
    } else {
        Err(DiophantineError::BadCoefficients)
    }
}

fn weighted_sum_wide(c: &[i64], m: &[i64]) -> i128 {
    c.iter().zip(m).map(|(&c, &m)| i128::from(c) * i128::from(m)).sum()
}

pub fn reduce_coefficients(p: &ReductionProblem) -> Result<ReducedSolution, DiophantineError> {
    let r = p.c.len();
    let cr = p.c[r - 1];
    let mut quotients = Vec::with_capacity(r - 1);
    let mut remainders = Vec::with_capacity(r - 1);
    // each |a_i c_i| < 2^63, so the running sum is exact in i128
    let mut last = i128::from(p.m[r - 1]);
    for i in 0..r - 1 {
        let a = p.m[i].div_euclid(cr);
        let b = p.m[i].rem_euclid(cr);
        last += i128::from(a) * i128::from(p.c[i]);
        quotients.push(a);
        remainders.push(b);
    }
    let mut multipliers = remainders.clone();
    multipliers.push(i64::try_from(last).map_err(|_| DiophantineError::Overflow)?);
    debug_assert_eq!(weighted_sum_wide(&p.c, &multipliers), i128::from(p.k));
    Ok(ReducedSolution { multipliers, quotients, remainders })
}

/// The two explicit bounds a reduced solution must satisfy, as `(head, last)`:
/// `Σ_{i<r} |m'_i| ≤ head` and `|m'_r| ≤ last`.
pub fn reduction_bounds(c: &[i64], k: i64) -> (u128, u128) {
    let r = c.len() as u128;
    let cr = c.last().copied().unwrap_or(1).max(1) as u128;
    let head = r.saturating_sub(1) * (cr - 1);
    let lower_sum: u128 = c[..c.len().saturating_sub(1)].iter().map(|&x| x as u128).sum();
    let last = lower_sum + u128::from(k.unsigned_abs()).div_ceil(cr);
    (head, last)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Returns `(x, y, g)` with `a x + b y = g = gcd(a, b)`, for `a, b ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_x, mut x) = (1i64, 0i64);
    let (mut old_y, mut y) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_x, x) = (x, old_x - q * x);
        (old_y, y) = (y, old_y - q * y);
    }
    (old_x, old_y, old_r)
}

/// Finds bounded multipliers with `Σ m'_i c_i = k`, or `None` when no integer
/// solution exists (`gcd(c)` does not divide `k`, or `c` is empty and `k ≠ 0`).
///
/// A Bézout combination for the gcd is grown one coefficient at a time and
/// reduced after every step so intermediate values stay small; the final
/// scaled solution is reduced once more so the returned multipliers meet the
/// bounds of [`reduce_coefficients`].
pub fn solve_bounded(c: &[i64], k: i64) -> Result<Option<Vec<i64>>, DiophantineError> {
    check_coefficients(c)?;
    if k == 0 {
        return Ok(Some(vec![0; c.len()]));
    }
    if c.is_empty() {
        return Ok(None);
    }

    // Invariant: Σ x_j c_j = g over the prefix processed so far.
    let mut x = vec![1i64];
    let mut g = c[0];
    for (i, &ci) in c.iter().enumerate().skip(1) {
        let (a, b, g2) = ext_gcd(g, ci);
        for xj in &mut x {
            *xj = xj.checked_mul(a).ok_or(DiophantineError::Overflow)?;
        }
        x.push(b);
        g = g2;
        let prefix = ReductionProblem::new(c[..=i].to_vec(), g, x)?;
        x = reduce_coefficients(&prefix)?.multipliers;
    }

    if k % g != 0 {
        return Ok(None);
    }
    let scale = k / g;
    let m = x
        .iter()
        .map(|&xj| xj.checked_mul(scale).ok_or(DiophantineError::Overflow))
        .collect::<Result<Vec<_>, _>>()?;
    let problem = ReductionProblem::new(c.to_vec(), k, m)?;
    Ok(Some(reduce_coefficients(&problem)?.multipliers))
}
