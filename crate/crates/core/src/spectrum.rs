//! The admissible action spectrum at fixed tetrahedron count.
//!
//! At fixed `K` the normalized action depends only on the edge count `N1`,
//! and it is affine in `N1`: one more edge raises the action by the gap.
//! Walkup's bound on edges against vertices gives an interval of `N1`
//! values that are guaranteed to occur for triangulations of a manifold
//! with Walkup invariant `γ*`.

use std::fmt;

use thiserror::Error;

use crate::exec::Execution;
use crate::regge::{action_gap, level_action, normalized_action, ActionError};
use crate::Rational;

pub const DEFAULT_GAMMA_STAR: i64 = -10;
pub const DEFAULT_SCAN_LIMIT: u64 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("target {x} lies outside the open interval ({lo}, {hi})")]
    TargetOutOfRange { x: f64, lo: f64, hi: f64 },
    #[error("edge counts {n1_lower} and {n1_upper} are not both in the window at K = {k}")]
    NotBracketable { k: u64, n1_lower: u64, n1_upper: u64 },
    #[error("gamma* must be at least -10, got {0}")]
    InvalidGamma(i64),
    #[error("no bracketing K below {0}")]
    ScanLimit(u64),
    #[error(transparent)]
    Action(#[from] ActionError),
}

impl SpectrumError {
    pub fn name(&self) -> &'static str {
        match self {
            SpectrumError::TargetOutOfRange { .. } => "TargetOutOfRange",
            SpectrumError::NotBracketable { .. } => "NotBracketable",
            SpectrumError::InvalidGamma(_) => "InvalidGamma",
            SpectrumError::ScanLimit(_) => "ScanLimit",
            SpectrumError::Action(e) => e.name(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkupParams {
    pub gamma_star: i64,
    /// Free-form tag recorded in output metadata.
    pub manifold: String,
}

impl WalkupParams {
    pub fn new(gamma_star: i64, manifold: impl Into<String>) -> Result<Self, SpectrumError> {
        if gamma_star < -10 {
            return Err(SpectrumError::InvalidGamma(gamma_star));
        }
        Ok(Self {
            gamma_star,
            manifold: manifold.into(),
        })
    }
}

impl Default for WalkupParams {
    fn default() -> Self {
        Self {
            gamma_star: DEFAULT_GAMMA_STAR,
            manifold: "S3 (Walkup)".to_owned(),
        }
    }
}

/// Closed integer interval, empty when `min > max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct N1Window {
    pub min: u64,
    pub max: u64,
}

impl N1Window {
    pub fn is_empty(&self) -> bool {
        self.min > self.max
    }

    pub fn len(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            self.max - self.min + 1
        }
    }

    pub fn contains(&self, n1: u64) -> bool {
        self.min <= n1 && n1 <= self.max
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<u64> {
        self.min..=self.max
    }
}

impl fmt::Display for N1Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("empty")
        } else {
            write!(f, "[{}, {}]", self.min, self.max)
        }
    }
}

/// Real-valued bounds `K + (3 + sqrt(9 + 8K))/2` and `(4K - γ*)/3`.
pub fn n1_bounds_real(k: u64, gamma_star: i64) -> (f64, f64) {
    let k = k as f64;
    (k + (3.0 + (9.0 + 8.0 * k).sqrt()) / 2.0, (4.0 * k - gamma_star as f64) / 3.0)
}

/// Integer edge counts inside the real bounds, computed exactly.
pub fn n1_window(k: u64, gamma_star: i64) -> N1Window {
    let d = 9 + 8 * k;
    let s = d.isqrt();
    // ceil((3 + sqrt d) / 2)
    let lift = if s * s == d { (4 + s) / 2 } else { (3 + s) / 2 + 1 };
    let min = k + lift;
    let upper = (4 * k as i128 - gamma_star as i128).div_euclid(3);
    N1Window {
        min,
        max: upper.max(0) as u64,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumLevel {
    pub k: u64,
    pub n1: u64,
    pub mu: Rational,
    pub action_per_volume: f64,
    pub guaranteed: bool,
}

impl SpectrumLevel {
    pub fn new(k: u64, n1: u64, l: f64, window: &N1Window) -> Self {
        Self {
            k,
            n1,
            mu: Rational::new(6 * k, n1),
            action_per_volume: level_action(k, n1, l),
            guaranteed: window.contains(n1),
        }
    }

    pub fn n0(&self) -> i64 {
        self.n1 as i64 - self.k as i64
    }
}

/// One level per edge count in the window, in ascending action order.
pub fn spectrum_levels(k: u64, l: f64, gamma_star: i64) -> Vec<SpectrumLevel> {
    let window = n1_window(k, gamma_star);
    window.iter().map(|n1| SpectrumLevel::new(k, n1, l, &window)).collect()
}

/// The open action interval `(𝒜₆, 𝒜₄.₅)` at edge length `l`.
pub fn target_range(l: f64) -> Result<(f64, f64), ActionError> {
    Ok((
        normalized_action(Rational::from_integer(6), l)?,
        normalized_action(Rational::new(9, 2), l)?,
    ))
}

fn check_target(x: f64, l: f64) -> Result<(), SpectrumError> {
    let (lo, hi) = target_range(l)?;
    if lo < x && x < hi {
        Ok(())
    } else {
        Err(SpectrumError::TargetOutOfRange { x, lo, hi })
    }
}

/// Edge counts `(n1 - 1, n1)` where `n1` is the smallest count whose level
/// action is at least `x`; the flag reports an exact hit.
pub fn adjacent_levels(x: f64, k: u64, l: f64) -> (u64, u64, bool) {
    let gap = action_gap(k, l);
    let estimate = (x / gap + 6.0 * k as f64 / crate::regge::flat_degree()).ceil().max(1.0) as u64;
    let mut n1 = estimate;
    while n1 > 1 && level_action(k, n1 - 1, l) >= x {
        n1 -= 1;
    }
    while level_action(k, n1, l) < x {
        n1 += 1;
    }
    (n1 - 1, n1, level_action(k, n1, l) == x)
}

/// Adjacent guaranteed levels around `x`: `lower` has the smaller action
/// (and one fewer edge), `upper` the larger.
#[derive(Clone, Debug, PartialEq)]
pub struct Bracket {
    pub lower: SpectrumLevel,
    pub upper: SpectrumLevel,
    /// `upper` sits exactly at `x`.
    pub exact_hit: bool,
}

pub fn bracket(x: f64, k: u64, l: f64, gamma_star: i64) -> Result<Bracket, SpectrumError> {
    check_target(x, l)?;
    bracket_unchecked(x, k, l, gamma_star)
}

fn bracket_unchecked(x: f64, k: u64, l: f64, gamma_star: i64) -> Result<Bracket, SpectrumError> {
    let window = n1_window(k, gamma_star);
    let (lo, hi, exact_hit) = adjacent_levels(x, k, l);
    if !(window.contains(lo) && window.contains(hi)) {
        return Err(SpectrumError::NotBracketable {
            k,
            n1_lower: lo,
            n1_upper: hi,
        });
    }
    Ok(Bracket {
        lower: SpectrumLevel::new(k, lo, l, &window),
        upper: SpectrumLevel::new(k, hi, l, &window),
        exact_hit,
    })
}

/// Smallest `K` at which [`bracket`] succeeds, scanning upward from 1.
pub fn min_bracketing_k(x: f64, l: f64, gamma_star: i64, exec: Execution) -> Result<u64, SpectrumError> {
    min_bracketing_k_within(x, l, gamma_star, exec, DEFAULT_SCAN_LIMIT)
}

pub fn min_bracketing_k_within(
    x: f64,
    l: f64,
    gamma_star: i64,
    exec: Execution,
    limit: u64,
) -> Result<u64, SpectrumError> {
    check_target(x, l)?;
    const CHUNK: u64 = 1 << 16;
    let mut start = 1;
    while start <= limit {
        let end = (start + CHUNK).min(limit + 1);
        let found = exec.find_first(start..end, |k| bracket_unchecked(x, k, l, gamma_star).ok().map(|_| ()));
        if let Some((k, ())) = found {
            return Ok(k);
        }
        start = end;
    }
    Err(SpectrumError::ScanLimit(limit))
}
