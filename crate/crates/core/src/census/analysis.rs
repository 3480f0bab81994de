//! Degeneracy histograms, entropy per volume and level ratios.

use std::collections::BTreeMap;

use crate::census::{Census, CensusError};
use crate::regge::{level_action, tetrahedron_volume};
use crate::spectrum::{adjacent_levels, target_range, SpectrumError};
use crate::triangulation::ValidityMode;
use crate::Rational;

/// Census counts keyed by edge count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegeneracyHistogram {
    pub k: u64,
    pub mode: ValidityMode,
    pub counts: BTreeMap<u64, u64>,
    /// Inconclusive recognitions, kept out of `counts`.
    pub unknown: u64,
}

impl DegeneracyHistogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, n1: u64) -> u64 {
        self.counts.get(&n1).copied().unwrap_or(0)
    }
}

pub fn histogram(census: &Census) -> DegeneracyHistogram {
    let mut counts = BTreeMap::new();
    for m in &census.members {
        *counts.entry(m.f_vector.n1 as u64).or_insert(0) += 1;
    }
    DegeneracyHistogram {
        k: census.k as u64,
        mode: census.mode,
        counts,
        unknown: census.unknown.len() as u64,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyPoint {
    pub k: u64,
    pub n1: u64,
    pub mu: Rational,
    pub action_per_volume: f64,
    pub count: u64,
    pub entropy_per_volume: f64,
}

/// One point per nonempty level, at unit edge length: the normalized
/// action and `ln(count) / (V₃ K)`.
pub fn entropy_curve(histograms: &[DegeneracyHistogram]) -> Vec<EntropyPoint> {
    let v3 = tetrahedron_volume(1.0);
    histograms
        .iter()
        .flat_map(|h| {
            h.counts.iter().filter(|&(_, &c)| c > 0).map(move |(&n1, &count)| EntropyPoint {
                k: h.k,
                n1,
                mu: Rational::new(6 * h.k, n1),
                action_per_volume: level_action(h.k, n1, 1.0),
                count,
                entropy_per_volume: (count as f64).ln() / (v3 * h.k as f64),
            })
        })
        .collect()
}

fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // ties share the mean rank
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            out[idx] = rank;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation with tied ranks averaged; `None` with fewer
/// than two points or when either side has no spread.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let (rx, ry) = (ranks(xs), ranks(ys));
    let n = xs.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// Ratio of census counts at the two edge counts around `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct CEstimate {
    pub k: u64,
    pub x: f64,
    pub n1_plus: u64,
    pub n1_minus: u64,
    pub count_plus: u64,
    pub count_minus: u64,
    pub ratio: f64,
}

/// `count(n1⁺) / count(n1⁻)` where `n1⁺ - 1 = n1⁻` are the adjacent
/// levels around `x` at unit edge length.
pub fn estimate_c(h: &DegeneracyHistogram, x: f64) -> Result<CEstimate, CensusError> {
    let (lo, hi) = target_range(1.0).map_err(SpectrumError::from)?;
    if !(lo < x && x < hi) {
        return Err(SpectrumError::TargetOutOfRange { x, lo, hi }.into());
    }
    let (n1_minus, n1_plus, _) = adjacent_levels(x, h.k, 1.0);
    let (count_plus, count_minus) = (h.count(n1_plus), h.count(n1_minus));
    if count_plus == 0 || count_minus == 0 {
        return Err(CensusError::Undefined {
            reason: format!(
                "K = {}: count {count_plus} at n1 = {n1_plus}, count {count_minus} at n1 = {n1_minus}",
                h.k
            ),
        });
    }
    Ok(CEstimate {
        k: h.k,
        x,
        n1_plus,
        n1_minus,
        count_plus,
        count_minus,
        ratio: count_plus as f64 / count_minus as f64,
    })
}
