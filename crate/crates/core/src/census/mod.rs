//! Exhaustive enumeration of closed triangulations with few tetrahedra.

mod analysis;
pub mod graphs;
mod persist;
mod search;

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use thiserror::Error;

use crate::exec::Execution;
use crate::isosig::isomorphism_signature;
use crate::recognition::{Recognition, SphereRecognizer, DEFAULT_BUDGET};
use crate::triangulation::{FVector, Triangulation, ValidityMode};

pub use analysis::{entropy_curve, estimate_c, histogram, spearman, CEstimate, DegeneracyHistogram, EntropyPoint};
pub use persist::{read_signatures, write_signatures};
use search::{Pruning, SearchSpace};

pub const DEFAULT_MAX_TETRAHEDRA: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ManifoldFilter {
    /// Only triangulations recognized as the 3-sphere.
    Sphere,
    /// Every closed 3-manifold triangulation.
    Any,
}

impl ManifoldFilter {
    pub fn as_str(self) -> &'static str {
        match self {
            ManifoldFilter::Sphere => "s3",
            ManifoldFilter::Any => "any",
        }
    }
}

impl fmt::Display for ManifoldFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ManifoldFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "s3" | "S3" | "sphere" => Ok(ManifoldFilter::Sphere),
            "any" => Ok(ManifoldFilter::Any),
            other => Err(format!("unknown manifold filter {other:?}")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CensusError {
    #[error("tetrahedron count {k} outside 1..={max} (raise the ceiling explicitly for larger censuses)")]
    SizeOutOfRange { k: usize, max: usize },
    #[error("{count} sphere recognitions ran out of budget")]
    BudgetExceeded { count: usize },
    #[error(transparent)]
    Spectrum(#[from] crate::spectrum::SpectrumError),
    #[error("ratio undefined: {reason}")]
    Undefined { reason: String },
}

impl CensusError {
    pub fn name(&self) -> &'static str {
        match self {
            CensusError::SizeOutOfRange { .. } => "SizeOutOfRange",
            CensusError::BudgetExceeded { .. } => "BudgetExceeded",
            CensusError::Spectrum(e) => e.name(),
            CensusError::Undefined { .. } => "Undefined",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusConfig {
    pub k: usize,
    pub mode: ValidityMode,
    pub filter: ManifoldFilter,
    pub exec: Execution,
    pub recognition_budget: usize,
    /// Largest accepted `k`.
    pub max_tetrahedra: usize,
    /// Shuffles the order in which search subtrees are processed; the
    /// output does not depend on it.
    pub shuffle_seed: Option<u64>,
}

impl CensusConfig {
    pub fn new(k: usize, mode: ValidityMode) -> Self {
        Self {
            k,
            mode,
            filter: ManifoldFilter::Sphere,
            exec: Execution::default(),
            recognition_budget: DEFAULT_BUDGET,
            max_tetrahedra: DEFAULT_MAX_TETRAHEDRA,
            shuffle_seed: None,
        }
    }

    pub fn filter(mut self, filter: ManifoldFilter) -> Self {
        self.filter = filter;
        self
    }

    pub fn exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }

    pub fn recognition_budget(mut self, budget: usize) -> Self {
        self.recognition_budget = budget;
        self
    }

    pub fn max_tetrahedra(mut self, max: usize) -> Self {
        self.max_tetrahedra = max;
        self
    }

    pub fn shuffle_seed(mut self, seed: u64) -> Self {
        self.shuffle_seed = Some(seed);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusMember {
    pub signature: String,
    pub f_vector: FVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub k: usize,
    pub mode: ValidityMode,
    pub filter: ManifoldFilter,
    /// Sorted by signature.
    pub members: Vec<CensusMember>,
    /// Signatures whose recognition was inconclusive, sorted.
    pub unknown: Vec<String>,
    /// Valid triangulations rejected by the filter.
    pub rejected: usize,
}

impl Census {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn signatures(&self) -> impl Iterator<Item = &str> {
        self.members.iter().map(|m| m.signature.as_str())
    }

    /// Fails if any recognition was inconclusive.
    pub fn require_complete(&self) -> Result<(), CensusError> {
        if self.unknown.is_empty() {
            Ok(())
        } else {
            Err(CensusError::BudgetExceeded {
                count: self.unknown.len(),
            })
        }
    }
}

enum Outcome {
    Member(CensusMember),
    Unknown(String),
    Rejected,
}

/// One representative per isomorphism class of `k`-tetrahedron
/// triangulations passing the validity mode and the manifold filter.
pub fn enumerate(config: &CensusConfig) -> Result<Census, CensusError> {
    enumerate_with(config, None)
}

/// As [`enumerate`], reusing a recognizer (and its catalog) across calls.
pub fn enumerate_with(config: &CensusConfig, recognizer: Option<&SphereRecognizer>) -> Result<Census, CensusError> {
    let k = config.k;
    if k == 0 || k > config.max_tetrahedra {
        return Err(CensusError::SizeOutOfRange {
            k,
            max: config.max_tetrahedra,
        });
    }
    let strict = config.mode == ValidityMode::Strict;
    let pruning = Pruning {
        orientable: config.filter == ManifoldFilter::Sphere,
        no_loop_edges: strict,
    };
    let spaces: Vec<SearchSpace> = graphs::pairing_graphs(k, !strict)
        .iter()
        .map(|g| SearchSpace::new(g, pruning))
        .collect();
    let mut tasks: Vec<(usize, usize)> = (0..spaces.len()).flat_map(|s| (0..6).map(move |c| (s, c))).collect();
    if let Some(seed) = config.shuffle_seed {
        tasks.shuffle(&mut StdRng::seed_from_u64(seed));
    }
    let fallback;
    let recognizer = match (config.filter, recognizer) {
        (ManifoldFilter::Sphere, None) => {
            fallback = SphereRecognizer::new(config.recognition_budget);
            Some(&fallback)
        }
        (ManifoldFilter::Sphere, Some(r)) => Some(r),
        (ManifoldFilter::Any, _) => None,
    };
    let results = config.exec.map(&tasks, |&(s, first)| {
        let space = &spaces[s];
        let mut out = Vec::new();
        space.search(first, &mut |seq| {
            let Ok(t) = Triangulation::from_gluings(&space.table(seq), config.mode) else { return };
            out.push(classify(&t, recognizer));
        });
        out
    });

    let mut members = Vec::new();
    let mut unknown = Vec::new();
    let mut rejected = 0;
    for outcome in results.into_iter().flatten() {
        match outcome {
            Outcome::Member(m) => members.push(m),
            Outcome::Unknown(sig) => unknown.push(sig),
            Outcome::Rejected => rejected += 1,
        }
    }
    members.sort_by(|a, b| a.signature.cmp(&b.signature));
    members.dedup_by(|a, b| a.signature == b.signature);
    unknown.sort();
    unknown.dedup();
    Ok(Census {
        k,
        mode: config.mode,
        filter: config.filter,
        members,
        unknown,
        rejected,
    })
}

fn classify(t: &Triangulation, recognizer: Option<&SphereRecognizer>) -> Outcome {
    let verdict = recognizer.map_or(Recognition::Yes, |r| r.recognize(t));
    match verdict {
        Recognition::Yes => Outcome::Member(CensusMember {
            signature: isomorphism_signature(t),
            f_vector: t.f_vector(),
        }),
        Recognition::Unknown => Outcome::Unknown(isomorphism_signature(t)),
        Recognition::No(_) => Outcome::Rejected,
    }
}
