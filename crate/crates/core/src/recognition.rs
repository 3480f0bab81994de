//! Heuristic 3-sphere recognition.
//!
//! A positive answer is a certificate: the triangulation is joined to the
//! boundary of the 4-simplex by Pachner moves. The recognizer keeps a
//! catalog of every triangulation reachable from that boundary without
//! exceeding a size cap, then searches outward from the input (smallest
//! triangulations first) until it lands in the catalog. A negative answer
//! comes only from nontrivial first homology.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet, VecDeque};

use crate::homology::{first_homology, AbelianGroup};
use crate::isosig::canonical_sequence;
use crate::pachner::{candidate_moves, pachner_move, PachnerMove};
use crate::triangulation::Triangulation;

pub const DEFAULT_BUDGET: usize = 100_000;
/// Environment variable read by the command-line tool to override the budget.
pub const BUDGET_ENV: &str = "DEFICIT_MAX_RECOGNITION_BUDGET";
pub const DEFAULT_CATALOG_CAP: usize = 6;
/// How far above the input size the search may climb.
pub const DEFAULT_SLACK: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recognition {
    Yes,
    No(AbelianGroup),
    Unknown,
}

impl Recognition {
    pub fn as_str(&self) -> &'static str {
        match self {
            Recognition::Yes => "yes",
            Recognition::No(_) => "no",
            Recognition::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SphereRecognizer {
    budget: usize,
    slack: usize,
    cap: usize,
    catalog: HashSet<Vec<u32>>,
}

impl SphereRecognizer {
    pub fn new(budget: usize) -> Self {
        Self::with_catalog(budget, DEFAULT_CATALOG_CAP)
    }

    /// Builds the catalog of triangulations with at most `cap` tetrahedra
    /// reachable from the boundary of the 4-simplex inside that size range.
    pub fn with_catalog(budget: usize, cap: usize) -> Self {
        let cap = cap.max(5);
        let start = Triangulation::boundary_4_simplex();
        let mut catalog = HashSet::new();
        catalog.insert(canonical_sequence(&start));
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for child in neighbours(&t, cap) {
                if catalog.insert(canonical_sequence(&child)) {
                    queue.push_back(child);
                }
            }
        }
        Self {
            budget,
            slack: DEFAULT_SLACK,
            cap,
            catalog,
        }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn catalog_cap(&self) -> usize {
        self.cap
    }

    pub fn catalog_len(&self) -> usize {
        self.catalog.len()
    }

    pub fn recognize(&self, t: &Triangulation) -> Recognition {
        let h1 = first_homology(t);
        if !h1.is_trivial() {
            return Recognition::No(h1);
        }
        let seq = canonical_sequence(t);
        if self.catalog.contains(&seq) {
            return Recognition::Yes;
        }
        let limit = (t.size() + self.slack).max(self.cap);
        let mut seen = HashSet::from([seq]);
        let mut heap = BinaryHeap::new();
        let mut nodes = vec![t.clone()];
        heap.push(Reverse((t.size(), 0usize)));
        let mut expanded = 0;
        while let Some(Reverse((_, id))) = heap.pop() {
            if expanded >= self.budget {
                return Recognition::Unknown;
            }
            expanded += 1;
            let children = neighbours(&nodes[id], limit);
            for child in children {
                let seq = canonical_sequence(&child);
                if self.catalog.contains(&seq) {
                    return Recognition::Yes;
                }
                if seen.insert(seq) {
                    heap.push(Reverse((child.size(), nodes.len())));
                    nodes.push(child);
                }
            }
        }
        Recognition::Unknown
    }
}

impl Default for SphereRecognizer {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

fn neighbours(t: &Triangulation, limit: usize) -> Vec<Triangulation> {
    candidate_moves(t)
        .into_iter()
        .filter(|mv| t.size() as isize + mv.size_change() <= limit as isize)
        .filter(|mv| !matches!(mv, PachnerMove::OneFour { .. }) || t.size() + 3 <= limit)
        .filter_map(|mv| pachner_move(t, mv).ok())
        .collect()
}

/// One-shot recognition with a small catalog.
pub fn recognize_s3(t: &Triangulation, budget: usize) -> Recognition {
    SphereRecognizer::with_catalog(budget, 5).recognize(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pachner::PachnerMove;
    use crate::triangulation::{Gluing, GluingTable, ValidityMode};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn boundary_4_simplex_is_a_sphere() {
        assert_eq!(recognize_s3(&Triangulation::boundary_4_simplex(), 10), Recognition::Yes);
    }

    #[test]
    fn lens_space_is_rejected() {
        // One-tetrahedron lens spaces.
        let mut found = false;
        for p in crate::perm::Perm4::mapping(0, 1) {
            for q in crate::perm::Perm4::mapping(2, 3) {
                let table: GluingTable = vec![[
                    Some(Gluing::new(0, p)),
                    Some(Gluing::new(0, p.inverse())),
                    Some(Gluing::new(0, q)),
                    Some(Gluing::new(0, q.inverse())),
                ]];
                let Ok(t) = Triangulation::from_gluings(&table, ValidityMode::Lenient) else { continue };
                if let Recognition::No(h) = recognize_s3(&t, 1000) {
                    assert!(!h.is_trivial());
                    found = true;
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn random_expansions_are_recognized() {
        let recognizer = SphereRecognizer::default();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let mut t = Triangulation::boundary_4_simplex();
            while t.size() < 9 {
                let tet = rng.random_range(0..t.size());
                let face = rng.random_range(0..4);
                if let Ok(next) = pachner_move(&t, PachnerMove::TwoThree { tet, face }) {
                    t = next;
                }
            }
            assert_eq!(recognizer.recognize(&t), Recognition::Yes);
        }
    }
}
