//! Backtracking over the gluing permutations of a fixed face pairing.
//!
//! Each pair of faces takes one of six permutations. A partial assignment is
//! abandoned when
//! - an edge would be identified with itself in reverse,
//! - (orientable search) the tetrahedron orientations cannot be made to agree,
//! - (strict search) two vertices of one tetrahedron would be identified, or
//! - some automorphism of the face pairing maps the decided part to
//!   something lexicographically smaller.
//!
//! Two complete assignments on the same face pairing are isomorphic exactly
//! when an automorphism of the pairing carries one to the other, so keeping
//! only the lexicographically smallest member of each orbit yields one
//! representative per isomorphism class.

use crate::census::graphs::{permutations, Adjacency, FacePairing};
use crate::perm::{Perm4, ALL_PERMS};
use crate::triangulation::{edge_index, Gluing, GluingTable, EDGE_VERTICES};
use crate::union_find::{Merge, ParityUnionFind};

/// Action of one automorphism of the face pairing on assignments.
#[derive(Clone, Debug)]
pub(crate) struct PairMap {
    /// `preimage[j]` is the pair sent to pair `j`.
    preimage: Vec<usize>,
    /// `table[i][p]`: stored permutation index of the image of pair `i`
    /// when pair `i` carries permutation index `p`.
    table: Vec<[u8; 24]>,
}

/// Automorphisms of a face pairing other than the identity.
pub(crate) fn automorphisms(adj: &Adjacency, fp: &FacePairing) -> Vec<PairMap> {
    let k = fp.k;
    let pair_of = fp.pair_of();
    let mut out = Vec::new();
    for pi in permutations(k) {
        if (0..k).any(|a| (0..k).any(|b| adj[pi[a]][pi[b]] != adj[a][b])) {
            continue;
        }
        let mut sigma = vec![Perm4::IDENTITY; k];
        extend_sigma(0, &pi, &mut sigma, fp, &pair_of, &mut out);
    }
    out
}

fn extend_sigma(t: usize, pi: &[usize], sigma: &mut Vec<Perm4>, fp: &FacePairing, pair_of: &[usize], out: &mut Vec<PairMap>) {
    let k = fp.k;
    if t == k {
        let identity = pi.iter().enumerate().all(|(i, &p)| i == p) && sigma.iter().all(|&s| s == Perm4::IDENTITY);
        if !identity {
            out.push(pair_map(pi, sigma, fp, pair_of));
        }
        return;
    }
    'outer: for s in ALL_PERMS {
        sigma[t] = s;
        for f in 0..4 {
            let partner = fp.partner[4 * t + f];
            let (u, g) = (partner / 4, partner % 4);
            if u > t {
                continue;
            }
            let image = 4 * pi[t] + s.apply(f);
            let partner_image = 4 * pi[u] + sigma[u].apply(g);
            if fp.partner[image] != partner_image {
                continue 'outer;
            }
        }
        extend_sigma(t + 1, pi, sigma, fp, pair_of, out);
    }
    sigma[t] = Perm4::IDENTITY;
}

fn pair_map(pi: &[usize], sigma: &[Perm4], fp: &FacePairing, pair_of: &[usize]) -> PairMap {
    let n = fp.pairs.len();
    let mut preimage = vec![0; n];
    let mut table = vec![[0u8; 24]; n];
    for (i, &(a, b)) in fp.pairs.iter().enumerate() {
        let (t, u) = (a / 4, b / 4);
        let image_a = 4 * pi[t] + sigma[t].apply(a % 4);
        let image_b = 4 * pi[u] + sigma[u].apply(b % 4);
        let j = pair_of[image_a];
        preimage[j] = i;
        for (idx, p) in ALL_PERMS.iter().enumerate() {
            let q = sigma[u].compose(*p).compose(sigma[t].inverse());
            let stored = if image_a < image_b { q } else { q.inverse() };
            table[i][idx] = stored.index() as u8;
        }
    }
    PairMap { preimage, table }
}

/// Which pruning rules apply.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Pruning {
    pub orientable: bool,
    pub no_loop_edges: bool,
}

pub(crate) struct SearchSpace {
    pub pairing: FacePairing,
    auts: Vec<PairMap>,
    /// Candidate permutation indices per pair, ascending.
    choices: Vec<[u8; 6]>,
    pruning: Pruning,
}

impl SearchSpace {
    pub fn new(adj: &Adjacency, pruning: Pruning) -> Self {
        let pairing = FacePairing::from_adjacency(adj);
        let auts = automorphisms(adj, &pairing);
        let choices = pairing
            .pairs
            .iter()
            .map(|&(a, b)| {
                let mut c = [0u8; 6];
                for (slot, p) in c.iter_mut().zip(Perm4::mapping(a % 4, b % 4)) {
                    *slot = p.index() as u8;
                }
                c
            })
            .collect();
        Self {
            pairing,
            auts,
            choices,
            pruning,
        }
    }

    pub fn pair_count(&self) -> usize {
        self.pairing.pairs.len()
    }

    /// Gluing table for a complete assignment of permutation indices.
    pub fn table(&self, seq: &[u8]) -> GluingTable {
        let mut table: GluingTable = vec![[None; 4]; self.pairing.k];
        for (&(a, b), &p) in self.pairing.pairs.iter().zip(seq) {
            let p = Perm4::from_index(p as usize);
            table[a / 4][a % 4] = Some(Gluing::new(b / 4, p));
            table[b / 4][b % 4] = Some(Gluing::new(a / 4, p.inverse()));
        }
        table
    }

    /// Visits every surviving complete assignment whose first pair uses
    /// choice `first` (an index into the six candidates).
    pub fn search(&self, first: usize, visit: &mut dyn FnMut(&[u8])) {
        let k = self.pairing.k;
        let mut state = State {
            edges: ParityUnionFind::new(6 * k),
            orient: ParityUnionFind::new(k),
            corners: ParityUnionFind::new(4 * k),
            seq: Vec::with_capacity(self.pair_count()),
        };
        let p = self.choices[0][first];
        if self.push(&mut state, p) {
            self.descend(&mut state, visit);
        }
    }

    fn descend(&self, state: &mut State, visit: &mut dyn FnMut(&[u8])) {
        let d = state.seq.len();
        if d == self.pair_count() {
            visit(&state.seq);
            return;
        }
        let marks = state.marks();
        for &p in &self.choices[d] {
            if self.push(state, p) {
                self.descend(state, visit);
            }
            state.rollback(marks);
        }
    }

    /// Records the permutation for the next pair; false if the partial
    /// assignment can be discarded.
    fn push(&self, state: &mut State, p_index: u8) -> bool {
        let d = state.seq.len();
        let (a, b) = self.pairing.pairs[d];
        let (t, f, u) = (a / 4, a % 4, b / 4);
        let p = Perm4::from_index(p_index as usize);
        state.seq.push(p_index);

        for (e, &(x, y)) in EDGE_VERTICES.iter().enumerate() {
            if x == f || y == f {
                continue;
            }
            let (px, py) = (p.apply(x), p.apply(y));
            if state.edges.union(6 * t + e, 6 * u + edge_index(px, py), px > py) == Merge::Conflict {
                return false;
            }
        }
        if self.pruning.orientable && state.orient.union(t, u, p.is_even()) == Merge::Conflict {
            return false;
        }
        if self.pruning.no_loop_edges {
            for x in (0..4).filter(|&x| x != f) {
                state.corners.union(4 * t + x, 4 * u + p.apply(x), false);
            }
            for tet in 0..self.pairing.k {
                let roots: [usize; 4] = std::array::from_fn(|v| state.corners.root(4 * tet + v));
                if (0..4).any(|i| (i + 1..4).any(|j| roots[i] == roots[j])) {
                    return false;
                }
            }
        }
        self.is_partially_minimal(&state.seq)
    }

    fn is_partially_minimal(&self, seq: &[u8]) -> bool {
        let d = seq.len();
        'auts: for g in &self.auts {
            for (j, &ours) in seq.iter().enumerate() {
                let i = g.preimage[j];
                if i >= d {
                    continue 'auts;
                }
                let image = g.table[i][seq[i] as usize];
                match image.cmp(&ours) {
                    std::cmp::Ordering::Less => return false,
                    std::cmp::Ordering::Greater => continue 'auts,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }
}

struct State {
    edges: ParityUnionFind,
    orient: ParityUnionFind,
    corners: ParityUnionFind,
    seq: Vec<u8>,
}

impl State {
    fn marks(&self) -> (usize, usize, usize, usize) {
        (
            self.edges.checkpoint(),
            self.orient.checkpoint(),
            self.corners.checkpoint(),
            self.seq.len(),
        )
    }

    fn rollback(&mut self, marks: (usize, usize, usize, usize)) {
        self.edges.rollback(marks.0);
        self.orient.rollback(marks.1);
        self.corners.rollback(marks.2);
        self.seq.truncate(marks.3);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::graphs::pairing_graphs;

    #[test]
    fn one_tetrahedron_automorphisms() {
        let g = &pairing_graphs(1, true)[0];
        let fp = FacePairing::from_adjacency(g);
        // Permutations of {0,1,2,3} preserving {{0,1},{2,3}}: 8, minus identity.
        assert_eq!(automorphisms(g, &fp).len(), 7);
    }

    #[test]
    fn automorphism_images_are_valid_assignments() {
        for g in pairing_graphs(3, true) {
            let space = SearchSpace::new(&g, Pruning { orientable: false, no_loop_edges: false });
            for aut in &space.auts {
                for (i, &(a, b)) in space.pairing.pairs.iter().enumerate() {
                    for &p in &space.choices[i] {
                        let q = aut.table[i][p as usize];
                        let j = aut.preimage.iter().position(|&x| x == i).unwrap();
                        let (c, d) = space.pairing.pairs[j];
                        assert_eq!(Perm4::from_index(q as usize).apply(c % 4), d % 4, "{a} {b}");
                    }
                }
            }
        }
    }
}
