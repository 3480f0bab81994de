//! Face pairing graphs: connected 4-regular multigraphs with loops.
//!
//! Node `t` is a tetrahedron; an edge is a pair of glued faces, a loop two
//! faces of the same tetrahedron glued together. Graphs are generated up to
//! isomorphism by keeping the lexicographically smallest adjacency matrix
//! over all node orderings.

use std::collections::BTreeSet;

/// Symmetric multiplicity matrix; `adj[i][i]` counts loops.
pub type Adjacency = Vec<Vec<u8>>;

/// All connected 4-regular multigraphs on `k` nodes, one per isomorphism
/// class, in ascending canonical order.
pub fn pairing_graphs(k: usize, allow_loops: bool) -> Vec<Adjacency> {
    let mut adj = vec![vec![0u8; k]; k];
    let mut degree = vec![0u8; k];
    let mut found = BTreeSet::new();
    let perms = permutations(k);
    fill(0, 0, &mut adj, &mut degree, allow_loops, &perms, &mut found);
    found.into_iter().collect()
}

fn fill(
    i: usize,
    j: usize,
    adj: &mut Adjacency,
    degree: &mut [u8],
    allow_loops: bool,
    perms: &[Vec<usize>],
    found: &mut BTreeSet<Adjacency>,
) {
    let k = adj.len();
    if i == k {
        if connected(adj) {
            found.insert(canonical_form(adj, perms));
        }
        return;
    }
    if j == k {
        if degree[i] == 4 {
            fill(i + 1, i + 1, adj, degree, allow_loops, perms, found);
        }
        return;
    }
    if i == j {
        let max = if allow_loops { (4 - degree[i]) / 2 } else { 0 };
        for m in 0..=max {
            adj[i][i] = m;
            degree[i] += 2 * m;
            fill(i, j + 1, adj, degree, allow_loops, perms, found);
            degree[i] -= 2 * m;
        }
        adj[i][i] = 0;
        return;
    }
    let max = (4 - degree[i]).min(4 - degree[j]);
    // Row i must be complete after the last column.
    let rest: u8 = (j + 1..k).map(|c| 4 - degree[c]).sum();
    let min = (4 - degree[i]).saturating_sub(rest);
    for m in min..=max {
        adj[i][j] = m;
        adj[j][i] = m;
        degree[i] += m;
        degree[j] += m;
        fill(i, j + 1, adj, degree, allow_loops, perms, found);
        degree[i] -= m;
        degree[j] -= m;
    }
    adj[i][j] = 0;
    adj[j][i] = 0;
}

fn connected(adj: &Adjacency) -> bool {
    let k = adj.len();
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..k {
            if adj[i][j] > 0 && !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    heap_permute(k, &mut current, &mut out);
    out.sort();
    out
}

fn heap_permute(n: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..n - 1 {
        heap_permute(n - 1, items, out);
        if n % 2 == 0 {
            items.swap(i, n - 1);
        } else {
            items.swap(0, n - 1);
        }
    }
    heap_permute(n - 1, items, out);
}

/// Smallest relabelled matrix, reading rows in order; larger entries first
/// so that dense rows come early.
fn canonical_form(adj: &Adjacency, perms: &[Vec<usize>]) -> Adjacency {
    let k = adj.len();
    let mut best: Option<Adjacency> = None;
    for p in perms {
        // p[new] = old
        let candidate: Adjacency = (0..k).map(|a| (0..k).map(|b| 4 - adj[p[a]][p[b]]).collect()).collect();
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
    }
    best.expect("at least one permutation")
        .into_iter()
        .map(|row| row.into_iter().map(|x| 4 - x).collect())
        .collect()
}

/// Face slot `4t + f`.
pub type Slot = usize;

/// A concrete matching of the `4K` faces realizing a pairing graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePairing {
    pub k: usize,
    /// Each pair `(a, b)` with `a < b`, sorted by `a`.
    pub pairs: Vec<(Slot, Slot)>,
    /// `partner[s]` is the slot glued to `s`.
    pub partner: Vec<Slot>,
}

impl FacePairing {
    /// Faces are handed out in increasing order: for each tetrahedron the
    /// loops first, then neighbours in increasing index.
    pub fn from_adjacency(adj: &Adjacency) -> Self {
        let k = adj.len();
        let mut next_face = vec![0usize; k];
        let mut partner = vec![usize::MAX; 4 * k];
        for i in 0..k {
            for _ in 0..adj[i][i] {
                let a = 4 * i + next_face[i];
                let b = a + 1;
                next_face[i] += 2;
                partner[a] = b;
                partner[b] = a;
            }
            for j in i + 1..k {
                for _ in 0..adj[i][j] {
                    let a = 4 * i + next_face[i];
                    let b = 4 * j + next_face[j];
                    next_face[i] += 1;
                    next_face[j] += 1;
                    partner[a] = b;
                    partner[b] = a;
                }
            }
        }
        debug_assert!(partner.iter().all(|&p| p != usize::MAX));
        let pairs = (0..4 * k).filter(|&s| s < partner[s]).map(|s| (s, partner[s])).collect();
        Self { k, pairs, partner }
    }

    pub fn pair_of(&self) -> Vec<usize> {
        let mut out = vec![0; 4 * self.k];
        for (i, &(a, b)) in self.pairs.iter().enumerate() {
            out[a] = i;
            out[b] = i;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graph_counts() {
        // One node: two loops. Two nodes: 4 parallel edges, 2 parallel plus a
        // loop on each end.
        assert_eq!(pairing_graphs(1, true).len(), 1);
        assert_eq!(pairing_graphs(2, true).len(), 2);
        assert_eq!(pairing_graphs(1, false).len(), 0);
        assert_eq!(pairing_graphs(2, false).len(), 1);
        // Loopless: K5 is the only simple 4-regular graph on 5 nodes.
        let five = pairing_graphs(5, false);
        assert!(five.iter().any(|g| (0..5).all(|i| (0..5).all(|j| g[i][j] == u8::from(i != j)))));
    }

    #[test]
    fn graphs_are_regular_and_connected() {
        for k in 1..=5 {
            for g in pairing_graphs(k, true) {
                for i in 0..k {
                    let d: u32 = (0..k).map(|j| if i == j { 2 * g[i][i] as u32 } else { g[i][j] as u32 }).sum();
                    assert_eq!(d, 4);
                }
                assert!(connected(&g));
            }
        }
    }

    #[test]
    fn face_pairing_is_an_involution() {
        for g in pairing_graphs(4, true) {
            let fp = FacePairing::from_adjacency(&g);
            assert_eq!(fp.pairs.len(), 8);
            for s in 0..16 {
                assert_eq!(fp.partner[fp.partner[s]], s);
                assert_ne!(fp.partner[s], s);
            }
        }
    }
}
