//! First homology over the integers via Smith normal form.

use std::fmt;

use crate::triangulation::{edge_index, Triangulation};

/// A finitely generated abelian group `Z^rank ⊕ Z/t1 ⊕ ... ⊕ Z/tn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub rank: usize,
    /// Invariant factors greater than one, each dividing the next.
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_owned()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Diagonal of the Smith normal form of an integer matrix (nonzero entries,
/// each dividing the next, all positive).
pub fn smith_diagonal(mut m: Vec<Vec<i64>>) -> Vec<u64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut r0 = 0;
    while r0 < rows && r0 < cols {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in r0..cols {
                if m[i][j] != 0 && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(r0, pi);
        for row in m.iter_mut() {
            row.swap(r0, pj);
        }
        loop {
            let p = m[r0][r0];
            let mut dirty = false;
            for i in r0 + 1..rows {
                let q = m[i][r0] / p;
                if q != 0 {
                    for j in r0..cols {
                        m[i][j] -= q * m[r0][j];
                    }
                }
                dirty |= m[i][r0] != 0;
            }
            for j in r0 + 1..cols {
                let q = m[r0][j] / p;
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] -= q * row[r0];
                    }
                }
                dirty |= m[r0][j] != 0;
            }
            if !dirty {
                // Enforce divisibility into the rest of the block.
                let bad = (r0 + 1..rows)
                    .flat_map(|i| (r0 + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % p != 0);
                match bad {
                    Some((i, _)) => {
                        for j in r0..cols {
                            m[r0][j] += m[i][j];
                        }
                    }
                    None => break,
                }
            } else {
                // Move the smallest remaining entry of the pivot row/column
                // into the pivot position and repeat.
                let mut best = (r0, r0);
                for i in r0..rows {
                    if m[i][r0] != 0 && m[i][r0].abs() < m[best.0][best.1].abs() {
                        best = (i, r0);
                    }
                }
                for j in r0..cols {
                    if m[r0][j] != 0 && m[r0][j].abs() < m[best.0][best.1].abs() {
                        best = (r0, j);
                    }
                }
                m.swap(r0, best.0);
                for row in m.iter_mut() {
                    row.swap(r0, best.1);
                }
            }
        }
        diag.push(m[r0][r0].unsigned_abs());
        r0 += 1;
    }
    diag
}

/// Boundary matrix from edges to vertices (`N0 x N1`).
pub fn edge_boundary(t: &Triangulation) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; t.edge_count()]; t.vertex_count()];
    for e in 0..t.edge_count() {
        let (tail, head) = t.edge_ends(e);
        m[head][e] += 1;
        m[tail][e] -= 1;
    }
    m
}

/// Boundary matrix from triangles to edges (`N1 x N2`).
pub fn triangle_boundary(t: &Triangulation) -> Vec<Vec<i64>> {
    let n2 = t.f_vector().n2;
    let mut m = vec![vec![0i64; n2]; t.edge_count()];
    let mut done = vec![false; n2];
    for tet in 0..t.size() {
        for face in 0..4 {
            let tri = t.triangle_of(tet, face);
            if done[tri] {
                continue;
            }
            done[tri] = true;
            let verts: Vec<usize> = (0..4).filter(|&v| v != face).collect();
            // ∂[x y z] = [y z] - [x z] + [x y]
            let terms = [((verts[1], verts[2]), 1), ((verts[0], verts[2]), -1), ((verts[0], verts[1]), 1)];
            for ((a, b), sign) in terms {
                let local = edge_index(a, b);
                let orient = if t.edge_flipped(tet, local) { -1 } else { 1 };
                m[t.edge_of(tet, local)][tri] += sign * orient;
            }
        }
    }
    m
}

fn rank_of(diag: &[u64]) -> usize {
    diag.len()
}

/// `H1(T; Z)`.
pub fn first_homology(t: &Triangulation) -> AbelianGroup {
    let d1 = smith_diagonal(edge_boundary(t));
    let d2 = smith_diagonal(triangle_boundary(t));
    let rank = t.edge_count() - rank_of(&d1) - rank_of(&d2);
    let torsion = d2.into_iter().filter(|&d| d > 1).collect();
    AbelianGroup { rank, torsion }
}
