//! Pachner moves (bistellar flips) on gluing-based triangulations.
//!
//! Each move removes a small set of distinct tetrahedra forming a ball and
//! glues in a different triangulation of the same ball. The rewrite is done
//! generically: the vertices of the ball get abstract labels, old and new
//! tetrahedra are listed as label tuples, and boundary faces are matched by
//! their label sets. Boundary faces glued to each other (possible in
//! generalized triangulations) are handled by the same matching.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Perm4;
use crate::triangulation::{Gluing, GluingTable, Triangulation, ValidityMode, EDGE_VERTICES};
use crate::union_find::ParityUnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    TwoThree,
    ThreeTwo,
    OneFour,
    FourOne,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::TwoThree => "2-3",
            MoveKind::ThreeTwo => "3-2",
            MoveKind::OneFour => "1-4",
            MoveKind::FourOne => "4-1",
        })
    }
}

impl FromStr for MoveKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "2-3" => Ok(MoveKind::TwoThree),
            "3-2" => Ok(MoveKind::ThreeTwo),
            "1-4" => Ok(MoveKind::OneFour),
            "4-1" => Ok(MoveKind::FourOne),
            other => Err(format!("unknown move kind {other:?}")),
        }
    }
}

/// A move together with its location.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PachnerMove {
    /// Replace the two tetrahedra sharing face `face` of `tet` by three.
    TwoThree { tet: usize, face: usize },
    /// Replace the three tetrahedra around a degree-3 edge by two.
    ThreeTwo { edge: usize },
    /// Cone tetrahedron `tet` from a new interior vertex.
    OneFour { tet: usize },
    /// Remove a degree-4 vertex, merging its four tetrahedra.
    FourOne { vertex: usize },
}

impl PachnerMove {
    pub fn kind(&self) -> MoveKind {
        match self {
            PachnerMove::TwoThree { .. } => MoveKind::TwoThree,
            PachnerMove::ThreeTwo { .. } => MoveKind::ThreeTwo,
            PachnerMove::OneFour { .. } => MoveKind::OneFour,
            PachnerMove::FourOne { .. } => MoveKind::FourOne,
        }
    }

    /// Change in the number of tetrahedra.
    pub fn size_change(&self) -> isize {
        match self {
            PachnerMove::TwoThree { .. } => 1,
            PachnerMove::ThreeTwo { .. } => -1,
            PachnerMove::OneFour { .. } => 3,
            PachnerMove::FourOne { .. } => -3,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("{kind} move not applicable: {reason}")]
    MoveNotApplicable { kind: MoveKind, reason: &'static str },
}

fn not_applicable(kind: MoveKind, reason: &'static str) -> MoveError {
    MoveError::MoveNotApplicable { kind, reason }
}

/// Applies a move, returning the new triangulation.
pub fn pachner_move(t: &Triangulation, mv: PachnerMove) -> Result<Triangulation, MoveError> {
    let kind = mv.kind();
    let region = match mv {
        PachnerMove::TwoThree { tet, face } => two_three_region(t, tet, face)?,
        PachnerMove::ThreeTwo { edge } => three_two_region(t, edge)?,
        PachnerMove::OneFour { tet } => {
            if tet >= t.size() {
                return Err(not_applicable(kind, "no such tetrahedron"));
            }
            Region {
                old: vec![tet],
                old_labels: vec![[0, 1, 2, 3]],
                new: (0..4)
                    .map(|i| {
                        let mut l = [0, 1, 2, 3];
                        l[i] = 4;
                        l
                    })
                    .collect(),
            }
        }
        PachnerMove::FourOne { vertex } => four_one_region(t, vertex)?,
    };
    replace(t, &region, kind)
}

/// Every move whose cheap preconditions hold, in a fixed order. Applying
/// one may still fail with [`MoveError::MoveNotApplicable`].
pub fn candidate_moves(t: &Triangulation) -> Vec<PachnerMove> {
    let mut out = Vec::new();
    for v in 0..t.vertex_count() {
        if t.vertex_degree(v) == 4 {
            out.push(PachnerMove::FourOne { vertex: v });
        }
    }
    for e in 0..t.edge_count() {
        if t.edge_degree(e) == 3 {
            out.push(PachnerMove::ThreeTwo { edge: e });
        }
    }
    for tet in 0..t.size() {
        for face in 0..4 {
            let g = t.gluing(tet, face);
            if g.tet != tet && (tet, face) < (g.tet, g.perm.apply(face)) {
                out.push(PachnerMove::TwoThree { tet, face });
            }
        }
    }
    for tet in 0..t.size() {
        out.push(PachnerMove::OneFour { tet });
    }
    out
}

struct Region {
    old: Vec<usize>,
    old_labels: Vec<[u8; 4]>,
    new: Vec<[u8; 4]>,
}

fn face_mask(labels: &[u8; 4], face: usize) -> u32 {
    labels
        .iter()
        .enumerate()
        .filter(|&(v, _)| v != face)
        .fold(0, |m, (_, &l)| m | 1 << l)
}

fn position(labels: &[u8; 4], label: u8) -> usize {
    labels.iter().position(|&l| l == label).expect("label present")
}

fn two_three_region(t: &Triangulation, tet: usize, face: usize) -> Result<Region, MoveError> {
    let kind = MoveKind::TwoThree;
    if tet >= t.size() || face >= 4 {
        return Err(not_applicable(kind, "no such face"));
    }
    let g = t.gluing(tet, face);
    if g.tet == tet {
        return Err(not_applicable(kind, "face joins a tetrahedron to itself"));
    }
    let mut top = [0u8; 4];
    let mut next = 0;
    for (v, slot) in top.iter_mut().enumerate() {
        if v == face {
            *slot = 3;
        } else {
            *slot = next;
            next += 1;
        }
    }
    let mut bottom = [0u8; 4];
    for v in 0..4 {
        bottom[g.perm.apply(v)] = if v == face { 4 } else { top[v] };
    }
    Ok(Region {
        old: vec![tet, g.tet],
        old_labels: vec![top, bottom],
        new: vec![[3, 4, 0, 1], [3, 4, 1, 2], [3, 4, 2, 0]],
    })
}

fn three_two_region(t: &Triangulation, edge: usize) -> Result<Region, MoveError> {
    let kind = MoveKind::ThreeTwo;
    if edge >= t.edge_count() {
        return Err(not_applicable(kind, "no such edge"));
    }
    if t.edge_degree(edge) != 3 {
        return Err(not_applicable(kind, "edge does not have degree 3"));
    }
    let (t0, e0) = t.edge_embeddings(edge)[0];
    let (a, b) = EDGE_VERTICES[e0];
    let others: Vec<usize> = (0..4).filter(|&v| v != a && v != b).collect();
    let (c, d) = (others[0], others[1]);

    let mut l0 = [0u8; 4];
    l0[a] = 0;
    l0[b] = 1;
    l0[c] = 2;
    l0[d] = 3;

    // Across the face opposite c (labels 0, 1, 3) into the second tetrahedron.
    let g1 = t.gluing(t0, c);
    let mut l1 = [0u8; 4];
    for v in 0..4 {
        l1[g1.perm.apply(v)] = if v == c { 4 } else { l0[v] };
    }
    // Across its face opposite label 3 (labels 0, 1, 4) into the third.
    let t1 = g1.tet;
    let f1 = position(&l1, 3);
    let g2 = t.gluing(t1, f1);
    let mut l2 = [0u8; 4];
    for v in 0..4 {
        l2[g2.perm.apply(v)] = if v == f1 { 2 } else { l1[v] };
    }
    let t2 = g2.tet;
    if t0 == t1 || t1 == t2 || t0 == t2 {
        return Err(not_applicable(kind, "tetrahedra around the edge are not distinct"));
    }
    Ok(Region {
        old: vec![t0, t1, t2],
        old_labels: vec![l0, l1, l2],
        new: vec![[0, 2, 3, 4], [1, 2, 3, 4]],
    })
}

fn four_one_region(t: &Triangulation, vertex: usize) -> Result<Region, MoveError> {
    let kind = MoveKind::FourOne;
    if vertex >= t.vertex_count() {
        return Err(not_applicable(kind, "no such vertex"));
    }
    let corners = t.vertex_corners(vertex);
    if corners.len() != 4 {
        return Err(not_applicable(kind, "vertex does not have degree 4"));
    }
    let tets: Vec<usize> = corners.iter().map(|c| c.0).collect();
    for i in 0..4 {
        if tets[i + 1..].contains(&tets[i]) {
            return Err(not_applicable(kind, "tetrahedra around the vertex are not distinct"));
        }
    }
    // Link vertices: corner slots (i, x) with x != v_i, identified across
    // the faces that contain the removed vertex.
    let mut uf = ParityUnionFind::new(16);
    for (i, &(ti, vi)) in corners.iter().enumerate() {
        for f in (0..4).filter(|&f| f != vi) {
            let g = t.gluing(ti, f);
            let j = tets.iter().position(|&x| x == g.tet).expect("link stays inside the star");
            debug_assert_eq!(g.perm.apply(vi), corners[j].1);
            for x in (0..4).filter(|&x| x != vi && x != f) {
                uf.union(4 * i + x, 4 * j + g.perm.apply(x), false);
            }
        }
    }
    let mut class_label: Vec<Option<u8>> = vec![None; 16];
    let mut next = 0u8;
    let mut old_labels = Vec::with_capacity(4);
    for (i, &(_, vi)) in corners.iter().enumerate() {
        let mut labels = [4u8; 4];
        for x in (0..4).filter(|&x| x != vi) {
            let root = uf.root(4 * i + x);
            let label = *class_label[root].get_or_insert_with(|| {
                next += 1;
                next - 1
            });
            labels[x] = label;
        }
        let mut seen = 0u32;
        for x in (0..4).filter(|&x| x != vi) {
            seen |= 1 << labels[x];
        }
        if seen.count_ones() != 3 {
            return Err(not_applicable(kind, "vertex link is not the boundary of a tetrahedron"));
        }
        old_labels.push(labels);
    }
    if next != 4 {
        return Err(not_applicable(kind, "vertex link is not the boundary of a tetrahedron"));
    }
    Ok(Region {
        old: tets,
        old_labels,
        new: vec![[0, 1, 2, 3]],
    })
}

fn replace(t: &Triangulation, region: &Region, kind: MoveKind) -> Result<Triangulation, MoveError> {
    let k = t.size();
    let mut region_index = vec![usize::MAX; k];
    for (i, &tet) in region.old.iter().enumerate() {
        region_index[tet] = i;
    }
    let mut keep_map = vec![usize::MAX; k];
    let mut kept = 0;
    for tet in 0..k {
        if region_index[tet] == usize::MAX {
            keep_map[tet] = kept;
            kept += 1;
        }
    }

    let new_masks: Vec<[u32; 4]> = region
        .new
        .iter()
        .map(|labels| std::array::from_fn(|f| face_mask(labels, f)))
        .collect();
    let find_new = |mask: u32, skip: (usize, usize)| -> Vec<(usize, usize)> {
        let mut hits = Vec::new();
        for (j, masks) in new_masks.iter().enumerate() {
            for (g, &m) in masks.iter().enumerate() {
                if m == mask && (j, g) != skip {
                    hits.push((j, g));
                }
            }
        }
        hits
    };
    let find_old = |mask: u32| -> Vec<(usize, usize)> {
        let mut hits = Vec::new();
        for (i, labels) in region.old_labels.iter().enumerate() {
            for f in 0..4 {
                if face_mask(labels, f) == mask {
                    hits.push((i, f));
                }
            }
        }
        hits
    };

    // Old faces not on the new boundary must be interior: glued inside the
    // region with matching labels.
    for (i, labels) in region.old_labels.iter().enumerate() {
        for f in 0..4 {
            let mask = face_mask(labels, f);
            if !find_new(mask, (usize::MAX, 0)).is_empty() {
                continue;
            }
            let g = t.gluing(region.old[i], f);
            let j = region_index[g.tet];
            if j == usize::MAX {
                return Err(not_applicable(kind, "region is not a closed ball"));
            }
            for x in (0..4).filter(|&x| x != f) {
                if region.old_labels[j][g.perm.apply(x)] != labels[x] {
                    return Err(not_applicable(kind, "region is not a closed ball"));
                }
            }
        }
    }

    let total = kept + region.new.len();
    let mut table: GluingTable = vec![[None; 4]; total];
    for tet in 0..k {
        if keep_map[tet] == usize::MAX {
            continue;
        }
        for f in 0..4 {
            let g = t.gluing(tet, f);
            if keep_map[g.tet] != usize::MAX {
                table[keep_map[tet]][f] = Some(Gluing::new(keep_map[g.tet], g.perm));
            }
        }
    }

    for (j, labels) in region.new.iter().enumerate() {
        for g in 0..4 {
            let mask = new_masks[j][g];
            let internal = find_new(mask, (j, g));
            let mut images = [0u8; 4];
            let target;
            if let Some(&(j2, g2)) = internal.first() {
                for x in 0..4 {
                    images[x] = if x == g { g2 as u8 } else { position(&region.new[j2], labels[x]) as u8 };
                }
                target = kept + j2;
            } else {
                let old = find_old(mask);
                let &[(i, f)] = old.as_slice() else {
                    return Err(not_applicable(kind, "boundary faces do not match"));
                };
                let outer = t.gluing(region.old[i], f);
                let i2 = region_index[outer.tet];
                if i2 == usize::MAX {
                    for x in 0..4 {
                        images[x] = if x == g {
                            outer.perm.apply(f) as u8
                        } else {
                            outer.perm.apply(position(&region.old_labels[i], labels[x])) as u8
                        };
                    }
                    target = keep_map[outer.tet];
                    let perm = Perm4::new(images).expect("bijection");
                    table[target][outer.perm.apply(f)] = Some(Gluing::new(kept + j, perm.inverse()));
                } else {
                    let f2 = outer.perm.apply(f);
                    let mask2 = face_mask(&region.old_labels[i2], f2);
                    let &[(j2, g2)] = find_new(mask2, (usize::MAX, 0)).as_slice() else {
                        return Err(not_applicable(kind, "boundary faces do not match"));
                    };
                    for x in 0..4 {
                        images[x] = if x == g {
                            g2 as u8
                        } else {
                            let y = position(&region.old_labels[i], labels[x]);
                            let z = outer.perm.apply(y);
                            position(&region.new[j2], region.old_labels[i2][z]) as u8
                        };
                    }
                    target = kept + j2;
                }
            }
            let perm = Perm4::new(images).ok_or(not_applicable(kind, "boundary faces do not match"))?;
            table[kept + j][g] = Some(Gluing::new(target, perm));
        }
    }

    Triangulation::from_gluings(&table, ValidityMode::Lenient)
        .map_err(|_| not_applicable(kind, "result is not a valid triangulation"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isosig::isomorphism_signature;
    use crate::triangulation::FVector;

    fn delta(a: FVector, b: FVector) -> [i64; 4] {
        [
            b.n0 as i64 - a.n0 as i64,
            b.n1 as i64 - a.n1 as i64,
            b.n2 as i64 - a.n2 as i64,
            b.n3 as i64 - a.n3 as i64,
        ]
    }

    #[test]
    fn two_three_then_three_two_is_identity() {
        let t = Triangulation::boundary_4_simplex();
        let sig = isomorphism_signature(&t);
        let up = pachner_move(&t, PachnerMove::TwoThree { tet: 0, face: 0 }).unwrap();
        assert_eq!(delta(t.f_vector(), up.f_vector()), [0, 1, 2, 1]);
        // The new edge is the only one of degree 3 that joins the two apexes;
        // at least one 3-2 move must restore the input.
        let restored = (0..up.edge_count())
            .filter(|&e| up.edge_degree(e) == 3)
            .filter_map(|e| pachner_move(&up, PachnerMove::ThreeTwo { edge: e }).ok())
            .any(|down| isomorphism_signature(&down) == sig);
        assert!(restored);
    }

    #[test]
    fn three_two_on_degree_four_edge_fails() {
        let t = Triangulation::boundary_4_simplex();
        let up = pachner_move(&t, PachnerMove::OneFour { tet: 0 }).unwrap();
        let e = (0..up.edge_count()).find(|&e| up.edge_degree(e) == 4).unwrap();
        let err = pachner_move(&up, PachnerMove::ThreeTwo { edge: e }).unwrap_err();
        assert!(matches!(err, MoveError::MoveNotApplicable { kind: MoveKind::ThreeTwo, .. }));
    }

    #[test]
    fn one_four_then_four_one() {
        let t = Triangulation::boundary_4_simplex();
        let up = pachner_move(&t, PachnerMove::OneFour { tet: 2 }).unwrap();
        assert_eq!(up.f_vector(), FVector::new(6, 14, 16, 8));
        assert!(up.is_simplicial());
        let v = (0..up.vertex_count()).find(|&v| up.vertex_degree(v) == 4).unwrap();
        let down = pachner_move(&up, PachnerMove::FourOne { vertex: v }).unwrap();
        assert_eq!(isomorphism_signature(&down), isomorphism_signature(&t));
    }

    #[test]
    fn four_one_on_boundary_4_simplex_gives_double_tetrahedron() {
        let t = Triangulation::boundary_4_simplex();
        let down = pachner_move(&t, PachnerMove::FourOne { vertex: 0 }).unwrap();
        assert_eq!(down.f_vector(), FVector::new(4, 6, 4, 2));
    }

    #[test]
    fn self_glued_face_rejects_two_three() {
        let table: GluingTable = vec![[
            Some(Gluing::new(0, "1023".parse().unwrap())),
            Some(Gluing::new(0, "1023".parse().unwrap())),
            Some(Gluing::new(0, "0132".parse().unwrap())),
            Some(Gluing::new(0, "0132".parse().unwrap())),
        ]];
        let t = Triangulation::from_gluings(&table, ValidityMode::Lenient).unwrap();
        assert!(pachner_move(&t, PachnerMove::TwoThree { tet: 0, face: 0 }).is_err());
    }
}
