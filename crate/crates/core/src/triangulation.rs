//! Gluing-based triangulations of closed 3-manifolds.
//!
//! A triangulation is a set of `K` abstract tetrahedra whose faces are glued
//! in pairs. Face `f` of a tetrahedron is the face opposite vertex `f`, and a
//! gluing of face `f` of tetrahedron `t` carries a permutation `p` with
//! `p(f) = f'`: vertex `v` of `t` (for `v != f`) is identified with vertex
//! `p(v)` of the target tetrahedron.
//!
//! Validation computes the identified skeleton (vertices, edges, triangles)
//! and checks the combinatorial-manifold conditions:
//!
//! 1. every face is glued, and the gluing map is an involution;
//! 2. the tetrahedra form a single connected component;
//! 3. no edge is identified with itself in reverse, so every edge link is a
//!    single cycle;
//! 4. every vertex link is a 2-sphere (closed, connected, `χ = 2`).
//!
//! In [`ValidityMode::Strict`] the identification space must additionally
//! look like a simplicial complex: no loop edges, no two edges with the same
//! endpoints and no two triangles with the same three edges.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::perm::Perm4;
use crate::union_find::{Merge, ParityUnionFind};
use crate::Rational;

/// Local vertex pairs of the six edges of a tetrahedron.
pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Local index of the edge joining vertices `a` and `b` (in either order).
#[inline]
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("no edge joins vertex {a} to itself"),
    }
}

/// Target of a face gluing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

impl Gluing {
    pub fn new(tet: usize, perm: Perm4) -> Self {
        Self { tet, perm }
    }
}

/// Raw, unvalidated gluing table; `None` marks an unglued face.
pub type GluingTable = Vec<[Option<Gluing>; 4]>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValidityMode {
    /// Generalized triangulations: self-gluings and repeated identifications
    /// are allowed as long as the result is a combinatorial manifold.
    #[default]
    Lenient,
    /// The identification space must be a simplicial complex.
    Strict,
}

impl ValidityMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ValidityMode::Lenient => "lenient",
            ValidityMode::Strict => "strict",
        }
    }
}

impl fmt::Display for ValidityMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ValidityMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lenient" => Ok(ValidityMode::Lenient),
            "strict" => Ok(ValidityMode::Strict),
            other => Err(format!("unknown validity mode {other:?} (expected strict|lenient)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifoldDefect {
    Disconnected,
    /// The edge through `(tet, a, b)` is identified with itself in reverse.
    ReversedEdge { tet: usize, a: usize, b: usize },
    /// Link of a vertex is not a 2-sphere.
    VertexLink { vertex: usize, euler_characteristic: i64 },
    /// A triangle is shared by more than two tetrahedra (facet input only).
    BranchedTriangle { vertices: [usize; 3] },
}

impl fmt::Display for ManifoldDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldDefect::Disconnected => write!(f, "tetrahedra do not form one component"),
            ManifoldDefect::ReversedEdge { tet, a, b } => write!(
                f,
                "edge {a}{b} of tetrahedron {tet} is identified with itself in reverse"
            ),
            ManifoldDefect::VertexLink {
                vertex,
                euler_characteristic,
            } => write!(
                f,
                "link of vertex {vertex} has Euler characteristic {euler_characteristic}, not a 2-sphere"
            ),
            ManifoldDefect::BranchedTriangle { vertices } => {
                write!(f, "triangle {vertices:?} lies in more than two tetrahedra")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplicialDefect {
    LoopEdge { edge: usize },
    MultipleEdge { first: usize, second: usize },
    DuplicateTriangle { first: usize, second: usize },
}

impl fmt::Display for SimplicialDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplicialDefect::LoopEdge { edge } => write!(f, "edge {edge} joins a vertex to itself"),
            SimplicialDefect::MultipleEdge { first, second } => {
                write!(f, "edges {first} and {second} share both endpoints")
            }
            SimplicialDefect::DuplicateTriangle { first, second } => {
                write!(f, "triangles {first} and {second} share all three edges")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("a triangulation needs at least one tetrahedron")]
    Empty,
    #[error("face {face} of tetrahedron {tet} is glued to nonexistent tetrahedron {target}")]
    TargetOutOfRange { tet: usize, face: usize, target: usize },
    #[error("face {face} of tetrahedron {tet} is unglued")]
    UnmatchedFace { tet: usize, face: usize },
    #[error("gluing of face {face} of tetrahedron {tet} is not an involution")]
    NonInvolution { tet: usize, face: usize },
    #[error("not a combinatorial manifold: {0}")]
    NotManifold(ManifoldDefect),
    #[error("not a simplicial complex: {0}")]
    NotSimplicial(SimplicialDefect),
}

impl TriangulationError {
    /// Short error class name, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            TriangulationError::Empty => "Empty",
            TriangulationError::TargetOutOfRange { .. } => "TargetOutOfRange",
            TriangulationError::UnmatchedFace { .. } => "UnmatchedFace",
            TriangulationError::NonInvolution { .. } => "NonInvolution",
            TriangulationError::NotManifold(_) => "NotManifold",
            TriangulationError::NotSimplicial(_) => "NotSimplicial",
        }
    }
}

/// Simplex counts `(N0, N1, N2, N3)` after identification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FVector {
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
}

impl FVector {
    pub fn new(n0: usize, n1: usize, n2: usize, n3: usize) -> Self {
        Self { n0, n1, n2, n3 }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n0 as i64 - self.n1 as i64 + self.n2 as i64 - self.n3 as i64
    }

    /// Whether the counts obey the closed-3-manifold relations
    /// `χ = 0`, `N2 = 2 N3` and `N1 = N0 + N3`.
    pub fn is_consistent(&self) -> bool {
        self.euler_characteristic() == 0 && self.n2 == 2 * self.n3 && self.n1 == self.n0 + self.n3
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.n0, self.n1, self.n2, self.n3)
    }
}

/// Edge degrees `deg(e)`, one entry per identified edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDegreeTable {
    degrees: Vec<usize>,
}

impl EdgeDegreeTable {
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn total(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// Exact average degree.
    pub fn mean(&self) -> Rational {
        Rational::new(self.total() as u64, self.degrees.len() as u64)
    }

    pub fn histogram(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut h = std::collections::BTreeMap::new();
        for &d in &self.degrees {
            *h.entry(d).or_insert(0) += 1;
        }
        h
    }
}

/// A validated triangulation of a closed, connected 3-manifold.
///
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct Triangulation {
    gluings: Vec<[Gluing; 4]>,
    tet_vertices: Vec<[u32; 4]>,
    tet_edges: Vec<[u32; 6]>,
    /// Orientation of each local edge (low to high local vertex) relative to
    /// its class orientation.
    tet_edge_flipped: Vec<[bool; 6]>,
    tet_triangles: Vec<[u32; 4]>,
    edge_degrees: Vec<u32>,
    edge_ends: Vec<(u32, u32)>,
    vertex_degrees: Vec<u32>,
    triangle_count: usize,
    simplicial_defect: Option<SimplicialDefect>,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.gluings == other.gluings
    }
}

impl Eq for Triangulation {}

impl Triangulation {
    /// Validates a raw gluing table.
    pub fn from_gluings(table: &[[Option<Gluing>; 4]], mode: ValidityMode) -> Result<Self, TriangulationError> {
        let k = table.len();
        if k == 0 {
            return Err(TriangulationError::Empty);
        }
        let mut gluings = Vec::with_capacity(k);
        for (t, row) in table.iter().enumerate() {
            let mut out = [Gluing::new(0, Perm4::IDENTITY); 4];
            for f in 0..4 {
                let g = row[f].ok_or(TriangulationError::UnmatchedFace { tet: t, face: f })?;
                if g.tet >= k {
                    return Err(TriangulationError::TargetOutOfRange {
                        tet: t,
                        face: f,
                        target: g.tet,
                    });
                }
                out[f] = g;
            }
            gluings.push(out);
        }
        for t in 0..k {
            for f in 0..4 {
                let g = gluings[t][f];
                let back_face = g.perm.apply(f);
                if g.tet == t && back_face == f {
                    return Err(TriangulationError::NonInvolution { tet: t, face: f });
                }
                let back = table[g.tet][back_face];
                if back != Some(Gluing::new(t, g.perm.inverse())) {
                    return Err(TriangulationError::NonInvolution { tet: t, face: f });
                }
            }
        }
        Self::from_checked_gluings(gluings, mode)
    }

    /// Convenience wrapper taking fully-specified gluings.
    pub fn from_complete_gluings(gluings: &[[Gluing; 4]], mode: ValidityMode) -> Result<Self, TriangulationError> {
        let table: GluingTable = gluings.iter().map(|row| row.map(Some)).collect();
        Self::from_gluings(&table, mode)
    }

    fn from_checked_gluings(gluings: Vec<[Gluing; 4]>, mode: ValidityMode) -> Result<Self, TriangulationError> {
        let k = gluings.len();

        // Connectivity of the face pairing graph.
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(t) = stack.pop() {
            for g in &gluings[t] {
                if !seen[g.tet] {
                    seen[g.tet] = true;
                    reached += 1;
                    stack.push(g.tet);
                }
            }
        }
        if reached != k {
            return Err(TriangulationError::NotManifold(ManifoldDefect::Disconnected));
        }

        let mut corners = ParityUnionFind::new(4 * k);
        let mut edges = ParityUnionFind::new(6 * k);
        // Vertex-link vertices: the end of local edge (v, w) at v, indexed
        // (4t + v) * 4 + w.
        let mut ends = ParityUnionFind::new(16 * k);
        for t in 0..k {
            for f in 0..4 {
                let Gluing { tet: u, perm: p } = gluings[t][f];
                if (u, p.apply(f)) < (t, f) {
                    continue;
                }
                for v in (0..4).filter(|&v| v != f) {
                    corners.union(4 * t + v, 4 * u + p.apply(v), false);
                    for w in (0..4).filter(|&w| w != f && w != v) {
                        ends.union((4 * t + v) * 4 + w, (4 * u + p.apply(v)) * 4 + p.apply(w), false);
                    }
                }
                for &(a, b) in EDGE_VERTICES.iter() {
                    if a == f || b == f {
                        continue;
                    }
                    let (pa, pb) = (p.apply(a), p.apply(b));
                    let target = 6 * u + edge_index(pa, pb);
                    if edges.union(6 * t + edge_index(a, b), target, pa > pb) == Merge::Conflict {
                        return Err(TriangulationError::NotManifold(ManifoldDefect::ReversedEdge { tet: t, a, b }));
                    }
                }
            }
        }

        let (corner_labels, n_vertices) = corners.class_labels();
        let (edge_labels, n_edges) = edges.class_labels();

        let tet_vertices: Vec<[u32; 4]> = (0..k)
            .map(|t| std::array::from_fn(|v| corner_labels[4 * t + v] as u32))
            .collect();
        let tet_edges: Vec<[u32; 6]> = (0..k)
            .map(|t| std::array::from_fn(|e| edge_labels[6 * t + e] as u32))
            .collect();
        let tet_edge_flipped: Vec<[bool; 6]> = (0..k)
            .map(|t| std::array::from_fn(|e| edges.find(6 * t + e).1))
            .collect();

        let mut edge_degrees = vec![0u32; n_edges];
        let mut edge_ends = vec![(u32::MAX, u32::MAX); n_edges];
        for t in 0..k {
            for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
                let id = tet_edges[t][e] as usize;
                edge_degrees[id] += 1;
                if edge_ends[id].0 == u32::MAX {
                    let (va, vb) = (tet_vertices[t][a], tet_vertices[t][b]);
                    edge_ends[id] = if tet_edge_flipped[t][e] { (vb, va) } else { (va, vb) };
                }
            }
        }

        // Vertex links. Each link is connected by construction (vertex
        // classes are components of the corner adjacency through faces), so
        // χ = 2 identifies the 2-sphere.
        let mut vertex_degrees = vec![0u32; n_vertices];
        for &label in &corner_labels {
            vertex_degrees[label] += 1;
        }
        let mut link_vertices = vec![0i64; n_vertices];
        let mut counted = vec![false; 16 * k];
        for t in 0..k {
            for v in 0..4 {
                for w in (0..4).filter(|&w| w != v) {
                    let root = ends.root((4 * t + v) * 4 + w);
                    if !counted[root] {
                        counted[root] = true;
                        link_vertices[tet_vertices[t][v] as usize] += 1;
                    }
                }
            }
        }
        for (vertex, (&deg, &lv)) in vertex_degrees.iter().zip(&link_vertices).enumerate() {
            let triangles = deg as i64;
            let link_edges = 3 * triangles / 2;
            let chi = lv - link_edges + triangles;
            if chi != 2 {
                return Err(TriangulationError::NotManifold(ManifoldDefect::VertexLink {
                    vertex,
                    euler_characteristic: chi,
                }));
            }
        }

        let mut tet_triangles = vec![[u32::MAX; 4]; k];
        let mut triangle_count = 0;
        for t in 0..k {
            for f in 0..4 {
                if tet_triangles[t][f] == u32::MAX {
                    let g = gluings[t][f];
                    tet_triangles[t][f] = triangle_count as u32;
                    tet_triangles[g.tet][g.perm.apply(f)] = triangle_count as u32;
                    triangle_count += 1;
                }
            }
        }

        let mut tri = Triangulation {
            gluings,
            tet_vertices,
            tet_edges,
            tet_edge_flipped,
            tet_triangles,
            edge_degrees,
            edge_ends,
            vertex_degrees,
            triangle_count,
            simplicial_defect: None,
        };
        tri.simplicial_defect = tri.find_simplicial_defect();
        if mode == ValidityMode::Strict {
            if let Some(defect) = tri.simplicial_defect.clone() {
                return Err(TriangulationError::NotSimplicial(defect));
            }
        }
        Ok(tri)
    }

    fn find_simplicial_defect(&self) -> Option<SimplicialDefect> {
        for (edge, &(a, b)) in self.edge_ends.iter().enumerate() {
            if a == b {
                return Some(SimplicialDefect::LoopEdge { edge });
            }
        }
        let mut by_ends: HashMap<(u32, u32), usize> = HashMap::new();
        for (edge, &(a, b)) in self.edge_ends.iter().enumerate() {
            let key = (a.min(b), a.max(b));
            if let Some(&first) = by_ends.get(&key) {
                return Some(SimplicialDefect::MultipleEdge { first, second: edge });
            }
            by_ends.insert(key, edge);
        }
        let mut by_edges: HashMap<[u32; 3], usize> = HashMap::new();
        for t in 0..self.size() {
            for f in 0..4 {
                let triangle = self.tet_triangles[t][f] as usize;
                let mut key = [0u32; 3];
                let mut n = 0;
                for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
                    if a != f && b != f {
                        key[n] = self.tet_edges[t][e];
                        n += 1;
                    }
                }
                key.sort_unstable();
                match by_edges.get(&key) {
                    Some(&first) if first != triangle => {
                        return Some(SimplicialDefect::DuplicateTriangle {
                            first,
                            second: triangle,
                        })
                    }
                    Some(_) => {}
                    None => {
                        by_edges.insert(key, triangle);
                    }
                }
            }
        }
        None
    }

    /// Builds a triangulation from tetrahedra given as 4-element vertex sets.
    ///
    /// Each triangle (3-subset) must occur in exactly two tetrahedra; the
    /// two occurrences are glued so that equal vertex labels coincide.
    pub fn from_facets(facets: &[[usize; 4]], mode: ValidityMode) -> Result<Self, TriangulationError> {
        if facets.is_empty() {
            return Err(TriangulationError::Empty);
        }
        let mut occurrences: HashMap<[usize; 3], Vec<(usize, usize)>> = HashMap::new();
        for (t, facet) in facets.iter().enumerate() {
            for f in 0..4 {
                let mut key = [0; 3];
                let mut n = 0;
                for (v, &label) in facet.iter().enumerate() {
                    if v != f {
                        key[n] = label;
                        n += 1;
                    }
                }
                key.sort_unstable();
                occurrences.entry(key).or_default().push((t, f));
            }
        }
        let mut table: GluingTable = vec![[None; 4]; facets.len()];
        let mut keys: Vec<_> = occurrences.into_iter().collect();
        keys.sort();
        for (key, occ) in keys {
            match occ.as_slice() {
                [(t, f)] => return Err(TriangulationError::UnmatchedFace { tet: *t, face: *f }),
                [(t, f), (u, g)] => {
                    let mut images = [0u8; 4];
                    for v in 0..4 {
                        images[v] = if v == *f {
                            *g as u8
                        } else {
                            let label = facets[*t][v];
                            facets[*u].iter().position(|&x| x == label).expect("shared triangle") as u8
                        };
                    }
                    let perm = Perm4::new(images).ok_or(TriangulationError::NonInvolution { tet: *t, face: *f })?;
                    table[*t][*f] = Some(Gluing::new(*u, perm));
                    table[*u][*g] = Some(Gluing::new(*t, perm.inverse()));
                }
                _ => return Err(TriangulationError::NotManifold(ManifoldDefect::BranchedTriangle { vertices: key })),
            }
        }
        Self::from_gluings(&table, mode)
    }

    /// The boundary of the 4-simplex: five tetrahedra on the 4-subsets of
    /// `{0, ..., 4}`.
    pub fn boundary_4_simplex() -> Self {
        let facets: Vec<[usize; 4]> = (0..5)
            .map(|omit| {
                let mut f = [0; 4];
                let mut n = 0;
                for v in (0..5).filter(|&v| v != omit) {
                    f[n] = v;
                    n += 1;
                }
                f
            })
            .collect();
        Self::from_facets(&facets, ValidityMode::Strict).expect("boundary of the 4-simplex is valid")
    }

    /// Number of tetrahedra `K`.
    #[inline]
    pub fn size(&self) -> usize {
        self.gluings.len()
    }

    #[inline]
    pub fn gluing(&self, tet: usize, face: usize) -> Gluing {
        self.gluings[tet][face]
    }

    pub fn gluings(&self) -> &[[Gluing; 4]] {
        &self.gluings
    }

    pub fn to_table(&self) -> GluingTable {
        self.gluings.iter().map(|row| row.map(Some)).collect()
    }

    pub fn f_vector(&self) -> FVector {
        FVector::new(self.vertex_degrees.len(), self.edge_degrees.len(), self.triangle_count, self.size())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_degrees.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_degrees.len()
    }

    #[inline]
    pub fn vertex_of(&self, tet: usize, v: usize) -> usize {
        self.tet_vertices[tet][v] as usize
    }

    #[inline]
    pub fn edge_of(&self, tet: usize, local_edge: usize) -> usize {
        self.tet_edges[tet][local_edge] as usize
    }

    /// Whether local edge `local_edge` of `tet` runs against the orientation
    /// of its identified edge.
    #[inline]
    pub fn edge_flipped(&self, tet: usize, local_edge: usize) -> bool {
        self.tet_edge_flipped[tet][local_edge]
    }

    #[inline]
    pub fn triangle_of(&self, tet: usize, face: usize) -> usize {
        self.tet_triangles[tet][face] as usize
    }

    /// Endpoints (tail, head) of an identified edge.
    pub fn edge_ends(&self, edge: usize) -> (usize, usize) {
        let (a, b) = self.edge_ends[edge];
        (a as usize, b as usize)
    }

    pub fn edge_degree(&self, edge: usize) -> usize {
        self.edge_degrees[edge] as usize
    }

    /// Number of tetrahedron corners at a vertex (triangles in its link).
    pub fn vertex_degree(&self, vertex: usize) -> usize {
        self.vertex_degrees[vertex] as usize
    }

    pub fn edge_degree_table(&self) -> EdgeDegreeTable {
        EdgeDegreeTable {
            degrees: self.edge_degrees.iter().map(|&d| d as usize).collect(),
        }
    }

    /// Mean edge degree `6 N3 / N1` as an exact fraction.
    pub fn mean_edge_degree(&self) -> Rational {
        Rational::new(6 * self.size() as u64, self.edge_count() as u64)
    }

    pub fn is_simplicial(&self) -> bool {
        self.simplicial_defect.is_none()
    }

    pub fn simplicial_defect(&self) -> Option<&SimplicialDefect> {
        self.simplicial_defect.as_ref()
    }

    /// All `(tet, local edge)` embeddings of an identified edge.
    pub fn edge_embeddings(&self, edge: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, edges) in self.tet_edges.iter().enumerate() {
            for (e, &id) in edges.iter().enumerate() {
                if id as usize == edge {
                    out.push((t, e));
                }
            }
        }
        out
    }

    /// All `(tet, local vertex)` corners of an identified vertex.
    pub fn vertex_corners(&self, vertex: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, verts) in self.tet_vertices.iter().enumerate() {
            for (v, &id) in verts.iter().enumerate() {
                if id as usize == vertex {
                    out.push((t, v));
                }
            }
        }
        out
    }

    /// Whether the tetrahedra can be oriented so that every gluing
    /// reverses orientation.
    pub fn is_orientable(&self) -> bool {
        let k = self.size();
        let mut uf = ParityUnionFind::new(k);
        for t in 0..k {
            for f in 0..4 {
                let g = self.gluings[t][f];
                if uf.union(t, g.tet, g.perm.is_even()) == Merge::Conflict {
                    return false;
                }
            }
        }
        true
    }

    /// Relabels tetrahedron `t` as `tet_map[t]` and its local vertex `v` as
    /// `vertex_maps[t](v)`.
    pub fn relabel(&self, tet_map: &[usize], vertex_maps: &[Perm4]) -> Triangulation {
        let k = self.size();
        assert_eq!(tet_map.len(), k);
        assert_eq!(vertex_maps.len(), k);
        let mut table: GluingTable = vec![[None; 4]; k];
        for t in 0..k {
            let sigma = vertex_maps[t];
            for f in 0..4 {
                let g = self.gluings[t][f];
                let perm = vertex_maps[g.tet].compose(g.perm).compose(sigma.inverse());
                table[tet_map[t]][sigma.apply(f)] = Some(Gluing::new(tet_map[g.tet], perm));
            }
        }
        let mode = if self.is_simplicial() {
            ValidityMode::Strict
        } else {
            ValidityMode::Lenient
        };
        Triangulation::from_gluings(&table, mode).expect("relabelling preserves validity")
    }
}
