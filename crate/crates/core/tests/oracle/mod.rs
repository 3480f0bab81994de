//! Naive enumerators used as references for the census.
//!
//! `lenient_classes` walks every labelled gluing table and counts
//! isomorphism classes by orbit-stabilizer: a class with automorphism
//! group `A` has `K! 24^K / |A|` labelled members. `strict_classes` grows
//! simplicial complexes facet by facet from vertex sets and deduplicates by
//! brute force over vertex relabellings.
//!
//! Both use trivial first homology as the sphere test. No homology sphere
//! other than the 3-sphere can be triangulated with this few tetrahedra.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use deficit::homology::first_homology;
use deficit::perm::{Perm4, ALL_PERMS};
use deficit::triangulation::{edge_index, Gluing, GluingTable, EDGE_VERTICES};
use deficit::union_find::{Merge, ParityUnionFind};
use deficit::{Triangulation, ValidityMode};
use itertools::Itertools;

/// Isomorphism classes keyed by edge count.
pub type Classes = BTreeMap<usize, u64>;

struct Walk {
    k: usize,
    sphere: bool,
    table: GluingTable,
    edges: ParityUnionFind,
    orient: ParityUnionFind,
    aut_sum: BTreeMap<usize, u64>,
    weight: u64,
}

pub fn lenient_classes(k: usize, sphere: bool) -> Classes {
    let mut w = Walk {
        k,
        sphere,
        table: vec![[None; 4]; k],
        edges: ParityUnionFind::new(6 * k),
        orient: ParityUnionFind::new(k),
        aut_sum: BTreeMap::new(),
        weight: 1,
    };
    w.first();
    let labelled_per_free_orbit = (1..=k as u64).product::<u64>() * 24u64.pow(k as u32);
    w.aut_sum
        .into_iter()
        .map(|(n1, s)| {
            assert_eq!(s % labelled_per_free_orbit, 0);
            (n1, s / labelled_per_free_orbit)
        })
        .collect()
}

impl Walk {
    /// Face 0 of tetrahedron 0 is glued first. Relabelling vertices of
    /// tetrahedra 0 and 1 and permuting tetrahedra shows that every gluing to
    /// another tetrahedron contributes as much as `(1, 0, identity)`, and
    /// every self-gluing as much as one onto face 1 with the same map.
    fn first(&mut self) {
        if self.k > 1 {
            self.weight = 24 * (self.k as u64 - 1);
            self.try_glue(0, 0, 1, 0, Perm4::IDENTITY);
        }
        self.weight = 3;
        for p in Perm4::mapping(0, 1) {
            self.try_glue(0, 0, 0, 1, p);
        }
    }

    fn rec(&mut self) {
        let Some(s) = (0..4 * self.k).find(|&s| self.table[s / 4][s % 4].is_none()) else {
            self.leaf();
            return;
        };
        let (t, f) = (s / 4, s % 4);
        for s2 in s + 1..4 * self.k {
            let (u, g) = (s2 / 4, s2 % 4);
            if self.table[u][g].is_some() {
                continue;
            }
            for p in Perm4::mapping(f, g) {
                self.try_glue(t, f, u, g, p);
            }
        }
    }

    fn try_glue(&mut self, t: usize, f: usize, u: usize, g: usize, p: Perm4) {
        let marks = (self.edges.checkpoint(), self.orient.checkpoint());
        self.table[t][f] = Some(Gluing::new(u, p));
        self.table[u][g] = Some(Gluing::new(t, p.inverse()));
        let mut ok = true;
        for &(x, y) in EDGE_VERTICES.iter().filter(|&&(x, y)| x != f && y != f) {
            let (px, py) = (p.apply(x), p.apply(y));
            if self.edges.union(6 * t + edge_index(x, y), 6 * u + edge_index(px, py), px > py) == Merge::Conflict {
                ok = false;
                break;
            }
        }
        // An orientation-reversing identification flips the relative
        // orientation exactly when the permutation is even.
        if ok && self.sphere && self.orient.union(t, u, p.is_even()) == Merge::Conflict {
            ok = false;
        }
        if ok {
            self.rec();
        }
        self.table[t][f] = None;
        self.table[u][g] = None;
        self.edges.rollback(marks.0);
        self.orient.rollback(marks.1);
    }

    fn leaf(&mut self) {
        let Ok(tri) = Triangulation::from_gluings(&self.table, ValidityMode::Lenient) else { return };
        if self.sphere && !first_homology(&tri).is_trivial() {
            return;
        }
        *self.aut_sum.entry(tri.f_vector().n1).or_insert(0) += self.weight * automorphism_count(&tri) as u64;
    }
}

/// Number of combinatorial automorphisms, by trying every image of
/// tetrahedron 0 and propagating across faces.
pub fn automorphism_count(t: &Triangulation) -> usize {
    let k = t.size();
    let mut count = 0;
    for start in 0..k {
        for sigma in ALL_PERMS {
            let mut image: Vec<Option<(usize, Perm4)>> = vec![None; k];
            let mut used = vec![false; k];
            image[0] = Some((start, sigma));
            used[start] = true;
            let mut stack = vec![0];
            let mut ok = true;
            'walk: while let Some(a) = stack.pop() {
                let (ia, sa) = image[a].unwrap();
                for f in 0..4 {
                    let g = t.gluing(a, f);
                    let h = t.gluing(ia, sa.apply(f));
                    // Required: sb ∘ g.perm = h.perm ∘ sa.
                    let sb = h.perm.compose(sa).compose(g.perm.inverse());
                    match image[g.tet] {
                        None => {
                            if used[h.tet] {
                                ok = false;
                                break 'walk;
                            }
                            used[h.tet] = true;
                            image[g.tet] = Some((h.tet, sb));
                            stack.push(g.tet);
                        }
                        Some((ib, existing)) => {
                            if ib != h.tet || existing != sb {
                                ok = false;
                                break 'walk;
                            }
                        }
                    }
                }
            }
            if ok {
                count += 1;
            }
        }
    }
    count
}

/// Strict 3-sphere triangulations with `k` tetrahedra, by vertex sets.
pub fn strict_classes(k: usize) -> Classes {
    let mut seen: BTreeSet<Vec<[usize; 4]>> = BTreeSet::new();
    let mut out = Classes::new();
    let mut facets = vec![[0, 1, 2, 3]];
    let mut tri_count: BTreeMap<[usize; 3], u8> = BTreeMap::new();
    add_triangles(&mut tri_count, [0, 1, 2, 3], 1);
    grow(k, 4, &mut facets, &mut tri_count, &mut |facets, n0| {
        let Ok(t) = Triangulation::from_facets(facets, ValidityMode::Strict) else { return };
        if !first_homology(&t).is_trivial() {
            return;
        }
        let canon = canonical_facets(facets, n0);
        if seen.insert(canon) {
            *out.entry(t.f_vector().n1).or_insert(0) += 1;
        }
    });
    out
}

fn triangles(f: [usize; 4]) -> [[usize; 3]; 4] {
    [[f[1], f[2], f[3]], [f[0], f[2], f[3]], [f[0], f[1], f[3]], [f[0], f[1], f[2]]]
}

fn add_triangles(counts: &mut BTreeMap<[usize; 3], u8>, f: [usize; 4], delta: i8) {
    for tri in triangles(f) {
        let c = counts.entry(tri).or_insert(0);
        *c = (*c as i8 + delta) as u8;
        if *c == 0 {
            counts.remove(&tri);
        }
    }
}

fn grow(
    k: usize,
    n0: usize,
    facets: &mut Vec<[usize; 4]>,
    counts: &mut BTreeMap<[usize; 3], u8>,
    leaf: &mut dyn FnMut(&[[usize; 4]], usize),
) {
    let open = counts.iter().find(|&(_, &c)| c == 1).map(|(&t, _)| t);
    let Some(open) = open else {
        if facets.len() == k {
            leaf(facets, n0);
        }
        return;
    };
    if facets.len() == k {
        return;
    }
    for v in 0..=n0 {
        if open.contains(&v) {
            continue;
        }
        let mut f = [open[0], open[1], open[2], v];
        f.sort();
        if triangles(f).iter().any(|t| counts.get(t).copied().unwrap_or(0) >= 2) {
            continue;
        }
        add_triangles(counts, f, 1);
        facets.push(f);
        grow(k, n0.max(v + 1), facets, counts, leaf);
        facets.pop();
        add_triangles(counts, f, -1);
    }
}

fn canonical_facets(facets: &[[usize; 4]], n0: usize) -> Vec<[usize; 4]> {
    (0..n0)
        .permutations(n0)
        .map(|p| {
            let mut fs: Vec<[usize; 4]> = facets
                .iter()
                .map(|f| {
                    let mut g = f.map(|v| p[v]);
                    g.sort();
                    g
                })
                .collect();
            fs.sort();
            fs
        })
        .min()
        .expect("nonempty")
}
