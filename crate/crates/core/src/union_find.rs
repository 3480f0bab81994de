//! Union-find with edge parities and undo, used by validation and the
//! census search.

/// Disjoint sets over `0..n` where each element carries a parity relative to
/// its root. Merging two elements asserts a parity relation between them.
///
/// No path compression, so every `union` can be undone with [`rollback`].
///
/// [`rollback`]: ParityUnionFind::rollback
#[derive(Clone, Debug)]
pub struct ParityUnionFind {
    parent: Vec<u32>,
    parity: Vec<bool>,
    rank: Vec<u8>,
    history: Vec<Option<(u32, u32, bool)>>,
}

/// Outcome of asserting `parity(a) ^ parity(b) == rel`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Merge {
    Joined,
    AlreadyConsistent,
    Conflict,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            parity: vec![false; n],
            rank: vec![0; n],
            history: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Root of `x` and the parity of `x` relative to it.
    #[inline]
    pub fn find(&self, mut x: usize) -> (usize, bool) {
        let mut p = false;
        while self.parent[x] as usize != x {
            p ^= self.parity[x];
            x = self.parent[x] as usize;
        }
        (x, p)
    }

    #[inline]
    pub fn root(&self, x: usize) -> usize {
        self.find(x).0
    }

    /// Records one history entry, even when nothing changes, so callers can
    /// roll back a fixed number of steps.
    pub fn union(&mut self, a: usize, b: usize, rel: bool) -> Merge {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            self.history.push(None);
            return if pa ^ pb == rel {
                Merge::AlreadyConsistent
            } else {
                Merge::Conflict
            };
        }
        let (child, parent) = if self.rank[ra] < self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        let bumped = self.rank[child] == self.rank[parent];
        self.parent[child] = parent as u32;
        self.parity[child] = pa ^ pb ^ rel;
        if bumped {
            self.rank[parent] += 1;
        }
        self.history.push(Some((child as u32, parent as u32, bumped)));
        Merge::Joined
    }

    pub fn checkpoint(&self) -> usize {
        self.history.len()
    }

    pub fn rollback(&mut self, checkpoint: usize) {
        while self.history.len() > checkpoint {
            if let Some((child, parent, bumped)) = self.history.pop().flatten() {
                self.parent[child as usize] = child;
                self.parity[child as usize] = false;
                if bumped {
                    self.rank[parent as usize] -= 1;
                }
            }
        }
    }

    /// Dense class labels in order of first appearance.
    pub fn class_labels(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.len()];
        let mut out = vec![0; self.len()];
        let mut next = 0;
        for (x, slot) in out.iter_mut().enumerate() {
            let r = self.root(x);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            *slot = label[r];
        }
        (out, next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_conflicts_are_detected() {
        let mut uf = ParityUnionFind::new(4);
        assert_eq!(uf.union(0, 1, true), Merge::Joined);
        assert_eq!(uf.union(1, 2, true), Merge::Joined);
        assert_eq!(uf.union(0, 2, false), Merge::AlreadyConsistent);
        assert_eq!(uf.union(0, 2, true), Merge::Conflict);
    }

    #[test]
    fn rollback_restores_state() {
        let mut uf = ParityUnionFind::new(5);
        uf.union(0, 1, false);
        let cp = uf.checkpoint();
        uf.union(1, 2, true);
        uf.union(3, 4, false);
        uf.union(2, 0, true);
        assert_eq!(uf.root(2), uf.root(0));
        uf.rollback(cp);
        assert_ne!(uf.root(2), uf.root(0));
        assert_eq!(uf.root(1), uf.root(0));
        assert_ne!(uf.root(3), uf.root(4));
        let (labels, n) = uf.class_labels();
        assert_eq!(n, 4);
        assert_eq!(labels, vec![0, 0, 1, 2, 3]);
    }
}
