//! Permutations of the four vertex labels of a tetrahedron.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A permutation of `{0, 1, 2, 3}`, stored as its image array.
///
/// `Perm4([1, 0, 3, 2])` sends 0 to 1, 1 to 0, 2 to 3 and 3 to 2. Since face
/// `f` of a tetrahedron is the face opposite vertex `f`, the same permutation
/// acts on faces and vertices alike.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid permutation string {0:?}: expected four distinct digits 0-3")]
pub struct ParsePermError(pub String);

const fn build_all() -> [Perm4; 24] {
    let mut out = [Perm4([0, 1, 2, 3]); 24];
    let mut n = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                if a != b && b != c && a != c {
                    let d = 6 - a - b - c;
                    out[n] = Perm4([a as u8, b as u8, c as u8, d as u8]);
                    n += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
}

/// All 24 permutations in lexicographic order of their image strings.
pub const ALL_PERMS: [Perm4; 24] = build_all();

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Builds a permutation from its images, returning `None` if they are not
    /// a rearrangement of `0..4`.
    pub fn new(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm4(images))
    }

    #[inline]
    pub fn images(self) -> [u8; 4] {
        self.0
    }

    #[inline]
    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    #[inline]
    pub fn inverse(self) -> Self {
        let mut inv = [0u8; 4];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    #[inline]
    pub fn compose(self, other: Perm4) -> Self {
        Perm4([
            self.0[other.0[0] as usize],
            self.0[other.0[1] as usize],
            self.0[other.0[2] as usize],
            self.0[other.0[3] as usize],
        ])
    }

    /// Position of this permutation in [`ALL_PERMS`].
    #[inline]
    pub fn index(self) -> usize {
        // Lehmer code
        let p = self.0;
        let mut idx = 0;
        for i in 0..4 {
            let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
            idx = idx * (4 - i) + smaller;
        }
        idx
    }

    #[inline]
    pub fn from_index(index: usize) -> Self {
        ALL_PERMS[index]
    }

    pub fn is_even(self) -> bool {
        let p = self.0;
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// The permutation swapping `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Self {
        let mut p = [0, 1, 2, 3];
        p.swap(a, b);
        Perm4(p)
    }

    /// The six permutations sending `from` to `to`, in lexicographic order.
    pub fn mapping(from: usize, to: usize) -> impl Iterator<Item = Perm4> {
        ALL_PERMS.into_iter().filter(move |p| p.apply(from) == to)
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm4({self})")
    }
}

impl FromStr for Perm4 {
    type Err = ParsePermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 {
            return Err(ParsePermError(s.to_owned()));
        }
        let mut images = [0u8; 4];
        for (slot, &b) in images.iter_mut().zip(bytes) {
            if !(b'0'..=b'3').contains(&b) {
                return Err(ParsePermError(s.to_owned()));
            }
            *slot = b - b'0';
        }
        Perm4::new(images).ok_or_else(|| ParsePermError(s.to_owned()))
    }
}
