//! Isomorphism signatures.
//!
//! Two triangulations are combinatorially isomorphic when one is obtained
//! from the other by renumbering tetrahedra and permuting the vertex labels
//! inside each tetrahedron. For a connected triangulation an isomorphism is
//! fixed by where it sends tetrahedron 0 and how it labels its vertices, so
//! the canonical form is the lexicographically smallest breadth-first
//! relabelling over all `24 K` starting choices.
//!
//! The relabelling visits tetrahedra in discovery order; within a
//! tetrahedron it walks faces `0..4` in the new labels. A newly discovered
//! neighbour is labelled so that the gluing that reached it is the identity.
//! Each face then contributes `24 * target + perm_index` to the sequence.
//!
//! The string form is `K.` followed by the sequence in a 64-letter alphabet,
//! each entry using a fixed number of letters.

use thiserror::Error;

use crate::perm::{Perm4, ALL_PERMS};
use crate::triangulation::{Gluing, GluingTable, Triangulation, TriangulationError, ValidityMode};

const ALPHABET: &[u8; 64] = b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+-";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignatureError {
    #[error("malformed signature {0:?}")]
    Malformed(String),
    #[error(transparent)]
    Invalid(#[from] TriangulationError),
}

fn entry_width(k: usize) -> usize {
    let mut w = 1;
    let mut cap = 64usize;
    while cap < 24 * k {
        cap *= 64;
        w += 1;
    }
    w
}

/// One breadth-first relabelling, compared on the fly against `best`.
/// Returns true if the result is strictly smaller than `best` (and stores it).
fn try_start(t: &Triangulation, start: usize, sigma: Perm4, best: &mut Vec<u32>, scratch: &mut Scratch) -> bool {
    let k = t.size();
    scratch.reset(k);
    scratch.new_index[start] = 0;
    scratch.order.push(start);
    scratch.maps[start] = sigma;

    // false while the prefix still equals best
    let mut smaller = best.is_empty();
    let mut pos = 0;
    let mut i = 0;
    while i < scratch.order.len() {
        let tet = scratch.order[i];
        let map = scratch.maps[tet];
        let inv = map.inverse();
        for new_face in 0..4 {
            let face = inv.apply(new_face);
            let g = t.gluing(tet, face);
            if scratch.new_index[g.tet] == usize::MAX {
                scratch.new_index[g.tet] = scratch.order.len();
                scratch.order.push(g.tet);
                scratch.maps[g.tet] = map.compose(g.perm.inverse());
            }
            let perm = scratch.maps[g.tet].compose(g.perm).compose(inv);
            let entry = (scratch.new_index[g.tet] * 24 + perm.index()) as u32;
            if smaller {
                scratch.seq.push(entry);
            } else {
                match entry.cmp(&best[pos]) {
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Less => {
                        smaller = true;
                        scratch.seq.clear();
                        scratch.seq.extend_from_slice(&best[..pos]);
                        scratch.seq.push(entry);
                    }
                    std::cmp::Ordering::Equal => {}
                }
            }
            pos += 1;
        }
        i += 1;
    }
    if smaller {
        std::mem::swap(best, &mut scratch.seq);
    }
    smaller
}

struct Scratch {
    new_index: Vec<usize>,
    order: Vec<usize>,
    maps: Vec<Perm4>,
    seq: Vec<u32>,
}

impl Scratch {
    fn new(k: usize) -> Self {
        Self {
            new_index: vec![usize::MAX; k],
            order: Vec::with_capacity(k),
            maps: vec![Perm4::IDENTITY; k],
            seq: Vec::with_capacity(4 * k),
        }
    }

    fn reset(&mut self, k: usize) {
        self.new_index.clear();
        self.new_index.resize(k, usize::MAX);
        self.order.clear();
        self.seq.clear();
    }
}

/// Canonical face-by-face sequence (see module docs).
pub fn canonical_sequence(t: &Triangulation) -> Vec<u32> {
    let k = t.size();
    let mut best = Vec::new();
    let mut scratch = Scratch::new(k);
    for start in 0..k {
        for sigma in ALL_PERMS {
            try_start(t, start, sigma, &mut best, &mut scratch);
        }
    }
    best
}

/// Canonical string naming the isomorphism class of `t`.
pub fn isomorphism_signature(t: &Triangulation) -> String {
    encode(t.size(), &canonical_sequence(t))
}

fn encode(k: usize, seq: &[u32]) -> String {
    let w = entry_width(k);
    let mut out = format!("{k}.");
    out.reserve(seq.len() * w);
    for &entry in seq {
        let mut digits = [0u8; 8];
        let mut v = entry as usize;
        for d in digits[..w].iter_mut().rev() {
            *d = ALPHABET[v % 64];
            v /= 64;
        }
        out.push_str(std::str::from_utf8(&digits[..w]).expect("ascii"));
    }
    out
}

/// Rebuilds the canonical representative from a signature.
pub fn from_signature(sig: &str, mode: ValidityMode) -> Result<Triangulation, SignatureError> {
    let malformed = || SignatureError::Malformed(sig.to_owned());
    let (k, body) = sig.split_once('.').ok_or_else(malformed)?;
    let k: usize = k.parse().map_err(|_| malformed())?;
    if k == 0 {
        return Err(malformed());
    }
    let w = entry_width(k);
    let body = body.as_bytes();
    if body.len() != 4 * k * w {
        return Err(malformed());
    }
    let mut table: GluingTable = vec![[None; 4]; k];
    for (i, chunk) in body.chunks(w).enumerate() {
        let mut v = 0usize;
        for &c in chunk {
            let digit = ALPHABET.iter().position(|&a| a == c).ok_or_else(malformed)?;
            v = v * 64 + digit;
        }
        let (target, perm) = (v / 24, v % 24);
        if target >= k {
            return Err(malformed());
        }
        table[i / 4][i % 4] = Some(Gluing::new(target, Perm4::from_index(perm)));
    }
    Ok(Triangulation::from_gluings(&table, mode)?)
}
