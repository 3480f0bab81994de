//! Plain-text triangulation format.
//!
//! One triangulation per block; blocks are separated by blank lines and `#`
//! starts a comment line.
//!
//! ```text
//! K
//! t:f:pppp t:f:pppp t:f:pppp t:f:pppp      <- tetrahedron 0, faces 0..3
//! ...                                       <- K rows in total
//! ```
//!
//! Entry `t:f:pppp` on row `i`, column `j` glues face `j` of tetrahedron `i`
//! to face `f` of tetrahedron `t`; `pppp` is the image string of the vertex
//! permutation and must satisfy `pppp[j] == f`. A `-` marks an unglued face.

use std::fmt::Write as _;

use thiserror::Error;

use crate::perm::Perm4;
use crate::triangulation::{Gluing, GluingTable, Triangulation, TriangulationError, ValidityMode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] TriangulationError),
}

impl FormatError {
    pub fn name(&self) -> &'static str {
        match self {
            FormatError::Syntax { .. } => "ParseError",
            FormatError::Invalid(e) => e.name(),
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses every block into raw gluing tables without validating them.
pub fn parse_tables(input: &str) -> Result<Vec<GluingTable>, FormatError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#'))
        .peekable();
    let mut tables = Vec::new();
    loop {
        while matches!(lines.peek(), Some((_, l)) if l.is_empty()) {
            lines.next();
        }
        let Some((line_no, header)) = lines.next() else { break };
        let k: usize = header
            .parse()
            .map_err(|_| syntax(line_no, format!("expected tetrahedron count, found {header:?}")))?;
        if k == 0 {
            return Err(TriangulationError::Empty.into());
        }
        let mut table: GluingTable = Vec::with_capacity(k);
        for row in 0..k {
            let Some((line_no, text)) = lines.next().filter(|(_, l)| !l.is_empty()) else {
                return Err(syntax(line_no + row + 1, format!("expected {k} gluing rows")));
            };
            let entries: Vec<&str> = text.split_whitespace().collect();
            if entries.len() != 4 {
                return Err(syntax(line_no, format!("expected 4 entries, found {}", entries.len())));
            }
            let mut out = [None; 4];
            for (face, entry) in entries.iter().enumerate() {
                out[face] = parse_entry(entry, face, line_no)?;
            }
            table.push(out);
        }
        tables.push(table);
    }
    Ok(tables)
}

fn parse_entry(entry: &str, face: usize, line: usize) -> Result<Option<Gluing>, FormatError> {
    if entry == "-" {
        return Ok(None);
    }
    let parts: Vec<&str> = entry.split(':').collect();
    let [tet, target_face, perm] = parts.as_slice() else {
        return Err(syntax(line, format!("malformed entry {entry:?}")));
    };
    let tet: usize = tet
        .parse()
        .map_err(|_| syntax(line, format!("bad tetrahedron index in {entry:?}")))?;
    let target_face: usize = target_face
        .parse()
        .ok()
        .filter(|&f| f < 4)
        .ok_or_else(|| syntax(line, format!("bad face index in {entry:?}")))?;
    let perm: Perm4 = perm.parse().map_err(|e| syntax(line, format!("{e}")))?;
    if perm.apply(face) != target_face {
        return Err(syntax(
            line,
            format!("permutation {perm} sends face {face} to {}, not {target_face}", perm.apply(face)),
        ));
    }
    Ok(Some(Gluing::new(tet, perm)))
}

/// Parses and validates every block.
pub fn parse_triangulations(input: &str, mode: ValidityMode) -> Result<Vec<Triangulation>, FormatError> {
    parse_tables(input)?
        .iter()
        .map(|t| Triangulation::from_gluings(t, mode).map_err(FormatError::from))
        .collect()
}

/// Parses exactly one triangulation.
pub fn parse_triangulation(input: &str, mode: ValidityMode) -> Result<Triangulation, FormatError> {
    let mut all = parse_triangulations(input, mode)?;
    match all.len() {
        1 => Ok(all.remove(0)),
        n => Err(syntax(1, format!("expected one triangulation, found {n}"))),
    }
}

pub fn write_table(table: &[[Option<Gluing>; 4]]) -> String {
    let mut out = format!("{}\n", table.len());
    for row in table {
        let entries: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(face, g)| match g {
                Some(g) => format!("{}:{}:{}", g.tet, g.perm.apply(face), g.perm),
                None => "-".to_owned(),
            })
            .collect();
        let _ = writeln!(out, "{}", entries.join(" "));
    }
    out
}

pub fn write_triangulation(t: &Triangulation) -> String {
    write_table(&t.to_table())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_4_simplex_round_trip() {
        let t = Triangulation::boundary_4_simplex();
        let text = write_triangulation(&t);
        assert!(text.starts_with("5\n"));
        let back = parse_triangulation(&text, ValidityMode::Strict).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn multiple_blocks_and_comments() {
        let t = Triangulation::boundary_4_simplex();
        let text = format!("# two copies\n{}\n\n{}", write_triangulation(&t), write_triangulation(&t));
        assert_eq!(parse_triangulations(&text, ValidityMode::Lenient).unwrap().len(), 2);
    }

    #[test]
    fn inconsistent_face_index_is_a_syntax_error() {
        let err = parse_tables("1\n0:2:1032 0:0:1032 0:3:0132 0:2:0132\n").unwrap_err();
        assert_eq!(err.name(), "ParseError");
    }

    #[test]
    fn unglued_face_reports_validation_error() {
        let err = parse_triangulation("1\n- - - -\n", ValidityMode::Lenient).unwrap_err();
        assert_eq!(err.name(), "UnmatchedFace");
    }

    #[test]
    fn truncated_block() {
        assert!(parse_tables("2\n0:1:1032 0:0:1032 0:3:0132 0:2:0132\n").is_err());
        assert!(parse_tables("x\n").is_err());
    }
}
