//! Signature-per-line census files.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::census::Census;

/// Writes one signature per line (LF endings, trailing newline).
pub fn write_signatures(path: &Path, census: &Census) -> io::Result<()> {
    let mut out = io::BufWriter::new(fs::File::create(path)?);
    for sig in census.signatures() {
        out.write_all(sig.as_bytes())?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// Reads a census file, skipping blank lines.
pub fn read_signatures(path: &Path) -> io::Result<Vec<String>> {
    Ok(fs::read_to_string(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_owned)
        .collect())
}
