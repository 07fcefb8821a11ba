//! Plain-text matrix exchange format used by CLI fixtures.
//!
//! First line: `rows cols`. Then `rows` lines, each holding `cols`
//! whitespace-separated `re,im` pairs printed with 17 significant digits,
//! which round-trips f64 exactly.

use super::{Complex64, ComplexMatrix};
use crate::error::{Error, Result};

/// Render a matrix in the text format.
pub fn to_text(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", m.rows(), m.cols()));
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|j| {
                let z = m.get(i, j);
                format!("{:.16e},{:.16e}", z.re, z.im)
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parse a matrix from the text format.
pub fn from_text(s: &str) -> Result<ComplexMatrix> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Shape("empty matrix text".into()))?;
    let mut parts = header.split_whitespace();
    let rows: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Shape(format!("bad matrix header {header:?}")))?;
    let cols: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Shape(format!("bad matrix header {header:?}")))?;
    if parts.next().is_some() {
        return Err(Error::Shape(format!("trailing tokens in matrix header {header:?}")));
    }

    let mut entries = Vec::with_capacity(rows * cols);
    for (i, line) in lines.enumerate() {
        if i >= rows {
            return Err(Error::Shape(format!("matrix text has more than {rows} rows")));
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != cols {
            return Err(Error::Shape(format!(
                "row {i} has {} entries, expected {cols}",
                tokens.len()
            )));
        }
        for tok in tokens {
            let (re_s, im_s) = tok
                .split_once(',')
                .ok_or_else(|| Error::Shape(format!("entry {tok:?} is not a re,im pair")))?;
            let re: f64 = re_s
                .parse()
                .map_err(|_| Error::Shape(format!("bad real part {re_s:?}")))?;
            let im: f64 = im_s
                .parse()
                .map_err(|_| Error::Shape(format!("bad imaginary part {im_s:?}")))?;
            entries.push(Complex64::new(re, im));
        }
    }
    ComplexMatrix::from_rows_vec(rows, cols, entries)
}

/// Read a matrix from a file in the text format.
pub fn read_file(path: &std::path::Path) -> Result<ComplexMatrix> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    from_text(&s)
}

/// Write a matrix to a file in the text format.
pub fn write_file(path: &std::path::Path, m: &ComplexMatrix) -> Result<()> {
    std::fs::write(path, to_text(m))
        .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))
}
