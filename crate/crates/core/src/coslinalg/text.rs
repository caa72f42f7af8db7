//! Whitespace-separated row-major rationals, e.g. `"0 1 -1 0"` for a 2×2 matrix.

use thiserror::Error;

use crate::matrix::QMatrix;
use crate::rational::{self, ParseRationalError, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("{0} entries do not form a square matrix")]
    NotSquare(usize),
    #[error("empty input")]
    Empty,
}

pub fn parse_covector(text: &str) -> Result<Vec<Q>, TextError> {
    let v = text.split_whitespace().map(rational::parse).collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err(TextError::Empty);
    }
    Ok(v)
}

/// Parses `n²` entries into an `n × n` matrix.
pub fn parse_matrix(text: &str) -> Result<QMatrix, TextError> {
    let v = parse_covector(text)?;
    let n = (v.len() as f64).sqrt().round() as usize;
    if n * n != v.len() {
        return Err(TextError::NotSquare(v.len()));
    }
    let rows: Vec<Vec<Q>> = v.chunks(n).map(<[Q]>::to_vec).collect();
    Ok(QMatrix::from_rows(&rows))
}

pub fn format_covector(v: &[Q]) -> String {
    v.iter().map(rational::format).collect::<Vec<_>>().join(" ")
}

/// One line per row.
pub fn format_matrix(m: &QMatrix) -> String {
    (0..m.rows()).map(|i| format_covector(&m.row(i))).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = parse_matrix("0 1/2\n-1/2 0").unwrap();
        assert_eq!(format_matrix(&m), "0 1/2\n-1/2 0");
        assert_eq!(parse_matrix("1 2 3"), Err(TextError::NotSquare(3)));
        assert!(parse_covector("1 x").is_err());
        assert_eq!(parse_covector("  "), Err(TextError::Empty));
    }
}
