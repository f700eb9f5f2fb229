//! Delimited-text matrix ingestion and output. Rows are samples, columns
//! are features; a single leading header row is auto-detected and skipped.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::Scalar;

/// Supported on-disk formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    Csv,
    Tsv,
}

impl MatrixFormat {
    pub fn delimiter(&self) -> char {
        match self {
            MatrixFormat::Csv => ',',
            MatrixFormat::Tsv => '\t',
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "csv" => Ok(MatrixFormat::Csv),
            "tsv" => Ok(MatrixFormat::Tsv),
            other => Err(Error::InvalidArgument(format!(
                "unknown format '{}', expected csv or tsv",
                other
            ))),
        }
    }
}

/// Read a rectangular numeric grid. Errors carry 1-based line and column
/// positions. An initial row that fails to parse while the next row
/// succeeds is treated as a header.
pub fn load_matrix<S: Scalar>(path: &Path, format: MatrixFormat) -> Result<DenseMatrix<S>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_matrix(&text, format)
}

/// Parse from an in-memory string; same contract as `load_matrix`.
pub fn parse_matrix<S: Scalar>(text: &str, format: MatrixFormat) -> Result<DenseMatrix<S>> {
    let delim = format.delimiter();
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    if lines.is_empty() {
        return Err(Error::Parse {
            line: 0,
            col: 0,
            msg: "empty input".into(),
        });
    }

    // A first line that fails to parse is a header, provided data follows.
    let rows: Vec<(usize, Vec<S>)> = match parse_row::<S>(lines[0].1, delim, lines[0].0) {
        Ok(first) => {
            let mut v = vec![(lines[0].0, first)];
            for &(lineno, line) in &lines[1..] {
                v.push((lineno, parse_row(line, delim, lineno)?));
            }
            v
        }
        Err(e) => {
            if lines.len() == 1 {
                return Err(e);
            }
            let mut v = Vec::new();
            for &(lineno, line) in &lines[1..] {
                v.push((lineno, parse_row(line, delim, lineno)?));
            }
            v
        }
    };

    let width = rows[0].1.len();
    for (lineno, row) in &rows {
        if row.len() != width {
            return Err(Error::Parse {
                line: *lineno,
                col: row.len(),
                msg: format!("ragged row: expected {} fields, found {}", width, row.len()),
            });
        }
    }

    let n = rows.len();
    let data: Vec<S> = rows.into_iter().flat_map(|(_, r)| r).collect();
    DenseMatrix::new(n, width, data)
}

fn parse_row<S: Scalar>(line: &str, delim: char, lineno: usize) -> Result<Vec<S>> {
    line.split(delim)
        .enumerate()
        .map(|(col, field)| {
            let trimmed = field.trim();
            trimmed
                .parse::<f64>()
                .ok()
                .and_then(S::from_f64)
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse {
                    line: lineno,
                    col: col + 1,
                    msg: format!("non-numeric cell '{}'", trimmed),
                })
        })
        .collect()
}

/// Write with full round-trip precision, one sample per line.
pub fn save_matrix<S: Scalar>(
    m: &DenseMatrix<S>,
    path: &Path,
    format: MatrixFormat,
) -> Result<()> {
    let text = format_matrix(m, format);
    fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })
}

pub fn format_matrix<S: Scalar>(m: &DenseMatrix<S>, format: MatrixFormat) -> String {
    let delim = format.delimiter();
    let mut out = String::new();
    for i in 0..m.rows() {
        let fields: Vec<String> = m.row(i).iter().map(|v| format!("{:?}", v)).collect();
        out.push_str(&fields.join(&delim.to_string()));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::deterministic_matrix;
    use crate::Matrix64;

    #[test]
    fn parses_two_by_two() {
        let m: Matrix64 = parse_matrix("1,2\n3,4\n", MatrixFormat::Csv).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.data(), &[1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn header_row_skipped() {
        let m: Matrix64 = parse_matrix("f1,f2\n1,2\n3,4\n", MatrixFormat::Csv).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.data(), &[1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn tsv_and_whitespace_tolerated() {
        let m: Matrix64 = parse_matrix("1\t 2\n-3.5\t4e2\n", MatrixFormat::Tsv).unwrap();
        assert_eq!(m.data(), &[1.0, 2.0, -3.5, 400.0]);
    }

    #[test]
    fn ragged_row_names_line() {
        match parse_matrix::<f64>("1,2\n3\n", MatrixFormat::Csv) {
            Err(Error::Parse { line, msg, .. }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("ragged"));
            }
            other => panic!("expected ragged-row error, got {:?}", other),
        }
    }

    #[test]
    fn non_numeric_cell_position() {
        match parse_matrix::<f64>("1,2\n3,oops\n", MatrixFormat::Csv) {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!((line, col), (2, 2));
            }
            other => panic!("expected parse error, got {:?}", other),
        }
    }

    #[test]
    fn empty_input_rejected() {
        assert!(parse_matrix::<f64>("", MatrixFormat::Csv).is_err());
        assert!(parse_matrix::<f64>("\n\n", MatrixFormat::Csv).is_err());
    }

    #[test]
    fn bare_header_rejected() {
        assert!(parse_matrix::<f64>("f1,f2\n", MatrixFormat::Csv).is_err());
    }

    #[test]
    fn round_trip_preserves_values() {
        let m = deterministic_matrix(5, 3);
        let text = format_matrix(&m, MatrixFormat::Csv);
        let back: Matrix64 = parse_matrix(&text, MatrixFormat::Csv).unwrap();
        assert_eq!(m.data(), back.data());
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join("kmeans-dimred-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("m.tsv");
        let m = deterministic_matrix(4, 2);
        save_matrix(&m, &path, MatrixFormat::Tsv).unwrap();
        let back: Matrix64 = load_matrix(&path, MatrixFormat::Tsv).unwrap();
        assert_eq!(m.data(), back.data());
    }

    #[test]
    fn missing_file_error_names_path() {
        match load_matrix::<f64>(Path::new("/nonexistent/x.csv"), MatrixFormat::Csv) {
            Err(Error::Io { path, .. }) => assert!(path.contains("x.csv")),
            other => panic!("expected io error, got {:?}", other),
        }
    }
}
