//! Plain-text matrix format.
//!
//! ```text
//! # comment lines and blank lines are ignored
//! 2 3
//! 1 -2 0
//! 4 5 -6
//! ```
//!
//! The first significant line holds `<rows> <cols>`; each following
//! significant line holds one row of decimal integers with an optional
//! leading `-`.

use num_bigint::BigInt;

use super::{IntMatrix, LinalgError};

fn parse_error(line: usize, message: impl Into<String>) -> LinalgError {
    LinalgError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_dim(token: &str, line: usize) -> Result<usize, LinalgError> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(line, format!("invalid dimension {token:?}")));
    }
    let dim: usize = token
        .parse()
        .map_err(|_| parse_error(line, format!("dimension {token:?} out of range")))?;
    if dim == 0 {
        return Err(parse_error(line, "dimensions must be positive"));
    }
    Ok(dim)
}

fn parse_entry(token: &str, line: usize) -> Result<BigInt, LinalgError> {
    let digits = token.strip_prefix('-').unwrap_or(token);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(line, format!("invalid integer {token:?}")));
    }
    token
        .parse()
        .map_err(|_| parse_error(line, format!("invalid integer {token:?}")))
}

pub fn parse_matrix(input: &str) -> Result<IntMatrix, LinalgError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_error(0, "missing \"<rows> <cols>\" header"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [rows, cols] = dims.as_slice() else {
        return Err(parse_error(header_line, "header must be \"<rows> <cols>\""));
    };
    let rows = parse_dim(rows, header_line)?;
    let cols = parse_dim(cols, header_line)?;

    let mut data = Vec::new();
    let mut seen_rows = 0;
    for (line, text) in lines {
        if seen_rows == rows {
            return Err(parse_error(line, format!("more than {rows} rows")));
        }
        let before = data.len();
        for token in text.split_whitespace() {
            data.push(parse_entry(token, line)?);
        }
        if data.len() - before != cols {
            return Err(parse_error(
                line,
                format!("expected {cols} entries, found {}", data.len() - before),
            ));
        }
        seen_rows += 1;
    }
    if seen_rows != rows {
        return Err(parse_error(0, format!("expected {rows} rows, found {seen_rows}")));
    }
    IntMatrix::new(rows, cols, data)
}

/// Canonical text form: header, then one line per row, single spaces,
/// trailing newline.
pub fn write_matrix(m: &IntMatrix) -> String {
    format!("{} {}\n{m}", m.rows(), m.cols())
}
