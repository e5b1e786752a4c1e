//! Matrix text format.
//!
//! ```text
//! field GF(2)
//! n 3
//! 0 0 1
//! 0 1 0
//! 1 0 1
//! ```
//!
//! Line 1 names the field (GF(p), GF(2^k), TOWER(p[,cap])), line 2 the
//! dimension, then n rows of whitespace-separated element tokens in the
//! field's element syntax. Printed matrices round-trip bit-exactly.

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::matrix::Matrix;

pub fn format_matrix(m: &Matrix) -> String {
    let mut out = format!("field {}\nn {}\n", m.ctx(), m.n());
    for r in 0..m.n() {
        let row: Vec<String> = (0..m.n())
            .map(|c| m.ctx().format_elem(m.get(r, c)))
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let field_line = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let spec = field_line
        .strip_prefix("field")
        .ok_or_else(|| Error::Parse("first line must be 'field <spec>'".into()))?
        .trim();
    let ctx = FieldCtx::parse_spec(spec)?;
    let n_line = lines
        .next()
        .ok_or_else(|| Error::Parse("missing 'n <n>' line".into()))?;
    let n: usize = n_line
        .strip_prefix('n')
        .ok_or_else(|| Error::Parse("second line must be 'n <n>'".into()))?
        .trim()
        .parse()
        .map_err(|_| Error::Parse("bad dimension".into()))?;
    if n == 0 {
        return Err(Error::Parse("dimension must be at least 1".into()));
    }
    let mut entries = Vec::with_capacity(n * n);
    for _ in 0..n {
        let row = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {n} matrix rows")))?;
        let tokens: Vec<&str> = row.split_whitespace().collect();
        if tokens.len() != n {
            return Err(Error::Parse(format!(
                "expected {n} entries per row, got {}",
                tokens.len()
            )));
        }
        for tok in tokens {
            entries.push(ctx.parse_elem(tok)?);
        }
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing content after matrix rows".into()));
    }
    Matrix::new(ctx, n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_across_field_kinds() {
        for text in [
            "field GF(2)\nn 3\n0 0 1\n0 1 0\n1 0 1\n",
            "field GF(2^2)\nn 2\n1:0 0:1\n0:1 1:1\n",
            "field TOWER(3)\nn 2\nL0;2 L1;0:1\nL1;0:1 L0;0\n",
        ] {
            let m = parse_matrix(text).unwrap();
            let printed = format_matrix(&m);
            assert_eq!(parse_matrix(&printed).unwrap(), m);
            assert_eq!(format_matrix(&parse_matrix(&printed).unwrap()), printed);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("field GF(2)\nn 2\n0 1\n").is_err());
        assert!(parse_matrix("field GF(2)\nn 2\n0 1 1\n0 0\n").is_err());
        assert!(parse_matrix("field GF(6)\nn 1\n0\n").is_err());
        assert!(parse_matrix("n 2\nfield GF(2)\n0 0\n0 0\n").is_err());
        assert!(parse_matrix("field GF(2)\nn 2\n0 1\n1 0\nextra\n").is_err());
    }
}
