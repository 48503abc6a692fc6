//! Reading and writing `x ai ai_prime` tables.
//!
//! One row per line, three space-separated columns with 17 significant
//! digits. Lines starting with `#` and blank lines are ignored on input.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenRow {
    pub x: f64,
    pub ai: f64,
    pub ai_prime: f64,
}

pub fn read_table<R: BufRead>(reader: R) -> Result<Vec<GoldenRow>> {
    let mut rows = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::argument(format!("line {}: {e}", lineno + 1)))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<f64> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::argument(format!("line {}: {e}", lineno + 1)))?;
        if cols.len() != 3 {
            return Err(Error::argument(format!(
                "line {}: expected 3 columns, found {}",
                lineno + 1,
                cols.len()
            )));
        }
        rows.push(GoldenRow {
            x: cols[0],
            ai: cols[1],
            ai_prime: cols[2],
        });
    }
    Ok(rows)
}

pub fn write_table<W: Write>(mut w: W, rows: &[GoldenRow]) -> std::io::Result<()> {
    writeln!(w, "# x ai ai_prime")?;
    for r in rows {
        writeln!(w, "{:.16e} {:.16e} {:.16e}", r.x, r.ai, r.ai_prime)?;
    }
    Ok(())
}

/// Tabulates Ai and Ai' on `n` equally spaced points of `[lo, hi]`.
pub fn tabulate(lo: f64, hi: f64, n: usize) -> Result<Vec<GoldenRow>> {
    if n < 2 || !(lo < hi) {
        return Err(Error::argument(
            "tabulate needs lo < hi and at least two points",
        ));
    }
    (0..n)
        .map(|k| {
            let x = lo + (hi - lo) * k as f64 / (n - 1) as f64;
            let p = super::airy(x)?;
            Ok(GoldenRow {
                x,
                ai: p.ai,
                ai_prime: p.ai_prime,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let rows = tabulate(-15.0, 30.0, 91).unwrap();
        let mut buf = Vec::new();
        write_table(&mut buf, &rows).unwrap();
        let back = read_table(buf.as_slice()).unwrap();
        assert_eq!(rows, back);
    }

    #[test]
    fn rejects_malformed_rows() {
        assert!(read_table("1.0 2.0\n".as_bytes()).is_err());
        assert!(read_table("1.0 x 2.0\n".as_bytes()).is_err());
        assert!(read_table("# only a comment\n\n".as_bytes())
            .unwrap()
            .is_empty());
    }
}
