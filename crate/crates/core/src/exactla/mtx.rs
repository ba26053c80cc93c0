use std::io::{BufRead, Write};

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::SparseIntMatrix;

pub const MATRIX_MARKET_HEADER: &str = "%%MatrixMarket matrix coordinate integer general";

/// Writes `m` in MatrixMarket coordinate format with 1-based indices.
pub fn write_matrix_market<W: Write>(m: &SparseIntMatrix, mut w: W) -> Result<()> {
    writeln!(w, "{MATRIX_MARKET_HEADER}")?;
    writeln!(w, "{} {} {}", m.rows(), m.cols(), m.nnz())?;
    for (i, j, v) in m.entries() {
        writeln!(w, "{} {} {}", i + 1, j + 1, v)?;
    }
    Ok(())
}

pub fn to_matrix_market_string(m: &SparseIntMatrix) -> String {
    let mut buf = Vec::new();
    write_matrix_market(m, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

pub fn read_matrix_market<R: BufRead>(r: R) -> Result<SparseIntMatrix> {
    let mut lines = r.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty MatrixMarket input".into()))??;
    let fields: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if fields != ["%%matrixmarket", "matrix", "coordinate", "integer", "general"] {
        return Err(Error::Parse(format!("unsupported MatrixMarket header {header:?}")));
    }
    let mut size: Option<(usize, usize, usize)> = None;
    let mut triplets = Vec::new();
    for line in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        let bad = || Error::Parse(format!("malformed MatrixMarket line {t:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        match size {
            None => {
                let p: Vec<usize> = parts.iter().map(|s| s.parse().map_err(|_| bad())).collect::<Result<_>>()?;
                size = Some((p[0], p[1], p[2]));
            }
            Some(_) => {
                let i: usize = parts[0].parse().map_err(|_| bad())?;
                let j: usize = parts[1].parse().map_err(|_| bad())?;
                let v: BigInt = parts[2].parse().map_err(|_| bad())?;
                if i == 0 || j == 0 {
                    return Err(bad());
                }
                triplets.push((i - 1, j - 1, v));
            }
        }
    }
    let (rows, cols, nnz) = size.ok_or_else(|| Error::Parse("missing MatrixMarket size line".into()))?;
    if triplets.len() != nnz {
        return Err(Error::Parse(format!("expected {nnz} entries, found {}", triplets.len())));
    }
    SparseIntMatrix::from_triplets(rows, cols, triplets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = SparseIntMatrix::from_dense(&[vec![0, -5], vec![123456789012345678i64, 0]]).unwrap();
        let s = to_matrix_market_string(&m);
        assert!(s.starts_with("%%MatrixMarket matrix coordinate integer general\n2 2 2\n"));
        assert_eq!(read_matrix_market(s.as_bytes()).unwrap(), m);
        assert!(read_matrix_market("%%MatrixMarket matrix coordinate real general\n".as_bytes()).is_err());
    }
}
