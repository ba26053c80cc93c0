use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse integer matrix in coordinate form.
///
/// Entries are kept sorted by `(row, col)`, with no duplicates and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, BigInt)>,
}

impl SparseIntMatrix {
    /// Builds a matrix from triplets; duplicate coordinates are summed and zeros dropped.
    pub fn from_triplets<I, T>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, T)>,
        T: Into<BigInt>,
    {
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (i, j, v) in triplets {
            if i >= rows {
                return Err(Error::IndexOutOfRange { index: i, what: format!("row of {rows}x{cols} matrix") });
            }
            if j >= cols {
                return Err(Error::IndexOutOfRange { index: j, what: format!("column of {rows}x{cols} matrix") });
            }
            *acc.entry((i, j)).or_default() += v.into();
        }
        let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((i, j), v)| (i, j, v)).collect();
        Ok(SparseIntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        SparseIntMatrix { rows: n, cols: n, entries: (0..n).map(|i| (i, i, BigInt::from(1))).collect() }
    }

    pub fn from_dense<T: Clone + Into<BigInt>>(dense: &[Vec<T>]) -> Result<Self> {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        if dense.iter().any(|r| r.len() != cols) {
            return Err(Error::Parameter("ragged dense matrix".into()));
        }
        Self::from_triplets(
            rows,
            cols,
            dense
                .iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (i, j, v.clone().into()))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, usize, BigInt)] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match self.entries.binary_search_by(|(a, b, _)| (*a, *b).cmp(&(i, j))) {
            Ok(k) => self.entries[k].2.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, j, v) in &self.entries {
            d[*i][*j] = v.clone();
        }
        d
    }

    /// Entries as machine integers; `None` if any entry overflows `i64`.
    pub fn to_i64_triplets(&self) -> Option<Vec<(usize, usize, i64)>> {
        self.entries.iter().map(|(i, j, v)| v.to_i64().map(|x| (*i, *j, x))).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|(i, j, v)| (*j, *i, v.clone())).collect();
        entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        SparseIntMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        SparseIntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(i, j, v)| (*i, *j, v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Self::from_triplets(self.rows, self.cols, self.entries.iter().chain(&other.entries).cloned())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Parameter(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (i, j, v) in &other.entries {
            by_row[*i].push((*j, v));
        }
        let mut out = Vec::new();
        for (i, k, a) in &self.entries {
            for (j, b) in &by_row[*k] {
                out.push((*i, *j, a * *b));
            }
        }
        Self::from_triplets(self.rows, other.cols, out)
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(i, j, v)| (i + self.rows, j + self.cols, v.clone())));
        SparseIntMatrix { rows: self.rows + other.rows, cols: self.cols + other.cols, entries }
    }

    /// Kronecker product; row `(a, b)` maps to `a * other.rows + b`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (i, j, v) in &self.entries {
            for (k, l, w) in &other.entries {
                entries.push((i * other.rows + k, j * other.cols + l, v * w));
            }
        }
        entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        SparseIntMatrix { rows: self.rows * other.rows, cols: self.cols * other.cols, entries }
    }

    /// Submatrix on the given row and column index lists, in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut rmap = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            rmap[r] = k;
        }
        let mut cmap = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            cmap[c] = k;
        }
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .filter(|(i, j, _)| rmap[*i] != usize::MAX && cmap[*j] != usize::MAX)
            .map(|(i, j, v)| (rmap[*i], cmap[*j], v.clone()))
            .collect();
        entries.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        SparseIntMatrix { rows: rows.len(), cols: cols.len(), entries }
    }

    /// Rows and columns grouped into connected components of the bipartite
    /// nonzero pattern. Empty rows and columns are omitted.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut parent: Vec<usize> = (0..self.rows + self.cols).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, j, _) in &self.entries {
            let a = find(&mut parent, *i);
            let b = find(&mut parent, self.rows + j);
            if a != b {
                parent[a] = b;
            }
        }
        let mut used = vec![false; self.rows + self.cols];
        for (i, j, _) in &self.entries {
            used[*i] = true;
            used[self.rows + j] = true;
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for x in 0..self.rows + self.cols {
            if !used[x] {
                continue;
            }
            let root = find(&mut parent, x);
            let g = groups.entry(root).or_default();
            if x < self.rows {
                g.0.push(x);
            } else {
                g.1.push(x - self.rows);
            }
        }
        groups.into_values().collect()
    }

    /// Row-major sparse rows.
    pub fn row_lists(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (i, j, v) in &self.entries {
            rows[*i].push((*j, v.clone()));
        }
        rows
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Parameter(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_triplets() {
        let m = SparseIntMatrix::from_triplets(2, 2, vec![(1, 1, 3), (0, 0, 1), (1, 1, -3), (0, 0, 1)]).unwrap();
        assert_eq!(m.entries(), &[(0, 0, BigInt::from(2))]);
        assert!(SparseIntMatrix::from_triplets(2, 2, vec![(2, 0, 1)]).is_err());
    }

    #[test]
    fn products() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 2], vec![0, 1]]).unwrap();
        let b = SparseIntMatrix::from_dense(&[vec![1, 0], vec![3, 1]]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), SparseIntMatrix::from_dense(&[vec![7, 2], vec![3, 1]]).unwrap());
        let k = a.kron(&SparseIntMatrix::identity(2));
        assert_eq!(k.get(1, 3), BigInt::from(2));
        assert_eq!(a.transpose().get(1, 0), BigInt::from(2));
    }

    #[test]
    fn component_split() {
        let m = SparseIntMatrix::from_triplets(4, 4, vec![(0, 1, 1), (2, 3, 1), (3, 1, 1)]).unwrap();
        assert_eq!(m.components(), vec![(vec![0, 3], vec![1]), (vec![2], vec![3])]);
    }
}
