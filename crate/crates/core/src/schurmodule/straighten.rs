use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Rewrites column-strict tableaux in the semistandard basis.
///
/// A tableau is a vector in the module only up to column antisymmetry:
/// permuting the entries of one column multiplies it by the sign of the
/// permutation, and a repeated entry in a column makes it zero. When two
/// adjacent columns `j, j+1` have `T(i,j) > T(i,j+1)`, the Garnir relation
/// on the entries `A` (column `j`, rows `i..`) and `B` (column `j+1`, rows
/// `..=i`) gives
///
/// `T = −Σ_{t≥1} (−1)^t Σ T[A′ ↔ B′]`
///
/// over all pairs of `t`-subsets `A′ ⊆ A`, `B′ ⊆ B` exchanged in order.
/// Every term has a lexicographically smaller column `j` after sorting, so
/// the rewriting terminates.
pub struct Straightener<'a> {
    /// `pos[j][i]`: offset of box `(i, j)` in the row-major filling (0-based).
    pos: Vec<Vec<usize>>,
    index: &'a HashMap<Vec<u8>, usize>,
    memo: HashMap<Vec<u8>, Vec<(usize, i64)>>,
}

/// Sorts every column of a row-major filling into increasing order.
/// Returns the sorted filling and the sign of the permutation, or `None`
/// if some column has a repeated entry.
pub fn sort_columns(shape: &Partition, filling: &[u8]) -> Option<(Vec<u8>, i64)> {
    let pos = column_positions(shape);
    let mut out = filling.to_vec();
    let mut sign = 1;
    for col in &pos {
        sign *= sort_one_column(&mut out, col)?;
    }
    Some((out, sign))
}

fn sort_one_column(f: &mut [u8], col: &[usize]) -> Option<i64> {
    let mut sign = 1;
    for a in 1..col.len() {
        let mut b = a;
        while b > 0 && f[col[b - 1]] > f[col[b]] {
            f.swap(col[b - 1], col[b]);
            sign = -sign;
            b -= 1;
        }
        if b > 0 && f[col[b - 1]] == f[col[b]] {
            return None;
        }
    }
    Some(sign)
}

fn column_positions(shape: &Partition) -> Vec<Vec<usize>> {
    let mut pos = vec![Vec::new(); shape.first() as usize];
    let mut at = 0;
    for &p in shape.parts() {
        for (j, col) in pos.iter_mut().enumerate().take(p as usize) {
            col.push(at + j);
        }
        at += p as usize;
    }
    pos
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn accumulate(acc: &mut BTreeMap<usize, i64>, terms: &[(usize, i64)], coeff: i64) -> Result<()> {
    for &(x, c) in terms {
        let v = acc.entry(x).or_insert(0);
        *v = c
            .checked_mul(coeff)
            .and_then(|d| v.checked_add(d))
            .ok_or_else(|| Error::Inconsistent("straightening coefficient overflow".into()))?;
    }
    Ok(())
}

fn finish(acc: BTreeMap<usize, i64>) -> Vec<(usize, i64)> {
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

impl<'a> Straightener<'a> {
    /// `index` maps each semistandard filling of `shape` to its basis position.
    pub fn new(shape: &Partition, index: &'a HashMap<Vec<u8>, usize>) -> Self {
        Straightener { pos: column_positions(shape), index, memo: HashMap::new() }
    }

    /// Expands an arbitrary filling with column antisymmetry applied.
    pub fn expand(&mut self, filling: &[u8]) -> Result<Vec<(usize, i64)>> {
        let mut f = filling.to_vec();
        let mut sign = 1;
        for col in &self.pos {
            match sort_one_column(&mut f, col) {
                Some(s) => sign *= s,
                None => return Ok(Vec::new()),
            }
        }
        let terms = self.straighten(&f)?;
        Ok(terms.into_iter().map(|(x, c)| (x, c * sign)).collect())
    }

    /// Replaces each occurrence of `from` by `to`, one box at a time, and sums the results.
    pub fn replace_and_straighten(&mut self, filling: &[u8], from: u8, to: u8) -> Result<Vec<(usize, i64)>> {
        let mut acc = BTreeMap::new();
        for k in 0..filling.len() {
            if filling[k] != from {
                continue;
            }
            let mut g = filling.to_vec();
            g[k] = to;
            let terms = self.expand(&g)?;
            accumulate(&mut acc, &terms, 1)?;
        }
        Ok(finish(acc))
    }

    /// Straightens a filling whose columns are already strictly increasing.
    fn straighten(&mut self, f: &[u8]) -> Result<Vec<(usize, i64)>> {
        if let Some(&x) = self.index.get(f) {
            return Ok(vec![(x, 1)]);
        }
        if let Some(r) = self.memo.get(f) {
            return Ok(r.clone());
        }
        let (i, j) = self
            .first_violation(f)
            .ok_or_else(|| Error::Inconsistent(format!("filling {f:?} is semistandard but not in the basis")))?;
        let a_pos: Vec<usize> = self.pos[j][i..].to_vec();
        let b_pos: Vec<usize> = self.pos[j + 1][..=i].to_vec();
        let mut acc = BTreeMap::new();
        for t in 1..=a_pos.len().min(b_pos.len()) {
            let outer = if t % 2 == 1 { 1 } else { -1 };
            for sa in combinations(a_pos.len(), t) {
                for sb in combinations(b_pos.len(), t) {
                    let mut g = f.to_vec();
                    for (&x, &y) in sa.iter().zip(&sb) {
                        g.swap(a_pos[x], b_pos[y]);
                    }
                    let Some(s1) = sort_one_column(&mut g, &self.pos[j]) else { continue };
                    let Some(s2) = sort_one_column(&mut g, &self.pos[j + 1]) else { continue };
                    let terms = self.straighten(&g)?;
                    accumulate(&mut acc, &terms, outer * s1 * s2)?;
                }
            }
        }
        let result = finish(acc);
        self.memo.insert(f.to_vec(), result.clone());
        Ok(result)
    }

    fn first_violation(&self, f: &[u8]) -> Option<(usize, usize)> {
        for j in 0..self.pos.len().saturating_sub(1) {
            for i in 0..self.pos[j + 1].len() {
                if f[self.pos[j][i]] > f[self.pos[j + 1][i]] {
                    return Some((i, j));
                }
            }
        }
        None
    }
}
