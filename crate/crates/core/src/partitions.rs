//! Partitions, Young-diagram combinatorics and the dimension formulas for
//! polynomial representations of GL(n).
//!
//! Boxes are addressed 1-based as `(row, column)`. Partitions drop trailing
//! zeros on construction, so `(3,1,0)` and `(3,1)` compare equal. Operations
//! that depend on the ambient rank take `n` explicitly.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of non-negative integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Builds a partition from signed entries, rejecting negative or increasing input.
    pub fn from_signed(entries: &[i64]) -> Result<Self> {
        if entries.iter().any(|&x| x < 0) {
            return Err(Error::InvalidPartition(format!("{entries:?} has negative entries")));
        }
        Partition::new(entries.iter().map(|&x| x as u32).collect())
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Nonzero parts.
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `λ_i` with 1-based `i`; zero past the last nonzero part.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of nonzero parts, l(λ).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |λ|, the number of boxes.
    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn first(&self) -> u32 {
        self.part(1)
    }

    /// The parts padded with zeros to length `n`. Panics if `l(λ) > n`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        assert!(self.len() <= n, "partition {self} has more than {n} rows");
        let mut v = self.0.clone();
        v.resize(n, 0);
        v
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first() as usize;
        Partition((1..=cols).map(|j| self.0.iter().filter(|&&p| p as usize >= j).count() as u32).collect())
    }

    /// True when the Young diagram of `other` fits inside this one.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Boxes `(row, column)` in row-major order, 1-based.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &p)| (1..=p as usize).map(move |j| (i + 1, j)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses comma-separated parts such as `6,2`; an empty string or `()`
    /// is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_int_list(s)?;
        Partition::from_signed(&entries)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

/// Parses `1,-2,3` (optionally wrapped in parentheses or brackets).
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let trimmed = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if trimmed.trim().is_empty() {
        return Ok(Vec::new());
    }
    trimmed.split(',').map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}")))).collect()
}

/// Coordinate system a weight is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightBasis {
    /// Entries are coefficients of the standard characters ε_1, …, ε_n.
    Epsilon,
    /// Entries are coefficients of fundamental weights (used for E6).
    Fundamental,
}

/// An integer weight of fixed length, possibly non-dominant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub basis: WeightBasis,
    pub entries: Vec<i64>,
}

impl Weight {
    pub fn epsilon(entries: Vec<i64>) -> Self {
        Weight { basis: WeightBasis::Epsilon, entries }
    }

    pub fn fundamental(entries: Vec<i64>) -> Self {
        Weight { basis: WeightBasis::Fundamental, entries }
    }

    /// The partition padded to `n` entries, as an ε-weight.
    pub fn from_partition(p: &Partition, n: usize) -> Self {
        Weight::epsilon(p.padded(n).into_iter().map(i64::from).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Weakly decreasing entries (dominance for gl(n)).
    pub fn is_weakly_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
    }

    /// The partition with these entries, when they are weakly decreasing and
    /// non-negative.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.basis != WeightBasis::Epsilon || !self.is_weakly_decreasing() {
            return None;
        }
        Partition::from_signed(&self.entries).ok()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Hook lengths `h_λ(i,j)`, one row of the table per row of λ.
pub fn hook_lengths(lambda: &Partition) -> Vec<Vec<u32>> {
    let conj = lambda.conjugate();
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &row)| {
            (0..row as usize)
                .map(|j| {
                    let arm = row - 1 - j as u32;
                    let leg = conj.parts()[j] - 1 - i as u32;
                    arm + leg + 1
                })
                .collect()
        })
        .collect()
}

/// dim S_λ(C^n) by the hook-content formula; zero when `l(λ) > n`.
pub fn schur_dim(lambda: &Partition, n: usize) -> BigUint {
    if lambda.len() > n {
        return BigUint::zero();
    }
    let hooks = hook_lengths(lambda);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (i, j) in lambda.boxes() {
        num *= (n + j - i) as u64;
        den *= u64::from(hooks[i - 1][j - 1]);
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// dim S_λ(C^n) as a machine integer, for sizing matrices.
pub fn schur_dim_usize(lambda: &Partition, n: usize) -> usize {
    use num_traits::ToPrimitive;
    schur_dim(lambda, n).to_usize().expect("dimension exceeds usize")
}

/// Counts semistandard fillings of λ with entries in `1..=n` by exhaustive
/// enumeration. Independent of the hook-content formula.
pub fn ssyt_count(lambda: &Partition, n: usize) -> u64 {
    let boxes: Vec<(usize, usize)> = lambda.boxes().collect();
    let mut filling = vec![vec![0u32; lambda.first() as usize]; lambda.len()];
    fn go(k: usize, boxes: &[(usize, usize)], filling: &mut [Vec<u32>], n: u32) -> u64 {
        if k == boxes.len() {
            return 1;
        }
        let (i, j) = (boxes[k].0 - 1, boxes[k].1 - 1);
        let mut lo = 1;
        if j > 0 {
            lo = lo.max(filling[i][j - 1]);
        }
        if i > 0 {
            lo = lo.max(filling[i - 1][j] + 1);
        }
        let mut total = 0;
        for v in lo..=n {
            filling[i][j] = v;
            total += go(k + 1, boxes, filling, n);
        }
        total
    }
    go(0, &boxes, &mut filling, n as u32)
}

/// Which Pieri rule to apply: Sym^d adds a horizontal strip, ∧^d a vertical one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieriKind {
    Symmetric,
    Exterior,
}

/// All μ ⊇ λ with |μ| = |λ| + d and at most `n` rows such that μ/λ is a
/// horizontal (symmetric) or vertical (exterior) strip.
pub fn pieri_summands(lambda: &Partition, d: usize, kind: PieriKind, n: usize) -> BTreeSet<Partition> {
    let rows = n.min(lambda.len() + d);
    let mut out = BTreeSet::new();
    let mut current = vec![0u32; rows];

    fn go(
        i: usize,
        left: usize,
        lambda: &Partition,
        kind: PieriKind,
        current: &mut Vec<u32>,
        out: &mut BTreeSet<Partition>,
    ) {
        if i == current.len() {
            if left == 0 {
                out.insert(Partition::new(current.clone()).expect("strip additions stay weakly decreasing"));
            }
            return;
        }
        let base = lambda.part(i + 1);
        let cap = match kind {
            // a horizontal strip never stacks two boxes in one column: μ_{i} ≤ λ_{i-1}
            PieriKind::Symmetric => {
                if i == 0 {
                    left as u32
                } else {
                    (lambda.part(i) - base).min(left as u32)
                }
            }
            PieriKind::Exterior => {
                let room = if i == 0 { 1 } else { u32::from(current[i - 1] > base) };
                room.min(left as u32)
            }
        };
        for add in 0..=cap {
            current[i] = base + add;
            if i > 0 && current[i] > current[i - 1] {
                continue;
            }
            go(i + 1, left - add as usize, lambda, kind, current, out);
        }
    }

    go(0, d, lambda, kind, &mut current, &mut out);
    out
}

/// Shape of the skew diagram μ/λ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum StripType {
    /// All added boxes lie in `row` (1-based). Equal partitions report `row = 0, boxes = 0`.
    SameRow {
        row: usize,
        boxes: usize,
    },
    /// All added boxes lie in `column` (1-based), at least two of them.
    SameColumn {
        column: usize,
        boxes: usize,
    },
    OtherHorizontalStrip,
    OtherVerticalStrip,
    NotAStrip,
    NotContained,
}

impl StripType {
    /// True for the row/column shapes covered by the flattening isomorphism theorem.
    pub fn is_row_or_column(&self) -> bool {
        matches!(self, StripType::SameRow { boxes, .. } if *boxes > 0) || matches!(self, StripType::SameColumn { .. })
    }
}

/// Classifies μ/λ.
pub fn strip_type(lambda: &Partition, mu: &Partition) -> StripType {
    if !mu.contains(lambda) {
        return StripType::NotContained;
    }
    let skew: Vec<(usize, usize)> = mu.boxes().filter(|&(i, j)| j as u32 > lambda.part(i)).collect();
    if skew.is_empty() {
        return StripType::SameRow { row: 0, boxes: 0 };
    }
    let rows: BTreeSet<usize> = skew.iter().map(|b| b.0).collect();
    let cols: BTreeSet<usize> = skew.iter().map(|b| b.1).collect();
    if rows.len() == 1 {
        StripType::SameRow { row: skew[0].0, boxes: skew.len() }
    } else if cols.len() == 1 {
        StripType::SameColumn { column: skew[0].1, boxes: skew.len() }
    } else if cols.len() == skew.len() {
        StripType::OtherHorizontalStrip
    } else if rows.len() == skew.len() {
        StripType::OtherVerticalStrip
    } else {
        StripType::NotAStrip
    }
}

/// `-λ^opp`: reverse and negate.
pub fn dual_weight(lambda: &Weight) -> Weight {
    Weight { basis: lambda.basis, entries: lambda.entries.iter().rev().map(|x| -x).collect() }
}

/// Tensor with the `k`-th power of the determinant: add `k` to every entry.
pub fn twist(lambda: &Weight, k: i64) -> Weight {
    Weight { basis: lambda.basis, entries: lambda.entries.iter().map(|x| x + k).collect() }
}

/// `λ^k = (k, λ_1, λ_2, …)`; requires `k ≥ λ_1`.
pub fn lift(lambda: &Partition, k: u32) -> Result<Partition> {
    if k < lambda.first() {
        return Err(Error::InvalidPartition(format!("cannot prepend row {k} to {lambda}: first row is longer")));
    }
    let mut parts = Vec::with_capacity(lambda.len() + 1);
    parts.push(k);
    parts.extend_from_slice(lambda.parts());
    Partition::new(parts)
}

/// All partitions of `size` with at most `max_rows` rows, in reverse lexicographic order.
pub fn partitions_of(size: usize, max_rows: usize) -> Vec<Partition> {
    fn go(left: usize, cap: usize, rows: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if rows == 0 {
            return;
        }
        for p in (1..=cap.min(left)).rev() {
            cur.push(p as u32);
            go(left - p, p, rows - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, size, max_rows, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hook_table_examples() {
        assert_eq!(hook_lengths(&p(&[4, 2, 1])), vec![vec![6, 4, 2, 1], vec![3, 1], vec![1]]);
        assert_eq!(hook_lengths(&p(&[1])), vec![vec![1]]);
        assert_eq!(hook_lengths(&p(&[3, 3, 3])), vec![vec![5, 4, 3], vec![4, 3, 2], vec![3, 2, 1]]);
        assert!(hook_lengths(&Partition::empty()).is_empty());
    }

    #[test]
    fn dimensions() {
        let d = |v: &[u32], n| schur_dim(&p(v), n);
        assert_eq!(d(&[6, 2], 3), BigUint::from(60u32));
        assert_eq!(d(&[6, 3], 3), BigUint::from(64u32));
        assert_eq!(d(&[5, 2, 1], 4), BigUint::from(256u32));
        assert_eq!(d(&[5, 2, 2], 4), BigUint::from(160u32));
        assert_eq!(d(&[1, 1, 1, 1], 3), BigUint::zero());
        assert_eq!(d(&[2, 2, 1, 1], 5), BigUint::from(45u32));
        assert_eq!(d(&[], 7), BigUint::one());
    }

    #[test]
    fn ssyt_counts() {
        assert_eq!(ssyt_count(&p(&[2]), 2), 3);
        assert_eq!(ssyt_count(&p(&[1, 1, 1]), 3), 1);
        assert_eq!(ssyt_count(&p(&[3, 1]), 4), 45);
        assert_eq!(ssyt_count(&p(&[2, 2, 1, 1]), 5), 45);
        assert_eq!(ssyt_count(&p(&[1, 1]), 1), 0);
    }

    #[test]
    fn pieri_examples() {
        let got = pieri_summands(&p(&[2, 1]), 2, PieriKind::Symmetric, 3);
        let want: BTreeSet<_> = [p(&[4, 1]), p(&[3, 2]), p(&[3, 1, 1]), p(&[2, 2, 1])].into();
        assert_eq!(got, want);

        let got = pieri_summands(&Partition::empty(), 1, PieriKind::Symmetric, 4);
        assert_eq!(got, [p(&[1])].into());

        let got = pieri_summands(&p(&[2, 2]), 2, PieriKind::Exterior, 4);
        assert_eq!(got, [p(&[3, 3]), p(&[3, 2, 1]), p(&[2, 2, 1, 1])].into());

        // row bound
        let got = pieri_summands(&p(&[2, 1]), 2, PieriKind::Symmetric, 2);
        assert_eq!(got, [p(&[4, 1]), p(&[3, 2])].into());
    }

    #[test]
    fn strip_examples() {
        assert_eq!(strip_type(&p(&[6, 2]), &p(&[6, 3])), StripType::SameRow { row: 2, boxes: 1 });
        assert_eq!(strip_type(&p(&[3, 2, 2]), &p(&[3, 3, 3])), StripType::SameColumn { column: 3, boxes: 2 });
        assert_eq!(strip_type(&p(&[2, 1]), &p(&[2, 1])), StripType::SameRow { row: 0, boxes: 0 });
        assert_eq!(strip_type(&p(&[2, 1]), &p(&[3, 2])), StripType::OtherHorizontalStrip);
        assert_eq!(strip_type(&p(&[1]), &p(&[2, 1, 1])), StripType::OtherVerticalStrip);
        assert_eq!(strip_type(&p(&[1]), &p(&[2, 2])), StripType::NotAStrip);
        assert_eq!(strip_type(&p(&[3]), &p(&[2, 2])), StripType::NotContained);
    }

    #[test]
    fn weight_ops() {
        let w = Weight::epsilon(vec![1, 1, 1, 0]);
        assert_eq!(dual_weight(&w).entries, vec![0, -1, -1, -1]);
        assert_eq!(twist(&dual_weight(&w), 1).entries, vec![1, 0, 0, 0]);
        assert_eq!(lift(&p(&[3, 1]), 7).unwrap(), p(&[7, 3, 1]));
        assert!(matches!(lift(&p(&[3, 1]), 2), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn parsing() {
        assert_eq!("6,2".parse::<Partition>().unwrap(), p(&[6, 2]));
        assert_eq!("(3,1,0)".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("1,-1".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&p(&[6, 2])).unwrap(), "[6,2]");
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions_of(4, 4).len(), 5);
        assert_eq!(partitions_of(4, 2).len(), 3);
        assert_eq!(partitions_of(0, 3), vec![Partition::empty()]);
    }
}
