//! Borel–Weil–Bott for `S_λR(d)` on the Grassmannian of hyperplanes `Gr(n−1, n)`,
//! computed with the dotted action of the symmetric group.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Weight;

/// The cohomology of `S_λR(d)`: zero in every degree, or one irreducible in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BwbResult {
    Vanishing { vanishing: bool },
    Nonvanishing { degree: usize, weight: Vec<i64> },
}

impl BwbResult {
    pub fn is_vanishing(&self) -> bool {
        matches!(self, BwbResult::Vanishing { .. })
    }
}

/// Sorts `μ + ρ` for `μ = (d, λ)`; the inversion count is the degree.
pub fn bwb(lambda: &[i64], d: i64, n: usize) -> Result<BwbResult> {
    if n == 0 || lambda.len() + 1 != n {
        return Err(Error::Parameter(format!(
            "λ must have n−1 = {} entries, got {}",
            n.saturating_sub(1),
            lambda.len()
        )));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NonDominant(lambda.to_vec()));
    }
    let shifted: Vec<i64> =
        std::iter::once(d).chain(lambda.iter().copied()).enumerate().map(|(i, x)| x + (n - 1 - i) as i64).collect();
    let mut inversions = 0;
    for i in 0..n {
        for j in i + 1..n {
            match shifted[i].cmp(&shifted[j]) {
                std::cmp::Ordering::Equal => return Ok(BwbResult::Vanishing { vanishing: true }),
                std::cmp::Ordering::Less => inversions += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    let mut sorted = shifted;
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let weight = sorted.iter().enumerate().map(|(i, x)| x - (n - 1 - i) as i64).collect();
    Ok(BwbResult::Nonvanishing { degree: inversions, weight })
}

/// [`bwb`] on a weight `λ` of length `n−1`.
pub fn bwb_weight(lambda: &Weight, d: i64) -> Result<BwbResult> {
    bwb(&lambda.entries, d, lambda.len() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(bwb(&[3, 1], 7, 3).unwrap(), BwbResult::Nonvanishing { degree: 0, weight: vec![7, 3, 1] });
        assert!(bwb(&[1, 0], 0, 3).unwrap().is_vanishing());
        for k in 6..12 {
            assert_eq!(
                bwb(&[5, 5, 5, 5], k, 5).unwrap(),
                BwbResult::Nonvanishing { degree: 0, weight: vec![k, 5, 5, 5, 5] }
            );
        }
        // (0,2,0) + (2,1,0) = (2,3,0) → (3,2,0) with one inversion
        assert_eq!(bwb(&[2, 0], 0, 3).unwrap(), BwbResult::Nonvanishing { degree: 1, weight: vec![1, 1, 0] });
        assert!(bwb(&[0, 1], 3, 3).is_err());
        assert!(bwb(&[1], 3, 3).is_err());
    }

    #[test]
    fn json_shape() {
        assert_eq!(serde_json::to_string(&bwb(&[1, 0], 0, 3).unwrap()).unwrap(), r#"{"vanishing":true}"#);
    }
}
