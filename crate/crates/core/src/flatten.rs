//! The Young flattening `T′: S_μV ⊗ S_λV → S_λV ⊗ S_μV` of `T_{λμ}`.
//!
//! With `f₁(x) = Σ_α A_α x ⊗ e^α` and `f₂(y) = Σ_α B_α y ⊗ (e^α)*`, the
//! contraction pairing `e^α` with `(e^β)*` gives `T′ = Σ_α A_α ⊗ B_α`. Row
//! `(s, y)` sits at `s·l + y` and column `(x, s′)` at `x·k + s′`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cache::PieriCache;
use crate::error::{Error, Result};
use crate::exactla::{RankCertificate, RankStrategy, SparseIntMatrix};
use crate::partitions::{strip_type, Partition, StripType};
use crate::pieri::{build_pieri_tensor, PieriModules, PieriTensor, UKind};

/// Assembles `T′` from the slices of `f₁` and `f₂`.
pub fn build_flattening(t: &PieriTensor) -> Result<SparseIntMatrix> {
    let (k, l) = (t.k, t.l);
    let a = t.f1_slices();
    let b = t.f2_slices();
    if a.len() != b.len()
        || a.iter().any(|m| (m.rows(), m.cols()) != (k, l))
        || b.iter().any(|m| (m.rows(), m.cols()) != (l, k))
    {
        return Err(Error::Inconsistent("slice shapes do not match the tensor dimensions".into()));
    }
    let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    for (aa, bb) in a.iter().zip(&b) {
        for (s, x, va) in aa.entries() {
            for (y, s2, vb) in bb.entries() {
                *acc.entry((s * l + y, x * k + s2)).or_default() += va * vb;
            }
        }
    }
    SparseIntMatrix::from_triplets(k * l, l * k, acc.into_iter().map(|((i, j), v)| (i, j, v)))
}

/// Row and column index sets of `T′` grouped by total torus weight.
pub fn flattening_blocks(t: &PieriTensor) -> Result<BTreeMap<Vec<i64>, (Vec<usize>, Vec<usize>)>> {
    let mods = PieriModules::load(&t.lambda, &t.mu, t.u, t.n)?;
    let (wl, wm) = (mods.s_lambda.module(), mods.s_mu.module());
    let add = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let mut blocks: BTreeMap<Vec<i64>, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for s in 0..t.k {
        for y in 0..t.l {
            blocks.entry(add(wl.weight(s), wm.weight(y))).or_default().0.push(s * t.l + y);
        }
    }
    for x in 0..t.l {
        for s in 0..t.k {
            blocks.entry(add(wm.weight(x), wl.weight(s))).or_default().1.push(x * t.k + s);
        }
    }
    Ok(blocks)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlatteningReport {
    pub lambda: Partition,
    pub mu: Partition,
    pub n: usize,
    pub u: UKind,
    pub k: usize,
    pub l: usize,
    pub matrix_size: usize,
    pub rank: RankCertificate,
    pub is_isomorphism: bool,
    pub strip: StripType,
    /// Whether the isomorphism theorem covers this pair (`d = 1`, or all boxes in one row or column).
    pub predicted_isomorphism: bool,
    /// `Some(true)` when a covered pair is full rank, `Some(false)` when it is not, `None` outside the hypothesis.
    pub matches_prediction: Option<bool>,
}

/// True when the pair is covered by the isomorphism theorem.
pub fn isomorphism_predicted(lambda: &Partition, mu: &Partition, u: UKind) -> bool {
    u.degree() == 1 || strip_type(lambda, mu).is_row_or_column()
}

pub fn report_for_tensor(t: &PieriTensor, strategy: &RankStrategy) -> Result<FlatteningReport> {
    let m = build_flattening(t)?;
    let rank = strategy.rank(&m)?;
    let size = t.k * t.l;
    let is_iso = rank.rank == size;
    let predicted = isomorphism_predicted(&t.lambda, &t.mu, t.u);
    Ok(FlatteningReport {
        lambda: t.lambda.clone(),
        mu: t.mu.clone(),
        n: t.n,
        u: t.u,
        k: t.k,
        l: t.l,
        matrix_size: size,
        rank,
        is_isomorphism: is_iso,
        strip: strip_type(&t.lambda, &t.mu),
        predicted_isomorphism: predicted,
        matches_prediction: predicted.then_some(is_iso),
    })
}

/// Builds (or loads) the tensor, its flattening, and the rank.
pub fn flattening_report(
    lambda: &Partition,
    mu: &Partition,
    u: UKind,
    n: usize,
    strategy: &RankStrategy,
    cache: Option<&PieriCache>,
) -> Result<FlatteningReport> {
    let t = match cache {
        Some(c) => c.get_or_build(lambda, mu, u, n)?,
        None => build_pieri_tensor(lambda, mu, u, n)?,
    };
    report_for_tensor(&t, strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rank_exact;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trivial_lambda() {
        let r = flattening_report(&Partition::empty(), &p(&[1]), UKind::V, 3, &RankStrategy::Exact, None).unwrap();
        assert_eq!((r.matrix_size, r.rank.rank), (3, 3));
        assert_eq!(r.matches_prediction, Some(true));
    }

    #[test]
    fn small_full_rank() {
        let t = build_pieri_tensor(&p(&[1]), &p(&[2]), UKind::V, 2).unwrap();
        let m = build_flattening(&t).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 6));
        assert_eq!(rank_exact(&m).unwrap().rank, 6);

        let r = flattening_report(&p(&[1]), &p(&[1, 1]), UKind::V, 2, &RankStrategy::Exact, None).unwrap();
        assert_eq!((r.matrix_size, r.rank.rank), (2, 2));
    }

    #[test]
    fn blocks_cover_entries() {
        let t = build_pieri_tensor(&p(&[2, 1]), &p(&[2, 2]), UKind::V, 3).unwrap();
        let m = build_flattening(&t).unwrap();
        let blocks = flattening_blocks(&t).unwrap();
        let mut row_block = vec![usize::MAX; m.rows()];
        let mut col_block = vec![usize::MAX; m.cols()];
        for (b, (rows, cols)) in blocks.values().enumerate() {
            rows.iter().for_each(|&r| row_block[r] = b);
            cols.iter().for_each(|&c| col_block[c] = b);
        }
        assert!(m.entries().iter().all(|(i, j, _)| row_block[*i] == col_block[*j]));
        let total: usize = blocks.values().map(|(r, c)| rank_exact(&m.submatrix(r, c)).unwrap().rank).sum();
        assert_eq!(total, rank_exact(&m).unwrap().rank);
    }
}
