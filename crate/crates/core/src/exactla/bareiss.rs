use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Default ceiling on the total magnitude of live entries, in bytes.
pub const DEFAULT_MEMORY_BUDGET: usize = 1 << 31;

/// Outcome of an exact elimination.
pub(crate) struct ExactOutcome {
    pub rank: usize,
    pub pivots: Vec<(usize, usize)>,
}

fn row_bytes(r: &[(usize, BigInt)]) -> usize {
    r.iter().map(|(_, v)| (v.bits() as usize).div_ceil(8) + 16).sum()
}

/// Fraction-free elimination on sparse rows.
///
/// Every step updates all remaining rows as `(p·r − c·pivot_row) / prev`, so
/// each entry stays an integer minor of the input and all divisions are exact.
/// Pivot order is chosen on the fly (shortest row, sparsest column), which is
/// the same as running textbook Bareiss on a permuted matrix.
pub(crate) fn bareiss_rows(mut rows: Vec<Vec<(usize, BigInt)>>, ncols: usize, budget: usize) -> Result<ExactOutcome> {
    let mut col_count = vec![0usize; ncols];
    for r in &rows {
        for (j, _) in r {
            col_count[*j] += 1;
        }
    }
    let mut active: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut live_bytes: usize = rows.iter().map(|r| row_bytes(r)).sum();

    loop {
        active.retain(|&i| !rows[i].is_empty());
        let Some(&pr) = active.iter().min_by_key(|&&i| (rows[i].len(), i)) else { break };
        let (pc, pv) = rows[pr]
            .iter()
            .min_by_key(|(j, v)| (col_count[*j], v.bits(), *j))
            .map(|(j, v)| (*j, v.clone()))
            .expect("non-empty pivot row");
        pivots.push((pr, pc));
        let pivot_row = std::mem::take(&mut rows[pr]);
        for (j, _) in &pivot_row {
            col_count[*j] -= 1;
        }
        active.retain(|&i| i != pr);

        for &t in &active {
            let old = std::mem::take(&mut rows[t]);
            live_bytes = live_bytes.saturating_sub(row_bytes(&old));
            let c = old.iter().find(|(j, _)| *j == pc).map(|(_, v)| v.clone()).unwrap_or_default();
            let plen = if c.is_zero() { 0 } else { pivot_row.len() };
            let mut merged = Vec::with_capacity(old.len() + plen);
            let (mut x, mut y) = (0, 0);
            while x < old.len() || y < plen {
                let ja = old.get(x).map_or(usize::MAX, |e| e.0);
                let jb = if y < plen { pivot_row[y].0 } else { usize::MAX };
                let (j, v, in_old) = if ja < jb {
                    x += 1;
                    (ja, &pv * &old[x - 1].1, true)
                } else if jb < ja {
                    y += 1;
                    (jb, -(&c * &pivot_row[y - 1].1), false)
                } else {
                    x += 1;
                    y += 1;
                    (ja, &pv * &old[x - 1].1 - &c * &pivot_row[y - 1].1, true)
                };
                let q = if prev.is_one() { v } else { v / &prev };
                if q.is_zero() {
                    if in_old {
                        col_count[j] -= 1;
                    }
                } else {
                    if !in_old {
                        col_count[j] += 1;
                    }
                    merged.push((j, q));
                }
            }
            live_bytes += row_bytes(&merged);
            rows[t] = merged;
            if live_bytes > budget {
                return Err(Error::Budget(format!(
                    "exact elimination exceeded {budget} bytes after {} pivots; use modular rank instead",
                    pivots.len()
                )));
            }
        }
        prev = pv;
    }
    Ok(ExactOutcome { rank: pivots.len(), pivots })
}
