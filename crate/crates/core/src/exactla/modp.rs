use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::SparseIntMatrix;

pub fn is_prime(p: u64) -> bool {
    primal_check::miller_rabin(p)
}

/// `count` distinct random primes in `[2^61, 2^62)`, reproducible from `seed`.
pub fn random_primes(count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let p = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime(p) && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

pub(crate) fn reduce(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = if r.sign() == num_bigint::Sign::Minus { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Rank over GF(p) of a matrix given as sparse rows with reduced entries.
///
/// Pivots are picked Markowitz-style: the shortest remaining row, and within
/// it the column with the fewest remaining entries.
pub(crate) fn rank_rows_mod_p(mut rows: Vec<Vec<(usize, u64)>>, ncols: usize, p: u64) -> usize {
    for r in rows.iter_mut() {
        r.retain(|&(_, v)| v != 0);
    }
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &(j, _) in r {
            col_rows[j].insert(i);
        }
    }
    let mut done = vec![false; rows.len()];
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        rows.iter().enumerate().filter(|(_, r)| !r.is_empty()).map(|(i, r)| Reverse((r.len(), i))).collect();
    let mut rank = 0;
    let mut scratch: Vec<(usize, u64)> = Vec::new();

    while let Some(Reverse((len, pr))) = heap.pop() {
        if done[pr] || rows[pr].len() != len || len == 0 {
            continue;
        }
        let (pc, pv) =
            rows[pr].iter().copied().min_by_key(|&(j, _)| (col_rows[j].len(), j)).expect("non-empty pivot row");
        done[pr] = true;
        rank += 1;
        let pivot_row = std::mem::take(&mut rows[pr]);
        for &(j, _) in &pivot_row {
            col_rows[j].remove(&pr);
        }
        let pinv = inv(pv, p);
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for t in targets {
            let tv = rows[t].iter().find(|&&(j, _)| j == pc).map(|&(_, v)| v).expect("column index is consistent");
            let factor = p - mulmod(tv, pinv, p);
            scratch.clear();
            let (a, b) = (&rows[t], &pivot_row);
            let (mut x, mut y) = (0, 0);
            while x < a.len() || y < b.len() {
                let ja = a.get(x).map_or(usize::MAX, |e| e.0);
                let jb = b.get(y).map_or(usize::MAX, |e| e.0);
                if ja < jb {
                    scratch.push(a[x]);
                    x += 1;
                } else if jb < ja {
                    let v = mulmod(factor, b[y].1, p);
                    scratch.push((jb, v));
                    col_rows[jb].insert(t);
                    y += 1;
                } else {
                    let v = (a[x].1 + mulmod(factor, b[y].1, p)) % p;
                    if v == 0 {
                        col_rows[ja].remove(&t);
                    } else {
                        scratch.push((ja, v));
                    }
                    x += 1;
                    y += 1;
                }
            }
            std::mem::swap(&mut rows[t], &mut scratch);
            heap.push(Reverse((rows[t].len(), t)));
        }
    }
    rank
}

pub(crate) fn rank_matrix_mod_p(m: &SparseIntMatrix, p: u64) -> usize {
    let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); m.rows()];
    for (i, j, v) in m.entries() {
        let r = reduce(v, p);
        if r != 0 {
            rows[*i].push((*j, r));
        }
    }
    rank_rows_mod_p(rows, m.cols(), p)
}

pub(crate) fn check_primes(primes: &[u64]) -> Result<()> {
    if primes.is_empty() {
        return Err(Error::Parameter("at least one prime is required".into()));
    }
    for &p in primes {
        if p < 2 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 63 {
            return Err(Error::Parameter(format!("prime {p} exceeds 63 bits")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_62_bit_and_reproducible() {
        let a = random_primes(2, 7);
        assert_eq!(a, random_primes(2, 7));
        assert_ne!(a[0], a[1]);
        for p in a {
            assert!(p >> 61 == 1 && is_prime(p));
        }
    }

    #[test]
    fn small_ranks() {
        let rows = vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)], vec![(2, 1)]];
        assert_eq!(rank_rows_mod_p(rows, 3, 7), 2);
        assert_eq!(reduce(&BigInt::from(-3), 7), 4);
    }
}
