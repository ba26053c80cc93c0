//! Exact linear algebra over sparse integer matrices.
//!
//! Two rank engines are provided. [`rank_mod_p`] eliminates over prime
//! fields and gives a lower bound on the rational rank; a full-rank answer
//! modulo any single prime is already a proof of full rational rank.
//! [`rank_exact`] runs fraction-free elimination over the integers and
//! returns the rational rank itself.
//!
//! Both engines split the matrix into connected components of its nonzero
//! pattern first. Weight-graded matrices fall apart into their weight blocks
//! this way, and the blocks are eliminated in parallel.

mod bareiss;
mod modp;
mod mtx;
pub mod rational;
mod sparse;

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use bareiss::DEFAULT_MEMORY_BUDGET;
pub use modp::{is_prime, random_primes};
pub use mtx::{read_matrix_market, to_matrix_market_string, write_matrix_market, MATRIX_MARKET_HEADER};
pub use sparse::SparseIntMatrix;

/// Seed used for prime selection when the caller does not supply one.
pub const DEFAULT_PRIME_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum RankMode {
    /// Maximum of ranks over the listed primes; a lower bound on the rational rank.
    ModPProbable { primes: Vec<u64>, per_prime: Vec<usize> },
    /// Exact rational rank.
    ExactCertified,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub mode: RankMode,
    pub pivots_used: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl RankCertificate {
    /// True when the modular ranks disagreed between primes.
    pub fn primes_disagree(&self) -> bool {
        match &self.mode {
            RankMode::ModPProbable { per_prime, .. } => per_prime.windows(2).any(|w| w[0] != w[1]),
            RankMode::ExactCertified => false,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.mode == RankMode::ExactCertified
    }
}

/// Rank over each `GF(p)` in `primes`; reports the maximum.
pub fn rank_mod_p(m: &SparseIntMatrix, primes: &[u64]) -> Result<RankCertificate> {
    modp::check_primes(primes)?;
    let start = Instant::now();
    let dim = m.rows().max(m.cols()) as u64;
    if let Some(p) = primes.iter().find(|&&p| p <= dim) {
        log::warn!("prime {p} does not exceed the matrix dimension {dim}; rank may be underestimated");
    }
    let blocks = m.components();
    let per_prime: Vec<usize> = primes
        .iter()
        .map(|&p| blocks.par_iter().map(|(r, c)| modp::rank_matrix_mod_p(&m.submatrix(r, c), p)).sum())
        .collect();
    let rank = per_prime.iter().copied().max().unwrap_or(0);
    Ok(RankCertificate {
        rank,
        mode: RankMode::ModPProbable { primes: primes.to_vec(), per_prime },
        pivots_used: rank,
        elapsed: start.elapsed(),
    })
}

/// [`rank_mod_p`] with two random 62-bit primes drawn from `seed`.
pub fn rank_mod_random_primes(m: &SparseIntMatrix, seed: u64) -> Result<RankCertificate> {
    rank_mod_p(m, &random_primes(2, seed))
}

/// How a caller wants a rank computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankStrategy {
    Exact,
    Modular { primes: Vec<u64> },
}

impl RankStrategy {
    /// Two random 62-bit primes drawn from `seed`.
    pub fn modular(seed: u64) -> Self {
        RankStrategy::Modular { primes: random_primes(2, seed) }
    }

    /// One random 62-bit prime; enough to certify full rank.
    pub fn single_prime(seed: u64) -> Self {
        RankStrategy::Modular { primes: random_primes(1, seed) }
    }

    pub fn rank(&self, m: &SparseIntMatrix) -> Result<RankCertificate> {
        match self {
            RankStrategy::Exact => rank_exact(m),
            RankStrategy::Modular { primes } => rank_mod_p(m, primes),
        }
    }
}

/// Exact rational rank with the default memory budget.
pub fn rank_exact(m: &SparseIntMatrix) -> Result<RankCertificate> {
    rank_exact_with_budget(m, DEFAULT_MEMORY_BUDGET)
}

/// Exact rational rank; fails with a budget error once live entries exceed `budget` bytes.
pub fn rank_exact_with_budget(m: &SparseIntMatrix, budget: usize) -> Result<RankCertificate> {
    let start = Instant::now();
    let blocks = m.components();
    let ranks: Vec<usize> = blocks
        .par_iter()
        .map(|(r, c)| {
            let sub = m.submatrix(r, c);
            bareiss::bareiss_rows(sub.row_lists(), sub.cols(), budget).map(|o| o.rank)
        })
        .collect::<Result<_>>()?;
    let rank = ranks.iter().sum();
    Ok(RankCertificate { rank, mode: RankMode::ExactCertified, pivots_used: rank, elapsed: start.elapsed() })
}

/// Pivot positions `(row, col)` of an exact elimination, in elimination order.
pub fn exact_pivots(m: &SparseIntMatrix) -> Result<Vec<(usize, usize)>> {
    Ok(bareiss::bareiss_rows(m.row_lists(), m.cols(), DEFAULT_MEMORY_BUDGET)?.pivots)
}
