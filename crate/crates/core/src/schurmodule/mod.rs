//! The Schur module S_λ(C^n) on its semistandard-tableau basis.
//!
//! Basis vectors are semistandard tableaux ordered lexicographically by
//! their row-reading word (rows top to bottom, each left to right). The
//! first basis vector is therefore the tableau whose row `r` is filled with
//! `r`, the highest weight vector. The weight of a tableau is its content.
//!
//! Generators act on a tableau by replacing entries one box at a time; the
//! result is a sum of column-strict tableaux, which is rewritten in the
//! semistandard basis with Garnir relations (see [`straighten`]).

mod straighten;
mod weight_module;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;

pub use straighten::{sort_columns, Straightener};
pub use weight_module::{cols_to_matrix, Generator, SparseCols, WeightModule};

/// Bumped whenever the basis order or the generator conventions change.
pub const BASIS_VERSION: u32 = 1;

/// A filling of a Young diagram, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tableau {
    pub shape: Partition,
    pub filling: Vec<u8>,
}

impl Tableau {
    pub fn new(shape: Partition, filling: Vec<u8>) -> Result<Self> {
        if filling.len() != shape.size() {
            return Err(Error::Parameter(format!(
                "shape {shape} has {} boxes but {} entries were given",
                shape.size(),
                filling.len()
            )));
        }
        Ok(Tableau { shape, filling })
    }

    /// Rows of the filling.
    pub fn rows(&self) -> Vec<&[u8]> {
        let mut out = Vec::with_capacity(self.shape.len());
        let mut at = 0;
        for &p in self.shape.parts() {
            out.push(&self.filling[at..at + p as usize]);
            at += p as usize;
        }
        out
    }

    /// Entry in box `(i, j)`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        let offset: usize = self.shape.parts()[..i - 1].iter().map(|&p| p as usize).sum();
        self.filling[offset + j - 1]
    }

    pub fn is_semistandard(&self) -> bool {
        let rows = self.rows();
        rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]))
            && rows.windows(2).all(|pair| pair[1].iter().zip(pair[0]).all(|(lo, hi)| lo > hi))
    }

    /// Number of occurrences of each value `1..=n`.
    pub fn content(&self, n: usize) -> Vec<i64> {
        let mut c = vec![0i64; n];
        for &v in &self.filling {
            c[v as usize - 1] += 1;
        }
        c
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "{}", rows.join(" / "))
    }
}

/// All semistandard fillings of `shape` with entries `1..=n`, in
/// lexicographic order of their row-reading words.
pub fn semistandard_fillings(shape: &Partition, n: usize) -> Vec<Vec<u8>> {
    let boxes: Vec<(usize, usize)> = shape.boxes().collect();
    let row_start: Vec<usize> = shape
        .parts()
        .iter()
        .scan(0usize, |acc, &p| {
            let s = *acc;
            *acc += p as usize;
            Some(s)
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0u8; boxes.len()];
    fn go(k: usize, boxes: &[(usize, usize)], row_start: &[usize], n: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k == boxes.len() {
            out.push(cur.clone());
            return;
        }
        let (i, j) = boxes[k];
        let mut lo = 1u8;
        if j > 1 {
            lo = lo.max(cur[k - 1]);
        }
        if i > 1 {
            lo = lo.max(cur[row_start[i - 2] + j - 1] + 1);
        }
        for v in lo..=n {
            cur[k] = v;
            go(k + 1, boxes, row_start, n, cur, out);
        }
    }
    if shape.len() <= n {
        go(0, &boxes, &row_start, n as u8, &mut cur, &mut out);
    }
    out
}

/// S_λ(C^n) with its tableau basis and generator actions.
#[derive(Debug)]
pub struct SchurModule {
    shape: Partition,
    n: usize,
    basis: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    module: WeightModule,
}

impl SchurModule {
    /// Builds the module. A shape with more than `n` rows gives the zero module.
    pub fn build(shape: &Partition, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("n must be positive".into()));
        }
        if n > u8::MAX as usize {
            return Err(Error::Parameter(format!("n = {n} is too large")));
        }
        let basis = semistandard_fillings(shape, n);
        let index: HashMap<Vec<u8>, usize> = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let weights: Vec<Vec<i64>> = basis
            .iter()
            .map(|t| {
                let mut c = vec![0i64; n];
                for &v in t {
                    c[v as usize - 1] += 1;
                }
                c
            })
            .collect();

        let mut st = Straightener::new(shape, &index);
        let mut e = Vec::with_capacity(n - 1);
        let mut f = Vec::with_capacity(n - 1);
        for g in 0..n.saturating_sub(1) {
            let (a, b) = (g as u8 + 1, g as u8 + 2);
            e.push(basis.iter().map(|t| st.replace_and_straighten(t, b, a)).collect::<Result<Vec<_>>>()?);
            f.push(basis.iter().map(|t| st.replace_and_straighten(t, a, b)).collect::<Result<Vec<_>>>()?);
        }
        let module = WeightModule::new(n, weights, e, f)?;
        Ok(SchurModule { shape: shape.clone(), n, basis, index, module })
    }

    /// Shared handle from the process-wide cache, building on first use.
    pub fn cached(shape: &Partition, n: usize) -> Result<Arc<SchurModule>> {
        static CACHE: OnceLock<RwLock<HashMap<(Partition, usize), Arc<SchurModule>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let key = (shape.clone(), n);
        if let Some(m) = cache.read().expect("schur cache poisoned").get(&key) {
            return Ok(Arc::clone(m));
        }
        let mut guard = cache.write().expect("schur cache poisoned");
        if let Some(m) = guard.get(&key) {
            return Ok(Arc::clone(m));
        }
        let built = Arc::new(SchurModule::build(shape, n)?);
        guard.insert(key, Arc::clone(&built));
        Ok(built)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn module(&self) -> &WeightModule {
        &self.module
    }

    pub fn basis(&self) -> impl Iterator<Item = Tableau> + '_ {
        self.basis.iter().map(|t| Tableau { shape: self.shape.clone(), filling: t.clone() })
    }

    pub fn tableau(&self, x: usize) -> Tableau {
        Tableau { shape: self.shape.clone(), filling: self.basis[x].clone() }
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.index.get(&t.filling).copied()
    }

    /// Coordinates of the highest weight vector, checked against every raising operator.
    pub fn highest_weight_vector(&self) -> Result<Vec<i64>> {
        if self.dim() == 0 {
            return Err(Error::Degenerate(format!("S_{}(C^{}) is the zero module", self.shape, self.n)));
        }
        let mut v = vec![0i64; self.dim()];
        v[0] = 1;
        for i in 0..self.n - 1 {
            if !self.module.e(i)[0].is_empty() {
                return Err(Error::Inconsistent(format!("e_{i} does not kill the highest weight tableau")));
            }
        }
        Ok(v)
    }
}
