use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::SparseIntMatrix;

/// Column-major sparse matrix with small integer entries: `cols[x]` lists
/// `(row, value)` pairs of the image of basis vector `x`, sorted by row.
pub type SparseCols = Vec<Vec<(usize, i64)>>;

/// A Chevalley generator of gl(n): `E(i)` raises, `F(i)` lowers, `H(i)` is
/// the diagonal element `E_{ii} − E_{i+1,i+1}`. Indices are 0-based, so
/// `E(0)` is `E_{12}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    E(usize),
    F(usize),
    H(usize),
}

/// A finite-dimensional gl(n)-module with a weight basis, given by the
/// actions of the raising and lowering generators.
#[derive(Clone, Debug)]
pub struct WeightModule {
    n: usize,
    weights: Vec<Vec<i64>>,
    e: Vec<SparseCols>,
    f: Vec<SparseCols>,
    blocks: BTreeMap<Vec<i64>, Vec<usize>>,
}

fn group_blocks(weights: &[Vec<i64>]) -> BTreeMap<Vec<i64>, Vec<usize>> {
    let mut blocks: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (i, w) in weights.iter().enumerate() {
        blocks.entry(w.clone()).or_default().push(i);
    }
    blocks
}

impl WeightModule {
    pub fn new(n: usize, weights: Vec<Vec<i64>>, e: Vec<SparseCols>, f: Vec<SparseCols>) -> Result<Self> {
        let gens = n.saturating_sub(1);
        if e.len() != gens || f.len() != gens {
            return Err(Error::Parameter(format!("expected {gens} raising and lowering generators")));
        }
        if weights.iter().any(|w| w.len() != n) {
            return Err(Error::InvalidWeight(format!("weights must have {n} entries")));
        }
        let dim = weights.len();
        if e.iter().chain(&f).any(|m| m.len() != dim || m.iter().flatten().any(|&(r, _)| r >= dim)) {
            return Err(Error::Parameter("generator matrix does not match the basis".into()));
        }
        let blocks = group_blocks(&weights);
        Ok(WeightModule { n, weights, e, f, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn weight(&self, x: usize) -> &[i64] {
        &self.weights[x]
    }

    /// Basis indices of each weight space.
    pub fn blocks(&self) -> &BTreeMap<Vec<i64>, Vec<usize>> {
        &self.blocks
    }

    pub fn block(&self, w: &[i64]) -> &[usize] {
        self.blocks.get(w).map_or(&[], Vec::as_slice)
    }

    pub fn e(&self, i: usize) -> &SparseCols {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &SparseCols {
        &self.f[i]
    }

    pub fn generators(&self) -> Vec<Generator> {
        let g = self.n.saturating_sub(1);
        (0..g).map(Generator::E).chain((0..g).map(Generator::F)).chain((0..g).map(Generator::H)).collect()
    }

    /// The generator's action as a column-major sparse matrix.
    pub fn action(&self, g: Generator) -> Result<SparseCols> {
        let gens = self.n.saturating_sub(1);
        let i = match g {
            Generator::E(i) | Generator::F(i) | Generator::H(i) => i,
        };
        if i >= gens {
            return Err(Error::IndexOutOfRange { index: i, what: format!("gl({}) generators", self.n) });
        }
        Ok(match g {
            Generator::E(i) => self.e[i].clone(),
            Generator::F(i) => self.f[i].clone(),
            Generator::H(i) => self
                .weights
                .iter()
                .enumerate()
                .map(|(x, w)| {
                    let v = w[i] - w[i + 1];
                    if v == 0 {
                        vec![]
                    } else {
                        vec![(x, v)]
                    }
                })
                .collect(),
        })
    }

    pub fn matrix(&self, g: Generator) -> Result<SparseIntMatrix> {
        cols_to_matrix(&self.action(g)?, self.dim())
    }

    /// `A ⊗ B` with the Leibniz action `x ⊗ 1 + 1 ⊗ x`; basis index of
    /// `(s, t)` is `s * dim B + t`.
    pub fn tensor(&self, other: &WeightModule) -> Result<WeightModule> {
        if self.n != other.n {
            return Err(Error::Parameter(format!("cannot tensor gl({}) with gl({}) modules", self.n, other.n)));
        }
        let b = other.dim();
        let mut weights = Vec::with_capacity(self.dim() * b);
        for ws in &self.weights {
            for wt in &other.weights {
                weights.push(ws.iter().zip(wt).map(|(x, y)| x + y).collect());
            }
        }
        let leibniz = |ma: &SparseCols, mb: &SparseCols| -> SparseCols {
            let mut out: SparseCols = vec![Vec::new(); ma.len() * b];
            for (s, col_a) in ma.iter().enumerate() {
                for (t, col_b) in mb.iter().enumerate() {
                    let mut v: Vec<(usize, i64)> = col_a
                        .iter()
                        .map(|&(r, c)| (r * b + t, c))
                        .chain(col_b.iter().map(|&(r, c)| (s * b + r, c)))
                        .collect();
                    v.sort_unstable();
                    out[s * b + t] = v;
                }
            }
            out
        };
        let e = self.e.iter().zip(&other.e).map(|(x, y)| leibniz(x, y)).collect();
        let f = self.f.iter().zip(&other.f).map(|(x, y)| leibniz(x, y)).collect();
        WeightModule::new(self.n, weights, e, f)
    }

    /// The contragredient module: weights negate and each generator acts by `−xᵀ`.
    pub fn dual(&self) -> WeightModule {
        let neg_t = |m: &SparseCols| -> SparseCols {
            let mut out: SparseCols = vec![Vec::new(); m.len()];
            for (x, col) in m.iter().enumerate() {
                for &(r, v) in col {
                    out[r].push((x, -v));
                }
            }
            out
        };
        let weights: Vec<Vec<i64>> = self.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect();
        WeightModule {
            n: self.n,
            blocks: group_blocks(&weights),
            weights,
            e: self.e.iter().map(neg_t).collect(),
            f: self.f.iter().map(neg_t).collect(),
        }
    }

    /// Checks `[e_i, f_j] = δ_ij h_i`, `[h_i, e_j] = C_ij e_j`, `[h_i, f_j] = −C_ij f_j`
    /// and that each `e_i` shifts weights by `ε_i − ε_{i+1}`.
    pub fn check_relations(&self) -> Result<()> {
        let g = self.n.saturating_sub(1);
        let bad = |what: String| Err(Error::Inconsistent(what));
        for i in 0..g {
            for (x, col) in self.e[i].iter().enumerate() {
                for &(r, _) in col {
                    let mut w = self.weights[x].clone();
                    w[i] += 1;
                    w[i + 1] -= 1;
                    if self.weights[r] != w {
                        return bad(format!("e_{i} does not raise the weight of basis vector {x}"));
                    }
                }
            }
            for (x, col) in self.f[i].iter().enumerate() {
                for &(r, _) in col {
                    let mut w = self.weights[x].clone();
                    w[i] -= 1;
                    w[i + 1] += 1;
                    if self.weights[r] != w {
                        return bad(format!("f_{i} does not lower the weight of basis vector {x}"));
                    }
                }
            }
        }
        for i in 0..g {
            let hi = self.matrix(Generator::H(i))?;
            for j in 0..g {
                let ei = self.matrix(Generator::E(i))?;
                let fj = self.matrix(Generator::F(j))?;
                let comm = ei.mul(&fj)?.sub(&fj.mul(&ei)?)?;
                let want = if i == j { hi.clone() } else { SparseIntMatrix::zeros(self.dim(), self.dim()) };
                if comm != want {
                    return bad(format!("[e_{i}, f_{j}] mismatch"));
                }
                let cartan = match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                };
                let ej = self.matrix(Generator::E(j))?;
                let he = hi.mul(&ej)?.sub(&ej.mul(&hi)?)?;
                if he != ej.scale(&cartan.into()) {
                    return bad(format!("[h_{i}, e_{j}] mismatch"));
                }
                let hf = hi.mul(&fj)?.sub(&fj.mul(&hi)?)?;
                if hf != fj.scale(&(-cartan).into()) {
                    return bad(format!("[h_{i}, f_{j}] mismatch"));
                }
            }
        }
        Ok(())
    }
}

pub fn cols_to_matrix(cols: &SparseCols, rows: usize) -> Result<SparseIntMatrix> {
    SparseIntMatrix::from_triplets(
        rows,
        cols.len(),
        cols.iter().enumerate().flat_map(|(x, c)| c.iter().map(move |&(r, v)| (r, x, v))),
    )
}
