//! Pieri intertwiners and the tensors built from them.
//!
//! For `μ` obtained from `λ` by adding a horizontal strip (for `Sym^d V`)
//! or a vertical strip (for `∧^d V`), there is a unique-up-to-scalar
//! equivariant map `f₁: S_μV → S_λV ⊗ U`. It is found by locating the
//! highest weight vector of weight `μ` inside `S_λV ⊗ U` and pushing it down
//! with lowering operators, one weight space at a time, solving a small
//! exact linear system on each.
//!
//! The partner map `f₂: S_λV → S_μV ⊗ U*` is solved the same way in the
//! dual module.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::rational::{self, Dense};
use crate::exactla::SparseIntMatrix;
use crate::partitions::{pieri_summands, Partition, PieriKind};
use crate::schurmodule::{SchurModule, SparseCols, WeightModule, BASIS_VERSION};

/// The auxiliary factor `U` of the tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UKind {
    V,
    Sym(usize),
    Wedge(usize),
}

impl UKind {
    pub fn degree(&self) -> usize {
        match *self {
            UKind::V => 1,
            UKind::Sym(d) | UKind::Wedge(d) => d,
        }
    }

    pub fn pieri_kind(&self) -> PieriKind {
        match self {
            UKind::Wedge(_) => PieriKind::Exterior,
            _ => PieriKind::Symmetric,
        }
    }

    /// The partition labelling `U` as a Schur module.
    pub fn shape(&self) -> Partition {
        match *self {
            UKind::V => Partition::new(vec![1]).expect("valid"),
            UKind::Sym(d) => Partition::new(vec![d as u32]).expect("valid"),
            UKind::Wedge(d) => Partition::new(vec![1; d]).expect("valid"),
        }
    }
}

impl fmt::Display for UKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UKind::V => write!(f, "v"),
            UKind::Sym(2) => write!(f, "sym2"),
            UKind::Wedge(2) => write!(f, "wedge2"),
            UKind::Sym(d) => write!(f, "symd:{d}"),
            UKind::Wedge(d) => write!(f, "wedged:{d}"),
        }
    }
}

impl FromStr for UKind {
    type Err = Error;

    /// Accepts `v`, `sym2`, `wedge2`, `symd:D` and `wedged:D`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let degree = |t: &str| -> Result<usize> {
            let d: usize = t.parse().map_err(|_| Error::Parse(format!("bad degree in {s:?}")))?;
            if d == 0 {
                return Err(Error::Parse("degree must be positive".into()));
            }
            Ok(d)
        };
        let kind = match s.as_str() {
            "v" => UKind::V,
            "sym2" => UKind::Sym(2),
            "wedge2" => UKind::Wedge(2),
            _ => {
                if let Some(t) = s.strip_prefix("symd:") {
                    UKind::Sym(degree(t)?)
                } else if let Some(t) = s.strip_prefix("wedged:") {
                    UKind::Wedge(degree(t)?)
                } else {
                    return Err(Error::Parse(format!("unknown U {s:?}; expected v, sym2, wedge2, symd:D or wedged:D")));
                }
            }
        };
        Ok(match kind {
            UKind::Sym(1) | UKind::Wedge(1) => UKind::V,
            k => k,
        })
    }
}

impl Serialize for UKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for UKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Order in which lowering operators are tried during propagation. The
/// result is independent of the order up to sign; the option exists to
/// check that.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PropagationOrder {
    #[default]
    Forward,
    Reversed,
}

type SparseQ = Vec<(usize, BigRational)>;

fn apply(cols: &SparseCols, v: &SparseQ) -> SparseQ {
    let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (x, c) in v {
        for &(r, a) in &cols[*x] {
            *acc.entry(r).or_insert_with(BigRational::zero) += c * BigRational::from_integer(a.into());
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn height(w: &[i64]) -> i64 {
    let n = w.len() as i64;
    w.iter().enumerate().map(|(i, x)| x * (n - 1 - i as i64)).sum()
}

/// Solves for the equivariant map from `source` to `target` sending the
/// source basis vector `hv` (a highest weight vector) into the unique
/// highest weight line of its weight in `target`.
///
/// The result has one row per target basis vector and one column per
/// source basis vector, with coprime integer entries whose first nonzero
/// entry in row-major order is positive.
pub fn solve_intertwiner(
    source: &WeightModule,
    target: &WeightModule,
    hv: usize,
    order: PropagationOrder,
) -> Result<SparseIntMatrix> {
    if source.n() != target.n() {
        return Err(Error::Parameter("source and target must be gl(n)-modules for the same n".into()));
    }
    let gens: Vec<usize> = match order {
        PropagationOrder::Forward => (0..source.n().saturating_sub(1)).collect(),
        PropagationOrder::Reversed => (0..source.n().saturating_sub(1)).rev().collect(),
    };
    let top = source.weight(hv).to_vec();

    // Joint kernel of the raising operators on the top weight space.
    let tblock = target.block(&top);
    let mut row_of: HashMap<(usize, usize), usize> = HashMap::new();
    let mut kmat: Dense = Vec::new();
    for &i in &gens {
        for (c, &t) in tblock.iter().enumerate() {
            for &(r, a) in &target.e(i)[t] {
                let row = *row_of.entry((i, r)).or_insert_with(|| {
                    kmat.push(vec![BigRational::zero(); tblock.len()]);
                    kmat.len() - 1
                });
                kmat[row][c] += BigRational::from_integer(a.into());
            }
        }
    }
    let kernel = rational::nullspace(&kmat, tblock.len());
    if kernel.len() != 1 {
        return Err(Error::Multiplicity(kernel.len()));
    }
    let mut images: Vec<Option<SparseQ>> = vec![None; source.dim()];
    images[hv] =
        Some(tblock.iter().zip(&kernel[0]).filter(|(_, c)| !c.is_zero()).map(|(&t, c)| (t, c.clone())).collect());

    let mut weights: Vec<&Vec<i64>> = source.blocks().keys().collect();
    weights.sort_by_key(|w| std::cmp::Reverse(height(w)));
    for w in weights {
        let jblock = source.block(w);
        if jblock.contains(&hv) {
            if jblock.len() != 1 {
                return Err(Error::Multiplicity(jblock.len()));
            }
            continue;
        }
        let pos: HashMap<usize, usize> = jblock.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let tpos: HashMap<usize, usize> = target.block(w).iter().enumerate().map(|(k, &x)| (x, k)).collect();
        // Generating pairs (F_i x, f_i · image(x)) for x one step above.
        let mut gs: Vec<Vec<BigRational>> = Vec::new();
        let mut ys: Vec<SparseQ> = Vec::new();
        for &i in &gens {
            let mut up = w.clone();
            up[i] += 1;
            up[i + 1] -= 1;
            let above: Vec<usize> = source.block(&up).to_vec();
            let above: Vec<usize> = match order {
                PropagationOrder::Forward => above,
                PropagationOrder::Reversed => above.into_iter().rev().collect(),
            };
            for x in above {
                let img = images[x].as_ref().ok_or_else(|| Error::Inconsistent("propagation order violated".into()))?;
                let mut g = vec![BigRational::zero(); jblock.len()];
                for &(r, a) in &source.f(i)[x] {
                    g[pos[&r]] += BigRational::from_integer(a.into());
                }
                gs.push(g);
                ys.push(apply(target.f(i), img));
            }
        }
        // Greedy choice of independent generating vectors.
        let mut chosen: Vec<usize> = Vec::new();
        let mut echelon: Dense = Vec::new();
        for (k, g) in gs.iter().enumerate() {
            if chosen.len() == jblock.len() {
                break;
            }
            let mut trial = echelon.clone();
            trial.push(g.clone());
            if rational::rank(&trial, jblock.len()) > echelon.len() {
                echelon = trial;
                chosen.push(k);
            }
        }
        if chosen.len() != jblock.len() {
            return Err(Error::Inconsistent(format!("lowering operators do not span the weight space {w:?}")));
        }
        // G has the chosen g's as columns; X G = Y.
        let gmat: Dense = (0..jblock.len()).map(|r| chosen.iter().map(|&k| gs[k][r].clone()).collect()).collect();
        let ginv = rational::inverse(&gmat).ok_or_else(|| Error::Inconsistent("singular generating set".into()))?;
        let ydense: Vec<Vec<BigRational>> = chosen
            .iter()
            .map(|&k| {
                let mut v = vec![BigRational::zero(); tpos.len()];
                for (t, c) in &ys[k] {
                    let p = tpos.get(t).ok_or_else(|| Error::Inconsistent("image left its weight space".into()))?;
                    v[*p] = c.clone();
                }
                Ok(v)
            })
            .collect::<Result<_>>()?;
        let tlist = target.block(w);
        let mut xcols: Vec<Vec<BigRational>> = Vec::with_capacity(jblock.len());
        for j in 0..jblock.len() {
            let mut col = vec![BigRational::zero(); tlist.len()];
            for (k, yk) in ydense.iter().enumerate() {
                let coeff = &ginv[k][j];
                if coeff.is_zero() {
                    continue;
                }
                for (t, y) in yk.iter().enumerate() {
                    if !y.is_zero() {
                        col[t] += y * coeff;
                    }
                }
            }
            xcols.push(col);
        }
        // Remaining generating pairs must be consistent with the solution.
        for (g, y) in gs.iter().zip(&ys) {
            let mut pred = vec![BigRational::zero(); tlist.len()];
            for (j, gj) in g.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                for (t, xv) in xcols[j].iter().enumerate() {
                    if !xv.is_zero() {
                        pred[t] += gj * xv;
                    }
                }
            }
            let mut actual = vec![BigRational::zero(); tlist.len()];
            for (t, c) in y {
                actual[tpos[t]] = c.clone();
            }
            if pred != actual {
                return Err(Error::Inconsistent(format!("extension system is inconsistent at weight {w:?}")));
            }
        }
        for (j, &x) in jblock.iter().enumerate() {
            images[x] =
                Some(tlist.iter().zip(&xcols[j]).filter(|(_, c)| !c.is_zero()).map(|(&t, c)| (t, c.clone())).collect());
        }
    }

    let mut coords: Vec<(usize, usize)> = Vec::new();
    let mut values: Vec<BigRational> = Vec::new();
    for (x, img) in images.iter().enumerate() {
        for (t, c) in img.as_ref().expect("every weight space visited") {
            coords.push((*t, x));
            values.push(c.clone());
        }
    }
    let mut order_idx: Vec<usize> = (0..coords.len()).collect();
    order_idx.sort_by_key(|&k| coords[k]);
    let mut ints = rational::primitive(&values);
    if let Some(&first) = order_idx.first() {
        if ints[first].is_negative() {
            for v in ints.iter_mut() {
                *v = -v.clone();
            }
        }
    }
    SparseIntMatrix::from_triplets(
        target.dim(),
        source.dim(),
        coords.into_iter().zip(ints).map(|((t, x), v)| (t, x, v)),
    )
}

/// `‖target·F − F·source‖` is zero for every generator.
pub fn is_equivariant(map: &SparseIntMatrix, source: &WeightModule, target: &WeightModule) -> Result<bool> {
    for g in source.generators() {
        let lhs = target.matrix(g)?.mul(map)?;
        let rhs = map.mul(&source.matrix(g)?)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every nonzero entry maps a source weight vector to a target vector of the same weight.
pub fn preserves_weights(map: &SparseIntMatrix, source: &WeightModule, target: &WeightModule) -> bool {
    map.entries().iter().all(|(t, x, _)| target.weight(*t) == source.weight(*x))
}

/// The tensor `T_{λμ}` given by the pair of Pieri intertwiners.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieriTensor {
    pub lambda: Partition,
    pub mu: Partition,
    pub n: usize,
    pub u: UKind,
    /// `dim S_λV`.
    pub k: usize,
    /// `dim S_μV`.
    pub l: usize,
    pub dim_u: usize,
    /// `f₁: S_μ → S_λ ⊗ U`, shape `(k·dim U) × l`, row `(s, α)` at `s·dim U + α`.
    pub f1: SparseIntMatrix,
    /// `f₂: S_λ → S_μ ⊗ U*`, shape `(l·dim U) × k`, row `(y, α)` at `y·dim U + α`.
    pub f2: SparseIntMatrix,
    pub scale_note: String,
    pub basis_version: u32,
}

/// Schur modules for `λ`, `μ` and `U`, shared across builds.
pub struct PieriModules {
    pub s_lambda: std::sync::Arc<SchurModule>,
    pub s_mu: std::sync::Arc<SchurModule>,
    pub u: std::sync::Arc<SchurModule>,
}

impl PieriModules {
    pub fn load(lambda: &Partition, mu: &Partition, u: UKind, n: usize) -> Result<Self> {
        Ok(PieriModules {
            s_lambda: SchurModule::cached(lambda, n)?,
            s_mu: SchurModule::cached(mu, n)?,
            u: SchurModule::cached(&u.shape(), n)?,
        })
    }

    /// `S_λ ⊗ U`.
    pub fn f1_target(&self) -> Result<WeightModule> {
        self.s_lambda.module().tensor(self.u.module())
    }

    /// `S_μ ⊗ U*`.
    pub fn f2_target(&self) -> Result<WeightModule> {
        self.s_mu.module().tensor(&self.u.module().dual())
    }
}

/// Checks that `μ` is a Pieri summand of `S_λ ⊗ U` in rank `n`.
pub fn check_pieri_pair(lambda: &Partition, mu: &Partition, u: UKind, n: usize) -> Result<()> {
    if lambda.len() > n || mu.len() > n {
        return Err(Error::Hypothesis(format!("{lambda} or {mu} has more than {n} rows")));
    }
    if !pieri_summands(lambda, u.degree(), u.pieri_kind(), n).contains(mu) {
        return Err(Error::Hypothesis(format!("{mu} is not a Pieri summand of S_{lambda} ⊗ {u}")));
    }
    Ok(())
}

/// Builds `T_{λμ}`.
pub fn build_pieri_tensor(lambda: &Partition, mu: &Partition, u: UKind, n: usize) -> Result<PieriTensor> {
    build_pieri_tensor_with(lambda, mu, u, n, PropagationOrder::Forward)
}

pub fn build_pieri_tensor_with(
    lambda: &Partition,
    mu: &Partition,
    u: UKind,
    n: usize,
    order: PropagationOrder,
) -> Result<PieriTensor> {
    check_pieri_pair(lambda, mu, u, n)?;
    let mods = PieriModules::load(lambda, mu, u, n)?;
    let f1 = solve_intertwiner(mods.s_mu.module(), &mods.f1_target()?, 0, order)?;
    let f2 = solve_intertwiner(mods.s_lambda.module(), &mods.f2_target()?, 0, order)?;
    Ok(PieriTensor {
        lambda: lambda.clone(),
        mu: mu.clone(),
        n,
        u,
        k: mods.s_lambda.dim(),
        l: mods.s_mu.dim(),
        dim_u: mods.u.dim(),
        f1,
        f2,
        scale_note: "primitive integer entries; first nonzero entry in row-major order positive".into(),
        basis_version: BASIS_VERSION,
    })
}

impl PieriTensor {
    /// `A_α: S_μ → S_λ`, the `α` component of `f₁` (`k × l`).
    pub fn f1_slices(&self) -> Vec<SparseIntMatrix> {
        slices(&self.f1, self.dim_u, self.k, self.l)
    }

    /// `B_α: S_λ → S_μ`, the `α` component of `f₂` (`l × k`).
    pub fn f2_slices(&self) -> Vec<SparseIntMatrix> {
        slices(&self.f2, self.dim_u, self.l, self.k)
    }

    /// `M_α: S_λ → S_μ`, so that `φ(u) = Σ u_α M_α` (`l × k`); `M_α = A_αᵀ`.
    pub fn phi_slices(&self) -> Vec<SparseIntMatrix> {
        self.f1_slices().iter().map(SparseIntMatrix::transpose).collect()
    }

    /// `φ(u) = Σ_α u_α M_α`.
    pub fn phi_at(&self, u: &[BigInt]) -> Result<SparseIntMatrix> {
        if u.len() != self.dim_u {
            return Err(Error::Parameter(format!("expected {} coordinates, got {}", self.dim_u, u.len())));
        }
        let mut trip = Vec::new();
        for (s, x, v) in self.f1.entries() {
            let (row, alpha) = (s / self.dim_u, s % self.dim_u);
            if !u[alpha].is_zero() {
                trip.push((*x, row, v * &u[alpha]));
            }
        }
        SparseIntMatrix::from_triplets(self.l, self.k, trip)
    }

    /// `f₂`, the partner intertwiner into `S_μ ⊗ U*`.
    pub fn dual_pieri(&self) -> &SparseIntMatrix {
        &self.f2
    }

    /// Full equivariance and weight checks for both intertwiners.
    pub fn verify(&self) -> Result<()> {
        let mods = PieriModules::load(&self.lambda, &self.mu, self.u, self.n)?;
        let t1 = mods.f1_target()?;
        let t2 = mods.f2_target()?;
        let checks = [
            (is_equivariant(&self.f1, mods.s_mu.module(), &t1)?, "f1 is not equivariant"),
            (is_equivariant(&self.f2, mods.s_lambda.module(), &t2)?, "f2 is not equivariant"),
            (preserves_weights(&self.f1, mods.s_mu.module(), &t1), "f1 mixes weights"),
            (preserves_weights(&self.f2, mods.s_lambda.module(), &t2), "f2 mixes weights"),
            (!self.f1.is_zero() && !self.f2.is_zero(), "zero intertwiner"),
        ];
        for (ok, msg) in checks {
            if !ok {
                return Err(Error::Inconsistent(msg.into()));
            }
        }
        Ok(())
    }
}

fn slices(m: &SparseIntMatrix, dim_u: usize, rows: usize, cols: usize) -> Vec<SparseIntMatrix> {
    let mut parts: Vec<Vec<(usize, usize, BigInt)>> = vec![Vec::new(); dim_u];
    for (r, c, v) in m.entries() {
        parts[r % dim_u].push((r / dim_u, *c, v.clone()));
    }
    parts.into_iter().map(|p| SparseIntMatrix::from_triplets(rows, cols, p).expect("slice indices in range")).collect()
}

/// True when `a = ±b`.
pub fn equal_up_to_sign(a: &SparseIntMatrix, b: &SparseIntMatrix) -> bool {
    a == b || *a == b.scale(&-BigInt::one())
}
