//! Root data, the dotted Weyl-group action, minimal coset representatives
//! and Kostant weight tables.
//!
//! Types A, C and D act on ε-coordinates. Type A on `n` coordinates is the
//! Weyl group of gl(n) (rank `n−1`). For C_n and D_n the generators are
//! `s_1, …, s_{n−1}` (adjacent swaps) together with `τ = s_n`; in C_n, τ
//! negates the last entry, and in D_n it maps `(β_{n−1}, β_n)` to
//! `(−β_n, −β_{n−1})`. E6 acts on coefficients of fundamental weights, with
//! `s_i(β) = β − ⟨β, h_i⟩ α_i` and `⟨α_i, h_j⟩` the Cartan matrix entry.
//!
//! Every simple reflection is stored as a pair (root, coroot) in the same
//! coordinates, so `s_i(β) = β − (β·h_i) α_i` uniformly. Words are written
//! as in products `s_{n−2}s_{n−1}τ` and act right to left.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{Partition, Weight, WeightBasis};
use crate::pieri::UKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A,
    C,
    D,
    E6,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::E6 => "E6",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "E6" | "E" => Ok(CartanType::E6),
            _ => Err(Error::Parse(format!("unknown Cartan type {s:?}; expected A, C, D or E6"))),
        }
    }
}

/// The E6 Cartan matrix, nodes 1–5 in a chain and node 6 attached to node 3.
pub const E6_CARTAN: [[i64; 6]; 6] = [
    [2, -1, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0],
    [0, -1, 2, -1, 0, -1],
    [0, 0, -1, 2, -1, 0],
    [0, 0, 0, -1, 2, 0],
    [0, 0, -1, 0, 0, 2],
];

/// Upper limit on the number of coset representatives a search may produce.
pub const DEFAULT_COSET_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    cartan_type: CartanType,
    /// Number of coordinates of a weight.
    dim: usize,
    basis: WeightBasis,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    rho: Vec<i64>,
    positive_coroots: Vec<Vec<i64>>,
}

fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RootDatum {
    /// Type A on `n` coordinates (gl(n), rank `n−1`); `ρ = (n−1, …, 0)`.
    pub fn a(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("type A needs at least 2 coordinates, got {n}")));
        }
        let adj: Vec<Vec<i64>> = (0..n - 1).map(|i| adjacent(n, i)).collect();
        let rho = (0..n).rev().map(|x| x as i64).collect();
        Ok(Self::assemble(CartanType::A, n, WeightBasis::Epsilon, adj.clone(), adj, rho))
    }

    /// Type C_n; `ρ = (n, …, 1)`.
    pub fn c(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("type C needs rank at least 2, got {n}")));
        }
        let mut roots: Vec<Vec<i64>> = (0..n - 1).map(|i| adjacent(n, i)).collect();
        let mut coroots = roots.clone();
        roots.push(unit(n, n - 1).iter().map(|x| 2 * x).collect());
        coroots.push(unit(n, n - 1));
        let rho = (1..=n).rev().map(|x| x as i64).collect();
        Ok(Self::assemble(CartanType::C, n, WeightBasis::Epsilon, roots, coroots, rho))
    }

    /// Type D_n; `ρ = (n−1, …, 0)`.
    pub fn d(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parameter(format!("type D needs rank at least 3, got {n}")));
        }
        let mut roots: Vec<Vec<i64>> = (0..n - 1).map(|i| adjacent(n, i)).collect();
        let mut tau = vec![0; n];
        tau[n - 2] = 1;
        tau[n - 1] = 1;
        roots.push(tau);
        let rho = (0..n).rev().map(|x| x as i64).collect();
        Ok(Self::assemble(CartanType::D, n, WeightBasis::Epsilon, roots.clone(), roots, rho))
    }

    /// E6 in fundamental-weight coordinates; `ρ = Σ w_i`.
    pub fn e6() -> Self {
        let roots: Vec<Vec<i64>> = E6_CARTAN.iter().map(|r| r.to_vec()).collect();
        let coroots = (0..6).map(|i| unit(6, i)).collect();
        Self::assemble(CartanType::E6, 6, WeightBasis::Fundamental, roots, coroots, vec![1; 6])
    }

    /// Root datum by type letter and rank (the number of coordinates for type A).
    pub fn new(t: CartanType, n: usize) -> Result<Self> {
        match t {
            CartanType::A => Self::a(n),
            CartanType::C => Self::c(n),
            CartanType::D => Self::d(n),
            CartanType::E6 if n == 6 => Ok(Self::e6()),
            CartanType::E6 => Err(Error::Parameter(format!("E6 has rank 6, not {n}"))),
        }
    }

    fn assemble(
        cartan_type: CartanType,
        dim: usize,
        basis: WeightBasis,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
        rho: Vec<i64>,
    ) -> Self {
        let cartan = simple_roots.iter().map(|a| simple_coroots.iter().map(|h| dot(a, h)).collect()).collect();
        let mut datum = RootDatum {
            cartan_type,
            dim,
            basis,
            simple_roots,
            simple_coroots,
            cartan,
            rho,
            positive_coroots: Vec::new(),
        };
        datum.positive_coroots = datum.coroot_orbit();
        datum
    }

    /// All coroots, from the Weyl orbit of the simple coroots, keeping those positive on ρ.
    fn coroot_orbit(&self) -> Vec<Vec<i64>> {
        let mut seen: HashSet<Vec<i64>> = self.simple_coroots.iter().cloned().collect();
        let mut stack: Vec<Vec<i64>> = self.simple_coroots.clone();
        while let Some(h) = stack.pop() {
            for (a, hi) in self.simple_roots.iter().zip(&self.simple_coroots) {
                let c = dot(a, &h);
                let img: Vec<i64> = h.iter().zip(hi).map(|(x, y)| x - c * y).collect();
                if seen.insert(img.clone()) {
                    stack.push(img);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|h| dot(&self.rho, h) > 0).collect();
        pos.sort();
        pos
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    /// Number of simple reflections.
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// Number of coordinates of a weight.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> WeightBasis {
        self.basis
    }

    /// `⟨α_i, h_j⟩`, 0-based.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_root(&self, i: usize) -> Result<&[i64]> {
        self.check_index(i)?;
        Ok(&self.simple_roots[i - 1])
    }

    pub fn simple_coroot(&self, i: usize) -> Result<&[i64]> {
        self.check_index(i)?;
        Ok(&self.simple_coroots[i - 1])
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn rho(&self) -> Weight {
        Weight { basis: self.basis, entries: self.rho.clone() }
    }

    /// Name of generator `i` as printed in words: `τ` for the last node of C_n and D_n.
    pub fn generator_name(&self, i: usize) -> String {
        match self.cartan_type {
            CartanType::C | CartanType::D if i == self.rank() => "τ".into(),
            _ => format!("s{i}"),
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            return Err(Error::IndexOutOfRange { index: i, what: format!("type {}{}", self.cartan_type, self.rank()) });
        }
        Ok(())
    }

    fn check_weight(&self, beta: &Weight) -> Result<()> {
        if beta.basis != self.basis || beta.len() != self.dim {
            return Err(Error::InvalidWeight(format!(
                "expected {} coordinates in the {:?} basis, got {} in the {:?} basis",
                self.dim,
                self.basis,
                beta.len(),
                beta.basis
            )));
        }
        Ok(())
    }

    /// `s_i(v)` on raw coordinates, 1-based `i`.
    pub fn reflect(&self, i: usize, v: &[i64]) -> Result<Vec<i64>> {
        self.check_index(i)?;
        let (a, h) = (&self.simple_roots[i - 1], &self.simple_coroots[i - 1]);
        let c = dot(v, h);
        Ok(v.iter().zip(a).map(|(x, y)| x - c * y).collect())
    }

    /// `w(v)` on raw coordinates.
    pub fn act_raw(&self, w: &WeylWord, v: &[i64]) -> Result<Vec<i64>> {
        let mut out = v.to_vec();
        for &i in w.letters.iter().rev() {
            out = self.reflect(i, &out)?;
        }
        Ok(out)
    }

    pub fn act(&self, w: &WeylWord, beta: &Weight) -> Result<Weight> {
        self.check_weight(beta)?;
        Ok(Weight { basis: self.basis, entries: self.act_raw(w, &beta.entries)? })
    }

    /// Length: the number of positive coroots `h` with `⟨wρ, h⟩ < 0`.
    pub fn length(&self, w: &WeylWord) -> Result<usize> {
        let wr = self.act_raw(w, &self.rho)?;
        Ok(self.positive_coroots.iter().filter(|h| dot(&wr, h) < 0).count())
    }

    /// True when `⟨β, h_i⟩ ≥ 0` for every simple coroot.
    pub fn is_dominant(&self, beta: &Weight) -> bool {
        beta.basis == self.basis
            && beta.len() == self.dim
            && self.simple_coroots.iter().all(|h| dot(&beta.entries, h) >= 0)
    }

    /// Dominance for the Levi obtained by deleting `node`.
    pub fn is_levi_dominant(&self, v: &[i64], node: usize, strict: bool) -> bool {
        self.simple_coroots.iter().enumerate().filter(|(j, _)| j + 1 != node).all(|(_, h)| {
            if strict {
                dot(v, h) > 0
            } else {
                dot(v, h) >= 0
            }
        })
    }
}

fn adjacent(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v[i + 1] = -1;
    v
}

/// A product of simple reflections, stored left to right and applied right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylWord {
    /// 1-based generator indices.
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord { letters: Vec::new() }
    }

    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord { letters }
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        WeylWord { letters: self.letters.iter().rev().copied().collect() }
    }

    /// `self · other`.
    pub fn compose(&self, other: &WeylWord) -> Self {
        WeylWord { letters: self.letters.iter().chain(&other.letters).copied().collect() }
    }

    /// `s_i · self`.
    pub fn prepend(&self, i: usize) -> Self {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(i);
        letters.extend_from_slice(&self.letters);
        WeylWord { letters }
    }

    /// Display using the datum's generator names, e.g. `s3τ`.
    pub fn render(&self, datum: &RootDatum) -> String {
        if self.is_identity() {
            return "id".into();
        }
        self.letters.iter().map(|&i| datum.generator_name(i)).collect()
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        for &i in &self.letters {
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

/// `w•β = w(β+ρ) − ρ`.
pub fn dotted_action(datum: &RootDatum, w: &WeylWord, beta: &Weight) -> Result<Weight> {
    datum.check_weight(beta)?;
    let shifted: Vec<i64> = beta.entries.iter().zip(&datum.rho).map(|(b, r)| b + r).collect();
    let moved = datum.act_raw(w, &shifted)?;
    Ok(Weight { basis: datum.basis, entries: moved.iter().zip(&datum.rho).map(|(m, r)| m - r).collect() })
}

pub fn rho(datum: &RootDatum) -> Weight {
    datum.rho()
}

/// Minimal-length representatives of `W/W_Y` for the Levi deleting `levi_node`,
/// grouped by length `0..=max_length`.
pub fn minimal_coset_reps(datum: &RootDatum, levi_node: usize, max_length: usize) -> Result<Vec<Vec<WeylWord>>> {
    minimal_coset_reps_with_budget(datum, levi_node, max_length, DEFAULT_COSET_BUDGET)
}

/// As [`minimal_coset_reps`], failing once more than `budget` representatives are produced.
pub fn minimal_coset_reps_with_budget(
    datum: &RootDatum,
    levi_node: usize,
    max_length: usize,
    budget: usize,
) -> Result<Vec<Vec<WeylWord>>> {
    datum.check_index(levi_node)?;
    let mut levels = vec![vec![WeylWord::identity()]];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([datum.rho.clone()]);
    let mut produced = 1usize;
    for len in 1..=max_length {
        let mut next = Vec::new();
        for w in &levels[len - 1] {
            for i in (1..=datum.rank()).rev() {
                let cand = w.prepend(i);
                let probe = datum.act_raw(&cand.inverse(), &datum.rho)?;
                if !datum.is_levi_dominant(&probe, levi_node, true) || datum.length(&cand)? != len {
                    continue;
                }
                if seen.insert(probe) {
                    produced += 1;
                    if produced > budget {
                        return Err(Error::Budget(format!(
                            "more than {budget} coset representatives up to length {max_length}"
                        )));
                    }
                    next.push(cand);
                }
            }
        }
        let done = next.is_empty();
        levels.push(next);
        if done {
            levels.resize(max_length + 1, Vec::new());
            break;
        }
    }
    Ok(levels)
}

/// One summand of `H_p(u_Y, L(α)*)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyEntry {
    pub degree: usize,
    pub word: WeylWord,
    /// `w` with the datum's generator names.
    pub word_name: String,
    /// `w⁻¹•α` in the datum's coordinates.
    pub dotted: Weight,
    /// `−(w⁻¹•α)^opp` as a gl-weight in ε-coordinates.
    pub dual_opp: Weight,
    /// Determinant power added to `dual_opp`. Classical tables use one twist
    /// for every row, the one making the degree-zero row non-negative with a
    /// zero entry; E6 rows are twisted separately so their last entry is zero.
    pub twist: i64,
    /// `dual_opp` after the twist, when that is a partition.
    pub partition: Option<Partition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyzygyTable {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub levi_node: usize,
    pub alpha: Weight,
    pub entries: Vec<SyzygyEntry>,
}

impl SyzygyTable {
    pub fn at_degree(&self, p: usize) -> impl Iterator<Item = &SyzygyEntry> {
        self.entries.iter().filter(move |e| e.degree == p)
    }
}

/// E6 fundamental-weight coefficients to ε-coordinates of the gl(6) Levi: `γ_i = Σ_{j≥i} ν_j`.
pub fn e6_gamma(nu: &[i64]) -> Vec<i64> {
    let mut out = vec![0; nu.len()];
    let mut acc = 0;
    for i in (0..nu.len()).rev() {
        acc += nu[i];
        out[i] = acc;
    }
    out
}

fn twisted_partition(dual_opp: &[i64], twist: i64) -> Option<Partition> {
    let shifted: Vec<i64> = dual_opp.iter().map(|x| x + twist).collect();
    if shifted.windows(2).all(|w| w[0] >= w[1]) {
        Partition::from_signed(&shifted).ok()
    } else {
        None
    }
}

/// Kostant's weights `−(w⁻¹•α)^opp` for all `w ∈ W′_Y` with `l(w) ≤ max_degree`.
pub fn kostant_weights(datum: &RootDatum, levi_node: usize, alpha: &Weight, max_degree: usize) -> Result<SyzygyTable> {
    datum.check_weight(alpha)?;
    if !datum.is_dominant(alpha) {
        return Err(Error::NonDominant(alpha.entries.clone()));
    }
    let reps = minimal_coset_reps(datum, levi_node, max_degree)?;
    let mut entries = Vec::new();
    let mut table_twist = None;
    for (p, level) in reps.into_iter().enumerate() {
        for w in level {
            let dotted = dotted_action(datum, &w.inverse(), alpha)?;
            let eps = match datum.basis {
                WeightBasis::Epsilon => dotted.entries.clone(),
                WeightBasis::Fundamental => e6_gamma(&dotted.entries),
            };
            let dual: Vec<i64> = eps.iter().rev().map(|x| -x).collect();
            let min = dual.iter().copied().min().unwrap_or(0);
            let twist = match datum.basis {
                WeightBasis::Epsilon => *table_twist.get_or_insert(-min.min(0)),
                WeightBasis::Fundamental => -dual.last().copied().unwrap_or(0),
            };
            let partition = twisted_partition(&dual, twist);
            entries.push(SyzygyEntry {
                degree: p,
                word_name: w.render(datum),
                word: w,
                dotted,
                dual_opp: Weight::epsilon(dual),
                twist,
                partition,
            });
        }
    }
    Ok(SyzygyTable { cartan_type: datum.cartan_type, rank: datum.rank(), levi_node, alpha: alpha.clone(), entries })
}

/// Named families of Pieri pairs produced from Kostant tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `Sym²V`, both boxes in row 2 (type C, `α_n = 0`).
    #[serde(rename = "sym2-row2")]
    Sym2Row2,
    /// `∧²V`, boxes in rows 2 and 3 of one column (type D, `α_{n−1} = α_n = 0`).
    #[serde(rename = "wedge2-col")]
    Wedge2Col,
    /// `Sym²V`, type C with `α_{n−1} = α_n`.
    #[serde(rename = "1a")]
    C1a,
    /// `Sym²V`, type C with `α_{n−2} = α_{n−1}`.
    #[serde(rename = "1b")]
    C1b,
    /// `∧²V`, type D with `α_{n−1} = α_n`.
    #[serde(rename = "2a")]
    D2a,
    /// `∧²V`, type D with `α_{n−2} = α_{n−1}`.
    #[serde(rename = "2b")]
    D2b,
    /// `∧²V`, type D with `α_{n−3} = α_{n−2}`.
    #[serde(rename = "2c")]
    D2c,
    /// `∧³C⁶` from E6, the partitions `β_1, …, β_4`.
    #[serde(rename = "e6-beta")]
    E6Beta,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 8] = [
        FamilyKind::Sym2Row2,
        FamilyKind::Wedge2Col,
        FamilyKind::C1a,
        FamilyKind::C1b,
        FamilyKind::D2a,
        FamilyKind::D2b,
        FamilyKind::D2c,
        FamilyKind::E6Beta,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Sym2Row2 => "sym2-row2",
            FamilyKind::Wedge2Col => "wedge2-col",
            FamilyKind::C1a => "1a",
            FamilyKind::C1b => "1b",
            FamilyKind::D2a => "2a",
            FamilyKind::D2b => "2b",
            FamilyKind::D2c => "2c",
            FamilyKind::E6Beta => "e6-beta",
        }
    }

    pub fn u_kind(&self) -> UKind {
        match self {
            FamilyKind::Sym2Row2 | FamilyKind::C1a | FamilyKind::C1b => UKind::Sym(2),
            FamilyKind::E6Beta => UKind::Wedge(3),
            _ => UKind::Wedge(2),
        }
    }

    /// Number of entries of α the family expects for dimension `n`.
    pub fn alpha_len(&self, n: usize) -> usize {
        match self {
            FamilyKind::Sym2Row2 => n - 1,
            FamilyKind::Wedge2Col => n - 2,
            FamilyKind::E6Beta => 6,
            _ => n,
        }
    }

    fn min_n(&self) -> usize {
        match self {
            FamilyKind::Sym2Row2 | FamilyKind::C1a | FamilyKind::C1b => 3,
            FamilyKind::D2c => 5,
            FamilyKind::E6Beta => 6,
            _ => 4,
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub kind: FamilyKind,
    pub n: usize,
    pub u: UKind,
    pub alpha: Vec<i64>,
    /// Degree-one term of the resolution, when the family comes with one.
    pub alpha_prime: Option<Partition>,
    pub lambda: Partition,
    pub mu: Partition,
    /// The second degree-three summand, when the family comes with one.
    pub nu: Option<Partition>,
    /// `β_1, …, β_4` for the E6 family.
    pub betas: Vec<Partition>,
    /// The inequality on μ equivalent to the constraint on α, when one is stated.
    pub mu_constraint: Option<bool>,
}

fn part(v: Vec<i64>) -> Result<Partition> {
    let p = Partition::from_signed(&v)?;
    Ok(p)
}

/// Emits the partitions of a named family for parameter `alpha` in dimension `n`.
///
/// `alpha` is 1-based in the formulas below (`a(i)` is `α_i`).
pub fn family_generator(kind: FamilyKind, alpha: &[i64], n: usize) -> Result<FamilyRecord> {
    if n < kind.min_n() {
        return Err(Error::Parameter(format!("family {kind} needs n ≥ {}, got {n}", kind.min_n())));
    }
    let n = if kind == FamilyKind::E6Beta { 6 } else { n };
    if alpha.len() != kind.alpha_len(n) {
        return Err(Error::Parameter(format!(
            "family {kind} with n = {n} takes {} entries of α, got {}",
            kind.alpha_len(n),
            alpha.len()
        )));
    }
    let a = |i: usize| alpha[i - 1];
    let a1 = alpha[0];
    // α₁ − α_j for j = hi down to 2
    let tail = |hi: usize| -> Vec<i64> { (2..=hi).rev().map(|j| a1 - a(j)).collect() };
    let violated = |what: &str| Error::Hypothesis(format!("family {kind} requires {what}; α = {alpha:?}"));
    let cat = |head: &[i64], rest: Vec<i64>| -> Vec<i64> { head.iter().copied().chain(rest).collect() };

    let mut rec = FamilyRecord {
        kind,
        n,
        u: kind.u_kind(),
        alpha: alpha.to_vec(),
        alpha_prime: None,
        lambda: Partition::empty(),
        mu: Partition::empty(),
        nu: None,
        betas: Vec::new(),
        mu_constraint: None,
    };
    match kind {
        FamilyKind::Sym2Row2 | FamilyKind::C1a | FamilyKind::C1b => {
            let full = if kind == FamilyKind::Sym2Row2 { cat(alpha, vec![0]) } else { alpha.to_vec() };
            if !RootDatum::c(n)?.is_dominant(&Weight::epsilon(full)) {
                return Err(Error::NonDominant(alpha.to_vec()));
            }
        }
        FamilyKind::E6Beta => {
            if alpha.iter().any(|&x| x < 0) {
                return Err(Error::NonDominant(alpha.to_vec()));
            }
        }
        _ => {
            let full = if kind == FamilyKind::Wedge2Col { cat(alpha, vec![0, 0]) } else { alpha.to_vec() };
            if !RootDatum::d(n)?.is_dominant(&Weight::epsilon(full)) {
                return Err(Error::NonDominant(alpha.to_vec()));
            }
        }
    }
    match kind {
        FamilyKind::Sym2Row2 => {
            if a(n - 2) < a(n - 1) {
                return Err(violated("α_{n−2} ≥ α_{n−1}"));
            }
            rec.alpha_prime = Some(part(cat(&[2 + a1], tail(n - 1)))?);
            rec.lambda = part(cat(&[a1 + a(n - 1) + 3, a1 + 1], tail(n - 2)))?;
            rec.mu = part(cat(&[a1 + a(n - 1) + 3, a1 + 3], tail(n - 2)))?;
            rec.nu = Some(part(cat(&[a1 + a(n - 2) + 4, a1 + 1, a1 - a(n - 1) + 1], tail(n - 3)))?);
            let m = |i| i64::from(rec.mu.part(i));
            rec.mu_constraint = Some(m(1) + m(3) + 3 <= 2 * m(2));
        }
        FamilyKind::Wedge2Col => {
            if a(n - 3) < a(n - 2) {
                return Err(violated("α_{n−3} ≥ α_{n−2}"));
            }
            rec.alpha_prime = Some(part(cat(&[a1 + 1, a1 + 1], tail(n - 2)))?);
            rec.lambda = part(cat(&[a1 + a(n - 2) + 2, a1 + 1, a1 + 1], tail(n - 3)))?;
            rec.mu = part(cat(&[a1 + a(n - 2) + 2, a1 + 2, a1 + 2], tail(n - 3)))?;
            rec.nu = Some(part(cat(&[a1 + a(n - 3) + 3, a1 + 1, a1 + 1, a1 - a(n - 2) + 1], tail(n - 4)))?);
            let m = |i| i64::from(rec.mu.part(i));
            rec.mu_constraint = Some(m(1) + m(4) + 2 <= 2 * m(2));
        }
        FamilyKind::C1a => {
            if a(n - 1) != a(n) {
                return Err(violated("α_{n−1} = α_n"));
            }
            rec.lambda = part(cat(&[a1 + a(n - 1) + 2, a1 - a(n - 1)], tail(n - 2)))?;
            rec.mu = part(cat(&[a1 + a(n - 1) + 3, a1 - a(n - 1) + 1], tail(n - 2)))?;
        }
        FamilyKind::C1b => {
            if a(n - 2) != a(n - 1) {
                return Err(violated("α_{n−2} = α_{n−1}"));
            }
            let mut mu_tail = tail(n - 2);
            if let Some(first) = mu_tail.first_mut() {
                *first += 1;
            }
            rec.lambda = part(cat(&[a1 + a(n - 2) + 3, a1 - a(n) + 1], tail(n - 2)))?;
            rec.mu = part(cat(&[a1 + a(n - 2) + 4, a1 - a(n) + 1], mu_tail))?;
        }
        FamilyKind::D2a => {
            if a(n - 1) != a(n) {
                return Err(violated("α_{n−1} = α_n"));
            }
            rec.lambda = part(cat(&[a1 + a(n - 2) + 2, a1 + a(n - 1) + 1, a1 - a(n - 1) + 1], tail(n - 3)))?;
            rec.mu = part(cat(&[a1 + a(n - 2) + 2, a1 + a(n - 1) + 2, a1 - a(n - 1) + 2], tail(n - 3)))?;
        }
        FamilyKind::D2b => {
            if a(n - 2) != a(n - 1) {
                return Err(violated("α_{n−2} = α_{n−1}"));
            }
            let mut mu_tail = tail(n - 2);
            if let Some(first) = mu_tail.first_mut() {
                *first += 1;
            }
            rec.lambda = part(cat(&[a1 + a(n - 2) + 1, a1 + a(n) + 1], tail(n - 2)))?;
            rec.mu = part(cat(&[a1 + a(n - 2) + 2, a1 + a(n) + 1], mu_tail))?;
        }
        FamilyKind::D2c => {
            if a(n - 3) != a(n - 2) {
                return Err(violated("α_{n−3} = α_{n−2}"));
            }
            let mut mu_tail = tail(n - 3);
            if let Some(first) = mu_tail.first_mut() {
                *first += 1;
            }
            rec.lambda = part(cat(&[a1 + a(n - 3) + 2, a1 + a(n) + 1, a1 - a(n - 1) + 1], tail(n - 3)))?;
            rec.mu = part(cat(&[a1 + a(n - 3) + 3, a1 + a(n) + 1, a1 - a(n - 1) + 1], mu_tail))?;
        }
        FamilyKind::E6Beta => {
            let b = e6_gamma(alpha);
            let b = |i: usize| b[i - 1];
            let d = |i: usize| b(1) - b(i);
            let betas = [
                [d(6) + a(6) + 1, d(5) + a(6) + 1, d(4) + a(6) + 1, d(3), d(2)],
                [d(6) + a(3) + a(6) + 2, d(5) + a(3) + a(6) + 2, d(4) + a(6) + 1, d(3) + a(3) + 1, d(2)],
                [
                    d(6) + a(3) + a(4) + a(6) + 3,
                    d(5) + a(3) + a(6) + 2,
                    d(4) + a(4) + a(6) + 2,
                    d(3) + a(3) + a(4) + 2,
                    d(2),
                ],
                [
                    d(6) + a(2) + a(3) + a(6) + 3,
                    d(5) + a(2) + a(3) + a(6) + 3,
                    d(4) + a(6) + 1,
                    d(3) + a(3) + 1,
                    d(2) + a(2) + 1,
                ],
            ];
            rec.betas = betas.iter().map(|v| part(v.to_vec())).collect::<Result<_>>()?;
            rec.lambda = rec.betas[0].clone();
            rec.mu = rec.betas[1].clone();
        }
    }
    Ok(rec)
}

/// Words of `W′_Y` grouped by length, keyed for display.
pub fn coset_table(datum: &RootDatum, levi_node: usize, max_length: usize) -> Result<BTreeMap<usize, Vec<String>>> {
    Ok(minimal_coset_reps(datum, levi_node, max_length)?
        .into_iter()
        .enumerate()
        .map(|(p, ws)| (p, ws.iter().map(|w| w.render(datum)).collect()))
        .collect())
}
