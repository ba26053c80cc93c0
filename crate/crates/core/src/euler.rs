//! Dimension polynomials of lifted partitions and Euler characteristics of
//! lifted weight complexes.
//!
//! For `k > ν_1`, `k ↦ dim S_{(k,ν)}C^n` is a polynomial of degree `n−1` with
//! leading coefficient `dim S_ν C^{n−1} / (n−1)!`. A [`WeightComplex`] over
//! `W = C^{n−1}` lifts to `V = C^n` by prepending `k` to every summand, and
//! its Euler characteristic becomes a polynomial in `k`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{lift, schur_dim, Partition, Weight};
use crate::pieri::UKind;
use crate::weylkostant::{kostant_weights, RootDatum};

/// A polynomial in `k` with exact rational coefficients, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    coefficients: Vec<BigRational>,
}

fn q(x: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(x.into())
}

impl Polynomial {
    pub fn new(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Polynomial { coefficients }
    }

    pub fn from_integers(coefficients: &[i64]) -> Self {
        Polynomial::new(coefficients.iter().map(|&c| q(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coefficients.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, k: &BigRational) -> BigRational {
        self.coefficients.iter().rev().fold(BigRational::zero(), |acc, c| acc * k + c)
    }

    pub fn eval_int(&self, k: i64) -> BigRational {
        self.eval(&q(k))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let len = self.coefficients.len().max(other.coefficients.len());
        let z = BigRational::zero();
        Polynomial::new(
            (0..len)
                .map(|i| self.coefficients.get(i).unwrap_or(&z) + other.coefficients.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Polynomial::new(self.coefficients.iter().map(|x| x * c).collect())
    }

    fn mul_linear(&self, root: &BigRational) -> Polynomial {
        // (k − root) · self
        let mut out = vec![BigRational::zero(); self.coefficients.len() + 1];
        for (i, c) in self.coefficients.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * root;
        }
        Polynomial::new(out)
    }

    /// `c · Π (k − r)`.
    pub fn from_roots(c: i64, roots: &[i64]) -> Polynomial {
        roots.iter().fold(Polynomial::from_integers(&[c]), |p, &r| p.mul_linear(&BigRational::from_integer(r.into())))
    }

    /// The unique polynomial of degree `< points.len()` through the given points.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> Polynomial {
        let mut total = Polynomial::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Polynomial::new(vec![BigRational::one()]);
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul_linear(xj);
                    denom *= xi - xj;
                }
            }
            total = total.add(&basis.scale(&(yi / denom)));
        }
        total
    }

    /// Integer multiple with coprime integer coefficients and positive leading term.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        crate::exactla::rational::primitive(&self.coefficients)
            .into_iter()
            .map(|c| if self.leading().is_negative() { -c } else { c })
            .collect()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("k")?,
                _ => write!(f, "k^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            coefficients: Vec<String>,
            display: String,
        }
        Repr { coefficients: self.coefficients.iter().map(|c| c.to_string()).collect(), display: self.to_string() }
            .serialize(s)
    }
}

/// `k ↦ dim S_{(k,ν)}C^n`, valid for `k > threshold = ν_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimPolynomial {
    pub nu: Partition,
    pub n: usize,
    pub poly: Polynomial,
    pub threshold: u32,
}

fn factorial(m: usize) -> BigUint {
    (1..=m as u64).fold(BigUint::one(), |acc, x| acc * x)
}

fn lifted_dim(nu: &Partition, k: u32, n: usize) -> Result<BigUint> {
    Ok(schur_dim(&lift(nu, k)?, n))
}

pub fn dim_poly(nu: &Partition, n: usize) -> Result<DimPolynomial> {
    if n == 0 || nu.len() >= n {
        return Err(Error::Parameter(format!("{nu} needs at most n−1 rows to lift into dimension {n}")));
    }
    let l = nu.first();
    let points = (1..=n as u32)
        .map(|i| Ok((q(l + i), BigRational::from_integer(lifted_dim(nu, l + i, n)?.into()))))
        .collect::<Result<Vec<_>>>()?;
    let poly = Polynomial::interpolate(&points);
    let expected = BigRational::new(schur_dim(nu, n - 1).into(), factorial(n - 1).into());
    if poly.leading() != expected || poly.degree() != Some(n - 1) {
        return Err(Error::Inconsistent(format!(
            "leading coefficient of the dimension polynomial of {nu} is {}, expected {expected}",
            poly.leading()
        )));
    }
    Ok(DimPolynomial { nu: nu.clone(), n, poly, threshold: l })
}

/// One homological degree of a complex of free modules.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexTerm {
    pub degree: usize,
    pub weights: Vec<Partition>,
    /// Grading shift of the free module; ranks do not depend on it.
    #[serde(default, skip_serializing_if = "is_zero_i64")]
    pub twist: i64,
}

fn is_zero_i64(x: &i64) -> bool {
    *x == 0
}

/// A complex of free modules `⊕ S_ν W ⊗ B` over `W = C^{n_source}`, recorded by its weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightComplex {
    pub n_source: usize,
    pub terms: Vec<ComplexTerm>,
}

impl WeightComplex {
    /// `Σ (−1)^degree Σ dim S_ν W`.
    pub fn euler_characteristic(&self) -> BigInt {
        self.terms
            .iter()
            .map(|t| {
                let s: BigInt = t.weights.iter().map(|w| BigInt::from(schur_dim(w, self.n_source))).sum();
                if t.degree % 2 == 0 {
                    s
                } else {
                    -s
                }
            })
            .sum()
    }

    /// Largest first row of any summand.
    pub fn max_first_row(&self) -> u32 {
        self.terms.iter().flat_map(|t| &t.weights).map(Partition::first).max().unwrap_or(0)
    }

    /// `Σ (−1)^degree Σ dim S_{ν^k}C^n` computed directly.
    pub fn lifted_euler_at(&self, k: u32, n: usize) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for t in &self.terms {
            for w in &t.weights {
                let d = BigInt::from(lifted_dim(w, k, n)?);
                if t.degree % 2 == 0 {
                    total += d;
                } else {
                    total -= d;
                }
            }
        }
        Ok(total)
    }
}

/// Euler characteristic of the lifted complex, valid for `k > threshold`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerPolynomial {
    pub n: usize,
    pub poly: Polynomial,
    pub threshold: u32,
    /// Euler characteristic of the complex before lifting.
    pub source_euler: BigInt,
}

pub fn euler_poly(g: &WeightComplex, n: usize) -> Result<EulerPolynomial> {
    if n != g.n_source + 1 {
        log::warn!("lifting a complex over dimension {} into dimension {n}", g.n_source);
    }
    let mut poly = Polynomial::zero();
    for t in &g.terms {
        for w in &t.weights {
            let p = dim_poly(w, n)?.poly;
            poly = poly.add(&if t.degree % 2 == 0 { p } else { p.scale(&-BigRational::one()) });
        }
    }
    let chi: BigInt = g
        .terms
        .iter()
        .map(|t| {
            let s: BigInt = t.weights.iter().map(|w| BigInt::from(schur_dim(w, n - 1))).sum();
            if t.degree % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .sum();
    let expected = BigRational::new(chi, factorial(n - 1).into());
    let lead = poly.coefficients().get(n - 1).cloned().unwrap_or_else(BigRational::zero);
    if lead != expected || poly.degree().is_some_and(|d| d > n - 1) {
        return Err(Error::Inconsistent(format!("leading coefficient {lead} differs from χ/(n−1)! = {expected}")));
    }
    Ok(EulerPolynomial { n, poly, threshold: g.max_first_row(), source_euler: g.euler_characteristic() })
}

/// Integer roots of a polynomial above a threshold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalSet {
    pub threshold: i64,
    pub roots: Vec<i64>,
    pub guarantee: String,
}

/// Largest constant term whose divisors are enumerated by trial division.
const MAX_TRIAL_DIVISION: u128 = 1 << 80;

/// Integer roots `k > l` of `p`, by the rational-root test on the constant term.
pub fn exceptional_k(p: &Polynomial, l: i64) -> Result<ExceptionalSet> {
    if p.is_zero() {
        return Err(Error::Degenerate("the Euler polynomial is identically zero; the lift is inconclusive".into()));
    }
    let ints = p.primitive_integer();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let mut roots = Vec::new();
    if shift > 0 && l < 0 {
        roots.push(0);
    }
    let a0 = ints[shift].abs();
    let a0 = a0
        .to_u128()
        .filter(|&x| x <= MAX_TRIAL_DIVISION)
        .ok_or_else(|| Error::Budget(format!("constant term {a0} too large for divisor enumeration")))?;
    let mut d: u128 = 1;
    let mut candidates = Vec::new();
    while d * d <= a0 {
        if a0 % d == 0 {
            candidates.push(d);
            candidates.push(a0 / d);
        }
        d += 1;
    }
    candidates.sort_unstable();
    candidates.dedup();
    for c in candidates {
        let Ok(c) = i64::try_from(c) else { continue };
        for r in [-c, c] {
            if r > l && p.eval_int(r).is_zero() {
                roots.push(r);
            }
        }
    }
    roots.sort_unstable();
    roots.dedup();
    Ok(ExceptionalSet {
        threshold: l,
        guarantee: format!("non-minimality lifts for all k > {l} outside this set"),
        roots,
    })
}

/// `∧^p U` for `U = Sym²C^n` or `∧²C^n` as a complex with one summand per coset representative.
pub fn koszul_complex_weights(n: usize, u: UKind, max_degree: usize) -> Result<WeightComplex> {
    let datum = match u {
        UKind::Sym(2) => RootDatum::c(n)?,
        UKind::Wedge(2) => RootDatum::d(n)?,
        other => {
            return Err(Error::Parameter(format!("Koszul weights are available for sym2 and wedge2, not {other}")))
        }
    };
    let table = kostant_weights(&datum, n, &Weight::epsilon(vec![0; n]), max_degree)?;
    let mut terms: Vec<ComplexTerm> =
        (0..=max_degree).map(|degree| ComplexTerm { degree, weights: Vec::new(), twist: 0 }).collect();
    for e in table.entries {
        let p = e.partition.ok_or_else(|| Error::Inconsistent(format!("{} is not a partition", e.dual_opp)))?;
        terms[e.degree].weights.push(p);
    }
    terms.retain(|t| !t.weights.is_empty());
    Ok(WeightComplex { n_source: n, terms })
}

/// Binomial coefficient, for dimension checks on exterior powers.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn reduced(num: i64, den: i64) -> BigRational {
        BigRational::new(num.into(), den.into())
    }

    #[test]
    fn trivial_dim_poly() {
        let d = dim_poly(&Partition::empty(), 1).unwrap();
        assert_eq!(d.poly, Polynomial::from_integers(&[1]));
    }

    #[test]
    fn dim_poly_31() {
        let d = dim_poly(&p(&[3, 1]), 5).unwrap();
        assert_eq!(d.poly.degree(), Some(4));
        assert_eq!(d.poly.leading(), reduced(45, 24));
        assert_eq!(d.poly.eval_int(6), q(schur_dim(&p(&[6, 3, 1]), 5)));
        assert!(dim_poly(&p(&[1, 1, 1]), 3).is_err());
    }

    #[test]
    fn roots() {
        let e = exceptional_k(&Polynomial::from_integers(&[-4, 0, 1]), 0).unwrap();
        assert_eq!(e.roots, vec![2]);
        let e = exceptional_k(&Polynomial::from_integers(&[0, -7, 1]), 5).unwrap();
        assert_eq!(e.roots, vec![7]);
        let e = exceptional_k(&Polynomial::from_integers(&[-240, -72, 118, 78, 8]), 5).unwrap();
        assert!(e.roots.is_empty());
        assert!(matches!(exceptional_k(&Polynomial::zero(), 0), Err(Error::Degenerate(_))));
    }

    #[test]
    fn display() {
        assert_eq!(Polynomial::from_integers(&[-240, -72, 118, 78, 8]).to_string(), "8k^4+78k^3+118k^2-72k-240");
        assert_eq!(Polynomial::from_integers(&[0, 1]).to_string(), "k");
    }

    #[test]
    fn koszul_sym2_c4() {
        let g = koszul_complex_weights(4, UKind::Sym(2), 3).unwrap();
        assert_eq!(g.terms[0].weights, vec![Partition::empty()]);
        assert_eq!(g.terms[2].weights, vec![p(&[3, 1])]);
        let mut w3 = g.terms[3].weights.clone();
        w3.sort();
        assert_eq!(w3, vec![p(&[3, 3]), p(&[4, 1, 1])]);
        for t in &g.terms {
            let total: BigUint = t.weights.iter().map(|w| schur_dim(w, 4)).sum();
            assert_eq!(total, binomial(10, t.degree as u64));
        }
    }

    #[test]
    fn single_term() {
        let g =
            WeightComplex { n_source: 3, terms: vec![ComplexTerm { degree: 0, weights: vec![p(&[2, 1])], twist: 0 }] };
        assert_eq!(euler_poly(&g, 4).unwrap().poly, dim_poly(&p(&[2, 1]), 4).unwrap().poly);
    }
}
