//! Exact truncated series and rational generating functions.
//!
//! Univariate counting functions live in [`RationalGF`]: a polynomial
//! numerator over a denominator `∏ (1 - y^d)^m`. Multivariate data lives in
//! [`MultiSeries`]: a finite term map `(α, s) -> coefficient` truncated by
//! the y-degree `s`. Quasi-polynomials `h(s) = P(s) + (-1)^s Q(s)` are
//! fitted by exact linear solves; there are no tolerances in this module.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::graph::Graph;
use crate::linalg::{QMatrix, Rat};
use crate::monoid::Decomposition;
use crate::{Error, Result};

/// Dense integer polynomial in `y`; trailing zeros are trimmed, so
/// `degree = coeffs.len() - 1` (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// `1 - y^d`.
    pub fn one_minus_power(d: u32) -> UniPoly {
        let mut coeffs = vec![BigInt::zero(); d as usize + 1];
        coeffs[0] = BigInt::one();
        coeffs[d as usize] = -BigInt::one();
        UniPoly::new(coeffs)
    }
}

/// A univariate rational function `numerator / ∏ (1 - y^d)^mult`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    pub numerator: UniPoly,
    /// `(d, multiplicity)` pairs, sorted by `d`, multiplicities >= 1.
    pub factors: Vec<(u32, u32)>,
}

impl RationalGF {
    pub fn new(numerator: UniPoly, factors: Vec<(u32, u32)>) -> Self {
        let mut merged: BTreeMap<u32, u32> = BTreeMap::new();
        for (d, m) in factors {
            assert!(d >= 1 && m >= 1, "factors must have d >= 1 and multiplicity >= 1");
            *merged.entry(d).or_insert(0) += m;
        }
        RationalGF { numerator, factors: merged.into_iter().collect() }
    }

    pub fn denominator_degree(&self) -> usize {
        self.factors.iter().map(|&(d, m)| d as usize * m as usize).sum()
    }

    pub fn denominator_poly(&self) -> UniPoly {
        let mut den = UniPoly::one();
        for &(d, m) in &self.factors {
            for _ in 0..m {
                den = den.mul(&UniPoly::one_minus_power(d));
            }
        }
        den
    }
}

/// Power-series expansion of `gf` to degree `max_sum` inclusive.
pub fn expand_gf(gf: &RationalGF, max_sum: u64) -> Vec<BigInt> {
    let len = max_sum as usize + 1;
    let mut c = vec![BigInt::zero(); len];
    for (i, a) in gf.numerator.coeffs().iter().take(len).enumerate() {
        c[i] = a.clone();
    }
    // Dividing by (1 - y^d) is a running sum with stride d.
    for &(d, m) in &gf.factors {
        for _ in 0..m {
            for i in d as usize..len {
                let prev = c[i - d as usize].clone();
                c[i] += prev;
            }
        }
    }
    c
}

/// Recovers the numerator of `series / ∏ (1 - y^d)^mult` from an initial
/// coefficient run.
///
/// The candidate numerator is the truncated product of the series with the
/// expanded denominator. Coefficients above `len - 1 - deg(denominator)`
/// must vanish: they are the verification slack that distinguishes a
/// genuine ansatz from an accidental fit.
pub fn reconstruct_numerator(coeffs: &[BigInt], factors: &[(u32, u32)]) -> Result<UniPoly> {
    let gf = RationalGF::new(UniPoly::one(), factors.to_vec());
    let den = gf.denominator_poly();
    let deg_den = gf.denominator_degree();
    if coeffs.len() <= deg_den {
        return Err(Error::InsufficientTerms { need: deg_den, got: coeffs.len() });
    }
    let k = coeffs.len() - 1;
    let mut product = vec![BigInt::zero(); coeffs.len()];
    for (i, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in den.coeffs().iter().enumerate() {
            if i + j > k {
                break;
            }
            product[i + j] += a * b;
        }
    }
    let margin = k - deg_den;
    if let Some(bad) = (margin + 1..=k).find(|&j| !product[j].is_zero()) {
        return Err(Error::AnsatzMismatch { degree: bad, margin });
    }
    Ok(UniPoly::new(product))
}

/// Stanley form `h(s) = P(s) + (-1)^s Q(s)` with exact rational
/// coefficients. `q` empty means `Q = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub p: Vec<Rat>,
    pub q: Vec<Rat>,
}

impl QuasiPolynomial {
    pub fn eval(&self, s: u64) -> BigRational {
        let sv = BigRational::from_integer(BigInt::from(s));
        let horner = |cs: &[Rat]| {
            let mut acc = Rat::zero();
            for c in cs.iter().rev() {
                acc = acc * &sv + c;
            }
            acc
        };
        let mut val = horner(&self.p);
        if !self.q.is_empty() {
            let qv = horner(&self.q);
            if s.is_multiple_of(2) {
                val += qv;
            } else {
                val -= qv;
            }
        }
        val
    }

    pub fn q_is_zero(&self) -> bool {
        self.q.iter().all(Zero::is_zero)
    }
}

/// Fits `P` of degree `deg_p` and optionally `Q` of degree `deg_q` to the
/// exact values `h(0..=K)`, then validates the fit against every provided
/// value. Errors out when the degrees cannot reproduce the data.
pub fn fit_stanley(values: &[BigInt], deg_p: usize, deg_q: Option<usize>) -> Result<QuasiPolynomial> {
    let unknowns = deg_p + 1 + deg_q.map_or(0, |d| d + 1);
    if values.len() < unknowns + 1 {
        return Err(Error::InsufficientTerms { need: unknowns, got: values.len() });
    }
    let rows: Vec<Vec<Rat>> = (0..values.len())
        .map(|s| {
            let sv = BigRational::from_integer(BigInt::from(s));
            let sign = if s % 2 == 0 { Rat::one() } else { -Rat::one() };
            let mut row = Vec::with_capacity(unknowns);
            let mut power = Rat::one();
            for _ in 0..=deg_p {
                row.push(power.clone());
                power *= &sv;
            }
            if let Some(dq) = deg_q {
                let mut power = sign;
                for _ in 0..=dq {
                    row.push(power.clone());
                    power *= &sv;
                }
            }
            row
        })
        .collect();
    let matrix = QMatrix::from_rows(rows);
    let rhs: Vec<Rat> = values.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let solution = matrix.solve(&rhs).ok_or(Error::InconsistentFit)?;
    let qp = QuasiPolynomial {
        p: solution[..=deg_p].to_vec(),
        q: deg_q.map_or_else(Vec::new, |dq| solution[deg_p + 1..deg_p + 2 + dq].to_vec()),
    };
    for (s, v) in values.iter().enumerate() {
        if qp.eval(s as u64) != BigRational::from_integer(v.clone()) {
            return Err(Error::InconsistentFit);
        }
    }
    Ok(qp)
}

/// Key of one term `x^α y^s`; ordering is by `s` first, then `α`
/// lexicographically, which fixes the serialization order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub s: u32,
    pub alpha: Vec<u32>,
}

/// Exact multivariate series `Σ c · x^α y^s`, truncated at `s <= bound`.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    num_vars: usize,
    bound: u32,
    terms: BTreeMap<TermKey, BigInt>,
}

impl MultiSeries {
    pub fn zero(num_vars: usize, bound: u32) -> Self {
        MultiSeries { num_vars, bound, terms: BTreeMap::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, s: u32, alpha: Vec<u32>, coeff: BigInt) {
        assert!(s <= self.bound, "term beyond the truncation bound");
        assert_eq!(alpha.len(), self.num_vars, "exponent vector length mismatch");
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(TermKey { s, alpha }) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn coefficient(&self, s: u32, alpha: &[u32]) -> BigInt {
        self.terms
            .get(&TermKey { s, alpha: alpha.to_vec() })
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TermKey, &BigInt)> {
        self.terms.iter()
    }

    /// Keeps the terms satisfying `pred`.
    pub fn filtered(&self, mut pred: impl FnMut(&TermKey) -> bool) -> MultiSeries {
        let terms = self.terms.iter().filter(|(k, _)| pred(k)).map(|(k, c)| (k.clone(), c.clone())).collect();
        MultiSeries { num_vars: self.num_vars, bound: self.bound, terms }
    }

    pub fn add(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.combine(other, true)
    }

    fn combine(&self, other: &MultiSeries, negate: bool) -> Result<MultiSeries> {
        if self.bound != other.bound {
            return Err(Error::BoundMismatch(self.bound, other.bound));
        }
        if self.num_vars != other.num_vars {
            return Err(Error::VectorLength { got: other.num_vars, expected: self.num_vars });
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let add = if negate { -c.clone() } else { c.clone() };
            out.add_term(k.s, k.alpha.clone(), add);
        }
        Ok(out)
    }

    /// Sets every `x_i = 1`: the coefficient sums per y-degree.
    pub fn counts_by_sum(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.bound as usize + 1];
        for (k, c) in &self.terms {
            out[k.s as usize] += c;
        }
        out
    }

    /// One line per term: `s <TAB> α₁..αₙ <TAB> coeff`, in key order.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (k, c) in &self.terms {
            let alpha = k.alpha.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
            out.push_str(&format!("{}\t{}\t{}\n", k.s, alpha, c));
        }
        out
    }
}

/// One differing term of a series comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDiff {
    pub key: TermKey,
    pub left: BigInt,
    pub right: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesComparison {
    pub equal: bool,
    /// At most the first 10 differing exponent vectors.
    pub diffs: Vec<TermDiff>,
}

/// Termwise equality with a bounded diff report. Errors when the
/// truncation bounds differ.
pub fn series_equal(a: &MultiSeries, b: &MultiSeries) -> Result<SeriesComparison> {
    if a.bound != b.bound {
        return Err(Error::BoundMismatch(a.bound, b.bound));
    }
    if a.num_vars != b.num_vars {
        return Err(Error::VectorLength { got: b.num_vars, expected: a.num_vars });
    }
    let mut diffs = Vec::new();
    let mut keys: Vec<&TermKey> = a.terms.keys().chain(b.terms.keys()).collect();
    keys.sort();
    keys.dedup();
    for key in keys {
        if diffs.len() >= 10 {
            break;
        }
        let left = a.terms.get(key).cloned().unwrap_or_else(BigInt::zero);
        let right = b.terms.get(key).cloned().unwrap_or_else(BigInt::zero);
        if left != right {
            diffs.push(TermDiff { key: key.clone(), left, right });
        }
    }
    Ok(SeriesComparison { equal: diffs.is_empty(), diffs })
}

/// Expands a shifted-free-monoid decomposition as a y-truncated series:
/// each piece contributes `x^shift y^{s(shift)} · ∏ 1/(1 - x^gen y^{s(gen)})`.
///
/// Every generator must be magic with positive magic sum, otherwise the
/// truncation would not be finite.
pub fn decomposition_to_truncation(g: &Graph, decomp: &Decomposition, max_sum: u32) -> Result<MultiSeries> {
    let mut series = MultiSeries::zero(g.num_edges(), max_sum);
    for piece in decomp.pieces() {
        expand_piece(g, piece.shift(), piece.generators(), max_sum, &mut series)?;
    }
    Ok(series)
}

/// Expands a single shifted geometric product into `series`.
pub(crate) fn expand_piece(
    g: &Graph,
    shift: &[u32],
    generators: &[Vec<u32>],
    max_sum: u32,
    series: &mut MultiSeries,
) -> Result<()> {
    let shift_lab = crate::graph::Labelling(shift.to_vec());
    let shift_sum = g.is_magic(&shift_lab)?.ok_or(Error::NotMagic)?;
    let mut gen_sums = Vec::with_capacity(generators.len());
    for gen in generators {
        let lab = crate::graph::Labelling(gen.clone());
        let sum = g.is_magic(&lab)?.ok_or(Error::NotMagic)?;
        if sum == 0 {
            return Err(Error::ZeroSumGenerator);
        }
        gen_sums.push(sum as u32);
    }
    if shift_sum > max_sum as u64 {
        return Ok(());
    }
    let mut alpha: Vec<u32> = shift.to_vec();
    expand_piece_rec(generators, &gen_sums, 0, &mut alpha, shift_sum as u32, max_sum, series);
    Ok(())
}

fn expand_piece_rec(
    generators: &[Vec<u32>],
    gen_sums: &[u32],
    idx: usize,
    alpha: &mut Vec<u32>,
    s: u32,
    max_sum: u32,
    series: &mut MultiSeries,
) {
    if idx == generators.len() {
        series.add_term(s, alpha.clone(), BigInt::one());
        return;
    }
    // multiplicity 0 of this generator
    expand_piece_rec(generators, gen_sums, idx + 1, alpha, s, max_sum, series);
    let mut s = s;
    let mut taken = 0u32;
    while s + gen_sums[idx] <= max_sum {
        s += gen_sums[idx];
        taken += 1;
        for (a, gval) in alpha.iter_mut().zip(&generators[idx]) {
            *a += gval;
        }
        expand_piece_rec(generators, gen_sums, idx + 1, alpha, s, max_sum, series);
    }
    for _ in 0..taken {
        for (a, gval) in alpha.iter_mut().zip(&generators[idx]) {
            *a -= gval;
        }
    }
}
