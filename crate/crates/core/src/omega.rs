//! MacMahon partition analysis on exponent-bounded series.
//!
//! The crude form of `F^G(x, y)` encodes each vertex-sum constraint with an
//! elimination variable `λ_v`:
//!
//! ```text
//!           Π_v λ_v
//!   Ω=  ─────────────────────────────────────────────
//!        Π_k (1 - λ_u λ_w x_k) · (-y + Π_v λ_v)
//! ```
//!
//! one geometric factor per edge `k = (u, w)` and one special factor
//! `1/(L - h)` expanded as `L⁻¹ Σ (h/L)^j`. Eliminating the λ's (keeping
//! the λ-constant part) yields the magic labelling series.
//!
//! Everything here works on finite term maps with explicit caps, and every
//! retained coefficient is exact. Terms are pruned only when their λ
//! exponents provably cannot return to zero under the remaining factors,
//! so the Ω= result is the true truncation.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::graph::Graph;
use crate::series::MultiSeries;
use crate::{enumerate, Error, Result};

/// A monomial `λ^a x^b y^c`; λ exponents may be negative in series terms
/// but factor monomials keep them nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub lambdas: Vec<i64>,
    pub x: Vec<u32>,
    pub y: u32,
}

impl Monomial {
    pub fn one(num_lambdas: usize, num_x: usize) -> Self {
        Monomial { lambdas: vec![0; num_lambdas], x: vec![0; num_x], y: 0 }
    }

    fn fmt_into(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut wrote = false;
        let write_power = |f: &mut std::fmt::Formatter<'_>,
                               name: String,
                               exp: i64,
                               wrote: &mut bool|
         -> std::fmt::Result {
            if exp == 0 {
                return Ok(());
            }
            if *wrote {
                write!(f, " ")?;
            }
            *wrote = true;
            if exp == 1 {
                write!(f, "{name}")
            } else {
                write!(f, "{name}^{exp}")
            }
        };
        for (i, &e) in self.lambdas.iter().enumerate() {
            write_power(f, format!("l{}", i + 1), e, &mut wrote)?;
        }
        for (i, &e) in self.x.iter().enumerate() {
            write_power(f, format!("x{}", i + 1), e as i64, &mut wrote)?;
        }
        write_power(f, "y".to_string(), self.y as i64, &mut wrote)?;
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.fmt_into(f)
    }
}

/// Pre-elimination product representation of `F^G(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrudeForm {
    pub num_lambdas: usize,
    pub num_x: usize,
    pub numerator: Monomial,
    /// Each entry `g` stands for a factor `1/(1 - g)`.
    pub geometric: Vec<Monomial>,
    /// Each entry `(L, h)` stands for `1/(L - h) = L⁻¹ Σ (h/L)^j`.
    pub special: Vec<(Monomial, Monomial)>,
}

impl std::fmt::Display for CrudeForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / [", self.numerator)?;
        for g in &self.geometric {
            write!(f, " (1 - {g})")?;
        }
        for (l, h) in &self.special {
            write!(f, " ({l} - {h})")?;
        }
        write!(f, " ]")
    }
}

/// Builds the crude form of a graph: one λ per vertex, one geometric
/// factor `λ_u λ_w x_k` per edge (a loop contributes `λ_v` once, matching
/// the incidence convention), and the special factor `(Π λ_v, y)`.
pub fn crude_form(g: &Graph) -> CrudeForm {
    let m = g.num_vertices();
    let n = g.num_edges();
    let mut numerator = Monomial::one(m, n);
    for v in 0..m {
        numerator.lambdas[v] = 1;
    }
    let geometric = (1..=n)
        .map(|k| {
            let (u, w) = g.edge(k);
            let mut mono = Monomial::one(m, n);
            mono.lambdas[u - 1] += 1;
            if w != u {
                mono.lambdas[w - 1] += 1;
            }
            mono.x[k - 1] = 1;
            mono
        })
        .collect();
    let mut l = Monomial::one(m, n);
    for v in 0..m {
        l.lambdas[v] = 1;
    }
    let mut h = Monomial::one(m, n);
    h.y = 1;
    CrudeForm { num_lambdas: m, num_x: n, numerator, geometric, special: vec![(l, h)] }
}

/// Key of one Laurent term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentKey {
    pub lambdas: Vec<i64>,
    pub x: Vec<u32>,
    pub y: u32,
}

/// Finite Laurent series in the λ's over `ℕ`-graded x and y, with explicit
/// per-λ exponent caps and a y bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeriesBounded {
    pub num_lambdas: usize,
    pub num_x: usize,
    pub bound: u32,
    pub lambda_caps: Vec<i64>,
    terms: HashMap<LaurentKey, BigInt>,
}

impl LaurentSeriesBounded {
    pub fn new(num_lambdas: usize, num_x: usize, bound: u32, lambda_caps: Vec<i64>) -> Self {
        LaurentSeriesBounded { num_lambdas, num_x, bound, lambda_caps, terms: HashMap::new() }
    }

    pub fn add_term(&mut self, key: LaurentKey, coeff: BigInt) {
        debug_assert_eq!(key.lambdas.len(), self.num_lambdas);
        debug_assert_eq!(key.x.len(), self.num_x);
        debug_assert!(key.y <= self.bound);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LaurentKey, &BigInt)> {
        self.terms.iter()
    }
}

/// Per-λ running-exponent caps for a crude form at bound `S`: each special
/// factor `(L, h)` can subtract at most `(⌊S / deg_y h⌋ + 1) · L_v` from
/// `λ_v`, and that is the only way down, so anything larger can never
/// return to zero.
fn derive_caps(cf: &CrudeForm, bound: u32) -> Result<Vec<i64>> {
    for g in &cf.geometric {
        if g.lambdas.iter().any(|&e| e < 0) {
            return Err(Error::CapUnderivable(format!(
                "geometric factor {g} has a negative λ exponent"
            )));
        }
        if g.lambdas.iter().all(|&e| e == 0) && g.y == 0 {
            return Err(Error::CapUnderivable(format!(
                "geometric factor {g} has neither λ nor y degree; its expansion is unbounded"
            )));
        }
    }
    let mut caps = vec![0i64; cf.num_lambdas];
    for (l, h) in &cf.special {
        if l.x.iter().any(|&e| e > 0) || l.y > 0 {
            return Err(Error::CapUnderivable(format!(
                "special factor leading monomial {l} must be pure λ"
            )));
        }
        if l.lambdas.iter().any(|&e| e < 0) {
            return Err(Error::CapUnderivable(format!(
                "special factor leading monomial {l} has a negative λ exponent"
            )));
        }
        if h.lambdas.iter().any(|&e| e != 0) {
            return Err(Error::CapUnderivable(format!(
                "special factor subtracted monomial {h} must be λ-free"
            )));
        }
        if h.y == 0 {
            return Err(Error::CapUnderivable(format!(
                "special factor subtracted monomial {h} must have positive y degree"
            )));
        }
        let max_j = (bound / h.y) as i64;
        for (cap, &le) in caps.iter_mut().zip(&l.lambdas) {
            *cap += (max_j + 1) * le;
        }
    }
    Ok(caps)
}

/// Expands the crude form with `y <= bound` and the derived per-λ caps.
///
/// Geometric factors multiply in first (their λ exponents only grow), then
/// the special factors. Two prunes keep the state small, both sound for
/// the λ-constant part:
///
/// * a running λ exponent above its cap can never come back down to zero;
/// * once no remaining geometric factor touches a pair of λ's that every
///   special factor treats identically, their exponents must already agree.
pub fn expand_bounded(cf: &CrudeForm, bound: u32) -> Result<LaurentSeriesBounded> {
    let caps = derive_caps(cf, bound)?;
    let m = cf.num_lambdas;

    // The uniform-subtraction prune applies to λ pairs with identical
    // exponents in every special factor's leading monomial.
    let uniform_class: Vec<Vec<i64>> =
        (0..m).map(|v| cf.special.iter().map(|(l, _)| l.lambdas[v]).collect()).collect();

    // Process geometric factors in an order that settles λ's early.
    let mut factor_order: Vec<usize> = (0..cf.geometric.len()).collect();
    factor_order.sort_by_key(|&i| {
        cf.geometric[i].lambdas.iter().enumerate().filter(|(_, &e)| e > 0).map(|(v, _)| v).min()
    });

    let mut out = LaurentSeriesBounded::new(m, cf.num_x, bound, caps.clone());
    if cf.numerator.lambdas.iter().zip(&caps).any(|(&e, &c)| e > c) || cf.numerator.y > bound {
        return Ok(out);
    }
    let mut terms: HashMap<LaurentKey, BigInt> = HashMap::new();
    terms.insert(
        LaurentKey { lambdas: cf.numerator.lambdas.clone(), x: cf.numerator.x.clone(), y: cf.numerator.y },
        BigInt::from(1),
    );

    for (pos, &fi) in factor_order.iter().enumerate() {
        let g = &cf.geometric[fi];
        // λ's untouched by the factors still to come.
        let mut touched = vec![false; m];
        for &fj in &factor_order[pos + 1..] {
            for (t, &e) in touched.iter_mut().zip(&cf.geometric[fj].lambdas) {
                *t |= e > 0;
            }
        }
        let mut next: HashMap<LaurentKey, BigInt> = HashMap::new();
        for (key, coeff) in &terms {
            let mut lambdas = key.lambdas.clone();
            let mut x = key.x.clone();
            let mut y = key.y;
            loop {
                if settled_lambdas_agree(&lambdas, &touched, &uniform_class) {
                    let k = LaurentKey { lambdas: lambdas.clone(), x: x.clone(), y };
                    let entry = next.entry(k).or_insert_with(BigInt::zero);
                    *entry += coeff;
                }
                // take one more power of g
                for (lv, &ge) in lambdas.iter_mut().zip(&g.lambdas) {
                    *lv += ge;
                }
                for (xv, &ge) in x.iter_mut().zip(&g.x) {
                    *xv += ge;
                }
                y += g.y;
                if y > bound || lambdas.iter().zip(&caps).any(|(&l, &c)| l > c) {
                    break;
                }
            }
        }
        terms = next;
    }

    for (l, h) in &cf.special {
        let mut next: HashMap<LaurentKey, BigInt> = HashMap::new();
        for (key, coeff) in &terms {
            let mut j = 0u32;
            loop {
                let y = key.y + j * h.y;
                if y > bound {
                    break;
                }
                let lambdas: Vec<i64> = key
                    .lambdas
                    .iter()
                    .zip(&l.lambdas)
                    .map(|(&e, &le)| e - (j as i64 + 1) * le)
                    .collect();
                if lambdas.iter().zip(&caps).all(|(&e, &c)| e >= -c) {
                    let x: Vec<u32> = key.x.iter().zip(&h.x).map(|(&e, &he)| e + j * he).collect();
                    let k = LaurentKey { lambdas, x, y };
                    let entry = next.entry(k).or_insert_with(BigInt::zero);
                    *entry += coeff;
                }
                j += 1;
            }
        }
        terms = next;
    }

    for (key, coeff) in terms {
        if !coeff.is_zero() {
            out.terms.insert(key, coeff);
        }
    }
    Ok(out)
}

/// Settled λ's (untouched by the remaining geometric factors) receive only
/// the uniform subtractions of the special factors from here on. Two
/// settled λ's that every special treats identically must therefore agree
/// already, and a settled λ no special touches must already be zero.
fn settled_lambdas_agree(lambdas: &[i64], touched: &[bool], uniform_class: &[Vec<i64>]) -> bool {
    let mut seen: Vec<(&Vec<i64>, i64)> = Vec::new();
    for (v, (&e, &t)) in lambdas.iter().zip(touched).enumerate() {
        if t {
            continue;
        }
        let class = &uniform_class[v];
        if class.iter().all(|&le| le == 0) {
            if e != 0 {
                return false;
            }
            continue;
        }
        if let Some((_, exp)) = seen.iter().find(|(c, _)| *c == class) {
            if e != *exp {
                return false;
            }
        } else {
            seen.push((class, e));
        }
    }
    true
}

/// Keeps the terms with every λ exponent zero, dropping the λ's.
pub fn omega_eq(series: &LaurentSeriesBounded) -> MultiSeries {
    let mut out = MultiSeries::zero(series.num_x, series.bound);
    for (key, coeff) in series.iter() {
        if key.lambdas.iter().all(|&e| e == 0) {
            out.add_term(key.y, key.x.clone(), coeff.clone());
        }
    }
    out
}

/// Keeps the terms with every λ exponent nonnegative and sets λ = 1.
pub fn omega_geq(series: &LaurentSeriesBounded) -> MultiSeries {
    let mut out = MultiSeries::zero(series.num_x, series.bound);
    for (key, coeff) in series.iter() {
        if key.lambdas.iter().all(|&e| e >= 0) {
            out.add_term(key.y, key.x.clone(), coeff.clone());
        }
    }
    out
}

fn check_pair(series: &MultiSeries, i: usize, j: usize) {
    assert!(i != j, "diag needs two different edge indices");
    assert!(
        i >= 1 && i <= series.num_vars() && j >= 1 && j <= series.num_vars(),
        "edge index out of range"
    );
}

/// Keeps the terms with `α_i = α_j` (1-indexed).
pub fn diag_eq(series: &MultiSeries, i: usize, j: usize) -> MultiSeries {
    check_pair(series, i, j);
    series.filtered(|key| key.alpha[i - 1] == key.alpha[j - 1])
}

/// Keeps the terms with `α_i > α_j` (1-indexed).
pub fn diag_gt(series: &MultiSeries, i: usize, j: usize) -> MultiSeries {
    check_pair(series, i, j);
    series.filtered(|key| key.alpha[i - 1] > key.alpha[j - 1])
}

/// The Ω realization of [`diag_eq`]: tag the pair with a λ as
/// `λ^(α_i - α_j)` and take the λ-constant part. Exists to cross-check the
/// direct filter.
pub fn diag_eq_via_omega(series: &MultiSeries, i: usize, j: usize) -> MultiSeries {
    check_pair(series, i, j);
    omega_eq(&tag_pair(series, i, j, 0))
}

/// The Ω realization of [`diag_gt`]: `Ω≥ λ^(α_i - α_j - 1)` at λ = 1.
pub fn diag_gt_via_omega(series: &MultiSeries, i: usize, j: usize) -> MultiSeries {
    check_pair(series, i, j);
    omega_geq(&tag_pair(series, i, j, -1))
}

fn tag_pair(series: &MultiSeries, i: usize, j: usize, offset: i64) -> LaurentSeriesBounded {
    let mut cap = 0i64;
    let mut tagged = Vec::new();
    for (key, coeff) in series.iter() {
        let e = key.alpha[i - 1] as i64 - key.alpha[j - 1] as i64 + offset;
        cap = cap.max(e.abs());
        tagged.push((LaurentKey { lambdas: vec![e], x: key.alpha.clone(), y: key.s }, coeff.clone()));
    }
    let mut out = LaurentSeriesBounded::new(1, series.num_vars(), series.bound(), vec![cap]);
    for (key, coeff) in tagged {
        out.add_term(key, coeff);
    }
    out
}

/// Truncation of the distinct-labelling series `E^G(x, y)`: the terms of
/// `F^G` with pairwise-distinct exponents.
pub fn distinct_truncation(g: &Graph, max_sum: u64) -> MultiSeries {
    let f = enumerate::multivariate_truncation(g, max_sum);
    distinct_filter(&f)
}

pub(crate) fn distinct_filter(f: &MultiSeries) -> MultiSeries {
    f.filtered(|key| {
        let mut sorted = key.alpha.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    })
}

/// The literal inclusion-exclusion operator product
/// `Π_{i<j} (1 - diag_eq)` applied pairwise. Slow by design; exists only to
/// cross-validate [`distinct_truncation`] at small bounds.
pub fn distinct_truncation_slow(g: &Graph, max_sum: u64) -> MultiSeries {
    let mut f = enumerate::multivariate_truncation(g, max_sum);
    let n = g.num_edges();
    for i in 1..=n {
        for j in i + 1..=n {
            let equal_part = diag_eq(&f, i, j);
            f = f.sub(&equal_part).expect("bounds agree");
        }
    }
    f
}

/// Terms of `F^G` whose labels strictly decrease along `pi`.
pub fn ordered_truncation(g: &Graph, pi: &[usize], max_sum: u64) -> Result<MultiSeries> {
    let n = g.num_edges();
    if pi.len() != n || {
        let mut seen = vec![false; n + 1];
        pi.iter().any(|&e| e == 0 || e > n || std::mem::replace(&mut seen[e], true))
    } {
        return Err(Error::NotAPermutation(n));
    }
    let f = enumerate::multivariate_truncation(g, max_sum);
    Ok(f.filtered(|key| pi.windows(2).all(|w| key.alpha[w[0] - 1] > key.alpha[w[1] - 1])))
}
