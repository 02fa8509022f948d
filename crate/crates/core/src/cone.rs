//! Exact rational geometry of the magic cone
//! `{(α, s) ≥ 0 : A(α,s)ᵀ = 0}`: nullspace bases, extreme rays by the
//! incremental double description method, and Fourier-Motzkin feasibility
//! for the ordering cones behind distinct-labelling counts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::graph::{ConstraintSystem, Graph};
use crate::linalg::{primitive_integer, rat, QMatrix, Rat};
use crate::monoid::MonoidPiece;
use crate::{Error, Result};

/// A primitive integer extreme ray of the magic cone; `direction` has
/// `n + 1` entries (the α-part followed by the s-part), gcd 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ray {
    pub direction: Vec<u64>,
}

/// A basis of `{x : Ax = 0}` by exact Gaussian elimination. The dimension
/// is `(n+1) - rank(A)`.
pub fn nullspace_basis(cs: &ConstraintSystem) -> Vec<Vec<BigRational>> {
    let rows: Vec<Vec<i64>> = (0..cs.rows()).map(|i| cs.row(i).to_vec()).collect();
    QMatrix::from_int_rows(&rows).nullspace()
}

/// The complete minimal set of primitive extreme rays of the magic cone,
/// sorted lexicographically.
pub fn extreme_rays(g: &Graph) -> Vec<Ray> {
    let order: Vec<usize> = (0..g.num_edges() + 1).collect();
    extreme_rays_with_order(g, &order)
}

/// Double description with an explicit halfspace insertion order; the
/// result is independent of the order (tested), the knob exists for
/// exactly that test.
pub fn extreme_rays_with_order(g: &Graph, order: &[usize]) -> Vec<Ray> {
    let cs = g.constraint_matrix();
    let dim = cs.cols();
    let a_rows: Vec<Vec<i64>> = (0..cs.rows()).map(|i| cs.row(i).to_vec()).collect();
    let a = QMatrix::from_int_rows(&a_rows);

    let mut lineality: Vec<Vec<BigInt>> = a.nullspace().iter().map(|v| primitive_integer(v)).collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut processed: Vec<usize> = Vec::new();

    for &k in order {
        if let Some(idx) = lineality.iter().position(|l| !l[k].is_zero()) {
            // Use one lineality generator to absorb the halfspace: it turns
            // into a ray, everything else is projected onto x_k = 0.
            let mut l0 = lineality.remove(idx);
            if l0[k].is_negative() {
                for x in &mut l0 {
                    *x = -x.clone();
                }
            }
            let v0 = l0[k].clone();
            for l in &mut lineality {
                *l = project(l, &l0, &v0, k);
            }
            for r in &mut rays {
                *r = project(r, &l0, &v0, k);
            }
            dedup_vectors(&mut rays);
            rays.push(l0);
        } else {
            let plus: Vec<Vec<BigInt>> =
                rays.iter().filter(|r| r[k].is_positive()).cloned().collect();
            let minus: Vec<Vec<BigInt>> =
                rays.iter().filter(|r| r[k].is_negative()).cloned().collect();
            let mut next: Vec<Vec<BigInt>> =
                rays.iter().filter(|r| !r[k].is_negative()).cloned().collect();
            for p in &plus {
                for m in &minus {
                    if !adjacent(&a, p, m, &processed, dim, lineality.len()) {
                        continue;
                    }
                    let combo: Vec<BigInt> =
                        (0..dim).map(|j| &p[k] * &m[j] - &m[k] * &p[j]).collect();
                    let combo = primitive_bigint(&combo);
                    if combo.iter().any(|x| !x.is_zero()) {
                        next.push(combo);
                    }
                }
            }
            dedup_vectors(&mut next);
            rays = next;
        }
        processed.push(k);
    }
    debug_assert!(lineality.is_empty(), "coordinate halfspaces consume all lineality");

    // Rank-based extremality filter: a ray is extreme iff its zero
    // coordinates pin down a one-dimensional face.
    let mut out: Vec<Ray> = rays
        .into_iter()
        .filter(|r| face_dimension(&a, r, dim) == 1)
        .map(|r| Ray {
            direction: r
                .iter()
                .map(|x| u64::try_from(x).expect("primitive ray entry fits in u64"))
                .collect(),
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `v0 * v - v[k] * l0`, gcd-reduced. Sends `v` onto `x_k = 0` without
/// leaving the nullspace or reversing its orientation.
fn project(v: &[BigInt], l0: &[BigInt], v0: &BigInt, k: usize) -> Vec<BigInt> {
    let f = v[k].clone();
    let raw: Vec<BigInt> = v.iter().zip(l0).map(|(a, b)| v0 * a - &f * b).collect();
    primitive_bigint(&raw)
}

/// Divides by the gcd without touching the sign: ray directions have a
/// meaningful orientation, unlike lineality generators.
fn primitive_bigint(v: &[BigInt]) -> Vec<BigInt> {
    use num_integer::Integer;
    let mut gcd = BigInt::zero();
    for x in v {
        gcd = gcd.gcd(x);
    }
    if gcd.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &gcd).collect()
}

fn dedup_vectors(v: &mut Vec<Vec<BigInt>>) {
    v.sort();
    v.dedup();
}

/// Dimension of `{x : Ax = 0, x_j = 0 for all j in zero_coords}`.
fn zero_set_face_dim(a: &QMatrix, zero_coords: &[usize], dim: usize) -> usize {
    let mut rows: Vec<Vec<Rat>> = (0..a.rows).map(|i| a.row(i).to_vec()).collect();
    for &j in zero_coords {
        let mut unit = vec![Rat::zero(); dim];
        unit[j] = rat(1);
        rows.push(unit);
    }
    dim - QMatrix::from_rows(rows).rank()
}

fn face_dimension(a: &QMatrix, r: &[BigInt], dim: usize) -> usize {
    let zero_coords: Vec<usize> = (0..dim).filter(|&j| r[j].is_zero()).collect();
    zero_set_face_dim(a, &zero_coords, dim)
}

/// Algebraic adjacency: the smallest face containing both rays must be
/// two-dimensional (plus the current lineality).
fn adjacent(
    a: &QMatrix,
    p: &[BigInt],
    m: &[BigInt],
    processed: &[usize],
    dim: usize,
    lineality_dim: usize,
) -> bool {
    let common: Vec<usize> =
        processed.iter().copied().filter(|&j| p[j].is_zero() && m[j].is_zero()).collect();
    zero_set_face_dim(a, &common, dim) == 2 + lineality_dim
}

/// Rational feasibility witness check: is `point` a nonnegative rational
/// combination of `rays`?
pub fn in_ray_hull(rays: &[Ray], point: &[u64]) -> bool {
    if rays.is_empty() {
        return point.iter().all(|&x| x == 0);
    }
    let num_rays = rays.len();
    let mut sys = InequalitySystem::new(num_rays);
    for (j, &pj) in point.iter().enumerate() {
        let coeffs: Vec<Rat> = rays.iter().map(|r| rat(r.direction[j] as i64)).collect();
        sys.equalities.push(LinearForm { coeffs, constant: -rat(pj as i64) });
    }
    for i in 0..num_rays {
        sys.weak.push(LinearForm::unit(num_rays, i));
    }
    fm_feasible(&sys)
}

/// An affine form `coeffs · x + constant`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

impl LinearForm {
    pub fn zero(num_vars: usize) -> Self {
        LinearForm { coeffs: vec![Rat::zero(); num_vars], constant: Rat::zero() }
    }

    pub fn unit(num_vars: usize, var: usize) -> Self {
        let mut f = LinearForm::zero(num_vars);
        f.coeffs[var] = rat(1);
        f
    }

    pub fn from_i64(coeffs: &[i64], constant: i64) -> Self {
        LinearForm { coeffs: coeffs.iter().map(|&c| rat(c)).collect(), constant: rat(constant) }
    }

}

/// `equalities = 0`, `weak >= 0`, `strict > 0`.
#[derive(Debug, Clone, Default)]
pub struct InequalitySystem {
    pub num_vars: usize,
    pub equalities: Vec<LinearForm>,
    pub weak: Vec<LinearForm>,
    pub strict: Vec<LinearForm>,
}

impl InequalitySystem {
    pub fn new(num_vars: usize) -> Self {
        InequalitySystem { num_vars, equalities: Vec::new(), weak: Vec::new(), strict: Vec::new() }
    }
}

#[derive(Clone)]
struct FmRow {
    coeffs: Vec<Rat>,
    constant: Rat,
    strict: bool,
}

impl FmRow {
    /// Scale so the leading nonzero coefficient is ±1; constant rows scale
    /// to constant ±1. Keeps comparisons cheap and catches duplicates.
    fn normalize(&mut self) {
        let lead = self.coeffs.iter().find(|c| !c.is_zero()).cloned();
        let scale = match lead {
            Some(c) => c.abs(),
            None => {
                if self.constant.is_zero() {
                    return;
                }
                self.constant.abs()
            }
        };
        for c in &mut self.coeffs {
            *c /= &scale;
        }
        self.constant /= &scale;
    }
}

/// Exact rational feasibility by Fourier-Motzkin elimination.
///
/// Equalities are eliminated by substitution first; then variables are
/// eliminated one at a time, combining lower and upper bounds
/// (strict + weak gives strict). Feasible iff no contradictory constant
/// row survives.
pub fn fm_feasible(sys: &InequalitySystem) -> bool {
    let n = sys.num_vars;
    let mut equalities: Vec<FmRow> = sys
        .equalities
        .iter()
        .map(|f| FmRow { coeffs: f.coeffs.clone(), constant: f.constant.clone(), strict: false })
        .collect();
    let mut rows: Vec<FmRow> = sys
        .weak
        .iter()
        .map(|f| (f, false))
        .chain(sys.strict.iter().map(|f| (f, true)))
        .map(|(f, strict)| FmRow { coeffs: f.coeffs.clone(), constant: f.constant.clone(), strict })
        .collect();
    debug_assert!(
        equalities.iter().chain(rows.iter()).all(|r| r.coeffs.len() == n),
        "all forms must have num_vars coefficients"
    );

    // Substitute equalities away.
    while let Some(pos) = equalities.iter().position(|e| !e.coeffs.iter().all(Zero::is_zero)) {
        let eq = equalities.remove(pos);
        let var = eq.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let pivot = eq.coeffs[var].clone();
        let reduce = |row: &mut FmRow| {
            if row.coeffs[var].is_zero() {
                return;
            }
            let f = row.coeffs[var].clone() / &pivot;
            for (c, e) in row.coeffs.iter_mut().zip(&eq.coeffs) {
                *c -= &f * e;
            }
            row.constant -= &f * &eq.constant;
        };
        equalities.iter_mut().for_each(reduce);
        rows.iter_mut().for_each(reduce);
    }
    // Degenerate equalities must hold identically.
    if equalities.iter().any(|e| !e.constant.is_zero()) {
        return false;
    }

    loop {
        // Constant rows are verdicts; drop the satisfied ones.
        let mut contradiction = false;
        rows.retain(|r| {
            if !r.coeffs.iter().all(Zero::is_zero) {
                return true;
            }
            let bad = r.constant.is_negative() || (r.strict && r.constant.is_zero());
            contradiction |= bad;
            false
        });
        if contradiction {
            return false;
        }
        for r in &mut rows {
            r.normalize();
        }
        drop_redundant(&mut rows);

        // Pick the variable with the cheapest elimination.
        let mut best: Option<(usize, usize)> = None;
        for v in 0..n {
            let pos = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
            let neg = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
            if pos + neg == 0 {
                continue;
            }
            let cost = pos * neg;
            if best.is_none_or(|(c, _)| cost < c) {
                best = Some((cost, v));
            }
        }
        let Some((_, var)) = best else {
            // No variable left in any row: every remaining row was a
            // satisfied constant, so the system is feasible.
            return true;
        };

        let (lower, rest): (Vec<FmRow>, Vec<FmRow>) =
            rows.into_iter().partition(|r| r.coeffs[var].is_positive());
        let (upper, keep): (Vec<FmRow>, Vec<FmRow>) =
            rest.into_iter().partition(|r| r.coeffs[var].is_negative());
        let mut next = keep;
        for lo in &lower {
            for up in &upper {
                // lo.coeffs[var] > 0, up.coeffs[var] < 0; the positive
                // combination below cancels the variable.
                let a = lo.coeffs[var].clone();
                let b = -up.coeffs[var].clone();
                let coeffs: Vec<Rat> = lo
                    .coeffs
                    .iter()
                    .zip(&up.coeffs)
                    .map(|(l, u)| &b * l + &a * u)
                    .collect();
                let constant = &b * &lo.constant + &a * &up.constant;
                next.push(FmRow { coeffs, constant, strict: lo.strict || up.strict });
            }
        }
        rows = next;
    }
}

/// Duplicate and dominated-row control: identical coefficient vectors keep
/// only the tightest constraint.
///
/// Rows mean `coeffs·x >= -constant` (or `>`); after sorting by
/// (coeffs, constant, strict-first), the first row of a coefficient group
/// is the strongest: a strictly smaller constant implies every later row
/// outright, and at equal constants strict implies weak.
fn drop_redundant(rows: &mut Vec<FmRow>) {
    rows.sort_by(|a, b| {
        a.coeffs
            .cmp(&b.coeffs)
            .then_with(|| a.constant.cmp(&b.constant))
            .then_with(|| b.strict.cmp(&a.strict))
    });
    rows.dedup_by(|later, first| later.coeffs == first.coeffs);
}

/// Chain system for `order_feasible`, expressed in nullspace coordinates.
fn chain_system(coord_forms: &[Vec<Rat>], prefix: &[usize], dim: usize) -> InequalitySystem {
    let mut sys = InequalitySystem::new(dim);
    for form in coord_forms {
        sys.weak.push(LinearForm { coeffs: form.clone(), constant: Rat::zero() });
    }
    for pair in prefix.windows(2) {
        let hi = &coord_forms[pair[0] - 1];
        let lo = &coord_forms[pair[1] - 1];
        let coeffs: Vec<Rat> = hi.iter().zip(lo).map(|(h, l)| h - l).collect();
        sys.strict.push(LinearForm { coeffs, constant: Rat::zero() });
    }
    sys
}

/// Coordinate forms of the magic cone over its nullspace parameters: row j
/// gives `α_j` (or `s` for the last row) as a linear form in the
/// parameters.
fn nullspace_coordinate_forms(g: &Graph) -> Vec<Vec<Rat>> {
    let basis = nullspace_basis(&g.constraint_matrix());
    let dim = basis.len();
    let coords = g.num_edges() + 1;
    (0..coords).map(|j| (0..dim).map(|i| basis[i][j].clone()).collect()).collect()
}

fn validate_permutation(pi: &[usize], n: usize) -> Result<()> {
    if pi.len() != n {
        return Err(Error::NotAPermutation(n));
    }
    let mut seen = vec![false; n];
    for &e in pi {
        if e == 0 || e > n || seen[e - 1] {
            return Err(Error::NotAPermutation(n));
        }
        seen[e - 1] = true;
    }
    Ok(())
}

/// True iff some rational (equivalently integer, by scaling) magic
/// labelling satisfies `α_{π1} > α_{π2} > ... > α_{πn} >= 0`.
pub fn order_feasible(g: &Graph, pi: &[usize]) -> Result<bool> {
    validate_permutation(pi, g.num_edges())?;
    let forms = nullspace_coordinate_forms(g);
    let dim = forms.first().map_or(0, Vec::len);
    Ok(fm_feasible(&chain_system(&forms, pi, dim)))
}

/// All permutations with a feasible ordering cone, by depth-first search
/// over prefix chains: a prefix that is already infeasible prunes every
/// extension. Output in lexicographic order.
pub fn feasible_orders(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.num_edges();
    let forms = nullspace_coordinate_forms(g);
    let dim = forms.first().map_or(0, Vec::len);
    let results: Vec<Vec<Vec<usize>>> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut prefix = vec![first];
            let mut used = vec![false; n + 1];
            used[first] = true;
            orders_dfs(&forms, dim, n, &mut prefix, &mut used, &mut out);
            out
        })
        .collect();
    results.into_iter().flatten().collect()
}

fn orders_dfs(
    forms: &[Vec<Rat>],
    dim: usize,
    n: usize,
    prefix: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    if prefix.len() >= 2 && !fm_feasible(&chain_system(forms, prefix, dim)) {
        return;
    }
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for e in 1..=n {
        if used[e] {
            continue;
        }
        used[e] = true;
        prefix.push(e);
        orders_dfs(forms, dim, n, prefix, used, out);
        prefix.pop();
        used[e] = false;
    }
}

/// Chain system for a monoid piece, over its coefficient parameters
/// `l ∈ ℚ₊^d`, with the shift folded into the constants.
fn piece_chain_system(piece: &MonoidPiece, prefix: &[usize]) -> InequalitySystem {
    let d = piece.num_generators();
    let mut sys = InequalitySystem::new(d);
    for i in 0..d {
        sys.weak.push(LinearForm::unit(d, i));
    }
    for pair in prefix.windows(2) {
        let (hi, lo) = (pair[0] - 1, pair[1] - 1);
        let coeffs: Vec<Rat> = piece
            .generators()
            .iter()
            .map(|g| rat(g[hi] as i64 - g[lo] as i64))
            .collect();
        let constant = rat(piece.shift()[hi] as i64 - piece.shift()[lo] as i64);
        sys.strict.push(LinearForm { coeffs, constant });
    }
    sys
}

/// True iff some `l ∈ ℚ₊^d` gives the piece's labelling a strict chain
/// along `pi`.
pub fn piece_order_feasible(piece: &MonoidPiece, pi: &[usize]) -> Result<bool> {
    validate_permutation(pi, piece.num_vars())?;
    Ok(fm_feasible(&piece_chain_system(piece, pi)))
}

/// Feasible permutations of one piece, pruned prefix search as in
/// [`feasible_orders`].
pub fn piece_feasible_orders(piece: &MonoidPiece) -> Vec<Vec<usize>> {
    let n = piece.num_vars();
    let results: Vec<Vec<Vec<usize>>> = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut prefix = vec![first];
            let mut used = vec![false; n + 1];
            used[first] = true;
            piece_orders_dfs(piece, n, &mut prefix, &mut used, &mut out);
            out
        })
        .collect();
    results.into_iter().flatten().collect()
}

fn piece_orders_dfs(
    piece: &MonoidPiece,
    n: usize,
    prefix: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    if prefix.len() >= 2 && !fm_feasible(&piece_chain_system(piece, prefix)) {
        return;
    }
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for e in 1..=n {
        if used[e] {
            continue;
        }
        used[e] = true;
        prefix.push(e);
        piece_orders_dfs(piece, n, prefix, used, out);
        prefix.pop();
        used[e] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate;
    use crate::graph::catalog_graph;
    use crate::monoid::{g1_alphas, g2_betas, g3_gammas};

    fn ray_of(alpha: &[u32], s: u64) -> Ray {
        let mut direction: Vec<u64> = alpha.iter().map(|&x| x as u64).collect();
        direction.push(s);
        Ray { direction }
    }

    #[test]
    fn nullspace_dimensions() {
        for (name, dim) in [("G1", 3), ("G2", 4), ("G3", 5), ("G4", 5)] {
            let g = catalog_graph(name).unwrap();
            assert_eq!(nullspace_basis(&g.constraint_matrix()).len(), dim, "{name}");
        }
    }

    #[test]
    fn g1_rays_are_the_three_matchings() {
        let g = catalog_graph("G1").unwrap();
        let rays = extreme_rays(&g);
        let mut expected: Vec<Ray> = g1_alphas().iter().map(|a| ray_of(a, 1)).collect();
        expected.sort();
        assert_eq!(rays, expected);
    }

    #[test]
    fn g3_rays_are_the_eight_gammas() {
        let g = catalog_graph("G3").unwrap();
        let rays = extreme_rays(&g);
        let mut expected: Vec<Ray> = g3_gammas()
            .iter()
            .map(|gamma| {
                let s = catalog_graph("G3")
                    .unwrap()
                    .is_magic(&crate::graph::Labelling(gamma.clone()))
                    .unwrap()
                    .unwrap();
                ray_of(gamma, s)
            })
            .collect();
        expected.sort();
        assert_eq!(rays, expected);
    }

    #[test]
    fn g2_rays_contain_the_four_matchings()  {
        let g = catalog_graph("G2").unwrap();
        let rays = extreme_rays(&g);
        let [b1, b2, b3, b4, _] = g2_betas();
        for beta in [b1, b2, b3, b4] {
            assert!(rays.contains(&ray_of(&beta, 1)), "missing {beta:?}");
        }
    }

    #[test]
    fn g5a_cone_is_trivial() {
        let g = catalog_graph("G5a").unwrap();
        assert!(extreme_rays(&g).is_empty());
    }

    #[test]
    fn g5b_single_ray() {
        let g = catalog_graph("G5b").unwrap();
        let rays = extreme_rays(&g);
        assert_eq!(rays, vec![Ray { direction: vec![1, 0, 0, 1, 1] }]);
    }

    #[test]
    fn rays_are_magic_and_insertion_order_independent() {
        for name in ["G1", "G2", "G3", "G4"] {
            let g = catalog_graph(name).unwrap();
            let rays = extreme_rays(&g);
            for ray in &rays {
                let alpha = crate::graph::Labelling(
                    ray.direction[..g.num_edges()].iter().map(|&x| x as u32).collect(),
                );
                let s = *ray.direction.last().unwrap();
                assert_eq!(g.is_magic(&alpha).unwrap(), Some(s), "{name} {ray:?}");
            }
            let reversed: Vec<usize> = (0..g.num_edges() + 1).rev().collect();
            let rays_rev = extreme_rays_with_order(&g, &reversed);
            assert_eq!(rays, rays_rev, "{name}");
        }
    }

    #[test]
    fn enumerated_labellings_lie_in_the_ray_hull() {
        for name in ["G1", "G2", "G3", "G4", "G5b"] {
            let g = catalog_graph(name).unwrap();
            let rays = extreme_rays(&g);
            for s in 0..=3u64 {
                for lab in enumerate::enumerate_magic(&g, s) {
                    let mut point: Vec<u64> = lab.0.iter().map(|&x| x as u64).collect();
                    point.push(s);
                    assert!(in_ray_hull(&rays, &point), "{name} {lab} s={s}");
                }
            }
        }
    }

    #[test]
    fn fm_trivial_cases() {
        // {x > 0, -x >= 0} infeasible
        let mut sys = InequalitySystem::new(1);
        sys.strict.push(LinearForm::from_i64(&[1], 0));
        sys.weak.push(LinearForm::from_i64(&[-1], 0));
        assert!(!fm_feasible(&sys));

        // {x > y, y > 0} feasible
        let mut sys = InequalitySystem::new(2);
        sys.strict.push(LinearForm::from_i64(&[1, -1], 0));
        sys.strict.push(LinearForm::from_i64(&[0, 1], 0));
        assert!(fm_feasible(&sys));
    }

    #[test]
    fn fm_affine_cases() {
        // 0 < x < 1 is rationally feasible
        let mut sys = InequalitySystem::new(1);
        sys.strict.push(LinearForm::from_i64(&[1], 0));
        sys.strict.push(LinearForm::from_i64(&[-1], 1));
        assert!(fm_feasible(&sys));

        // x > 1 and x < 1 is not
        let mut sys = InequalitySystem::new(1);
        sys.strict.push(LinearForm::from_i64(&[1], -1));
        sys.strict.push(LinearForm::from_i64(&[-1], 1));
        assert!(!fm_feasible(&sys));

        // equality substitution: x = 2, x >= 3 infeasible
        let mut sys = InequalitySystem::new(1);
        sys.equalities.push(LinearForm::from_i64(&[1], -2));
        sys.weak.push(LinearForm::from_i64(&[1], -3));
        assert!(!fm_feasible(&sys));
    }

    #[test]
    fn g3_alpha2_never_exceeds_alpha6() {
        // α2 = α6 on the whole cone, so α2 > α6 is infeasible.
        let g = catalog_graph("G3").unwrap();
        let forms = nullspace_coordinate_forms(&g);
        let dim = forms[0].len();
        let mut sys = InequalitySystem::new(dim);
        for form in &forms {
            sys.weak.push(LinearForm { coeffs: form.clone(), constant: Rat::zero() });
        }
        let coeffs: Vec<Rat> = forms[1].iter().zip(&forms[5]).map(|(a, b)| a - b).collect();
        sys.strict.push(LinearForm { coeffs, constant: Rat::zero() });
        assert!(!fm_feasible(&sys));
    }

    #[test]
    fn g1_and_g5b_have_no_feasible_orders() {
        let g1 = catalog_graph("G1").unwrap();
        assert!(feasible_orders(&g1).is_empty());
        let g5b = catalog_graph("G5b").unwrap();
        assert!(feasible_orders(&g5b).is_empty());
    }

    #[test]
    fn single_generator_equal_coordinates_infeasible() {
        // A piece generated by e1 + e2 can never order edge 1 above edge 2.
        let piece = MonoidPiece::new(vec![0, 0], vec![vec![1, 1]]).unwrap();
        assert!(!piece_order_feasible(&piece, &[1, 2]).unwrap());
        assert!(!piece_order_feasible(&piece, &[2, 1]).unwrap());
    }

    #[test]
    fn permutation_validation() {
        let g = catalog_graph("G1").unwrap();
        assert!(matches!(order_feasible(&g, &[1, 2, 3]), Err(Error::NotAPermutation(6))));
        assert!(matches!(order_feasible(&g, &[1, 1, 2, 3, 4, 5]), Err(Error::NotAPermutation(6))));
    }

    mod properties {
        use super::super::*;
        use proptest::prelude::*;

        #[derive(Debug, Clone)]
        struct SmallSystem {
            num_vars: usize,
            rows: Vec<(Vec<i64>, i64, bool)>,
        }

        fn small_system() -> impl Strategy<Value = SmallSystem> {
            (1usize..=3).prop_flat_map(|num_vars| {
                let row = (
                    proptest::collection::vec(-2i64..=2, num_vars),
                    -2i64..=2,
                    proptest::bool::ANY,
                );
                proptest::collection::vec(row, 1..=4)
                    .prop_map(move |rows| SmallSystem { num_vars, rows })
            })
        }

        fn to_system(s: &SmallSystem) -> InequalitySystem {
            let mut sys = InequalitySystem::new(s.num_vars);
            for (coeffs, constant, strict) in &s.rows {
                let form = LinearForm::from_i64(coeffs, *constant);
                if *strict {
                    sys.strict.push(form);
                } else {
                    sys.weak.push(form);
                }
            }
            sys
        }

        /// Exhaustive search over a rational grid (denominators 1..=3,
        /// numerators -9..=9 per coordinate).
        fn brute_force_point(s: &SmallSystem) -> bool {
            fn satisfied(s: &SmallSystem, x: &[Rat]) -> bool {
                s.rows.iter().all(|(coeffs, constant, strict)| {
                    let v: Rat = coeffs.iter().zip(x).map(|(&c, xi)| rat(c) * xi).sum::<Rat>()
                        + rat(*constant);
                    if *strict {
                        v.is_positive()
                    } else {
                        !v.is_negative()
                    }
                })
            }
            let grid: Vec<Rat> = {
                let mut vals = Vec::new();
                for den in 1i64..=3 {
                    for num in -9i64..=9 {
                        vals.push(rat(num) / rat(den));
                    }
                }
                vals.sort();
                vals.dedup();
                vals
            };
            let mut point = vec![Rat::zero(); s.num_vars];
            fn rec(s: &SmallSystem, grid: &[Rat], point: &mut Vec<Rat>, at: usize) -> bool {
                if at == point.len() {
                    return satisfied(s, point);
                }
                grid.iter().any(|v| {
                    point[at] = v.clone();
                    rec(s, grid, point, at + 1)
                })
            }
            rec(s, &grid, &mut point, 0)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            // Soundness: a witness found by grid search forces feasibility.
            #[test]
            fn fm_agrees_with_grid_search(s in small_system()) {
                if brute_force_point(&s) {
                    prop_assert!(fm_feasible(&to_system(&s)));
                }
            }

            // Systems built around a known point are always feasible.
            #[test]
            fn fm_accepts_constructed_witness(
                point in proptest::collection::vec(-3i64..=3, 1..=3),
                raw_rows in proptest::collection::vec(
                    (proptest::collection::vec(-2i64..=2, 3), proptest::bool::ANY), 1..=4),
            ) {
                let num_vars = point.len();
                let mut sys = InequalitySystem::new(num_vars);
                for (coeffs, strict) in raw_rows {
                    let coeffs: Vec<i64> = coeffs.into_iter().take(num_vars).collect();
                    let v: i64 = coeffs.iter().zip(&point).map(|(c, p)| c * p).sum();
                    // choose the constant so the point satisfies the row
                    let constant = if strict { 1 - v } else { -v };
                    let form = LinearForm::from_i64(&coeffs, constant);
                    if strict {
                        sys.strict.push(form);
                    } else {
                        sys.weak.push(form);
                    }
                }
                prop_assert!(fm_feasible(&sys));
            }
        }
    }
}
