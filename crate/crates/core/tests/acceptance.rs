//! Acceptance suite: every computable claim the library commits to, one
//! test per criterion, each printing a single pass/fail line.
//!
//! Run with `cargo test -p magilab --test acceptance -- --nocapture` to see
//! the lines; all comparisons are exact integer equality.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use magilab::cone;
use magilab::enumerate;
use magilab::graph::{catalog_graph, Labelling};
use magilab::monoid;
use magilab::omega;
use magilab::series;
use magilab::symmetry;

struct Criterion {
    number: u32,
    title: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(number: u32, title: &'static str) -> Self {
        Criterion { number, title, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("criterion {:2}: PASS  {}", self.number, self.title);
        } else {
            println!("criterion {:2}: FAIL  {}", self.number, self.title);
            for failure in &self.failures {
                println!("    - {failure}");
            }
            panic!("criterion {} failed:\n{}", self.number, self.failures.join("\n"));
        }
    }
}

fn counts_u64(name: &str, max: u64) -> Vec<u64> {
    let g = catalog_graph(name).unwrap();
    enumerate::count_series(&g, max).values.iter().map(|c| u64::try_from(c).unwrap()).collect()
}

#[test]
fn criterion_01_coefficient_reproduction() {
    let mut c = Criterion::new(1, "count_series matches the closed-form expansions");
    let cases: [(&str, Vec<u64>); 4] = [
        ("G1", vec![1, 3, 6, 10, 15, 21, 28, 36]),
        ("G2", vec![1, 4, 11, 23, 42, 69, 106]),
        ("G3", vec![1, 5, 18, 46, 101, 193]),
        ("G4", vec![1, 6, 21, 55, 120, 231, 406]),
    ];
    for (name, expected) in cases {
        let got = counts_u64(name, expected.len() as u64 - 1);
        c.check(got == expected, || format!("{name}: got {got:?}, expected {expected:?}"));
    }
    c.finish();
}

#[test]
fn criterion_02_distinct_series() {
    let mut c = Criterion::new(2, "distinct-labelling counts");
    let g4 = catalog_graph("G4").unwrap();
    let expected: [u64; 9] = [72, 144, 288, 576, 864, 1440, 2088, 3024, 3888];
    for (i, &want) in expected.iter().enumerate() {
        let s = 12 + i as u64;
        let got = enumerate::count_distinct(&g4, s);
        c.check(got == BigUint::from(want), || format!("e_G4({s}) = {got}, expected {want}"));
    }
    for s in 0..12u64 {
        let got = enumerate::count_distinct(&g4, s);
        c.check(got.is_zero(), || format!("e_G4({s}) = {got}, expected 0"));
    }
    for name in ["G1", "G2", "G3"] {
        let g = catalog_graph(name).unwrap();
        for s in 0..=10u64 {
            let got = enumerate::count_distinct(&g, s);
            c.check(got.is_zero(), || format!("e_{name}({s}) = {got}, expected 0"));
        }
    }
    c.finish();
}

fn ray_of(alpha: &[u32], s: u64) -> cone::Ray {
    let mut direction: Vec<u64> = alpha.iter().map(|&x| x as u64).collect();
    direction.push(s);
    cone::Ray { direction }
}

#[test]
fn criterion_03_dimensions_and_rays() {
    let mut c = Criterion::new(3, "nullspace dimensions and extreme rays");
    for (name, dim) in [("G1", 3usize), ("G2", 4), ("G3", 5)] {
        let g = catalog_graph(name).unwrap();
        let got = cone::nullspace_basis(&g.constraint_matrix()).len();
        c.check(got == dim, || format!("dim S_R({name}) = {got}, expected {dim}"));
    }

    let g1 = catalog_graph("G1").unwrap();
    let mut expected: Vec<cone::Ray> = monoid::g1_alphas().iter().map(|a| ray_of(a, 1)).collect();
    expected.sort();
    let got = cone::extreme_rays(&g1);
    c.check(got == expected, || format!("G1 rays: {got:?}"));

    let g3 = catalog_graph("G3").unwrap();
    let mut expected: Vec<cone::Ray> = monoid::g3_gammas()
        .iter()
        .map(|gamma| {
            let s = g3.is_magic(&Labelling(gamma.clone())).unwrap().unwrap();
            ray_of(gamma, s)
        })
        .collect();
    expected.sort();
    let got = cone::extreme_rays(&g3);
    c.check(got == expected, || format!("G3 rays: got {} rays", got.len()));

    let g2 = catalog_graph("G2").unwrap();
    let rays2 = cone::extreme_rays(&g2);
    let [b1, b2, b3, b4, _] = monoid::g2_betas();
    for beta in [b1, b2, b3, b4] {
        c.check(rays2.contains(&ray_of(&beta, 1)), || format!("G2 rays missing {beta:?}"));
    }
    c.finish();
}

#[test]
fn criterion_04_decomposition_verification() {
    let mut c = Criterion::new(4, "builtin decompositions verify with 0 failures");
    for (name, bound) in [("G1", 6u64), ("G2", 6), ("G3", 5), ("G4", 6)] {
        let g = catalog_graph(name).unwrap();
        let decomp = monoid::builtin_decomposition(name).unwrap();
        let report = monoid::verify_decomposition(&g, &decomp, bound);
        c.check(report.ok(), || format!("{name}: {report}"));
        c.check(report.labellings_checked == report.converse_points, || {
            format!(
                "{name}: forward {} != converse {}",
                report.labellings_checked, report.converse_points
            )
        });
        if name == "G3" {
            c.check(report.labellings_checked == 364, || {
                format!("G3 checked {} labellings, expected 364", report.labellings_checked)
            });
        }
    }
    c.check(monoid::gamma_relations_check(), || "gamma relation table failed".to_string());
    c.finish();
}

#[test]
fn criterion_05_g3_pipeline() {
    let mut c = Criterion::new(5, "G3 coordinate/classify/transform pipeline");
    let g = catalog_graph("G3").unwrap();
    let decomp = monoid::builtin_decomposition("G3").unwrap();
    for s in 0..=5u64 {
        for lab in enumerate::enumerate_magic(&g, s) {
            let generic = monoid::decomp_represent(&g, &decomp, &lab);
            let k = monoid::g3_coordinates_of(&lab);
            let pipeline = k.and_then(|k| {
                let class = monoid::g3_classify(&k)?;
                monoid::g3_transform(&k, class)
            });
            match (generic, pipeline) {
                (Ok((piece, l)), Ok((ty, l2))) => {
                    c.check(ty.piece_index() == piece && l2 == l, || {
                        format!("{lab}: generic ({piece}, {l:?}) vs pipeline ({ty}, {l2:?})")
                    });
                }
                (g_res, p_res) => {
                    c.check(false, || format!("{lab}: {g_res:?} vs {p_res:?}"));
                }
            }
        }
    }
    let gammas = monoid::g3_gammas();
    let k8 = monoid::g3_coordinates_of(&Labelling(gammas[7].clone())).unwrap();
    let class = monoid::g3_classify(&k8).unwrap();
    let transformed = monoid::g3_transform(&k8, class).unwrap();
    c.check(transformed == (monoid::G3Type::TB, vec![0, 0, 0, 0, 0]), || {
        format!("gamma8 transformed to {transformed:?}")
    });
    c.finish();
}

#[test]
fn criterion_06_generating_function_round_trips() {
    let mut c = Criterion::new(6, "numerator reconstruction and Stanley fits");
    let expected_small = series::UniPoly::from_i64(&[1, 1, 1]);

    let g2_counts: Vec<BigInt> = counts_u64("G2", 10).iter().map(|&v| BigInt::from(v)).collect();
    match series::reconstruct_numerator(&g2_counts, &[(1, 3), (2, 1)]) {
        Ok(num) => c.check(num == expected_small, || format!("G2 numerator {:?}", num)),
        Err(e) => c.check(false, || format!("G2 reconstruction failed: {e}")),
    }

    let g4_counts: Vec<BigInt> = counts_u64("G4", 10).iter().map(|&v| BigInt::from(v)).collect();
    match series::reconstruct_numerator(&g4_counts, &[(1, 5)]) {
        Ok(num) => c.check(num == expected_small, || format!("G4 numerator {:?}", num)),
        Err(e) => c.check(false, || format!("G4 reconstruction failed: {e}")),
    }

    let g3_counts: Vec<BigInt> = counts_u64("G3", 12).iter().map(|&v| BigInt::from(v)).collect();
    match series::reconstruct_numerator(&g3_counts, &[(1, 3), (2, 2)]) {
        Ok(num) => c.check(num == series::UniPoly::from_i64(&[1, 2, 4, 2, 1]), || {
            format!("G3 numerator {:?}", num)
        }),
        Err(e) => c.check(false, || format!("G3 reconstruction failed: {e}")),
    }

    // Stanley fits: allow an alternating part, require it to vanish for
    // the bipartite-like cases, and extrapolate five terms.
    let fit_cases: [(&str, usize, Option<usize>, bool); 4] = [
        ("G1", 2, Some(2), true),
        ("G2", 3, Some(0), false),
        ("G3", 4, Some(1), false),
        ("G4", 4, Some(4), true),
    ];
    for (name, deg_p, deg_q, expect_q_zero) in fit_cases {
        let g = catalog_graph(name).unwrap();
        let window: Vec<BigInt> =
            counts_u64(name, 10).iter().map(|&v| BigInt::from(v)).collect();
        match series::fit_stanley(&window, deg_p, deg_q) {
            Ok(qp) => {
                if expect_q_zero {
                    c.check(qp.q_is_zero(), || format!("{name}: expected Q = 0"));
                }
                for s in 11..=15u64 {
                    let fresh = num_rational::BigRational::from_integer(BigInt::from(
                        enumerate::count_magic(&g, s),
                    ));
                    c.check(qp.eval(s) == fresh, || {
                        format!("{name}: extrapolation at s = {s} wrong")
                    });
                }
            }
            Err(e) => c.check(false, || format!("{name}: fit failed: {e}")),
        }
    }
    c.finish();
}

#[test]
fn criterion_07_omega_pipeline() {
    let mut c = Criterion::new(7, "crude-form Omega pipeline and diag operators");
    for (name, bound) in [("G1", 3u32), ("G2", 3), ("G5b", 3), ("G3", 2), ("G4", 2)] {
        let g = catalog_graph(name).unwrap();
        let cf = omega::crude_form(&g);
        match omega::expand_bounded(&cf, bound) {
            Ok(expanded) => {
                let via_omega = omega::omega_eq(&expanded);
                let via_enum = enumerate::multivariate_truncation(&g, bound as u64);
                match series::series_equal(&via_omega, &via_enum) {
                    Ok(cmp) => c.check(cmp.equal, || format!("{name}: {:?}", cmp.diffs)),
                    Err(e) => c.check(false, || format!("{name}: {e}")),
                }
            }
            Err(e) => c.check(false, || format!("{name}: expansion failed: {e}")),
        }
    }

    let g3 = catalog_graph("G3").unwrap();
    let f3 = enumerate::multivariate_truncation(&g3, 4);
    let residue = f3.sub(&omega::diag_eq(&f3, 2, 6)).unwrap();
    c.check(residue.num_terms() == 0, || {
        format!("(1 - diag_eq(2,6)) left {} terms", residue.num_terms())
    });

    let g4 = catalog_graph("G4").unwrap();
    let fast = omega::distinct_truncation(&g4, 12);
    let slow = omega::distinct_truncation_slow(&g4, 12);
    let cmp = series::series_equal(&fast, &slow).unwrap();
    c.check(cmp.equal, || format!("literal operator product differs: {:?}", cmp.diffs));
    c.finish();
}

#[test]
fn criterion_08_ordering_cone_counts() {
    let mut c = Criterion::new(8, "1296 feasible orderings, 432 per piece, disjoint");
    let g4 = catalog_graph("G4").unwrap();
    let all: BTreeSet<Vec<usize>> = cone::feasible_orders(&g4).into_iter().collect();
    c.check(all.len() == 1296, || format!("feasible orders: {}, expected 1296", all.len()));

    let decomp = monoid::builtin_decomposition("G4").unwrap();
    let mut piece_sets: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    for (i, piece) in decomp.pieces().iter().enumerate() {
        let set: BTreeSet<Vec<usize>> = cone::piece_feasible_orders(piece).into_iter().collect();
        c.check(set.len() == 432, || format!("piece {i}: {} orders, expected 432", set.len()));
        piece_sets.push(set);
    }
    for i in 0..piece_sets.len() {
        for j in i + 1..piece_sets.len() {
            let overlap = piece_sets[i].intersection(&piece_sets[j]).count();
            c.check(overlap == 0, || format!("pieces {i} and {j} overlap in {overlap} orders"));
        }
    }
    let union: BTreeSet<Vec<usize>> = piece_sets.into_iter().flatten().collect();
    c.check(union == all, || {
        format!("piece union has {} orders, sweep found {}", union.len(), all.len())
    });
    c.finish();
}

#[test]
fn criterion_09_symmetry() {
    let mut c = Criterion::new(9, "dihedral orbits and divisibility");
    let g4 = catalog_graph("G4").unwrap();
    let d6 = symmetry::d6_group_g4();
    c.check(d6.order() == 12, || format!("D6 order {}", d6.order()));
    let full = symmetry::automorphisms(&g4).unwrap();
    c.check(d6.is_subgroup_of(&full), || "D6 is not inside the automorphism group".to_string());

    let distinct12 = enumerate::enumerate_distinct(&g4, 12);
    let orbits = symmetry::orbit_count(&distinct12, &d6);
    c.check(orbits.count() == 6, || format!("{} orbits at s = 12, expected 6", orbits.count()));

    for s in 12..=20u64 {
        let e = enumerate::count_distinct(&g4, s);
        c.check((&e % 72u32).is_zero(), || format!("e({s}) = {e} not divisible by 72"));
    }
    for s in 12..=16u64 {
        let distinct = enumerate::enumerate_distinct(&g4, s);
        let orbit_count = symmetry::orbit_count(&distinct, &d6).count();
        c.check(orbit_count.is_multiple_of(6), || {
            format!("orbit count {orbit_count} at s = {s} not divisible by 6")
        });
    }
    c.finish();
}

#[test]
fn criterion_10_degenerate_cases() {
    let mut c = Criterion::new(10, "degenerate graphs G5a and G5b");
    let g5a = catalog_graph("G5a").unwrap();
    for s in 0..=10u64 {
        let count = enumerate::count_magic(&g5a, s);
        let expected = BigUint::from((s == 0) as u32);
        c.check(count == expected, || format!("G5a count at {s}: {count}"));
    }
    let g5b = catalog_graph("G5b").unwrap();
    let got = enumerate::multivariate_truncation(&g5b, 6);
    let mut expected = series::MultiSeries::zero(4, 6);
    for t in 0..=6u32 {
        expected.add_term(t, vec![t, 0, 0, t], 1.into());
    }
    let cmp = series::series_equal(&got, &expected).unwrap();
    c.check(cmp.equal, || format!("G5b truncation differs: {:?}", cmp.diffs));
    c.finish();
}

#[test]
fn criterion_11_distinct_numerator_stretch() {
    // The full degree-19 numerator of the distinct-labelling generating
    // function of G4 needs e(s) out to s = 70. Brute force would take
    // hours; the verified decomposition turns it into a coefficient sweep.
    let mut c = Criterion::new(11, "stretch: degree-19 distinct numerator for G4");
    let g4 = catalog_graph("G4").unwrap();
    let decomp = monoid::builtin_decomposition("G4").unwrap();

    let counts = monoid::distinct_counts_via_decomposition(&g4, &decomp, 70).unwrap();
    // Anchor the fast path against the brute-force oracle where both run.
    let brute_tail: [u64; 9] = [72, 144, 288, 576, 864, 1440, 2088, 3024, 3888];
    for (i, &want) in brute_tail.iter().enumerate() {
        let s = 12 + i;
        c.check(counts[s] == BigUint::from(want), || {
            format!("e({s}) = {}, expected {want}", counts[s])
        });
    }

    let coeffs: Vec<BigInt> = counts.iter().map(|v| BigInt::from(v.clone())).collect();
    let factors = [(3u32, 2u32), (4, 1), (5, 1), (6, 1), (7, 1), (8, 1)];
    match series::reconstruct_numerator(&coeffs, &factors) {
        Ok(numerator) => {
            // numerator must equal 72 y^12 (1-y)^2 N4(y)
            let n4 = series::UniPoly::from_i64(&[
                1, 4, 11, 24, 44, 73, 109, 152, 192, 233, 258, 274, 268, 249, 207, 166, 117, 79,
                41, 18,
            ]);
            let mut prefix = vec![0i64; 12];
            prefix.push(72);
            let shift = series::UniPoly::from_i64(&prefix); // 72 y^12
            let square = series::UniPoly::from_i64(&[1, -2, 1]); // (1-y)^2
            let expected = shift.mul(&square).mul(&n4);
            c.check(numerator == expected, || {
                format!("numerator mismatch: got {:?}", numerator.coeffs())
            });
        }
        Err(e) => c.check(false, || format!("reconstruction failed: {e}")),
    }
    c.finish();
}
