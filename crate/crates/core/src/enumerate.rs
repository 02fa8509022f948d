//! Exhaustive, exact enumeration and counting of magic and magic-distinct
//! labellings. This is the brute-force oracle the structural modules are
//! validated against, so it stays deliberately simple: depth-first label
//! assignment with per-vertex residual propagation.
//!
//! Counting uses arbitrary-precision integers end to end.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::graph::{Graph, Labelling};
use crate::series::MultiSeries;

/// `h(0..=S)` of a graph, for plain or distinct counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountVector {
    pub values: Vec<BigUint>,
    pub flavor: CountFlavor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountFlavor {
    All,
    Distinct,
}

/// Static assignment order: greedily pick the edge whose endpoints have the
/// fewest unassigned incident edges, so vertex equations close early. The
/// order depends only on the graph, never on thread count or run.
fn assignment_order(g: &Graph) -> Vec<usize> {
    let n = g.num_edges();
    let mut remaining: Vec<usize> = (1..=g.num_vertices()).map(|v| g.degree(v)).collect();
    let mut chosen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize, usize)> = None;
        for (k, &taken) in chosen.iter().enumerate() {
            if taken {
                continue;
            }
            let (u, w) = g.edges()[k];
            let (a, b) = (remaining[u - 1].min(remaining[w - 1]), remaining[u - 1].max(remaining[w - 1]));
            let key = (a, b, k);
            if best.is_none_or(|cur| key < cur) {
                best = Some(key);
            }
        }
        let (_, _, k) = best.expect("an unchosen edge exists");
        chosen[k] = true;
        order.push(k);
        let (u, w) = g.edges()[k];
        remaining[u - 1] -= 1;
        if w != u {
            remaining[w - 1] -= 1;
        }
    }
    order
}

struct Search<'g> {
    g: &'g Graph,
    order: Vec<usize>,
    s: u64,
    distinct: bool,
}

struct SearchState {
    values: Vec<u32>,
    residual: Vec<u64>,
    remaining: Vec<usize>,
    used: Vec<bool>,
}

enum Sink<'a> {
    Count(&'a mut BigUint),
    Collect(&'a mut Vec<Labelling>),
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, s: u64, distinct: bool) -> Self {
        Search { g, order: assignment_order(g), s, distinct }
    }

    fn fresh_state(&self) -> SearchState {
        SearchState {
            values: vec![0; self.g.num_edges()],
            residual: vec![self.s; self.g.num_vertices()],
            remaining: (1..=self.g.num_vertices()).map(|v| self.g.degree(v)).collect(),
            used: vec![false; self.s as usize + 1],
        }
    }

    /// Bounds for the label of the edge at `depth`, `None` when the branch
    /// is already dead.
    fn label_range(&self, st: &SearchState, depth: usize) -> Option<(u64, u64)> {
        let k = self.order[depth];
        let (u, w) = self.g.edges()[k];
        let (u, w) = (u - 1, w - 1);
        let mut lo = 0u64;
        let mut hi = st.residual[u];
        if w != u {
            hi = hi.min(st.residual[w]);
        }
        // A vertex whose last unassigned edge this is forces the value.
        if st.remaining[u] == 1 {
            lo = lo.max(st.residual[u]);
            hi = hi.min(st.residual[u]);
        }
        if w != u && st.remaining[w] == 1 {
            lo = lo.max(st.residual[w]);
            hi = hi.min(st.residual[w]);
        }
        (lo <= hi).then_some((lo, hi))
    }

    fn assign(&self, st: &mut SearchState, depth: usize, t: u64) {
        let k = self.order[depth];
        let (u, w) = self.g.edges()[k];
        st.values[k] = t as u32;
        st.residual[u - 1] -= t;
        st.remaining[u - 1] -= 1;
        if w != u {
            st.residual[w - 1] -= t;
            st.remaining[w - 1] -= 1;
        }
        if self.distinct {
            st.used[t as usize] = true;
        }
    }

    fn unassign(&self, st: &mut SearchState, depth: usize, t: u64) {
        let k = self.order[depth];
        let (u, w) = self.g.edges()[k];
        st.residual[u - 1] += t;
        st.remaining[u - 1] += 1;
        if w != u {
            st.residual[w - 1] += t;
            st.remaining[w - 1] += 1;
        }
        if self.distinct {
            st.used[t as usize] = false;
        }
    }

    fn dfs(&self, st: &mut SearchState, depth: usize, sink: &mut Sink) {
        if depth == self.order.len() {
            match sink {
                Sink::Count(c) => **c += 1u32,
                Sink::Collect(v) => v.push(Labelling(st.values.clone())),
            }
            return;
        }
        let Some((lo, hi)) = self.label_range(st, depth) else {
            return;
        };
        for t in lo..=hi {
            if self.distinct && st.used[t as usize] {
                continue;
            }
            self.assign(st, depth, t);
            self.dfs(st, depth + 1, sink);
            self.unassign(st, depth, t);
        }
    }

    /// Runs the search, splitting the tree on the first edge's label value.
    /// Subtree results are combined in label order, so the outcome is
    /// independent of the number of worker threads.
    fn run(&self, collect: bool) -> (BigUint, Vec<Labelling>) {
        // An isolated vertex can never be closed by an assignment; it only
        // admits s = 0.
        let isolated = (1..=self.g.num_vertices()).any(|v| self.g.degree(v) == 0);
        if isolated && self.s != 0 {
            return (BigUint::zero(), Vec::new());
        }
        if self.order.is_empty() {
            // No edges: the empty labelling, magic iff s admits it.
            return (BigUint::one(), vec![Labelling(Vec::new())]);
        }
        let st0 = self.fresh_state();
        let Some((lo, hi)) = self.label_range(&st0, 0) else {
            return (BigUint::zero(), Vec::new());
        };
        let parts: Vec<(BigUint, Vec<Labelling>)> = (lo..=hi)
            .into_par_iter()
            .map(|t| {
                let mut st = self.fresh_state();
                let mut count = BigUint::zero();
                let mut found = Vec::new();
                let mut sink = if collect { Sink::Collect(&mut found) } else { Sink::Count(&mut count) };
                self.assign(&mut st, 0, t);
                self.dfs(&mut st, 1, &mut sink);
                (count, found)
            })
            .collect();
        let mut count = BigUint::zero();
        let mut found = Vec::new();
        for (c, mut f) in parts {
            count += c;
            found.append(&mut f);
        }
        if collect {
            count = BigUint::from(found.len());
        }
        (count, found)
    }
}

/// All magic labellings of `g` with magic sum `s`, duplicate-free and in
/// lexicographic order of the value vector.
pub fn enumerate_magic(g: &Graph, s: u64) -> Vec<Labelling> {
    let (_, mut found) = Search::new(g, s, false).run(true);
    found.sort();
    found
}

/// The subset of [`enumerate_magic`] with pairwise-distinct labels.
pub fn enumerate_distinct(g: &Graph, s: u64) -> Vec<Labelling> {
    let (_, mut found) = Search::new(g, s, true).run(true);
    found.sort();
    found
}

/// `|enumerate_magic(g, s)|` without materializing the labellings.
pub fn count_magic(g: &Graph, s: u64) -> BigUint {
    Search::new(g, s, false).run(false).0
}

/// `|enumerate_distinct(g, s)|` without materializing the labellings.
pub fn count_distinct(g: &Graph, s: u64) -> BigUint {
    Search::new(g, s, true).run(false).0
}

/// `h(0..=max_sum)` as a [`CountVector`].
pub fn count_series(g: &Graph, max_sum: u64) -> CountVector {
    let values: Vec<BigUint> = (0..=max_sum).into_par_iter().map(|s| count_magic(g, s)).collect();
    CountVector { values, flavor: CountFlavor::All }
}

/// Distinct-labelling counts `e(0..=max_sum)`.
pub fn count_distinct_series(g: &Graph, max_sum: u64) -> CountVector {
    let values: Vec<BigUint> = (0..=max_sum).into_par_iter().map(|s| count_distinct(g, s)).collect();
    CountVector { values, flavor: CountFlavor::Distinct }
}

/// The exact truncation of `F^G(x, y)` to y-degree `≤ max_sum`: one term
/// `x^α y^s` with coefficient 1 per magic labelling.
pub fn multivariate_truncation(g: &Graph, max_sum: u64) -> MultiSeries {
    let mut series = MultiSeries::zero(g.num_edges(), max_sum as u32);
    for s in 0..=max_sum {
        for lab in enumerate_magic(g, s) {
            series.add_term(s as u32, lab.0, 1.into());
        }
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog_graph;

    fn counts(g: &Graph, max: u64) -> Vec<u64> {
        count_series(g, max).values.iter().map(|c| u64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn g1_sum_one_has_the_three_matchings() {
        let g = catalog_graph("G1").unwrap();
        let found = enumerate_magic(&g, 1);
        let expected = vec![
            Labelling(vec![0, 0, 0, 0, 1, 1]),
            Labelling(vec![0, 1, 0, 1, 0, 0]),
            Labelling(vec![1, 0, 1, 0, 0, 0]),
        ];
        assert_eq!(found, expected);
    }

    #[test]
    fn zero_sum_is_the_zero_labelling() {
        for name in ["G1", "G2", "G3", "G4", "G5a", "G5b"] {
            let g = catalog_graph(name).unwrap();
            let found = enumerate_magic(&g, 0);
            assert_eq!(found, vec![Labelling(vec![0; g.num_edges()])]);
        }
    }

    #[test]
    fn g5a_has_no_positive_sums() {
        let g = catalog_graph("G5a").unwrap();
        for s in 1..=10 {
            assert!(enumerate_magic(&g, s).is_empty());
        }
    }

    #[test]
    fn catalog_count_series() {
        let g1 = catalog_graph("G1").unwrap();
        assert_eq!(counts(&g1, 7), vec![1, 3, 6, 10, 15, 21, 28, 36]);
        let g2 = catalog_graph("G2").unwrap();
        assert_eq!(counts(&g2, 6), vec![1, 4, 11, 23, 42, 69, 106]);
        let g3 = catalog_graph("G3").unwrap();
        assert_eq!(counts(&g3, 5), vec![1, 5, 18, 46, 101, 193]);
        let g4 = catalog_graph("G4").unwrap();
        assert_eq!(counts(&g4, 6), vec![1, 6, 21, 55, 120, 231, 406]);
    }

    #[test]
    fn distinct_counts_on_g4() {
        let g = catalog_graph("G4").unwrap();
        assert_eq!(count_distinct(&g, 12), BigUint::from(72u32));
        assert_eq!(count_distinct(&g, 11), BigUint::zero());
    }

    #[test]
    fn distinct_empty_for_g3() {
        let g = catalog_graph("G3").unwrap();
        for s in 0..=10 {
            assert!(count_distinct(&g, s).is_zero());
        }
    }

    #[test]
    fn distinct_never_exceeds_all() {
        for name in ["G1", "G2", "G4", "G5b"] {
            let g = catalog_graph(name).unwrap();
            for s in 0..=8 {
                assert!(count_distinct(&g, s) <= count_magic(&g, s));
            }
        }
    }

    #[test]
    fn enumeration_is_sorted_and_duplicate_free() {
        let g = catalog_graph("G2").unwrap();
        let found = enumerate_magic(&g, 4);
        for pair in found.windows(2) {
            assert!(pair[0] < pair[1]);
        }
        // and each one really is magic with the right sum
        for lab in &found {
            assert_eq!(g.is_magic(lab).unwrap(), Some(4));
        }
    }

    #[test]
    fn truncation_term_count_matches_counts() {
        let g = catalog_graph("G2").unwrap();
        let series = multivariate_truncation(&g, 4);
        let total: u64 = counts(&g, 4).iter().sum();
        assert_eq!(series.num_terms() as u64, total);
    }

    #[test]
    fn truncation_small_cases() {
        let g5b = catalog_graph("G5b").unwrap();
        let t = multivariate_truncation(&g5b, 2);
        let mut expected = MultiSeries::zero(4, 2);
        expected.add_term(0, vec![0, 0, 0, 0], 1.into());
        expected.add_term(1, vec![1, 0, 0, 1], 1.into());
        expected.add_term(2, vec![2, 0, 0, 2], 1.into());
        assert_eq!(t, expected);

        let g1 = catalog_graph("G1").unwrap();
        let t1 = multivariate_truncation(&g1, 1);
        assert_eq!(t1.num_terms(), 4); // 1 + three matchings at y^1

        let t0 = multivariate_truncation(&g1, 0);
        assert_eq!(t0.num_terms(), 1);
    }

    #[test]
    fn regular_shift_by_all_ones() {
        // For d-regular graphs, h(s) equals the number of positive
        // labellings with sum s + d.
        for name in ["G1", "G2", "G4"] {
            let g = catalog_graph(name).unwrap();
            let d = g.regular_degree().unwrap() as u64;
            for s in 0..=3 {
                let count = count_magic(&g, s);
                let positive = enumerate_magic(&g, s + d)
                    .into_iter()
                    .filter(|lab| lab.0.iter().all(|&x| x > 0))
                    .count();
                assert_eq!(count, BigUint::from(positive));
            }
        }
    }

    #[test]
    fn edgeless_graph() {
        let g = Graph::new("dust", 2, vec![]).unwrap();
        assert_eq!(count_magic(&g, 0), BigUint::one());
        assert_eq!(count_magic(&g, 3), BigUint::zero());
        assert_eq!(enumerate_magic(&g, 0), vec![Labelling(vec![])]);
    }
}
