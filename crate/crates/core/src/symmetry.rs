//! Edge-permutation groups, graph automorphisms and orbit counting.
//!
//! Groups are stored as explicit element lists; everything here is small
//! (order 72 at most in the catalog), so orbits are computed by sweeping
//! the whole group over each labelling.

use std::collections::BTreeSet;

use crate::graph::{Graph, Labelling};
use crate::{Error, Result};

const AUTOMORPHISM_VERTEX_LIMIT: usize = 10;

/// A permutation of edge indices; `images[k]` is the 0-based image of the
/// 0-based edge `k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgePermutation {
    images: Vec<usize>,
}

impl EdgePermutation {
    pub fn identity(n: usize) -> Self {
        EdgePermutation { images: (0..n).collect() }
    }

    /// From 1-indexed images.
    pub fn from_one_indexed(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::NotAPermutation(n));
            }
            seen[i - 1] = true;
        }
        Ok(EdgePermutation { images: images.iter().map(|&i| i - 1).collect() })
    }

    pub fn one_indexed(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `self` after `other` (apply `other` first).
    pub fn compose(&self, other: &EdgePermutation) -> EdgePermutation {
        EdgePermutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    /// Relabels coordinates: edge `k`'s label moves to position `images[k]`.
    pub fn apply(&self, lab: &Labelling) -> Labelling {
        let mut out = vec![0u32; lab.len()];
        for (k, &image) in self.images.iter().enumerate() {
            out[image] = lab.0[k];
        }
        Labelling(out)
    }
}

/// A finite group of edge permutations with its full element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    elements: Vec<EdgePermutation>,
}

impl PermGroup {
    /// Closure of the generators under composition.
    pub fn generate(n: usize, generators: &[EdgePermutation]) -> Result<Self> {
        for g in generators {
            if g.len() != n {
                return Err(Error::InvalidGroup(format!(
                    "generator length {} does not match {n} edges",
                    g.len()
                )));
            }
        }
        let mut elements: BTreeSet<EdgePermutation> = BTreeSet::new();
        elements.insert(EdgePermutation::identity(n));
        let mut frontier: Vec<EdgePermutation> = vec![EdgePermutation::identity(n)];
        while let Some(current) = frontier.pop() {
            for g in generators {
                let next = g.compose(&current);
                if elements.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        Ok(PermGroup { elements: elements.into_iter().collect() })
    }

    pub fn trivial(n: usize) -> Self {
        PermGroup { elements: vec![EdgePermutation::identity(n)] }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[EdgePermutation] {
        &self.elements
    }

    pub fn contains(&self, p: &EdgePermutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    /// JSON list of 1-indexed image vectors.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Vec<Vec<usize>> = serde_json::from_str(text)?;
        let mut elements = BTreeSet::new();
        let n = raw.first().map_or(0, Vec::len);
        for images in &raw {
            elements.insert(EdgePermutation::from_one_indexed(images)?);
        }
        elements.insert(EdgePermutation::identity(n));
        let group = PermGroup { elements: elements.into_iter().collect() };
        group.validate()?;
        Ok(group)
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<Vec<usize>> = self.elements.iter().map(EdgePermutation::one_indexed).collect();
        serde_json::to_string_pretty(&raw).expect("group serializes")
    }

    /// Closure, identity and inverses must all be present.
    pub fn validate(&self) -> Result<()> {
        let n = self.elements.first().map_or(0, EdgePermutation::len);
        if !self.contains(&EdgePermutation::identity(n)) {
            return Err(Error::InvalidGroup("missing identity".into()));
        }
        for a in &self.elements {
            for b in &self.elements {
                if !self.contains(&a.compose(b)) {
                    return Err(Error::InvalidGroup(format!(
                        "not closed: {:?} ∘ {:?}",
                        a.one_indexed(),
                        b.one_indexed()
                    )));
                }
            }
        }
        // closure + finiteness gives inverses, but check anyway
        let identity = EdgePermutation::identity(n);
        for a in &self.elements {
            if !self.elements.iter().any(|b| a.compose(b) == identity) {
                return Err(Error::InvalidGroup(format!("no inverse for {:?}", a.one_indexed())));
            }
        }
        Ok(())
    }
}

/// Pushes a vertex bijection forward to an edge permutation. Parallel
/// edges map within their class in index order.
fn vertex_to_edge_permutation(g: &Graph, sigma: &[usize]) -> Option<EdgePermutation> {
    let n = g.num_edges();
    let key = |u: usize, w: usize| if u <= w { (u, w) } else { (w, u) };
    let mut targets: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
    for k in 1..=n {
        let (u, w) = g.edge(k);
        targets.entry(key(u, w)).or_default().push(k - 1);
    }
    let mut images = vec![0usize; n];
    for k in 1..=n {
        let (u, w) = g.edge(k);
        let mapped = key(sigma[u - 1], sigma[w - 1]);
        let slot = targets.get_mut(&mapped)?;
        if slot.is_empty() {
            return None;
        }
        images[k - 1] = slot.remove(0);
    }
    Some(EdgePermutation { images })
}

/// All vertex bijections preserving the edge multiset, pushed forward to
/// edge permutations. Brute force, vertex count capped.
pub fn automorphisms(g: &Graph) -> Result<PermGroup> {
    let m = g.num_vertices();
    if m > AUTOMORPHISM_VERTEX_LIMIT {
        return Err(Error::AutomorphismSizeLimit {
            num_vertices: m,
            limit: AUTOMORPHISM_VERTEX_LIMIT,
        });
    }
    let mut elements: BTreeSet<EdgePermutation> = BTreeSet::new();
    let mut sigma: Vec<usize> = (1..=m).collect();
    permute(&mut sigma, 0, &mut |sigma| {
        if let Some(perm) = vertex_to_edge_permutation(g, sigma) {
            elements.insert(perm);
        }
    });
    Ok(PermGroup { elements: elements.into_iter().collect() })
}

fn permute(values: &mut Vec<usize>, at: usize, visit: &mut impl FnMut(&[usize])) {
    if at == values.len() {
        visit(values);
        return;
    }
    for i in at..values.len() {
        values.swap(at, i);
        permute(values, at + 1, visit);
        values.swap(at, i);
    }
}

/// The dihedral group of the hexagon drawing of G4 as edge permutations:
/// generated by the rotation `v_i -> v_{i+1}` and the reflection through
/// the `v1 - v4` axis. Order 12.
pub fn d6_group_g4() -> PermGroup {
    let g = crate::graph::catalog_graph("G4").expect("catalog");
    let rotation_sigma: Vec<usize> = vec![2, 3, 4, 5, 6, 1];
    let reflection_sigma: Vec<usize> = vec![1, 6, 5, 4, 3, 2];
    let rotation = vertex_to_edge_permutation(&g, &rotation_sigma).expect("rotation is an automorphism");
    let reflection =
        vertex_to_edge_permutation(&g, &reflection_sigma).expect("reflection is an automorphism");
    PermGroup::generate(g.num_edges(), &[rotation, reflection]).expect("valid generators")
}

/// Orbit partition of a labelling set under a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbits {
    /// Lexicographic minimum of each orbit, sorted.
    pub representatives: Vec<Labelling>,
    /// How many input labellings fall in each orbit, parallel to
    /// `representatives`.
    pub sizes: Vec<usize>,
}

impl Orbits {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// Groups `labellings` by group orbit; the canonical representative is the
/// lexicographic minimum of the orbit.
pub fn orbit_count(labellings: &[Labelling], group: &PermGroup) -> Orbits {
    let mut buckets: std::collections::BTreeMap<Labelling, usize> = Default::default();
    for lab in labellings {
        let representative = group
            .elements()
            .iter()
            .map(|p| p.apply(lab))
            .min()
            .unwrap_or_else(|| lab.clone());
        *buckets.entry(representative).or_default() += 1;
    }
    let (representatives, sizes) = buckets.into_iter().unzip();
    Orbits { representatives, sizes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate;
    use crate::graph::{catalog_graph, Graph};

    #[test]
    fn automorphism_orders() {
        let g1 = catalog_graph("G1").unwrap();
        assert_eq!(automorphisms(&g1).unwrap().order(), 24);
        let g4 = catalog_graph("G4").unwrap();
        assert_eq!(automorphisms(&g4).unwrap().order(), 72);
        let g5b = catalog_graph("G5b").unwrap();
        assert!(automorphisms(&g5b).unwrap().order() >= 1);
    }

    #[test]
    fn d6_is_an_order_12_subgroup() {
        let d6 = d6_group_g4();
        assert_eq!(d6.order(), 12);
        let full = automorphisms(&catalog_graph("G4").unwrap()).unwrap();
        assert!(d6.is_subgroup_of(&full));
        d6.validate().unwrap();
    }

    #[test]
    fn group_action_preserves_magic() {
        let g = catalog_graph("G4").unwrap();
        let group = automorphisms(&g).unwrap();
        for s in [1u64, 2, 12] {
            for lab in enumerate::enumerate_magic(&g, s).into_iter().take(20) {
                for p in group.elements() {
                    assert_eq!(g.is_magic(&p.apply(&lab)).unwrap(), Some(s));
                }
            }
        }
    }

    #[test]
    fn orbits_of_distinct_labellings_at_twelve() {
        let g = catalog_graph("G4").unwrap();
        let distinct = enumerate::enumerate_distinct(&g, 12);
        assert_eq!(distinct.len(), 72);
        let d6 = d6_group_g4();
        let orbits = orbit_count(&distinct, &d6);
        assert_eq!(orbits.count(), 6);
        for size in &orbits.sizes {
            assert_eq!(d6.order() % size, 0);
        }
        assert_eq!(orbits.sizes.iter().sum::<usize>(), 72);

        let trivial = PermGroup::trivial(g.num_edges());
        assert_eq!(orbit_count(&distinct, &trivial).count(), 72);
    }

    #[test]
    fn group_json_round_trip() {
        let d6 = d6_group_g4();
        let text = d6.to_json();
        let back = PermGroup::from_json(&text).unwrap();
        assert_eq!(d6, back);
    }

    #[test]
    fn bad_group_json_rejected() {
        // a bare transposition list without closure partner is still a
        // group (order 2), but a non-permutation row fails
        assert!(PermGroup::from_json("[[1, 1, 2]]").is_err());
    }

    #[test]
    fn automorphism_size_limit() {
        let g = Graph::new("big", 11, vec![(1, 2)]).unwrap();
        assert!(matches!(automorphisms(&g), Err(Error::AutomorphismSizeLimit { .. })));
    }
}
