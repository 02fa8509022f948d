//! Shifted free monoids and the built-in decompositions of the labelling
//! monoids of the catalog graphs G1..G4, together with a generic
//! unique-representation verifier and the coordinate machinery for G3.
//!
//! A *piece* is a shift vector `γ` plus independent generators
//! `g1..gd`; it denotes the set `{γ + Σ li·gi : li ∈ ℕ}`. A decomposition
//! claims that its pieces tile the magic labelling monoid with unique
//! representation; [`verify_decomposition`] checks that claim exhaustively
//! up to a sum bound, in both directions.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate;
use crate::graph::{Graph, Labelling};
use crate::linalg::{rat, QMatrix, Rat};
use crate::{Error, Result};

/// A shift plus an ordered list of independent generator vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidPiece {
    shift: Vec<u32>,
    generators: Vec<Vec<u32>>,
    pivot_rows: Vec<usize>,
    inverse: QMatrix,
}

impl MonoidPiece {
    /// Builds a piece, checking generator independence over ℚ and
    /// precomputing the exact solver used by membership queries.
    pub fn new(shift: Vec<u32>, generators: Vec<Vec<u32>>) -> Result<Self> {
        let n = shift.len();
        for g in &generators {
            if g.len() != n {
                return Err(Error::VectorLength { got: g.len(), expected: n });
            }
        }
        let d = generators.len();
        // Rows of gen_rows are the generators; pivot columns of its rref
        // are coordinate indices on which the generators are invertible.
        let gen_rows = QMatrix::from_rows(
            generators.iter().map(|g| g.iter().map(|&x| rat(x as i64)).collect()).collect(),
        );
        let mut reduced = gen_rows.clone();
        let pivot_rows = reduced.rref();
        if pivot_rows.len() != d {
            return Err(Error::DependentGenerators);
        }
        let mut square = QMatrix::zero(d, d);
        for (r, &coord) in pivot_rows.iter().enumerate() {
            for (c, g) in generators.iter().enumerate() {
                *square.at_mut(r, c) = rat(g[coord] as i64);
            }
        }
        let inverse = square.inverse().ok_or(Error::DependentGenerators)?;
        Ok(MonoidPiece { shift, generators, pivot_rows, inverse })
    }

    pub fn shift(&self) -> &[u32] {
        &self.shift
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn num_vars(&self) -> usize {
        self.shift.len()
    }

    /// The labelling `shift + Σ li·gi`.
    pub fn labelling(&self, l: &[u64]) -> Labelling {
        assert_eq!(l.len(), self.generators.len());
        let mut out: Vec<u32> = self.shift.clone();
        for (li, g) in l.iter().zip(&self.generators) {
            for (o, &gv) in out.iter_mut().zip(g) {
                *o += u32::try_from(li * gv as u64).expect("label fits in u32");
            }
        }
        Labelling(out)
    }

    /// Solves `α - shift = Σ li·gi` exactly over ℚ. The solution is unique
    /// when it exists (generators are independent); it is returned only when
    /// every `li` is a nonnegative integer.
    pub fn represent(&self, alpha: &Labelling) -> Option<Vec<u64>> {
        let n = self.shift.len();
        if alpha.len() != n {
            return None;
        }
        let b: Vec<Rat> =
            alpha.0.iter().zip(&self.shift).map(|(&a, &s)| rat(a as i64) - rat(s as i64)).collect();
        let d = self.generators.len();
        let l: Vec<Rat> = (0..d)
            .map(|i| {
                let mut acc = Rat::zero();
                for (j, &coord) in self.pivot_rows.iter().enumerate() {
                    acc += self.inverse.at(i, j) * &b[coord];
                }
                acc
            })
            .collect();
        // The pivot solve fixes l uniquely; the remaining coordinates decide
        // whether α - shift is in the span at all.
        for coord in 0..n {
            let mut acc = Rat::zero();
            for (li, g) in l.iter().zip(&self.generators) {
                acc += li * rat(g[coord] as i64);
            }
            if acc != b[coord] {
                return None;
            }
        }
        let mut out = Vec::with_capacity(d);
        for li in &l {
            if !li.is_integer() || li.is_negative() {
                return None;
            }
            out.push(u64::try_from(li.to_integer()).ok()?);
        }
        Some(out)
    }
}

/// A named list of pieces claimed to tile the labelling monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    graph_name: String,
    pieces: Vec<MonoidPiece>,
}

#[derive(Serialize, Deserialize)]
struct PieceFile {
    shift: Vec<u32>,
    generators: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionFile {
    graph: String,
    pieces: Vec<PieceFile>,
}

impl Decomposition {
    pub fn new(graph_name: impl Into<String>, pieces: Vec<MonoidPiece>) -> Self {
        Decomposition { graph_name: graph_name.into(), pieces }
    }

    pub fn graph_name(&self) -> &str {
        &self.graph_name
    }

    pub fn pieces(&self) -> &[MonoidPiece] {
        &self.pieces
    }

    /// Reads `{"graph": str, "pieces": [{"shift": [..], "generators": [[..]..]}]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: DecompositionFile = serde_json::from_str(text)?;
        let pieces = file
            .pieces
            .into_iter()
            .map(|p| MonoidPiece::new(p.shift, p.generators))
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition { graph_name: file.graph, pieces })
    }

    pub fn from_json_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Decomposition::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let file = DecompositionFile {
            graph: self.graph_name.clone(),
            pieces: self
                .pieces
                .iter()
                .map(|p| PieceFile { shift: p.shift.clone(), generators: p.generators.clone() })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("decomposition serializes")
    }

    /// All `(piece index, l)` pairs representing `alpha`.
    pub fn representations(&self, alpha: &Labelling) -> Vec<(usize, Vec<u64>)> {
        self.pieces
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.represent(alpha).map(|l| (i, l)))
            .collect()
    }
}

fn support(n: usize, edges: &[usize]) -> Vec<u32> {
    Labelling::from_support(n, edges).0
}

fn add_vecs(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// The three perfect-matching generators of G1.
pub fn g1_alphas() -> [Vec<u32>; 3] {
    [support(6, &[2, 4]), support(6, &[1, 3]), support(6, &[5, 6])]
}

/// β1..β5 of G2: the four perfect matchings plus the two-triangle vector.
pub fn g2_betas() -> [Vec<u32>; 5] {
    [
        support(9, &[1, 5, 8]),
        support(9, &[2, 6, 9]),
        support(9, &[3, 4, 7]),
        support(9, &[7, 8, 9]),
        support(9, &[1, 2, 3, 4, 5, 6]),
    ]
}

/// γ1..γ8 of G3: the extreme rays of its labelling cone.
pub fn g3_gammas() -> [Vec<u32>; 8] {
    [
        support(12, &[1, 3, 10, 11]),
        support(12, &[2, 4, 6, 11]),
        support(12, &[3, 5, 7, 12]),
        support(12, &[2, 5, 6, 7, 8, 9, 9, 10]),
        support(12, &[2, 3, 5, 6, 7, 9, 10, 11]),
        support(12, &[1, 4, 8, 12]),
        support(12, &[2, 4, 5, 6, 7, 8, 9, 12]),
        support(12, &[1, 8, 9, 10]),
    ]
}

/// The six perfect matchings of G4 in the order used by its decomposition
/// pieces: {1,4,8}, {2,4,6}, {2,5,9}, {3,6,7}, {1,3,5}, {7,8,9}.
pub fn g4_matching_vectors() -> [Vec<u32>; 6] {
    [
        support(9, &[1, 4, 8]),
        support(9, &[2, 4, 6]),
        support(9, &[2, 5, 9]),
        support(9, &[3, 6, 7]),
        support(9, &[1, 3, 5]),
        support(9, &[7, 8, 9]),
    ]
}

/// The built-in decompositions for G1..G4.
pub fn builtin_decomposition(name: &str) -> Result<Decomposition> {
    let pieces = match name {
        "G1" => {
            let [a1, a2, a3] = g1_alphas();
            vec![MonoidPiece::new(vec![0; 6], vec![a1, a2, a3])?]
        }
        "G2" => {
            let [b1, b2, b3, b4, b5] = g2_betas();
            vec![
                MonoidPiece::new(vec![0; 9], vec![b1.clone(), b2.clone(), b3.clone(), b4])?,
                MonoidPiece::new(b5.clone(), vec![b1, b2, b3, b5])?,
            ]
        }
        "G3" => {
            let [g1, g2, g3, g4, g5, g6, g7, g8] = g3_gammas();
            vec![
                MonoidPiece::new(
                    vec![0; 12],
                    vec![g1.clone(), g2.clone(), g3.clone(), g4.clone(), g5],
                )?,
                MonoidPiece::new(
                    g8.clone(),
                    vec![g1.clone(), g2.clone(), g3.clone(), g4.clone(), g8.clone()],
                )?,
                MonoidPiece::new(
                    g6.clone(),
                    vec![g1, g2.clone(), g3.clone(), g6.clone(), g8.clone()],
                )?,
                MonoidPiece::new(
                    add_vecs(&g4, &g6),
                    vec![g2.clone(), g3.clone(), g4.clone(), g6.clone(), g8],
                )?,
                MonoidPiece::new(g7.clone(), vec![g2, g3, g4, g6, g7])?,
            ]
        }
        "G4" => {
            let [ma, mb, mc, md, me, mf] = g4_matching_vectors();
            vec![
                MonoidPiece::new(
                    vec![0; 9],
                    vec![ma.clone(), mc.clone(), md.clone(), mf.clone(), me.clone()],
                )?,
                MonoidPiece::new(
                    mb.clone(),
                    vec![ma.clone(), mb.clone(), mc.clone(), md.clone(), me],
                )?,
                MonoidPiece::new(add_vecs(&mb, &mf), vec![mf, md, mc, mb, ma])?,
            ]
        }
        _ => return Err(Error::UnknownDecomposition(name.to_string())),
    };
    Ok(Decomposition::new(name, pieces))
}

/// Exactly one piece must represent a magic labelling; returns it.
pub fn decomp_represent(g: &Graph, decomp: &Decomposition, alpha: &Labelling) -> Result<(usize, Vec<u64>)> {
    if g.is_magic(alpha)?.is_none() {
        return Err(Error::NotMagic);
    }
    let hits = decomp.representations(alpha);
    match hits.len() {
        1 => Ok(hits.into_iter().next().unwrap()),
        0 => Err(Error::DecompositionViolation(format!("no piece represents {alpha}"))),
        _ => Err(Error::DecompositionViolation(format!(
            "{alpha} has {} representations: {hits:?}",
            hits.len()
        ))),
    }
}

/// One verification failure; the report collects all of them instead of
/// stopping at the first, so a wrong decomposition can be diagnosed whole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyFailure {
    PieceNotMagic { piece: usize, vector: Vec<u32> },
    NoRepresentation { labelling: Labelling },
    MultipleRepresentations { labelling: Labelling, hits: Vec<(usize, Vec<u64>)> },
    ConverseCollision { labelling: Labelling, first: (usize, Vec<u64>), second: (usize, Vec<u64>) },
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyFailure::PieceNotMagic { piece, vector } => {
                write!(f, "piece {piece}: vector {vector:?} is not a magic labelling")
            }
            VerifyFailure::NoRepresentation { labelling } => {
                write!(f, "no piece represents {labelling}")
            }
            VerifyFailure::MultipleRepresentations { labelling, hits } => {
                write!(f, "{labelling} represented {} times: {hits:?}", hits.len())
            }
            VerifyFailure::ConverseCollision { labelling, first, second } => {
                write!(f, "{labelling} hit twice: {first:?} and {second:?}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub labellings_checked: u64,
    pub converse_points: u64,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} labellings, {} failures", self.labellings_checked, self.failures.len())?;
        for failure in &self.failures {
            write!(f, "\n  {failure}")?;
        }
        Ok(())
    }
}

/// Exhaustive unique-representation check up to sum `max_sum`.
///
/// Forward: every magic labelling with sum `<= max_sum` must have exactly
/// one `(piece, l)` representation. Converse: every `(piece, l)` whose
/// resulting sum is `<= max_sum` must yield a magic labelling, and distinct
/// pairs must yield distinct labellings.
pub fn verify_decomposition(g: &Graph, decomp: &Decomposition, max_sum: u64) -> VerifyReport {
    let mut failures = Vec::new();

    // Piece sanity: shifts and generators must be magic labellings of g.
    for (i, piece) in decomp.pieces().iter().enumerate() {
        for vector in std::iter::once(piece.shift()).chain(piece.generators().iter().map(Vec::as_slice)) {
            let lab = Labelling(vector.to_vec());
            if !matches!(g.is_magic(&lab), Ok(Some(_))) {
                failures.push(VerifyFailure::PieceNotMagic { piece: i, vector: vector.to_vec() });
            }
        }
    }
    if !failures.is_empty() {
        return VerifyReport { labellings_checked: 0, converse_points: 0, failures };
    }

    // Forward sweep over the enumerated monoid.
    let mut labellings_checked = 0u64;
    for s in 0..=max_sum {
        let labellings = enumerate::enumerate_magic(g, s);
        labellings_checked += labellings.len() as u64;
        let mut batch: Vec<VerifyFailure> = labellings
            .par_iter()
            .filter_map(|lab| {
                let hits = decomp.representations(lab);
                match hits.len() {
                    1 => None,
                    0 => Some(VerifyFailure::NoRepresentation { labelling: lab.clone() }),
                    _ => Some(VerifyFailure::MultipleRepresentations { labelling: lab.clone(), hits }),
                }
            })
            .collect();
        failures.append(&mut batch);
    }

    // Converse sweep over coefficient space.
    let mut seen: BTreeMap<Labelling, (usize, Vec<u64>)> = BTreeMap::new();
    let mut converse_points = 0u64;
    for (i, piece) in decomp.pieces().iter().enumerate() {
        let gen_sums: Vec<u64> = piece
            .generators()
            .iter()
            .map(|gv| g.is_magic(&Labelling(gv.clone())).unwrap().unwrap())
            .collect();
        let shift_sum = g.is_magic(&Labelling(piece.shift().to_vec())).unwrap().unwrap();
        if gen_sums.contains(&0) {
            // a zero generator would be dependent; guarded at construction
            continue;
        }
        let mut l = vec![0u64; piece.num_generators()];
        converse_sweep(piece, &gen_sums, shift_sum, max_sum, 0, &mut l, &mut |l, piece_ref| {
            converse_points += 1;
            let lab = piece_ref.labelling(l);
            if let Some((ji, jl)) = seen.get(&lab) {
                failures.push(VerifyFailure::ConverseCollision {
                    labelling: lab.clone(),
                    first: (*ji, jl.clone()),
                    second: (i, l.to_vec()),
                });
            } else {
                seen.insert(lab, (i, l.to_vec()));
            }
        });
    }

    VerifyReport { labellings_checked, converse_points, failures }
}

fn converse_sweep(
    piece: &MonoidPiece,
    gen_sums: &[u64],
    s: u64,
    max_sum: u64,
    idx: usize,
    l: &mut Vec<u64>,
    visit: &mut impl FnMut(&[u64], &MonoidPiece),
) {
    if idx == gen_sums.len() {
        visit(l, piece);
        return;
    }
    let mut s = s;
    let mut li = 0u64;
    loop {
        l[idx] = li;
        converse_sweep(piece, gen_sums, s, max_sum, idx + 1, l, visit);
        if s + gen_sums[idx] > max_sum {
            break;
        }
        s += gen_sums[idx];
        li += 1;
    }
    l[idx] = 0;
}

/// Distinct-labelling counts `e(0..=max_sum)` computed through a verified
/// decomposition: unique representation turns the count into a sweep over
/// piece coefficient space. Orders of magnitude faster than brute force at
/// large sums.
pub fn distinct_counts_via_decomposition(
    g: &Graph,
    decomp: &Decomposition,
    max_sum: u64,
) -> Result<Vec<BigUint>> {
    let mut counts = vec![BigUint::zero(); max_sum as usize + 1];
    for piece in decomp.pieces() {
        let shift_lab = Labelling(piece.shift().to_vec());
        let shift_sum = g.is_magic(&shift_lab)?.ok_or(Error::NotMagic)?;
        let mut gen_sums = Vec::new();
        for gen in piece.generators() {
            let sum = g.is_magic(&Labelling(gen.clone()))?.ok_or(Error::NotMagic)?;
            if sum == 0 {
                return Err(Error::ZeroSumGenerator);
            }
            gen_sums.push(sum);
        }
        if shift_sum > max_sum {
            continue;
        }
        let mut alpha: Vec<u64> = piece.shift().iter().map(|&x| x as u64).collect();
        distinct_sweep(piece.generators(), &gen_sums, 0, &mut alpha, shift_sum, max_sum, &mut counts);
    }
    Ok(counts)
}

fn distinct_sweep(
    generators: &[Vec<u32>],
    gen_sums: &[u64],
    idx: usize,
    alpha: &mut Vec<u64>,
    s: u64,
    max_sum: u64,
    counts: &mut [BigUint],
) {
    if idx == generators.len() {
        if pairwise_distinct(alpha) {
            counts[s as usize] += 1u32;
        }
        return;
    }
    distinct_sweep(generators, gen_sums, idx + 1, alpha, s, max_sum, counts);
    let mut s = s;
    let mut taken = 0u64;
    while s + gen_sums[idx] <= max_sum {
        s += gen_sums[idx];
        taken += 1;
        for (a, &gv) in alpha.iter_mut().zip(&generators[idx]) {
            *a += gv as u64;
        }
        distinct_sweep(generators, gen_sums, idx + 1, alpha, s, max_sum, counts);
    }
    for _ in 0..taken {
        for (a, &gv) in alpha.iter_mut().zip(&generators[idx]) {
            *a -= gv as u64;
        }
    }
}

fn pairwise_distinct(values: &[u64]) -> bool {
    let mut mask = 0u128;
    let mut overflow: Vec<u64> = Vec::new();
    for &v in values {
        if v < 128 {
            let bit = 1u128 << v;
            if mask & bit != 0 {
                return false;
            }
            mask |= bit;
        } else {
            if overflow.contains(&v) {
                return false;
            }
            overflow.push(v);
        }
    }
    true
}

// ---------------------------------------------------------------------------
// G3 coordinates, classification, transform
// ---------------------------------------------------------------------------

/// Coordinates `(k1..k5)` of a vector of `S_ℝ(G3)` in the γ1..γ5 basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct G3Coordinates {
    pub k: [BigRational; 5],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum G3Class {
    PA,
    PB,
    PC1,
    PC2,
    PC3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum G3Type {
    TA,
    TB,
    TC1,
    TC2,
    TC3,
}

impl G3Type {
    /// Index of the corresponding piece in `builtin_decomposition("G3")`.
    pub fn piece_index(self) -> usize {
        match self {
            G3Type::TA => 0,
            G3Type::TB => 1,
            G3Type::TC1 => 2,
            G3Type::TC2 => 3,
            G3Type::TC3 => 4,
        }
    }

    pub fn from_class(class: G3Class) -> G3Type {
        match class {
            G3Class::PA => G3Type::TA,
            G3Class::PB => G3Type::TB,
            G3Class::PC1 => G3Type::TC1,
            G3Class::PC2 => G3Type::TC2,
            G3Class::PC3 => G3Type::TC3,
        }
    }
}

impl std::fmt::Display for G3Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            G3Class::PA => "P_a",
            G3Class::PB => "P_b",
            G3Class::PC1 => "P_c1",
            G3Class::PC2 => "P_c2",
            G3Class::PC3 => "P_c3",
        };
        write!(f, "{name}")
    }
}

impl std::fmt::Display for G3Type {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            G3Type::TA => "T_a",
            G3Type::TB => "T_b",
            G3Type::TC1 => "T_c1",
            G3Type::TC2 => "T_c2",
            G3Type::TC3 => "T_c3",
        };
        write!(f, "{name}")
    }
}

/// The twelve coordinates of `k1·γ1 + ... + k5·γ5`, as linear forms in k.
/// Row major: coordinate index -> coefficients of (k1..k5).
const G3_COORD_FORMS: [[i64; 5]; 12] = [
    [1, 0, 0, 0, 0],
    [0, 1, 0, 1, 1],
    [1, 0, 1, 0, 1],
    [0, 1, 0, 0, 0],
    [0, 0, 1, 1, 1],
    [0, 1, 0, 1, 1],
    [0, 0, 1, 1, 1],
    [0, 0, 0, 1, 0],
    [0, 0, 0, 2, 1],
    [1, 0, 0, 1, 1],
    [1, 1, 0, 0, 1],
    [0, 0, 1, 0, 0],
];

/// Reads off `k = (α1, α4, α12, α8, α9 - 2α8)` and re-checks all twelve
/// coordinates; errors when the vector is outside the span of γ1..γ5.
pub fn g3_coordinates(vector: &[BigRational]) -> Result<G3Coordinates> {
    if vector.len() != 12 {
        return Err(Error::VectorLength { got: vector.len(), expected: 12 });
    }
    let k = [
        vector[0].clone(),
        vector[3].clone(),
        vector[11].clone(),
        vector[7].clone(),
        vector[8].clone() - rat(2) * &vector[7],
    ];
    for (coord, forms) in G3_COORD_FORMS.iter().enumerate() {
        let mut acc = Rat::zero();
        for (ki, &c) in k.iter().zip(forms) {
            if c != 0 {
                acc += rat(c) * ki;
            }
        }
        if acc != vector[coord] {
            return Err(Error::NotInSpan);
        }
    }
    Ok(G3Coordinates { k })
}

/// Convenience wrapper over integer labellings.
pub fn g3_coordinates_of(lab: &Labelling) -> Result<G3Coordinates> {
    let v: Vec<BigRational> = lab.0.iter().map(|&x| rat(x as i64)).collect();
    g3_coordinates(&v)
}

fn is_natural(x: &Rat) -> bool {
    x.is_integer() && !x.is_negative()
}

/// The ten membership forms of the k-coordinates; all must be nonnegative
/// integers for the vector to lie in the labelling monoid.
pub fn g3_membership(k: &G3Coordinates) -> bool {
    let [k1, k2, k3, k4, k5] = &k.k;
    let forms = [
        k1.clone(),
        k2.clone(),
        k3.clone(),
        k4.clone(),
        k1 + k2 + k5,
        k1 + k3 + k5,
        k1 + k4 + k5,
        k2 + k4 + k5,
        k3 + k4 + k5,
        rat(2) * k4 + k5,
    ];
    forms.iter().all(is_natural)
}

/// Splits property-P vectors (`k1..k4` natural, `k5` integer) into the five
/// mutually exclusive classes.
pub fn g3_classify(k: &G3Coordinates) -> Result<G3Class> {
    let [k1, k2, k3, k4, k5] = &k.k;
    if ![k1, k2, k3, k4].iter().all(|x| is_natural(x)) || !k5.is_integer() {
        return Err(Error::NotPropertyP);
    }
    if !k5.is_negative() {
        return Ok(G3Class::PA);
    }
    let min14 = k1.min(k4);
    let neg_k5 = -k5.clone();
    if *min14 >= neg_k5 {
        return Ok(G3Class::PB);
    }
    if k1 >= k4 {
        return Ok(G3Class::PC1);
    }
    if !(rat(2) * k1 + k5).is_negative() {
        Ok(G3Class::PC2)
    } else {
        Ok(G3Class::PC3)
    }
}

/// Rewrites k-coordinates into the `(type, l)` representation of the
/// corresponding shifted free monoid. Errors when the class does not match
/// or the resulting `l` has entries outside ℕ (the vector is then outside
/// the monoid; see [`g3_membership`]).
pub fn g3_transform(k: &G3Coordinates, class: G3Class) -> Result<(G3Type, Vec<u64>)> {
    let actual = g3_classify(k)?;
    if actual != class {
        return Err(Error::ClassMismatch { expected: class.to_string(), actual: actual.to_string() });
    }
    let [k1, k2, k3, k4, k5] = &k.k;
    let one = Rat::one();
    let l: [Rat; 5] = match class {
        G3Class::PA => [k1.clone(), k2.clone(), k3.clone(), k4.clone(), k5.clone()],
        G3Class::PB => [k1 + k5, k2.clone(), k3.clone(), k4 + k5, -k5.clone() - &one],
        G3Class::PC1 => {
            [k1 - k4, k2 + k4 + k5, k3 + k4 + k5, -k5.clone() - k4 - &one, rat(2) * k4 + k5]
        }
        G3Class::PC2 => {
            [k2 + k1 + k5, k3 + k1 + k5, k4 - k1 - &one, -k5.clone() - k1 - &one, rat(2) * k1 + k5]
        }
        G3Class::PC3 => {
            [k2 + k1 + k5, k3 + k1 + k5, k4 + k1 + k5, k1.clone(), -k5.clone() - rat(2) * k1 - &one]
        }
    };
    let mut out = Vec::with_capacity(5);
    for li in &l {
        if !is_natural(li) {
            return Err(Error::NotRepresentable);
        }
        out.push(u64::try_from(li.to_integer()).map_err(|_| Error::NotRepresentable)?);
    }
    Ok((G3Type::from_class(class), out))
}

/// Inverse of [`g3_transform`]: reconstructs the labelling from `(type, l)`
/// through the builtin piece and reads its coordinates back.
pub fn g3_transform_inverse(ty: G3Type, l: &[u64]) -> Result<G3Coordinates> {
    let decomp = builtin_decomposition("G3")?;
    let piece = &decomp.pieces()[ty.piece_index()];
    let lab = piece.labelling(l);
    g3_coordinates_of(&lab)
}

/// The seven γ-relations: each row is (target index, coefficients of
/// γ1..γ8 on the right-hand side).
const GAMMA_RELATIONS: [(usize, [i64; 8]); 7] = [
    // (b)   γ5 = γ1 + γ4 - γ8
    (5, [1, 0, 0, 1, 0, 0, 0, -1]),
    // (c1)  γ4 = -γ1 + γ2 + γ3 - γ6 + 2γ8
    (4, [-1, 1, 1, 0, 0, -1, 0, 2]),
    //       γ5 = γ2 + γ3 - γ6 + γ8
    (5, [0, 1, 1, 0, 0, -1, 0, 1]),
    // (c2)  γ1 = γ2 + γ3 - γ4 - γ6 + 2γ8
    (1, [0, 1, 1, -1, 0, -1, 0, 2]),
    //       γ5 = γ2 + γ3 - γ6 + γ8
    (5, [0, 1, 1, 0, 0, -1, 0, 1]),
    // (c3)  γ1 = γ2 + γ3 + γ4 + γ6 - 2γ7
    (1, [0, 1, 1, 1, 0, 1, -2, 0]),
    //       γ5 = γ2 + γ3 + γ4 - γ7
    (5, [0, 1, 1, 1, 0, 0, -1, 0]),
];

fn gamma_relations_hold(gammas: &[Vec<u32>; 8]) -> bool {
    GAMMA_RELATIONS.iter().all(|&(target, coeffs)| {
        (0..12).all(|coord| {
            let mut acc: i64 = 0;
            for (gi, &c) in gammas.iter().zip(&coeffs) {
                acc += c * gi[coord] as i64;
            }
            acc == gammas[target - 1][coord] as i64
        })
    })
}

/// Verifies the seven displayed γ-identities exactly.
pub fn gamma_relations_check() -> bool {
    gamma_relations_hold(&g3_gammas())
}
