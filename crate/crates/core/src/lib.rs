//! Exact-arithmetic toolkit for magic labellings of finite graphs.
//!
//! A magic labelling assigns a nonnegative integer to every edge of a graph
//! so that the labels incident to each vertex add up to the same magic sum
//! `s`. The set of all magic labellings of a graph forms a commutative
//! monoid; this crate constructs that monoid explicitly for a small catalog
//! of graphs, enumerates it, decomposes it into shifted free monoids, and
//! cross-checks everything through independent routes:
//!
//! * brute-force enumeration with exact counts ([`enumerate`]),
//! * rational cone geometry: extreme rays via the double description
//!   method and Fourier-Motzkin feasibility ([`cone`]),
//! * shifted-free-monoid decompositions with unique-representation
//!   verification ([`monoid`]),
//! * generating functions, quasi-polynomial fitting and truncated
//!   multivariate series ([`series`]),
//! * MacMahon partition analysis at bounded-series level ([`omega`]),
//! * edge-permutation symmetry and orbit counting ([`symmetry`]).
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals
//! throughout, no floating point anywhere.

pub mod cone;
pub mod enumerate;
pub mod graph;
mod linalg;
pub mod monoid;
pub mod omega;
pub mod series;
pub mod symmetry;

mod error;

pub use cone::Ray;
pub use enumerate::CountVector;
pub use error::{Error, Result};
pub use graph::{catalog_graph, ConstraintSystem, Graph, Labelling, CATALOG_NAMES};
pub use monoid::{Decomposition, MonoidPiece};
pub use series::{MultiSeries, QuasiPolynomial, RationalGF, UniPoly};
pub use symmetry::{EdgePermutation, PermGroup};
