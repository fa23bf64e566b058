//! Exact computations around sumsets of linear transformations `L1 A + L2 A`
//! over `Z^d`: integer linear algebra and normal forms, full-rank lattices and
//! their finite quotients, point sets and compressions, the decision
//! procedures for irreducible and coprime matrix pairs, and brute-force
//! extremal search.
//!
//! The linear algebra is generic over the scalar type (see [`scalar`]); the
//! aliases below fix the exact instantiations used throughout the crate.

pub mod algebra;
pub mod classify;
pub mod compression;
pub mod constructions;
pub mod error;
pub mod interval;
pub mod lattice;
pub mod pointset;
pub mod scalar;
pub mod search;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use error::{Error, Result};

/// Square matrix over arbitrary-precision integers.
pub type IntMatrix = algebra::Matrix<BigInt>;
/// Square matrix over exact rationals.
pub type RatMatrix = algebra::Matrix<BigRational>;
/// Dense integer polynomial, coefficients from the constant term upward.
pub type IntPolynomial = algebra::Polynomial<BigInt>;
/// Dense rational polynomial, coefficients from the constant term upward.
pub type RatPolynomial = algebra::Polynomial<BigRational>;
/// Closed interval with exact rational endpoints.
pub type RatInterval = interval::Interval<BigRational>;

pub use algebra::SnfDecomposition;
pub use classify::{ClassificationReport, HEstimate};
pub use compression::CompressionBasis;
pub use lattice::{GroupSubset, InducedMap, Lattice, QuotientGroup};
pub use pointset::{CosetPartition, PointSet, SubspaceBasis};
pub use search::{BootstrapState, SearchResult, SearchSpec};
