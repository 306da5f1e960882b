//! Construction of reductive monoids from representation weight data, with the
//! polyhedral and p-adic machinery needed to compute with them:
//!
//! - [`rootdata`]: split tori, `GL(n)`, and symmetric-power covers of `GL(2)`
//!   as exact character/cocharacter lattices with Weyl actions,
//! - [`cones`]: rational polyhedral cone algebra (duality, Hilbert bases,
//!   smoothness, resolution by subdivision),
//! - [`monoid`]: weight cones, the central character `nu`, character
//!   semigroups, toric ideals, Levi restriction, shift exponents and rook
//!   monoids,
//! - [`basicfn`]: vector partition functions, quasi-polynomial fits and
//!   chart-wise integrability certificates,
//! - [`padic`]: an exact Schwartz-function calculus over a p-adic field with
//!   residue cardinality `q`: Fourier transforms, Tate zeta and gamma
//!   factors, torus push-forwards, Satake and Harish-Chandra transforms.
//!
//! All arithmetic is exact: integers, rationals, roots of unity and formal
//! half-powers of `q`. No floating point anywhere.

pub mod acceptance;
pub mod basicfn;
pub mod cones;
pub mod cyclotomic;
pub mod lattice;
pub mod laurent;
pub mod linalg;
pub mod monoid;
pub mod padic;
pub mod rootdata;
pub mod scalar;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("unknown group descriptor: {0}")]
    UnknownDescriptor(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("point is not in the lattice")]
    NotInLattice,
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("cone is not strictly convex")]
    NotStrictlyConvex,
    #[error("cone is not simplicial")]
    NotSimplicial,
    #[error("cone is not full-dimensional")]
    NotFullDimensional,
    #[error("no rational character nu pairs to 1 with every weight")]
    NuAbsent,
    #[error("linear system has no solution: {0}")]
    NoSolution(String),
    #[error("kernel of the weight map has a nontrivial component group")]
    NonSaturatedKernel,
    #[error("residue-level computation requires a prime residue cardinality, got q={0}")]
    CompositeResidue(u64),
    #[error("scalar is not invertible")]
    NonInvertibleScalar,
    #[error("divergent sum: {0}")]
    Divergent(String),
    #[error("no lift found for torus function")]
    NoLift,
    #[error("depth bound exceeded: {0}")]
    DepthExceeded(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
