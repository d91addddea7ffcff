//! Combinatorial dynamics of square-tiled surfaces.
//!
//! A square-tiled surface is encoded by a pair of permutations `(h, v)` of its
//! squares (right neighbor and top neighbor), considered modulo simultaneous
//! conjugation.  This crate computes strata, `SL(2,Z)` orbits, cylinder
//! decompositions, Siegel-Veech constants, the homological action of the
//! affine group, exact Lyapunov-sum arithmetic and Monte Carlo estimates of
//! individual exponents, square-tiled cyclic covers, and a Galois-theoretic
//! simplicity criterion for the nontrivial part of the spectrum.
//!
//! Composition of permutations is right-to-left throughout: `(p*q)(x) = p(q(x))`.
//! Squares are numbered from 1 in all textual input and output; internally the
//! code is 0-indexed.

pub mod census;
pub mod cyclic;
pub mod homology;
pub mod linalg;
pub mod lyapunov;
pub mod orbit;
pub mod origami;
pub mod perm;
pub mod report;
pub mod schreier;
pub mod spectra;

pub use origami::{Origami, Stratum};
pub use perm::{PairClass, Perm};

/// Errors shared across the crate.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("images do not form a bijection of 1..n")]
    NotBijection,
    #[error("pair does not act transitively: the glued surface is disconnected")]
    Disconnected,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree {0} exceeds bound {1}")]
    DegreeAboveBound(usize, usize),
    #[error("orbit cap of {0} vertices exceeded")]
    OrbitCapExceeded(usize),
    #[error("-id is not in the Veech group")]
    MinusIdAbsent,
    #[error("fixed-point counts disagree across -id lifts")]
    InconsistentInvolution,
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("invalid cyclic cover parameters: {0}")]
    InvalidCoverSpec(String),
    #[error("block {0} is not in the P set")]
    NotPBlock(usize),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
