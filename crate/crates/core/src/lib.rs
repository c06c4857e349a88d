//! Exact finiteness test for orbit closures of vectors of binary forms under
//! `(C*)^k x SL2(C)`, affine or projective.
//!
//! A vector `v = (v_1, ..., v_s)` is described by the summands
//! `V_{chi_i, n_i}` it lives in and the root multiplicities of each `v_i`.
//! [`criterion`] decides whether the closure of `G v` (or `G <v>`) holds
//! finitely many orbits and returns a witness when it does not. The
//! [`oracle`] module recomputes the same answer from explicit one-parameter
//! limits and torus-orbit comparisons.

pub mod cli;
pub mod criterion;
pub mod error;
pub mod gauss;
pub mod geometry;
pub mod io;
pub mod lattice;
pub mod oracle;

pub use criterion::{
    decide, decide_affine, decide_projective, face_condition, modality, module_always_finite, witness_vector,
    witness_vector_at, ComponentSpec, FaceReport, Mode, ModuleVerdict, ProblemSpec, Route, Verdict, Violation, Witness,
};
pub use error::{Error, Result};
pub use gauss::GaussianRational;
pub use geometry::{CharPoint, Face, RationalVector};
pub use lattice::{IntMatrix, KernelBasis};
