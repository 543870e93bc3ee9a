//! Exact-arithmetic tools for modules over polynomial Rota-Baxter algebras
//! of nonzero weight.
//!
//! A weight-`λ` Rota-Baxter operator on an algebra satisfies
//! `P(f)P(g) = P(P(f)g) + P(fP(g)) + λP(fg)`, and a compatible module
//! structure on a finite-dimensional space is a pair of matrices `(A, B)`
//! (the actions of the polynomial generator and of the operator) satisfying
//! a matrix equation that depends on which operator family acts on the ring.
//! This crate classifies, constructs and verifies such pairs with exact
//! rational arithmetic throughout:
//!
//! * [`rational`], [`matrix`], [`poly`], [`jordan`]: big-rational scalars,
//!   dense matrices, characteristic polynomials, rational root extraction
//!   and Jordan decomposition with explicit change of basis.
//! * [`rbops`]: the truncated operator families, identity and module-axiom
//!   verifiers, weight normalization, and the semidirect-sum cross-check.
//! * [`matsolve`]: closed-form solution spaces for the defining matrix
//!   equations, plus independent Kronecker-vectorization kernel oracles.
//! * [`structure`]: submodule search, irreducibility, endomorphism algebras
//!   and indecomposability certificates, plus the low-dimensional catalog.
//!
//! All algorithms are deterministic: identical inputs produce identical
//! outputs, including basis ordering. The `parallel` feature (on by
//! default) runs the embarrassingly parallel sweeps on a rayon pool; with
//! `--no-default-features` the same code runs sequentially.

pub mod error;
pub mod exec;
pub mod jordan;
pub mod matrix;
pub mod matsolve;
pub mod poly;
pub mod rational;
pub mod rbops;
pub mod structure;
pub mod wire;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::Polynomial;
pub use rational::Rational;
