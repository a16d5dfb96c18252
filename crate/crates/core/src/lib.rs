//! Exact construction and verification of braided Frobenius algebras built
//! from commutative, cocommutative Hopf algebras of finite rank.
//!
//! The pipeline runs bottom-up:
//!
//! * [`hopf`]: structure constants, axiom checks, example families.
//! * [`integral`]: integral element and functional, normalized cup and cap.
//! * [`braid`]: the quantum heap operation `T(x⊗y⊗z) = xS(y)z` and the
//!   braidings it induces.
//! * [`frobenius`]: the Frobenius structure on `V = X⊗X` and its
//!   compatibility with the braiding.
//! * [`twist`]: the twists `θ` and `Θ` and their commutation relations.
//! * [`diagram`]: a string-diagram language evaluated against all of the above.
//!
//! Every morphism is a [`TensorMap`] over an exact [`Ring`]. Composition
//! reads top to bottom: `f.compose(&g)` applies `f` first.

pub mod braid;
pub mod diagram;
pub mod error;
pub mod frobenius;
pub mod hopf;
pub mod integral;
pub mod scalar;
pub mod tensor;
pub mod twist;

pub use error::{Error, Result};
pub use hopf::{Family, HopfAlgebra, HopfParts};
pub use scalar::{Ring, Scalar};
pub use tensor::{Circuit, Comparison, Equation, MultiIndex, TensorMap, Vector};
