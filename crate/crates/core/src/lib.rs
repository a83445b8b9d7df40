//! SU(2) representation varieties of finitely presented groups.
//!
//! Numerical code is generic over [`Real`] (`f32`, `f64`); exact code runs
//! over [`Field`], in practice `BigRational`. Aliases below fix the common
//! choices.

pub mod cohomology;
pub mod error;
pub mod groups;
pub mod knots;
pub mod linalg;
pub mod pants;
pub mod quantization;
pub mod scalar;
pub mod su2;

pub use error::{Error, Result};
pub use groups::{Presentation, Representation, Word};
pub use scalar::{Field, Real};
pub use su2::{AdMatrix, AngleTriple, Su2, Su2Vec};

pub type Su2f64 = Su2<f64>;
pub type Su2f32 = Su2<f32>;
pub type RepresentationF64 = Representation<f64>;
pub type TwistedComplexF64 = cohomology::TwistedComplex<f64>;
pub type MatrixF64 = linalg::Matrix<f64>;
pub type ExactPolytope = pants::Polytope<num_rational::BigRational>;
