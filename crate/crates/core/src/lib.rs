//! Exact arithmetic for Laguerre-type matrix orthogonal polynomials and the
//! algebra of differential operators they diagonalize.

pub mod diffops;
pub mod error;
pub mod explorer;
pub mod field;
pub mod linalg;
pub mod matfun;
pub mod matpoly;
pub mod modp;
pub mod numeric;
pub mod orthopoly;
pub mod par;
pub mod poly;
pub mod quasi;
pub mod relations;
pub mod scalar;
pub mod symmetry;
pub mod weights;

pub use diffops::DiffOperator;
pub use error::{Error, Result};
pub use linalg::{ExactMatrix, Matrix};
pub use matpoly::MatPoly;
pub use poly::Poly;
pub use quasi::QuasiPoly;
pub use scalar::ExactScalar;
pub use weights::{build_weight, MomentSequence, WeightSpec};
