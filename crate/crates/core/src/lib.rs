//! Exact integral geometry of complex space forms.

pub mod curvature;
pub mod error;
pub mod io;
pub mod poly;
pub mod scalar;
pub mod tube;
pub mod valuation;
pub mod verify;

pub use error::{Error, Result};
pub use poly::Poly;
pub use scalar::{Lambda, LambdaScalar, Rational, Scalar, TrigPoly};
pub use curvature::{CurvBasis, CurvElement, CurvIndex, CurvModule, CurvTensor, Family, SemiLocalTensor};
pub use valuation::{Dim, ValAlgebra, ValBasis, ValElement, ValIndex, ValTensor};
