//! Exact coefficient arithmetic.

pub mod constants;
mod lambda;
pub mod linalg;
mod ops;
mod pi;
pub mod rational;
pub mod series;
pub mod trig;

pub use constants::{a_nkr, alpha, binomial, c_nkq, constant, double_factorial, omega, ConstantKind};
pub use lambda::{Lambda, LambdaScalar};
pub use pi::Scalar;
pub use rational::{rat, rint, Rational};
pub use trig::{TrigMono, TrigPoly};
