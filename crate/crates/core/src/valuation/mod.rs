//! The algebra V^n_λ of unitarily invariant valuations on ℂPⁿ_λ, ℂⁿ, ℂHⁿ_λ.

pub mod algebra;
pub mod alt_iso;
pub mod chern;
pub(crate) mod convert;
pub mod duality;
pub mod element;
pub mod index;
pub mod iso;
pub mod kinematic;
pub mod tensor;
pub mod templates;

pub use algebra::ValAlgebra;
pub use alt_iso::{alt_iso, AltIsoKind};
pub use chern::{chern_from_mu, chern_to_mu, chern_valuation};
pub use duality::{pd_pairing, vol_star, ValFunctional};
pub use element::{ValBasis, ValElement};
pub use index::{Dim, ValIndex};
pub use iso::{iso_map, IsoKind};
pub use kinematic::{kinematic, kinematic_chi, pi_kr};
pub use tensor::ValTensor;
pub use templates::{eval_on_ball, eval_on_cpm};
