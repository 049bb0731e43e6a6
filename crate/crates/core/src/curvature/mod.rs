//! Curv^{U(n)}: invariant curvature measures on complex space forms.

pub mod angular;
pub mod complex;
pub mod derivation;
pub mod element;
pub mod index;
pub mod local_kin;
pub mod module;
pub mod variation;

pub use angular::{angular_defect, angular_predicate, angular_test};
pub use complex::{chern_to_gamma, complex_kinematic, gamma_to_chern, shifrin, shifrin_from_gamma, ChernCoords, ChernTensor};
pub use derivation::{d1, d2};
pub use element::{CurvBasis, CurvElement, CurvTensor, SemiLocalTensor};
pub use local_kin::{rho_kr, unrestricted_kinematic};
pub use index::{b_gamma_indices, delta_n_indices, CurvIndex, Family};
pub use module::{g_poly, n_kernel_polys, nn_inverse_basis, CurvModule};
