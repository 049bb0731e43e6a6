//! Angular curvature measures.

use super::element::CurvElement;
use super::index::Family;
use super::module::CurvModule;
use crate::error::Result;
use crate::poly::{tu_to_st, Poly};
use crate::scalar::rational::rat;
use crate::scalar::LambdaScalar;

/// In the Delta/N basis the angular measures are exactly span{Δ_kq}.
pub fn angular_test(m: &CurvModule, c: &CurvElement) -> Result<bool> {
    Ok(m.delta_n(c)?.family_part(Family::N).is_zero())
}

/// (t/π)∂p1/∂s − ((4s−t²)/2)∂p2/∂s − 3p2 for (s, t) polynomials, up to weight `cap`.
pub fn angular_defect(p1: &Poly, p2: &Poly, cap: u32) -> Poly {
    let a = Poly::t().scale(&LambdaScalar::pi_pow(-1));
    let b = Poly::from_terms([((1, 0), LambdaScalar::int(-2)), ((0, 2), LambdaScalar::ratio(1, 2))]);
    let out = a.mul_trunc(&p1.d_x(), cap) + b.mul_trunc(&p2.d_x(), cap) - p2.scale(&LambdaScalar::int(3));
    out.truncate(cap)
}

/// Whether ℓ(p1) + 𝔫(p2) is angular, decided on (p1, p2) through the
/// characterizing differential equation. Only meaningful where the free
/// decomposition is unique, i.e. below the cap of Curv^{U(∞)}.
pub fn angular_predicate(p1: &Poly, p2: &Poly, cap: u32) -> bool {
    angular_defect(p1, p2, cap.saturating_sub(1)).is_zero()
}

impl CurvModule {
    /// A(g) = ℓ(g + 2u∂g/∂u) + 𝔫((4t/π)∂g/∂u) for g in (u, t) variables.
    pub fn a_map(&self, g: &Poly) -> Result<CurvElement> {
        let du = g.d_x();
        let u = Poly::x();
        let first = g + &(&u * &du).scale(&LambdaScalar::int(2));
        let second = (&Poly::t() * &du).scale(&LambdaScalar::monomial(rat(4, 1), -1, 0));
        Ok(self.ell_poly(&tu_to_st(&first))? + self.nn_poly(&tu_to_st(&second))?)
    }
}
