//! The operators D₁, D₂, H′₀ and Σ used to derive the local kinematic formulas.

use super::element::{CurvElement, CurvTensor};
use super::index::{CurvIndex, Family};
use super::module::CurvModule;
use crate::error::Result;
use crate::poly::{tu_to_st, Poly};
use crate::scalar::rational::{rat, rint};
use crate::scalar::{LambdaScalar, Scalar};
use crate::valuation::{ValBasis, ValElement, ValTensor};

fn u() -> Poly {
    tu_to_st(&Poly::x())
}

/// D₁p = (t²−2s)/2·p − (tu/4)∂p/∂t, ∂ at fixed s.
pub fn d1(p: &Poly, cap: u32) -> Poly {
    let a = Poly::from_terms([((0, 2), LambdaScalar::ratio(1, 2)), ((1, 0), LambdaScalar::int(-1))]);
    let b = (&Poly::t() * &u()).scale(&LambdaScalar::ratio(-1, 4));
    a.mul_trunc(p, cap) + b.mul_trunc(&p.d_t(), cap)
}

/// D₂p = −(3πut/8)p + (πu²/8)∂p/∂t.
pub fn d2(p: &Poly, cap: u32) -> Poly {
    let a = (&Poly::t() * &u()).scale(&LambdaScalar::monomial(rat(-3, 8), 1, 0));
    let b = (&u() * &u()).scale(&LambdaScalar::monomial(rat(1, 8), 1, 0));
    a.mul_trunc(p, cap) + b.mul_trunc(&p.d_t(), cap)
}

impl CurvModule {
    pub fn d1(&self, v: &ValElement) -> Result<ValElement> {
        let f = self.flat();
        Ok(f.poly_to_mu(&d1(&f.to_poly(v)?, self.top())))
    }

    pub fn d2(&self, v: &ValElement) -> Result<ValElement> {
        let f = self.flat();
        Ok(f.poly_to_mu(&d2(&f.to_poly(v)?, self.top())))
    }

    /// H′₀ = d/dλ|₀ J_λ⁻¹∘glob_λ: Δ_kq ↦ sμ_kq − (q+1)/π μ_{k+2,q+1}, N_kq ↦ −(q+1)/π μ_{k+2,q+1}.
    pub fn h0_prime(&self, c: &CurvElement) -> Result<ValElement> {
        let f = self.flat();
        let c = self.delta_n(c)?;
        let mut out = f.zero(ValBasis::Mu);
        for (idx, v) in c.terms() {
            let (k, q) = (idx.k, idx.q);
            if idx.family == Family::Delta {
                out = out + f.s_multiply(&f.mu(k, q)?)?.scale(v);
            }
            if self.dim().valid_mu(k + 2, q + 1) {
                let w = LambdaScalar::from(Scalar::term(rint(-(q as i64 + 1)), -1));
                out = out + f.mu(k + 2, q + 1)?.scale(&(v * &w));
            }
        }
        Ok(out)
    }

    /// Σ(μ_kq) = −(π/q) N_{k−2,q−1} for 0 < q < k/2, zero otherwise.
    pub fn sigma(&self, v: &ValElement) -> Result<CurvElement> {
        let mu = self.flat().to_mu(v)?;
        let mut out = self.zero();
        for ((k, q), c) in mu.terms() {
            if *q > 0 && 2 * q < *k {
                let w = LambdaScalar::monomial(rat(-1, *q as i64), 1, 0);
                out.add_term(CurvIndex::n(k - 2, q - 1), &(c * &w));
            }
        }
        Ok(out)
    }

    /// (H′₀ ⊗ H′₀)·T.
    pub fn h0_prime_tensor(&self, t: &CurvTensor) -> Result<ValTensor> {
        let f = self.flat();
        let mut out = ValTensor::zero(f.dim(), f.lambda().clone());
        for ((a, b), c) in t.terms() {
            let ha = self.h0_prime(&CurvElement::basis_vector(self.dim(), *a)?)?;
            let hb = self.h0_prime(&CurvElement::basis_vector(self.dim(), *b)?)?;
            if ha.is_zero() || hb.is_zero() {
                continue;
            }
            out.add_in_place(&ValTensor::outer(&ha, &hb)?.scale(c));
        }
        Ok(out)
    }
}
