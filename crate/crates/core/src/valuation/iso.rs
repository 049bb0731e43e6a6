//! Isomorphisms between V^n_0 and V^n_λ.

use serde::{Deserialize, Serialize};

use super::algebra::ValAlgebra;
use super::element::ValElement;
use crate::error::{Error, Result};
use crate::poly::one_minus_cx_half_pow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IsoKind {
    /// algebra isomorphism, μ_kq ↦ (1−λs)^{−1} μ^λ_kq
    ILambda,
    ILambdaInv,
    /// coalgebra isomorphism, μ_kq ↦ (1−λs) μ^λ_kq
    JLambda,
    /// relabeling μ_kq ↦ μ^λ_kq
    FLambda,
}

/// Applies `which`. For I, J, F the source is V^n_0 and `target` is V^n_λ; for
/// I⁻¹ the source is `target`'s λ and the result lives in V^n_0.
pub fn iso_map(v: &ValElement, which: IsoKind, target: &ValAlgebra) -> Result<ValElement> {
    let flat = target.flat();
    match which {
        IsoKind::ILambdaInv => {
            let mu = target.to_mu(v)?;
            let moved = target.relabel_to(&mu, &flat)?;
            flat.multiply_poly(&one_minus_cx_half_pow(2, target.lam(), flat.cap()), &moved)
        }
        _ => {
            if !v.lambda().is_zero() {
                return Err(Error::Domain("iso_map expects an element of V^n_0".into()));
            }
            let f = flat.relabel_to(v, target)?;
            let cap = target.cap();
            match which {
                IsoKind::FLambda => Ok(f),
                IsoKind::JLambda => target.multiply_poly(&one_minus_cx_half_pow(2, target.lam(), cap), &f),
                IsoKind::ILambda => target.multiply_poly(&one_minus_cx_half_pow(-2, target.lam(), cap), &f),
                IsoKind::ILambdaInv => unreachable!(),
            }
        }
    }
}
