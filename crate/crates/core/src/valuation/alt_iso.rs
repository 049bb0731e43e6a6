//! The isomorphisms V^n_0 → V^n_λ induced by substitutions of generators.

use serde::{Deserialize, Serialize};

use super::algebra::ValAlgebra;
use super::convert::u_lambda;
use super::element::ValElement;
use crate::error::{Error, Result};
use crate::poly::{st_to_tu, Poly};
use crate::scalar::constants::binom_general;
use crate::scalar::rational::rat;
use crate::scalar::LambdaScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AltIsoKind {
    /// t ↦ t/√(1+λt²/4), s ↦ s
    TOverSqrt,
    /// t ↦ t, u ↦ u
    TuIdentity,
}

pub fn alt_iso(v: &ValElement, which: AltIsoKind, target: &ValAlgebra) -> Result<ValElement> {
    if !v.lambda().is_zero() {
        return Err(Error::Domain("alt_iso expects an element of V^n_0".into()));
    }
    let flat = target.flat();
    let p = flat.to_poly(v)?;
    let cap = target.cap();
    let image = match which {
        AltIsoKind::TOverSqrt => {
            // t·(1 + λt²/4)^{−1/2} = Σ_j binom(−1/2, j) (λ/4)^j t^{2j+1}
            let quarter = target.lam().scale(&rat(1, 4));
            let mut t_img = Poly::zero();
            let mut cp = LambdaScalar::one();
            let mut j = 0;
            while 2 * j + 1 <= cap {
                t_img.add_term((0, 2 * j + 1), &cp.scale(&binom_general(&rat(-1, 2), j)));
                cp = &cp * &quarter;
                j += 1;
            }
            p.compose(&Poly::x(), &t_img, cap)
        }
        AltIsoKind::TuIdentity => st_to_tu(&p).compose(&u_lambda(target.lam()), &Poly::t(), cap),
    };
    Ok(target.poly_to_mu(&image))
}
