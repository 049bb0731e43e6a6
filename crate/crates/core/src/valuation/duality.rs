//! The functional vol* and Poincaré duality.

use std::collections::BTreeMap;

use super::algebra::ValAlgebra;
use super::element::ValElement;
use super::index::ValIndex;
use crate::error::Result;
use crate::scalar::constants::{binom_r, om};
use crate::scalar::LambdaScalar;

/// A linear functional on V^n_λ given by its values on μ^λ_kq.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValFunctional {
    pub coeffs: BTreeMap<ValIndex, LambdaScalar>,
}

impl ValFunctional {
    pub fn apply(&self, alg: &ValAlgebra, v: &ValElement) -> Result<LambdaScalar> {
        let mu = alg.to_mu(v)?;
        let mut acc = LambdaScalar::zero();
        for ((k, q), c) in mu.terms() {
            if let Some(f) = self.coeffs.get(&ValIndex::new(*k, *q)) {
                acc += c * f;
            }
        }
        Ok(acc)
    }

    pub fn value(&self, i: ValIndex) -> LambdaScalar {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }
}

/// ⟨vol*, t^{2i} s^j⟩ = λ^{n−i−j}/ω_{2n} · binom(2i,i) binom(n−j+1,i+1); zero for odd t-powers.
pub fn vol_star_monomial(alg: &ValAlgebra, s_exp: u32, t_exp: u32) -> Result<LambdaScalar> {
    let n = alg.n()?;
    if t_exp % 2 == 1 || 2 * s_exp + t_exp > 2 * n {
        return Ok(LambdaScalar::zero());
    }
    let (i, j) = ((t_exp / 2) as i64, s_exp as i64);
    let r = binom_r(2 * i, i) * binom_r(n as i64 - j + 1, i + 1);
    let c = LambdaScalar::from(om(2 * n as i64).inv().unwrap().scale(&r));
    Ok(&c * &alg.lam().pow(n - (i + j) as u32))
}

pub fn vol_star(alg: &ValAlgebra) -> Result<ValFunctional> {
    let mut coeffs = BTreeMap::new();
    for idx in alg.dim().mu_indices() {
        let mut acc = LambdaScalar::zero();
        for ((a, b), c) in alg.mu_st(idx).terms() {
            acc += c * &vol_star_monomial(alg, *a, *b)?;
        }
        if !acc.is_zero() {
            coeffs.insert(idx, acc);
        }
    }
    Ok(ValFunctional { coeffs })
}

/// pd(a, b) = ⟨vol*, a·b⟩
pub fn pd_pairing(alg: &ValAlgebra, vs: &ValFunctional, a: &ValElement, b: &ValElement) -> Result<LambdaScalar> {
    vs.apply(alg, &alg.multiply(a, b)?)
}

/// Gram matrix pd(μ_i, μ_j) over the Mu basis.
pub fn pd_matrix(alg: &ValAlgebra, vs: &ValFunctional) -> Result<BTreeMap<(ValIndex, ValIndex), LambdaScalar>> {
    let idx = alg.dim().mu_indices();
    let mut out = BTreeMap::new();
    for a in &idx {
        for b in &idx {
            if b < a {
                continue;
            }
            let v = pd_pairing(alg, vs, &alg.mu(a.k, a.q)?, &alg.mu(b.k, b.q)?)?;
            if !v.is_zero() {
                out.insert((*a, *b), v.clone());
                out.insert((*b, *a), v);
            }
        }
    }
    Ok(out)
}
