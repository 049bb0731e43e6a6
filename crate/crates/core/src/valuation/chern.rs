//! Hermitian Chern valuations c^λ_k.

use std::collections::BTreeMap;

use super::algebra::ValAlgebra;
use super::element::{ValBasis, ValElement};
use crate::error::{Error, Result};
use crate::scalar::constants::{binom_r, factorial_r};
use crate::scalar::LambdaScalar;

/// c^λ_k = Σ_{q≥k} q! (λ/π)^{q−k} binom(q,k) μ^λ_{2q,q}
pub fn chern_valuation(alg: &ValAlgebra, k: u32) -> Result<ValElement> {
    let n = alg.n()?;
    if k > n {
        return Err(Error::Domain(format!("c_{k} in dimension {n}")));
    }
    let ratio = alg.lam().shift_pi(-1);
    let mut out = alg.zero(ValBasis::Mu);
    for q in k..=n {
        let c = ratio.pow(q - k).scale(&(factorial_r(q) * binom_r(q as i64, k as i64)));
        out.add_term((2 * q, q), &c);
    }
    Ok(out)
}

/// Coordinates in the Chern basis of an element of span{μ_{2q,q}}, using
/// μ^λ_{2q,q} = (1/q!) Σ_{k≥q} binom(k,q) (−λ/π)^{k−q} c^λ_k.
pub fn chern_from_mu(alg: &ValAlgebra, v: &ValElement) -> Result<BTreeMap<u32, LambdaScalar>> {
    let n = alg.n()?;
    let mu = alg.to_mu(v)?;
    let neg_ratio = -alg.lam().shift_pi(-1);
    let mut out: BTreeMap<u32, LambdaScalar> = BTreeMap::new();
    for ((k, q), c) in mu.terms() {
        if *k != 2 * q {
            return Err(Error::Domain(format!("mu[{k},{q}] is not in the span of the Chern valuations")));
        }
        for j in *q..=n {
            let d = neg_ratio.pow(j - q).scale(&(binom_r(j as i64, *q as i64) / factorial_r(*q)));
            let slot = out.entry(j).or_default();
            slot.add_in_place(&(c * &d));
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

pub fn chern_to_mu(alg: &ValAlgebra, coords: &BTreeMap<u32, LambdaScalar>) -> Result<ValElement> {
    let mut out = alg.zero(ValBasis::Mu);
    for (k, c) in coords {
        out += &chern_valuation(alg, *k)?.scale(c);
    }
    Ok(out)
}
