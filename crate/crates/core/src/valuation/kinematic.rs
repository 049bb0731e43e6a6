//! Global kinematic formulas k_λ.

use std::collections::BTreeMap;

use super::algebra::ValAlgebra;
use super::element::ValElement;
use super::tensor::ValTensor;
use crate::error::Result;
use crate::poly::{tu_to_st, Poly};
use crate::scalar::constants::{a_nkr, dfact_r, factorial_r, om};
use crate::scalar::rational::rint;
use crate::scalar::LambdaScalar;

/// π_kr in (s, t) at λ = 0:
/// (−1)^r (2n−4r+1)!! π^k/ω_k Σ_{i≤r} (−1)^i (2r−2i−1)!!/((2r−2i)!(2i)!(2n−2r−2i+1)!!) t^{k−2i} u^i
pub fn pi_kr(n: u32, k: u32, r: u32) -> Poly {
    let (n, k, r) = (n as i64, k as i64, r as i64);
    let lead = dfact_r(2 * n - 4 * r + 1) * if r % 2 == 0 { rint(1) } else { rint(-1) };
    let scale = LambdaScalar::from(om(k).inv().unwrap().shift_pi(k as i32).scale(&lead));
    let mut tu = Poly::zero();
    for i in 0..=r {
        if k - 2 * i < 0 {
            break;
        }
        let c = dfact_r(2 * r - 2 * i - 1)
            / (factorial_r((2 * r - 2 * i) as u32)
                * factorial_r((2 * i) as u32)
                * dfact_r(2 * n - 2 * r - 2 * i + 1));
        let c = if i % 2 == 0 { c } else { -c };
        tu.add_term((i as u32, (k - 2 * i) as u32), &LambdaScalar::rational(c));
    }
    tu_to_st(&tu).scale(&scale)
}

/// Index pairs (k, r) of the principal kinematic formula, 0 ≤ r ≤ ⌊min(k, 2n−k)/2⌋.
pub fn kr_range(n: u32) -> Vec<(u32, u32)> {
    let mut v = vec![];
    for k in 0..=2 * n {
        for r in 0..=k.min(2 * n - k) / 2 {
            v.push((k, r));
        }
    }
    v
}

/// k_λ(χ) = Σ a_nkr F_λ(π_kr) ⊗ F_λ(π_{2n−k,r}).
pub fn kinematic_chi(alg: &ValAlgebra) -> Result<&ValTensor> {
    if let Some(t) = alg.kin_chi.get() {
        return Ok(t);
    }
    let n = alg.n()?;
    let flat = alg.flat();
    let mut images: BTreeMap<(u32, u32), ValElement> = BTreeMap::new();
    for (k, r) in kr_range(n) {
        let v = flat.poly_to_mu(&pi_kr(n, k, r));
        images.insert((k, r), flat.relabel_to(&v, alg)?);
    }
    let mut out = ValTensor::zero(alg.dim(), alg.lambda().clone());
    for (k, r) in kr_range(n) {
        let a = LambdaScalar::from(a_nkr(n as i64, k as i64, r as i64)?);
        let t = ValTensor::outer(&images[&(k, r)], &images[&(2 * n - k, r)])?;
        out.add_in_place(&t.scale(&a));
    }
    Ok(alg.kin_chi.get_or_init(|| out))
}

/// k_λ(v) = (v ⊗ χ)·k_λ(χ).
pub fn kinematic(alg: &ValAlgebra, v: &ValElement) -> Result<ValTensor> {
    let kc = kinematic_chi(alg)?;
    let v = alg.to_mu(v)?;
    kc.map_legs(
        alg.dim(),
        alg.lambda().clone(),
        |i| alg.multiply(&v, &alg.mu(i.k, i.q)?),
        |j| alg.mu(j.k, j.q),
    )
}

