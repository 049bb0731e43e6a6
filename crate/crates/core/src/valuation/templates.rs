//! Evaluation on the templates ℂP^m_λ and geodesic balls.

use super::algebra::ValAlgebra;
use super::element::ValElement;
use crate::error::{Error, Result};
use crate::scalar::constants::{c_nkq, factorial_r};
use crate::scalar::rational::rint;
use crate::scalar::{Lambda, LambdaScalar, Scalar, TrigPoly};

/// λ^{−q} under the algebra's λ-mode.
fn lambda_inv_pow(lambda: &Lambda, q: u32) -> Result<LambdaScalar> {
    match lambda {
        Lambda::Formal => Ok(LambdaScalar::lambda_pow(-(q as i32))),
        Lambda::Value(r) => LambdaScalar::lambda_pow(-(q as i32)).specialize(r),
    }
}

/// φ(ℂP^m_λ): restrict to V^m_λ, then μ^λ_{2q,q}(ℂP^m_λ) = π^q/(q! λ^q) and μ^λ_kq = 0 for k ≠ 2q.
pub fn eval_on_cpm(alg: &ValAlgebra, v: &ValElement, m: u32) -> Result<LambdaScalar> {
    let n = alg.n()?;
    if m > n {
        return Err(Error::Domain(format!("CP^{m} does not embed in dimension {n}")));
    }
    let r = alg.restrict(v, m)?;
    let mut acc = LambdaScalar::zero();
    for ((k, q), c) in r.terms() {
        if *k != 2 * q {
            continue;
        }
        let val = LambdaScalar::from(Scalar::term(factorial_r(*q).recip(), *q as i32));
        acc += c * &(&val * &lambda_inv_pow(alg.lambda(), *q)?);
    }
    Ok(acc)
}

/// φ(B_r) with μ^λ_kq(B_r) = c_nkq 2^{k−2q} πⁿ sn^k cs^{2n−k}.
pub fn eval_on_ball(alg: &ValAlgebra, v: &ValElement) -> Result<TrigPoly> {
    let n = alg.n()?;
    let mu = alg.to_mu(v)?;
    let mut acc = TrigPoly::zero(alg.lambda().clone());
    for ((k, q), c) in mu.terms() {
        let pow2 = (0..k - 2 * q).fold(rint(1), |a, _| a * rint(2));
        let coef = LambdaScalar::from(c_nkq(n as i64, *k as i64, *q as i64)?.shift_pi(n as i32).scale(&pow2));
        acc += TrigPoly::sn_cs(alg.lambda().clone(), *k, 2 * n - k, c * &coef);
    }
    Ok(acc)
}
