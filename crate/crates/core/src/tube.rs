//! Tube formulas as identities in the ring of TrigPolys.

use std::collections::BTreeMap;

use crate::curvature::{CurvIndex, CurvModule};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::constants::{binom_r, factorial_r, om};
use crate::scalar::rational::rint;
use crate::scalar::series::one_minus_x_half_pow;
use crate::scalar::{Lambda, LambdaScalar, Scalar, TrigPoly};
use crate::valuation::{chern_from_mu, chern_valuation, ValAlgebra, ValIndex};

pub type ValTube = BTreeMap<ValIndex, TrigPoly>;
pub type CurvTube = BTreeMap<CurvIndex, TrigPoly>;
pub type ChernTube = BTreeMap<u32, TrigPoly>;

fn omega(k: u32) -> LambdaScalar {
    LambdaScalar::from(om(k as i64))
}

fn push<K: Ord>(map: &mut BTreeMap<K, TrigPoly>, key: K, p: TrigPoly) {
    match map.get_mut(&key) {
        Some(slot) => slot.add_in_place(&p),
        None => {
            map.insert(key, p);
        }
    }
}

fn prune<K: Ord>(mut m: BTreeMap<K, TrigPoly>) -> BTreeMap<K, TrigPoly> {
    m.retain(|_, p| !p.is_zero());
    m
}

/// vol(A_r) = Σ_k ω_{2n−k} μ^λ_k(A) sn^{2n−k} cs^k, μ^λ_k = τ^λ_{k,0} = Σ_q μ^λ_kq.
pub fn global_tube(alg: &ValAlgebra) -> Result<ValTube> {
    let n = alg.n()?;
    let mut out = ValTube::new();
    for k in 0..=2 * n {
        for q in 0..=k / 2 {
            if alg.dim().valid_mu(k, q) {
                let p = TrigPoly::sn_cs(alg.lambda().clone(), 2 * n - k, k, omega(2 * n - k));
                push(&mut out, ValIndex::new(k, q), p);
            }
        }
    }
    Ok(prune(out))
}

/// T_r = vol + Σ_k ω_{2n−k} δμ^λ_k ∫₀^r sn^{2n−k} cs^k, in the Delta/N basis.
pub fn local_tube(m: &CurvModule, lambda: &Lambda) -> Result<CurvTube> {
    let n = m.dim().finite().ok_or_else(|| Error::Domain("local tube needs a finite dimension".into()))?;
    let mut out = CurvTube::new();
    out.insert(CurvIndex::delta(2 * n, n), TrigPoly::one(lambda.clone()));
    let lam = lambda.scalar();
    for k in 0..=2 * n {
        let dv = m.first_variation_mu(k, &lam)?;
        let atom = TrigPoly::integral(lambda.clone(), 2 * n - k, k);
        for (idx, c) in dv.terms() {
            push(&mut out, *idx, atom.scale(&(c * &omega(2 * n - k))));
        }
    }
    Ok(prune(out))
}

/// glob_λ applied coefficientwise.
pub fn globalize_tube(m: &CurvModule, tube: &CurvTube, alg: &ValAlgebra) -> Result<ValTube> {
    let mut out = ValTube::new();
    for (idx, p) in tube {
        let g = m.globalize(&m.basis_element(*idx)?, alg)?;
        for ((a, b), c) in g.terms() {
            push(&mut out, ValIndex::new(*a, *b), p.scale(c));
        }
    }
    Ok(prune(out))
}

/// Tube around a complex submanifold: the coefficient of c^λ_j is
/// Σ_{k≤j} ω_{2n−2k} sn^{2n−2k} cs^{2k} (1/k!) binom(j,k) (−λ/π)^{j−k}.
pub fn complex_tube(alg: &ValAlgebra) -> Result<ChernTube> {
    let n = alg.n()?;
    let ml = alg.lam().shift_pi(-1).scale(&rint(-1));
    let mut out = ChernTube::new();
    for j in 0..=n {
        let mut p = TrigPoly::zero(alg.lambda().clone());
        for k in 0..=j {
            let c = ml.pow(j - k).scale(&(binom_r(j as i64, k as i64) / factorial_r(k)));
            p += TrigPoly::sn_cs(alg.lambda().clone(), 2 * n - 2 * k, 2 * k, &c * &omega(2 * n - 2 * k));
        }
        out.insert(j, p);
    }
    Ok(prune(out))
}

/// The complex tube pushed back to Mu coordinates through the Chern valuations.
pub fn complex_tube_mu(alg: &ValAlgebra) -> Result<ValTube> {
    let mut out = ValTube::new();
    for (j, p) in complex_tube(alg)? {
        for ((a, b), c) in chern_valuation(alg, j)?.terms() {
            push(&mut out, ValIndex::new(*a, *b), p.scale(c));
        }
    }
    Ok(prune(out))
}

/// r_λ of the global tube: drop μ_kq with k ≠ 2q and rewrite μ_{2q,q} in Chern coordinates.
pub fn complex_projection(alg: &ValAlgebra, tube: &ValTube) -> Result<ChernTube> {
    let mut out = ChernTube::new();
    for (i, p) in tube {
        if i.k != 2 * i.q {
            continue;
        }
        for (j, c) in chern_from_mu(alg, &alg.mu(i.k, i.q)?)? {
            push(&mut out, j, p.scale(&c));
        }
    }
    Ok(prune(out))
}

/// Volume of the r-tube around ℂP^m_λ in ℂPⁿ_λ: (πⁿ/n!) Σ_{k≤m} λ^{−k} binom(n,k) sn^{2n−2k} cs^{2k}.
pub fn cpm_tube(alg: &ValAlgebra, m: u32) -> Result<TrigPoly> {
    let n = alg.n()?;
    if m > n {
        return Err(Error::Domain(format!("CP^{m} does not embed in dimension {n}")));
    }
    let lead = LambdaScalar::from(Scalar::term(factorial_r(n).recip(), n as i32));
    let mut out = TrigPoly::zero(alg.lambda().clone());
    for k in 0..=m {
        let c = alg.lambda().apply(&LambdaScalar::lambda_pow(-(k as i32)))?;
        let c = c.scale(&binom_r(n as i64, k as i64));
        out += TrigPoly::sn_cs(alg.lambda().clone(), 2 * n - 2 * k, 2 * k, &c * &lead);
    }
    Ok(out)
}

/// s ↦ t²/(4+λt²) = Σ_j (−λ)^j t^{2j+2}/4^{j+1}, truncated at weight `cap`.
pub fn totally_real_substitution(lam: &LambdaScalar, cap: u32) -> Poly {
    let mut out = Poly::zero();
    let mut c = LambdaScalar::ratio(1, 4);
    let step = lam.scale(&crate::scalar::rational::rat(-1, 4));
    let mut e = 2;
    while e <= cap {
        out.add_term((0, e), &c);
        c = &c * &step;
        e += 2;
    }
    out
}

/// (π^k/(k!ω_k)) t^k (1+λt²/4)^{−k/2−1}, truncated at weight `cap`.
pub fn totally_real_series(k: u32, lam: &LambdaScalar, cap: u32) -> Poly {
    let lead = LambdaScalar::from(om(k as i64).inv().unwrap().shift_pi(k as i32).scale(&factorial_r(k).recip()));
    let mut out = Poly::zero();
    if k > cap {
        return out;
    }
    let order = ((cap - k) / 2) as usize;
    let step = lam.scale(&crate::scalar::rational::rat(-1, 4));
    let mut p = LambdaScalar::one();
    for (j, r) in one_minus_x_half_pow(-(k as i64) - 2, order).iter().enumerate() {
        out.add_term((0, k + 2 * j as u32), &(&p * &lead).scale(r));
        p = &p * &step;
    }
    out
}

/// μ^λ_k = τ^λ_{k,0} restricted to totally real submanifolds minus the closed series.
/// Modulo (u) only t-degrees ≤ n carry information; the representatives
/// nevertheless agree with the series through t-degree 2n, which is what we compare.
pub fn totally_real_residual(alg: &ValAlgebra, k: u32) -> Result<Poly> {
    let n = alg.n()?;
    if k > n {
        return Err(Error::Domain(format!("totally real tube term k={k} in dimension {n}")));
    }
    let lam = alg.lam();
    let cap = alg.cap();
    let sub = totally_real_substitution(lam, cap);
    let rep = crate::valuation::convert::tau_to_st(k, 0, lam, cap);
    Ok(rep.compose(&sub, &Poly::t(), cap) - totally_real_series(k, lam, cap))
}

/// The same residual using the representatives of μ^λ_kq from the conversion tables.
pub fn totally_real_residual_mu(alg: &ValAlgebra, k: u32) -> Result<Poly> {
    let cap = alg.cap();
    let lam = alg.lam();
    let sub = totally_real_substitution(lam, cap);
    let mut rep = Poly::zero();
    for q in 0..=k / 2 {
        if alg.dim().valid_mu(k, q) {
            rep += alg.mu_st(ValIndex::new(k, q)).clone();
        }
    }
    Ok(rep.compose(&sub, &Poly::t(), cap) - totally_real_series(k, lam, cap))
}

/// ∫ χ(A ∩ g B_r) dg = Σ c_ij μ_i(A) μ_j(B_r), read off k_λ(χ).
pub fn kinematic_ball(alg: &ValAlgebra) -> Result<ValTube> {
    let mut balls: BTreeMap<ValIndex, TrigPoly> = BTreeMap::new();
    let mut out = ValTube::new();
    for ((i, j), c) in crate::valuation::kinematic_chi(alg)?.terms() {
        if !balls.contains_key(j) {
            let b = crate::valuation::eval_on_ball(alg, &alg.mu(j.k, j.q)?)?;
            balls.insert(*j, b);
        }
        push(&mut out, *i, balls[j].scale(c));
    }
    Ok(prune(out))
}

pub fn reduce_all<K: Ord + Clone>(m: &BTreeMap<K, TrigPoly>) -> BTreeMap<K, TrigPoly> {
    prune(m.iter().map(|(k, p)| (k.clone(), p.reduce())).collect())
}

pub fn differentiate_all<K: Ord + Clone>(m: &BTreeMap<K, TrigPoly>) -> BTreeMap<K, TrigPoly> {
    prune(m.iter().map(|(k, p)| (k.clone(), p.differentiate())).collect())
}

pub fn tube_eq<K: Ord + Clone>(a: &BTreeMap<K, TrigPoly>, b: &BTreeMap<K, TrigPoly>) -> bool {
    reduce_all(a) == reduce_all(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;

    fn lambdas() -> Vec<Lambda> {
        vec![Lambda::Formal, Lambda::zero(), Lambda::value(1, 1), Lambda::value(-1, 2)]
    }

    #[test]
    fn chi_and_vol_coefficients() {
        for n in 1..=3 {
            let alg = ValAlgebra::finite(n, Lambda::Formal);
            let g = global_tube(&alg).unwrap();
            let chi = TrigPoly::sn_cs(Lambda::Formal, 2 * n, 0, omega(2 * n));
            assert_eq!(g[&ValIndex::new(0, 0)].reduce(), chi.reduce());
        }
    }

    #[test]
    fn kinematic_formula_on_balls() {
        for n in 1..=3 {
            for lam in lambdas() {
                let alg = ValAlgebra::finite(n, lam.clone());
                assert!(tube_eq(&kinematic_ball(&alg).unwrap(), &global_tube(&alg).unwrap()), "n={n} {lam}");
            }
        }
    }

    #[test]
    fn local_tube_globalizes() {
        for n in 1..=3 {
            for lam in lambdas() {
                let alg = ValAlgebra::finite(n, lam.clone());
                let m = CurvModule::finite(n);
                let local = globalize_tube(&m, &local_tube(&m, &lam).unwrap(), &alg).unwrap();
                let global = global_tube(&alg).unwrap();
                assert!(tube_eq(&differentiate_all(&local), &differentiate_all(&global)), "n={n} {lam}");
            }
        }
    }

    #[test]
    fn local_tube_at_zero_radius_is_vol() {
        let lam = Lambda::value(1, 3);
        let m = CurvModule::finite(2);
        let t = local_tube(&m, &lam).unwrap();
        for (idx, p) in &t {
            let want = if *idx == CurvIndex::delta(4, 2) { 1.0 } else { 0.0 };
            assert!((p.eval(0.0, 0.0) - want).abs() < 1e-12);
        }
    }

    #[test]
    fn flat_local_tube_is_steiner() {
        // λ = 0: the coefficient of Δ_{k−1,q} is 2π ω_{2n−k−1} r^{2n−k+1}/(2n−k+1) = ω_{2n−k+1} r^{2n−k+1}
        let n = 3;
        let m = CurvModule::finite(n);
        let t = local_tube(&m, &Lambda::zero()).unwrap();
        for r in [0.5, 1.0] {
            for (idx, p) in &t {
                let j = 2 * n - idx.k;
                let want = om(j as i64).to_f64() * f64::powi(r, j as i32);
                assert!((p.eval(0.0, r) - want).abs() < 1e-10, "{idx} r={r}");
            }
        }
    }

    #[test]
    fn flat_limits_are_polynomials_in_r() {
        let alg = ValAlgebra::finite(3, Lambda::Formal);
        for (i, p) in global_tube(&alg).unwrap() {
            let f = p.flat_limit().unwrap();
            assert_eq!(f.keys().copied().collect::<Vec<_>>(), vec![6 - i.k], "{i}");
        }
    }

    #[test]
    fn numeric_shadow_of_local_tube() {
        // T_r integrates its own derivative: compare with quadrature of the global tube's derivative
        let n = 2;
        let m = CurvModule::finite(n);
        for lr in [rat(-1, 1), rat(1, 2), rat(1, 1)] {
            let lam = Lambda::Value(lr.clone());
            let alg = ValAlgebra::finite(n, lam.clone());
            let local = globalize_tube(&m, &local_tube(&m, &lam).unwrap(), &alg).unwrap();
            let global = global_tube(&alg).unwrap();
            let lf = crate::scalar::rational::to_f64(&lr);
            for r in [0.25, 0.5, 1.0] {
                for (i, p) in &global {
                    let d = local.get(i).map(|q| q.eval(lf, r)).unwrap_or(0.0);
                    let want = p.eval(lf, r) - p.eval(lf, 0.0) + if i.k == 2 * n { 1.0 } else { 0.0 };
                    assert!((d - want).abs() < 1e-10, "{i} r={r} lambda={lf}");
                }
            }
        }
    }

    #[test]
    fn ball_is_cpm_zero() {
        for n in 1..=4 {
            let alg = ValAlgebra::finite(n, Lambda::Formal);
            let want = TrigPoly::sn_cs(Lambda::Formal, 2 * n, 0, LambdaScalar::from(Scalar::term(factorial_r(n).recip(), n as i32)));
            assert_eq!(cpm_tube(&alg, 0).unwrap(), want);
        }
    }

    #[test]
    fn cpm_tube_fills_projective_space() {
        for n in 1..=4u32 {
            let alg = ValAlgebra::finite(n, Lambda::value(1, 1));
            let r = std::f64::consts::FRAC_PI_2;
            let v = cpm_tube(&alg, n).unwrap().eval(1.0, r);
            let want = std::f64::consts::PI.powi(n as i32) / (1..=n).product::<u32>() as f64;
            assert!((v - want).abs() < 1e-10);
        }
    }

    #[test]
    fn complex_tube_is_projection_of_global_tube() {
        for n in 1..=3 {
            for lam in [Lambda::Formal, Lambda::value(2, 3)] {
                let alg = ValAlgebra::finite(n, lam);
                let proj = complex_projection(&alg, &global_tube(&alg).unwrap()).unwrap();
                assert!(tube_eq(&proj, &complex_tube(&alg).unwrap()), "n={n}");
            }
        }
    }

    #[test]
    fn complex_tube_on_projective_subspaces() {
        for n in 1..=4 {
            let alg = ValAlgebra::finite(n, Lambda::Formal);
            let ct = complex_tube_mu(&alg).unwrap();
            for m in 0..=n {
                let mut acc = TrigPoly::zero(Lambda::Formal);
                for (i, p) in &ct {
                    let v = crate::valuation::eval_on_cpm(&alg, &alg.mu(i.k, i.q).unwrap(), m).unwrap();
                    acc += p.scale(&v);
                }
                assert_eq!(acc.reduce(), cpm_tube(&alg, m).unwrap().reduce(), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn u_vanishes_on_totally_real() {
        let lam = LambdaScalar::lambda();
        let u = crate::valuation::convert::u_lambda(&lam);
        for cap in 1..=10 {
            assert!(u.compose(&totally_real_substitution(&lam, cap), &Poly::t(), cap).is_zero());
        }
    }

    #[test]
    fn totally_real_residuals_vanish() {
        for n in 1..=5 {
            for lam in [Lambda::Formal, Lambda::value(-3, 2)] {
                let alg = ValAlgebra::finite(n, lam.clone());
                for k in 0..=n {
                    assert!(totally_real_residual(&alg, k).unwrap().is_zero(), "n={n} k={k} {lam}");
                    assert!(totally_real_residual_mu(&alg, k).unwrap().is_zero(), "n={n} k={k} {lam}");
                }
            }
        }
    }
}
