//! Basis changes. Vectors here live in V^∞ truncated at a weighted degree;
//! restriction to a finite n happens afterwards by dropping indices.

use std::collections::BTreeMap;

use crate::poly::{one_minus_cx_half_pow, Poly};
use crate::scalar::constants::{binom_r, factorial_r, om};
use crate::scalar::rational::{rat, rint, Rational};
use crate::scalar::LambdaScalar;

pub(crate) type Vector = BTreeMap<(u32, u32), LambdaScalar>;

pub(crate) fn add_to(v: &mut Vector, key: (u32, u32), c: LambdaScalar) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(key).or_default();
    slot.add_in_place(&c);
    if slot.is_zero() {
        v.remove(&key);
    }
}

/// (a)_m / m!
fn rising_over_fact(a: &Rational, m: u32) -> Rational {
    let mut acc = rint(1);
    for j in 0..m {
        acc = acc * (a + rint(j as i64)) / rint(j as i64 + 1);
    }
    acc
}

/// [η^p](1−η)^{−1/2} = binom(2p,p)/4^p
fn eta_coeff(p: u32) -> Rational {
    binom_r(2 * p as i64, p as i64) / Rational::from_integer(num_bigint::BigInt::from(4).pow(p))
}

/// t^j in the τ basis, from the exponential generating functions
/// g_i = ξ^i(1−ξ)^{−i−1/2}(1−η)^{−1/2} (j = 2i) and
/// h_i = ξ^i(1−ξ)^{−i−3/2}(1−η)^{−1/2} (j = 2i+1).
pub(crate) fn t_power_tau(j: u32, lam: &LambdaScalar, cap: u32) -> Vector {
    let mut out = Vector::new();
    if j > cap {
        return out;
    }
    let i = j / 2;
    let odd = j % 2;
    let (prefactor, pi_shift, a) = if odd == 0 {
        (binom_r(2 * i as i64, i as i64), 0, rat(2 * i as i64 + 1, 2))
    } else {
        (
            Rational::from_integer(num_bigint::BigInt::from(2).pow(2 * i + 1)),
            -1,
            rat(2 * i as i64 + 3, 2),
        )
    };
    let mut lam_pows = vec![LambdaScalar::one()];
    // degree of τ_{2k+2p+odd, p} is 2(k+p)+odd ≤ cap, with k ≥ i
    let mut k = i;
    while 2 * k + odd <= cap {
        let mut p = 0;
        while 2 * (k + p) + odd <= cap {
            let e = (k + p - i) as usize;
            while lam_pows.len() <= e {
                let next = lam_pows.last().unwrap() * lam;
                lam_pows.push(next);
            }
            let c = &prefactor
                * factorial_r(k)
                * factorial_r(p)
                * rising_over_fact(&a, k - i)
                * eta_coeff(p);
            let coef = lam_pows[e].scale(&c).shift_pi(pi_shift - (k + p) as i32);
            add_to(&mut out, (2 * (k + p) + odd, p), coef);
            p += 1;
        }
        k += 1;
    }
    out
}

/// s·τ_kq = (k−2q+1)(k−2q+2)/(2π(k+2)) τ_{k+2,q} + (q+1)(2q+1)/(π(k+2)) τ_{k+2,q+1}
pub(crate) fn s_times_tau(v: &Vector, cap: u32) -> Vector {
    let mut out = Vector::new();
    for ((k, q), c) in v {
        let (k, q) = (*k as i64, *q as i64);
        if k + 2 > cap as i64 {
            continue;
        }
        let a = rat((k - 2 * q + 1) * (k - 2 * q + 2), 2 * (k + 2));
        let b = rat((q + 1) * (2 * q + 1), k + 2);
        add_to(&mut out, ((k + 2) as u32, q as u32), c.scale(&a).shift_pi(-1));
        add_to(&mut out, ((k + 2) as u32, (q + 1) as u32), c.scale(&b).shift_pi(-1));
    }
    out
}

/// τ_kq = Σ_{i≥q} binom(i,q) μ_ki
pub(crate) fn tau_to_mu(v: &Vector) -> Vector {
    let mut out = Vector::new();
    for ((k, q), c) in v {
        for i in *q..=k / 2 {
            add_to(&mut out, (*k, i), c.scale(&binom_r(i as i64, *q as i64)));
        }
    }
    out
}

/// μ_kq = Σ_{i≥q} (−1)^{i−q} binom(i,q) τ_ki
pub(crate) fn mu_to_tau(v: &Vector) -> Vector {
    let mut out = Vector::new();
    for ((k, q), c) in v {
        for i in *q..=k / 2 {
            let b = binom_r(i as i64, *q as i64);
            let b = if (i - q) % 2 == 0 { b } else { -b };
            add_to(&mut out, (*k, i), c.scale(&b));
        }
    }
    out
}

/// u_λ = 4s − t²(1−λs)
pub(crate) fn u_lambda(lam: &LambdaScalar) -> Poly {
    let one = LambdaScalar::one();
    Poly::monomial(1, 0, LambdaScalar::int(4)) - Poly::monomial(0, 2, one) + Poly::monomial(1, 2, lam.clone())
}

/// ST representative of μ^λ_kq:
/// (1−λs) Σ_i (−1)^{i+q} binom(i,q) π^k/(ω_k(k−2i)!(2i)!) (1−λs)^{k/2−i} t^{k−2i} u^i.
pub(crate) fn mu_to_st(k: u32, q: u32, lam: &LambdaScalar, cap: u32) -> Poly {
    let u = u_lambda(lam);
    let omega_inv = om(k as i64).inv().expect("omega is a unit");
    let mut out = Poly::zero();
    let mut u_pow = Poly::one();
    for _ in 0..q {
        u_pow = u_pow.mul_trunc(&u, cap);
    }
    for i in q..=k / 2 {
        let sign = if (i + q) % 2 == 0 { rint(1) } else { rint(-1) };
        let r = sign * binom_r(i as i64, q as i64)
            / (factorial_r(k - 2 * i) * factorial_r(2 * i));
        let c = LambdaScalar::from(omega_inv.shift_pi(k as i32).scale(&r));
        let series = one_minus_cx_half_pow((k - 2 * i + 2) as i64, lam, cap);
        let term = series
            .mul_trunc(&Poly::monomial(0, k - 2 * i, c), cap)
            .mul_trunc(&u_pow, cap);
        out += term;
        u_pow = u_pow.mul_trunc(&u, cap);
    }
    out
}

/// ST representative of τ^λ_kq = π^k/(ω_k(k−2q)!(2q)!) (1−λs)^{k/2−q+1} t^{k−2q} u^q.
pub(crate) fn tau_to_st(k: u32, q: u32, lam: &LambdaScalar, cap: u32) -> Poly {
    let u = u_lambda(lam);
    let r = factorial_r(k - 2 * q) * factorial_r(2 * q);
    let c = LambdaScalar::from(om(k as i64).inv().unwrap().shift_pi(k as i32).scale(&r.recip()));
    one_minus_cx_half_pow((k - 2 * q + 2) as i64, lam, cap)
        .mul_trunc(&Poly::monomial(0, k - 2 * q, c), cap)
        .mul_trunc(&u.pow_trunc(q, cap), cap)
}
