use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::pi::Scalar;
use super::rational::{rbig, rint, Rational};
use crate::error::{domain, Result};

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn factorial_r(n: u32) -> Rational {
    rbig(factorial(n))
}

/// k!! for k ≥ −1, with (−1)!! = 0!! = 1.
pub fn double_factorial(k: i64) -> Result<BigInt> {
    if k < -1 {
        return domain(format!("double factorial of {k}"));
    }
    let mut acc = BigInt::one();
    let mut i = k;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    Ok(acc)
}

pub(crate) fn dfact_r(k: i64) -> Rational {
    rbig(double_factorial(k).expect("double factorial index"))
}

/// binom(n, k) for n ≥ 0; zero outside 0 ≤ k ≤ n.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn binom_r(n: i64, k: i64) -> Rational {
    rbig(binomial(n, k))
}

/// Generalized binomial coefficient binom(a, j) for rational a.
pub fn binom_general(a: &Rational, j: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc = acc * (a - rint(i as i64)) / rint(i as i64 + 1);
    }
    acc
}

/// Volume of the unit ball in ℝ^k, ω_k = π^{k/2}/Γ(k/2+1). Also valid for
/// k = −1, where the formula gives 1/π.
pub fn omega(k: i64) -> Result<Scalar> {
    if k < -1 {
        return domain(format!("omega_{k}"));
    }
    let m = k.div_euclid(2);
    if k % 2 == 0 {
        Ok(Scalar::term(factorial_r(m as u32).recip(), m as i32))
    } else {
        // ω_{2m+1} = 2^{m+1} π^m / (2m+1)!!
        let two = rbig(BigInt::from(2).pow((m + 1) as u32));
        Ok(Scalar::term(two / dfact_r(k), m as i32))
    }
}

pub(crate) fn om(k: i64) -> Scalar {
    omega(k).expect("omega index")
}

/// α_n = (n+1)ω_{n+1}, the volume of the unit sphere Sⁿ.
pub fn alpha(n: i64) -> Result<Scalar> {
    if n < 0 {
        return domain(format!("alpha_{n}"));
    }
    Ok(omega(n + 1)?.scale(&rint(n + 1)))
}

/// c_{nkq} = 1/(q!(n−k+q)!(k−2q)! ω_{2n−k}).
pub fn c_nkq(n: i64, k: i64, q: i64) -> Result<Scalar> {
    if q < 0 || n - k + q < 0 || k - 2 * q < 0 || k > 2 * n {
        return domain(format!("c_({n},{k},{q})"));
    }
    let d = factorial_r(q as u32) * factorial_r((n - k + q) as u32) * factorial_r((k - 2 * q) as u32);
    Ok(omega(2 * n - k)?.inv().expect("omega is a unit").scale(&d.recip()))
}

/// Coefficients of the principal kinematic formula:
/// a_{nkr} = ω_k ω_{2n−k} π^{−n} (n−r)!/(8^r (2n−4r)!) · (2n−2r+1)!!/(2n−4r+1)!! · binom(n,2r)^{−1}.
pub fn a_nkr(n: i64, k: i64, r: i64) -> Result<Scalar> {
    if n < 1 || k < 0 || k > 2 * n || r < 0 || 2 * r > k.min(2 * n - k) {
        return domain(format!("a_({n},{k},{r})"));
    }
    let rat = factorial_r((n - r) as u32)
        / (rbig(BigInt::from(8).pow(r as u32)) * factorial_r((2 * n - 4 * r) as u32))
        * dfact_r(2 * n - 2 * r + 1)
        / dfact_r(2 * n - 4 * r + 1)
        / binom_r(n, 2 * r);
    Ok((omega(k)? * omega(2 * n - k)?).shift_pi(-(n as i32)).scale(&rat))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstantKind {
    Omega,
    Alpha,
    DoubleFactorial,
    Binomial,
    CNkq,
    ANkr,
}

/// Uniform entry point over all named constants.
pub fn constant(kind: ConstantKind, idx: &[i64]) -> Result<Scalar> {
    let need = match kind {
        ConstantKind::Omega | ConstantKind::Alpha | ConstantKind::DoubleFactorial => 1,
        ConstantKind::Binomial => 2,
        ConstantKind::CNkq | ConstantKind::ANkr => 3,
    };
    if idx.len() != need {
        return domain(format!("{kind:?} takes {need} indices, got {}", idx.len()));
    }
    match kind {
        ConstantKind::Omega => omega(idx[0]),
        ConstantKind::Alpha => alpha(idx[0]),
        ConstantKind::DoubleFactorial => Ok(Scalar::rational(rbig(double_factorial(idx[0])?))),
        ConstantKind::Binomial => {
            if idx[0] < 0 {
                return domain("binomial with negative upper index");
            }
            Ok(Scalar::rational(binom_r(idx[0], idx[1])))
        }
        ConstantKind::CNkq => c_nkq(idx[0], idx[1], idx[2]),
        ConstantKind::ANkr => a_nkr(idx[0], idx[1], idx[2]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::rat;

    #[test]
    fn omega_values() {
        assert_eq!(omega(0).unwrap(), Scalar::one());
        assert_eq!(omega(1).unwrap(), Scalar::int(2));
        assert_eq!(omega(2).unwrap(), Scalar::pi_pow(1));
        assert_eq!(omega(3).unwrap(), Scalar::term(rat(4, 3), 1));
        assert_eq!(omega(4).unwrap(), Scalar::term(rat(1, 2), 2));
        assert_eq!(omega(-1).unwrap(), Scalar::pi_pow(-1));
        assert!(omega(-2).is_err());
    }

    #[test]
    fn omega_float_matches_gamma() {
        // ω_k = π^{k/2}/Γ(k/2+1) via the recursion ω_k = 2π/k · ω_{k−2}
        let mut prev = [1.0f64, 2.0];
        for k in 2..20i64 {
            let w = 2.0 * std::f64::consts::PI / k as f64 * prev[(k % 2) as usize];
            assert!((omega(k).unwrap().to_f64() - w).abs() < 1e-9 * w);
            prev[(k % 2) as usize] = w;
        }
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(-1).unwrap(), BigInt::one());
        assert_eq!(double_factorial(0).unwrap(), BigInt::one());
        assert_eq!(double_factorial(7).unwrap(), BigInt::from(105));
        assert!(double_factorial(-3).is_err());
    }

    #[test]
    fn a_nkr_small() {
        assert_eq!(a_nkr(1, 1, 0).unwrap(), Scalar::term(rat(2, 1), -1));
        assert_eq!(a_nkr(1, 0, 0).unwrap(), Scalar::rational(rat(1, 2)));
        assert!(a_nkr(1, 1, 1).is_err());
    }

    #[test]
    fn alpha_is_sphere_volume() {
        // |S^1| = 2π, |S^2| = 4π
        assert_eq!(alpha(1).unwrap(), Scalar::term(rint(2), 1));
        assert_eq!(alpha(2).unwrap(), Scalar::term(rint(4), 1));
    }

    #[test]
    fn dispatch() {
        assert_eq!(constant(ConstantKind::Binomial, &[5, 2]).unwrap(), Scalar::int(10));
        assert!(constant(ConstantKind::Omega, &[1, 2]).is_err());
    }
}
