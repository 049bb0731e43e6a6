//! The conjectured presentation of V^n_λ, checked by the template method.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::scalar::constants::binomial;
use crate::scalar::Rational;

/// c_m = binom(4m+1, m+1) − 9 binom(4m+1, m−1), the coefficient of λ^m x^{−2m}.
pub fn series_coeff(m: u32) -> BigInt {
    if m == 0 {
        return BigInt::one();
    }
    let m = m as i64;
    binomial(4 * m + 1, m + 1) - BigInt::from(9) * binomial(4 * m + 1, m - 1)
}

/// Key (a, b, m) for s^a t^b λ^m.
pub type Key = (u32, u32, u32);

/// f̄_{n+1}: the x^{n+1} coefficient of log(1 + s x² + t x + Σ_{m≥1} c_m λ^m x^{−2m}),
/// keeping only terms of weight 2a+b ≤ 2n (everything else is zero in V^n_λ).
/// `lambda_terms` caps the number of λ-series terms used.
pub fn fbar(n: u32, lambda_terms: Option<u32>) -> BTreeMap<Key, Rational> {
    let top = 2 * n;
    let max_m = n.saturating_sub(1) / 2;
    let used = lambda_terms.unwrap_or(max_m).min(max_m);
    let mut y: Vec<(Key, BigInt)> = vec![((1, 0, 0), BigInt::one()), ((0, 1, 0), BigInt::one())];
    for m in 1..=used {
        y.push(((0, 0, m), series_coeff(m)));
    }
    let mut power: BTreeMap<Key, BigInt> = BTreeMap::new();
    power.insert((0, 0, 0), BigInt::one());
    let mut out: BTreeMap<Key, Rational> = BTreeMap::new();
    for j in 1.. {
        let mut next: BTreeMap<Key, BigInt> = BTreeMap::new();
        for ((a, b, m), c) in &power {
            for ((da, db, dm), d) in &y {
                let key = (a + da, b + db, m + dm);
                if 2 * key.0 + key.1 > top || key.2 > max_m {
                    continue;
                }
                *next.entry(key).or_insert_with(BigInt::zero) += c * d;
            }
        }
        if next.is_empty() {
            break;
        }
        let sign = if j % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        for (key, c) in &next {
            let (a, b, m) = *key;
            if 2 * a + b == n + 1 + 2 * m {
                let v = Rational::new(&sign * c, BigInt::from(j));
                let slot = out.entry(*key).or_insert_with(Rational::zero);
                *slot += v;
            }
        }
        power = next;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// t^b(ℂP^m_λ) at λ = 1: binom(b, b/2) binom(m+1, b/2+1) for even b, else 0.
pub fn t_power_on_cpm(m: i64, b: u32) -> BigInt {
    if b % 2 == 1 || m < 0 {
        return BigInt::zero();
    }
    let i = (b / 2) as i64;
    binomial(2 * i, i) * binomial(m + 1, i + 1)
}

/// (s^a t^b)(ℂPⁿ_λ) at λ = 1. s^a is the Crofton integral over totally
/// geodesic ℂP^{n−a}, so the value is t^b(ℂP^{n−a}); the λ-power is λ^{−a−b/2}.
pub fn monomial_on_cpm(n: u32, a: u32, b: u32) -> BigInt {
    t_power_on_cpm(n as i64 - a as i64, b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub n: u32,
    pub terms: usize,
    pub pairings: usize,
    /// (j, k, value) for every non-vanishing pairing (f̄_{n+1} s^j t^k)(ℂPⁿ).
    pub failures: Vec<(u32, u32, String)>,
    pub millis: u128,
}

impl ConjectureRow {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_dimension(n: u32, lambda_terms: Option<u32>) -> ConjectureRow {
    let start = Instant::now();
    let f = fbar(n, lambda_terms);
    let mut pairings = 0;
    let mut failures = vec![];
    for j in 0..=n / 2 {
        for k in 0..=n - 2 * j {
            pairings += 1;
            let mut acc = Rational::zero();
            for ((a, b, _), c) in &f {
                let v = monomial_on_cpm(n, a + j, b + k);
                if !v.is_zero() {
                    acc += c * Rational::from_integer(v);
                }
            }
            if !acc.is_zero() {
                failures.push((j, k, acc.to_string()));
            }
        }
    }
    ConjectureRow { n, terms: f.len(), pairings, failures, millis: start.elapsed().as_millis() }
}

/// Checks every n in 2..=n_max; rows come back in order of n.
pub fn conjecture_check(n_max: u32, lambda_terms: Option<u32>) -> Vec<ConjectureRow> {
    (2..=n_max).into_par_iter().map(|n| check_dimension(n, lambda_terms)).collect()
}
