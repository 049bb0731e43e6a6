//! Binomial identities behind the conjecture and the complex kinematic formula.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::curvature::complex::{shifrin_identity_lhs, shifrin_identity_rhs};
use crate::scalar::constants::binomial;
use crate::scalar::Rational;

fn r(b: BigInt) -> Rational {
    Rational::from_integer(b)
}

fn sign(e: i64) -> Rational {
    r(BigInt::from(if e.rem_euclid(2) == 0 { 1 } else { -1 }))
}

/// Σ_i (−1)^i/(n+1−i) binom(n+1−i, i) binom(2n−2k−2i, n−k−i).
pub fn pfaff_saalschutz_sum(n: i64, k: i64) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..=(n + 1) / 2 {
        let term = r(binomial(n + 1 - i, i) * binomial(2 * n - 2 * k - 2 * i, n - k - i)) / r(BigInt::from(n + 1 - i));
        acc += sign(i) * term;
    }
    acc
}

/// (−1)^{n−k}/(n+1) binom(k, n−k)
pub fn gessel_closed_form(n: i64, k: i64) -> Rational {
    sign(n - k) * r(binomial(k, n - k)) / r(BigInt::from(n + 1))
}

fn multinomial(n: i64, parts: &[i64]) -> BigInt {
    if parts.iter().any(|p| *p < 0) || parts.iter().sum::<i64>() != n {
        return BigInt::zero();
    }
    let mut left = n;
    let mut acc = BigInt::from(1);
    for p in parts {
        acc *= binomial(left, *p);
        left -= p;
    }
    acc
}

/// The identity equivalent to the conjecture modulo filtration n+5; zero for k ≤ (n−3)/2.
pub fn filtration_five_sum(n: i64, k: i64) -> Rational {
    let mut acc = Rational::zero();
    for j in 0..=(n + 3) / 2 {
        let m = multinomial(n - j + 4, &[1, j, n - 2 * j + 3]);
        let term = r(m * binomial(2 * n - 2 * k - 2 * j, n - k - j)) / r(BigInt::from(n - j + 4));
        acc += sign(j + 1) * term;
    }
    for i in 0..=(n + 1) / 2 {
        let b = binomial(n - i + 1, i) * binomial(2 * n - 2 * k - 2 * i - 2, n - k - i - 1);
        let term = r(b) * r(BigInt::from(n - k - i + 1)) / r(BigInt::from(n - i + 1));
        acc += sign(i) * term;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    PfaffSaalschutz,
    Shifrin,
    GesselClosedForm,
    FiltrationFive,
}

impl Identity {
    pub const ALL: [Identity; 4] =
        [Identity::PfaffSaalschutz, Identity::Shifrin, Identity::GesselClosedForm, Identity::FiltrationFive];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::PfaffSaalschutz => "pfaff_saalschutz",
            Identity::Shifrin => "shifrin",
            Identity::GesselClosedForm => "gessel_closed_form",
            Identity::FiltrationFive => "filtration_five",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|i| i.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub bound: i64,
    pub cases: usize,
    /// First failing case: indices, brute-force sum, expected value.
    pub witness: Option<(Vec<i64>, String, String)>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Brute-force sums against closed forms for all indices up to `bound`.
pub fn identity_check(which: Identity, bound: i64) -> IdentityReport {
    let mut cases = 0;
    let mut witness = None;
    let mut test = |idx: Vec<i64>, lhs: Rational, rhs: Rational| {
        cases += 1;
        if lhs != rhs && witness.is_none() {
            witness = Some((idx, lhs.to_string(), rhs.to_string()));
        }
    };
    match which {
        Identity::PfaffSaalschutz => {
            // vanishing needs n−k > k; at 2k = n the closed form leaves ±1/(n+1)
            for n in 0..=bound {
                for k in (0..=n).take_while(|k| 2 * k < n) {
                    test(vec![n, k], pfaff_saalschutz_sum(n, k), Rational::zero());
                }
            }
        }
        Identity::GesselClosedForm => {
            for n in 0..=bound {
                for k in 0..=n {
                    test(vec![n, k], pfaff_saalschutz_sum(n, k), gessel_closed_form(n, k));
                }
            }
        }
        Identity::Shifrin => {
            for n in 0..=bound {
                for q in 0..=bound {
                    for k in 0..=bound {
                        for l in 0..=bound {
                            test(vec![n, q, k, l], shifrin_identity_lhs(n, q, k, l), shifrin_identity_rhs(n, q, k, l));
                        }
                    }
                }
            }
        }
        Identity::FiltrationFive => {
            for n in 3..=bound {
                for k in 0..=(n - 3) / 2 {
                    test(vec![n, k], filtration_five_sum(n, k), Rational::zero());
                }
            }
        }
    }
    IdentityReport { identity: which.name().into(), bound, cases, witness }
}
