//! Integral geometry of complex subvarieties: K_ℂ, Chern curvature measures
//! and the Shifrin formulas.

use std::collections::BTreeMap;

use super::element::{CurvBasis, CurvElement, CurvTensor};
use super::index::{CurvIndex, Family};
use super::module::CurvModule;
use crate::error::Result;
use crate::scalar::constants::{binom_r, factorial_r};
use crate::scalar::LambdaScalar;

pub type ChernCoords = BTreeMap<u32, LambdaScalar>;
pub type ChernTensor = BTreeMap<(u32, u32), LambdaScalar>;

fn add(map: &mut ChernTensor, key: (u32, u32), c: LambdaScalar) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(key).or_default();
    slot.add_in_place(&c);
    if slot.is_zero() {
        map.remove(&key);
    }
}

/// C^λ_k = Σ_{q≥k} q! binom(q+1,k+1) (λ/π)^{q−k} Γ_{2q,q}, as Γ_{2q,q}-coordinates.
pub fn chern_to_gamma(n: u32, k: u32, lam: &LambdaScalar) -> ChernCoords {
    let ratio = lam.shift_pi(-1);
    (k..=n)
        .map(|q| (q, ratio.pow(q - k).scale(&(factorial_r(q) * binom_r(q as i64 + 1, k as i64 + 1)))))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Γ_{2q,q} = (1/q!) Σ_{k≥q} (−λ/π)^{k−q} binom(k+1,q+1) C^λ_k, as Chern coordinates.
pub fn gamma_to_chern(n: u32, q: u32, lam: &LambdaScalar) -> ChernCoords {
    let ratio = -lam.shift_pi(-1);
    (q..=n)
        .map(|k| (k, ratio.pow(k - q).scale(&(binom_r(k as i64 + 1, q as i64 + 1) / factorial_r(q)))))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// K_ℂ(Γ_{2q,q}) = (1/(n! q!)) Σ_{i+j=n+q} i! j! Γ_{2i,i} ⊗ Γ_{2j,j}.
pub fn complex_kinematic(n: u32, q: u32) -> CurvTensor {
    let mut out = CurvTensor::zero();
    let den = factorial_r(n) * factorial_r(q);
    for i in q..=n {
        let j = n + q - i;
        let c = factorial_r(i) * factorial_r(j) / &den;
        out.add_term(CurvIndex::gamma(2 * i, i), CurvIndex::gamma(2 * j, j), &LambdaScalar::rational(c));
    }
    out
}

/// Closed form K_ℂ(Ch_q) = (1/n!) Σ_{k+l≥n+q} (−λ/π)^{k+l−n−q} binom(k+l−q, n) Ch_k ⊗ Ch_l.
pub fn shifrin(n: u32, q: u32, lam: &LambdaScalar) -> ChernTensor {
    let ratio = -lam.shift_pi(-1);
    let mut out = ChernTensor::new();
    for k in 0..=n {
        for l in 0..=n {
            if k + l < n + q {
                continue;
            }
            let c = binom_r((k + l - q) as i64, n as i64) / factorial_r(n);
            add(&mut out, (k, l), ratio.pow(k + l - n - q).scale(&c));
        }
    }
    out
}

/// K_ℂ(Ch_q) obtained from K_ℂ(Γ) and the Chern/Γ conversions.
pub fn shifrin_from_gamma(n: u32, q: u32, lam: &LambdaScalar) -> ChernTensor {
    let mut out = ChernTensor::new();
    for (r, c) in chern_to_gamma(n, q, lam) {
        for ((a, b), d) in complex_kinematic(n, r).terms() {
            for (k, e) in gamma_to_chern(n, a.q, lam) {
                for (l, f) in gamma_to_chern(n, b.q, lam) {
                    add(&mut out, (k, l), &(&(&c * d) * &e) * &f);
                }
            }
        }
    }
    out
}

impl CurvModule {
    /// Coefficients of Γ_{2q,q} in the B/Γ expansion; the rest lies in ker R_λ.
    pub fn complex_project(&self, c: &CurvElement) -> Result<ChernCoords> {
        let bg = self.convert(c, CurvBasis::BGamma)?;
        Ok(bg
            .terms()
            .filter(|(i, _)| i.family == Family::Gamma && i.k == 2 * i.q)
            .map(|(i, v)| (i.q, v.clone()))
            .collect())
    }

    /// (R⊗R)∘K∘S on Γ_{2q,q}, read off from the local kinematic operator.
    pub fn complex_kinematic_from_local(&self, q: u32) -> Result<CurvTensor> {
        let g = CurvElement::basis_vector(self.dim(), CurvIndex::gamma(2 * q, q))?;
        let k = self.local_kinematic(&g)?;
        let mut proj: BTreeMap<CurvIndex, ChernCoords> = BTreeMap::new();
        let mut out = CurvTensor::zero();
        for ((a, b), c) in k.terms() {
            for i in [a, b] {
                if !proj.contains_key(i) {
                    proj.insert(*i, self.complex_project(&CurvElement::basis_vector(self.dim(), *i)?)?);
                }
            }
            for (i, x) in &proj[a] {
                for (j, y) in &proj[b] {
                    out.add_term(CurvIndex::gamma(2 * i, *i), CurvIndex::gamma(2 * j, *j), &(&(c * x) * y));
                }
            }
        }
        Ok(out)
    }
}

/// The numerical identity behind the Shifrin formula, summed by brute force:
/// Σ_{i+j≥n+q} (−1)^{i+j} binom(i+j−n+1,q+1) binom(k+1,i+1) binom(l+1,j+1).
pub fn shifrin_identity_lhs(n: i64, q: i64, k: i64, l: i64) -> crate::scalar::Rational {
    let mut acc = binom_r(0, 1);
    for i in -1..=k {
        for j in -1..=l {
            if i + j < n + q {
                continue;
            }
            let s = binom_r(i + j - n + 1, q + 1) * binom_r(k + 1, i + 1) * binom_r(l + 1, j + 1);
            if (i + j) % 2 == 0 {
                acc += s;
            } else {
                acc -= s;
            }
        }
    }
    acc
}

/// (−1)^{n+q} binom(k+l−q, n).
pub fn shifrin_identity_rhs(n: i64, q: i64, k: i64, l: i64) -> crate::scalar::Rational {
    let b = binom_r(k + l - q, n);
    if (n + q) % 2 == 0 {
        b
    } else {
        -b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Lambda;
    use crate::valuation::{chern_valuation, eval_on_cpm, ValAlgebra};

    #[test]
    fn k_c_matches_local_kinematic() {
        for n in 1..=4 {
            let m = CurvModule::finite(n);
            for q in 0..=n {
                assert_eq!(m.complex_kinematic_from_local(q).unwrap(), complex_kinematic(n, q), "n={n} q={q}");
            }
        }
    }

    #[test]
    fn k_c_n1() {
        let mut expect = CurvTensor::zero();
        expect.add_term(CurvIndex::gamma(0, 0), CurvIndex::gamma(2, 1), &LambdaScalar::one());
        expect.add_term(CurvIndex::gamma(2, 1), CurvIndex::gamma(0, 0), &LambdaScalar::one());
        assert_eq!(complex_kinematic(1, 0), expect);
    }

    #[test]
    fn gamma_templates() {
        // [Γ_{2k,k}]_λ(ℂP^j) = δ_jk π^j/(λ^j j!)
        let n = 4;
        let m = CurvModule::finite(n);
        let alg = ValAlgebra::finite(n, Lambda::Formal);
        for k in 0..=n {
            let g = m.globalize(&CurvElement::basis_vector(m.dim(), CurvIndex::gamma(2 * k, k)).unwrap(), &alg).unwrap();
            for j in 0..=n {
                let v = eval_on_cpm(&alg, &g, j).unwrap();
                let expect = if j == k {
                    LambdaScalar::monomial(factorial_r(j).recip(), j as i32, -(j as i32))
                } else {
                    LambdaScalar::zero()
                };
                assert_eq!(v, expect, "k={k} j={j}");
            }
        }
    }

    #[test]
    fn chern_conversions_are_inverse_and_globalize() {
        let lam = LambdaScalar::lambda();
        let n = 5;
        let m = CurvModule::finite(n);
        let alg = ValAlgebra::finite(n, Lambda::Formal);
        for k in 0..=n {
            let mut back = ChernCoords::new();
            for (q, c) in chern_to_gamma(n, k, &lam) {
                for (j, d) in gamma_to_chern(n, q, &lam) {
                    let slot = back.entry(j).or_default();
                    slot.add_in_place(&(&c * &d));
                }
            }
            back.retain(|_, c| !c.is_zero());
            assert_eq!(back, ChernCoords::from([(k, LambdaScalar::one())]));
            let mut cm = CurvElement::zero(m.dim(), CurvBasis::BGamma);
            for (q, c) in chern_to_gamma(n, k, &lam) {
                cm.add_term(CurvIndex::gamma(2 * q, q), &c);
            }
            assert_eq!(m.globalize(&cm, &alg).unwrap(), chern_valuation(&alg, k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn shifrin_two_ways() {
        for lam in [LambdaScalar::lambda(), LambdaScalar::zero(), LambdaScalar::int(1)] {
            for n in 0..=5 {
                for q in 0..=n {
                    assert_eq!(shifrin_from_gamma(n, q, &lam), shifrin(n, q, &lam), "n={n} q={q}");
                }
            }
        }
    }

    #[test]
    fn numerical_identity() {
        for n in 0..=8 {
            for q in 0..=8 {
                for k in 0..=8 {
                    for l in 0..=8 {
                        assert_eq!(shifrin_identity_lhs(n, q, k, l), shifrin_identity_rhs(n, q, k, l), "{n} {q} {k} {l}");
                    }
                }
            }
        }
    }
}
