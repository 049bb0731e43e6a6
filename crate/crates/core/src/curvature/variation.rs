use super::element::{CurvBasis, CurvElement};
use super::index::CurvIndex;
use super::module::CurvModule;
use crate::error::{Error, Result};
use crate::scalar::constants::om;
use crate::scalar::rational::rint;
use crate::scalar::LambdaScalar;

impl CurvModule {
    /// First variation (k = 0 is allowed and has no Δ part) δμ^λ_k = ω_{2n−k−1}/ω_{2n−k} (2π Δ_{k−1} − λ Σ_q (k−2q+1) B_{k+1,q}),
    /// with Δ_{k−1} = Σ_q Δ_{k−1,q}. Unit weights are forced by the flat case:
    /// glob₀ Δ_{k−1} = μ_{k−1}, and then 2π ω_{2n−k−1}/(2n−k+1) = ω_{2n−k+1}
    /// recovers the Steiner coefficient.
    pub fn first_variation_mu(&self, k: u32, lam: &LambdaScalar) -> Result<CurvElement> {
        let n = self
            .dim()
            .finite()
            .ok_or_else(|| Error::Domain("first variation needs a finite dimension".into()))?;
        if k > 2 * n {
            return Err(Error::Domain(format!("first variation of mu_{k} in dimension {n}")));
        }
        let ratio = LambdaScalar::from(om(2 * n as i64 - k as i64 - 1) * om(2 * n as i64 - k as i64).inv().unwrap());
        let mut out = self.zero();
        for q in (0..k.max(1)).take_while(|q| 2 * q < k) {
            out.add_term(CurvIndex::delta(k - 1, q), &LambdaScalar::pi_pow(1).scale(&rint(2)));
        }
        if !lam.is_zero() {
            let mut b = CurvElement::zero(self.dim(), CurvBasis::BGamma);
            for q in 0..=k / 2 {
                b.add_term(CurvIndex::b(k + 1, q), &lam.scale(&rint(-(k as i64 - 2 * q as i64 + 1))));
            }
            out += &self.convert(&b, CurvBasis::DeltaN)?;
        }
        Ok(out.scale(&ratio))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::Family;
    use crate::valuation::ValBasis;
    use crate::Lambda;

    #[test]
    fn flat_variation_globalizes_to_mu() {
        for n in 1..=4u32 {
            let m = CurvModule::finite(n);
            for k in 1..=2 * n {
                let d = m.first_variation_mu(k, &LambdaScalar::zero()).unwrap();
                let g = m.glob0(&d).unwrap();
                let c = LambdaScalar::from(om(2 * n as i64 - k as i64 - 1) * om(2 * n as i64 - k as i64).inv().unwrap())
                    .shift_pi(1)
                    .scale(&rint(2));
                let mut want = m.flat().zero(ValBasis::Mu);
                for q in 0..=(k - 1) / 2 {
                    if m.dim().valid_mu(k - 1, q) {
                        want.add_term((k - 1, q), &c);
                    }
                }
                assert!(m.flat().equal(&g, &want).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn top_degree_drops_b_terms() {
        let n = 2;
        let m = CurvModule::finite(n);
        let lam = Lambda::Formal.scalar();
        let d = m.first_variation_mu(2 * n, &lam).unwrap();
        assert!(d.terms().all(|(i, _)| i.k == 2 * n - 1 && i.family == Family::Delta));
        let d = m.first_variation_mu(2 * n - 2, &lam).unwrap();
        assert!(d.terms().any(|(i, _)| i.k == 2 * n - 1));
        assert!(m.first_variation_mu(2 * n + 1, &lam).is_err());
    }
}
