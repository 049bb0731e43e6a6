use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::element::{CurvBasis, CurvElement, CurvTensor};
use super::index::{CurvIndex, Family};
use crate::error::{Error, Result};
use crate::poly::{one_minus_cx_half_pow, tu_to_st, Poly};
use crate::scalar::constants::{factorial_r, om};
use crate::scalar::rational::{rat, rint};
use crate::scalar::{Lambda, LambdaScalar, Rational, Scalar};
use crate::valuation::{Dim, ValAlgebra, ValBasis, ValElement};

fn pi_c(r: Rational, pi: i32) -> LambdaScalar {
    LambdaScalar::monomial(r, pi, 0)
}

/// ω_{k+1}/(π ω_k)
fn omega_ratio(k: u32) -> LambdaScalar {
    LambdaScalar::from((om(k as i64 + 1) * om(k as i64).inv().unwrap()).shift_pi(-1))
}

fn s_image(idx: CurvIndex) -> Vec<(CurvIndex, LambdaScalar)> {
    let (k, q) = (idx.k as i64, idx.q as i64);
    let (ku, qu) = (idx.k + 2, idx.q);
    let a = (k - 2 * q + 2) * (k - 2 * q + 1);
    match idx.family {
        Family::Delta => vec![
            (CurvIndex::delta(ku, qu), pi_c(rat(a, 2 * (k + 2)), -1)),
            (CurvIndex::delta(ku, qu + 1), pi_c(rat(2 * (q + 1) * (k - q + 1), k + 2), -1)),
            (CurvIndex::n(ku, qu), pi_c(rat(-a, (k + 2) * (k + 4)), -1)),
            (CurvIndex::n(ku, qu + 1), pi_c(rat(-2 * (q + 1) * (k - 2 * q), (k + 2) * (k + 4)), -1)),
        ],
        Family::N => vec![
            (CurvIndex::n(ku, qu), pi_c(rat(a, 2 * (k + 4)), -1)),
            (CurvIndex::n(ku, qu + 1), pi_c(rat(2 * (q + 1) * (k - q + 2), k + 4), -1)),
        ],
        _ => unreachable!("s acts on the Delta/N basis"),
    }
}

fn t_image(idx: CurvIndex) -> Vec<(CurvIndex, LambdaScalar)> {
    let (k, q) = (idx.k as i64, idx.q as i64);
    let w = omega_ratio(idx.k);
    match idx.family {
        Family::Delta => vec![
            (CurvIndex::delta(idx.k + 1, idx.q), w.scale(&rint(k - 2 * q + 1))),
            (CurvIndex::delta(idx.k + 1, idx.q + 1), w.scale(&rint(2 * (q + 1)))),
        ],
        Family::N => {
            let w = w.scale(&rat(k + 2, k + 3));
            vec![
                (CurvIndex::n(idx.k + 1, idx.q), w.scale(&rint(k - 2 * q + 1))),
                (CurvIndex::n(idx.k + 1, idx.q + 1), w.scale(&rat(2 * (q + 1) * (k - 2 * q - 1), k - 2 * q))),
            ]
        }
        _ => unreachable!("t acts on the Delta/N basis"),
    }
}

/// Curv^{U(n)} (or its capped U(∞) version) as a module over the flat
/// algebra Val^{U(n)}, together with the maps ℓ, 𝔫 and glob_λ.
pub struct CurvModule {
    dim: Dim,
    flat: ValAlgebra,
    // (generator is N10, a, b) ↦ s^a t^b · generator
    monomials: Mutex<HashMap<(bool, u32, u32), CurvElement>>,
    pub(crate) kin: OnceLock<(CurvTensor, CurvTensor)>,
}

impl CurvModule {
    pub fn new(dim: Dim) -> Self {
        CurvModule { dim, flat: ValAlgebra::new(dim, Lambda::zero()), monomials: Mutex::new(HashMap::new()), kin: OnceLock::new() }
    }

    pub fn finite(n: u32) -> Self {
        Self::new(Dim::Finite(n))
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn top(&self) -> u32 {
        self.dim.top()
    }

    /// Val^{U(n)}, the flat algebra acting on this module.
    pub fn flat(&self) -> &ValAlgebra {
        &self.flat
    }

    pub fn zero(&self) -> CurvElement {
        CurvElement::zero(self.dim, CurvBasis::DeltaN)
    }

    pub fn basis_element(&self, idx: CurvIndex) -> Result<CurvElement> {
        CurvElement::basis_vector(self.dim, idx)
    }

    pub fn delta00(&self) -> CurvElement {
        self.basis_element(CurvIndex::delta(0, 0)).expect("Delta00")
    }

    pub fn n10(&self) -> CurvElement {
        let mut out = self.zero();
        out.add_term(CurvIndex::n(1, 0), &LambdaScalar::one());
        out
    }

    fn check(&self, c: &CurvElement) -> Result<()> {
        if c.dim != self.dim {
            return Err(Error::Mismatch(format!("curvature measure in n={} used in module n={}", c.dim, self.dim)));
        }
        Ok(())
    }

    fn need_n(&self) -> Result<i64> {
        self.dim
            .finite()
            .map(|n| n as i64)
            .ok_or_else(|| Error::Domain("the B/Gamma basis needs a finite dimension".into()))
    }

    // ---- bases --------------------------------------------------------------

    pub fn convert(&self, c: &CurvElement, target: CurvBasis) -> Result<CurvElement> {
        self.check(c)?;
        if c.basis == target {
            return Ok(c.clone());
        }
        let n = self.need_n()?;
        let mut out = CurvElement::zero(self.dim, target);
        for (idx, v) in &c.terms {
            let (k, q) = (idx.k as i64, idx.q as i64);
            let (ki, qi) = (idx.k, idx.q);
            match idx.family {
                // Δ = (2(n−k+q)Γ + (k−2q)B)/(2n−k), Δ_{2n,n} = Γ_{2n,n}
                Family::Delta => {
                    if k == 2 * n {
                        out.add_term(CurvIndex::gamma(ki, qi), v);
                    } else {
                        out.add_term(CurvIndex::gamma(ki, qi), &v.scale(&rat(2 * (n - k + q), 2 * n - k)));
                        out.add_term(CurvIndex::b(ki, qi), &v.scale(&rat(k - 2 * q, 2 * n - k)));
                    }
                }
                Family::N => {
                    let a = rat(2 * (n - k + q), 2 * n - k);
                    out.add_term(CurvIndex::gamma(ki, qi), &v.scale(&a));
                    out.add_term(CurvIndex::b(ki, qi), &v.scale(&-a));
                }
                // B = Δ − N
                Family::B => {
                    out.add_term(CurvIndex::delta(ki, qi), v);
                    out.add_term(CurvIndex::n(ki, qi), &-v);
                }
                // Γ = Δ + (k−2q)/(2(n−k+q)) N
                Family::Gamma => {
                    out.add_term(CurvIndex::delta(ki, qi), v);
                    if k > 2 * q && n - k + q > 0 {
                        out.add_term(CurvIndex::n(ki, qi), &v.scale(&rat(k - 2 * q, 2 * (n - k + q))));
                    }
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn delta_n(&self, c: &CurvElement) -> Result<CurvElement> {
        self.convert(c, CurvBasis::DeltaN)
    }

    // ---- flat module structure ---------------------------------------------

    fn act_with(&self, c: &CurvElement, f: fn(CurvIndex) -> Vec<(CurvIndex, LambdaScalar)>) -> Result<CurvElement> {
        let c = self.delta_n(c)?;
        let mut out = self.zero();
        for (idx, v) in &c.terms {
            for (j, w) in f(*idx) {
                out.add_term(j, &(v * &w));
            }
        }
        Ok(out)
    }

    pub fn act_s(&self, c: &CurvElement) -> Result<CurvElement> {
        self.act_with(c, s_image)
    }

    pub fn act_t(&self, c: &CurvElement) -> Result<CurvElement> {
        self.act_with(c, t_image)
    }

    pub fn act_u(&self, c: &CurvElement) -> Result<CurvElement> {
        let s = self.act_s(c)?.scale_rat(&rint(4));
        Ok(s - self.act_t(&self.act_t(c)?)?)
    }

    /// p · c for p a polynomial in (s, t).
    pub fn act_poly(&self, p: &Poly, c: &CurvElement) -> Result<CurvElement> {
        let c = self.delta_n(c)?;
        let mut out = self.zero();
        let max_b = p.terms().map(|((_, b), _)| *b).max().unwrap_or(0);
        let mut tb = vec![c];
        for _ in 0..max_b {
            let next = self.act_t(tb.last().unwrap())?;
            tb.push(next);
        }
        for ((a, b), coef) in p.terms() {
            let mut x = tb[*b as usize].clone();
            for _ in 0..*a {
                if x.is_zero() {
                    break;
                }
                x = self.act_s(&x)?;
            }
            out += &x.scale(coef);
        }
        Ok(out)
    }

    /// φ · c for φ ∈ Val^{U(n)}.
    pub fn act_val(&self, v: &ValElement, c: &CurvElement) -> Result<CurvElement> {
        self.act_poly(&self.flat.to_poly(v)?, c)
    }

    fn monomial_image(&self, nul: bool, a: u32, b: u32) -> Result<CurvElement> {
        if 2 * a + b + nul as u32 > self.top() {
            return Ok(self.zero());
        }
        if let Some(c) = self.monomials.lock().unwrap().get(&(nul, a, b)) {
            return Ok(c.clone());
        }
        let c = if a > 0 {
            self.act_s(&self.monomial_image(nul, a - 1, b)?)?
        } else if b > 0 {
            self.act_t(&self.monomial_image(nul, 0, b - 1)?)?
        } else if nul {
            self.n10()
        } else {
            self.delta00()
        };
        self.monomials.lock().unwrap().insert((nul, a, b), c.clone());
        Ok(c)
    }

    fn apply_generator(&self, p: &Poly, nul: bool) -> Result<CurvElement> {
        let mut out = self.zero();
        for ((a, b), c) in p.terms() {
            out += &self.monomial_image(nul, *a, *b)?.scale(c);
        }
        Ok(out)
    }

    /// ℓ(p) = p·Δ_{0,0}, p in (s, t).
    pub fn ell_poly(&self, p: &Poly) -> Result<CurvElement> {
        self.apply_generator(p, false)
    }

    /// 𝔫(p) = p·N_{1,0}, p in (s, t).
    pub fn nn_poly(&self, p: &Poly) -> Result<CurvElement> {
        self.apply_generator(p, true)
    }

    pub fn ell(&self, v: &ValElement) -> Result<CurvElement> {
        self.ell_poly(&self.flat.to_poly(v)?)
    }

    pub fn nn(&self, v: &ValElement) -> Result<CurvElement> {
        self.nn_poly(&self.flat.to_poly(v)?)
    }

    // ---- globalization -----------------------------------------------------

    /// glob_λ in Mu coordinates of `alg`, which must have the module's dimension.
    pub fn globalize(&self, c: &CurvElement, alg: &ValAlgebra) -> Result<ValElement> {
        if alg.dim() != self.dim {
            return Err(Error::Mismatch(format!("module n={} but algebra n={}", self.dim, alg.dim())));
        }
        let c = self.delta_n(c)?;
        let lam = alg.lam();
        let mut out = alg.zero(ValBasis::Mu);
        for (idx, v) in &c.terms {
            let (k, q) = (idx.k, idx.q);
            if idx.family == Family::Delta {
                out = out + alg.mu(k, q)?.scale(v);
            }
            if !lam.is_zero() && alg.dim().valid_mu(k + 2, q + 1) {
                let c = lam.scale_scalar(&Scalar::term(rint(-(q as i64 + 1)), -1));
                out = out + alg.mu(k + 2, q + 1)?.scale(&(v * &c));
            }
        }
        Ok(out)
    }

    /// glob₀ in Mu coordinates of the flat algebra.
    pub fn glob0(&self, c: &CurvElement) -> Result<ValElement> {
        self.globalize(c, &self.flat)
    }

    /// Basis {N_kq + λ(q+1)/π B_{k+2,q+1}} of ker glob_λ, in the Delta/N basis.
    pub fn glob_kernel_basis(&self, lambda: &Lambda) -> Result<Vec<CurvElement>> {
        let lam = lambda.scalar();
        let mut out = vec![];
        for idx in super::index::delta_n_indices(self.dim) {
            if idx.family != Family::N {
                continue;
            }
            let mut e = self.zero();
            e.add_term(idx, &LambdaScalar::one());
            let b = CurvIndex::b(idx.k + 2, idx.q + 1);
            if !lam.is_zero() && b.valid(self.dim) {
                let c = lam.scale_scalar(&Scalar::term(rint(idx.q as i64 + 1), -1));
                let mut bb = CurvElement::zero(self.dim, CurvBasis::BGamma);
                bb.add_term(b, &c);
                e += &self.delta_n(&bb)?;
            }
            out.push(e);
        }
        Ok(out)
    }

    // ---- free decomposition ------------------------------------------------

    /// 𝔫⁻¹ on span{N_kq}, as an (s, t) polynomial.
    pub fn nn_inverse_poly(&self, c: &CurvElement) -> Result<Poly> {
        let c = self.delta_n(c)?;
        let mut out = Poly::zero();
        for (idx, v) in &c.terms {
            if idx.family != Family::N {
                return Err(Error::Domain(format!("{idx} is not in the null subspace")));
            }
            out.add_in_place(&nn_inverse_basis(idx.k, idx.q).scale(v));
        }
        Ok(out)
    }

    pub fn nn_inverse(&self, c: &CurvElement) -> Result<ValElement> {
        Ok(self.flat.poly_to_mu(&self.nn_inverse_poly(c)?))
    }

    /// (p1, p2) with c = ℓ(p1) + 𝔫(p2), as (s, t) polynomials.
    pub fn free_decompose_poly(&self, c: &CurvElement) -> Result<(Poly, Poly)> {
        let g = self.glob0(c)?;
        let p1 = self.flat.to_poly(&g)?;
        let rest = self.delta_n(c)? - self.ell_poly(&p1)?;
        Ok((p1, self.nn_inverse_poly(&rest)?))
    }

    pub fn free_decompose(&self, c: &CurvElement) -> Result<(ValElement, ValElement)> {
        let (p1, p2) = self.free_decompose_poly(c)?;
        Ok((self.flat.poly_to_mu(&p1), self.flat.poly_to_mu(&p2)))
    }

    pub fn recompose(&self, p1: &ValElement, p2: &ValElement) -> Result<CurvElement> {
        Ok(self.ell(p1)? + self.nn(p2)?)
    }

    // ---- the V^n_λ-module structure ----------------------------------------

    /// Coefficient polynomials of t_λ·Δ₀₀ = P11 Δ₀₀ + P12 N₁₀ and
    /// t_λ·N₁₀ = P21 Δ₀₀ + P22 N₁₀, truncated at the module's top degree.
    pub fn t_lambda_polys(&self, lam: &LambdaScalar) -> [Poly; 4] {
        let cap = self.top();
        let d = one_minus_cx_half_pow(-3, lam, cap);
        let t = Poly::t();
        let s = Poly::x();
        let t2 = Poly::monomial(0, 2, LambdaScalar::one());
        let t3 = Poly::monomial(0, 3, LambdaScalar::one());
        let quarter = LambdaScalar::ratio(1, 4);
        let p11 = &t - &t3.scale(&(lam * &quarter));
        let p12 = t2.scale(&lam.scale_scalar(&Scalar::term(rat(1, 2), -1)));
        let w = &t2 - &s.scale_rat(&rint(4));
        let p21 = w.mul_trunc(&w, cap).scale(&lam.scale_scalar(&Scalar::term(rat(-1, 8), 1)));
        let p22 = &(&t - &(&t * &s).scale(&lam.scale(&rint(2)))) + &t3.scale(&(lam * &quarter));
        [p11, p12, p21, p22].map(|p| p.mul_trunc(&d, cap))
    }

    /// t_λ · c.
    pub fn act_t_lambda(&self, c: &CurvElement, lam: &LambdaScalar) -> Result<CurvElement> {
        let cap = self.top();
        let (p1, p2) = self.free_decompose_poly(c)?;
        let [p11, p12, p21, p22] = self.t_lambda_polys(lam);
        let q1 = p1.mul_trunc(&p11, cap) + p2.mul_trunc(&p21, cap);
        let q2 = p1.mul_trunc(&p12, cap) + p2.mul_trunc(&p22, cap);
        Ok(self.ell_poly(&q1)? + self.nn_poly(&q2)?)
    }

    /// v · c for v ∈ V^n_λ, through the (s, t_λ) representation of v.
    pub fn act_val_lambda(&self, v: &ValElement, c: &CurvElement, alg: &ValAlgebra) -> Result<CurvElement> {
        if alg.dim() != self.dim {
            return Err(Error::Mismatch(format!("module n={} but algebra n={}", self.dim, alg.dim())));
        }
        let p = alg.to_poly(v)?;
        let lam = alg.lam();
        let mut out = self.zero();
        let max_b = p.terms().map(|((_, b), _)| *b).max().unwrap_or(0);
        let mut tb = vec![self.delta_n(c)?];
        for _ in 0..max_b {
            let next = self.act_t_lambda(tb.last().unwrap(), lam)?;
            tb.push(next);
        }
        for ((a, b), coef) in p.terms() {
            let mut x = tb[*b as usize].clone();
            for _ in 0..*a {
                x = self.act_s(&x)?;
            }
            out += &x.scale(coef);
        }
        Ok(out)
    }

    // ---- restriction -------------------------------------------------------

    /// Restriction Curv^{U(n)} → Curv^{U(m)}.
    pub fn restrict(&self, c: &CurvElement, m: u32) -> Result<CurvElement> {
        let n = self.need_n()? as u32;
        if m > n {
            return Err(Error::Domain(format!("cannot restrict from n={n} to m={m}")));
        }
        let c = self.delta_n(c)?;
        let mut out = CurvElement::zero(Dim::Finite(m), CurvBasis::DeltaN);
        for (idx, v) in &c.terms {
            out.add_term(*idx, v);
        }
        Ok(out)
    }
}

/// 𝔫⁻¹(N_kq) = 4(k+2)π^{k−1}/((k−2q) q! ω_k) Σ_r (−1)^r (q+r+1)!/((k−2q−2r−1)!(2q+2r+3)! r!) t^{k−2q−1−2r} u^{q+r}
pub fn nn_inverse_basis(k: u32, q: u32) -> Poly {
    let (ki, qi) = (k as i64, q as i64);
    let lead = LambdaScalar::from(om(ki).inv().unwrap().shift_pi(ki as i32 - 1).scale(
        &(rint(4 * (ki + 2)) / (rint(ki - 2 * qi) * factorial_r(q))),
    ));
    let mut tu = Poly::zero();
    let mut r = 0;
    while 2 * q + 2 * r + 1 <= k {
        let c = factorial_r(q + r + 1)
            / (factorial_r(k - 2 * q - 2 * r - 1) * factorial_r(2 * q + 2 * r + 3) * factorial_r(r));
        let c = if r % 2 == 0 { c } else { -c };
        tu.add_term((q + r, k - 2 * q - 1 - 2 * r), &LambdaScalar::rational(c));
        r += 1;
    }
    tu_to_st(&tu).scale(&lead)
}

/// g_n = Σ_r (−1)^r (r+1)/((n−2r)!(2r+3)!) t^{n−2r} u^r, in (u, t) variables.
pub fn g_poly(n: u32) -> Poly {
    let mut out = Poly::zero();
    for r in 0..=n / 2 {
        let c = rint(r as i64 + 1) / (factorial_r(n - 2 * r) * factorial_r(2 * r + 3));
        let c = if r % 2 == 0 { c } else { -c };
        out.add_term((r, n - 2 * r), &LambdaScalar::rational(c));
    }
    out
}

/// Generators g_{n−1}, g_n of the kernel of 𝔫 in Curv^{U(n)}, in (u, t) variables.
pub fn n_kernel_polys(n: u32) -> Result<(Poly, Poly)> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    Ok((g_poly(n - 1), g_poly(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::index::delta_n_indices;

    fn el(m: &CurvModule, terms: &[(CurvIndex, LambdaScalar)]) -> CurvElement {
        let mut out = m.zero();
        for (i, c) in terms {
            out.add_term(*i, c);
        }
        out
    }

    fn pc(n: i64, d: i64, pi: i32) -> LambdaScalar {
        LambdaScalar::monomial(rat(n, d), pi, 0)
    }

    #[test]
    fn t_on_n10_and_n20() {
        let m = CurvModule::finite(4);
        let tn10 = m.act_t(&m.n10()).unwrap();
        assert_eq!(tn10, el(&m, &[(CurvIndex::n(2, 0), pc(3, 4, 0))]));
        let n20 = m.basis_element(CurvIndex::n(2, 0)).unwrap();
        let expect = el(&m, &[(CurvIndex::n(3, 0), pc(16, 5, -1)), (CurvIndex::n(3, 1), pc(16, 15, -1))]);
        assert_eq!(m.act_t(&n20).unwrap(), expect);
    }

    #[test]
    fn s_on_gamma() {
        for n in 2..5u32 {
            let m = CurvModule::finite(n);
            for q in 0..n - 1 {
                let g = m.basis_element(CurvIndex::gamma(2 * q, q)).unwrap();
                let got = m.act_s(&g).unwrap();
                let qi = q as i64;
                let mut expect = CurvElement::zero(m.dim(), CurvBasis::BGamma);
                expect.add_term(CurvIndex::gamma(2 * q + 2, q + 1), &pc(qi + 1, 1, -1));
                expect.add_term(CurvIndex::b(2 * q + 2, q), &pc(1, 2 * (qi + 1), -1));
                let mut nn = m.zero();
                nn.add_term(CurvIndex::n(2 * q + 2, q), &pc(1, 2 * (qi + 2), -1));
                assert_eq!(got, m.delta_n(&expect).unwrap() + nn, "n={n} q={q}");
            }
        }
    }

    #[test]
    fn s_and_t_commute() {
        let m = CurvModule::new(Dim::Inf { cap: 9 });
        for idx in delta_n_indices(m.dim()) {
            let c = m.basis_element(idx).unwrap();
            let st = m.act_s(&m.act_t(&c).unwrap()).unwrap();
            let ts = m.act_t(&m.act_s(&c).unwrap()).unwrap();
            assert_eq!(st, ts, "{idx}");
        }
    }

    #[test]
    fn u_relations() {
        let m = CurvModule::new(Dim::Inf { cap: 10 });
        for idx in delta_n_indices(m.dim()) {
            let (k, q) = (idx.k as i64, idx.q as i64);
            let c = m.basis_element(idx).unwrap();
            let got = m.act_u(&c).unwrap();
            let (ku, qu) = (idx.k + 2, idx.q);
            let expect = if idx.family == Family::Delta {
                let f = |r: Rational| LambdaScalar::monomial(r * rat(2, k + 2), -1, 0);
                el(
                    &m,
                    &[
                        (CurvIndex::delta(ku, qu + 1), f(rint(2 * (q + 1) * (2 * q + 1)))),
                        (CurvIndex::delta(ku, qu + 2), f(rint(-4 * (q + 1) * (q + 2)))),
                        (CurvIndex::n(ku, qu), f(rat(-2 * (k - 2 * q + 2) * (k - 2 * q + 1), k + 4))),
                        (CurvIndex::n(ku, qu + 1), f(rat(-4 * (q + 1) * (k - 2 * q), k + 4))),
                    ],
                )
            } else {
                let f = |r: Rational| LambdaScalar::monomial(r * rat(4 * (q + 1), k + 4), -1, 0);
                el(
                    &m,
                    &[
                        (CurvIndex::n(ku, qu + 1), f(rint(2 * q + 5))),
                        (CurvIndex::n(ku, qu + 2), f(rat(-2 * (q + 2) * (k - 2 * q - 2), k - 2 * q))),
                    ],
                )
            };
            assert_eq!(got, expect, "{idx}");
        }
    }

    #[test]
    fn globalization_intertwines() {
        for n in 1..5 {
            let m = CurvModule::finite(n);
            let alg = ValAlgebra::finite(n, Lambda::Formal);
            for idx in delta_n_indices(m.dim()) {
                let c = m.basis_element(idx).unwrap();
                let lhs = m.globalize(&m.act_s(&c).unwrap(), &alg).unwrap();
                let rhs = alg.s_multiply(&m.globalize(&c, &alg).unwrap()).unwrap();
                assert!(alg.equal(&lhs, &rhs).unwrap(), "s, n={n} {idx}");
                let lhs = m.glob0(&m.act_t(&c).unwrap()).unwrap();
                let rhs = m.flat().t_multiply(&m.glob0(&c).unwrap()).unwrap();
                assert!(m.flat().equal(&lhs, &rhs).unwrap(), "t, n={n} {idx}");
            }
            for e in m.glob_kernel_basis(&Lambda::Formal).unwrap() {
                assert!(m.globalize(&e, &alg).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn closed_forms_of_ell_and_nn() {
        let m = CurvModule::new(Dim::Inf { cap: 12 });
        let u = tu_to_st(&Poly::x());
        let mut uk = Poly::one();
        for k in 0..6u32 {
            let ki = k as i64;
            let f = factorial_r(2 * k) / factorial_r(k);
            let mut expect = el(&m, &[(CurvIndex::delta(2 * k, k), LambdaScalar::monomial(f.clone(), -(k as i32), 0))]);
            if k > 0 {
                expect.add_term(CurvIndex::n(2 * k, k - 1), &LambdaScalar::monomial(-f / rint(ki + 1), -(k as i32), 0));
            }
            assert_eq!(m.ell_poly(&uk).unwrap(), expect, "l(u^{k})");
            let c = factorial_r(k) * rint(4i64.pow(k));
            let expect = el(&m, &[(CurvIndex::n(2 * k + 1, k), LambdaScalar::monomial(c, -(k as i32), 0))]);
            assert_eq!(m.nn_poly(&uk).unwrap(), expect, "n(u^{k})");
            uk = &uk * &u;
        }
        for k in 0..8u32 {
            let tk = Poly::monomial(0, k, LambdaScalar::one());
            let c = LambdaScalar::from(om(k as i64).shift_pi(-(k as i32)).scale(&factorial_r(k)));
            let mut expect = m.zero();
            for i in 0..=k / 2 {
                expect.add_term(CurvIndex::delta(k, i), &c);
            }
            assert_eq!(m.ell_poly(&tk).unwrap(), expect, "l(t^{k})");
            let c = LambdaScalar::from(om(k as i64 + 3).shift_pi(-(k as i32) - 1).scale(&(factorial_r(k) * rat(3, 4))));
            let mut expect = m.zero();
            for i in 0..=k / 2 {
                expect.add_term(CurvIndex::n(k + 1, i), &c.scale(&rint(k as i64 - 2 * i as i64 + 1)));
            }
            assert_eq!(m.nn_poly(&tk).unwrap(), expect, "n(t^{k})");
        }
    }

    #[test]
    fn nn_inverse_round_trip() {
        let m = CurvModule::new(Dim::Inf { cap: 11 });
        for idx in delta_n_indices(m.dim()) {
            if idx.family != Family::N {
                continue;
            }
            let c = m.basis_element(idx).unwrap();
            assert_eq!(m.nn_poly(&m.nn_inverse_poly(&c).unwrap()).unwrap(), c, "{idx}");
        }
        assert!(m.nn_inverse_poly(&m.delta00()).is_err());
    }

    #[test]
    fn free_decomposition_round_trip() {
        for dim in [Dim::Finite(3), Dim::Finite(5), Dim::Inf { cap: 9 }] {
            let m = CurvModule::new(dim);
            for idx in delta_n_indices(dim) {
                let c = m.basis_element(idx).unwrap();
                let (p1, p2) = m.free_decompose(&c).unwrap();
                assert_eq!(m.recompose(&p1, &p2).unwrap(), c, "{dim} {idx}");
            }
        }
    }

    #[test]
    fn n_kills_kernel_generators() {
        for n in 1..9 {
            let m = CurvModule::finite(n);
            let (a, b) = n_kernel_polys(n).unwrap();
            assert!(m.nn_poly(&tu_to_st(&a)).unwrap().is_zero(), "g_(n-1), n={n}");
            assert!(m.nn_poly(&tu_to_st(&b)).unwrap().is_zero(), "g_n, n={n}");
        }
        assert_eq!(g_poly(2), Poly::from_terms([((0, 2), LambdaScalar::ratio(1, 12)), ((1, 0), LambdaScalar::ratio(-1, 60))]));
    }

    #[test]
    fn t_lambda_at_zero_is_t() {
        let m = CurvModule::finite(3);
        for idx in delta_n_indices(m.dim()) {
            let c = m.basis_element(idx).unwrap();
            assert_eq!(m.act_t_lambda(&c, &LambdaScalar::zero()).unwrap(), m.act_t(&c).unwrap(), "{idx}");
        }
    }

    #[test]
    fn t_lambda_preserves_angularity() {
        let lam = LambdaScalar::lambda();
        for n in 1..=5 {
            let m = CurvModule::finite(n);
            for idx in delta_n_indices(m.dim()) {
                if idx.family != Family::Delta {
                    continue;
                }
                let c = m.basis_element(idx).unwrap();
                let img = m.act_t_lambda(&c, &lam).unwrap();
                assert!(img.family_part(Family::N).is_zero(), "n={n} {idx}: {img}");
            }
        }
    }
}
