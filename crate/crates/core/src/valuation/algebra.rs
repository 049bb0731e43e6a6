use std::collections::BTreeMap;
use std::sync::OnceLock;

use super::convert::{self, add_to, Vector};
use super::element::{ValBasis, ValElement};
use super::index::{Dim, ValIndex};
use super::tensor::ValTensor;
use crate::error::{Error, Result};
use crate::poly::{weight, Poly};
use crate::scalar::constants::om;
use crate::scalar::rational::rat;
use crate::scalar::{Lambda, LambdaScalar};

/// The algebra V^n_λ together with its lazily built conversion tables.
/// Tables are filled once and only read afterwards, so a `ValAlgebra` can be
/// shared between threads.
pub struct ValAlgebra {
    dim: Dim,
    lambda: Lambda,
    lam: LambdaScalar,
    st_to_mu: OnceLock<BTreeMap<(u32, u32), Vector>>,
    mu_to_st: OnceLock<BTreeMap<(u32, u32), Poly>>,
    pub(crate) kin_chi: OnceLock<ValTensor>,
}

impl ValAlgebra {
    pub fn new(dim: Dim, lambda: Lambda) -> Self {
        let lam = lambda.scalar();
        ValAlgebra {
            dim,
            lambda,
            lam,
            st_to_mu: OnceLock::new(),
            mu_to_st: OnceLock::new(),
            kin_chi: OnceLock::new(),
        }
    }

    pub fn finite(n: u32, lambda: Lambda) -> Self {
        Self::new(Dim::Finite(n), lambda)
    }

    /// V^n_0, the flat algebra in the same dimension.
    pub fn flat(&self) -> ValAlgebra {
        ValAlgebra::new(self.dim, Lambda::zero())
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn n(&self) -> Result<u32> {
        self.dim
            .finite()
            .ok_or_else(|| Error::Domain("operation needs a finite dimension".into()))
    }

    pub fn lambda(&self) -> &Lambda {
        &self.lambda
    }

    /// λ as a coefficient (formal symbol or its value).
    pub fn lam(&self) -> &LambdaScalar {
        &self.lam
    }

    pub fn cap(&self) -> u32 {
        self.dim.top()
    }

    pub fn zero(&self, basis: ValBasis) -> ValElement {
        ValElement::zero(self.dim, self.lambda.clone(), basis)
    }

    pub(crate) fn mu_from_vector(&self, v: &Vector) -> ValElement {
        let mut out = self.zero(ValBasis::Mu);
        for ((k, q), c) in v {
            if self.dim.valid_mu(*k, *q) {
                out.add_term((*k, *q), c);
            }
        }
        out
    }

    fn check(&self, v: &ValElement) -> Result<()> {
        if v.dim != self.dim || v.lambda != self.lambda {
            return Err(Error::Mismatch(format!(
                "element lives in (n={}, lambda={}) but algebra is (n={}, lambda={})",
                v.dim, v.lambda, self.dim, self.lambda
            )));
        }
        Ok(())
    }

    // ---- constructors ------------------------------------------------------

    pub fn mu(&self, k: u32, q: u32) -> Result<ValElement> {
        ValElement::from_terms(self.dim, self.lambda.clone(), ValBasis::Mu, [((k, q), LambdaScalar::one())])
    }

    pub fn tau(&self, k: u32, q: u32) -> Result<ValElement> {
        ValElement::from_terms(self.dim, self.lambda.clone(), ValBasis::Tau, [((k, q), LambdaScalar::one())])
    }

    /// c · s^a t^b in the ST basis.
    pub fn monomial(&self, a: u32, b: u32) -> Result<ValElement> {
        ValElement::from_terms(self.dim, self.lambda.clone(), ValBasis::St, [((a, b), LambdaScalar::one())])
    }

    pub fn from_poly(&self, p: &Poly) -> Result<ValElement> {
        ValElement::from_terms(
            self.dim,
            self.lambda.clone(),
            ValBasis::St,
            p.terms().map(|(k, c)| (*k, c.clone())),
        )
    }

    pub fn chi(&self) -> ValElement {
        self.monomial(0, 0).expect("unit")
    }

    pub fn s(&self) -> Result<ValElement> {
        self.monomial(1, 0)
    }

    pub fn t(&self) -> Result<ValElement> {
        self.monomial(0, 1)
    }

    /// u = 4s − t²(1−λs)
    pub fn u(&self) -> Result<ValElement> {
        self.from_poly(&convert::u_lambda(&self.lam).truncate(self.cap()))
    }

    /// v = t²(1−λs)
    pub fn v(&self) -> Result<ValElement> {
        let p = Poly::monomial(0, 2, LambdaScalar::one()) - Poly::monomial(1, 2, self.lam.clone());
        self.from_poly(&p.truncate(self.cap()))
    }

    pub fn vol(&self) -> Result<ValElement> {
        let n = self.n()?;
        self.mu(2 * n, n)
    }

    // ---- tables ------------------------------------------------------------

    fn st_table(&self) -> &BTreeMap<(u32, u32), Vector> {
        self.st_to_mu.get_or_init(|| {
            let cap = self.cap();
            let mut table = BTreeMap::new();
            for b in 0..=cap {
                let mut v = convert::t_power_tau(b, &self.lam, cap);
                let mut a = 0;
                while weight(a, b) <= cap {
                    let mu = convert::tau_to_mu(&v);
                    let kept: Vector =
                        mu.into_iter().filter(|((k, q), _)| self.dim.valid_mu(*k, *q)).collect();
                    table.insert((a, b), kept);
                    v = convert::s_times_tau(&v, cap);
                    a += 1;
                }
            }
            table
        })
    }

    fn mu_table(&self) -> &BTreeMap<(u32, u32), Poly> {
        self.mu_to_st.get_or_init(|| {
            self.dim
                .mu_indices()
                .into_iter()
                .map(|i| ((i.k, i.q), convert::mu_to_st(i.k, i.q, &self.lam, self.cap())))
                .collect()
        })
    }

    /// Canonical ST representative of μ^λ_kq, truncated at weight 2n.
    pub fn mu_st(&self, i: ValIndex) -> &Poly {
        &self.mu_table()[&(i.k, i.q)]
    }

    /// Mu coordinates of the monomial s^a t^b.
    pub fn monomial_mu(&self, a: u32, b: u32) -> ValElement {
        match self.st_table().get(&(a, b)) {
            Some(v) => self.mu_from_vector(v),
            None => self.zero(ValBasis::Mu),
        }
    }

    // ---- conversions -------------------------------------------------------

    pub fn to_mu(&self, v: &ValElement) -> Result<ValElement> {
        self.check(v)?;
        Ok(match v.basis {
            ValBasis::Mu => v.clone(),
            ValBasis::Tau => self.mu_from_vector(&convert::tau_to_mu(&v.terms)),
            ValBasis::St => {
                let table = self.st_table();
                let mut acc = Vector::new();
                for (key, c) in &v.terms {
                    if let Some(col) = table.get(key) {
                        for (i, d) in col {
                            add_to(&mut acc, *i, c * d);
                        }
                    }
                }
                self.mu_from_vector(&acc)
            }
        })
    }

    /// ST representative of an element given in any basis.
    pub fn to_poly(&self, v: &ValElement) -> Result<Poly> {
        self.check(v)?;
        if let Some(p) = v.as_poly() {
            return Ok(p);
        }
        let mu = self.to_mu(v)?;
        let mut out = Poly::zero();
        for ((k, q), c) in &mu.terms {
            out += self.mu_st(ValIndex::new(*k, *q)).scale(c);
        }
        Ok(out)
    }

    pub fn convert(&self, v: &ValElement, target: ValBasis) -> Result<ValElement> {
        self.check(v)?;
        match target {
            ValBasis::Mu => self.to_mu(v),
            ValBasis::Tau => {
                let mu = self.to_mu(v)?;
                let mut out = self.zero(ValBasis::Tau);
                for (k, c) in convert::mu_to_tau(&mu.terms) {
                    out.add_term(k, &c);
                }
                Ok(out)
            }
            ValBasis::St => self.from_poly(&self.to_poly(v)?),
        }
    }

    /// Image of an arbitrary polynomial in s, t (terms above the cap vanish).
    pub fn poly_to_mu(&self, p: &Poly) -> ValElement {
        let table = self.st_table();
        let mut acc = Vector::new();
        for (key, c) in p.terms() {
            if let Some(col) = table.get(key) {
                for (i, d) in col {
                    add_to(&mut acc, *i, c * d);
                }
            }
        }
        self.mu_from_vector(&acc)
    }

    pub fn equal(&self, a: &ValElement, b: &ValElement) -> Result<bool> {
        Ok(self.to_mu(a)? == self.to_mu(b)?)
    }

    // ---- products ----------------------------------------------------------

    pub fn multiply(&self, a: &ValElement, b: &ValElement) -> Result<ValElement> {
        let pa = self.to_poly(a)?;
        let pb = self.to_poly(b)?;
        Ok(self.poly_to_mu(&pa.mul_trunc(&pb, self.cap())))
    }

    /// Multiplication by a polynomial in s, t.
    pub fn multiply_poly(&self, p: &Poly, b: &ValElement) -> Result<ValElement> {
        let pb = self.to_poly(b)?;
        Ok(self.poly_to_mu(&p.mul_trunc(&pb, self.cap())))
    }

    pub fn pow(&self, a: &ValElement, e: u32) -> Result<ValElement> {
        let mut acc = self.to_mu(&self.chi())?;
        for _ in 0..e {
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    /// s·μ_kq = (k−2q+2)(k−2q+1)/(2π(k+2)) μ_{k+2,q} + 2(q+1)(k−q+1)/(π(k+2)) μ_{k+2,q+1}
    pub fn s_multiply(&self, v: &ValElement) -> Result<ValElement> {
        let mu = self.to_mu(v)?;
        let mut out = Vector::new();
        for ((k, q), c) in &mu.terms {
            let (ki, qi) = (*k as i64, *q as i64);
            let a = rat((ki - 2 * qi + 2) * (ki - 2 * qi + 1), 2 * (ki + 2));
            let b = rat(2 * (qi + 1) * (ki - qi + 1), ki + 2);
            add_to(&mut out, (k + 2, *q), c.scale(&a).shift_pi(-1));
            add_to(&mut out, (k + 2, q + 1), c.scale(&b).shift_pi(-1));
        }
        Ok(self.mu_from_vector(&out))
    }

    /// t·μ_kq = ω_{k+1}/(πω_k) ((k−2q+1) μ_{k+1,q} + 2(q+1) μ_{k+1,q+1})
    /// This is the flat product; for λ ≠ 0 use `multiply`.
    pub fn t_multiply(&self, v: &ValElement) -> Result<ValElement> {
        let mu = self.to_mu(v)?;
        let mut out = Vector::new();
        for ((k, q), c) in &mu.terms {
            let ratio = LambdaScalar::from((om(*k as i64 + 1) * om(*k as i64).inv().unwrap()).shift_pi(-1));
            let base = c * &ratio;
            add_to(&mut out, (k + 1, *q), base.scale(&rat(*k as i64 - 2 * *q as i64 + 1, 1)));
            add_to(&mut out, (k + 1, q + 1), base.scale(&rat(2 * (*q as i64 + 1), 1)));
        }
        Ok(self.mu_from_vector(&out))
    }

    // ---- restriction -------------------------------------------------------

    /// Restriction V^n_λ → V^m_λ: drops μ_kq with q < k−m or k > 2m.
    pub fn restrict(&self, v: &ValElement, m: u32) -> Result<ValElement> {
        let n = self.n()?;
        if m > n {
            return Err(Error::Domain(format!("cannot restrict from n = {n} to m = {m}")));
        }
        let mu = self.to_mu(v)?;
        Ok(mu.relabel(Dim::Finite(m), self.lambda.clone(), ValBasis::Mu))
    }

    /// Same coefficients in V^n_μ for another λ-mode: the relabeling μ_kq ↦ μ^λ_kq.
    pub fn relabel_to(&self, v: &ValElement, target: &ValAlgebra) -> Result<ValElement> {
        let mu = self.to_mu(v)?;
        Ok(mu.relabel(target.dim, target.lambda.clone(), ValBasis::Mu))
    }
}
