use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::index::{Dim, ValIndex};
use crate::error::{Error, Result};
use crate::poly::{weight, Poly};
use crate::scalar::{Lambda, LambdaScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValBasis {
    Mu,
    Tau,
    St,
}

/// An element of V^n_λ. For `Mu`/`Tau` the keys are (k, q); for `St` they are
/// (s-exponent, t-exponent).
#[derive(Clone, PartialEq, Eq)]
pub struct ValElement {
    pub(crate) dim: Dim,
    pub(crate) lambda: Lambda,
    pub(crate) basis: ValBasis,
    pub(crate) terms: BTreeMap<(u32, u32), LambdaScalar>,
}

impl ValElement {
    pub fn zero(dim: Dim, lambda: Lambda, basis: ValBasis) -> Self {
        ValElement { dim, lambda, basis, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        dim: Dim,
        lambda: Lambda,
        basis: ValBasis,
        it: impl IntoIterator<Item = ((u32, u32), LambdaScalar)>,
    ) -> Result<Self> {
        let mut v = Self::zero(dim, lambda, basis);
        for (key, c) in it {
            v.check_key(key)?;
            v.add_term(key, &c);
        }
        Ok(v)
    }

    pub(crate) fn check_key(&self, (a, b): (u32, u32)) -> Result<()> {
        match self.basis {
            ValBasis::Mu | ValBasis::Tau => {
                if a > self.dim.top() && matches!(self.dim, Dim::Inf { .. }) {
                    return Err(Error::CapExceeded(format!("index ({a},{b}) above cap {}", self.dim.top())));
                }
                if !self.dim.valid_mu(a, b) {
                    return Err(Error::Domain(format!("invalid index ({a},{b}) for n = {}", self.dim)));
                }
            }
            ValBasis::St => {
                if weight(a, b) > self.dim.top() {
                    return Err(Error::CapExceeded(format!(
                        "monomial s^{a} t^{b} has weight above {}",
                        self.dim.top()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn lambda(&self) -> &Lambda {
        &self.lambda
    }

    pub fn basis(&self) -> ValBasis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &LambdaScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> LambdaScalar {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn mu_coeff(&self, i: ValIndex) -> LambdaScalar {
        debug_assert!(self.basis != ValBasis::St);
        self.coeff(i.k, i.q)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, key: (u32, u32), c: &LambdaScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        slot.add_in_place(c);
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check_compatible(&self, o: &Self) {
        assert!(
            self.dim == o.dim && self.lambda == o.lambda && self.basis == o.basis,
            "incompatible valuations: ({}, {}, {:?}) vs ({}, {}, {:?})",
            self.dim,
            self.lambda,
            self.basis,
            o.dim,
            o.lambda,
            o.basis
        );
    }

    pub fn add_in_place(&mut self, o: &Self) {
        self.check_compatible(o);
        for (k, c) in &o.terms {
            self.add_term(*k, c);
        }
    }

    pub fn sub_in_place(&mut self, o: &Self) {
        self.check_compatible(o);
        for (k, c) in &o.terms {
            self.add_term(*k, &-c);
        }
    }

    fn neg_ref(&self) -> Self {
        self.scale(&LambdaScalar::int(-1))
    }

    pub fn scale(&self, c: &LambdaScalar) -> Self {
        let mut out = Self::zero(self.dim, self.lambda.clone(), self.basis);
        for (k, v) in &self.terms {
            out.add_term(*k, &(v * c));
        }
        out
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        self.scale(&LambdaScalar::rational(r.clone()))
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&LambdaScalar) -> Result<LambdaScalar>) -> Result<Self> {
        let mut out = Self::zero(self.dim, self.lambda.clone(), self.basis);
        for (k, v) in &self.terms {
            out.add_term(*k, &f(v)?);
        }
        Ok(out)
    }

    /// The same coefficients read in another dimension, λ-mode or basis.
    /// Keys invalid in the target are dropped.
    pub(crate) fn relabel(&self, dim: Dim, lambda: Lambda, basis: ValBasis) -> Self {
        let mut out = Self::zero(dim, lambda, basis);
        for (k, v) in &self.terms {
            if out.check_key(*k).is_ok() {
                out.add_term(*k, v);
            }
        }
        out
    }

    /// ST coefficients as a polynomial.
    pub fn as_poly(&self) -> Option<Poly> {
        (self.basis == ValBasis::St).then(|| Poly::from_terms(self.terms.iter().map(|(k, c)| (*k, c.clone()))))
    }
}

// Only the additive operators are meaningful; multiplication needs the algebra.
impl std::ops::Add<&ValElement> for &ValElement {
    type Output = ValElement;
    fn add(self, o: &ValElement) -> ValElement {
        let mut out = self.clone();
        out.add_in_place(o);
        out
    }
}

impl std::ops::Add<ValElement> for ValElement {
    type Output = ValElement;
    fn add(mut self, o: ValElement) -> ValElement {
        self.add_in_place(&o);
        self
    }
}

impl std::ops::Sub<&ValElement> for &ValElement {
    type Output = ValElement;
    fn sub(self, o: &ValElement) -> ValElement {
        let mut out = self.clone();
        out.sub_in_place(o);
        out
    }
}

impl std::ops::Sub<ValElement> for ValElement {
    type Output = ValElement;
    fn sub(mut self, o: ValElement) -> ValElement {
        self.sub_in_place(&o);
        self
    }
}

impl std::ops::Neg for &ValElement {
    type Output = ValElement;
    fn neg(self) -> ValElement {
        self.neg_ref()
    }
}

impl std::ops::AddAssign<&ValElement> for ValElement {
    fn add_assign(&mut self, o: &ValElement) {
        self.add_in_place(o);
    }
}

impl std::ops::SubAssign<&ValElement> for ValElement {
    fn sub_assign(&mut self, o: &ValElement) {
        self.sub_in_place(o);
    }
}

impl fmt::Display for ValElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let sym = match self.basis {
                    ValBasis::Mu => format!("mu[{a},{b}]"),
                    ValBasis::Tau => format!("tau[{a},{b}]"),
                    ValBasis::St => format!("s^{a}*t^{b}"),
                };
                format!("({c})*{sym}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ValElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}, lambda={}] {}", self.dim, self.lambda, self)
    }
}
