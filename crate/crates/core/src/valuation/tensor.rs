use std::collections::BTreeMap;
use std::fmt;

use super::element::{ValBasis, ValElement};
use super::index::{Dim, ValIndex};
use crate::error::{Error, Result};
use crate::scalar::{Lambda, LambdaScalar};

/// Element of V^n_λ ⊗ V^n_λ in μ⊗μ coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct ValTensor {
    pub(crate) dim: Dim,
    pub(crate) lambda: Lambda,
    pub(crate) terms: BTreeMap<(ValIndex, ValIndex), LambdaScalar>,
}

impl ValTensor {
    pub fn zero(dim: Dim, lambda: Lambda) -> Self {
        ValTensor { dim, lambda, terms: BTreeMap::new() }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn lambda(&self) -> &Lambda {
        &self.lambda
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(ValIndex, ValIndex), &LambdaScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: ValIndex, b: ValIndex) -> LambdaScalar {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
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

    pub fn add_term(&mut self, a: ValIndex, b: ValIndex, c: &LambdaScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_default();
        slot.add_in_place(c);
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    /// a ⊗ b, both in the Mu basis.
    pub fn outer(a: &ValElement, b: &ValElement) -> Result<Self> {
        if a.basis != ValBasis::Mu || b.basis != ValBasis::Mu {
            return Err(Error::Domain("tensor legs must be in the Mu basis".into()));
        }
        let mut out = ValTensor::zero(a.dim, a.lambda.clone());
        for ((k1, q1), c1) in &a.terms {
            for ((k2, q2), c2) in &b.terms {
                out.add_term(ValIndex::new(*k1, *q1), ValIndex::new(*k2, *q2), &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn add_in_place(&mut self, o: &Self) {
        for ((a, b), c) in &o.terms {
            self.add_term(*a, *b, c);
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((a, b), c) in &o.terms {
            out.add_term(*a, *b, &-c);
        }
        out
    }

    pub fn scale(&self, c: &LambdaScalar) -> Self {
        let mut out = ValTensor::zero(self.dim, self.lambda.clone());
        for ((a, b), v) in &self.terms {
            out.add_term(*a, *b, &(v * c));
        }
        out
    }

    pub fn swap(&self) -> Self {
        let mut out = ValTensor::zero(self.dim, self.lambda.clone());
        for ((a, b), c) in &self.terms {
            out.add_term(*b, *a, c);
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.swap() == *self
    }

    /// Applies linear maps given on basis vectors to each leg.
    pub fn map_legs(
        &self,
        dim: Dim,
        lambda: Lambda,
        mut f: impl FnMut(ValIndex) -> Result<ValElement>,
        mut g: impl FnMut(ValIndex) -> Result<ValElement>,
    ) -> Result<Self> {
        let mut fa: BTreeMap<ValIndex, ValElement> = BTreeMap::new();
        let mut gb: BTreeMap<ValIndex, ValElement> = BTreeMap::new();
        let mut out = ValTensor::zero(dim, lambda);
        for ((a, b), c) in &self.terms {
            if !fa.contains_key(a) {
                fa.insert(*a, f(*a)?);
            }
            if !gb.contains_key(b) {
                gb.insert(*b, g(*b)?);
            }
            let t = ValTensor::outer(&fa[a], &gb[b])?;
            out.add_in_place(&t.scale(c));
        }
        Ok(out)
    }

    /// Contracts the first leg with a functional given on basis vectors.
    pub fn contract_first(&self, mut f: impl FnMut(ValIndex) -> LambdaScalar) -> ValElement {
        let mut out = ValElement::zero(self.dim, self.lambda.clone(), ValBasis::Mu);
        for ((a, b), c) in &self.terms {
            out.add_term((b.k, b.q), &(c * &f(*a)));
        }
        out
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&LambdaScalar) -> Result<LambdaScalar>) -> Result<Self> {
        let mut out = ValTensor::zero(self.dim, self.lambda.clone());
        for ((a, b), c) in &self.terms {
            out.add_term(*a, *b, &f(c)?);
        }
        Ok(out)
    }
}

impl fmt::Display for ValTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((a, b), c)| format!("({c})*{a}(x){b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for ValTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
