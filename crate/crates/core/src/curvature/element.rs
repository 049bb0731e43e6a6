use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::index::{CurvIndex, Family};
use crate::error::{Error, Result};
use crate::scalar::{LambdaScalar, Rational};
use crate::valuation::{Dim, ValIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurvBasis {
    DeltaN,
    BGamma,
}

impl CurvBasis {
    pub fn contains(&self, f: Family) -> bool {
        match self {
            CurvBasis::DeltaN => matches!(f, Family::Delta | Family::N),
            CurvBasis::BGamma => matches!(f, Family::B | Family::Gamma),
        }
    }
}

/// Element of Curv^{U(n)}. Coefficients may involve λ (e.g. after the t_λ
/// action), but the basis and its structure constants do not.
#[derive(Clone, PartialEq, Eq)]
pub struct CurvElement {
    pub(crate) dim: Dim,
    pub(crate) basis: CurvBasis,
    pub(crate) terms: BTreeMap<CurvIndex, LambdaScalar>,
}

impl CurvElement {
    pub fn zero(dim: Dim, basis: CurvBasis) -> Self {
        CurvElement { dim, basis, terms: BTreeMap::new() }
    }

    pub fn basis_vector(dim: Dim, idx: CurvIndex) -> Result<Self> {
        Self::from_terms(dim, [(idx, LambdaScalar::one())])
    }

    /// Builds an element; the basis is inferred from the families used.
    pub fn from_terms(dim: Dim, it: impl IntoIterator<Item = (CurvIndex, LambdaScalar)>) -> Result<Self> {
        let mut basis = None;
        let mut terms = BTreeMap::new();
        for (idx, c) in it {
            if !idx.valid(dim) {
                return Err(Error::Domain(format!("{idx} is not a valid index for n = {dim}")));
            }
            let b = if CurvBasis::DeltaN.contains(idx.family) { CurvBasis::DeltaN } else { CurvBasis::BGamma };
            if *basis.get_or_insert(b) != b {
                return Err(Error::Domain("mixed Delta/N and B/Gamma families".into()));
            }
            let slot: &mut LambdaScalar = terms.entry(idx).or_default();
            slot.add_in_place(&c);
        }
        terms.retain(|_, c: &mut LambdaScalar| !c.is_zero());
        Ok(CurvElement { dim, basis: basis.unwrap_or(CurvBasis::DeltaN), terms })
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn basis(&self) -> CurvBasis {
        self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CurvIndex, &LambdaScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: CurvIndex) -> LambdaScalar {
        self.terms.get(&idx).cloned().unwrap_or_default()
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

    /// Adds c·idx if idx is valid in this dimension; invalid indices are the zero element.
    pub(crate) fn add_term(&mut self, idx: CurvIndex, c: &LambdaScalar) {
        if c.is_zero() || !idx.valid(self.dim) {
            return;
        }
        debug_assert!(self.basis.contains(idx.family));
        let slot = self.terms.entry(idx).or_default();
        slot.add_in_place(c);
        if slot.is_zero() {
            self.terms.remove(&idx);
        }
    }

    fn check_compatible(&self, o: &Self) {
        assert!(
            self.dim == o.dim && self.basis == o.basis,
            "incompatible curvature measures: ({}, {:?}) vs ({}, {:?})",
            self.dim,
            self.basis,
            o.dim,
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

    pub fn scale(&self, c: &LambdaScalar) -> Self {
        let mut out = Self::zero(self.dim, self.basis);
        for (k, v) in &self.terms {
            out.add_term(*k, &(v * c));
        }
        out
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        self.scale(&LambdaScalar::rational(r.clone()))
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&LambdaScalar) -> Result<LambdaScalar>) -> Result<Self> {
        let mut out = Self::zero(self.dim, self.basis);
        for (k, v) in &self.terms {
            out.add_term(*k, &f(v)?);
        }
        Ok(out)
    }

    /// Part supported on one family.
    pub fn family_part(&self, f: Family) -> Self {
        let mut out = Self::zero(self.dim, self.basis);
        for (k, v) in &self.terms {
            if k.family == f {
                out.add_term(*k, v);
            }
        }
        out
    }
}

impl std::ops::Add<&CurvElement> for &CurvElement {
    type Output = CurvElement;
    fn add(self, o: &CurvElement) -> CurvElement {
        let mut out = self.clone();
        out.add_in_place(o);
        out
    }
}

impl std::ops::Add<CurvElement> for CurvElement {
    type Output = CurvElement;
    fn add(mut self, o: CurvElement) -> CurvElement {
        self.add_in_place(&o);
        self
    }
}

impl std::ops::Sub<&CurvElement> for &CurvElement {
    type Output = CurvElement;
    fn sub(self, o: &CurvElement) -> CurvElement {
        let mut out = self.clone();
        out.sub_in_place(o);
        out
    }
}

impl std::ops::Sub<CurvElement> for CurvElement {
    type Output = CurvElement;
    fn sub(mut self, o: CurvElement) -> CurvElement {
        self.sub_in_place(&o);
        self
    }
}

impl std::ops::AddAssign<&CurvElement> for CurvElement {
    fn add_assign(&mut self, o: &CurvElement) {
        self.add_in_place(o);
    }
}

impl std::ops::Neg for &CurvElement {
    type Output = CurvElement;
    fn neg(self) -> CurvElement {
        self.scale(&LambdaScalar::int(-1))
    }
}

impl fmt::Display for CurvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(i, c)| format!("({c})*{i}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CurvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}] {}", self.dim, self)
    }
}

/// Element of Curv ⊗ Curv.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CurvTensor {
    pub(crate) terms: BTreeMap<(CurvIndex, CurvIndex), LambdaScalar>,
}

impl CurvTensor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(CurvIndex, CurvIndex), &LambdaScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: CurvIndex, b: CurvIndex) -> LambdaScalar {
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

    pub fn add_term(&mut self, a: CurvIndex, b: CurvIndex, c: &LambdaScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_default();
        slot.add_in_place(c);
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn outer(a: &CurvElement, b: &CurvElement) -> Self {
        let mut out = Self::zero();
        for (i, c1) in &a.terms {
            for (j, c2) in &b.terms {
                out.add_term(*i, *j, &(c1 * c2));
            }
        }
        out
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
        let mut out = Self::zero();
        for ((a, b), v) in &self.terms {
            out.add_term(*a, *b, &(v * c));
        }
        out
    }

    pub fn swap(&self) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            out.add_term(*b, *a, c);
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.swap() == *self
    }

    /// Applies linear maps to the two legs, with per-index memoization.
    pub fn map_legs(
        &self,
        mut f: impl FnMut(CurvIndex) -> Result<CurvElement>,
        mut g: impl FnMut(CurvIndex) -> Result<CurvElement>,
    ) -> Result<Self> {
        let mut fa: BTreeMap<CurvIndex, CurvElement> = BTreeMap::new();
        let mut gb: BTreeMap<CurvIndex, CurvElement> = BTreeMap::new();
        let mut out = Self::zero();
        for ((a, b), c) in &self.terms {
            if !fa.contains_key(a) {
                fa.insert(*a, f(*a)?);
            }
            if !gb.contains_key(b) {
                gb.insert(*b, g(*b)?);
            }
            out.add_in_place(&Self::outer(&fa[a], &gb[b]).scale(c));
        }
        Ok(out)
    }
}

impl fmt::Display for CurvTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((a, b), c)| format!("({c})*{a}(x){b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for CurvTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Element of Curv ⊗ V^n_λ, the output of the semi-local kinematic operator.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SemiLocalTensor {
    pub(crate) terms: BTreeMap<(CurvIndex, ValIndex), LambdaScalar>,
}

impl SemiLocalTensor {
    pub fn terms(&self) -> impl Iterator<Item = (&(CurvIndex, ValIndex), &LambdaScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: CurvIndex, b: ValIndex) -> LambdaScalar {
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

    pub(crate) fn add_term(&mut self, a: CurvIndex, b: ValIndex, c: &LambdaScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_default();
        slot.add_in_place(c);
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }
}

impl fmt::Display for SemiLocalTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((a, b), c)| format!("({c})*{a}(x){b}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SemiLocalTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
