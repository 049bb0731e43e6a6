//! Bivariate polynomials over [`LambdaScalar`].
//!
//! The same type carries polynomials in (s, t) and in (u, t); the first
//! variable has weight 2 and t has weight 1 in both readings. Conversions
//! between the two readings use u = 4s − t².

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::rational::{rint, Rational};
use crate::scalar::series::one_minus_x_half_pow;
use crate::scalar::LambdaScalar;

pub const NO_CAP: u32 = u32::MAX;

#[derive(Clone, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), LambdaScalar>,
}

pub fn weight(a: u32, b: u32) -> u32 {
    2 * a + b
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(LambdaScalar::one())
    }

    pub fn constant(c: LambdaScalar) -> Self {
        Self::monomial(0, 0, c)
    }

    /// c · x^a t^b where x is s or u.
    pub fn monomial(a: u32, b: u32, c: LambdaScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        Poly { terms }
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, LambdaScalar::one())
    }

    pub fn t() -> Self {
        Self::monomial(0, 1, LambdaScalar::one())
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32), LambdaScalar)>) -> Self {
        let mut p = Poly::zero();
        for (k, c) in it {
            p.add_term(k, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &LambdaScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> LambdaScalar {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| weight(*a, *b)).max()
    }

    pub fn add_term(&mut self, k: (u32, u32), c: &LambdaScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_default();
        slot.add_in_place(c);
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn truncate(&self, cap: u32) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|((a, b), _)| weight(*a, *b) <= cap)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &LambdaScalar) -> Self {
        Poly::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn scale_rat(&self, r: &Rational) -> Self {
        Poly::from_terms(self.terms.iter().map(|(k, v)| (*k, v.scale(r))))
    }

    /// Product with all terms of weight above `cap` discarded.
    pub fn mul_trunc(&self, o: &Self, cap: u32) -> Self {
        let mut out = Poly::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                let k = (a1 + a2, b1 + b2);
                if weight(k.0, k.1) <= cap {
                    out.add_term(k, &(c1 * c2));
                }
            }
        }
        out
    }

    pub fn pow_trunc(&self, e: u32, cap: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul_trunc(self, cap);
        }
        acc
    }

    /// ∂/∂x (x = s or u).
    pub fn d_x(&self) -> Self {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|((a, _), _)| *a > 0)
                .map(|((a, b), c)| ((a - 1, *b), c.scale(&rint(*a as i64)))),
        )
    }

    pub fn d_t(&self) -> Self {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|((_, b), _)| *b > 0)
                .map(|((a, b), c)| ((*a, b - 1), c.scale(&rint(*b as i64)))),
        )
    }

    /// p(x_img, t_img), truncated at weight `cap`.
    pub fn compose(&self, x_img: &Poly, t_img: &Poly, cap: u32) -> Self {
        let max_a = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let max_b = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let mut xp = vec![Poly::one()];
        for i in 0..max_a as usize {
            xp.push(xp[i].mul_trunc(x_img, cap));
        }
        let mut tp = vec![Poly::one()];
        for i in 0..max_b as usize {
            tp.push(tp[i].mul_trunc(t_img, cap));
        }
        let mut out = Poly::zero();
        for ((a, b), c) in &self.terms {
            let m = xp[*a as usize].mul_trunc(&tp[*b as usize], cap);
            out += m.scale(c);
        }
        out
    }

    pub fn map_coeffs<E>(
        &self,
        mut f: impl FnMut(&LambdaScalar) -> Result<LambdaScalar, E>,
    ) -> Result<Self, E> {
        let mut out = Poly::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, &f(c)?);
        }
        Ok(out)
    }

    pub fn add_in_place(&mut self, o: &Self) {
        for (k, c) in &o.terms {
            self.add_term(*k, c);
        }
    }

    pub fn sub_in_place(&mut self, o: &Self) {
        for (k, c) in &o.terms {
            self.add_term(*k, &-c);
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        self.mul_trunc(o, NO_CAP)
    }

    fn neg_ref(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

crate::impl_ring_ops!(Poly);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("({c})*s^{a}*t^{b}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// (1 − c·x)^{m/2} as a series in x, truncated at weight `cap`.
pub fn one_minus_cx_half_pow(m: i64, c: &LambdaScalar, cap: u32) -> Poly {
    let order = if cap == NO_CAP {
        assert!(m >= 0 && m % 2 == 0, "untruncated series of a non-polynomial power");
        (m / 2) as usize
    } else {
        (cap / 2) as usize
    };
    let coeffs = one_minus_x_half_pow(m, order);
    let mut cp = LambdaScalar::one();
    let mut out = Poly::zero();
    for (j, r) in coeffs.iter().enumerate() {
        out.add_term((j as u32, 0), &cp.scale(r));
        cp = &cp * c;
    }
    out
}

/// u = 4s − t², reading a (u, t) polynomial in (s, t).
pub fn tu_to_st(p: &Poly) -> Poly {
    let u = Poly::x().scale_rat(&rint(4)) - Poly::monomial(0, 2, LambdaScalar::one());
    p.compose(&u, &Poly::t(), NO_CAP)
}

/// s = (u + t²)/4, reading an (s, t) polynomial in (u, t).
pub fn st_to_tu(p: &Poly) -> Poly {
    let q = LambdaScalar::ratio(1, 4);
    let s = Poly::x().scale(&q) + Poly::monomial(0, 2, q);
    p.compose(&s, &Poly::t(), NO_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tu_roundtrip() {
        let p = Poly::monomial(2, 1, LambdaScalar::int(3)) + Poly::monomial(0, 3, LambdaScalar::lambda());
        assert_eq!(st_to_tu(&tu_to_st(&p)), p);
        assert_eq!(tu_to_st(&st_to_tu(&p)), p);
    }

    #[test]
    fn series_inverse() {
        let lam = LambdaScalar::lambda();
        let a = one_minus_cx_half_pow(3, &lam, 10);
        let b = one_minus_cx_half_pow(-3, &lam, 10);
        assert_eq!(a.mul_trunc(&b, 10), Poly::one());
    }
}
