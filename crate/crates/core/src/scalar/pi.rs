use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, rint, to_f64, Rational};

/// Element of ℚ[π, π⁻¹]: a finite sum of rational multiples of powers of π.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    terms: BTreeMap<i32, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(rint(1))
    }

    pub fn int(n: i64) -> Self {
        Self::rational(rint(n))
    }

    pub fn rational(r: Rational) -> Self {
        Self::term(r, 0)
    }

    pub fn pi_pow(m: i32) -> Self {
        Self::term(rint(1), m)
    }

    pub fn term(r: Rational, pi_exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(pi_exp, r);
        }
        Scalar { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i32, Rational)>) -> Self {
        let mut s = Scalar::zero();
        for (e, r) in it {
            s.add_term(e, &r);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|r| r.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(e, r)| (*e, r))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, pi_exp: i32) -> Rational {
        self.terms.get(&pi_exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// The rational number if the scalar has no π dependence.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn as_monomial(&self) -> Option<(i32, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, r)| (*e, r))
        } else {
            None
        }
    }

    fn add_term(&mut self, e: i32, r: &Rational) {
        if r.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += r;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(e, c)| (*e, c * r)).collect() }
    }

    pub fn shift_pi(&self, m: i32) -> Self {
        Scalar { terms: self.terms.iter().map(|(e, c)| (e + m, c.clone())).collect() }
    }

    /// Inverse; only monomials are units.
    pub fn inv(&self) -> Option<Self> {
        let (e, r) = self.as_monomial()?;
        Some(Scalar::term(r.recip(), -e))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|(e, r)| to_f64(r) * std::f64::consts::PI.powi(*e)).sum()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, r) in &self.terms {
            let neg = r.is_negative();
            let a = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{}", fmt_rational(&a))?,
                (e, true) => write!(f, "{}", pi_str(e))?,
                (e, false) => write!(f, "{}*{}", fmt_rational(&a), pi_str(e))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn pi_str(e: i32) -> String {
    if e == 1 {
        "pi".into()
    } else {
        format!("pi^{e}")
    }
}

impl Scalar {
    pub fn add_in_place(&mut self, o: &Self) {
        for (e, r) in &o.terms {
            self.add_term(*e, r);
        }
    }

    pub fn sub_in_place(&mut self, o: &Self) {
        for (e, r) in &o.terms {
            self.add_term(*e, &-r);
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let mut out = Scalar::zero();
        for (e1, r1) in &self.terms {
            for (e2, r2) in &o.terms {
                out.add_term(e1 + e2, &(r1 * r2));
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        Scalar { terms: self.terms.iter().map(|(e, r)| (*e, -r)).collect() }
    }
}

crate::impl_ring_ops!(Scalar);
