use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::pi::Scalar;
use super::rational::{fmt_rational, parse_rational, to_f64, Rational};
use crate::error::{domain, Result};

/// Finite Laurent polynomial in λ with [`Scalar`] coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaScalar {
    terms: BTreeMap<i32, Scalar>,
}

impl LambdaScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Scalar::one().into()
    }

    pub fn int(n: i64) -> Self {
        Scalar::int(n).into()
    }

    pub fn rational(r: Rational) -> Self {
        Scalar::rational(r).into()
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Scalar::rational(super::rational::rat(n, d)).into()
    }

    /// r·π^m·λ^l
    pub fn monomial(r: Rational, pi_exp: i32, lambda_exp: i32) -> Self {
        Self::term(Scalar::term(r, pi_exp), lambda_exp)
    }

    pub fn pi_pow(m: i32) -> Self {
        Scalar::pi_pow(m).into()
    }

    pub fn lambda() -> Self {
        Self::lambda_pow(1)
    }

    pub fn lambda_pow(l: i32) -> Self {
        Self::term(Scalar::one(), l)
    }

    pub fn term(s: Scalar, lambda_exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(lambda_exp, s);
        }
        LambdaScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|s| s.is_one())
    }

    /// True when every λ-exponent is non-negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().next().is_none_or(|e| *e >= 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Scalar)> {
        self.terms.iter().map(|(e, s)| (*e, s))
    }

    pub fn coeff(&self, lambda_exp: i32) -> Scalar {
        self.terms.get(&lambda_exp).cloned().unwrap_or_default()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// The scalar if there is no λ dependence.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_scalar()?.as_rational()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        LambdaScalar { terms: self.terms.iter().map(|(e, s)| (*e, s.scale(r))).collect() }
    }

    pub fn scale_scalar(&self, s: &Scalar) -> Self {
        self * &LambdaScalar::from(s.clone())
    }

    pub fn shift_lambda(&self, l: i32) -> Self {
        LambdaScalar { terms: self.terms.iter().map(|(e, s)| (e + l, s.clone())).collect() }
    }

    pub fn shift_pi(&self, m: i32) -> Self {
        LambdaScalar { terms: self.terms.iter().map(|(e, s)| (*e, s.shift_pi(m))).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a monomial r·π^m·λ^l.
    pub fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, s) = self.terms.iter().next()?;
        Some(Self::term(s.inv()?, -e))
    }

    /// Ring homomorphism λ ↦ value. Negative powers at λ = 0 are a domain error.
    pub fn specialize(&self, value: &Rational) -> Result<Self> {
        let mut out = Scalar::zero();
        for (e, s) in &self.terms {
            let f = if *e >= 0 {
                pow_rat(value, *e as u32)
            } else if value.is_zero() {
                return domain("negative power of lambda evaluated at lambda = 0");
            } else {
                pow_rat(&value.recip(), (-e) as u32)
            };
            out += s.scale(&f);
        }
        Ok(out.into())
    }

    /// Ring homomorphism to Q sending π ↦ `pi` and λ ↦ `lambda` (both nonzero).
    /// Used for rank certificates: a full rank image implies full rank.
    pub fn eval_rational(&self, pi: &Rational, lambda: &Rational) -> Rational {
        let pw = |x: &Rational, e: i32| if e >= 0 { pow_rat(x, e as u32) } else { pow_rat(&x.recip(), (-e) as u32) };
        let mut acc = Rational::from_integer(0.into());
        for (l, s) in &self.terms {
            for (p, r) in s.terms() {
                acc += r * pw(pi, p) * pw(lambda, *l);
            }
        }
        acc
    }

    /// Evaluates at a specific λ, including the π powers, as a float.
    pub fn to_f64(&self, lambda: f64) -> f64 {
        self.terms.iter().map(|(e, s)| s.to_f64() * lambda.powi(*e)).sum()
    }

    fn add_term(&mut self, e: i32, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        slot.add_in_place(s);
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add_in_place(&mut self, o: &Self) {
        for (e, s) in &o.terms {
            self.add_term(*e, s);
        }
    }

    pub fn sub_in_place(&mut self, o: &Self) {
        for (e, s) in &o.terms {
            self.add_term(*e, &-s);
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, s1) in &self.terms {
            for (e2, s2) in &o.terms {
                out.add_term(e1 + e2, &(s1 * s2));
            }
        }
        out
    }

    fn neg_ref(&self) -> Self {
        LambdaScalar { terms: self.terms.iter().map(|(e, s)| (*e, -s)).collect() }
    }

    /// Flattened (λ-exp, π-exp, rational) triples in ascending (λ, π) order.
    pub fn flat_terms(&self) -> Vec<(i32, i32, Rational)> {
        let mut v = vec![];
        for (l, s) in &self.terms {
            for (p, r) in s.terms() {
                v.push((*l, p, r.clone()));
            }
        }
        v
    }

    pub fn from_flat_terms(it: impl IntoIterator<Item = (i32, i32, Rational)>) -> Self {
        let mut out = Self::zero();
        for (l, p, r) in it {
            out.add_term(l, &Scalar::term(r, p));
        }
        out
    }
}

pub(crate) fn pow_rat(r: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= r;
    }
    acc
}

impl From<Scalar> for LambdaScalar {
    fn from(s: Scalar) -> Self {
        LambdaScalar::term(s, 0)
    }
}

impl From<Rational> for LambdaScalar {
    fn from(r: Rational) -> Self {
        LambdaScalar::rational(r)
    }
}

crate::impl_ring_ops!(LambdaScalar);

impl fmt::Display for LambdaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, s)| match *e {
                0 => s.to_string(),
                e => {
                    let l = if e == 1 { "lambda".to_string() } else { format!("lambda^{e}") };
                    if s.is_one() {
                        l
                    } else if s.len() == 1 {
                        format!("{s}*{l}")
                    } else {
                        format!("({s})*{l}")
                    }
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LambdaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    lambda: i32,
    pi: i32,
    num: String,
    den: String,
}

impl Serialize for LambdaScalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<JsonTerm> = self
            .flat_terms()
            .into_iter()
            .map(|(l, p, r)| JsonTerm {
                lambda: l,
                pi: p,
                num: r.numer().to_string(),
                den: r.denom().to_string(),
            })
            .collect();
        v.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LambdaScalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<JsonTerm>::deserialize(de)?;
        let mut terms = vec![];
        for t in v {
            let r = parse_rational(&format!("{}/{}", t.num, t.den))
                .ok_or_else(|| serde::de::Error::custom("bad rational"))?;
            terms.push((t.lambda, t.pi, r));
        }
        Ok(LambdaScalar::from_flat_terms(terms))
    }
}

/// How the curvature parameter enters structure constants: kept as the
/// formal symbol λ, or specialized to a rational value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lambda {
    Formal,
    Value(Rational),
}

impl Lambda {
    pub fn zero() -> Self {
        Lambda::Value(Rational::zero())
    }

    pub fn value(n: i64, d: i64) -> Self {
        Lambda::Value(super::rational::rat(n, d))
    }

    /// λ as a coefficient.
    pub fn scalar(&self) -> LambdaScalar {
        match self {
            Lambda::Formal => LambdaScalar::lambda(),
            Lambda::Value(r) => LambdaScalar::rational(r.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Lambda::Value(r) if r.is_zero())
    }

    /// Applies the mode to a coefficient written with formal λ.
    pub fn apply(&self, c: &LambdaScalar) -> Result<LambdaScalar> {
        match self {
            Lambda::Formal => Ok(c.clone()),
            Lambda::Value(r) => c.specialize(r),
        }
    }

    pub fn to_f64(&self) -> Option<f64> {
        match self {
            Lambda::Formal => None,
            Lambda::Value(r) => Some(to_f64(r)),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        if s.trim().eq_ignore_ascii_case("formal") {
            Some(Lambda::Formal)
        } else {
            parse_rational(s).map(Lambda::Value)
        }
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lambda::Formal => write!(f, "formal"),
            Lambda::Value(r) => write!(f, "{}", fmt_rational(r)),
        }
    }
}

impl Serialize for Lambda {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Lambda {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        Lambda::parse(&s).ok_or_else(|| serde::de::Error::custom("bad lambda"))
    }
}

impl Default for Lambda {
    fn default() -> Self {
        Lambda::Formal
    }
}
