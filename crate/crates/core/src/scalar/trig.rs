//! Polynomials in sn_λ(r), cs_λ(r) and formal integrals ∫₀^r sn^a cs^b.

use std::collections::BTreeMap;
use std::fmt;

use super::lambda::{Lambda, LambdaScalar};
use super::rational::{rint, Rational};
use crate::error::Result;

/// sn^sn · cs^cs · Π ∫₀^r sn^a cs^b, atoms kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrigMono {
    pub sn: u32,
    pub cs: u32,
    pub atoms: Vec<(u32, u32)>,
}

impl TrigMono {
    pub fn new(sn: u32, cs: u32) -> Self {
        TrigMono { sn, cs, atoms: vec![] }
    }

    pub fn atom(a: u32, b: u32) -> Self {
        TrigMono { sn: 0, cs: 0, atoms: vec![(a, b)] }
    }

    fn times(&self, o: &TrigMono) -> TrigMono {
        let mut atoms = self.atoms.clone();
        atoms.extend_from_slice(&o.atoms);
        atoms.sort_unstable();
        TrigMono { sn: self.sn + o.sn, cs: self.cs + o.cs, atoms }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TrigPoly {
    lambda: Lambda,
    terms: BTreeMap<TrigMono, LambdaScalar>,
}

impl TrigPoly {
    pub fn zero(lambda: Lambda) -> Self {
        TrigPoly { lambda, terms: BTreeMap::new() }
    }

    pub fn constant(lambda: Lambda, c: LambdaScalar) -> Self {
        Self::from_mono(lambda, TrigMono::default(), c)
    }

    pub fn one(lambda: Lambda) -> Self {
        Self::constant(lambda, LambdaScalar::one())
    }

    /// c · sn^a cs^b, canonicalized.
    pub fn sn_cs(lambda: Lambda, a: u32, b: u32, c: LambdaScalar) -> Self {
        Self::from_mono(lambda, TrigMono::new(a, b), c)
    }

    pub fn integral(lambda: Lambda, a: u32, b: u32) -> Self {
        Self::from_mono(lambda, TrigMono::atom(a, b), LambdaScalar::one())
    }

    pub fn from_mono(lambda: Lambda, m: TrigMono, c: LambdaScalar) -> Self {
        Self::raw(lambda, [(m, c)]).reduce()
    }

    /// Builds a polynomial without canonicalizing (cs powers may exceed 1).
    pub fn raw(lambda: Lambda, it: impl IntoIterator<Item = (TrigMono, LambdaScalar)>) -> Self {
        let mut p = TrigPoly::zero(lambda);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn lambda(&self) -> &Lambda {
        &self.lambda
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TrigMono, &LambdaScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.keys().all(|m| m.cs <= 1)
    }

    fn add_term(&mut self, m: TrigMono, c: &LambdaScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        slot.add_in_place(c);
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Canonical form: cs² = 1 − λ sn² applied until every cs exponent is ≤ 1.
    pub fn reduce(&self) -> Self {
        let lam = self.lambda.scalar();
        let mut out = TrigPoly::zero(self.lambda.clone());
        let mut stack: Vec<(TrigMono, LambdaScalar)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        while let Some((m, c)) = stack.pop() {
            if m.cs <= 1 {
                out.add_term(m, &c);
                continue;
            }
            let lower = TrigMono { cs: m.cs - 2, ..m.clone() };
            let shifted = TrigMono { sn: m.sn + 2, cs: m.cs - 2, atoms: m.atoms.clone() };
            stack.push((lower, c.clone()));
            stack.push((shifted, -(&c * &lam)));
        }
        out
    }

    pub fn scale(&self, c: &LambdaScalar) -> Self {
        let mut out = TrigPoly::zero(self.lambda.clone());
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    /// Formal d/dr.
    pub fn differentiate(&self) -> Self {
        let lam = self.lambda.scalar();
        let mut out = TrigPoly::zero(self.lambda.clone());
        for (m, c) in &self.terms {
            if m.sn > 0 {
                let d = TrigMono { sn: m.sn - 1, cs: m.cs + 1, atoms: m.atoms.clone() };
                out.add_term(d, &c.scale(&rint(m.sn as i64)));
            }
            if m.cs > 0 {
                let d = TrigMono { sn: m.sn + 1, cs: m.cs - 1, atoms: m.atoms.clone() };
                out.add_term(d, &-(c * &lam).scale(&rint(m.cs as i64)));
            }
            for i in 0..m.atoms.len() {
                let (a, b) = m.atoms[i];
                let mut atoms = m.atoms.clone();
                atoms.remove(i);
                out.add_term(TrigMono { sn: m.sn + a, cs: m.cs + b, atoms }, c);
            }
        }
        out.reduce()
    }

    /// λ ↦ value in both coefficients and the cs relation.
    pub fn specialize(&self, value: &Rational) -> Result<Self> {
        let mut out = TrigPoly::zero(Lambda::Value(value.clone()));
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.specialize(value)?);
        }
        Ok(out.reduce())
    }

    /// λ = 0 with sn = r, cs = 1 and ∫₀^r ρ^a dρ = r^{a+1}/(a+1): a polynomial in r.
    pub fn flat_limit(&self) -> Result<BTreeMap<u32, LambdaScalar>> {
        let p = self.specialize(&rint(0))?;
        let mut out: BTreeMap<u32, LambdaScalar> = BTreeMap::new();
        for (m, c) in &p.terms {
            let mut deg = m.sn;
            let mut coef = c.clone();
            for (a, _) in &m.atoms {
                deg += a + 1;
                coef = coef.scale(&Rational::new(1.into(), (*a as i64 + 1).into()));
            }
            let slot = out.entry(deg).or_default();
            slot.add_in_place(&coef);
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Numeric value at radius r. For formal λ the caller supplies λ.
    pub fn eval(&self, lambda: f64, r: f64) -> f64 {
        let lam = self.lambda.to_f64().unwrap_or(lambda);
        let mut atoms: BTreeMap<(u32, u32), f64> = BTreeMap::new();
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut v = c.to_f64(lam) * sn(lam, r).powi(m.sn as i32) * cs(lam, r).powi(m.cs as i32);
            for at in &m.atoms {
                let w = *atoms.entry(*at).or_insert_with(|| integrate(lam, r, at.0, at.1));
                v *= w;
            }
            total += v;
        }
        total
    }

    pub fn add_in_place(&mut self, o: &Self) {
        assert_eq!(self.lambda, o.lambda, "trig polynomials over different lambda");
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_in_place(&mut self, o: &Self) {
        assert_eq!(self.lambda, o.lambda, "trig polynomials over different lambda");
        for (m, c) in &o.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        assert_eq!(self.lambda, o.lambda, "trig polynomials over different lambda");
        let mut out = TrigPoly::zero(self.lambda.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.times(m2), &(c1 * c2));
            }
        }
        out.reduce()
    }

    fn neg_ref(&self) -> Self {
        self.scale(&LambdaScalar::int(-1))
    }
}

crate::impl_ring_ops!(TrigPoly);

pub fn sn(lambda: f64, r: f64) -> f64 {
    if lambda > 0.0 {
        (lambda.sqrt() * r).sin() / lambda.sqrt()
    } else if lambda < 0.0 {
        ((-lambda).sqrt() * r).sinh() / (-lambda).sqrt()
    } else {
        r
    }
}

pub fn cs(lambda: f64, r: f64) -> f64 {
    if lambda > 0.0 {
        (lambda.sqrt() * r).cos()
    } else if lambda < 0.0 {
        ((-lambda).sqrt() * r).cosh()
    } else {
        1.0
    }
}

/// Composite Simpson rule for ∫₀^r sn^a cs^b.
fn integrate(lambda: f64, r: f64, a: u32, b: u32) -> f64 {
    let n = 4096;
    let h = r / n as f64;
    let f = |x: f64| sn(lambda, x).powi(a as i32) * cs(lambda, x).powi(b as i32);
    let mut acc = f(0.0) + f(r);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(i as f64 * h);
    }
    acc * h / 3.0
}

impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = format!("({c})");
                if m.sn > 0 {
                    s += &format!("*sn^{}", m.sn);
                }
                if m.cs > 0 {
                    s += &format!("*cs^{}", m.cs);
                }
                for (a, b) in &m.atoms {
                    s += &format!("*I[{a},{b}]");
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> Lambda {
        Lambda::Formal
    }

    #[test]
    fn cs_squared() {
        let p = TrigPoly::sn_cs(l(), 0, 2, LambdaScalar::one());
        let want = TrigPoly::one(l()) - TrigPoly::sn_cs(l(), 2, 0, LambdaScalar::lambda());
        assert_eq!(p, want);
    }

    #[test]
    fn one_reduction_step() {
        let raw = TrigPoly::raw(l(), [(TrigMono::new(2, 3), LambdaScalar::one())]);
        let want = TrigPoly::sn_cs(l(), 2, 1, LambdaScalar::one())
            - TrigPoly::sn_cs(l(), 4, 1, LambdaScalar::lambda());
        assert_eq!(raw.reduce(), want);
        assert_eq!(raw.reduce().reduce(), raw.reduce());
    }

    #[test]
    fn relation_vanishes() {
        let p = TrigPoly::one(l()) - TrigPoly::sn_cs(l(), 2, 0, LambdaScalar::lambda())
            - TrigPoly::sn_cs(l(), 0, 2, LambdaScalar::one());
        assert!(p.is_zero());
    }

    #[test]
    fn derivatives() {
        let sn1 = TrigPoly::sn_cs(l(), 1, 0, LambdaScalar::one());
        assert_eq!(sn1.differentiate(), TrigPoly::sn_cs(l(), 0, 1, LambdaScalar::one()));
        let sc = TrigPoly::sn_cs(l(), 1, 1, LambdaScalar::one());
        let want = TrigPoly::one(l()) - TrigPoly::sn_cs(l(), 2, 0, LambdaScalar::lambda().scale(&rint(2)));
        assert_eq!(sc.differentiate(), want);
        let at = TrigPoly::integral(l(), 2, 0);
        assert_eq!(at.differentiate(), TrigPoly::sn_cs(l(), 2, 0, LambdaScalar::one()));
    }

    #[test]
    fn numeric_atoms() {
        // ∫₀^r sn cs = sn²/2
        let at = TrigPoly::integral(l(), 1, 1);
        let half_sn2 = TrigPoly::sn_cs(l(), 2, 0, LambdaScalar::ratio(1, 2));
        for lam in [-1.0, 0.0, 0.5, 1.0] {
            for r in [0.25, 0.5, 1.0] {
                assert!((at.eval(lam, r) - half_sn2.eval(lam, r)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn flat_limit_of_atom() {
        let at = TrigPoly::integral(l(), 3, 1);
        let fl = at.flat_limit().unwrap();
        assert_eq!(fl.get(&4), Some(&LambdaScalar::ratio(1, 4)));
    }
}
