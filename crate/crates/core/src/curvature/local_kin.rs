//! Local and semi-local kinematic formulas.

use std::collections::BTreeMap;

use super::element::{CurvElement, CurvTensor, SemiLocalTensor};
use super::index::CurvIndex;
use super::module::CurvModule;
use crate::error::Result;
use crate::poly::{tu_to_st, Poly};
use crate::scalar::constants::{a_nkr, dfact_r, factorial_r, om};
use crate::scalar::rational::rint;
use crate::scalar::LambdaScalar;
use crate::valuation::kinematic::kr_range;
use crate::valuation::{pi_kr, Dim, ValAlgebra, ValIndex, ValTensor};

fn sign(i: i64) -> LambdaScalar {
    LambdaScalar::int(if i % 2 == 0 { 1 } else { -1 })
}

/// ρ_kr, the (s, t) polynomial with 𝔫(ρ_kr) = Σ∘D₁(π_kr).
pub fn rho_kr(n: u32, k: u32, r: u32) -> Poly {
    let (n, k, r) = (n as i64, k as i64, r as i64);
    let mut tu = Poly::zero();
    let first = dfact_r(2 * r - 1) * factorial_r((k + 1) as u32) / (dfact_r(2 * n - 2 * r + 1) * factorial_r((2 * r) as u32));
    let mut i = 0;
    while 2 * i + 1 <= k {
        let c = &first / (factorial_r((2 * i + 3) as u32) * factorial_r((k - 2 * i - 1) as u32));
        tu.add_term((i as u32, (k - 2 * i - 1) as u32), &sign(i + 1).scale(&c));
        i += 1;
    }
    for i in 0..r {
        let c = dfact_r(2 * r - 2 * i - 3)
            / (dfact_r(2 * n - 2 * r - 2 * i - 1) * factorial_r((2 * r - 2 * i - 2) as u32) * factorial_r((2 * i + 2) as u32));
        tu.add_term((i as u32, (k - 2 * i - 1) as u32), &sign(i).scale(&c));
    }
    let lead = om(k).inv().unwrap().shift_pi(k as i32 - 1).scale(&(dfact_r(2 * n - 4 * r + 1) * rint(2)));
    tu_to_st(&tu).scale(&(&sign(r) * &LambdaScalar::from(lead)))
}

/// The sums defining K(Δ₀₀) and K(N₁₀) for dimension n, evaluated in `m`.
/// With `m` = Curv^{U(∞)} capped at 2n this is the formula before
/// restriction to Curv^{U(n)}.
fn assemble(m: &CurvModule, n: u32) -> Result<(CurvTensor, CurvTensor)> {
    let mut l_pi = BTreeMap::new();
    let mut n_pi = BTreeMap::new();
    let mut n_rho = BTreeMap::new();
    for (k, r) in kr_range(n) {
        l_pi.insert((k, r), m.ell_poly(&pi_kr(n, k, r))?);
        n_pi.insert((k, r), m.nn_poly(&pi_kr(n, k, r))?);
        n_rho.insert((k, r), m.nn_poly(&rho_kr(n, k, r))?);
    }
    let mut kd = CurvTensor::zero();
    let mut kn = CurvTensor::zero();
    for (k, r) in kr_range(n) {
        let a = LambdaScalar::from(a_nkr(n as i64, k as i64, r as i64)?);
        let (i, j) = ((k, r), (2 * n - k, r));
        let mut d = CurvTensor::outer(&l_pi[&i], &l_pi[&j]);
        d = d.sub(&CurvTensor::outer(&n_rho[&i], &n_rho[&j]));
        kd.add_in_place(&d.scale(&a));
        let mut e = CurvTensor::outer(&n_pi[&i], &l_pi[&j]);
        e.add_in_place(&CurvTensor::outer(&l_pi[&i], &n_pi[&j]));
        e = e.sub(&CurvTensor::outer(&n_pi[&i], &n_rho[&j]));
        e = e.sub(&CurvTensor::outer(&n_rho[&i], &n_pi[&j]));
        kn.add_in_place(&e.scale(&a));
    }
    Ok((kd, kn))
}

/// K(Δ₀₀) and K(N₁₀) for dimension n before restriction, i.e. with
/// N_{k,k−n} still present.
pub fn unrestricted_kinematic(n: u32) -> Result<(CurvTensor, CurvTensor)> {
    assemble(&CurvModule::new(Dim::Inf { cap: 2 * n }), n)
}

impl CurvModule {
    fn kin_generators(&self) -> Result<&(CurvTensor, CurvTensor)> {
        if let Some(k) = self.kin.get() {
            return Ok(k);
        }
        let pair = assemble(self, self.flat().n()?)?;
        Ok(self.kin.get_or_init(|| pair))
    }

    /// K(Δ_{0,0}).
    pub fn kinematic_delta00(&self) -> Result<&CurvTensor> {
        Ok(&self.kin_generators()?.0)
    }

    /// K(N_{1,0}).
    pub fn kinematic_n10(&self) -> Result<&CurvTensor> {
        Ok(&self.kin_generators()?.1)
    }

    /// (p ⊗ χ)·T.
    pub fn act_poly_first(&self, p: &Poly, t: &CurvTensor) -> Result<CurvTensor> {
        let dim = self.dim();
        t.map_legs(|a| self.act_poly(p, &CurvElement::basis_vector(dim, a)?), |b| CurvElement::basis_vector(dim, b))
    }

    /// (χ ⊗ p)·T.
    pub fn act_poly_second(&self, p: &Poly, t: &CurvTensor) -> Result<CurvTensor> {
        let dim = self.dim();
        t.map_legs(|a| CurvElement::basis_vector(dim, a), |b| self.act_poly(p, &CurvElement::basis_vector(dim, b)?))
    }

    /// The local kinematic operator K(c) = (p1⊗χ)K(Δ₀₀) + (p2⊗χ)K(N₁₀).
    pub fn local_kinematic(&self, c: &CurvElement) -> Result<CurvTensor> {
        let (p1, p2) = self.free_decompose_poly(c)?;
        let (kd, kn) = self.kin_generators()?;
        let mut out = self.act_poly_first(&p1, kd)?;
        out.add_in_place(&self.act_poly_first(&p2, kn)?);
        Ok(out)
    }

    /// (id ⊗ glob_λ)∘K.
    pub fn semi_local(&self, c: &CurvElement, alg: &ValAlgebra) -> Result<SemiLocalTensor> {
        let k = self.local_kinematic(c)?;
        let mut globs: BTreeMap<CurvIndex, Vec<(ValIndex, LambdaScalar)>> = BTreeMap::new();
        let mut out = SemiLocalTensor::default();
        for ((a, b), v) in k.terms() {
            if !globs.contains_key(b) {
                let g = self.globalize(&CurvElement::basis_vector(self.dim(), *b)?, alg)?;
                let terms = g.terms().map(|((k, q), c)| (ValIndex { k: *k, q: *q }, c.clone())).collect();
                globs.insert(*b, terms);
            }
            for (j, c) in &globs[b] {
                out.add_term(*a, *j, &(v * c));
            }
        }
        Ok(out)
    }

    /// (glob_λ ⊗ glob_λ)·T.
    pub fn globalize_tensor(&self, t: &CurvTensor, alg: &ValAlgebra) -> Result<ValTensor> {
        let mut cache = BTreeMap::new();
        let mut g = |i: CurvIndex| -> Result<_> {
            if !cache.contains_key(&i) {
                cache.insert(i, self.globalize(&CurvElement::basis_vector(self.dim(), i)?, alg)?);
            }
            Ok(cache[&i].clone())
        };
        let mut out = ValTensor::zero(alg.dim(), alg.lambda().clone());
        for ((a, b), c) in t.terms() {
            let (ga, gb) = (g(*a)?, g(*b)?);
            out.add_in_place(&ValTensor::outer(&ga, &gb)?.scale(c));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::index::{delta_n_indices, Family};
    use crate::scalar::rational::rat;
    use crate::scalar::Lambda;
    use crate::valuation::kinematic;

    fn idx(f: Family, k: u32, q: u32) -> CurvIndex {
        CurvIndex { family: f, k, q }
    }

    #[test]
    fn rho_at_n1() {
        assert_eq!(rho_kr(1, 1, 0), Poly::constant(LambdaScalar::ratio(-1, 3)));
        assert!(rho_kr(3, 0, 0).is_zero());
    }

    #[test]
    fn k_delta00_n1() {
        use Family::*;
        let m = CurvModule::finite(1);
        let mut expect = CurvTensor::zero();
        expect.add_term(idx(Delta, 0, 0), idx(Delta, 2, 1), &LambdaScalar::one());
        expect.add_term(idx(Delta, 2, 1), idx(Delta, 0, 0), &LambdaScalar::one());
        expect.add_term(idx(Delta, 1, 0), idx(Delta, 1, 0), &LambdaScalar::monomial(rat(2, 1), -1, 0));
        // N_{1,0} vanishes in Curv^{U(1)}; it survives only before restriction
        assert_eq!(*m.kinematic_delta00().unwrap(), expect);
        let lifted = unrestricted_kinematic(1).unwrap().0;
        assert_eq!(lifted.coeff(idx(N, 1, 0), idx(N, 1, 0)), LambdaScalar::monomial(rat(-2, 9), -1, 0));
        let mut restricted = CurvTensor::zero();
        for ((a, b), c) in lifted.terms() {
            if a.valid(m.dim()) && b.valid(m.dim()) {
                restricted.add_term(*a, *b, c);
            }
        }
        assert_eq!(restricted, expect);
    }

    #[test]
    fn k_n10_n3() {
        use Family::*;
        let m = CurvModule::finite(3);
        let k = m.kinematic_n10().unwrap();
        let mut expect = CurvTensor::zero();
        let one = LambdaScalar::one();
        let two_fifths = LambdaScalar::ratio(2, 5);
        for (a, b, c) in [
            (idx(N, 1, 0), idx(Delta, 6, 3), &one),
            (idx(N, 2, 0), idx(Delta, 5, 2), &two_fifths),
            (idx(N, 3, 1), idx(Delta, 4, 2), &two_fifths),
        ] {
            expect.add_term(a, b, c);
            expect.add_term(b, a, c);
        }
        assert_eq!(*k, expect);
    }

    #[test]
    fn globalizes_to_global_formulas() {
        for n in 1..=3 {
            let m = CurvModule::finite(n);
            let flat = m.flat();
            let k0 = kinematic::kinematic_chi(flat).unwrap();
            assert_eq!(m.globalize_tensor(m.kinematic_delta00().unwrap(), flat).unwrap(), *k0, "n={n}");
            let alg = ValAlgebra::finite(n, Lambda::Formal);
            for i in delta_n_indices(m.dim()) {
                let c = CurvElement::basis_vector(m.dim(), i).unwrap();
                let lhs = m.globalize_tensor(&m.local_kinematic(&c).unwrap(), &alg).unwrap();
                let rhs = kinematic::kinematic(&alg, &m.globalize(&c, &alg).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "n={n} {i}");
            }
        }
    }

    #[test]
    fn symmetric_and_module_compatible() {
        for n in 1..=3 {
            let m = CurvModule::finite(n);
            let vol = CurvElement::basis_vector(m.dim(), CurvIndex::delta(2 * n, n)).unwrap();
            assert_eq!(m.local_kinematic(&vol).unwrap(), CurvTensor::outer(&vol, &vol));
            for i in delta_n_indices(m.dim()) {
                let c = CurvElement::basis_vector(m.dim(), i).unwrap();
                let k = m.local_kinematic(&c).unwrap();
                assert!(k.is_symmetric(), "n={n} {i}");
                for p in [Poly::x(), Poly::t()] {
                    let lhs = m.local_kinematic(&m.act_poly(&p, &c).unwrap()).unwrap();
                    assert_eq!(lhs, m.act_poly_first(&p, &k).unwrap(), "n={n} {i} {p}");
                    assert_eq!(lhs, m.act_poly_second(&p, &k).unwrap(), "n={n} {i} {p}");
                }
            }
        }
    }

    #[test]
    fn semi_local_matches_second_leg_globalization() {
        let m = CurvModule::finite(2);
        let alg = ValAlgebra::finite(2, Lambda::value(1, 1));
        let sl = m.semi_local(&m.delta00(), &alg).unwrap();
        assert!(!sl.is_zero());
        // contracting the curvature leg with glob_λ reproduces k_λ(glob_λ Δ₀₀)
        let full = m.globalize_tensor(&m.local_kinematic(&m.delta00()).unwrap(), &alg).unwrap();
        let mut again = ValTensor::zero(alg.dim(), alg.lambda().clone());
        for ((a, b), c) in sl.terms() {
            let ga = m.globalize(&CurvElement::basis_vector(m.dim(), *a).unwrap(), &alg).unwrap();
            let gb = alg.mu(b.k, b.q).unwrap();
            again.add_in_place(&ValTensor::outer(&ga, &gb).unwrap().scale(c));
        }
        assert_eq!(again, full);
    }
}
