//! Batch property checks over all basis elements of one (n, λ).

use std::collections::BTreeMap;
use std::fmt::Display;

use serde_json::{json, Value};

use crate::curvature::index::{delta_n_indices, Family};
use crate::curvature::{n_kernel_polys, rho_kr, CurvBasis, CurvElement, CurvIndex, CurvModule, CurvTensor};
use crate::error::Result;
use crate::poly::{tu_to_st, Poly};
use crate::scalar::{Lambda, LambdaScalar};
use crate::valuation::duality::pd_matrix;
use crate::valuation::kinematic::kr_range;
use crate::valuation::{kinematic, kinematic_chi, pi_kr, vol_star, Dim, ValAlgebra, ValElement, ValIndex, ValTensor};

/// Records the first failed check.
#[derive(Default)]
pub(crate) struct Checker {
    pub checks: usize,
    pub witness: Option<Value>,
}

impl Checker {
    fn check(&mut self, ok: bool, what: &str, at: impl Display, lhs: impl Display, rhs: impl Display) {
        self.checks += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(json!({
                "check": what,
                "at": at.to_string(),
                "lhs": lhs.to_string(),
                "rhs": rhs.to_string(),
            }));
        }
    }

    fn eq<T: PartialEq + Display>(&mut self, what: &str, at: impl Display, lhs: &T, rhs: &T) {
        self.check(lhs == rhs, what, at, lhs, rhs)
    }
}

fn curv_basis(m: &CurvModule) -> Vec<(CurvIndex, CurvElement)> {
    delta_n_indices(m.dim()).into_iter().map(|i| (i, m.basis_element(i).expect("basis"))).collect()
}

fn monomials(top: u32) -> Vec<Poly> {
    let mut v = vec![];
    for a in 0..=top / 2 {
        for b in 0..=top - 2 * a {
            v.push(Poly::monomial(a, b, LambdaScalar::one()));
        }
    }
    v
}

type Triple<I> = BTreeMap<(I, I, I), LambdaScalar>;

fn add3<I: Ord + Copy>(out: &mut Triple<I>, key: (I, I, I), c: LambdaScalar) {
    let slot = out.entry(key).or_default();
    slot.add_in_place(&c);
    if slot.is_zero() {
        out.remove(&key);
    }
}

fn show3<I: Display>(t: &Triple<I>) -> String {
    t.iter().map(|((a, b, c), v)| format!("({v})*{a}@{b}@{c}")).collect::<Vec<_>>().join(" + ")
}

/// K cocommutative and coassociative on Curv^{U(n)}; the same for k_λ on V^n_λ.
pub(crate) fn coalgebra(n: u32, lambda: &Lambda, ck: &mut Checker) -> Result<()> {
    let m = CurvModule::finite(n);
    let mut ks: BTreeMap<CurvIndex, CurvTensor> = BTreeMap::new();
    for (i, c) in curv_basis(&m) {
        ks.insert(i, m.local_kinematic(&c)?);
    }
    for (i, k) in &ks {
        ck.check(k.is_symmetric(), "K cocommutative", i, k, k.swap());
        let (mut left, mut right) = (Triple::new(), Triple::new());
        for ((a, b), c) in k.terms() {
            for ((x, y), d) in ks[a].terms() {
                add3(&mut left, (*x, *y, *b), c * d);
            }
            for ((x, y), d) in ks[b].terms() {
                add3(&mut right, (*a, *x, *y), c * d);
            }
        }
        ck.check(left == right, "K coassociative", i, show3(&left), show3(&right));
    }
    let alg = ValAlgebra::finite(n, lambda.clone());
    let mut gs: BTreeMap<ValIndex, ValTensor> = BTreeMap::new();
    for i in alg.dim().mu_indices() {
        gs.insert(i, kinematic(&alg, &alg.mu(i.k, i.q)?)?);
    }
    for (i, k) in &gs {
        ck.check(k.is_symmetric(), "k cocommutative", i, k, k.swap());
        let (mut left, mut right) = (Triple::new(), Triple::new());
        for ((a, b), c) in k.terms() {
            for ((x, y), d) in gs[a].terms() {
                add3(&mut left, (*x, *y, *b), c * d);
            }
            for ((x, y), d) in gs[b].terms() {
                add3(&mut right, (*a, *x, *y), c * d);
            }
        }
        ck.check(left == right, "k coassociative", i, show3(&left), show3(&right));
    }
    Ok(())
}

/// (pd⊗pd)∘k_λ = m*∘pd: Σ_{ij} c^φ_ij pd(μ_i, μ_a) pd(μ_j, μ_b) = pd(φ μ_a, μ_b).
pub(crate) fn ftaig(n: u32, lambda: &Lambda, ck: &mut Checker) -> Result<()> {
    let alg = ValAlgebra::finite(n, lambda.clone());
    let vs = vol_star(&alg)?;
    let p = pd_matrix(&alg, &vs)?;
    let idx = alg.dim().mu_indices();
    let pd = |a: ValIndex, b: ValIndex| p.get(&(a, b)).cloned().unwrap_or_default();
    let pd_vec = |v: &ValElement, b: ValIndex| -> LambdaScalar {
        let mut acc = LambdaScalar::zero();
        for ((k, q), c) in v.terms() {
            acc += c * &pd(ValIndex::new(*k, *q), b);
        }
        acc
    };
    for phi in &idx {
        let mu_phi = alg.mu(phi.k, phi.q)?;
        let k = kinematic(&alg, &mu_phi)?;
        // (P C P)_{ab} with C the coefficient matrix of k(φ)
        let mut cp: BTreeMap<(ValIndex, ValIndex), LambdaScalar> = BTreeMap::new();
        for ((i, j), c) in k.terms() {
            for b in &idx {
                let v = c * &pd(*j, *b);
                if !v.is_zero() {
                    cp.entry((*i, *b)).or_default().add_in_place(&v);
                }
            }
        }
        for a in &idx {
            let prod = alg.multiply(&mu_phi, &alg.mu(a.k, a.q)?)?;
            for b in &idx {
                let mut lhs = LambdaScalar::zero();
                for i in &idx {
                    if let Some(v) = cp.get(&(*i, *b)) {
                        lhs += &pd(*i, *a) * v;
                    }
                }
                let rhs = pd_vec(&prod, *b);
                ck.eq("(pd@pd)k = m*pd", format!("phi={phi} a={a} b={b}"), &lhs, &rhs);
            }
        }
    }
    Ok(())
}

/// Module compatibility of K, [s,t] = 0, s preserves span{B}, and the flat
/// actions commute with t_λ.
pub(crate) fn module(n: u32, lambda: &Lambda, ck: &mut Checker) -> Result<()> {
    let m = CurvModule::finite(n);
    let lam = lambda.scalar();
    for (i, c) in curv_basis(&m) {
        let k = m.local_kinematic(&c)?;
        for (name, p) in [("s", Poly::x()), ("t", Poly::t())] {
            let lhs = m.local_kinematic(&m.act_poly(&p, &c)?)?;
            ck.eq(&format!("K({name}c) = ({name}@chi)K(c)"), i, &lhs, &m.act_poly_first(&p, &k)?);
            ck.eq(&format!("K({name}c) = (chi@{name})K(c)"), i, &lhs, &m.act_poly_second(&p, &k)?);
        }
        let st = m.act_s(&m.act_t(&c)?)?;
        let ts = m.act_t(&m.act_s(&c)?)?;
        ck.eq("[s,t] = 0", i, &st, &ts);
        let tl = m.act_t_lambda(&c, &lam)?;
        ck.eq("[s,t_lambda] = 0", i, &m.act_s(&tl)?, &m.act_t_lambda(&m.act_s(&c)?, &lam)?);
        ck.eq("[t,t_lambda] = 0", i, &m.act_t(&tl)?, &m.act_t_lambda(&m.act_t(&c)?, &lam)?);
    }
    for i in crate::curvature::b_gamma_indices(m.dim()) {
        if i.family != Family::B {
            continue;
        }
        let img = m.convert(&m.act_s(&m.basis_element(i)?)?, CurvBasis::BGamma)?;
        let gamma = img.family_part(Family::Gamma);
        ck.check(gamma.is_zero(), "s preserves span{B}", i, &img, "no Gamma terms");
    }
    Ok(())
}

/// t_λ·Δ_kq has no N-part.
pub(crate) fn angularity(n: u32, lambda: &Lambda, ck: &mut Checker) -> Result<()> {
    let m = CurvModule::finite(n);
    let lam = lambda.scalar();
    for (i, c) in curv_basis(&m) {
        if i.family != Family::Delta {
            continue;
        }
        let img = m.act_t_lambda(&c, &lam)?;
        let np = img.family_part(Family::N);
        ck.check(np.is_zero(), "t_lambda Delta angular", i, &np, "0");
    }
    Ok(())
}

/// (H′₀⊗H′₀)∘K = 0, the A₁ identity, Σ∘D₂ = 𝔫 and 𝔫(ρ_kr) = Σ∘D₁π_kr.
pub(crate) fn local_kin_derivation(n: u32, _lambda: &Lambda, ck: &mut Checker) -> Result<()> {
    let m = CurvModule::finite(n);
    let f = m.flat();
    for (i, c) in curv_basis(&m) {
        let h = m.h0_prime_tensor(&m.local_kinematic(&c)?)?;
        ck.check(h.is_zero(), "(H0'@H0')K = 0", i, &h, "0");
    }
    let (lhs, rhs) = a1_identity(&m)?;
    ck.eq("(H0'@H0')(K(Delta00) - (l@l)k(chi)) = -(D1@D1)k(chi)", format!("n={n}"), &lhs, &rhs);
    for p in monomials(2 * n) {
        let lhs = m.sigma(&m.d2(&f.poly_to_mu(&p))?)?;
        ck.eq("Sigma D2 = n", &p, &lhs, &m.nn_poly(&p)?);
    }
    for (k, r) in kr_range(n) {
        let lhs = m.nn_poly(&rho_kr(n, k, r))?;
        let rhs = m.sigma(&m.d1(&f.poly_to_mu(&pi_kr(n, k, r)))?)?;
        ck.eq("n(rho) = Sigma D1 pi", format!("k={k} r={r}"), &lhs, &rhs);
    }
    Ok(())
}

/// Both sides of (H′₀⊗H′₀)A₁ = −(D₁⊗D₁)k(χ) with A₁ = K(Δ₀₀) − (ℓ⊗ℓ)k(χ).
pub fn a1_identity(m: &CurvModule) -> Result<(ValTensor, ValTensor)> {
    let f = m.flat();
    let k = kinematic_chi(f)?;
    let mut ll = CurvTensor::zero();
    for ((i, j), c) in k.terms() {
        let a = m.ell(&f.mu(i.k, i.q)?)?;
        let b = m.ell(&f.mu(j.k, j.q)?)?;
        ll.add_in_place(&CurvTensor::outer(&a, &b).scale(c));
    }
    let lhs = m.h0_prime_tensor(&m.kinematic_delta00()?.sub(&ll))?;
    let rhs = d1_d1_kchi(m)?;
    Ok((lhs, rhs))
}

/// −(D₁⊗D₁)k(χ) at λ = 0.
pub fn d1_d1_kchi(m: &CurvModule) -> Result<ValTensor> {
    let f = m.flat();
    Ok(kinematic_chi(f)?
        .map_legs(f.dim(), f.lambda().clone(), |i| m.d1(&f.mu(i.k, i.q)?), |j| m.d1(&f.mu(j.k, j.q)?))?
        .scale(&LambdaScalar::int(-1)))
}

/// (glob⊗glob)∘K = k_λ∘glob, glob_λ∘s = s∘glob_λ, glob₀∘t = t∘glob₀, ker glob_λ.
pub(crate) fn globalization(n: u32, lambda: &Lambda, ck: &mut Checker) -> Result<()> {
    let m = CurvModule::finite(n);
    let alg = ValAlgebra::finite(n, lambda.clone());
    for (i, c) in curv_basis(&m) {
        let g = m.globalize(&c, &alg)?;
        let lhs = m.globalize_tensor(&m.local_kinematic(&c)?, &alg)?;
        ck.eq("(glob@glob)K = k glob", i, &lhs, &kinematic(&alg, &g)?);
        let lhs = m.globalize(&m.act_s(&c)?, &alg)?;
        let rhs = alg.s_multiply(&g)?;
        ck.check(alg.equal(&lhs, &rhs)?, "glob s = s glob", i, &lhs, &rhs);
        let lhs = m.glob0(&m.act_t(&c)?)?;
        let rhs = m.flat().t_multiply(&m.glob0(&c)?)?;
        ck.check(m.flat().equal(&lhs, &rhs)?, "glob0 t = t glob0", i, &lhs, &rhs);
    }
    let kernel = m.glob_kernel_basis(lambda)?;
    let n_count = delta_n_indices(m.dim()).iter().filter(|i| i.family == Family::N).count();
    ck.check(kernel.len() == n_count, "dim ker glob", format!("n={n}"), kernel.len(), n_count);
    for e in &kernel {
        let g = m.globalize(e, &alg)?;
        ck.check(g.is_zero(), "kernel basis globalizes to 0", e, &g, "0");
    }
    Ok(())
}

/// ℓ(p₁) + 𝔫(p₂) decomposition round trips and 𝔫⁻¹∘𝔫 = id before restriction.
pub(crate) fn free_module(n: u32, _lambda: &Lambda, ck: &mut Checker) -> Result<()> {
    let m = CurvModule::finite(n);
    for (i, c) in curv_basis(&m) {
        let (p1, p2) = m.free_decompose(&c)?;
        let back = m.recompose(&p1, &p2)?;
        ck.eq("recompose(decompose c) = c", i, &back, &c);
        let (q1, q2) = m.free_decompose(&back)?;
        ck.check(q1 == p1 && q2 == p2, "decompose(recompose p) = p", i, format!("{q1}; {q2}"), format!("{p1}; {p2}"));
        if i.family == Family::N {
            let p = m.nn_inverse_poly(&c)?;
            ck.eq("n(n^-1 c) = c", i, &m.nn_poly(&p)?, &c);
        }
    }
    let inf = CurvModule::new(Dim::Inf { cap: 2 * n });
    for p in monomials(2 * n - 1) {
        let back = inf.nn_inverse_poly(&inf.nn_poly(&p)?)?;
        ck.eq("n^-1 n p = p", &p, &back, &p);
    }
    Ok(())
}

/// 𝔫(g_{n−1}) = 𝔫(g_n) = 0 in Curv^{U(n)}.
pub(crate) fn kernel(n: u32, _lambda: &Lambda, ck: &mut Checker) -> Result<()> {
    let m = CurvModule::finite(n);
    let (a, b) = n_kernel_polys(n)?;
    let za = m.nn_poly(&tu_to_st(&a))?;
    ck.check(za.is_zero(), "n(g_(n-1)) = 0", format!("n={n}"), &za, "0");
    let zb = m.nn_poly(&tu_to_st(&b))?;
    ck.check(zb.is_zero(), "n(g_n) = 0", format!("n={n}"), &zb, "0");
    Ok(())
}
