//! One line per acceptance criterion: verdict, elapsed time and time bound.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use hermint::curvature::{complex_kinematic, shifrin, shifrin_from_gamma};
use hermint::tube::{
    differentiate_all, global_tube, globalize_tube, kinematic_ball, local_tube, totally_real_residual, tube_eq,
};
use hermint::valuation::eval_on_cpm;
use hermint::verify::{self, a1_identity, d1_d1_kchi, identity_check, Identity, Suite};
use hermint::scalar::rat;
use hermint::{CurvElement, CurvIndex, CurvModule, Lambda, LambdaScalar, ValAlgebra, ValIndex};

type Check = Result<(), String>;

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn binom(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn hermint(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hermint")).args(args).output().expect("binary runs")
}

fn suites(suite: Suite, ns: impl IntoIterator<Item = u32>, lambdas: &[Lambda]) -> Check {
    let jobs: Vec<_> = ns.into_iter().flat_map(|n| lambdas.iter().map(move |l| (suite, n, l.clone()))).collect();
    for r in verify::run_suites(&jobs).map_err(|e| e.to_string())? {
        if !r.passed() {
            return Err(format!("{} n={} lambda={}: {}", r.suite, r.n, r.lambda, r.witness.unwrap_or_default()));
        }
    }
    Ok(())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- criteria -------------------------------------------------------------

fn c1_pkf_c3() -> Check {
    let out = hermint(&["kin-chi", "--n", "3", "--lambda", "0", "--format", "json"]);
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into())?;
    let doc = hermint::io::Document::from_json(std::str::from_utf8(&out.stdout).unwrap()).map_err(|e| e.to_string())?;
    let got = doc.into_val_tensor().map_err(|e| e.to_string())?;
    let mu = |k, q| ValIndex::new(k, q);
    let pi_inv = |n, d| LambdaScalar::monomial(rat(n, d), -1, 0);
    let plain = |n, d| LambdaScalar::monomial(rat(n, d), 0, 0);
    let table = [
        ((0, 0), (6, 3), plain(1, 1)),
        ((1, 0), (5, 2), pi_inv(16, 15)),
        ((2, 0), (4, 1), plain(5, 24)),
        ((2, 0), (4, 2), plain(1, 6)),
        ((2, 1), (4, 1), plain(1, 6)),
        ((2, 1), (4, 2), plain(1, 3)),
        ((3, 0), (3, 0), pi_inv(2, 3)),
        ((3, 0), (3, 1), pi_inv(4, 9)),
        ((3, 1), (3, 1), pi_inv(16, 27)),
    ];
    let mut count = 0;
    for ((a, b), (c, d), v) in table {
        for (l, r) in [(mu(a, b), mu(c, d)), (mu(c, d), mu(a, b))] {
            ensure(got.coeff(l, r) == v, || format!("{l}⊗{r}: {} != {v}", got.coeff(l, r)))?;
        }
        count += if (a, b) == (c, d) { 1 } else { 2 };
    }
    ensure(got.len() == count, || format!("{} terms, expected {count}", got.len()))
}

fn c2_templates() -> Check {
    for n in 1..=8u32 {
        let alg = ValAlgebra::finite(n, Lambda::Formal);
        let t = alg.t().map_err(|e| e.to_string())?;
        let s = alg.s().map_err(|e| e.to_string())?;
        for k in 0..=n {
            let t2k = alg.pow(&t, 2 * k).map_err(|e| e.to_string())?;
            let got = eval_on_cpm(&alg, &t2k, n).map_err(|e| e.to_string())?;
            let want = LambdaScalar::monomial(
                rat(binom(2 * k as u64, k as u64) * binom(n as u64 + 1, k as u64 + 1), 1),
                0,
                -(k as i32),
            );
            ensure(got == want, || format!("t^{}(CP^{n}) = {got}, want {want}", 2 * k))?;
            let sk = alg.pow(&s, k).map_err(|e| e.to_string())?;
            let got = eval_on_cpm(&alg, &sk, n).map_err(|e| e.to_string())?;
            let want = LambdaScalar::monomial(rat((n - k + 1) as i64, 1), 0, -(k as i32));
            ensure(got == want, || format!("s^{k}(CP^{n}) = {got}, want {want}"))?;
        }
    }
    Ok(())
}

fn c3_ftaig() -> Check {
    suites(Suite::Ftaig, 1..=4, &verify::default_lambdas())
}

fn c4_coalgebra_globalization() -> Check {
    suites(Suite::Coalgebra, 1..=3, &[Lambda::Formal])?;
    suites(Suite::Globalization, 1..=3, &[Lambda::Formal])
}

fn c5_module() -> Check {
    let pi_inv = |n, d| LambdaScalar::monomial(rat(n, d), -1, 0);
    for n in 3..=6 {
        let m = CurvModule::finite(n);
        let got = m.act_t(&m.n10()).map_err(|e| e.to_string())?;
        let want = CurvElement::from_terms(m.dim(), [(CurvIndex::n(2, 0), LambdaScalar::monomial(rat(3, 4), 0, 0))])
            .map_err(|e| e.to_string())?;
        ensure(got == want, || format!("n={n}: t N10 = {got}"))?;
        let n20 = m.basis_element(CurvIndex::n(2, 0)).map_err(|e| e.to_string())?;
        let got = m.act_t(&n20).map_err(|e| e.to_string())?;
        // N_{3,0} needs n > 3
        let mut terms = vec![(CurvIndex::n(3, 1), pi_inv(16, 15))];
        if n > 3 {
            terms.push((CurvIndex::n(3, 0), pi_inv(16, 5)));
        }
        let want = CurvElement::from_terms(m.dim(), terms).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("n={n}: t N20 = {got}"))?;
    }
    suites(Suite::Module, 1..=6, &[Lambda::Formal])
}

fn c6_angularity() -> Check {
    suites(Suite::Angularity, 1..=5, &[Lambda::Formal])
}

fn c7_free_module() -> Check {
    suites(Suite::FreeModule, 1..=5, &[Lambda::Formal])?;
    suites(Suite::Kernel, 1..=8, &[Lambda::Formal])
}

/// The identity exactly as stated: (H′₀⊗H′₀)K(Δ₀₀) = −(D₁⊗D₁)k(χ).
fn c8_literal() -> Check {
    for n in 1..=3 {
        let m = CurvModule::finite(n);
        let k = m.kinematic_delta00().map_err(|e| e.to_string())?;
        let lhs = m.h0_prime_tensor(k).map_err(|e| e.to_string())?;
        let rhs = d1_d1_kchi(&m).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("n={n}: lhs = {lhs}, rhs = {rhs}"))?;
    }
    Ok(())
}

/// (H′₀⊗H′₀)∘K = 0, the same identity for A₁ = K(Δ₀₀) − (ℓ⊗ℓ)k(χ), and 𝔫(ρ_kr) = Σ∘D₁π_kr.
fn c8_corrected() -> Check {
    for n in 1..=3 {
        let m = CurvModule::finite(n);
        let (lhs, rhs) = a1_identity(&m).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("n={n}: A1 identity {lhs} != {rhs}"))?;
    }
    suites(Suite::LocalKinDerivation, 1..=3, &[Lambda::Formal])
}

fn c9_tubes() -> Check {
    let lambdas = [Lambda::Formal, Lambda::zero(), Lambda::value(1, 1), Lambda::value(-1, 1)];
    for n in 1..=4 {
        for l in &lambdas {
            let alg = ValAlgebra::finite(n, l.clone());
            let ball = kinematic_ball(&alg).map_err(|e| e.to_string())?;
            let global = global_tube(&alg).map_err(|e| e.to_string())?;
            ensure(tube_eq(&ball, &global), || format!("k(chi)(., B_r) n={n} lambda={l}"))?;
            if n <= 3 {
                let m = CurvModule::finite(n);
                let local = local_tube(&m, l).map_err(|e| e.to_string())?;
                let g = globalize_tube(&m, &local, &alg).map_err(|e| e.to_string())?;
                ensure(tube_eq(&differentiate_all(&g), &differentiate_all(&global)), || {
                    format!("d/dr glob(T_r) n={n} lambda={l}")
                })?;
            }
        }
    }
    for n in 1..=5 {
        let alg = ValAlgebra::finite(n, Lambda::Formal);
        for k in 0..=n {
            let r = totally_real_residual(&alg, k).map_err(|e| e.to_string())?;
            ensure(r.is_zero(), || format!("totally real n={n} k={k}: {r}"))?;
        }
    }
    Ok(())
}

fn c10_complex() -> Check {
    for n in 1..=4 {
        let m = CurvModule::finite(n);
        for q in 0..=n {
            let from_local = m.complex_kinematic_from_local(q).map_err(|e| e.to_string())?;
            ensure(from_local == complex_kinematic(n, q), || format!("K_C(Gamma) n={n} q={q}"))?;
        }
    }
    for lam in [LambdaScalar::lambda(), LambdaScalar::zero(), LambdaScalar::int(1)] {
        for n in 0..=8 {
            for q in 0..=n {
                ensure(shifrin_from_gamma(n, q, &lam) == shifrin(n, q, &lam), || format!("Shifrin n={n} q={q} {lam}"))?;
            }
        }
    }
    let r = identity_check(Identity::Shifrin, 8);
    ensure(r.passed(), || format!("{:?}", r.witness))
}

fn c11_conjecture() -> Check {
    let out = hermint(&["conjecture", "--n-max", "20"]);
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stdout).into())
}

fn c12_euler_characteristic() -> Check {
    for n in 1..=8 {
        for l in [Lambda::Formal, Lambda::value(1, 1), Lambda::value(1, 3)] {
            let alg = ValAlgebra::finite(n, l.clone());
            for m in 0..=n {
                let got = eval_on_cpm(&alg, &alg.chi(), m).map_err(|e| e.to_string())?;
                ensure(got == LambdaScalar::int(m as i64 + 1), || format!("chi(CP^{m}) in n={n} {l}: {got}"))?;
            }
        }
    }
    Ok(())
}

struct Row {
    id: &'static str,
    what: &'static str,
    bound: Duration,
    result: Check,
    elapsed: Duration,
}

fn run(id: &'static str, what: &'static str, bound: Duration, f: fn() -> Check) -> Row {
    let t = Instant::now();
    let result = f();
    Row { id, what, bound, result, elapsed: t.elapsed() }
}

#[test]
fn acceptance() {
    let rows = [
        run("1", "kin-chi --n 3 --lambda 0 reproduces the C^3 table", secs(1), c1_pkf_c3),
        run("2", "templates t^2k, s^k on CP^n_lambda, k <= n <= 8", secs(10), c2_templates),
        run("3", "(pd@pd)k = m*pd, n <= 4, lambda in {0, 1, -1, 1/3}", secs(60), c3_ftaig),
        run("4", "K cocommutative, coassociative, glob intertwines, n <= 3", secs(120), c4_coalgebra_globalization),
        run("5", "t N10, t N20, s on span{B}, [s,t] = 0, n <= 6", secs(30), c5_module),
        run("6", "t_lambda Delta_kq has no N-part, n <= 5", secs(120), c6_angularity),
        run("7", "free-module round trip, n^-1 n = id, n(g_n-1) = n(g_n) = 0", secs(60), c7_free_module),
        run("8", "(H0'@H0')K(Delta00) = -(D1@D1)k(chi) as stated", secs(120), c8_literal),
        run("8a", "(H0'@H0')K = 0, A1 identity, n(rho_kr) = Sigma D1 pi_kr", secs(120), c8_corrected),
        run("9", "ball kinematic = global tube, local tube, totally real", secs(120), c9_tubes),
        run("10", "Shifrin formula from K_C(Gamma), binomial identity <= 8", secs(30), c10_complex),
        run("11", "conjecture --n-max 20", secs(600), c11_conjecture),
        run("12", "chi(CP^n_lambda) = n+1 through the full pipeline, n <= 8", secs(10), c12_euler_characteristic),
    ];
    // Written to the stdout handle directly so the table shows without --nocapture.
    let mut out = std::io::stdout().lock();
    let mut unexpected = vec![];
    for r in &rows {
        let in_time = r.elapsed <= r.bound;
        let ok = r.result.is_ok() && in_time;
        let _ = writeln!(
            out,
            "criterion {:<3} {}  {:>8.3}s / {:>4}s  {}",
            r.id,
            if ok { "PASS" } else { "FAIL" },
            r.elapsed.as_secs_f64(),
            r.bound.as_secs(),
            r.what
        );
        match &r.result {
            Err(e) => {
                let _ = writeln!(out, "              {}", e.chars().take(300).collect::<String>());
            }
            Ok(()) if !in_time => {
                let _ = writeln!(out, "              over the time bound");
            }
            Ok(()) => {}
        }
        // The literal statement of criterion 8 is false; see the decisions ledger.
        // Its failure is expected, and 8a carries the provable content.
        let expected = r.id != "8";
        if ok != expected {
            unexpected.push(r.id);
        }
    }
    assert!(unexpected.is_empty(), "unexpected verdicts for criteria {unexpected:?}");
}
