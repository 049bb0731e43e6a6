use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use hermint::curvature::{complex_kinematic, shifrin};
use hermint::io::{csv, latex, term, Document, Symbol};
use hermint::tube;
use hermint::valuation::{eval_on_ball, eval_on_cpm, kinematic, kinematic_chi};
use hermint::verify::{self, Identity, Suite};
use hermint::{
    CurvBasis, CurvElement, CurvModule, CurvTensor, Dim, Lambda, LambdaScalar, SemiLocalTensor, TrigPoly,
    ValAlgebra, ValBasis, ValElement, ValTensor,
};

#[derive(Parser)]
#[command(name = "hermint", version, about = "Exact integral geometry of complex space forms")]
struct Cli {
    /// Complex dimension, or `inf:CAP` for the stable range truncated at weight CAP.
    #[arg(long, global = true, default_value = "2", value_parser = parse_dim)]
    n: Dim,
    /// Curvature: `formal` or a rational `p/q`.
    #[arg(long, global = true, default_value = "formal", allow_hyphen_values = true, value_parser = parse_lambda)]
    lambda: Lambda,
    /// Output basis: mu, tau, st (valuations) or delta-n, b-gamma (curvature measures).
    #[arg(long, global = true)]
    basis: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Add a floating point column (csv) or approximation (text).
    #[arg(long, global = true)]
    numeric: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum TubeKind {
    Global,
    Local,
    Complex,
    Cpm,
    TotallyReal,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rewrite a valuation or curvature measure in another basis.
    Convert { expr: String },
    /// Product of two valuations.
    Mult { a: String, b: String },
    /// Principal kinematic formula k(χ).
    KinChi,
    /// Global kinematic operator applied to a valuation.
    Kin { expr: String },
    /// Local kinematic operator applied to a curvature measure.
    LocalKin { expr: String },
    /// (id ⊗ glob) applied to the local kinematic formula.
    SemiLocal { expr: String },
    /// Module action on a curvature measure.
    Act {
        /// s, t, u, t-lambda, or a valuation expression acting through the curved module structure.
        #[arg(long)]
        op: String,
        #[arg(long)]
        target: String,
    },
    /// Globalization of a curvature measure.
    Glob { expr: String },
    /// Free-module coordinates (p1, p2) with Φ = ℓ(p1) + 𝔫(p2).
    Decompose { expr: String },
    /// Tube formulas.
    Tube {
        #[arg(value_enum)]
        kind: TubeKind,
        /// Dimension of the projective subspace for `cpm`.
        #[arg(long, default_value_t = 0)]
        m: u32,
    },
    /// Complex kinematic formula for Γ_{2q,q}, or for Ch_q with `--basis chern`.
    ComplexKin {
        #[arg(long, default_value_t = 0)]
        q: u32,
    },
    /// Evaluate a valuation on CP^m (`cpm:M`) or on a geodesic ball (`ball`).
    Eval {
        expr: String,
        #[arg(long, default_value = "ball")]
        on: String,
    },
    /// Run verification suites or identity checks.
    Verify {
        /// Suite names or `all`.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        /// Run every dimension 1..=N-MAX instead of the single `--n`.
        #[arg(long)]
        n_max: Option<u32>,
        /// λ values; defaults to 0, 1, -1, 1/3.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_lambda)]
        lambdas: Vec<Lambda>,
        /// Identity checks by name (or `all`) instead of suites.
        #[arg(long, value_delimiter = ',')]
        identity: Vec<String>,
        #[arg(long, default_value_t = 8)]
        bound: i64,
        /// TOML file listing sweeps.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Check the vanishing of all template pairings of f̄_{n+1}.
    Conjecture {
        #[arg(long, default_value_t = 20)]
        n_max: u32,
        /// Truncate the λ-series after this many terms.
        #[arg(long)]
        lambda_terms: Option<u32>,
    },
}

fn parse_dim(s: &str) -> std::result::Result<Dim, String> {
    if let Some(cap) = s.strip_prefix("inf:") {
        return cap.parse().map(|cap| Dim::Inf { cap }).map_err(|e| format!("bad cap: {e}"));
    }
    s.parse().map(Dim::Finite).map_err(|e| format!("bad dimension: {e}"))
}

fn parse_lambda(s: &str) -> std::result::Result<Lambda, String> {
    Lambda::parse(s).ok_or_else(|| format!("expected `formal` or p/q, got `{s}`"))
}

enum Out {
    Val(ValElement),
    Curv(CurvElement),
    ValT(ValTensor, &'static str),
    CurvT(Dim, CurvTensor),
    Semi(Dim, Lambda, SemiLocalTensor),
    Scalar(LambdaScalar),
    Trig(TrigPoly),
    Pair(ValElement, ValElement),
}

struct Ctx {
    dim: Dim,
    lambda: Lambda,
    basis: Option<String>,
    format: Format,
    numeric: bool,
}

impl Ctx {
    fn alg(&self) -> ValAlgebra {
        ValAlgebra::new(self.dim, self.lambda.clone())
    }

    fn module(&self) -> CurvModule {
        CurvModule::new(self.dim)
    }

    fn val(&self, s: &str) -> Result<ValElement> {
        Ok(term::parse_valuation(s, self.dim, &self.lambda)?)
    }

    fn curv(&self, s: &str) -> Result<CurvElement> {
        Ok(term::parse_curvature(s, self.dim, &self.lambda)?)
    }

    fn lambda_value(&self) -> f64 {
        self.lambda.to_f64().unwrap_or(1.0)
    }

    fn val_out(&self, alg: &ValAlgebra, v: ValElement) -> Result<Out> {
        let b = match self.basis.as_deref() {
            None => ValBasis::Mu,
            Some(b) => val_basis(b)?,
        };
        Ok(Out::Val(alg.convert(&v, b)?))
    }

    fn curv_out(&self, m: &CurvModule, c: CurvElement) -> Result<Out> {
        Ok(match self.basis.as_deref() {
            None => Out::Curv(c),
            Some(b) => Out::Curv(m.convert(&c, curv_basis(b)?)?),
        })
    }
}

fn val_basis(s: &str) -> Result<ValBasis> {
    match s {
        "mu" => Ok(ValBasis::Mu),
        "tau" => Ok(ValBasis::Tau),
        "st" => Ok(ValBasis::St),
        _ => bail!("unknown valuation basis `{s}` (mu, tau, st)"),
    }
}

fn curv_basis(s: &str) -> Result<CurvBasis> {
    match s {
        "delta-n" | "delta_n" => Ok(CurvBasis::DeltaN),
        "b-gamma" | "b_gamma" => Ok(CurvBasis::BGamma),
        _ => bail!("unknown curvature basis `{s}` (delta-n, b-gamma)"),
    }
}

fn is_curvature(s: &str) -> Result<bool> {
    Ok(term::parse_terms(s)?.iter().any(|t| matches!(t.symbol, Symbol::Curv(_))))
}

fn render(ctx: &Ctx, out: &Out) -> Result<String> {
    let lv = ctx.lambda_value();
    let s = match (ctx.format, out) {
        (Format::Text, Out::Scalar(c)) if ctx.numeric => format!("{c}\t{:.15e}\n", c.to_f64(lv)),
        (Format::Text, o) => format!("{}\n", text(o)),
        (Format::Json, Out::Val(v)) => Document::valuation(v).to_json(),
        (Format::Json, Out::Curv(c)) => Document::curvature(c).to_json(),
        (Format::Json, Out::ValT(t, _)) => Document::val_tensor(t).to_json(),
        (Format::Json, Out::CurvT(n, t)) => Document::curv_tensor(*n, t).to_json(),
        (Format::Json, Out::Semi(n, l, t)) => Document::semi_local(*n, l, t).to_json(),
        (Format::Json, Out::Scalar(c)) => Document::Scalar { value: c.clone() }.to_json(),
        (Format::Json, Out::Trig(p)) => Document::from(p).to_json(),
        (Format::Json, Out::Pair(a, b)) => {
            serde_json::to_string_pretty(&[Document::valuation(a), Document::valuation(b)])?
        }
        (Format::Latex, Out::Val(v)) => latex::valuation("\\phi", v),
        (Format::Latex, Out::Curv(c)) => latex::curvature("\\Phi", c),
        (Format::Latex, Out::ValT(t, name)) => latex::val_tensor(name, t),
        (Format::Latex, Out::CurvT(_, t)) => latex::curv_tensor("K(\\Phi)", t),
        (Format::Latex, Out::Semi(_, _, t)) => latex::semi_local("(\\mathrm{id} \\otimes \\mathrm{glob})K(\\Phi)", t),
        (Format::Latex, Out::Pair(a, b)) => latex::valuation("p_1", a) + &latex::valuation("p_2", b),
        (Format::Csv, Out::Val(v)) => csv::coefficient_csv(
            v.terms().map(|((a, b), c)| (format!("{:?}[{a},{b}]", v.basis()).to_lowercase(), c.clone())),
            ctx.numeric,
            &ctx.lambda,
            lv,
        ),
        (Format::Csv, Out::Curv(c)) => {
            csv::coefficient_csv(c.terms().map(|(i, c)| (i.to_string(), c.clone())), ctx.numeric, &ctx.lambda, lv)
        }
        (Format::Csv, Out::ValT(t, _)) => csv::coefficient_csv(
            t.terms().map(|((a, b), c)| (format!("{a}⊗{b}"), c.clone())),
            ctx.numeric,
            &ctx.lambda,
            lv,
        ),
        (Format::Csv, Out::CurvT(_, t)) => csv::coefficient_csv(
            t.terms().map(|((a, b), c)| (format!("{a}⊗{b}"), c.clone())),
            ctx.numeric,
            &ctx.lambda,
            lv,
        ),
        (Format::Csv, Out::Semi(_, _, t)) => csv::coefficient_csv(
            t.terms().map(|((a, b), c)| (format!("{a}⊗{b}"), c.clone())),
            ctx.numeric,
            &ctx.lambda,
            lv,
        ),
        (Format::Csv, Out::Scalar(c)) => {
            csv::coefficient_csv([("value".to_string(), c.clone())], ctx.numeric, &ctx.lambda, lv)
        }
        (Format::Csv, Out::Trig(p)) => {
            let m: BTreeMap<&str, TrigPoly> = [("value", p.clone())].into();
            csv::tube_csv(&m, ctx.numeric, lv)
        }
        (f, _) => bail!("{} output is not available for this object", format_name(f)),
    };
    Ok(s)
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Text => "text",
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Latex => "latex",
    }
}

fn text(o: &Out) -> String {
    match o {
        Out::Val(v) => v.to_string(),
        Out::Curv(c) => c.to_string(),
        Out::ValT(t, _) => t.to_string(),
        Out::CurvT(_, t) => t.to_string(),
        Out::Semi(_, _, t) => t.to_string(),
        Out::Scalar(c) => c.to_string(),
        Out::Trig(p) => p.to_string(),
        Out::Pair(a, b) => format!("p1 = {a}\np2 = {b}"),
    }
}

fn tube_output(ctx: &Ctx, kind: TubeKind, m_sub: u32) -> Result<String> {
    let n = ctx.dim.finite().ok_or_else(|| anyhow!("tube formulas need a finite --n"))?;
    let alg = ctx.alg();
    let lv = ctx.lambda_value();
    let l = &ctx.lambda;
    macro_rules! emit {
        ($map:expr, $wrap:expr) => {
            match ctx.format {
                Format::Json => Document::tube(&$map, n, l, $wrap).to_json(),
                Format::Csv => csv::tube_csv(&$map, ctx.numeric, lv),
                Format::Text => $map.iter().map(|(k, p)| format!("{k}: {p}\n")).collect(),
                Format::Latex => bail!("latex output is not available for tube formulas"),
            }
        };
    }
    Ok(match kind {
        TubeKind::Global => {
            emit!(tube::global_tube(&alg)?, |n, lambda, entries| Document::ValTube { n, lambda, entries })
        }
        TubeKind::Local => {
            emit!(tube::local_tube(&ctx.module(), l)?, |n, lambda, entries| Document::CurvTube {
                n,
                lambda,
                entries
            })
        }
        TubeKind::Complex => {
            emit!(tube::complex_tube(&alg)?, |n, lambda, entries| Document::ChernTube { n, lambda, entries })
        }
        TubeKind::Cpm => render(ctx, &Out::Trig(tube::cpm_tube(&alg, m_sub)?))?,
        TubeKind::TotallyReal => {
            let lam = l.scalar();
            let rows: Vec<_> = (0..=n)
                .map(|k| -> Result<_> {
                    let series = tube::totally_real_series(k, &lam, 2 * n);
                    let residual = tube::totally_real_residual(&alg, k)?;
                    Ok((k, series.to_string(), residual.to_string()))
                })
                .collect::<Result<_>>()?;
            match ctx.format {
                Format::Json => serde_json::to_string_pretty(
                    &rows.iter().map(|(k, s, r)| json!({"k": k, "series": s, "residual": r})).collect::<Vec<_>>(),
                )?,
                Format::Csv => {
                    let mut s = String::from("k,series,residual\n");
                    for (k, a, r) in &rows {
                        s.push_str(&format!("{k},\"{a}\",\"{r}\"\n"));
                    }
                    s
                }
                Format::Text => rows.iter().map(|(k, s, r)| format!("mu_{k}: {s}   residual {r}\n")).collect(),
                Format::Latex => bail!("latex output is not available for tube formulas"),
            }
        }
    })
}

fn complex_kin(ctx: &Ctx, q: u32) -> Result<String> {
    let n = ctx.dim.finite().ok_or_else(|| anyhow!("complex kinematics need a finite --n"))?;
    if q > n {
        bail!("q = {q} exceeds n = {n}");
    }
    if ctx.basis.as_deref() != Some("chern") {
        return render(ctx, &Out::CurvT(ctx.dim, complex_kinematic(n, q)));
    }
    let t = shifrin(n, q, &ctx.lambda.scalar());
    Ok(match ctx.format {
        Format::Json => serde_json::to_string_pretty(
            &t.iter().map(|((a, b), c)| json!({"left": a, "right": b, "coeff": c})).collect::<Vec<_>>(),
        )?,
        Format::Csv => csv::coefficient_csv(
            t.iter().map(|((a, b), c)| (format!("Ch[{a}]⊗Ch[{b}]"), c.clone())),
            ctx.numeric,
            &ctx.lambda,
            ctx.lambda_value(),
        ),
        Format::Text => t.iter().map(|((a, b), c)| format!("({c})*Ch[{a}]⊗Ch[{b}]\n")).collect(),
        Format::Latex => bail!("latex output is not available in Chern coordinates"),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    #[serde(default)]
    sweep: Vec<Sweep>,
    #[serde(default)]
    identity: Vec<IdentitySweep>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Sweep {
    suite: Vec<String>,
    n: Vec<u32>,
    #[serde(default)]
    lambda: Vec<Lambda>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IdentitySweep {
    name: String,
    bound: i64,
}

fn suites(names: &[String]) -> Result<Vec<Suite>> {
    if names.is_empty() || names.iter().any(|s| s == "all") {
        return Ok(Suite::ALL.to_vec());
    }
    Ok(names.iter().map(|s| Suite::parse(s)).collect::<hermint::Result<_>>()?)
}

fn identities(names: &[String]) -> Result<Vec<Identity>> {
    if names.iter().any(|s| s == "all") {
        return Ok(Identity::ALL.to_vec());
    }
    names
        .iter()
        .map(|s| Identity::parse(s).ok_or_else(|| anyhow!("unknown identity `{s}`")))
        .collect()
}

fn check_n(n: u32) -> Result<u32> {
    if n == 0 || n > verify::MAX_SUITE_N {
        bail!("suite dimension {n} outside 1..={}", verify::MAX_SUITE_N);
    }
    Ok(n)
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    ctx: &Ctx,
    suite: &[String],
    n_max: Option<u32>,
    lambdas: &[Lambda],
    identity: &[String],
    bound: i64,
    config: Option<&PathBuf>,
) -> Result<(String, bool)> {
    let mut jobs = vec![];
    let mut ids = vec![];
    if let Some(path) = config {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cfg: Config = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        for sw in &cfg.sweep {
            let ls = if sw.lambda.is_empty() { verify::default_lambdas() } else { sw.lambda.clone() };
            for s in suites(&sw.suite)? {
                for &n in &sw.n {
                    for l in &ls {
                        jobs.push((s, check_n(n)?, l.clone()));
                    }
                }
            }
        }
        for i in &cfg.identity {
            for which in identities(std::slice::from_ref(&i.name))? {
                ids.push((which, i.bound));
            }
        }
    } else if !identity.is_empty() {
        ids = identities(identity)?.into_iter().map(|w| (w, bound)).collect();
    } else {
        let ns: Vec<u32> = match n_max {
            Some(m) => (1..=m).collect(),
            None => vec![ctx.dim.finite().ok_or_else(|| anyhow!("suites need a finite --n"))?],
        };
        let ls = if lambdas.is_empty() { verify::default_lambdas() } else { lambdas.to_vec() };
        for s in suites(suite)? {
            for &n in &ns {
                for l in &ls {
                    jobs.push((s, check_n(n)?, l.clone()));
                }
            }
        }
    }
    let reports = verify::run_suites(&jobs)?;
    let id_reports: Vec<_> = ids.iter().map(|(w, b)| verify::identity_check(*w, *b)).collect();
    let ok = reports.iter().all(|r| r.passed()) && id_reports.iter().all(|r| r.passed());
    let out = match ctx.format {
        Format::Json => {
            let mut v: Vec<serde_json::Value> = vec![];
            for r in &reports {
                v.push(serde_json::to_value(r)?);
            }
            for r in &id_reports {
                v.push(serde_json::to_value(r)?);
            }
            serde_json::to_string_pretty(&v)?
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let tag = if r.passed() { "PASS" } else { "FAIL" };
                s.push_str(&format!("{tag} {} n={} lambda={}\n", r.suite, r.n, r.lambda));
                if let Some(w) = &r.witness {
                    s.push_str(&format!("  witness: {w}\n"));
                }
            }
            for r in &id_reports {
                let tag = if r.passed() { "PASS" } else { "FAIL" };
                s.push_str(&format!("{tag} {} bound={} cases={}\n", r.identity, r.bound, r.cases));
                if let Some((at, l, rr)) = &r.witness {
                    s.push_str(&format!("  witness: at {at:?}: {l} != {rr}\n"));
                }
            }
            s
        }
        f => bail!("{} output is not available for verify", format_name(f)),
    };
    Ok((out, ok))
}

fn run_conjecture(ctx: &Ctx, n_max: u32, lambda_terms: Option<u32>) -> Result<(String, bool)> {
    if n_max < 2 {
        bail!("--n-max must be at least 2");
    }
    let rows = verify::conjecture_check(n_max, lambda_terms);
    let ok = rows.iter().all(|r| r.passed());
    let out = match ctx.format {
        Format::Json => serde_json::to_string_pretty(&rows)?,
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                let tag = if r.passed() { "ok" } else { "FAILED" };
                s.push_str(&format!(
                    "n={:<3} terms={:<6} pairings={:<5} {tag} ({} ms)\n",
                    r.n, r.terms, r.pairings, r.millis
                ));
                for (j, k, v) in r.failures.iter().take(5) {
                    s.push_str(&format!("  (f s^{j} t^{k})(CP^{}) = {v}\n", r.n));
                }
            }
            s
        }
        f => bail!("{} output is not available for conjecture", format_name(f)),
    };
    Ok((out, ok))
}

fn act(ctx: &Ctx, op: &str, target: &str) -> Result<Out> {
    let m = ctx.module();
    let c = ctx.curv(target)?;
    let r = match op {
        "s" => m.act_s(&c)?,
        "t" => m.act_t(&c)?,
        "u" => m.act_u(&c)?,
        "t-lambda" | "t_lambda" => m.act_t_lambda(&c, &ctx.lambda.scalar())?,
        expr => m.act_val_lambda(&ctx.val(expr)?, &c, &ctx.alg())?,
    };
    ctx.curv_out(&m, r)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let ctx = Ctx { dim: cli.n, lambda: cli.lambda, basis: cli.basis, format: cli.format, numeric: cli.numeric };
    let out = match &cli.cmd {
        Cmd::Convert { expr } => {
            if is_curvature(expr)? {
                let m = ctx.module();
                let c = ctx.curv(expr)?;
                let b = curv_basis(ctx.basis.as_deref().unwrap_or("delta-n"))?;
                Out::Curv(m.convert(&c, b)?)
            } else {
                let alg = ctx.alg();
                let v = ctx.val(expr)?;
                ctx.val_out(&alg, v)?
            }
        }
        Cmd::Mult { a, b } => {
            let alg = ctx.alg();
            let p = alg.multiply(&ctx.val(a)?, &ctx.val(b)?)?;
            ctx.val_out(&alg, p)?
        }
        Cmd::KinChi => Out::ValT(kinematic_chi(&ctx.alg())?.clone(), "k(\\chi)"),
        Cmd::Kin { expr } => {
            let alg = ctx.alg();
            Out::ValT(kinematic(&alg, &ctx.val(expr)?)?, "k(\\phi)")
        }
        Cmd::LocalKin { expr } => Out::CurvT(ctx.dim, ctx.module().local_kinematic(&ctx.curv(expr)?)?),
        Cmd::SemiLocal { expr } => {
            let t = ctx.module().semi_local(&ctx.curv(expr)?, &ctx.alg())?;
            Out::Semi(ctx.dim, ctx.lambda.clone(), t)
        }
        Cmd::Act { op, target } => act(&ctx, op, target)?,
        Cmd::Glob { expr } => {
            let alg = ctx.alg();
            let v = ctx.module().globalize(&ctx.curv(expr)?, &alg)?;
            ctx.val_out(&alg, v)?
        }
        Cmd::Decompose { expr } => {
            let (a, b) = ctx.module().free_decompose(&ctx.curv(expr)?)?;
            Out::Pair(a, b)
        }
        Cmd::Tube { kind, m } => {
            emit(&tube_output(&ctx, *kind, *m)?);
            return Ok(ExitCode::SUCCESS);
        }
        Cmd::ComplexKin { q } => {
            emit(&complex_kin(&ctx, *q)?);
            return Ok(ExitCode::SUCCESS);
        }
        Cmd::Eval { expr, on } => {
            let alg = ctx.alg();
            let v = ctx.val(expr)?;
            if on == "ball" {
                Out::Trig(eval_on_ball(&alg, &v)?)
            } else if let Some(m) = on.strip_prefix("cpm:") {
                let m: u32 = m.parse().with_context(|| format!("bad subspace dimension `{m}`"))?;
                Out::Scalar(eval_on_cpm(&alg, &v, m)?)
            } else {
                bail!("--on expects `ball` or `cpm:M`");
            }
        }
        Cmd::Verify { suite, n_max, lambdas, identity, bound, config } => {
            let (s, ok) = run_verify(&ctx, suite, *n_max, lambdas, identity, *bound, config.as_ref())?;
            emit(&s);
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Cmd::Conjecture { n_max, lambda_terms } => {
            let (s, ok) = run_conjecture(&ctx, *n_max, *lambda_terms)?;
            emit(&s);
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    };
    emit(&render(&ctx, &out)?);
    Ok(ExitCode::SUCCESS)
}

// A closed pipe (e.g. `| head`) is not an error worth a panic.
fn emit(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
