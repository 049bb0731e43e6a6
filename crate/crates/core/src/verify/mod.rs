//! Verification suites, the conjecture check and the binomial identities.

pub mod conjecture;
pub mod identities;
mod suites;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::Lambda;

pub use conjecture::{check_dimension, conjecture_check, fbar, series_coeff, ConjectureRow};
pub use identities::{identity_check, Identity, IdentityReport};
pub use suites::{a1_identity, d1_d1_kchi};

/// Largest n accepted by `run_suite`.
pub const MAX_SUITE_N: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Coalgebra,
    Ftaig,
    Module,
    Angularity,
    LocalKinDerivation,
    Globalization,
    FreeModule,
    Kernel,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Coalgebra,
        Suite::Ftaig,
        Suite::Module,
        Suite::Angularity,
        Suite::LocalKinDerivation,
        Suite::Globalization,
        Suite::FreeModule,
        Suite::Kernel,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Coalgebra => "coalgebra",
            Suite::Ftaig => "ftaig",
            Suite::Module => "module",
            Suite::Angularity => "angularity",
            Suite::LocalKinDerivation => "local_kin_derivation",
            Suite::Globalization => "globalization",
            Suite::FreeModule => "free_module",
            Suite::Kernel => "kernel",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

/// λ values used when none are given.
pub fn default_lambdas() -> Vec<Lambda> {
    vec![Lambda::zero(), Lambda::value(1, 1), Lambda::value(-1, 1), Lambda::value(1, 3)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub n: u32,
    pub lambda: String,
    pub status: Status,
    pub witness: Option<Value>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn run_suite(suite: Suite, n: u32, lambda: &Lambda) -> Result<Report> {
    if n == 0 || n > MAX_SUITE_N {
        return Err(Error::Domain(format!("suite dimension n={n} outside 1..={MAX_SUITE_N}")));
    }
    let mut ck = suites::Checker::default();
    let run = match suite {
        Suite::Coalgebra => suites::coalgebra(n, lambda, &mut ck),
        Suite::Ftaig => suites::ftaig(n, lambda, &mut ck),
        Suite::Module => suites::module(n, lambda, &mut ck),
        Suite::Angularity => suites::angularity(n, lambda, &mut ck),
        Suite::LocalKinDerivation => suites::local_kin_derivation(n, lambda, &mut ck),
        Suite::Globalization => suites::globalization(n, lambda, &mut ck),
        Suite::FreeModule => suites::free_module(n, lambda, &mut ck),
        Suite::Kernel => suites::kernel(n, lambda, &mut ck),
    };
    if let Err(e) = run {
        if ck.witness.is_none() {
            ck.witness = Some(serde_json::json!({ "error": e.to_string() }));
        }
    }
    let witness = ck.witness.map(|mut w| {
        if let Value::Object(ref mut o) = w {
            o.insert("suite".into(), suite.name().into());
            o.insert("n".into(), n.into());
            o.insert("lambda".into(), lambda.to_string().into());
        }
        w
    });
    Ok(Report {
        suite: suite.name().into(),
        n,
        lambda: lambda.to_string(),
        status: if witness.is_none() { Status::Pass } else { Status::Fail },
        witness,
    })
}

/// Worker count from HERMINT_WORKERS, defaulting to rayon's choice.
pub fn workers() -> Option<usize> {
    std::env::var("HERMINT_WORKERS").ok().and_then(|v| v.parse().ok()).filter(|w| *w > 0)
}

/// Runs independent jobs in parallel; reports come back in job order.
pub fn run_suites(jobs: &[(Suite, u32, Lambda)]) -> Result<Vec<Report>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers() {
        builder = builder.num_threads(w);
    }
    let pool = builder.build().map_err(|e| Error::Domain(e.to_string()))?;
    pool.install(|| jobs.par_iter().map(|(s, n, l)| run_suite(*s, *n, l)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_in_small_dimension() {
        let mut jobs = vec![];
        for s in Suite::ALL {
            jobs.push((s, 2, Lambda::value(1, 1)));
        }
        jobs.push((Suite::Angularity, 2, Lambda::Formal));
        for r in run_suites(&jobs).unwrap() {
            assert!(r.passed(), "{:?}", r);
        }
    }

    #[test]
    fn report_round_trips_through_json() {
        let r = run_suite(Suite::Kernel, 3, &Lambda::zero()).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"suite\":\"kernel\""));
        assert_eq!(serde_json::from_str::<Report>(&s).unwrap(), r);
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(Suite::parse("nope").is_err());
        assert!(run_suite(Suite::Kernel, 9, &Lambda::zero()).is_err());
    }
}
