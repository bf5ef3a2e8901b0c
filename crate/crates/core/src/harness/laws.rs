use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::{trial_seed, Inst, Rng};
use crate::error::{Error, Result};

/// Outcome of one law on one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Verdict {
    Pass,
    /// The hypotheses do not hold; nothing was tested.
    Vacuous,
    Fail(String),
}

pub(crate) use Verdict::{Fail, Pass, Vacuous};

/// `Fail(msg)` unless `cond`.
pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Verdict {
    if cond {
        Pass
    } else {
        Fail(msg())
    }
}

/// Run the checks in order and keep the first non-pass.
pub(crate) fn all(checks: impl IntoIterator<Item = Verdict>) -> Verdict {
    for v in checks {
        if v != Pass {
            return v;
        }
    }
    Pass
}

/// Unwrap a construction or return `Vacuous` from the enclosing check.
macro_rules! hyp {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(_) => return $crate::harness::laws::Verdict::Vacuous,
        }
    };
}

/// Unwrap a construction whose failure is itself a violation.
macro_rules! must {
    ($e:expr, $what:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return $crate::harness::laws::Verdict::Fail(format!("{}: {}", $what, err)),
        }
    };
}

pub(crate) use {hyp, must};

pub(crate) trait Law: Sync {
    type Case: Clone;
    fn id(&self) -> &'static str;
    fn generate(&self, rng: &mut Rng) -> Self::Case;
    fn check(&self, case: &Self::Case) -> Verdict;
    fn shrink(&self, case: &Self::Case) -> Vec<Self::Case>;
    fn describe(&self, case: &Self::Case) -> Value;
}

/// A law over an [`Inst`], shrunk by deleting points.
pub(crate) struct InstLaw {
    pub id: &'static str,
    pub gen: fn(&mut Rng) -> Inst,
    pub check: fn(&Inst) -> Verdict,
}

impl Law for InstLaw {
    type Case = Inst;

    fn id(&self) -> &'static str {
        self.id
    }

    fn generate(&self, rng: &mut Rng) -> Inst {
        (self.gen)(rng)
    }

    fn check(&self, case: &Inst) -> Verdict {
        (self.check)(case)
    }

    fn shrink(&self, case: &Inst) -> Vec<Inst> {
        case.shrink_candidates()
    }

    fn describe(&self, case: &Inst) -> Value {
        case.to_json()
    }
}

pub(crate) fn boxed(laws: Vec<InstLaw>) -> Vec<Box<dyn AnyLaw>> {
    laws.into_iter().map(|l| Box::new(l) as Box<dyn AnyLaw>).collect()
}

/// Object-safe face of [`Law`].
pub(crate) trait AnyLaw: Sync {
    fn id(&self) -> &'static str;
    fn verdict(&self, seed: u64) -> Verdict;
    fn minimize(&self, seed: u64) -> (String, Value, usize);
}

const SHRINK_LIMIT: usize = 500;

fn guarded<T>(f: impl FnOnce() -> T) -> std::result::Result<T, String> {
    catch_unwind(AssertUnwindSafe(f)).map_err(|e| {
        e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into())
    })
}

fn judged<L: Law>(law: &L, case: &L::Case) -> Verdict {
    guarded(|| law.check(case)).unwrap_or_else(|p| Fail(format!("panicked: {p}")))
}

impl<L: Law> AnyLaw for L {
    fn id(&self) -> &'static str {
        Law::id(self)
    }

    fn verdict(&self, seed: u64) -> Verdict {
        match guarded(|| self.generate(&mut Rng::new(seed))) {
            Ok(case) => judged(self, &case),
            Err(p) => Fail(format!("generator panicked: {p}")),
        }
    }

    /// Greedy shrinking: move to the first candidate that still fails.
    fn minimize(&self, seed: u64) -> (String, Value, usize) {
        let mut case = match guarded(|| self.generate(&mut Rng::new(seed))) {
            Ok(c) => c,
            Err(p) => return (format!("generator panicked: {p}"), Value::Null, 0),
        };
        let mut msg = match judged(self, &case) {
            Fail(m) => m,
            other => return (format!("not reproducible: {other:?}"), self.describe(&case), 0),
        };
        let mut steps = 0;
        'outer: while steps < SHRINK_LIMIT {
            for cand in guarded(|| self.shrink(&case)).unwrap_or_default() {
                if let Fail(m) = judged(self, &cand) {
                    case = cand;
                    msg = m;
                    steps += 1;
                    continue 'outer;
                }
            }
            break;
        }
        (msg, self.describe(&case), steps)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub law: String,
    /// Replays the failing case: the trial's generator seed.
    pub seed: u64,
    pub case_index: u64,
    pub message: String,
    pub counterexample: Value,
    pub shrink_steps: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawSummary {
    pub law: String,
    pub trials: u64,
    pub vacuous: u64,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub laws: Vec<LawSummary>,
    pub failures: Vec<Failure>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn law(&self, id: &str) -> Option<&LawSummary> {
        self.laws.iter().find(|l| l.law == id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; 1 runs every trial on the calling thread.
    pub jobs: usize,
    /// Failures shrunk and reported per law; the rest are only counted.
    pub max_failures_per_law: usize,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions { jobs: 1, max_failures_per_law: 3 }
    }
}

pub const SUITES: [&str; 6] = ["glueing", "transport", "limits", "ends", "coarse", "all"];

fn suite_laws(suite: &str) -> Result<Vec<Box<dyn AnyLaw>>> {
    let laws = match suite {
        "glueing" => super::topology_laws::glueing(),
        "transport" => super::topology_laws::transport(),
        "limits" => super::limit_laws::laws(),
        "ends" => super::ends_laws::laws(),
        "coarse" => super::coarse_laws::laws(),
        "all" => {
            let mut v = Vec::new();
            for s in &SUITES[..5] {
                v.extend(suite_laws(s)?);
            }
            v
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(laws)
}

/// Law ids of a suite, in execution order.
pub fn suite_law_ids(suite: &str) -> Result<Vec<&'static str>> {
    Ok(suite_laws(suite)?.iter().map(|l| l.id()).collect())
}

pub fn run_laws(suite: &str, trials: u64, seed: u64) -> Result<LawReport> {
    run_laws_with(suite, trials, seed, RunOptions::default())
}

/// Run `trials` cases of every law of `suite`. Law `k` draws trial `i` from
/// `trial_seed(seed ^ hash(law id), i)`, so adding a law never perturbs the
/// others.
pub fn run_laws_with(suite: &str, trials: u64, seed: u64, opts: RunOptions) -> Result<LawReport> {
    run(suite, suite_laws(suite)?, trials, seed, opts)
}

/// Run only the named laws, drawn from every suite. The report's suite name
/// lists the ids.
pub fn run_law_ids(ids: &[&str], trials: u64, seed: u64, opts: RunOptions) -> Result<LawReport> {
    let mut laws = suite_laws("all")?;
    if let Some(missing) = ids.iter().find(|id| !laws.iter().any(|l| l.id() == **id)) {
        return Err(Error::UnknownSuite(format!("no law named {missing}")));
    }
    laws.retain(|l| ids.contains(&l.id()));
    run(&ids.join(","), laws, trials, seed, opts)
}

fn run(suite: &str, laws: Vec<Box<dyn AnyLaw>>, trials: u64, seed: u64, opts: RunOptions) -> Result<LawReport> {
    let pool = if opts.jobs > 1 {
        Some(rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().map_err(|e| Error::Precondition(format!("thread pool: {e}")))?)
    } else {
        None
    };
    let mut summaries = Vec::new();
    let mut failures = Vec::new();
    for law in &laws {
        let base = seed ^ fnv(law.id());
        let run = |i: u64| law.verdict(trial_seed(base, i));
        let verdicts: Vec<Verdict> = match &pool {
            Some(p) => p.install(|| (0..trials).into_par_iter().map(run).collect()),
            None => (0..trials).map(run).collect(),
        };
        let vacuous = verdicts.iter().filter(|v| **v == Vacuous).count() as u64;
        let failing: Vec<u64> = (0..trials).filter(|&i| matches!(verdicts[i as usize], Fail(_))).collect();
        for &i in failing.iter().take(opts.max_failures_per_law) {
            let s = trial_seed(base, i);
            let (message, counterexample, shrink_steps) = law.minimize(s);
            failures.push(Failure { law: law.id().to_string(), seed: s, case_index: i, message, counterexample, shrink_steps });
        }
        summaries.push(LawSummary { law: law.id().to_string(), trials, vacuous, violations: failing.len() as u64 });
    }
    Ok(LawReport { suite: suite.to_string(), seed, trials, laws: summaries, failures })
}

/// Re-run a single trial of a law from its recorded seed.
pub fn replay(law_id: &str, seed: u64) -> Result<Option<String>> {
    let laws = suite_laws("all")?;
    let law = laws.iter().find(|l| l.id() == law_id).ok_or_else(|| Error::UnknownSuite(format!("no law named {law_id}")))?;
    Ok(match law.verdict(seed) {
        Fail(m) => Some(m),
        _ => None,
    })
}

/// 64-bit FNV-1a, for stable per-law seed offsets.
fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}
