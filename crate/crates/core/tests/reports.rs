use awglue::harness::{replay, run_laws_with, suite_law_ids, RunOptions, SUITES};
use awglue::mutation::{self, Mutation};
use awglue::Error;

fn with_jobs(jobs: usize) -> RunOptions {
    RunOptions { jobs, ..RunOptions::default() }
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let a = run_laws_with("all", 25, 99, with_jobs(1)).unwrap().to_json();
    let b = run_laws_with("all", 25, 99, with_jobs(1)).unwrap().to_json();
    let c = run_laws_with("all", 25, 99, with_jobs(4)).unwrap().to_json();
    assert_eq!(a, b);
    assert_eq!(a, c);
    let d = run_laws_with("all", 25, 100, with_jobs(1)).unwrap().to_json();
    assert_ne!(a, d);
}

#[test]
fn every_suite_passes_a_short_run() {
    for suite in SUITES {
        let r = run_laws_with(suite, 20, 3, with_jobs(2)).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!(r.laws.len(), suite_law_ids(suite).unwrap().len());
    }
}

#[test]
fn zero_trials_give_an_empty_passing_report() {
    let r = run_laws_with("glueing", 0, 1, with_jobs(1)).unwrap();
    assert!(r.passed());
    assert!(r.laws.iter().all(|l| l.trials == 0 && l.violations == 0));
}

#[test]
fn unknown_suite_is_an_error() {
    assert!(matches!(run_laws_with("topology", 1, 1, with_jobs(1)), Err(Error::UnknownSuite(_))));
    assert!(replay("glueing.nope", 1).is_err());
}

fn mutated_failures_replay(m: Mutation, suite: &str) {
    let _guard = mutation::enable(m);
    let r = run_laws_with(suite, 100, 5, with_jobs(1)).unwrap();
    assert!(!r.failures.is_empty(), "{m:?} went unnoticed");
    for f in &r.failures {
        // Shrinking only ever moves to a case that still fails, so the
        // reported message is a genuine failure of the minimized case.
        assert!(!f.message.starts_with("not reproducible"), "{}", f.message);
        assert!(!f.counterexample.is_null());
        assert!(replay(&f.law, f.seed).unwrap().is_some(), "{} seed {} did not fail again", f.law, f.seed);
    }
    let summary_total: u64 = r.laws.iter().map(|l| l.violations).sum();
    assert!(summary_total >= r.failures.len() as u64);
}

#[test]
fn mutated_failures_shrink_and_replay() {
    mutated_failures_replay(Mutation::SkipMonotonicity, "glueing");
    mutated_failures_replay(Mutation::DropGlueF, "glueing");
    mutated_failures_replay(Mutation::ForceEscapes, "ends");
}

#[test]
fn mutations_stay_on_their_thread() {
    let _guard = mutation::enable(Mutation::ForceEscapes);
    let other = std::thread::spawn(|| run_laws_with("ends", 30, 5, with_jobs(1)).unwrap().passed()).join().unwrap();
    assert!(other);
}
