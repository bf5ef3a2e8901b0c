//! The acceptance gate: eight criteria, one PASS/FAIL line each, at the
//! stated trial counts, tolerances and time limits. Exits non-zero when any
//! criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use awglue::ends::{approximate, bonding, end_count, explore, LazyGraph};
use awglue::harness::sweeps::{self, Sweep};
use awglue::harness::{run_law_ids, run_laws_with, LawReport, RunOptions};
use awglue::limits::{detect_stabilization, sum_limit, two_compactification_product, DEFAULT_WINDOW};
use awglue::mutation::{self, Mutation};

const SEED: u64 = 20240607;

struct Check {
    ok: bool,
    detail: String,
}

impl Check {
    fn new(ok: bool, detail: impl Into<String>) -> Check {
        Check { ok, detail: detail.into() }
    }

    fn all(parts: Vec<Check>) -> Check {
        let ok = parts.iter().all(|c| c.ok);
        let detail = parts.iter().map(|c| if c.ok { c.detail.clone() } else { format!("FAILED {}", c.detail) }).collect::<Vec<_>>();
        Check::new(ok, detail.join("; "))
    }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn opts() -> RunOptions {
    RunOptions { jobs: jobs(), ..RunOptions::default() }
}

fn sweep(s: Sweep) -> Check {
    let mut detail = format!("{} sweep: {} cases, {} vacuous, {} violations", s.name, s.cases, s.vacuous, s.violations);
    if let Some(e) = s.examples.first() {
        detail.push_str(&format!(" (first: {e})"));
    }
    Check::new(s.passed() && s.cases > 0, detail)
}

fn report(r: &LawReport) -> Check {
    let parts = r
        .laws
        .iter()
        .map(|l| {
            let ran = l.trials - l.vacuous;
            Check::new(l.violations == 0 && ran > 0, format!("{}: {}/{} non-vacuous, {} violations", l.law, ran, l.trials, l.violations))
        })
        .collect();
    let mut c = Check::all(parts);
    if let Some(f) = r.failures.first() {
        c.detail.push_str(&format!(" (first failure {}: {})", f.law, f.message));
    }
    c
}

fn within(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let t = Instant::now();
    let mut c = f();
    let took = t.elapsed();
    c.detail.push_str(&format!(" [{:.1}s, limit {}s]", took.as_secs_f64(), limit.as_secs()));
    if took > limit {
        c.ok = false;
        c.detail.push_str(" TOO SLOW");
    }
    c
}

fn glueing() -> Check {
    within(Duration::from_secs(60), || Check::all(vec![sweep(sweeps::glue_sweep(3)), sweep(sweeps::decompose_sweep(4))]))
}

fn continuity() -> Check {
    within(Duration::from_secs(30), || {
        let r = run_law_ids(&["transport.continuity-criterion"], 10_000, SEED, opts()).expect("known law");
        let l = r.law("transport.continuity-criterion").expect("ran");
        // Every trial must be a genuine sum map: vacuous trials do not count.
        let mut c = report(&r);
        c.ok &= l.vacuous == 0;
        c
    })
}

fn pullback_universality() -> Check {
    let t = Instant::now();
    let mut c = sweep(sweeps::pullback_sweep(3, 3));
    c.detail.push_str(&format!(" [{:.1}s]", t.elapsed().as_secs_f64()));
    c
}

fn composition() -> Check {
    within(Duration::from_secs(120), || {
        let ids =
            ["transport.double-pullback", "transport.push-pull-surjective", "transport.push-pull", "transport.pull-push", "transport.cube"];
        report(&run_law_ids(&ids, 5_000, SEED, opts()).expect("known laws"))
    })
}

fn limits() -> Check {
    let t = Instant::now();
    let laws = run_law_ids(&["limits.single-object", "limits.codirected"], 500, SEED, opts()).expect("known laws");
    let product = sum_limit(&two_compactification_product()).expect("the product has families");
    let dense = product.dense_families.len();
    let mixed = Check::new(
        product.families.len() == 4 && dense == 2,
        format!("two-compactification product: {} families, {dense} in the closure of X", product.families.len()),
    );
    let mut c = Check::all(vec![report(&laws), mixed, sweep(sweeps::limit_sweep(3, 3, 0)), sweep(sweeps::limit_sweep(2, 2, 2))]);
    c.detail.push_str(&format!(" [{:.1}s]", t.elapsed().as_secs_f64()));
    c
}

fn ends_fixture(name: &str, f: impl FnOnce() -> Check) -> Check {
    let mut c = within(Duration::from_secs(10), f);
    c.detail = format!("{name}: {}", c.detail);
    c
}

fn count_fixture(spec: &str, want: usize) -> Check {
    ends_fixture(spec, || {
        let g = LazyGraph::from_spec(spec).expect("builtin");
        match end_count(&g, 5, 25) {
            Ok(c) => Check::new(c.count == want && c.certified, format!("{} ends, certified {}", c.count, c.certified)),
            Err(e) => Check::new(false, e.to_string()),
        }
    })
}

fn ends() -> Check {
    let mut parts = vec![count_fixture("line", 2), count_fixture("grid2", 1)];
    for k in 1..=6 {
        parts.push(count_fixture(&format!("star:{k}"), k));
    }
    parts.push(ends_fixture("tree2", || {
        let g = LazyGraph::tree2();
        let radii: Vec<usize> = (0..=7).collect();
        let approx = approximate(&g, &radii, 8).expect("explorable");
        let counts: Vec<usize> = approx.stages.iter().map(|s| s.escaping_count()).collect();
        let want: Vec<usize> = (0..=7).map(|n| 1 << (n + 1)).collect();
        let stable = detect_stabilization(&approx.to_inverse_system(), DEFAULT_WINDOW).expect("window is positive");
        Check::new(counts == want && stable.is_none(), format!("escaping {counts:?}, stabilization {stable:?}"))
    }));
    parts.push(ends_fixture("bond functoriality", || {
        let mut triples = 0;
        let mut bad = Vec::new();
        for spec in ["line", "grid2", "tree2", "ladder", "star:3", "star:5"] {
            let g = LazyGraph::from_spec(spec).expect("builtin");
            let ex = explore(&g, 9).expect("explorable");
            let stages: Vec<_> = (0..=8).map(|n| ex.stage(n).expect("inside the horizon")).collect();
            let bonds: BTreeMap<(usize, usize), _> = (0..=8)
                .flat_map(|a| (a..=8).map(move |b| (a, b)))
                .map(|(a, b)| ((a, b), bonding(&stages[a], &stages[b]).expect("bonding exists")))
                .collect();
            for a in 0..=8 {
                for b in a..=8 {
                    for c in b..=8 {
                        triples += 1;
                        let (ab, bc, ac) = (&bonds[&(a, b)], &bonds[&(b, c)], &bonds[&(a, c)]);
                        let composite_agrees = bc.iter().all(|(u, v)| ab.get(v) == ac.get(u));
                        if !composite_agrees {
                            bad.push(format!("{spec} ({a},{b},{c})"));
                        }
                    }
                }
            }
        }
        Check::new(bad.is_empty(), format!("{triples} radius triples, failures {bad:?}"))
    }));
    parts.push(ends_fixture("f_K additivity", || report(&run_law_ids(&["ends.f-k-additivity"], 1_000, SEED, opts()).expect("known law"))));
    Check::all(parts)
}

fn coarse() -> Check {
    within(Duration::from_secs(120), || {
        Check::all(vec![report(&run_laws_with("coarse", 1_000, SEED, opts()).expect("known suite")), sweep(sweeps::coarse_sweep(4, 4))])
    })
}

/// Run the suites under one mutation, sequentially: mutations are
/// thread-local.
fn mutated(m: Mutation, suites: &[&str]) -> Check {
    let _guard = mutation::enable(m);
    let sequential = RunOptions { jobs: 1, ..RunOptions::default() };
    let mut failures = Vec::new();
    for s in suites {
        let r = run_laws_with(s, 200, SEED, sequential).expect("known suite");
        failures.extend(r.failures);
    }
    match failures.iter().min_by_key(|f| f.counterexample.to_string().len()) {
        Some(f) => Check::new(
            true,
            format!(
                "{m:?}: {} failures, smallest from {} after {} shrink steps: {}",
                failures.len(),
                f.law,
                f.shrink_steps,
                f.counterexample
            ),
        ),
        None => Check::new(false, format!("{m:?}: every law still passes")),
    }
}

fn mutations() -> Check {
    Check::all(vec![
        mutated(Mutation::SkipMonotonicity, &["glueing"]),
        mutated(Mutation::DropGlueF, &["glueing"]),
        mutated(Mutation::ForceEscapes, &["ends"]),
    ])
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("exhaustive glueing", glueing),
        ("continuity criterion", continuity),
        ("pullback universality", pullback_universality),
        ("composition laws", composition),
        ("limits", limits),
        ("ends fixtures", ends),
        ("coarse suite", coarse),
        ("mutation sensitivity", mutations),
    ];
    println!("acceptance: seed {SEED}, {} worker threads", jobs());
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let c = run();
        println!("criterion {} ({name}): {} - {}", k + 1, if c.ok { "PASS" } else { "FAIL" }, c.detail);
        failed += usize::from(!c.ok);
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
