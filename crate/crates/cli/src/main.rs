//! `awglue`: law verification, glueing, end counts, limits and coarse checks
//! from the command line.
//!
//! Exit status: 0 on success, 1 on a usage or validation error, 2 when a law
//! suite finds a violation.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use awglue::coarse::CoarseStructure;
use awglue::ends::{approximate, end_count, LazyGraph};
use awglue::format;
use awglue::harness::{run_laws_with, RunOptions};
use awglue::limits::sum_limit;
use awglue::mutation::{self, Mutation};
use awglue::subset::Subset;
use awglue::{check_pair, glue, AdmissibleMap, AdmissiblePair};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "awglue", version, about = "Glueings of finite spaces, graph ends and finite coarse structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a seeded law suite and print its JSON report.
    VerifyLaws {
        /// glueing, transport, limits, ends, coarse or all.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads for the trials; verdicts do not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run under a deliberate defect (forces a single thread).
        #[arg(long, value_enum, hide = true)]
        mutation: Option<Defect>,
    },
    /// Glue two spaces along f (and optionally g).
    Glue {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count the ends of a graph from its escaping components.
    Ends {
        /// line, grid2, tree2, ladder, star:K or file:PATH.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        horizon: usize,
        /// Write the component tree as Graphviz.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compute the limit of a diagram of glueings.
    Limits {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Query a finitely generated coarse structure.
    CoarseCheck {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long, value_enum)]
        op: Op,
        /// Pairs `[["x","y"], ...]` for `controlled`.
        #[arg(long)]
        relation: Option<String>,
        /// Comma-separated points for `bounded`, `preceq` and `sim`.
        #[arg(long)]
        set: Option<String>,
        /// The second set for `preceq` and `sim`.
        #[arg(long)]
        other: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    /// Canonical form and maximal controlled relations.
    Summary,
    Controlled,
    Bounded,
    Preceq,
    Sim,
    Connected,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Defect {
    SkipMonotonicity,
    DropGlueF,
    ForceEscapes,
}

impl From<Defect> for Mutation {
    fn from(d: Defect) -> Mutation {
        match d {
            Defect::SkipMonotonicity => Mutation::SkipMonotonicity,
            Defect::DropGlueF => Mutation::DropGlueF,
            Defect::ForceEscapes => Mutation::ForceEscapes,
        }
    }
}

/// A failed command: the message and the exit status it maps to.
struct Failure(u8, String);

impl From<awglue::Error> for Failure {
    fn from(e: awglue::Error) -> Failure {
        Failure(1, e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(1, format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: awglue::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure(1, format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure(1, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify_laws(suite: &str, trials: u64, seed: u64, jobs: usize, out: Option<&Path>, defect: Option<Defect>) -> Outcome {
    let _guard = defect.map(|d| mutation::enable(d.into()));
    let jobs = if defect.is_some() { 1 } else { jobs.max(1) };
    let opts = RunOptions { jobs, ..RunOptions::default() };
    let report = run_laws_with(suite, trials, seed, opts)?;
    emit(out, &(report.to_json() + "\n"))?;
    for f in &report.failures {
        eprintln!("violation: {} (seed {}): {}", f.law, f.seed, f.message);
    }
    Ok(if report.passed() { 0 } else { 2 })
}

fn glue_files(left: &Path, right: &Path, f: &Path, g: Option<&Path>, out: Option<&Path>) -> Outcome {
    let x = in_file(left, format::space_from_json(&read(left)?))?;
    let y = in_file(right, format::space_from_json(&read(right)?))?;
    let fm = in_file(f, format::admissible_from_json(&read(f)?, Some((&x, &y))))?;
    let pair = match g {
        Some(g) => {
            let gm: AdmissibleMap = in_file(g, format::admissible_from_json(&read(g)?, Some((&y, &x))))?;
            check_pair(fm, gm)?
        }
        None => AdmissiblePair::one_sided(fm),
    };
    let sum = glue(&x, &y, pair)?;
    emit(out, &format::sum_to_json(&sum))?;
    Ok(0)
}

fn ends(spec: &str, depth: usize, horizon: usize, dot: Option<&Path>) -> Outcome {
    let g = LazyGraph::from_spec(spec)?;
    let c = end_count(&g, depth, horizon)?;
    let status = if c.certified { "certified" } else { "not certified" };
    println!("ends: {} ({status})", c.count);
    let counts: Vec<String> = c.counts.iter().map(usize::to_string).collect();
    println!("escaping components by radius: {}", counts.join(" "));
    if let Some(path) = dot {
        let radii: Vec<usize> = (0..=depth).collect();
        let approx = approximate(&g, &radii, horizon)?;
        fs::write(path, approx.to_dot(&g)).map_err(|e| Failure(1, format!("{}: {e}", path.display())))?;
    }
    Ok(0)
}

fn limits(diagram: &Path, out: Option<&Path>) -> Outcome {
    let d = in_file(diagram, format::diagram_from_json(&read(diagram)?))?;
    let l = sum_limit(&d)?;
    emit(out, &format::limit_to_json(&l))?;
    Ok(0)
}

fn points(cs: &CoarseStructure, list: Option<&str>, flag: &str) -> Result<Subset, Failure> {
    let list = list.ok_or_else(|| Failure(1, format!("this operation needs --{flag}")))?;
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|p| cs.ground().iter().position(|g| g == p).ok_or_else(|| Failure(1, format!("--{flag}: unknown point {p:?}"))))
        .collect()
}

fn coarse_check(structure: &Path, op: Op, relation: Option<&str>, set: Option<&str>, other: Option<&str>) -> Outcome {
    let cs = in_file(structure, format::structure_from_json(&read(structure)?))?;
    let answer = match op {
        Op::Summary => {
            let maxima: Vec<_> = cs.maxima().iter().map(|m| format::relation_to_value(cs.ground(), m)).collect();
            let doc: serde_json::Value = serde_json::from_str(&format::structure_to_json(&cs)).expect("canonical form parses");
            let doc = serde_json::json!({ "structure": doc, "maximal": maxima, "connected": cs.is_connected() });
            print!("{}", format::pretty(&doc));
            return Ok(0);
        }
        Op::Controlled => {
            let text = relation.ok_or_else(|| Failure(1, "controlled needs --relation".into()))?;
            let r = format::relation_from_json(cs.ground(), text).map_err(|e| Failure(1, format!("--relation: {e}")))?;
            cs.controlled(&r)?
        }
        Op::Bounded => cs.is_bounded(points(&cs, set, "set")?),
        Op::Preceq => cs.preceq(points(&cs, set, "set")?, points(&cs, other, "other")?),
        Op::Sim => cs.sim(points(&cs, set, "set")?, points(&cs, other, "other")?),
        Op::Connected => cs.is_connected(),
    };
    println!("{answer}");
    Ok(0)
}

/// Parse `argv` and run the command, returning the exit status.
fn run(argv: impl IntoIterator<Item = OsString>) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::VerifyLaws { suite, trials, seed, jobs, out, mutation } => {
            verify_laws(suite, *trials, *seed, *jobs, out.as_deref(), *mutation)
        }
        Command::Glue { left, right, f, g, out } => glue_files(left, right, f, g.as_deref(), out.as_deref()),
        Command::Ends { graph, depth, horizon, dot } => ends(graph, *depth, *horizon, dot.as_deref()),
        Command::Limits { diagram, out } => limits(diagram, out.as_deref()),
        Command::CoarseCheck { structure, op, relation, set, other } => {
            coarse_check(structure, *op, relation.as_deref(), set.as_deref(), other.as_deref())
        }
    };
    match outcome {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<OsString> {
        s.split_whitespace().map(OsString::from).collect()
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(argv("awglue ends --graph line --depth 5 --horizon 25 --bogus")), 1);
        assert_eq!(run(argv("awglue nonsense")), 1);
        assert_eq!(run(argv("awglue verify-laws --suite nope --trials 1")), 1);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run(argv("awglue --help")), 0);
    }

    #[test]
    fn zero_trials_pass() {
        assert_eq!(run(argv("awglue verify-laws --suite glueing --trials 0")), 0);
    }

    #[test]
    fn violations_exit_two() {
        assert_eq!(run(argv("awglue verify-laws --suite glueing --trials 50 --mutation skip-monotonicity")), 2);
    }
}
