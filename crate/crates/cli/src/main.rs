use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use circuit_codes::analysis::{is_spread_at_least, is_spread_at_least_klee};
use circuit_codes::bounds::bounds_report;
use circuit_codes::search::{probe_conjecture, StopReason};
use circuit_codes::{
    builtin_by_name, construct_form, corollary_projection, deimer_project, search_max,
    spread_via_characterization, BigLength, Error, FamilyParams, SearchProblem, SearchResult,
    TransitionSequence,
};
use circuit_codes_cli::{CodeFile, Method, ParseError, Report};
use clap::{Parser, Subcommand};
use serde::Serialize;

/// Construct, verify and search circuit codes in the hypercube.
///
/// Exit codes: 0 success, 1 verification failed or nothing found,
/// 2 unreadable or malformed input, 3 invalid parameters or unmet
/// preconditions.
#[derive(Parser)]
#[command(name = "circuit-codes", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a code file, optionally checking spread >= K.
    Verify {
        path: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "direct")]
        method: Method,
    },
    /// Build a code and print its report.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
        /// Also write the code file here.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Search for a longest code of spread K in dimension D.
    Search {
        d: usize,
        k: usize,
        /// Require a bit run of at least this length.
        #[arg(long)]
        phi: Option<usize>,
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget_time: Option<f64>,
        /// A known code to start from; the search only looks for longer ones.
        #[arg(long)]
        seed_witness: Option<PathBuf>,
        /// Write the best code found here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Known bounds on the maximum length of a (D, K) code.
    Bounds { d: u32, k: u32 },
    /// Delete every occurrence of LABEL and renumber the rest.
    Project {
        path: PathBuf,
        label: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Budgeted search for a code beating the symmetric family at (K, L).
    Probe {
        k: u32,
        l: u32,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long)]
        budget_time: Option<f64>,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Symmetric family member for odd K, even L >= 2, K >= 2L+1.
    Family { k: u32, l: u32 },
    /// A published code: example1 or remark1_Tprime.
    Builtin { name: String },
    /// Family member at (K+1, L-1) with its top label deleted; K even, L odd >= 3.
    Projection { k: u32, l: u32 },
}

enum Failure {
    Unverified(String),
    Parse(String),
    Precondition(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Unverified(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Precondition(_) => 3,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Precondition(e.to_string())
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn duration(secs: Option<f64>) -> Result<Option<Duration>, Failure> {
    secs.map(|s| {
        Duration::try_from_secs_f64(s).map_err(|_| Failure::Precondition(format!("bad time budget {s}")))
    })
    .transpose()
}

fn write_code(path: Option<&PathBuf>, file: &CodeFile) -> Result<(), Failure> {
    if let Some(path) = path {
        file.write(path)
            .map_err(|e| Failure::Precondition(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn run_method(t: &TransitionSequence, k: usize, method: Method) -> Result<bool, Error> {
    match method {
        Method::Direct => is_spread_at_least(t, k),
        Method::Klee => is_spread_at_least_klee(t, k),
        Method::Decomposition => spread_via_characterization(t, k),
        Method::All => unreachable!("expanded by the caller"),
    }
}

fn verify(path: PathBuf, k: Option<usize>, method: Method) -> Result<(), Failure> {
    let file = CodeFile::read(&path)?;
    let t = &file.code;
    let mut report = Report::of(t);
    report.method = Some(method);
    report.k = k;
    let Some(k) = k else {
        print_json(&report);
        return Ok(());
    };

    let methods: Vec<Method> = match method {
        Method::All => vec![Method::Direct, Method::Klee, Method::Decomposition],
        m => vec![m],
    };
    let mut outcomes = Vec::new();
    for m in methods {
        match run_method(t, k, m) {
            Ok(v) => outcomes.push((m, v)),
            Err(Error::NotACircuit) => {
                report.verified = Some(false);
                print_json(&report);
                return Err(Failure::Unverified(format!("{} is not a circuit", path.display())));
            }
            // With `all`, verifiers whose preconditions fail are skipped.
            Err(_) if method == Method::All && m != Method::Direct => {}
            Err(e) => return Err(e.into()),
        }
    }
    report.citations = outcomes
        .iter()
        .map(|(m, _)| serde_json::to_value(m).unwrap().as_str().unwrap().to_string())
        .collect();
    let verified = outcomes[0].1;
    report.verified = Some(verified);
    print_json(&report);
    if outcomes.iter().any(|&(_, v)| v != verified) {
        return Err(Failure::Unverified(format!("verifiers disagree: {outcomes:?}")));
    }
    if !verified {
        return Err(Failure::Unverified(format!("spread is below {k}")));
    }
    Ok(())
}

fn construct(kind: ConstructKind, out: Option<PathBuf>) -> Result<(), Failure> {
    let (t, k) = match kind {
        ConstructKind::Family { k, l } => (construct_form(FamilyParams::new(k, l)?), k),
        ConstructKind::Builtin { name } => (builtin_by_name(&name)?, 9),
        ConstructKind::Projection { k, l } => (corollary_projection(k, l)?, k),
    };
    write_code(out.as_ref(), &CodeFile::new(t.clone(), Some(k as usize)))?;
    print_json(&Report::of(&t));
    Ok(())
}

#[derive(Serialize)]
struct SearchReport {
    d: usize,
    k: usize,
    min_phi: Option<usize>,
    symmetric: bool,
    best_length: usize,
    witness: Option<String>,
    exhaustive: bool,
    stopped: Option<&'static str>,
    nodes_explored: u64,
    elapsed_seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<&'static str>,
}

impl SearchReport {
    fn new(p: &SearchProblem, r: &SearchResult) -> Self {
        SearchReport {
            d: p.d,
            k: p.k,
            min_phi: p.min_phi,
            symmetric: p.symmetric,
            best_length: r.best_length,
            witness: r.witness.as_ref().map(|w| w.to_string()),
            exhaustive: r.exhaustive,
            stopped: r.stopped.map(|s| match s {
                StopReason::NodeBudget => "node_budget",
                StopReason::TimeBudget => "time_budget",
            }),
            nodes_explored: r.nodes_explored,
            elapsed_seconds: r.elapsed.as_secs_f64(),
            verdict: None,
        }
    }
}

fn run() -> Result<(), Failure> {
    match Cli::parse().command {
        Command::Verify { path, k, method } => verify(path, k, method),
        Command::Construct { kind, out } => construct(kind, out),
        Command::Search {
            d,
            k,
            phi,
            symmetric,
            max_length,
            budget_nodes,
            budget_time,
            seed_witness,
            out,
        } => {
            let mut p = SearchProblem::new(d, k).symmetric(symmetric);
            p.min_phi = phi;
            p.max_length_hint = max_length;
            p.node_budget = budget_nodes;
            p.time_budget = duration(budget_time)?;
            if let Some(path) = seed_witness {
                p = p.seed(CodeFile::read(&path)?.code);
            }
            let r = search_max(&p)?;
            print_json(&SearchReport::new(&p, &r));
            match r.witness {
                Some(w) => write_code(out.as_ref(), &CodeFile::new(w, Some(k))),
                None => Err(Failure::Unverified("no code found".into())),
            }
        }
        Command::Bounds { d, k } => {
            print_json(&bounds_report::<BigLength>(d, k)?);
            Ok(())
        }
        Command::Project { path, label, out } => {
            let file = CodeFile::read(&path)?;
            let p = deimer_project(&file.code, label)?;
            let k = file.declared_k.filter(|&k| k > 1).map(|k| k - 1);
            write_code(out.as_ref(), &CodeFile::new(p.result.clone(), k))?;
            let mut report = Report::of(&p.result);
            report.removed_label = Some(p.removed_label);
            report.occurrences = Some(p.occurrences);
            print_json(&report);
            Ok(())
        }
        Command::Probe {
            k,
            l,
            budget_nodes,
            budget_time,
        } => {
            let probe = probe_conjecture(k, l, budget_nodes, duration(budget_time)?)?;
            let p = SearchProblem::new(probe.d, k as usize);
            let mut report = SearchReport::new(&p, &probe.result);
            report.verdict = Some(probe.verdict());
            print_json(&report);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Unverified(msg) | Failure::Parse(msg) | Failure::Precondition(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.exit_code())
        }
    }
}
