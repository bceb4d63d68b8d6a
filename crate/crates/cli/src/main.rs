use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::mpsc::{self, RecvTimeoutError};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use fusionkit::burnside::{marks, Basis, BurnsideElement, ConcreteBiset, Context, ElementJson};
use fusionkit::catalog::{self, run_catalog};
use fusionkit::charidem::{linear_solve, omega, power_iteration, verify_characteristic_idempotent};
use fusionkit::fusion::FusionSystem;
use fusionkit::group::{is_prime, GroupSpec, DEFAULT_MAX_ORDER};
use fusionkit::lattice::sylow_subgroup;
use fusionkit::rational::NumDen;
use fusionkit::report::to_json_pretty;
use fusionkit::scenario::{run_scenario, Scenario};
use fusionkit::Error;

#[derive(Parser)]
#[command(name = "fusionkit", version, about = "Exact checks on double Burnside modules and fusion systems")]
struct Cli {
    /// Largest group order accepted anywhere.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,
    /// Wall-clock budget in seconds; running over it exits with code 3.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario, given as a JSON file or a catalog name.
    Verify {
        scenario: String,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Also run the set-level biset cross-checks.
        #[arg(long)]
        oracle: bool,
    },
    /// Run the built-in scenario catalog.
    Catalog {
        #[arg(long)]
        oracle: bool,
        /// Worker threads (0 = one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Characteristic idempotent of F_S(G) for a Sylow p-subgroup S.
    Idempotent {
        /// Group description file, or a builtin name such as "S4".
        #[arg(long)]
        ambient: String,
        #[arg(long = "p")]
        p: u64,
        #[arg(long, value_enum, default_value_t = SolverChoice::Both)]
        method: SolverChoice,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Product a ∘ b of two element files.
    Compose {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mark vector of an element over the full basis.
    Marks {
        x: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Orbit decomposition of an explicit biset file.
    Decompose {
        biset: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverChoice {
    Linear,
    Power,
    /// Both solvers; they must agree.
    Both,
}

enum Failure {
    Checks,
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Singular { .. }
            | Error::Reconstruction { .. }
            | Error::NotCharacteristic(_)
            | Error::StableSpaceMismatch(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// `left[h][x] = h · x`, `right[x][g] = x · g`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BisetFile {
    #[serde(rename = "G")]
    g: GroupSpec,
    #[serde(rename = "H")]
    h: GroupSpec,
    p: u64,
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct MarkRow {
    pair: String,
    #[serde(rename = "K")]
    k: Vec<u32>,
    phi: Vec<u32>,
    mark: NumDen,
}

#[derive(Serialize)]
struct MarkTable {
    context: String,
    marks: Vec<MarkRow>,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_element(path: &Path, max_order: usize) -> Result<BurnsideElement, Failure> {
    let parsed: ElementJson = serde_json::from_str(&read(path)?)?;
    Ok(parsed.into_element(max_order)?)
}

/// JSON goes to `out` when given; otherwise to stdout, with the human text on stderr.
fn emit(json: &str, human: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => {
            print!("{human}");
            write(path, json)
        }
        None => {
            eprint!("{human}");
            print!("{json}");
            Ok(())
        }
    }
}

fn verify(name: &str, json: Option<&Path>, oracle: bool, max_order: usize) -> Outcome {
    let start = Instant::now();
    let sc = if Path::new(name).exists() {
        Scenario::from_json(&read(Path::new(name))?)?
    } else {
        catalog::scenario(name).ok_or_else(|| Failure::Input(format!("{name}: no such file or catalog scenario")))?
    };
    let report = run_scenario(&sc, max_order, oracle)?;
    print!("{}", report.summary());
    println!("elapsed {:.2}s", start.elapsed().as_secs_f64());
    if let Some(path) = json {
        write(path, &to_json_pretty(&report))?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn run_suite(oracle: bool, jobs: usize, json: Option<&Path>, max_order: usize) -> Outcome {
    let start = Instant::now();
    let report = run_catalog(max_order, oracle, jobs)?;
    for r in &report.reports {
        print!("{}", r.summary());
    }
    let failed = report.reports.iter().filter(|r| !r.passed).count();
    println!(
        "catalog: {} scenarios, {failed} failed, elapsed {:.2}s",
        report.reports.len(),
        start.elapsed().as_secs_f64()
    );
    if let Some(path) = json {
        write(path, &to_json_pretty(&report))?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn idempotent(ambient: &str, p: u64, method: SolverChoice, out: Option<&Path>, max_order: usize) -> Outcome {
    let start = Instant::now();
    if !is_prime(p) {
        return Err(Failure::Input(format!("{p} is not prime")));
    }
    let spec = if Path::new(ambient).exists() {
        serde_json::from_str(&read(Path::new(ambient))?)?
    } else {
        GroupSpec::builtin(ambient)
    };
    let g = spec.build(max_order)?;
    let s = sylow_subgroup(&g, p);
    let f = FusionSystem::from_group(&g, &s, p)?;
    let w = match method {
        SolverChoice::Linear => linear_solve(&f)?,
        SolverChoice::Power => power_iteration(&f)?,
        SolverChoice::Both => omega(&f)?,
    };
    let report = verify_characteristic_idempotent(&w, &f, &[])?;
    if !report.passed() {
        return Err(Failure::Internal(format!("idempotent failed verification: {report:?}")));
    }
    let human = format!(
        "{}: |S| = {}, {} terms, verified, elapsed {:.2}s\n{w}\n",
        f.label(),
        s.order(),
        w.len(),
        start.elapsed().as_secs_f64()
    );
    emit(&(w.to_json_string() + "\n"), &human, out)
}

fn compose(a: &Path, b: &Path, out: Option<&Path>, max_order: usize) -> Outcome {
    let x = read_element(a, max_order)?;
    let y = read_element(b, max_order)?;
    let xy = x.compose(&y)?;
    emit(&(xy.to_json_string() + "\n"), &format!("{xy}\n"), out)
}

fn mark_table(path: &Path, json: Option<&Path>, max_order: usize) -> Outcome {
    let x = read_element(path, max_order)?;
    let basis = Basis::new(x.context(), false);
    let values = marks(&x, &basis);
    let mut human = String::new();
    let rows: Vec<MarkRow> = basis
        .pairs()
        .iter()
        .zip(values)
        .map(|(pair, m)| {
            human.push_str(&format!("{:<40} {m}\n", pair.to_string()));
            MarkRow {
                pair: pair.to_string(),
                k: pair.source().elements().to_vec(),
                phi: pair.images().to_vec(),
                mark: NumDen(m),
            }
        })
        .collect();
    let table = MarkTable { context: x.context().describe(), marks: rows };
    emit(&to_json_pretty(&table), &human, json)
}

fn decompose(path: &Path, out: Option<&Path>, max_order: usize) -> Outcome {
    let file: BisetFile = serde_json::from_str(&read(path)?)?;
    let ctx = Context::new(file.g.build(max_order)?, file.h.build(max_order)?, file.p);
    let points = file.right.len();
    let biset = ConcreteBiset::new(&ctx, points, file.left.concat(), file.right.concat())?;
    let x = biset.decompose()?;
    emit(&(x.to_json_string() + "\n"), &format!("{x}\n"), out)
}

fn run(cli: Cli) -> Outcome {
    let max = cli.max_order;
    match cli.command {
        Command::Verify { scenario, json, oracle } => verify(&scenario, json.as_deref(), oracle, max),
        Command::Catalog { oracle, jobs, json } => run_suite(oracle, jobs, json.as_deref(), max),
        Command::Idempotent { ambient, p, method, out } => idempotent(&ambient, p, method, out.as_deref(), max),
        Command::Compose { a, b, out } => compose(&a, &b, out.as_deref(), max),
        Command::Marks { x, json } => mark_table(&x, json.as_deref(), max),
        Command::Decompose { biset, out } => decompose(&biset, out.as_deref(), max),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli.budget;
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(run(cli));
    });
    let outcome = match budget {
        Some(secs) => match rx.recv_timeout(Duration::from_secs(secs)) {
            Ok(o) => o,
            Err(RecvTimeoutError::Timeout) => Err(Failure::Internal(format!("time budget of {secs}s exceeded"))),
            Err(RecvTimeoutError::Disconnected) => Err(Failure::Internal("worker panicked".into())),
        },
        None => rx.recv().unwrap_or_else(|_| Err(Failure::Internal("worker panicked".into()))),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
