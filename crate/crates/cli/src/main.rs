use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use lff::bench::{generate_benchmark, run_suite, BenchmarkSpec, Family, SuiteConfig, CSV_HEADER};
use lff::bias::parse_metarules;
use lff::learner::{learn_loop, LearnerInput};
use lff::task::parse_task;

#[derive(Parser)]
#[command(name = "lff", version, about = "Learn logic programs from examples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Learn a program for a task file and print it.
    Learn(LearnArgs),
    /// Run every (task, mode, seed) row of a suite config.
    Bench {
        suite: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a benchmark task; held-out examples go to `<out>.test`.
    Gen {
        /// robot, kth or a puzzle name.
        family: String,
        /// k for robot and kth.
        params: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(clap::Args)]
struct LearnArgs {
    task: PathBuf,
    #[arg(long)]
    metarules: Option<PathBuf>,
    #[arg(long, action = clap::ArgAction::Set)]
    enable_pi: Option<bool>,
    #[arg(long, action = clap::ArgAction::Set)]
    enable_recursion: Option<bool>,
    #[arg(long)]
    max_vars: Option<usize>,
    #[arg(long)]
    max_body: Option<usize>,
    #[arg(long)]
    max_clauses: Option<usize>,
    #[arg(long)]
    max_literals: Option<usize>,
    /// Per-example evaluation timeout in seconds.
    #[arg(long)]
    eval_timeout: Option<f64>,
    /// Learning budget in seconds.
    #[arg(long, default_value_t = 120.0)]
    budget: f64,
    /// Test candidates without learning constraints from them.
    #[arg(long)]
    no_constraints: bool,
    /// Print search statistics to stderr.
    #[arg(long)]
    stats: bool,
    /// Write the result as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}: {1}")]
    Parse(PathBuf, String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Learn(#[from] lff::learner::LearnError),
    #[error(transparent)]
    Interp(#[from] lff::interp::InterpError),
    #[error(transparent)]
    Bench(#[from] lff::bench::BenchError),
    #[error(transparent)]
    Suite(#[from] lff::bench::SuiteError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn seconds(s: f64) -> Result<Duration, CliError> {
    Duration::try_from_secs_f64(s).map_err(|e| CliError::Usage(format!("bad duration {s}: {e}")))
}

fn learn(a: &LearnArgs) -> Result<bool, CliError> {
    let task = parse_task(&read(&a.task)?).map_err(|e| CliError::Parse(a.task.clone(), e.to_string()))?;
    let mut input = LearnerInput::from_task(&task)?;
    let b = &mut input.bias;
    if let Some(v) = a.enable_pi {
        b.pi_enabled = v;
    }
    if let Some(v) = a.enable_recursion {
        b.recursion_enabled = v;
    }
    if let Some(n) = a.max_vars {
        b.max_vars = n;
    }
    if let Some(n) = a.max_body {
        b.max_body = n;
    }
    if let Some(n) = a.max_clauses {
        b.max_clauses = n;
    }
    if let Some(path) = &a.metarules {
        let ms = parse_metarules(&read(path)?).map_err(|e| CliError::Parse(path.clone(), e.to_string()))?;
        b.metarules = Some(ms);
    }
    input.max_literals = a.max_literals.unwrap_or_else(|| input.bias.default_max_literals());
    if let Some(t) = a.eval_timeout {
        input.limits.timeout = seconds(t)?;
    }
    input.wall_budget = seconds(a.budget)?;
    input.learn_constraints = !a.no_constraints;

    let r = learn_loop(&input)?;
    match &r.solution {
        Some(p) => println!("{p}"),
        None => println!("% no solution ({})", r.status),
    }
    if a.stats {
        let s = &r.stats;
        eprintln!("status: {}", r.status);
        eprintln!("programs tested: {}", s.programs_tested);
        for (kind, n) in &s.constraints_learned {
            eprintln!("{kind:?} constraints: {n}");
        }
        eprintln!("timeouts: {}", s.timeouts);
        eprintln!("final cost bound: {}", s.final_cost);
        eprintln!("time: {:.3}s", s.wall_time);
    }
    if let Some(path) = &a.json {
        write(path, &serde_json::to_string_pretty(&r)?)?;
    }
    Ok(r.solution.is_some())
}

fn bench(suite: &Path, out: &Path) -> Result<(), CliError> {
    let config = SuiteConfig::from_toml(&read(suite)?)?;
    fs::create_dir_all(out).map_err(|source| CliError::Io { path: out.into(), source })?;
    let csv_path = out.join("results.csv");
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record(CSV_HEADER)?;
    w.flush().map_err(|source| CliError::Io { path: csv_path.clone(), source })?;
    let base = suite.parent().unwrap_or(Path::new("."));
    let mut failed = None;
    let rows = run_suite(&config, base, |row| {
        let [task, k, mode, seed, status, cost, acc, time] = row.csv_record();
        eprintln!("{task} k={k} {mode} seed={seed} {status} cost={cost} acc={acc} {time}s");
        if failed.is_none() {
            if let Err(e) = w.write_record(row.csv_record()).and_then(|_| Ok(w.flush()?)) {
                failed = Some(e);
            }
        }
    })?;
    if let Some(e) = failed {
        return Err(e.into());
    }
    write(&out.join("results.json"), &serde_json::to_string_pretty(&rows)?)?;
    Ok(())
}

fn gen(family: &str, params: &[usize], seed: u64, out: &Path) -> Result<(), CliError> {
    if params.len() > 1 {
        return Err(CliError::Usage(format!("`{family}` takes at most one parameter")));
    }
    let family = Family::parse(family, params.first().copied())?;
    let b = generate_benchmark(&BenchmarkSpec::new(family, seed))?;
    write(out, &b.text)?;
    let mut test = out.as_os_str().to_owned();
    test.push(".test");
    write(Path::new(&test), &b.test_text())?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.command {
        Command::Learn(a) => learn(a).map(|found| if found { ExitCode::SUCCESS } else { ExitCode::from(1) }),
        Command::Bench { suite, out } => bench(suite, out).map(|_| ExitCode::SUCCESS),
        Command::Gen { family, params, seed, out } => gen(family, params, *seed, out).map(|_| ExitCode::SUCCESS),
    };
    r.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
