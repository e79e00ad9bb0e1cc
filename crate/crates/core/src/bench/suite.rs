//! Suite configuration and runs: one report row per (task, mode, seed).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::bias::{parse_metarules, BiasError, MetaruleSet};
use crate::constraints::ConstraintKind;
use crate::interp::{EvalLimits, InterpError};
use crate::learner::{learn_loop, LearnError, LearnerInput};
use crate::logic::{cost, Program};

use super::{evaluate, generate_benchmark, BenchError, Benchmark, BenchmarkSpec, Family};

pub const CSV_HEADER: [&str; 8] = ["task", "k", "mode", "seed", "status", "cost", "accuracy", "time"];

/// Learner overrides for one run. Unset fields keep the task's settings.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mode {
    pub pi: Option<bool>,
    pub recursion: Option<bool>,
    /// Metarule file; relative paths resolve against the suite file.
    pub metarules: Option<PathBuf>,
}

impl Mode {
    /// `pi`, `nopi+rec`, `pi+mil` and so on; `default` when nothing is set.
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if let Some(pi) = self.pi {
            parts.push(if pi { "pi" } else { "nopi" });
        }
        if let Some(r) = self.recursion {
            parts.push(if r { "rec" } else { "norec" });
        }
        if self.metarules.is_some() {
            parts.push("mil");
        }
        if parts.is_empty() {
            "default".into()
        } else {
            parts.join("+")
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteEntry {
    /// `robot`, `kth` or a puzzle name.
    pub family: String,
    #[serde(default)]
    pub k: Vec<usize>,
    pub seeds: Vec<u64>,
    #[serde(default = "default_modes")]
    pub modes: Vec<Mode>,
    /// Learning budget in seconds for this entry.
    pub budget: Option<f64>,
}

fn default_modes() -> Vec<Mode> {
    vec![Mode::default()]
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    /// Default learning budget in seconds.
    pub budget: Option<f64>,
    /// Per-example evaluation timeout in seconds.
    pub eval_timeout: Option<f64>,
    #[serde(default, rename = "task")]
    pub tasks: Vec<SuiteEntry>,
}

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("suite config: {0}")]
    Config(#[from] toml::de::Error),
    #[error(transparent)]
    Bench(#[from] BenchError),
    #[error("metarules {path}: {message}")]
    Metarules { path: PathBuf, message: String },
    #[error(transparent)]
    Learn(#[from] LearnError),
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error("bad setting: {0}")]
    Setting(String),
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self, SuiteError> {
        Ok(toml::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub task: String,
    pub k: Option<usize>,
    pub mode: String,
    pub seed: u64,
    pub status: String,
    pub cost: Option<usize>,
    /// Held-out accuracy; the empty program is scored when nothing was learned.
    pub accuracy: f64,
    pub learning_time: f64,
    pub solution: Option<String>,
    pub programs_tested: u64,
    pub constraints_learned: BTreeMap<ConstraintKind, u64>,
    pub timeouts: u64,
}

impl RunReport {
    /// Fields in [`CSV_HEADER`] order.
    pub fn csv_record(&self) -> [String; 8] {
        [
            self.task.clone(),
            self.k.map(|k| k.to_string()).unwrap_or_default(),
            self.mode.clone(),
            self.seed.to_string(),
            self.status.clone(),
            self.cost.map(|c| c.to_string()).unwrap_or_default(),
            format!("{:.4}", self.accuracy),
            format!("{:.3}", self.learning_time),
        ]
    }
}

fn secs(s: f64) -> Result<Duration, SuiteError> {
    Duration::try_from_secs_f64(s).map_err(|e| SuiteError::Setting(format!("{s} seconds: {e}")))
}

fn load_metarules(path: &Path) -> Result<MetaruleSet, SuiteError> {
    let err = |message: String| SuiteError::Metarules { path: path.to_path_buf(), message };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    parse_metarules(&text).map_err(|e: BiasError| err(e.to_string()))
}

/// Learns `bench` under `mode` and scores the result on its held-out set.
pub fn run_one(
    bench: &Benchmark,
    mode: &Mode,
    metarules: Option<MetaruleSet>,
    budget: Duration,
    limits: EvalLimits,
) -> Result<(RunReport, Option<Program>), SuiteError> {
    let mut input = LearnerInput::from_task(&bench.task)?;
    if let Some(pi) = mode.pi {
        input.bias.pi_enabled = pi;
    }
    if let Some(r) = mode.recursion {
        input.bias.recursion_enabled = r;
    }
    if metarules.is_some() {
        input.bias.metarules = metarules;
    }
    input.wall_budget = budget;
    input.limits = limits;
    let result = learn_loop(&input)?;
    let empty = Program::new(Vec::new());
    let accuracy =
        evaluate(result.solution.as_ref().unwrap_or(&empty), &input.kb, &bench.test_pos, &bench.test_neg, &limits)?;
    let report = RunReport {
        task: String::new(),
        k: None,
        mode: mode.label(),
        seed: 0,
        status: result.status.to_string(),
        cost: result.solution.as_ref().map(cost),
        accuracy,
        learning_time: result.stats.wall_time,
        solution: result.solution.as_ref().map(|p| p.to_string()),
        programs_tested: result.stats.programs_tested,
        constraints_learned: result.stats.constraints_learned,
        timeouts: result.stats.timeouts,
    };
    Ok((report, result.solution))
}

/// Runs every (task, mode, seed) combination in order, calling `each` with
/// every finished row. `base` resolves relative metarule paths.
pub fn run_suite(
    config: &SuiteConfig,
    base: &Path,
    mut each: impl FnMut(&RunReport),
) -> Result<Vec<RunReport>, SuiteError> {
    let mut limits = EvalLimits::default();
    if let Some(t) = config.eval_timeout {
        limits.timeout = secs(t)?;
    }
    let mut out = Vec::new();
    for entry in &config.tasks {
        let ks: Vec<Option<usize>> =
            if entry.k.is_empty() { vec![None] } else { entry.k.iter().copied().map(Some).collect() };
        for k in ks {
            let family = Family::parse(&entry.family, k)?;
            let budget = match entry.budget.or(config.budget) {
                Some(s) => secs(s)?,
                None => family.default_budget(),
            };
            for mode in &entry.modes {
                let metarules = match &mode.metarules {
                    Some(p) => Some(load_metarules(&base.join(p))?),
                    None => None,
                };
                for &seed in &entry.seeds {
                    let bench = generate_benchmark(&BenchmarkSpec::new(family, seed))?;
                    let (mut row, _) = run_one(&bench, mode, metarules.clone(), budget, limits)?;
                    row.task = family.task_name().into();
                    row.k = family.k();
                    row.seed = seed;
                    each(&row);
                    out.push(row);
                }
            }
        }
    }
    Ok(out)
}
