//! The generate, test and constrain loop.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use web_time::Instant;

use crate::bias::{schedule, Bias};
use crate::constraints::{learn, ConstraintKind};
use crate::generator::{new_generator, GeneratorConfig, GeneratorStats};
use crate::interp::{test, EvalLimits, InterpError, KnowledgeBase, Outcome};
use crate::logic::{cost, Program};
use crate::task::TaskInstance;
use crate::term::GroundAtom;

#[derive(Clone, Debug)]
pub struct LearnerInput {
    pub kb: KnowledgeBase,
    pub pos: Vec<GroundAtom>,
    pub neg: Vec<GroundAtom>,
    pub bias: Bias,
    pub limits: EvalLimits,
    pub max_literals: usize,
    pub wall_budget: Duration,
    /// Off means pure generate-and-test.
    pub learn_constraints: bool,
}

impl LearnerInput {
    pub fn from_task(task: &TaskInstance) -> Result<Self, InterpError> {
        Ok(LearnerInput {
            kb: task.kb()?,
            pos: task.pos.clone(),
            neg: task.neg.clone(),
            bias: task.bias.clone(),
            limits: task.limits,
            max_literals: task.bias.default_max_literals(),
            wall_budget: Duration::from_secs(120),
            learn_constraints: true,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    OptimalFound,
    Exhausted,
    BudgetExceeded,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::OptimalFound => "optimal_found",
            Status::Exhausted => "exhausted",
            Status::BudgetExceeded => "budget_exceeded",
        })
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct LearnerStats {
    pub programs_tested: u64,
    pub constraints_learned: BTreeMap<ConstraintKind, u64>,
    pub timeouts: u64,
    pub wall_time: f64,
    pub final_cost: usize,
    pub generator: GeneratorStats,
}

#[derive(Clone, Debug, Serialize)]
pub struct LearnerResult {
    #[serde(serialize_with = "as_text")]
    pub solution: Option<Program>,
    pub status: Status,
    pub stats: LearnerStats,
}

fn as_text<S: serde::Serializer>(p: &Option<Program>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_some(&p.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LearnError {
    #[error("no positive examples")]
    NoPositives,
    #[error("example {0} does not use the target predicate")]
    ForeignExample(String),
    #[error(transparent)]
    Interp(#[from] InterpError),
}

fn validate(input: &LearnerInput) -> Result<(), LearnError> {
    if input.pos.is_empty() {
        return Err(LearnError::NoPositives);
    }
    let t = input.bias.target();
    for e in input.pos.iter().chain(&input.neg) {
        if (e.pred.as_ref(), e.args.len()) != (t.name(), t.arity()) {
            return Err(LearnError::ForeignExample(e.to_string()));
        }
    }
    Ok(())
}

/// Runs the loop until a solution is found, the space is exhausted or the
/// wall budget runs out. The first solution found has minimal cost.
pub fn learn_loop(input: &LearnerInput) -> Result<LearnerResult, LearnError> {
    learn_loop_with(input, |_, _| {})
}

/// As [`learn_loop`], reporting every tested program and its outcome.
pub fn learn_loop_with(
    input: &LearnerInput,
    mut observe: impl FnMut(&Program, &Outcome),
) -> Result<LearnerResult, LearnError> {
    validate(input)?;
    let start = Instant::now();
    let mut g = new_generator(GeneratorConfig { bias: input.bias.clone(), max_literals: input.max_literals });
    let mut stats = LearnerStats::default();
    let finish = |g: &crate::generator::Generator, mut stats: LearnerStats, solution, status| {
        stats.wall_time = start.elapsed().as_secs_f64();
        stats.final_cost = g.current_cost().min(input.max_literals);
        stats.generator = g.stats().clone();
        LearnerResult { solution, status, stats }
    };
    loop {
        if start.elapsed() > input.wall_budget {
            return Ok(finish(&g, stats, None, Status::BudgetExceeded));
        }
        let Some(p) = g.next_program() else {
            return Ok(finish(&g, stats, None, Status::Exhausted));
        };
        let run = schedule(&input.bias, &p).unwrap_or_else(|| p.clone());
        let out = test(&input.kb, &run, &input.pos, &input.neg, &input.limits)?;
        stats.programs_tested += 1;
        stats.timeouts += out.timeouts as u64;
        observe(&run, &out);
        if out.complete() && out.consistent() {
            debug_assert_eq!(cost(&run), g.current_cost());
            return Ok(finish(&g, stats, Some(run), Status::OptimalFound));
        }
        if input.learn_constraints {
            for c in learn(&p, &out) {
                *stats.constraints_learned.entry(c.kind()).or_insert(0) += 1;
                g.add_constraint(&c);
            }
        }
    }
}
