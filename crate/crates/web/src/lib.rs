//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes and returns plain strings; results are JSON.

use std::time::Duration;

use lff::bench::{generate_benchmark, BenchmarkSpec, Family};
use lff::interp::{test, Outcome};
use lff::learner::{learn_loop, LearnerInput};
use lff::logic::{cost, parse_program};
use lff::task::parse_task;
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Learned {
    program: Option<String>,
    status: String,
    cost: Option<usize>,
    programs_tested: u64,
    seconds: f64,
}

#[derive(Serialize)]
struct Checked {
    program: String,
    cost: usize,
    #[serde(flatten)]
    outcome: Outcome,
    solution: bool,
}

fn json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Learns a program for `task` within `budget_secs`.
#[wasm_bindgen]
pub fn learn(task: &str, budget_secs: f64) -> Result<String, String> {
    let task = parse_task(task).map_err(|e| e.to_string())?;
    let mut input = LearnerInput::from_task(&task).map_err(|e| e.to_string())?;
    input.wall_budget = Duration::try_from_secs_f64(budget_secs).map_err(|e| e.to_string())?;
    let r = learn_loop(&input).map_err(|e| e.to_string())?;
    json(&Learned {
        program: r.solution.as_ref().map(|p| p.to_string()),
        status: r.status.to_string(),
        cost: r.solution.as_ref().map(cost),
        programs_tested: r.stats.programs_tested,
        seconds: r.stats.wall_time,
    })
}

/// Task text for `robot`, `kth` or a puzzle. `k` is ignored for puzzles.
#[wasm_bindgen]
pub fn generate(family: &str, k: u32, seed: u32) -> Result<String, String> {
    let f = Family::parse(family, Some(k as usize)).map_err(|e| e.to_string())?;
    let b = generate_benchmark(&BenchmarkSpec::new(f, seed as u64)).map_err(|e| e.to_string())?;
    Ok(b.text)
}

/// Tests a hand-written program against the task's examples.
#[wasm_bindgen]
pub fn check(task: &str, program: &str) -> Result<String, String> {
    let task = parse_task(task).map_err(|e| e.to_string())?;
    let target = task.bias.target();
    let p = parse_program(program, target.name()).map_err(|e| e.to_string())?;
    for c in &p.clauses {
        c.check().map_err(|e| format!("{c}: {e}"))?;
    }
    let kb = task.kb().map_err(|e| e.to_string())?;
    let out = test(&kb, &p, &task.pos, &task.neg, &task.limits).map_err(|e| e.to_string())?;
    json(&Checked {
        program: p.to_string(),
        cost: cost(&p),
        outcome: out,
        solution: out.complete() && out.consistent(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generate_then_learn() {
        let t = generate("robot", 4, 7).unwrap();
        let r: serde_json::Value = serde_json::from_str(&learn(&t, 10.0).unwrap()).unwrap();
        assert_eq!(r["status"], "optimal_found");
        assert_eq!(r["cost"], 5);
    }

    #[test]
    fn check_counts_coverage() {
        let t = generate("robot", 2, 1).unwrap();
        let r: serde_json::Value =
            serde_json::from_str(&check(&t, "f(A,B) :- right(A,C),right(C,B).").unwrap()).unwrap();
        assert_eq!(r["solution"], true);
        let r: serde_json::Value = serde_json::from_str(&check(&t, "f(A,B) :- right(A,B).").unwrap()).unwrap();
        assert_eq!(r["pos_entailed"], 0);
        assert_eq!(r["neg_entailed"], 1);
    }

    #[test]
    fn errors_are_messages() {
        assert!(generate("nope", 1, 1).unwrap_err().contains("nope"));
        assert!(check("head_pred(f,1).", "f(A) :- ").is_err());
    }
}
