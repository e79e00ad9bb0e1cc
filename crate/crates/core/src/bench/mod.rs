//! Seeded benchmark generators, held-out evaluation and suite runs.

mod puzzles;
mod suite;

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::interp::{EvalLimits, InterpError, KnowledgeBase, Prepared, Verdict};
use crate::logic::Program;
use crate::task::{parse_task, TaskError, TaskInstance};
use crate::term::{GroundAtom, GroundTerm};

pub use puzzles::{Puzzle, Val, ALL_PUZZLES, MAX_ELEM, MAX_LEN};
pub use suite::{run_one, run_suite, Mode, RunReport, SuiteConfig, SuiteEntry, SuiteError, CSV_HEADER};

/// Width of the robot's grid; positions run from 0 to `GRID`.
pub const GRID: i64 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Robot(usize),
    KthElement(usize),
    Puzzle(Puzzle),
}

impl Family {
    /// Short task name used in reports: `robot`, `kth` or the puzzle name.
    pub fn task_name(&self) -> &'static str {
        match self {
            Family::Robot(_) => "robot",
            Family::KthElement(_) => "kth",
            Family::Puzzle(p) => p.name(),
        }
    }

    /// 120 s for robot and kth, three minutes for puzzles.
    pub fn default_budget(&self) -> std::time::Duration {
        std::time::Duration::from_secs(if matches!(self, Family::Puzzle(_)) { 180 } else { 120 })
    }

    pub fn k(&self) -> Option<usize> {
        match self {
            Family::Robot(k) | Family::KthElement(k) => Some(*k),
            Family::Puzzle(_) => None,
        }
    }

    /// Parses `robot`, `kth` (with `k`) or a puzzle name.
    pub fn parse(name: &str, k: Option<usize>) -> Result<Family, BenchError> {
        let need_k = || k.ok_or_else(|| BenchError::MissingK(name.to_string()));
        match name {
            "robot" => Ok(Family::Robot(need_k()?)),
            "kth" | "kth_element" => Ok(Family::KthElement(need_k()?)),
            other => {
                Puzzle::from_name(other).map(Family::Puzzle).ok_or_else(|| BenchError::UnknownFamily(other.into()))
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k() {
            Some(k) => write!(f, "{}({k})", self.task_name()),
            None => f.write_str(self.task_name()),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("robot k = {0} does not fit the grid (at most {max})", max = GRID - 1)]
    RobotTooFar(usize),
    #[error("kth element needs k between 1 and 26, got {0}")]
    KthOutOfRange(usize),
    #[error("`{0}` needs a k parameter")]
    MissingK(String),
    #[error("unknown benchmark family `{0}`")]
    UnknownFamily(String),
    #[error("generated task does not parse: {0}")]
    Task(#[from] TaskError),
}

/// What to generate. Sizes default per family; see [`BenchmarkSpec::new`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    pub family: Family,
    pub seed: u64,
    /// Positive training examples (robot and puzzles).
    pub train_pos: usize,
    /// Negative training examples (puzzles only; fixed by the other families).
    pub train_neg: usize,
    pub test_pos: usize,
    pub test_neg: usize,
}

impl BenchmarkSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        let (train_pos, train_neg, test_pos, test_neg) = match family {
            Family::Robot(k) => (10, k.saturating_sub(1), 100, 100),
            Family::KthElement(_) => (1, 25, 10, 250),
            Family::Puzzle(_) => (10, 10, 1000, 1000),
        };
        BenchmarkSpec { family, seed, train_pos, train_neg, test_pos, test_neg }
    }
}

/// A training task plus held-out examples.
#[derive(Clone, Debug)]
pub struct Benchmark {
    pub text: String,
    pub task: TaskInstance,
    pub test_pos: Vec<GroundAtom>,
    pub test_neg: Vec<GroundAtom>,
}

impl Benchmark {
    /// Held-out examples in the task-file grammar.
    pub fn test_text(&self) -> String {
        let mut s = String::new();
        for e in &self.test_pos {
            let _ = writeln!(s, "pos({e}).");
        }
        for e in &self.test_neg {
            let _ = writeln!(s, "neg({e}).");
        }
        s
    }
}

/// Generates a benchmark; identical specs give identical output.
pub fn generate_benchmark(spec: &BenchmarkSpec) -> Result<Benchmark, BenchError> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (text, test_pos, test_neg) = match spec.family {
        Family::Robot(k) => robot(spec, k, &mut rng)?,
        Family::KthElement(k) => kth(spec, k, &mut rng)?,
        Family::Puzzle(p) => puzzle(spec, p, &mut rng),
    };
    let task = parse_task(&text)?;
    Ok(Benchmark { text, task, test_pos, test_neg })
}

type Generated = (String, Vec<GroundAtom>, Vec<GroundAtom>);

fn push_examples(s: &mut String, pos: &[GroundAtom], neg: &[GroundAtom]) {
    for e in pos {
        let _ = writeln!(s, "pos({e}).");
    }
    for e in neg {
        let _ = writeln!(s, "neg({e}).");
    }
}

fn robot_atom(x: i64, y: i64, dx: i64) -> GroundAtom {
    let at = |x| GroundTerm::pair(GroundTerm::Int(x), GroundTerm::Int(y));
    GroundAtom::new("f", vec![at(x), at(x + dx)])
}

fn robot(spec: &BenchmarkSpec, k: usize, rng: &mut ChaCha8Rng) -> Result<Generated, BenchError> {
    if k == 0 {
        return Err(BenchError::ZeroK);
    }
    if k as i64 >= GRID {
        return Err(BenchError::RobotTooFar(k));
    }
    let k = k as i64;
    let start = |rng: &mut ChaCha8Rng| (rng.gen_range(0..=GRID - k), rng.gen_range(0..=GRID));
    let starts: Vec<(i64, i64)> = (0..spec.train_pos.max(1)).map(|_| start(rng)).collect();
    let pos: Vec<GroundAtom> = starts.iter().take(spec.train_pos).map(|&(x, y)| robot_atom(x, y, k)).collect();
    // Negatives move i < k steps from the positives' start states.
    let neg: Vec<GroundAtom> = (1..k)
        .map(|i| {
            let (x, y) = starts[(i as usize - 1) % starts.len()];
            robot_atom(x, y, i)
        })
        .collect();
    let test_pos = (0..spec.test_pos)
        .map(|_| {
            let (x, y) = start(rng);
            robot_atom(x, y, k)
        })
        .collect();
    let test_neg = (0..spec.test_neg)
        .map(|_| {
            let (x, y) = start(rng);
            let mut d = rng.gen_range(0..=(2 * k).min(GRID - x));
            if d == k {
                d = 0;
            }
            robot_atom(x, y, d)
        })
        .collect();
    let mut s = String::from(
        "head_pred(f,2). body_pred(right,2). builtin(right). direction(f,(in,out)).\n\
         setting(max_vars,6). setting(max_body,5). setting(max_clauses,3).\n\
         setting(enable_recursion,false). setting(enable_pi,true).\n",
    );
    push_examples(&mut s, &pos, &neg);
    Ok((s, test_pos, test_neg))
}

const LETTERS: &str = "abcdefghijklmnopqrstuvwxyz";

fn permutation(rng: &mut ChaCha8Rng) -> Vec<GroundTerm> {
    let mut v: Vec<GroundTerm> = LETTERS.chars().map(|c| GroundTerm::atom(&c.to_string())).collect();
    v.shuffle(rng);
    v
}

/// One positive for the kth letter of `l`, negatives for every other letter.
fn kth_examples(l: &[GroundTerm], k: usize) -> (GroundAtom, Vec<GroundAtom>) {
    let list = GroundTerm::list(l.to_vec());
    let ex = |x: &GroundTerm| GroundAtom::new("f", vec![list.clone(), x.clone()]);
    let neg = l.iter().enumerate().filter(|(i, _)| *i != k - 1).map(|(_, x)| ex(x)).collect();
    (ex(&l[k - 1]), neg)
}

fn kth(spec: &BenchmarkSpec, k: usize, rng: &mut ChaCha8Rng) -> Result<Generated, BenchError> {
    if k == 0 || k > LETTERS.len() {
        return Err(BenchError::KthOutOfRange(k));
    }
    let (pos, neg) = kth_examples(&permutation(rng), k);
    let (mut test_pos, mut test_neg) = (Vec::new(), Vec::new());
    for _ in 0..spec.test_pos {
        let (p, n) = kth_examples(&permutation(rng), k);
        test_pos.push(p);
        test_neg.extend(n);
    }
    test_neg.truncate(spec.test_neg);
    let mut s = String::from(
        "head_pred(f,2). body_pred(head,2). body_pred(tail,2). builtin(head). builtin(tail).\n\
         type(f,(list,letter)). type(head,(list,letter)). type(tail,(list,list)). direction(f,(in,out)).\n\
         setting(max_vars,6). setting(max_body,5). setting(max_clauses,3).\n\
         setting(enable_recursion,false). setting(enable_pi,true).\n",
    );
    push_examples(&mut s, &[pos], &neg);
    Ok((s, test_pos, test_neg))
}

fn builtin_type(name: &str) -> &'static str {
    match name {
        "head" | "member" => "list,int",
        "tail" => "list,list",
        "decrement" | "increment" | "geq" => "int,int",
        "empty" => "list",
        "cons" => "int,list,list",
        _ => "int",
    }
}

fn puzzle(spec: &BenchmarkSpec, p: Puzzle, rng: &mut ChaCha8Rng) -> Generated {
    let mut seen: BTreeSet<GroundAtom> = BTreeSet::new();
    let mut draw = |rng: &mut ChaCha8Rng, n: usize, positive: bool| {
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let args = if positive { p.positive(rng) } else { p.negative_candidate(rng) };
            if p.holds(&args) != positive {
                continue;
            }
            let atom = puzzles::to_atom(p, &args);
            // Train and test sets never share an atom.
            if seen.insert(atom.clone()) {
                out.push(atom);
            }
        }
        out
    };
    let pos = draw(rng, spec.train_pos, true);
    let neg = draw(rng, spec.train_neg, false);
    let test_pos = draw(rng, spec.test_pos, true);
    let test_neg = draw(rng, spec.test_neg, false);

    let name = p.name();
    let arity = p.signature().len();
    let mut s = String::new();
    let _ = writeln!(s, "head_pred({name},{arity}).");
    let _ = writeln!(s, "type({name},({})).", p.signature().join(","));
    let _ = writeln!(s, "direction({name},({})).", p.directions().join(","));
    for b in p.builtins() {
        let ty = builtin_type(b);
        let _ = writeln!(s, "body_pred({b},{}). type({b},({ty})). builtin({b}).", ty.split(',').count());
    }
    s.push_str(
        "setting(max_vars,5). setting(max_body,5). setting(max_clauses,2).\n\
         setting(enable_recursion,true). setting(enable_pi,true).\n",
    );
    push_examples(&mut s, &pos, &neg);
    (s, test_pos, test_neg)
}

/// Fraction of held-out examples classified correctly. A positive counts
/// when entailed, a negative when refuted; timeouts count as wrong. The
/// program runs with its clause bodies in the order given.
pub fn evaluate(
    solution: &Program,
    kb: &KnowledgeBase,
    test_pos: &[GroundAtom],
    test_neg: &[GroundAtom],
    limits: &EvalLimits,
) -> Result<f64, InterpError> {
    let total = test_pos.len() + test_neg.len();
    if total == 0 {
        return Ok(1.0);
    }
    let prep = Prepared::new(kb, solution);
    let mut right = 0;
    for e in test_pos {
        right += (prep.entails(e, limits)? == Verdict::True) as usize;
    }
    for e in test_neg {
        right += (prep.entails(e, limits)? == Verdict::False) as usize;
    }
    Ok(right as f64 / total as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_program;

    #[test]
    fn robot_four() {
        let b = generate_benchmark(&BenchmarkSpec::new(Family::Robot(4), 7)).unwrap();
        assert_eq!(b.task.pos.len(), 10);
        assert_eq!(b.task.neg.len(), 3);
        let dx = |e: &GroundAtom| {
            let x = |t: &GroundTerm| t.as_pair().unwrap().0.as_int().unwrap();
            x(&e.args[1]) - x(&e.args[0])
        };
        assert!(b.task.pos.iter().all(|e| dx(e) == 4));
        assert_eq!(b.task.neg.iter().map(dx).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert!(b.test_neg.iter().all(|e| dx(e) != 4));
    }

    #[test]
    fn rejects_bad_k() {
        assert!(matches!(
            generate_benchmark(&BenchmarkSpec::new(Family::Robot(100), 1)),
            Err(BenchError::RobotTooFar(100))
        ));
        assert!(matches!(generate_benchmark(&BenchmarkSpec::new(Family::Robot(0), 1)), Err(BenchError::ZeroK)));
        assert!(generate_benchmark(&BenchmarkSpec::new(Family::KthElement(27), 1)).is_err());
    }

    #[test]
    fn kth_second_letter() {
        let b = generate_benchmark(&BenchmarkSpec::new(Family::KthElement(2), 3)).unwrap();
        let e = &b.task.pos[0];
        assert_eq!(&e.args[1], &e.args[0].as_list().unwrap().as_slice()[1]);
        assert_eq!(b.task.neg.len(), 25);
    }

    #[test]
    fn empty_program_scores_half() {
        let b = generate_benchmark(&BenchmarkSpec::new(Family::Puzzle(Puzzle::Last), 1)).unwrap();
        let kb = b.task.kb().unwrap();
        let acc = evaluate(&Program::new(vec![]), &kb, &b.test_pos, &b.test_neg, &EvalLimits::default()).unwrap();
        assert_eq!(acc, 0.5);
        let last = parse_program(Puzzle::Last.reference(), "last").unwrap();
        let acc = evaluate(&last, &kb, &b.test_pos, &b.test_neg, &EvalLimits::default()).unwrap();
        assert_eq!(acc, 1.0);
    }
}
