//! Oracles and instance generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::{Duration, Instant};

use lff::bias::{parse_bias, Bias};
use lff::generator::{is_structurally_valid, new_generator, GeneratorConfig};
use lff::interp::{entails, EvalLimits, Verdict};
use lff::logic::{canonicalise, canonicalise_clause, parse_program, Clause, Literal, Predicate, Program, Var};
use lff::task::parse_task;
use lff::term::GroundAtom;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const GRANDPARENT: &str = include_str!("../../../../tasks/grandparent.task");
pub const GRANDPARENT_FLAT: &str = include_str!("../../../../tasks/grandparent_flat.task");
pub const METARULES_FLAT: &str = include_str!("../../../../tasks/metarules/nonrecursive.pl");
pub const METARULES_REC: &str = include_str!("../../../../tasks/metarules/recursive.pl");

/// Micro-biases small enough to enumerate by brute force.
pub fn micro_biases() -> Vec<(&'static str, Bias, usize)> {
    let pi = parse_bias(
        "head_pred(f,2). body_pred(p,2). body_pred(q,1).
         direction(f,(in,out)). direction(p,(in,out)). direction(q,(in)).
         setting(max_vars,3). setting(max_body,2). setting(max_clauses,2).
         setting(enable_pi,true). setting(enable_recursion,false).",
    )
    .unwrap();
    let rec = parse_bias(
        "head_pred(f,2). body_pred(p,2). body_pred(e,1).
         direction(f,(in,out)). direction(p,(in,out)). direction(e,(in)).
         setting(max_vars,3). setting(max_body,3). setting(max_clauses,2).
         setting(enable_pi,false). setting(enable_recursion,true).",
    )
    .unwrap();
    let typed = parse_bias(
        "head_pred(f,1). body_pred(head,2). body_pred(tail,2). body_pred(even,1). body_pred(empty,1).
         type(f,(list)). type(head,(list,int)). type(tail,(list,list)). type(even,(int)). type(empty,(list)).
         direction(f,(in)). direction(head,(in,out)). direction(tail,(in,out)).
         direction(even,(in)). direction(empty,(in)).
         setting(max_vars,3). setting(max_body,2). setting(max_clauses,2).
         setting(enable_pi,true). setting(enable_recursion,true).",
    )
    .unwrap();
    let two_invented = parse_bias(
        "head_pred(f,2). body_pred(right,2). direction(f,(in,out)). direction(right,(in,out)).
         setting(max_vars,2). setting(max_body,2). setting(max_clauses,3).
         setting(enable_pi,true). setting(enable_recursion,false).",
    )
    .unwrap();
    vec![("pi", pi, 6), ("recursion", rec, 7), ("typed", typed, 6), ("two_invented", two_invented, 8)]
}

fn tuples(arity: usize, vars: usize) -> Vec<Vec<Var>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..vars).map(move |v| {
                    let mut t = t.clone();
                    t.push(Var(v as u8));
                    t
                })
            })
            .collect();
    }
    out
}

fn subsets<T: Clone>(items: &[T], max: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    fn go<T: Clone>(items: &[T], start: usize, max: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            go(items, i + 1, max, cur, out);
            cur.pop();
        }
    }
    go(items, 0, max, &mut Vec::new(), &mut out);
    out
}

/// Every program of cost at most `max_literals` that the bias admits, in
/// canonical form. Enumerates all literal sets and clause sets directly and
/// filters them through [`is_structurally_valid`].
pub fn brute_force_space(bias: &Bias, max_literals: usize) -> HashSet<Program> {
    let mut heads = vec![bias.target()];
    heads.extend(bias.invented_symbols());
    let mut callable: Vec<Predicate> = heads.clone();
    callable.extend(bias.body_predicates());
    let mut lits = Vec::new();
    for p in &callable {
        for args in tuples(p.arity(), bias.max_vars) {
            lits.push(Literal::new(p.clone(), args));
        }
    }
    let mut clauses: HashSet<Clause> = HashSet::new();
    for h in &heads {
        let head = Literal::new(h.clone(), (0..h.arity()).map(|i| Var(i as u8)).collect());
        for body in subsets(&lits, bias.max_body) {
            let c = Clause::new(head.clone(), body);
            if c.check().is_ok() && c.num_vars() <= bias.max_vars && 1 + c.body.len() < max_literals + 1 {
                clauses.insert(canonicalise_clause(&c));
            }
        }
    }
    let clauses: Vec<Clause> = clauses.into_iter().collect();
    let mut out = HashSet::new();
    let mut cur = Vec::new();
    fn go(
        bias: &Bias,
        room: usize,
        clauses: &[Clause],
        start: usize,
        cur: &mut Vec<Clause>,
        out: &mut HashSet<Program>,
    ) {
        if !cur.is_empty() {
            let p = Program::new(cur.clone());
            if is_structurally_valid(bias, &p) {
                out.insert(canonicalise(&p));
            }
        }
        if cur.len() == bias.max_clauses {
            return;
        }
        for i in start..clauses.len() {
            if clauses[i].size() <= room {
                cur.push(clauses[i].clone());
                go(bias, room - clauses[i].size(), clauses, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    go(bias, max_literals, &clauses, 0, &mut cur, &mut out);
    out
}

/// Everything the generator yields with no constraints, in order.
pub fn drain_generator(bias: &Bias, max_literals: usize) -> Vec<Program> {
    let mut g = new_generator(GeneratorConfig { bias: bias.clone(), max_literals });
    std::iter::from_fn(|| g.next_program()).collect()
}

// Interpreter oracle instances.

pub const CONSTANTS: usize = 6;

/// A random knowledge base, program and goals with guaranteed SLD
/// termination: `p` only links smaller constants to larger ones and every
/// recursive call takes its first argument from a `p` step.
pub struct InterpInstance {
    pub task: String,
    pub program: String,
    pub goals: Vec<String>,
    /// Facts and rules as (head, body) over variables `V0..` and constants.
    pub rules: Vec<(Atom, Vec<Atom>)>,
}

/// A datalog atom: predicate and arguments, where arguments are constants
/// (`c0`..) or variables (`V0`..).
pub type Atom = (String, Vec<String>);

fn c(i: usize) -> String {
    format!("c{i}")
}

fn v(i: usize) -> String {
    ["A", "B", "C", "D"][i].to_string()
}

fn render(a: &Atom) -> String {
    format!("{}({})", a.0, a.1.join(","))
}

fn random_body(rng: &mut impl Rng, callees: &[(&str, usize)], head_vars: usize, len: usize) -> Vec<Atom> {
    let nvars = head_vars + rng.gen_range(0..=4 - head_vars);
    let mut body: Vec<Atom> = (0..len)
        .map(|_| {
            let (name, arity) = callees[rng.gen_range(0..callees.len())];
            (name.to_string(), (0..arity).map(|_| v(rng.gen_range(0..nvars))).collect())
        })
        .collect();
    // Safe clauses: every head variable occurs in the body.
    for hv in 0..head_vars {
        if !body.iter().any(|(_, args)| args.contains(&v(hv))) {
            let (name, arity) = *callees.iter().find(|(_, a)| *a == 2).unwrap();
            let mut args: Vec<String> = (0..arity).map(|_| v(rng.gen_range(0..nvars))).collect();
            args[rng.gen_range(0..arity)] = v(hv);
            body.push((name.to_string(), args));
        }
    }
    body
}

type Rule = (Atom, Vec<Atom>);

fn define(rng: &mut impl Rng, hyp: &mut Vec<Rule>, name: &str, callees: &[(&str, usize)], clauses: usize) {
    let head: Atom = (name.to_string(), vec![v(0), v(1)]);
    for i in 0..clauses {
        let recursive = i > 0 && rng.gen_bool(0.5);
        let len = rng.gen_range(1..=2);
        let mut body = random_body(rng, callees, 2, len);
        if recursive {
            body.insert(0, ("p".into(), vec![v(0), v(2)]));
            body.push((name.to_string(), vec![v(2), v(1)]));
        }
        hyp.push((head.clone(), body));
    }
}

pub fn interp_instance(rng: &mut impl Rng) -> InterpInstance {
    let mut rules: Vec<(Atom, Vec<Atom>)> = Vec::new();
    let mut task = String::from("head_pred(f,2). body_pred(p,2). body_pred(q,2). body_pred(r,1). body_pred(s,2).\n");
    let fact = |rules: &mut Vec<(Atom, Vec<Atom>)>, task: &mut String, a: Atom| {
        task.push_str(&format!("bk_fact({}).\n", render(&a)));
        rules.push((a, Vec::new()));
    };
    for _ in 0..rng.gen_range(3..9) {
        let x = rng.gen_range(0..CONSTANTS - 1);
        let y = rng.gen_range(x + 1..CONSTANTS);
        fact(&mut rules, &mut task, ("p".into(), vec![c(x), c(y)]));
    }
    for _ in 0..rng.gen_range(2..8) {
        fact(&mut rules, &mut task, ("q".into(), vec![c(rng.gen_range(0..CONSTANTS)), c(rng.gen_range(0..CONSTANTS))]));
    }
    for _ in 0..rng.gen_range(1..4) {
        fact(&mut rules, &mut task, ("r".into(), vec![c(rng.gen_range(0..CONSTANTS))]));
    }
    let s = (
        ("s".to_string(), vec![v(0), v(1)]),
        vec![("p".to_string(), vec![v(0), v(2)]), ("q".to_string(), vec![v(2), v(1)])],
    );
    task.push_str(&format!(
        "bk_clause({} :- {}).\n",
        render(&s.0),
        s.1.iter().map(render).collect::<Vec<_>>().join(",")
    ));
    rules.push(s);

    let with_inv = rng.gen_bool(0.5);
    let bk: [(&str, usize); 4] = [("p", 2), ("q", 2), ("r", 1), ("s", 2)];
    let mut hyp: Vec<(Atom, Vec<Atom>)> = Vec::new();
    if with_inv {
        let n = rng.gen_range(1..=2);
        define(rng, &mut hyp, "inv1", &bk, n);
        let callees: Vec<(&str, usize)> = bk.iter().copied().chain([("inv1", 2)]).collect();
        let n = rng.gen_range(1..=2);
        define(rng, &mut hyp, "f", &callees, n);
    } else {
        let n = rng.gen_range(1..=3);
        define(rng, &mut hyp, "f", &bk, n);
    }
    let program = hyp
        .iter()
        .map(|(h, b)| format!("{} :- {}.", render(h), b.iter().map(render).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join("\n");
    rules.extend(hyp);
    let goals =
        (0..4).map(|_| format!("f({},{})", c(rng.gen_range(0..CONSTANTS)), c(rng.gen_range(0..CONSTANTS)))).collect();
    InterpInstance { task, program, goals, rules }
}

/// Runs `n` random instances; returns (mismatches, slowest query).
pub fn interp_mismatches(n: usize, seed: u64) -> (Vec<String>, Duration) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let limits = EvalLimits::default();
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for _ in 0..n {
        let inst = interp_instance(&mut rng);
        let kb = parse_task(&inst.task).unwrap().kb().unwrap();
        let prog = parse_program(&inst.program, "f").unwrap();
        let model = forward_chain(&inst.rules);
        for g in &inst.goals {
            let start = Instant::now();
            let v = entails(&kb, &prog, &GroundAtom::parse(g).unwrap(), &limits).unwrap();
            slowest = slowest.max(start.elapsed());
            let want = model.contains(&oracle_atom(g));
            if v != if want { Verdict::True } else { Verdict::False } {
                bad.push(format!("{g}: {v:?}, oracle {want}\n{}\n{}", inst.program, inst.task));
            }
        }
    }
    (bad, slowest)
}

/// Least Herbrand model of function-free rules by naive iteration.
pub fn forward_chain(rules: &[(Atom, Vec<Atom>)]) -> BTreeSet<Atom> {
    let mut model: BTreeSet<Atom> = BTreeSet::new();
    loop {
        let mut new = Vec::new();
        for (head, body) in rules {
            let mut envs: Vec<BTreeMap<String, String>> = vec![BTreeMap::new()];
            for lit in body {
                let mut next = Vec::new();
                for env in &envs {
                    for fact in model.iter().filter(|f| f.0 == lit.0 && f.1.len() == lit.1.len()) {
                        let mut e = env.clone();
                        let ok = lit.1.iter().zip(&fact.1).all(|(a, val)| {
                            if a.starts_with('c') {
                                return a == val;
                            }
                            match e.get(a) {
                                Some(bound) => bound == val,
                                None => {
                                    e.insert(a.clone(), val.clone());
                                    true
                                }
                            }
                        });
                        if ok {
                            next.push(e);
                        }
                    }
                }
                envs = next;
            }
            for env in envs {
                let args = head.1.iter().map(|a| env.get(a).cloned().unwrap_or_else(|| a.clone())).collect();
                let atom = (head.0.clone(), args);
                if !model.contains(&atom) {
                    new.push(atom);
                }
            }
        }
        if new.is_empty() {
            return model;
        }
        model.extend(new);
    }
}

/// Parses `f(c1,c2)` into the oracle's atom form.
pub fn oracle_atom(s: &str) -> Atom {
    let (name, rest) = s.split_once('(').unwrap();
    (name.to_string(), rest.trim_end_matches(')').split(',').map(str::to_string).collect())
}

// Learning micro-instances for comparing constraint pruning with plain
// generate-and-test.

pub struct MicroTask {
    pub name: String,
    pub text: String,
}

/// A family-tree style task whose examples come from a random target
/// program of the bias's own space, so a solution always exists.
pub fn micro_task(rng: &mut impl Rng, index: usize) -> MicroTask {
    let kinds = [
        ("pi", "setting(enable_pi,true). setting(enable_recursion,false). setting(max_clauses,3). setting(max_body,2). setting(max_vars,3).", 7),
        ("flat", "setting(enable_pi,false). setting(enable_recursion,false). setting(max_clauses,3). setting(max_body,2). setting(max_vars,3).", 9),
        ("rec", "setting(enable_pi,false). setting(enable_recursion,true). setting(max_clauses,2). setting(max_body,3). setting(max_vars,3).", 7),
    ];
    let (kind, settings, max_literals) = kinds[index % kinds.len()];
    let decl = format!(
        "head_pred(f,2). body_pred(m,2). body_pred(d,2). body_pred(g,1).\n{settings} setting(max_literals,{max_literals}).\n"
    );
    let bias = parse_bias(&decl).unwrap();
    let space = drain_generator(&bias, max_literals);
    let mut text = decl.clone();
    let mut facts: Vec<Atom> = Vec::new();
    for _ in 0..rng.gen_range(5..10) {
        let x = rng.gen_range(0..CONSTANTS - 1);
        let y = rng.gen_range(x + 1..CONSTANTS);
        let rel = if rng.gen_bool(0.5) { "m" } else { "d" };
        facts.push((rel.into(), vec![c(x), c(y)]));
    }
    for _ in 0..rng.gen_range(1..4) {
        facts.push(("g".into(), vec![c(rng.gen_range(0..CONSTANTS))]));
    }
    facts.sort();
    facts.dedup();
    for f in &facts {
        text.push_str(&format!("bk_fact({}).\n", render(f)));
    }
    // Pick a target whose extension is neither empty nor everything.
    let base: Vec<(Atom, Vec<Atom>)> = facts.iter().map(|f| (f.clone(), Vec::new())).collect();
    let all: Vec<Atom> =
        (0..CONSTANTS).flat_map(|x| (0..CONSTANTS).map(move |y| ("f".to_string(), vec![c(x), c(y)]))).collect();
    loop {
        let target = space.choose(rng).unwrap();
        let mut rules = base.clone();
        rules.extend(target.clauses.iter().map(clause_rule));
        let model = forward_chain(&rules);
        let pos: Vec<&Atom> = all.iter().filter(|a| model.contains(*a)).collect();
        let neg: Vec<&Atom> = all.iter().filter(|a| !model.contains(*a)).collect();
        if pos.is_empty() || neg.len() < 2 {
            continue;
        }
        // Odd instances label the whole Herbrand base, even ones a sample.
        let (np, nn) = if index % 2 == 1 { (pos.len(), neg.len()) } else { (4, 6) };
        for a in pos.choose_multiple(rng, np) {
            text.push_str(&format!("pos({}).\n", render(a)));
        }
        for a in neg.choose_multiple(rng, nn) {
            text.push_str(&format!("neg({}).\n", render(a)));
        }
        return MicroTask { name: format!("{kind}#{index} target {}", target.to_string().replace('\n', " ")), text };
    }
}

/// A hypothesis clause as an oracle rule.
pub fn clause_rule(c: &Clause) -> (Atom, Vec<Atom>) {
    let lit =
        |l: &Literal| -> Atom { (l.pred.name().to_string(), l.args.iter().map(|a| format!("V{}", a.0)).collect()) };
    (lit(&c.head), c.body.iter().map(lit).collect())
}

pub struct SoundnessRun {
    pub name: String,
    pub space: usize,
    pub with_constraints: Option<usize>,
    pub without: Option<usize>,
    pub tested_with: u64,
    pub tested_without: u64,
}

/// Learns `n` random micro tasks with and without constraint learning.
pub fn soundness_runs(n: usize, seed: u64) -> Vec<SoundnessRun> {
    use lff::learner::{learn_loop, LearnerInput, Status};
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let t = micro_task(&mut rng, i);
            let task = parse_task(&t.text).unwrap();
            let mut input = LearnerInput::from_task(&task).unwrap();
            input.wall_budget = Duration::from_secs(120);
            let space = drain_generator(&input.bias, input.max_literals).len();
            let run = |constraints: bool| {
                let mut inp = input.clone();
                inp.learn_constraints = constraints;
                let r = learn_loop(&inp).unwrap();
                assert_ne!(r.status, Status::BudgetExceeded, "{}", t.name);
                (r.solution.as_ref().map(lff::logic::cost), r.stats.programs_tested)
            };
            let (with_constraints, tested_with) = run(true);
            let (without, tested_without) = run(false);
            SoundnessRun { name: t.name, space, with_constraints, without, tested_with, tested_without }
        })
        .collect()
}
