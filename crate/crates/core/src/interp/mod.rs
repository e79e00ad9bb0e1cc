//! SLD resolution over hypotheses, background clauses and builtin relations.

mod builtins;

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use web_time::Instant;

pub use builtins::{Builtin, GRID_MAX};

use crate::bias::Bias;
use crate::logic::{PredKind, Program};
use crate::syntax::Term;
use crate::term::{GroundAtom, GroundTerm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InterpError {
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("background clause uses undeclared predicate {0}")]
    UndeclaredPredicate(String),
    #[error("background clause `{clause}`: {reason}")]
    BadClause { clause: String, reason: String },
    #[error("argument {position} of {pred} is unbound at call time")]
    ModeViolation { pred: String, position: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvalLimits {
    pub timeout: Duration,
    pub max_steps: u64,
    /// Deepest allowed chain of nested calls. Exceeding it ends the query
    /// as a timeout, which catches left recursion long before `max_steps`.
    pub max_depth: u32,
}

impl Default for EvalLimits {
    fn default() -> Self {
        EvalLimits { timeout: Duration::from_millis(100), max_steps: 100_000, max_depth: 2_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Timeout,
}

/// Test result of one hypothesis on the training examples.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub pos_entailed: usize,
    pub pos_total: usize,
    pub neg_entailed: usize,
    pub neg_total: usize,
    /// Examples whose evaluation hit a limit; counted as not entailed.
    pub timeouts: usize,
}

impl Outcome {
    pub fn complete(&self) -> bool {
        self.pos_entailed == self.pos_total
    }

    pub fn consistent(&self) -> bool {
        self.neg_entailed == 0
    }

    pub fn totally_incomplete(&self) -> bool {
        self.pos_entailed == 0
    }
}

/// A background clause as read from a task file: `head :- body` or a fact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BkClause {
    pub head: Term,
    pub body: Vec<Term>,
}

#[derive(Clone, Debug)]
enum Pat {
    Var(u8),
    Val(GroundTerm),
}

#[derive(Clone, Copy, Debug)]
enum Callee {
    Hyp(u32),
    Kb(u32),
    Builtin(Builtin),
    Undefined,
}

#[derive(Clone, Debug)]
struct CLit {
    callee: Callee,
    name: Rc<str>,
    args: Vec<Pat>,
}

#[derive(Clone, Debug)]
struct CClause {
    nvars: usize,
    head: Vec<Pat>,
    body: Vec<CLit>,
}

#[derive(Clone, Debug, Default)]
struct PredDef {
    clauses: Vec<CClause>,
    all: Vec<usize>,
    /// First-argument index, built only when every clause is a ground fact.
    index: Option<HashMap<GroundTerm, Vec<usize>>>,
}

impl PredDef {
    fn build_index(&mut self) {
        self.all = (0..self.clauses.len()).collect();
        let ground_facts =
            self.clauses.iter().all(|c| c.body.is_empty() && matches!(c.head.first(), Some(Pat::Val(_))));
        if ground_facts && !self.clauses.is_empty() {
            let mut index: HashMap<GroundTerm, Vec<usize>> = HashMap::new();
            for (i, c) in self.clauses.iter().enumerate() {
                if let Some(Pat::Val(t)) = c.head.first() {
                    index.entry(t.clone()).or_default().push(i);
                }
            }
            self.index = Some(index);
        }
    }
}

/// Background knowledge: selected builtins plus compiled fact/rule clauses.
#[derive(Clone, Debug, Default)]
pub struct KnowledgeBase {
    builtins: BTreeSet<Builtin>,
    preds: Vec<PredDef>,
    ids: HashMap<(String, usize), u32>,
}

fn var_index(names: &mut Vec<String>, v: &str) -> Result<u8, String> {
    let i = match names.iter().position(|n| n == v) {
        Some(i) => i,
        None => {
            names.push(v.to_string());
            names.len() - 1
        }
    };
    u8::try_from(i).map_err(|_| "too many variables".to_string())
}

fn pattern(names: &mut Vec<String>, t: &Term) -> Result<Pat, String> {
    match t {
        Term::Var(v) => Ok(Pat::Var(var_index(names, v)?)),
        other => GroundTerm::from_term(other).map(Pat::Val),
    }
}

fn atom_parts(t: &Term) -> Result<(&str, &[Term]), String> {
    match t {
        Term::Atom(a) => Ok((a, &[])),
        Term::Compound(f, args) => Ok((f, args)),
        other => Err(format!("`{other}` is not an atom")),
    }
}

impl KnowledgeBase {
    pub fn builtins(&self) -> &BTreeSet<Builtin> {
        &self.builtins
    }

    fn resolve_bk(&self, name: &str, arity: usize) -> Option<Callee> {
        if let Some(b) = Builtin::from_name(name) {
            if b.arity() == arity && self.builtins.contains(&b) {
                return Some(Callee::Builtin(b));
            }
        }
        self.ids.get(&(name.to_string(), arity)).map(|&i| Callee::Kb(i))
    }
}

/// Builds a knowledge base from builtin selections and background clauses.
/// Every predicate in a background clause must be a declared body predicate
/// or a selected builtin, and no background clause may define the target.
pub fn load_kb(bias: &Bias, builtins: &[String], bk: &[BkClause]) -> Result<KnowledgeBase, InterpError> {
    let mut kb = KnowledgeBase::default();
    for name in builtins {
        let b = Builtin::from_name(name).ok_or_else(|| InterpError::UnknownBuiltin(name.clone()))?;
        kb.builtins.insert(b);
    }
    let declared = |name: &str, arity: usize| {
        bias.body_preds.contains(&(name.to_string(), arity))
            || Builtin::from_name(name).is_some_and(|b| b.arity() == arity && kb.builtins.contains(&b))
    };
    let bad = |c: &BkClause, reason: String| InterpError::BadClause { clause: render(c), reason };
    // Register heads first so rules may call predicates defined further down.
    for c in bk {
        let (name, args) = atom_parts(&c.head).map_err(|r| bad(c, r))?;
        if bias.head_preds.contains(&(name.to_string(), args.len())) {
            return Err(bad(c, "background knowledge cannot define the target".into()));
        }
        if name.strip_prefix("inv").is_some_and(|d| d.parse::<u32>().is_ok()) {
            return Err(bad(c, "names inv1, inv2, ... are reserved for invented predicates".into()));
        }
        if Builtin::from_name(name).is_some_and(|b| b.arity() == args.len() && kb.builtins.contains(&b)) {
            return Err(bad(c, format!("{name}/{} is a selected builtin", args.len())));
        }
        if !declared(name, args.len()) {
            return Err(InterpError::UndeclaredPredicate(format!("{name}/{}", args.len())));
        }
        let key = (name.to_string(), args.len());
        if !kb.ids.contains_key(&key) {
            kb.ids.insert(key, kb.preds.len() as u32);
            kb.preds.push(PredDef::default());
        }
    }
    for c in bk {
        let (name, args) = atom_parts(&c.head).map_err(|r| bad(c, r))?;
        let mut names = Vec::new();
        let head = args.iter().map(|a| pattern(&mut names, a)).collect::<Result<Vec<_>, _>>().map_err(|r| bad(c, r))?;
        let head_vars = names.len();
        let mut body = Vec::new();
        for lit in &c.body {
            let (bname, bargs) = atom_parts(lit).map_err(|r| bad(c, r))?;
            if !declared(bname, bargs.len()) {
                return Err(InterpError::UndeclaredPredicate(format!("{bname}/{}", bargs.len())));
            }
            let callee = kb.resolve_bk(bname, bargs.len()).unwrap_or(Callee::Undefined);
            let args =
                bargs.iter().map(|a| pattern(&mut names, a)).collect::<Result<Vec<_>, _>>().map_err(|r| bad(c, r))?;
            body.push(CLit { callee, name: bname.into(), args });
        }
        // Range restriction keeps every answer ground.
        for v in 0..head_vars as u8 {
            if !body.iter().any(|l| l.args.iter().any(|p| matches!(p, Pat::Var(w) if *w == v))) {
                return Err(bad(c, format!("head variable {} does not occur in the body", names[v as usize])));
            }
        }
        let id = kb.ids[&(name.to_string(), args.len())];
        kb.preds[id as usize].clauses.push(CClause { nvars: names.len(), head, body });
    }
    for p in &mut kb.preds {
        p.build_index();
    }
    Ok(kb)
}

fn render(c: &BkClause) -> String {
    if c.body.is_empty() {
        c.head.to_string()
    } else {
        let body: Vec<String> = c.body.iter().map(Term::to_string).collect();
        format!("{} :- {}", c.head, body.join(","))
    }
}

/// A hypothesis compiled against a knowledge base, ready for queries.
pub struct Prepared<'k> {
    kb: &'k KnowledgeBase,
    hyp: Vec<PredDef>,
    hyp_ids: HashMap<(String, usize), u32>,
}

impl<'k> Prepared<'k> {
    pub fn new(kb: &'k KnowledgeBase, h: &Program) -> Self {
        let mut hyp_ids: HashMap<(String, usize), u32> = HashMap::new();
        let mut hyp: Vec<PredDef> = Vec::new();
        for c in &h.clauses {
            let key = (c.head.pred.name().to_string(), c.head.pred.arity());
            if let std::collections::hash_map::Entry::Vacant(e) = hyp_ids.entry(key) {
                e.insert(hyp.len() as u32);
                hyp.push(PredDef::default());
            }
        }
        for c in &h.clauses {
            let body = c
                .body
                .iter()
                .map(|l| {
                    let key = (l.pred.name().to_string(), l.pred.arity());
                    let callee = match l.pred.kind() {
                        PredKind::Background => kb.resolve_bk(&key.0, key.1).unwrap_or(Callee::Undefined),
                        _ => hyp_ids.get(&key).map(|&i| Callee::Hyp(i)).unwrap_or(Callee::Undefined),
                    };
                    CLit { callee, name: l.pred.name().into(), args: l.args.iter().map(|v| Pat::Var(v.0)).collect() }
                })
                .collect();
            let nvars = c.vars().map(|v| v.index() + 1).max().unwrap_or(0);
            let id = hyp_ids[&(c.head.pred.name().to_string(), c.head.pred.arity())];
            hyp[id as usize].clauses.push(CClause {
                nvars,
                head: c.head.args.iter().map(|v| Pat::Var(v.0)).collect(),
                body,
            });
        }
        for p in &mut hyp {
            p.build_index();
        }
        Prepared { kb, hyp, hyp_ids }
    }

    pub fn entails(&self, goal: &GroundAtom, limits: &EvalLimits) -> Result<Verdict, InterpError> {
        let key = (goal.pred.to_string(), goal.args.len());
        let callee = match self.hyp_ids.get(&key) {
            Some(&i) => Callee::Hyp(i),
            None => self.kb.resolve_bk(&key.0, key.1).unwrap_or(Callee::Undefined),
        };
        let query =
            CLit { callee, name: goal.pred.as_ref().into(), args: goal.args.iter().cloned().map(Pat::Val).collect() };
        Machine::new(self, limits).run(&query)
    }
}

/// Decides whether `kb ∪ h` entails the ground goal within the limits.
pub fn entails(
    kb: &KnowledgeBase,
    h: &Program,
    goal: &GroundAtom,
    limits: &EvalLimits,
) -> Result<Verdict, InterpError> {
    Prepared::new(kb, h).entails(goal, limits)
}

/// Counts entailed positive and negative examples. Timeouts count as not
/// entailed.
pub fn test(
    kb: &KnowledgeBase,
    h: &Program,
    pos: &[GroundAtom],
    neg: &[GroundAtom],
    limits: &EvalLimits,
) -> Result<Outcome, InterpError> {
    let prepared = Prepared::new(kb, h);
    let mut out = Outcome { pos_total: pos.len(), neg_total: neg.len(), ..Outcome::default() };
    for (examples, counter) in [(pos, 0), (neg, 1)] {
        for e in examples {
            match prepared.entails(e, limits)? {
                Verdict::True if counter == 0 => out.pos_entailed += 1,
                Verdict::True => out.neg_entailed += 1,
                Verdict::False => {}
                Verdict::Timeout => out.timeouts += 1,
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Slot {
    Free,
    Bound(GroundTerm),
    Ref(usize),
}

struct Goal<'p> {
    lit: &'p CLit,
    base: usize,
    depth: u32,
    next: Goals<'p>,
}

type Goals<'p> = Option<Rc<Goal<'p>>>;

// Long goal lists would otherwise be freed recursively.
impl Drop for Goal<'_> {
    fn drop(&mut self) {
        let mut next = self.next.take();
        while let Some(rc) = next {
            match Rc::try_unwrap(rc) {
                Ok(mut g) => next = g.next.take(),
                Err(_) => break,
            }
        }
    }
}

enum Alt<'p> {
    Clauses { defs: &'p [CClause], list: &'p [usize], next: usize },
    Solutions { sols: Vec<Vec<GroundTerm>>, next: usize },
}

struct ChoicePoint<'p> {
    lit: &'p CLit,
    base: usize,
    depth: u32,
    cont: Goals<'p>,
    trail_len: usize,
    heap_len: usize,
    alt: Alt<'p>,
}

enum Val {
    Slot(usize),
    Ground(GroundTerm),
}

const CLOCK_EVERY: u64 = 256;

struct Machine<'p> {
    prog: &'p Prepared<'p>,
    limits: &'p EvalLimits,
    heap: Vec<Slot>,
    trail: Vec<usize>,
    cps: Vec<ChoicePoint<'p>>,
    goals: Goals<'p>,
    steps: u64,
    start: Instant,
}

static EMPTY: [usize; 0] = [];

impl<'p> Machine<'p> {
    fn new(prog: &'p Prepared<'p>, limits: &'p EvalLimits) -> Self {
        Machine {
            prog,
            limits,
            heap: Vec::new(),
            trail: Vec::new(),
            cps: Vec::new(),
            goals: None,
            steps: 0,
            start: Instant::now(),
        }
    }

    fn out_of_budget(&mut self) -> bool {
        self.steps += 1;
        if self.steps > self.limits.max_steps {
            return true;
        }
        self.steps.is_multiple_of(CLOCK_EVERY) && self.start.elapsed() > self.limits.timeout
    }

    fn deref(&self, mut i: usize) -> usize {
        while let Slot::Ref(j) = self.heap[i] {
            i = j;
        }
        i
    }

    fn value(&self, p: &Pat, base: usize) -> Val {
        match p {
            Pat::Val(t) => Val::Ground(t.clone()),
            Pat::Var(v) => {
                let i = self.deref(base + *v as usize);
                match &self.heap[i] {
                    Slot::Bound(t) => Val::Ground(t.clone()),
                    _ => Val::Slot(i),
                }
            }
        }
    }

    fn bind(&mut self, i: usize, s: Slot) {
        self.heap[i] = s;
        self.trail.push(i);
    }

    fn unify(&mut self, a: Val, b: Val) -> bool {
        match (a, b) {
            (Val::Ground(x), Val::Ground(y)) => x == y,
            (Val::Slot(i), Val::Ground(t)) | (Val::Ground(t), Val::Slot(i)) => {
                self.bind(i, Slot::Bound(t));
                true
            }
            (Val::Slot(i), Val::Slot(j)) => {
                if i != j {
                    let (young, old) = if i > j { (i, j) } else { (j, i) };
                    self.bind(young, Slot::Ref(old));
                }
                true
            }
        }
    }

    fn run(mut self, query: &'p CLit) -> Result<Verdict, InterpError> {
        self.goals = Some(Rc::new(Goal { lit: query, base: 0, depth: 0, next: None }));
        loop {
            if self.out_of_budget() {
                return Ok(Verdict::Timeout);
            }
            let Some(g) = self.goals.take() else { return Ok(Verdict::True) };
            if g.depth > self.limits.max_depth {
                return Ok(Verdict::Timeout);
            }
            self.call(g.lit, g.base, g.depth, g.next.clone())?;
            match self.resume()? {
                Some(true) => {}
                Some(false) => return Ok(Verdict::False),
                None => return Ok(Verdict::Timeout),
            }
        }
    }

    /// Pushes a choice point holding every way of solving `lit`.
    fn call(&mut self, lit: &'p CLit, base: usize, depth: u32, cont: Goals<'p>) -> Result<(), InterpError> {
        let alt = match lit.callee {
            Callee::Undefined => Alt::Solutions { sols: Vec::new(), next: 0 },
            Callee::Builtin(b) => {
                let vals: Vec<Option<GroundTerm>> = lit
                    .args
                    .iter()
                    .map(|p| match self.value(p, base) {
                        Val::Ground(t) => Some(t),
                        Val::Slot(_) => None,
                    })
                    .collect();
                let refs: Vec<Option<&GroundTerm>> = vals.iter().map(Option::as_ref).collect();
                let sols = b
                    .solve(&refs)
                    .map_err(|position| InterpError::ModeViolation { pred: lit.name.to_string(), position })?;
                Alt::Solutions { sols, next: 0 }
            }
            Callee::Hyp(i) | Callee::Kb(i) => {
                let def: &'p PredDef = match lit.callee {
                    Callee::Hyp(_) => &self.prog.hyp[i as usize],
                    _ => &self.prog.kb.preds[i as usize],
                };
                let list: &'p [usize] = match (&def.index, lit.args.first()) {
                    (Some(index), Some(first)) => match self.value(first, base) {
                        Val::Ground(t) => index.get(&t).map(Vec::as_slice).unwrap_or(&EMPTY),
                        Val::Slot(_) => &def.all,
                    },
                    _ => &def.all,
                };
                Alt::Clauses { defs: &def.clauses, list, next: 0 }
            }
        };
        self.cps.push(ChoicePoint {
            lit,
            base,
            depth,
            cont,
            trail_len: self.trail.len(),
            heap_len: self.heap.len(),
            alt,
        });
        Ok(())
    }

    /// Backtracks into the newest choice point and applies its next
    /// alternative. `Some(false)` when no choice point remains.
    fn resume(&mut self) -> Result<Option<bool>, InterpError> {
        loop {
            if self.out_of_budget() {
                return Ok(None);
            }
            let Some(cp) = self.cps.last_mut() else { return Ok(Some(false)) };
            for &i in &self.trail[cp.trail_len..] {
                if i < cp.heap_len {
                    self.heap[i] = Slot::Free;
                }
            }
            self.trail.truncate(cp.trail_len);
            self.heap.truncate(cp.heap_len);
            let (lit, base, depth, cont) = (cp.lit, cp.base, cp.depth, cp.cont.clone());
            let (step, last) = match &mut cp.alt {
                Alt::Solutions { sols, next } => {
                    let step = sols.get_mut(*next).map(|s| Step::Sol(std::mem::take(s)));
                    *next += 1;
                    (step, *next >= sols.len())
                }
                Alt::Clauses { defs, list, next } => {
                    let defs: &'p [CClause] = defs;
                    let step = list.get(*next).map(|&i| Step::Clause(&defs[i]));
                    *next += 1;
                    (step, *next >= list.len())
                }
            };
            if last {
                self.cps.pop();
            }
            let ok = match step {
                None => continue,
                Some(Step::Sol(sol)) => {
                    let mut ok = true;
                    for (p, t) in lit.args.iter().zip(sol) {
                        let v = self.value(p, base);
                        if !self.unify(v, Val::Ground(t)) {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        self.goals = cont;
                    }
                    ok
                }
                Some(Step::Clause(clause)) => {
                    let frame = self.heap.len();
                    self.heap.resize(frame + clause.nvars, Slot::Free);
                    let mut ok = true;
                    for (goal_arg, head_arg) in lit.args.iter().zip(&clause.head) {
                        let a = self.value(goal_arg, base);
                        let b = self.value(head_arg, frame);
                        if !self.unify(a, b) {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        let mut goals = cont;
                        for b in clause.body.iter().rev() {
                            goals = Some(Rc::new(Goal { lit: b, base: frame, depth: depth + 1, next: goals }));
                        }
                        self.goals = goals;
                    }
                    ok
                }
            };
            if ok {
                return Ok(Some(true));
            }
            // A failed head match may have bound slots; the next iteration
            // restores the state of whichever choice point is now on top.
            if self.cps.is_empty() {
                return Ok(Some(false));
            }
        }
    }
}

enum Step<'p> {
    Sol(Vec<GroundTerm>),
    Clause(&'p CClause),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bias::parse_bias;
    use crate::logic::parse_program;

    fn list_kb() -> (Bias, KnowledgeBase) {
        let b = parse_bias("head_pred(last,2). body_pred(head,2). body_pred(tail,2). body_pred(empty,1).").unwrap();
        let kb = load_kb(&b, &["head".into(), "tail".into(), "empty".into()], &[]).unwrap();
        (b, kb)
    }

    fn last() -> Program {
        parse_program("last(A,B) :- tail(A,C),empty(C),head(A,B). last(A,B) :- tail(A,C),last(C,B).", "last").unwrap()
    }

    #[test]
    fn last_program() {
        let (_, kb) = list_kb();
        let l = EvalLimits::default();
        assert_eq!(entails(&kb, &last(), &GroundAtom::parse("last([a,b,c],c)").unwrap(), &l), Ok(Verdict::True));
        assert_eq!(entails(&kb, &last(), &GroundAtom::parse("last([a,b,c],a)").unwrap(), &l), Ok(Verdict::False));
    }

    #[test]
    fn self_call_times_out() {
        let (_, kb) = list_kb();
        let p = parse_program("last(A,B) :- last(A,B).", "last").unwrap();
        let v = entails(&kb, &p, &GroundAtom::parse("last([a],a)").unwrap(), &EvalLimits::default());
        assert_eq!(v, Ok(Verdict::Timeout));
    }

    #[test]
    fn unknown_builtin() {
        let (b, _) = list_kb();
        assert_eq!(load_kb(&b, &["flurble".into()], &[]).unwrap_err(), InterpError::UnknownBuiltin("flurble".into()));
    }

    #[test]
    fn facts_and_rules() {
        let b = parse_bias("head_pred(f,2). body_pred(mother,2). body_pred(father,2). body_pred(parent,2).").unwrap();
        let st = crate::syntax::parse_statements(
            "bk_fact(mother(ann,amy)). bk_fact(father(bob,amy)). bk_clause(parent(X,Y) :- mother(X,Y)). bk_clause(parent(X,Y) :- father(X,Y)).",
        )
        .unwrap();
        let bk: Vec<BkClause> = st
            .iter()
            .map(|s| match &s.term.args()[0] {
                Term::Rule(h, body) => BkClause { head: (**h).clone(), body: body.clone() },
                t => BkClause { head: t.clone(), body: vec![] },
            })
            .collect();
        let kb = load_kb(&b, &[], &bk).unwrap();
        let p = parse_program("f(A,B) :- parent(A,B).", "f").unwrap();
        let l = EvalLimits::default();
        assert_eq!(entails(&kb, &p, &GroundAtom::parse("f(bob,amy)").unwrap(), &l), Ok(Verdict::True));
        assert_eq!(entails(&kb, &p, &GroundAtom::parse("f(amy,bob)").unwrap(), &l), Ok(Verdict::False));
        let undeclared = [BkClause { head: crate::syntax::parse_term("sister(a,b)").unwrap(), body: vec![] }];
        assert!(matches!(load_kb(&b, &[], &undeclared), Err(InterpError::UndeclaredPredicate(_))));
    }

    #[test]
    fn outcome_flags() {
        let (_, kb) = list_kb();
        let pos = vec![GroundAtom::parse("last([a,b],b)").unwrap()];
        let neg = vec![GroundAtom::parse("last([a,b],a)").unwrap()];
        let out = test(&kb, &last(), &pos, &neg, &EvalLimits::default()).unwrap();
        assert!(out.complete() && out.consistent() && !out.totally_incomplete());
        let nothing = parse_program("last(A,B) :- empty(A),head(A,B).", "last").unwrap();
        assert!(test(&kb, &nothing, &pos, &neg, &EvalLimits::default()).unwrap().totally_incomplete());
    }
}
