//! Hypothesis representation: function-free definite clauses over canonical
//! variables, and the logical algebra over them (subsumption, dependency
//! graphs, contained specialisation, cost).

mod canon;
mod graph;
mod subsume;

use std::fmt;
use std::sync::Arc;

pub use canon::{canonical_body, canonicalise, canonicalise_clause};
pub use graph::{is_separable, p_specialising_clauses, predicate_stats, DependencyGraph, PredicateStats};
pub use subsume::{clause_subsumes, subsumes_atoms, theory_subsumes};

/// Role of a predicate symbol within a task.
///
/// The derived order is the canonical one: the target comes first, invented
/// symbols follow by index, background relations come last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PredKind {
    Target,
    Invented(u32),
    Background,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Predicate {
    kind: PredKind,
    name: Arc<str>,
    arity: usize,
}

impl Predicate {
    pub fn target(name: &str, arity: usize) -> Self {
        Predicate { kind: PredKind::Target, name: name.into(), arity }
    }

    pub fn background(name: &str, arity: usize) -> Self {
        Predicate { kind: PredKind::Background, name: name.into(), arity }
    }

    /// Invented symbols are named `inv1`, `inv2`, ... by index.
    pub fn invented(index: u32, arity: usize) -> Self {
        assert!(index >= 1, "invented predicate indices start at 1");
        Predicate { kind: PredKind::Invented(index), name: format!("inv{index}").into(), arity }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn kind(&self) -> &PredKind {
        &self.kind
    }

    pub fn is_invented(&self) -> bool {
        matches!(self.kind, PredKind::Invented(_))
    }

    pub fn invented_index(&self) -> Option<u32> {
        match self.kind {
            PredKind::Invented(i) => Some(i),
            _ => None,
        }
    }

    pub fn is_target(&self) -> bool {
        self.kind == PredKind::Target
    }

    pub fn key(&self) -> (&str, usize) {
        (&self.name, self.arity)
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// A clause variable. Displayed as `A`, `B`, ... by id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u8);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 < 26 {
            write!(f, "{}", (b'A' + self.0) as char)
        } else {
            write!(f, "V{}", self.0)
        }
    }
}

/// Read access to an atom's predicate and argument variables. Lets the
/// subsumption and canonicalisation routines run on both the public clause
/// type and the generator's compact encoding.
pub trait Atom: Clone + Ord {
    type Pred: Eq + Ord + Clone;
    fn pred(&self) -> &Self::Pred;
    fn args(&self) -> &[Var];
    fn with_args(&self, args: &[Var]) -> Self;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub pred: Predicate,
    pub args: Vec<Var>,
}

impl Literal {
    pub fn new(pred: Predicate, args: Vec<Var>) -> Self {
        assert_eq!(pred.arity(), args.len(), "argument count must equal arity of {pred}");
        Literal { pred, args }
    }
}

impl Atom for Literal {
    type Pred = Predicate;
    fn pred(&self) -> &Predicate {
        &self.pred
    }
    fn args(&self) -> &[Var] {
        &self.args
    }
    fn with_args(&self, args: &[Var]) -> Self {
        Literal { pred: self.pred.clone(), args: args.to_vec() }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pred.name())?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Violations of the clause well-formedness rules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClauseError {
    #[error("clause body is empty")]
    EmptyBody,
    #[error("body literal {0} is identical to the head")]
    HeadInBody(String),
    #[error("head variable {0} does not occur in the body")]
    UnsafeHeadVar(Var),
    #[error("head arguments must be distinct variables")]
    RepeatedHeadVar,
    #[error("variable {0} occurs twice in literal {1}")]
    RepeatedVarInLiteral(Var, String),
    #[error("variable {0} occurs only once")]
    Singleton(Var),
    #[error("body literal {0} occurs twice")]
    DuplicateBodyLiteral(String),
}

/// A definite clause. Body order is execution order; subsumption and
/// canonical forms treat the body as a set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub head: Literal,
    pub body: Vec<Literal>,
}

impl Clause {
    pub fn new(head: Literal, body: Vec<Literal>) -> Self {
        Clause { head, body }
    }

    /// Number of literals, head included.
    pub fn size(&self) -> usize {
        1 + self.body.len()
    }

    /// Number of distinct variables.
    pub fn num_vars(&self) -> usize {
        let mut seen = 0u64;
        let mut extra = std::collections::BTreeSet::new();
        for v in self.vars() {
            if v.0 < 64 {
                seen |= 1 << v.0;
            } else {
                extra.insert(v);
            }
        }
        seen.count_ones() as usize + extra.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.head.args.iter().chain(self.body.iter().flat_map(|l| l.args.iter())).copied()
    }

    /// True iff the head predicate occurs in the body.
    pub fn is_recursive(&self) -> bool {
        self.body.iter().any(|l| l.pred == self.head.pred)
    }

    /// Checks the well-formedness rules every hypothesis clause obeys:
    /// non-empty body, head not repeated in the body, head variables
    /// distinct and all occurring in the body, no variable repeated inside
    /// one literal, no singleton variables, no duplicate body literals.
    pub fn check(&self) -> Result<(), ClauseError> {
        if self.body.is_empty() {
            return Err(ClauseError::EmptyBody);
        }
        for lit in &self.body {
            if *lit == self.head {
                return Err(ClauseError::HeadInBody(lit.to_string()));
            }
        }
        let mut head_seen = std::collections::BTreeSet::new();
        for v in &self.head.args {
            if !head_seen.insert(*v) {
                return Err(ClauseError::RepeatedHeadVar);
            }
        }
        for v in &self.head.args {
            if !self.body.iter().any(|l| l.args.contains(v)) {
                return Err(ClauseError::UnsafeHeadVar(*v));
            }
        }
        for lit in &self.body {
            for (i, v) in lit.args.iter().enumerate() {
                if lit.args[..i].contains(v) {
                    return Err(ClauseError::RepeatedVarInLiteral(*v, lit.to_string()));
                }
            }
        }
        let mut counts = std::collections::BTreeMap::new();
        for v in self.vars() {
            *counts.entry(v).or_insert(0usize) += 1;
        }
        if let Some((v, _)) = counts.iter().find(|(_, &n)| n == 1) {
            return Err(ClauseError::Singleton(*v));
        }
        for (i, lit) in self.body.iter().enumerate() {
            if self.body[..i].contains(lit) {
                return Err(ClauseError::DuplicateBodyLiteral(lit.to_string()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.head)?;
        if !self.body.is_empty() {
            write!(f, " :- ")?;
            for (i, l) in self.body.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{l}")?;
            }
        }
        write!(f, ".")
    }
}

/// A hypothesis: an ordered sequence of definite clauses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Program {
    pub clauses: Vec<Clause>,
}

impl Program {
    pub fn new(clauses: Vec<Clause>) -> Self {
        Program { clauses }
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Distinct invented predicates occurring anywhere in the program.
    pub fn invented(&self) -> std::collections::BTreeSet<Predicate> {
        self.clauses
            .iter()
            .flat_map(|c| std::iter::once(&c.head).chain(c.body.iter()))
            .filter(|l| l.pred.is_invented())
            .map(|l| l.pred.clone())
            .collect()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Total number of literals in the program.
pub fn cost(h: &Program) -> usize {
    h.clauses.iter().map(Clause::size).sum()
}

/// A variable-to-variable substitution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: std::collections::BTreeMap<Var, Var>,
}

impl Substitution {
    pub fn get(&self, v: Var) -> Option<Var> {
        self.map.get(&v).copied()
    }

    pub fn insert(&mut self, from: Var, to: Var) {
        self.map.insert(from, to);
    }

    pub fn apply(&self, lit: &Literal) -> Literal {
        Literal { pred: lit.pred.clone(), args: lit.args.iter().map(|v| self.get(*v).unwrap_or(*v)).collect() }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Error from [`parse_program`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse clause `{text}`: {reason}")]
pub struct ClauseParseError {
    pub text: String,
    pub reason: String,
}

/// Parses hypothesis text (`head :- b1,b2.` per clause) into a program.
///
/// `target` names the target predicate; `invN` names become invented
/// symbols; everything else is a background relation. Variables must be
/// uppercase identifiers and are numbered per clause in order of first
/// occurrence.
pub fn parse_program(text: &str, target: &str) -> Result<Program, ClauseParseError> {
    let mut clauses = Vec::new();
    for raw in split_clauses(text) {
        clauses.push(parse_clause(&raw, target)?);
    }
    Ok(Program::new(clauses))
}

/// Parses a single clause; see [`parse_program`].
pub fn parse_clause(text: &str, target: &str) -> Result<Clause, ClauseParseError> {
    let err = |reason: &str| ClauseParseError { text: text.to_string(), reason: reason.into() };
    let t = text.trim().trim_end_matches('.').trim();
    let (head_s, body_s) = match t.find(":-") {
        Some(i) => (&t[..i], Some(&t[i + 2..])),
        None => match t.find('←') {
            Some(i) => (&t[..i], Some(&t[i + '←'.len_utf8()..])),
            None => (t, None),
        },
    };
    let mut names: Vec<String> = Vec::new();
    let mut parse_lit = |s: &str| -> Result<Literal, ClauseParseError> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(i) => {
                if !s.ends_with(')') {
                    return Err(err("unbalanced parentheses"));
                }
                (s[..i].trim(), s[i + 1..s.len() - 1].split(',').map(str::trim).collect())
            }
            None => (s, Vec::new()),
        };
        if name.is_empty() || !name.chars().next().unwrap().is_ascii_lowercase() {
            return Err(err("predicate names must start with a lowercase letter"));
        }
        let mut vars = Vec::new();
        for a in args {
            if a.is_empty() || !a.chars().next().unwrap().is_ascii_uppercase() {
                return Err(err("hypothesis arguments must be variables"));
            }
            let id = match names.iter().position(|n| n == a) {
                Some(i) => i,
                None => {
                    names.push(a.to_string());
                    names.len() - 1
                }
            };
            vars.push(Var(u8::try_from(id).map_err(|_| err("too many variables"))?));
        }
        let arity = vars.len();
        let pred = if name == target {
            Predicate::target(name, arity)
        } else if let Some(idx) = name.strip_prefix("inv").and_then(|d| d.parse::<u32>().ok()) {
            if idx == 0 {
                return Err(err("invented indices start at 1"));
            }
            Predicate::invented(idx, arity)
        } else {
            Predicate::background(name, arity)
        };
        Ok(Literal::new(pred, vars))
    };
    let head = parse_lit(head_s)?;
    let mut body = Vec::new();
    if let Some(b) = body_s {
        for part in split_top_level(b) {
            body.push(parse_lit(&part)?);
        }
    }
    Ok(Clause::new(head, body))
}

fn split_clauses(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for line in text.lines() {
        let line = match line.find('%') {
            Some(i) => &line[..i],
            None => line,
        };
        for ch in line.chars() {
            cur.push(ch);
            if ch == '.' {
                if !cur.trim().is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                cur.clear();
            }
        }
        cur.push(' ');
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_prolog_style() {
        let p = parse_program("f(A,B) :- inv1(A,C),inv1(C,B). inv1(A,B):-mother(A,B).", "f").unwrap();
        assert_eq!(p.to_string(), "f(A,B) :- inv1(A,C),inv1(C,B).\ninv1(A,B) :- mother(A,B).");
        assert!(p.clauses[0].head.pred.is_target());
        assert_eq!(p.clauses[1].head.pred.invented_index(), Some(1));
    }

    #[test]
    fn cost_counts_literals() {
        assert_eq!(cost(&Program::default()), 0);
        let pi =
            parse_program("f(A,B):-inv1(A,C),inv1(C,B). inv1(A,B):-mother(A,B). inv1(A,B):-father(A,B).", "f").unwrap();
        assert_eq!(cost(&pi), 7);
        let flat = parse_program(
            "f(A,B):-mother(A,C),mother(C,B). f(A,B):-mother(A,C),father(C,B).
             f(A,B):-father(A,C),mother(C,B). f(A,B):-father(A,C),father(C,B).",
            "f",
        )
        .unwrap();
        assert_eq!(cost(&flat), 12);
    }

    #[test]
    fn clause_checks() {
        let ok = parse_clause("f(A,B) :- right(A,C),right(C,B).", "f").unwrap();
        assert_eq!(ok.check(), Ok(()));
        let unsafe_head = parse_clause("f(A,B) :- right(A,C),right(C,D).", "f").unwrap();
        assert!(matches!(unsafe_head.check(), Err(ClauseError::UnsafeHeadVar(Var(1)))));
        let head_in_body = parse_clause("f(A,B) :- f(A,B).", "f").unwrap();
        assert!(matches!(head_in_body.check(), Err(ClauseError::HeadInBody(_))));
        let empty = parse_clause("f(A,B).", "f").unwrap();
        assert_eq!(empty.check(), Err(ClauseError::EmptyBody));
        let singleton = parse_clause("f(A) :- tail(A,B).", "f").unwrap();
        assert_eq!(singleton.check(), Err(ClauseError::Singleton(Var(1))));
    }

    #[test]
    fn var_display() {
        assert_eq!(Var(0).to_string(), "A");
        assert_eq!(Var(25).to_string(), "Z");
        assert_eq!(Var(30).to_string(), "V30");
    }
}
