//! Language bias: predicate declarations, type and direction signatures,
//! size bounds, predicate-invention settings and optional metarules.

mod metarule;
mod modes;
mod types;

use std::collections::{BTreeMap, BTreeSet};

pub use metarule::{clause_matches_metarule, parse_metarules, Metarule, MetaruleSet, Pattern};
pub use modes::{check_direction_safe, infer_modes, schedule, schedule_clause, Direction, ModeAssignment};
pub(crate) use modes::{fixed_in_masks, greedy_order};
pub use types::{infer_types, TypeError, TypedProgram};

use crate::logic::{Clause, PredKind, Predicate};
use crate::syntax::{parse_statements, Statement, Term};

/// `(name, arity)`.
pub type PredKey = (String, usize);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BiasError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unknown directive `{directive}`")]
    UnknownDirective { line: usize, directive: String },
    #[error("line {line}: {what} for {name}/{arity} has {found} entries")]
    ArityMismatch { line: usize, what: &'static str, name: String, arity: usize, found: usize },
    #[error("line {line}: {name}/{arity} is not declared")]
    Undeclared { line: usize, name: String, arity: usize },
    #[error("no head predicate declared")]
    NoHeadPredicate,
    #[error("only one target predicate is supported, found {0}")]
    MultipleHeadPredicates(usize),
    #[error("setting {0} is out of range")]
    BadSetting(String),
}

impl From<crate::syntax::SyntaxError> for BiasError {
    fn from(e: crate::syntax::SyntaxError) -> Self {
        BiasError::Parse { line: e.line, message: e.message }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bias {
    pub head_preds: BTreeSet<PredKey>,
    pub body_preds: BTreeSet<PredKey>,
    pub types: BTreeMap<PredKey, Vec<String>>,
    /// Alternative direction tuples per predicate.
    pub directions: BTreeMap<PredKey, Vec<Vec<Direction>>>,
    pub max_vars: usize,
    pub max_body: usize,
    pub max_clauses: usize,
    pub pi_enabled: bool,
    pub recursion_enabled: bool,
    /// Overrides the default invented arity bound (the largest declared arity).
    pub invented_arity_limit: Option<usize>,
    /// Overrides the default outer cost ceiling.
    pub max_literals: Option<usize>,
    pub metarules: Option<MetaruleSet>,
}

impl Default for Bias {
    fn default() -> Self {
        Bias {
            head_preds: BTreeSet::new(),
            body_preds: BTreeSet::new(),
            types: BTreeMap::new(),
            directions: BTreeMap::new(),
            max_vars: 6,
            max_body: 5,
            max_clauses: 3,
            pi_enabled: true,
            recursion_enabled: false,
            invented_arity_limit: None,
            max_literals: None,
            metarules: None,
        }
    }
}

impl Bias {
    pub fn target(&self) -> Predicate {
        let (name, arity) = self.head_preds.iter().next().expect("bias has a head predicate");
        Predicate::target(name, *arity)
    }

    /// Number of invented symbols available: one fewer than the clause bound.
    pub fn max_invented(&self) -> usize {
        if self.pi_enabled {
            self.max_clauses.saturating_sub(1)
        } else {
            0
        }
    }

    pub fn max_invented_arity(&self) -> usize {
        self.invented_arity_limit
            .unwrap_or_else(|| self.head_preds.iter().chain(&self.body_preds).map(|(_, a)| *a).max().unwrap_or(2))
    }

    /// Declared background relations, in canonical order.
    pub fn body_predicates(&self) -> Vec<Predicate> {
        let mut v: Vec<Predicate> = self
            .body_preds
            .iter()
            .filter(|k| !self.head_preds.contains(*k))
            .map(|(n, a)| Predicate::background(n, *a))
            .collect();
        v.sort();
        v
    }

    /// Every invented symbol the bias admits, in canonical order.
    pub fn invented_symbols(&self) -> Vec<Predicate> {
        let mut v = Vec::new();
        for i in 1..=self.max_invented() as u32 {
            for a in 1..=self.max_invented_arity() {
                v.push(Predicate::invented(i, a));
            }
        }
        v
    }

    /// Default outer cost ceiling: every clause at full length.
    pub fn default_max_literals(&self) -> usize {
        self.max_literals.unwrap_or(self.max_clauses * (1 + self.max_body))
    }

    pub fn types_of(&self, p: &Predicate) -> Option<&[String]> {
        self.types.get(&(p.name().to_string(), p.arity())).map(Vec::as_slice)
    }

    pub fn directions_of(&self, p: &Predicate) -> Option<&[Vec<Direction>]> {
        self.directions.get(&(p.name().to_string(), p.arity())).map(Vec::as_slice)
    }

    /// Whether an invented symbol is admitted by the PI settings.
    pub fn admits_invented(&self, p: &Predicate) -> bool {
        match p.kind() {
            PredKind::Invented(i) => {
                self.pi_enabled
                    && (*i as usize) <= self.max_invented()
                    && p.arity() >= 1
                    && p.arity() <= self.max_invented_arity()
            }
            _ => false,
        }
    }

    /// Installs direction alternatives for a relation unless the user
    /// declared some already.
    pub fn default_directions(&mut self, key: PredKey, modes: Vec<Vec<Direction>>) {
        self.directions.entry(key).or_insert(modes);
    }
}

/// Head predicate declared (or invented), every body predicate declared (or
/// invented, or the target itself when recursion is on).
pub fn check_declaration_consistent(bias: &Bias, c: &Clause) -> bool {
    let head = &c.head.pred;
    let head_ok = match head.kind() {
        PredKind::Target => bias.head_preds.contains(&(head.name().to_string(), head.arity())),
        PredKind::Invented(_) => bias.admits_invented(head),
        PredKind::Background => false,
    };
    head_ok
        && c.body.iter().all(|l| match l.pred.kind() {
            PredKind::Background => bias.body_preds.contains(&(l.pred.name().to_string(), l.pred.arity())),
            PredKind::Invented(_) => bias.admits_invented(&l.pred),
            PredKind::Target => {
                bias.recursion_enabled && bias.head_preds.contains(&(l.pred.name().to_string(), l.pred.arity()))
            }
        })
}

/// Parses the bias directives of a task file. Example, background-knowledge
/// and builtin directives are accepted and skipped.
pub fn parse_bias(text: &str) -> Result<Bias, BiasError> {
    let statements = parse_statements(text)?;
    parse_bias_statements(&statements)
}

fn name_arity(st: &Statement, args: &[Term]) -> Result<(String, usize), BiasError> {
    let bad = || BiasError::Parse { line: st.line, message: format!("malformed `{}`", st.term) };
    match args {
        [Term::Atom(n), Term::Int(a)] if *a >= 0 => Ok((n.clone(), *a as usize)),
        _ => Err(bad()),
    }
}

fn tuple_items(t: &Term) -> Vec<&Term> {
    match t {
        Term::Tuple(items) | Term::List(items) => items.iter().collect(),
        other => vec![other],
    }
}

fn setting_value(st: &Statement, t: &Term) -> Result<usize, BiasError> {
    match t {
        Term::Int(n) if *n >= 0 => Ok(*n as usize),
        _ => Err(BiasError::Parse { line: st.line, message: format!("expected a count in `{}`", st.term) }),
    }
}

fn setting_flag(st: &Statement, t: &Term) -> Result<bool, BiasError> {
    match t {
        Term::Atom(a) if a == "true" => Ok(true),
        Term::Atom(a) if a == "false" => Ok(false),
        _ => Err(BiasError::Parse { line: st.line, message: format!("expected true|false in `{}`", st.term) }),
    }
}

pub(crate) const NON_BIAS_DIRECTIVES: &[&str] = &["builtin", "bk_clause", "bk_fact", "pos", "neg"];

pub(crate) fn parse_bias_statements(statements: &[Statement]) -> Result<Bias, BiasError> {
    let mut bias = Bias::default();
    let mut typed: Vec<(usize, PredKey)> = Vec::new();
    for st in statements {
        if !st.body.is_empty() {
            return Err(BiasError::Parse { line: st.line, message: "rules must be wrapped in bk_clause(...)".into() });
        }
        let Some((functor, _)) = st.term.functor() else {
            return Err(BiasError::Parse { line: st.line, message: format!("`{}` is not a directive", st.term) });
        };
        let args = st.term.args();
        match functor {
            "head_pred" => {
                bias.head_preds.insert(name_arity(st, args)?);
            }
            "body_pred" => {
                bias.body_preds.insert(name_arity(st, args)?);
            }
            "type" | "direction" => {
                let [Term::Atom(name), sig] = args else {
                    return Err(BiasError::Parse { line: st.line, message: format!("malformed `{}`", st.term) });
                };
                let items = tuple_items(sig);
                let key = (name.clone(), items.len());
                if functor == "type" {
                    let mut tys = Vec::new();
                    for it in items {
                        match it {
                            Term::Atom(t) => tys.push(t.clone()),
                            _ => {
                                return Err(BiasError::Parse {
                                    line: st.line,
                                    message: format!("bad type in `{}`", st.term),
                                })
                            }
                        }
                    }
                    bias.types.insert(key.clone(), tys);
                } else {
                    let mut dirs = Vec::new();
                    for it in items {
                        match it {
                            Term::Atom(d) if d == "in" => dirs.push(Direction::In),
                            Term::Atom(d) if d == "out" => dirs.push(Direction::Out),
                            _ => {
                                return Err(BiasError::Parse {
                                    line: st.line,
                                    message: format!("bad direction in `{}`", st.term),
                                })
                            }
                        }
                    }
                    bias.directions.entry(key.clone()).or_default().push(dirs);
                }
                typed.push((st.line, key));
            }
            "setting" => {
                let [Term::Atom(name), value] = args else {
                    return Err(BiasError::Parse { line: st.line, message: format!("malformed `{}`", st.term) });
                };
                match name.as_str() {
                    "max_vars" => bias.max_vars = setting_value(st, value)?,
                    "max_body" => bias.max_body = setting_value(st, value)?,
                    "max_clauses" => bias.max_clauses = setting_value(st, value)?,
                    "max_literals" => bias.max_literals = Some(setting_value(st, value)?),
                    "max_invented_arity" => bias.invented_arity_limit = Some(setting_value(st, value)?),
                    "enable_pi" => bias.pi_enabled = setting_flag(st, value)?,
                    "enable_recursion" => bias.recursion_enabled = setting_flag(st, value)?,
                    other => {
                        return Err(BiasError::UnknownDirective {
                            line: st.line,
                            directive: format!("setting({other},...)"),
                        })
                    }
                }
            }
            f if NON_BIAS_DIRECTIVES.contains(&f) => {}
            other => return Err(BiasError::UnknownDirective { line: st.line, directive: other.to_string() }),
        }
    }
    if bias.head_preds.is_empty() {
        return Err(BiasError::NoHeadPredicate);
    }
    if bias.head_preds.len() > 1 {
        return Err(BiasError::MultipleHeadPredicates(bias.head_preds.len()));
    }
    let declared_arity = |name: &str| -> Option<usize> {
        bias.head_preds.iter().chain(&bias.body_preds).find(|(n, _)| n == name).map(|(_, a)| *a)
    };
    for (line, (name, arity)) in &typed {
        match declared_arity(name) {
            None => return Err(BiasError::Undeclared { line: *line, name: name.clone(), arity: *arity }),
            Some(a) if a != *arity => {
                let what = if bias.types.contains_key(&(name.clone(), *arity)) { "type" } else { "direction" };
                return Err(BiasError::ArityMismatch {
                    line: *line,
                    what,
                    name: name.clone(),
                    arity: a,
                    found: *arity,
                });
            }
            Some(_) => {}
        }
    }
    validate(&bias)?;
    Ok(bias)
}

pub(crate) fn validate(bias: &Bias) -> Result<(), BiasError> {
    if bias.max_vars == 0 || bias.max_vars > 16 {
        return Err(BiasError::BadSetting("max_vars".into()));
    }
    if bias.max_body == 0 {
        return Err(BiasError::BadSetting("max_body".into()));
    }
    if bias.max_clauses == 0 {
        return Err(BiasError::BadSetting("max_clauses".into()));
    }
    if bias.max_invented_arity() > crate::generator::MAX_ARITY {
        return Err(BiasError::BadSetting("max_invented_arity".into()));
    }
    if bias.head_preds.iter().chain(&bias.body_preds).any(|(_, a)| *a > crate::generator::MAX_ARITY) {
        return Err(BiasError::BadSetting("predicate arity above 4".into()));
    }
    if bias.max_invented() * bias.max_invented_arity() > 64 {
        return Err(BiasError::BadSetting("too many invented symbols".into()));
    }
    Ok(())
}
