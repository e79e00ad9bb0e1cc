//! Constraints learned from failed hypotheses and the test deciding whether
//! a candidate program is pruned by one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::interp::Outcome;
use crate::logic::{clause_subsumes, predicate_stats, theory_subsumes, DependencyGraph, Predicate, Program};

/// One count pattern of a redundancy constraint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RedundancyCondition {
    pub pivot: Predicate,
    /// Exact clause count for every other predicate defined by the failed
    /// program.
    pub clause_counts: BTreeMap<Predicate, usize>,
    pub pivot_recursive_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HypothesisConstraint {
    Generalisation(Program),
    Specialisation(Program),
    Redundancy(Program, BTreeSet<RedundancyCondition>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintKind {
    Generalisation,
    Specialisation,
    Redundancy,
}

impl HypothesisConstraint {
    pub fn kind(&self) -> ConstraintKind {
        match self {
            HypothesisConstraint::Generalisation(_) => ConstraintKind::Generalisation,
            HypothesisConstraint::Specialisation(_) => ConstraintKind::Specialisation,
            HypothesisConstraint::Redundancy(..) => ConstraintKind::Redundancy,
        }
    }

    pub fn program(&self) -> &Program {
        match self {
            HypothesisConstraint::Generalisation(h)
            | HypothesisConstraint::Specialisation(h)
            | HypothesisConstraint::Redundancy(h, _) => h,
        }
    }
}

/// Constraints implied by a test outcome: specialisations are pruned when
/// `h` is incomplete, generalisations when it is inconsistent, and redundant
/// programs when it is totally incomplete.
pub fn learn(h: &Program, out: &Outcome) -> Vec<HypothesisConstraint> {
    let mut cs = Vec::new();
    if !out.consistent() {
        cs.push(HypothesisConstraint::Generalisation(h.clone()));
    }
    if !out.complete() {
        cs.push(HypothesisConstraint::Specialisation(h.clone()));
    }
    if out.totally_incomplete() && out.pos_total > 0 {
        cs.push(build_redundancy(h));
    }
    cs
}

/// True iff `p` depends on itself: one of its clauses reaches a clause of
/// `p` through the dependency graph (a recursive clause reaches itself).
pub fn is_recursively_called(h: &Program, p: &Predicate) -> bool {
    let g = DependencyGraph::new(h);
    let own: Vec<usize> = (0..h.len()).filter(|&i| h.clauses[i].head.pred == *p).collect();
    own.iter().any(|&c| {
        let reach = g.reachable_from(c);
        own.iter().any(|d| reach.contains(d))
    })
}

/// One condition per predicate of `h` that is not recursively called.
pub fn build_redundancy(h: &Program) -> HypothesisConstraint {
    let stats = predicate_stats(h);
    let conditions = stats
        .iter()
        .filter(|(p, _)| !is_recursively_called(h, p))
        .map(|(p, s)| RedundancyCondition {
            pivot: p.clone(),
            clause_counts: stats.iter().filter(|(q, _)| *q != p).map(|(q, s)| (q.clone(), s.num_clauses)).collect(),
            pivot_recursive_count: s.num_recursive,
        })
        .collect();
    HypothesisConstraint::Redundancy(h.clone(), conditions)
}

/// Every clause of `h` subsumes some clause of `q` (witnesses may coincide).
pub fn seen(h: &Program, q: &Program) -> bool {
    h.clauses.iter().all(|c| q.clauses.iter().any(|d| clause_subsumes(c, d)))
}

pub fn condition_holds(cond: &RedundancyCondition, q: &Program) -> bool {
    let stats = predicate_stats(q);
    cond.clause_counts.iter().all(|(p, n)| stats.get(p).map_or(0, |s| s.num_clauses) == *n)
        && stats.get(&cond.pivot).map_or(0, |s| s.num_recursive) == cond.pivot_recursive_count
}

pub fn violates(c: &HypothesisConstraint, q: &Program) -> bool {
    match c {
        HypothesisConstraint::Generalisation(h) => theory_subsumes(q, h),
        HypothesisConstraint::Specialisation(h) => theory_subsumes(h, q),
        HypothesisConstraint::Redundancy(h, conds) => seen(h, q) && conds.iter().any(|cond| condition_holds(cond, q)),
    }
}

fn seen_rule(f: &mut fmt::Formatter<'_>, id: usize, c: &crate::logic::Clause) -> fmt::Result {
    let vars = |args: &[crate::logic::Var]| args.iter().map(|v| format!("V{}", v.0)).collect::<Vec<_>>().join(",");
    write!(f, "seen(C,c{id}):- h_lit(C,{},{},({}))", c.head.pred.name(), c.head.pred.arity(), vars(&c.head.args))?;
    for l in &c.body {
        write!(f, ", b_lit(C,{},{},({}))", l.pred.name(), l.pred.arity(), vars(&l.args))?;
    }
    writeln!(f, ".")
}

/// Debug rendering in the style of the answer-set encoding.
impl fmt::Display for HypothesisConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = self.program();
        for (i, c) in h.clauses.iter().enumerate() {
            seen_rule(f, i + 1, c)?;
        }
        let seen_all = (1..=h.len()).map(|i| format!("seen(_,c{i})")).collect::<Vec<_>>().join(", ");
        match self {
            HypothesisConstraint::Generalisation(_) => {
                write!(f, "% generalisation\n:- {seen_all}, num_clauses_total({}).", h.len())
            }
            HypothesisConstraint::Specialisation(_) => {
                write!(f, "% specialisation\n:- not_seen_other, {seen_all}.")
            }
            HypothesisConstraint::Redundancy(_, conds) => {
                write!(f, "% redundancy\nseen(h):- {seen_all}.")?;
                for cond in conds {
                    write!(f, "\n:- seen(h)")?;
                    for (p, n) in &cond.clause_counts {
                        write!(f, ", num_clauses({},{n})", p.name())?;
                    }
                    write!(f, ", num_recursive({},{}).", cond.pivot.name(), cond.pivot_recursive_count)?;
                }
                Ok(())
            }
        }
    }
}
