use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Bias;
use crate::logic::{Clause, Literal, PredKind, Predicate, Program};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

/// One direction tuple per invented predicate.
pub type ModeAssignment = BTreeMap<Predicate, Vec<Direction>>;

/// Bitmask of the `in` positions of a direction tuple.
pub(crate) fn in_mask(dirs: &[Direction]) -> u8 {
    dirs.iter().enumerate().filter(|(_, d)| **d == Direction::In).fold(0, |m, (i, _)| m | 1 << i)
}

pub(crate) fn dirs_from_mask(mask: u8, arity: usize) -> Vec<Direction> {
    (0..arity).map(|i| if mask >> i & 1 == 1 { Direction::In } else { Direction::Out }).collect()
}

/// Direction alternatives of a non-invented predicate as `in` masks. The
/// target defaults to all-in, background relations to all-out.
pub(crate) fn fixed_in_masks(bias: &Bias, p: &Predicate) -> Vec<u8> {
    match bias.directions_of(p) {
        Some(alts) => alts.iter().map(|d| in_mask(d)).collect(),
        None if p.is_target() => vec![((1u16 << p.arity()) - 1) as u8],
        None => vec![0],
    }
}

/// Greedy scheduler over compact literals. `bound` holds the variables bound
/// on entry; each literal lists its alternative `in` masks. Returns an order
/// in which every literal is called with its inputs bound, if one exists.
/// Executing a literal only ever adds bindings, so picking the first
/// executable literal never blocks a safe order.
pub(crate) fn greedy_order(mut bound: u32, lits: &[(&[u8], &[crate::logic::Var])]) -> Option<Vec<usize>> {
    let mut done = vec![false; lits.len()];
    let mut order = Vec::with_capacity(lits.len());
    while order.len() < lits.len() {
        let next = (0..lits.len()).find(|&i| {
            !done[i] && {
                let (alts, args) = lits[i];
                alts.iter().any(|&m| args.iter().enumerate().all(|(j, v)| m >> j & 1 == 0 || bound >> v.0 & 1 == 1))
            }
        })?;
        done[next] = true;
        order.push(next);
        for v in lits[next].1 {
            bound |= 1 << v.0;
        }
    }
    Some(order)
}

fn masks_for(bias: &Bias, p: &Predicate, assign: &ModeAssignment) -> Vec<u8> {
    match p.kind() {
        PredKind::Invented(_) => match assign.get(p) {
            Some(d) => vec![in_mask(d)],
            None => (0..1u16 << p.arity()).map(|m| m as u8).collect(),
        },
        _ => fixed_in_masks(bias, p),
    }
}

fn head_bound(bias: &Bias, head: &Literal, assign: &ModeAssignment) -> u32 {
    // Under several head alternatives, assume only the positions that are
    // inputs in all of them.
    let m = masks_for(bias, &head.pred, assign).into_iter().fold(u8::MAX, |a, b| a & b);
    head.args.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0, |b, (_, v)| b | 1 << v.0)
}

/// Schedules one clause under a mode assignment for its invented predicates.
/// Returns the clause with its body in execution order.
pub fn schedule_clause(bias: &Bias, c: &Clause, assign: &ModeAssignment) -> Option<Clause> {
    let masks: Vec<Vec<u8>> = c.body.iter().map(|l| masks_for(bias, &l.pred, assign)).collect();
    let lits: Vec<(&[u8], &[crate::logic::Var])> =
        masks.iter().zip(&c.body).map(|(m, l)| (m.as_slice(), l.args.as_slice())).collect();
    let order = greedy_order(head_bound(bias, &c.head, assign), &lits)?;
    Some(Clause::new(c.head.clone(), order.into_iter().map(|i| c.body[i].clone()).collect()))
}

fn assignments(preds: Vec<Predicate>) -> impl Iterator<Item = ModeAssignment> {
    let total: usize = preds.iter().map(|p| p.arity()).sum();
    (0..1u64 << total).map(move |code| {
        let mut shift = 0;
        preds
            .iter()
            .map(|p| {
                let m = ((code >> shift) & ((1 << p.arity()) - 1)) as u8;
                shift += p.arity();
                // Reverse so that the all-in tuple is tried first.
                let m = !m & ((1u16 << p.arity()) - 1) as u8;
                (p.clone(), dirs_from_mask(m, p.arity()))
            })
            .collect()
    })
}

/// Finds direction tuples for the invented predicates of `p` under which
/// every clause has a safe execution order.
pub fn infer_modes(bias: &Bias, p: &Program) -> Option<ModeAssignment> {
    let inv: Vec<Predicate> = p.invented().into_iter().collect();
    assignments(inv).find(|a| p.clauses.iter().all(|c| schedule_clause(bias, c, a).is_some()))
}

/// Reorders every body into a safe execution order, or `None` if no mode
/// assignment for the invented predicates admits one.
pub fn schedule(bias: &Bias, p: &Program) -> Option<Program> {
    let a = infer_modes(bias, p)?;
    p.clauses.iter().map(|c| schedule_clause(bias, c, &a)).collect::<Option<Vec<_>>>().map(Program::new)
}

/// Checks the body in its given order: each literal's `in` arguments must be
/// bound when it is reached. Vacuously true when some non-invented predicate
/// of the clause has no declared directions. Invented predicates may take
/// any direction tuple that makes the clause safe.
pub fn check_direction_safe(bias: &Bias, c: &Clause) -> bool {
    let declared = std::iter::once(&c.head)
        .chain(&c.body)
        .filter(|l| !l.pred.is_invented())
        .all(|l| bias.directions_of(&l.pred).is_some());
    if !declared {
        return true;
    }
    let inv: Vec<Predicate> = Program::new(vec![c.clone()]).invented().into_iter().collect();
    assignments(inv).any(|a| {
        let mut bound = head_bound(bias, &c.head, &a);
        c.body.iter().all(|l| {
            let ok = masks_for(bias, &l.pred, &a)
                .iter()
                .any(|&m| l.args.iter().enumerate().all(|(j, v)| m >> j & 1 == 0 || bound >> v.0 & 1 == 1));
            for v in &l.args {
                bound |= 1 << v.0;
            }
            ok
        })
    })
}
