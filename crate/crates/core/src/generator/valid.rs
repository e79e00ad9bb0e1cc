use std::collections::BTreeSet;

use crate::bias::{check_declaration_consistent, clause_matches_metarule, infer_types, schedule, Bias};
use crate::logic::{canonicalise_clause, DependencyGraph, Program};

/// Membership test for the bounded hypothesis space, written directly over
/// [`Program`] and independent of the enumeration machinery.
pub fn is_structurally_valid(bias: &Bias, p: &Program) -> bool {
    if p.is_empty() || p.len() > bias.max_clauses {
        return false;
    }
    for c in &p.clauses {
        if !check_declaration_consistent(bias, c)
            || c.check().is_err()
            || c.num_vars() > bias.max_vars
            || c.body.len() > bias.max_body
        {
            return false;
        }
        if let Some(ms) = &bias.metarules {
            if !clause_matches_metarule(ms, c) {
                return false;
            }
        }
        // Nothing lower than the head; the head itself only under recursion.
        for l in &c.body {
            if l.pred < c.head.pred || (l.pred == c.head.pred && !bias.recursion_enabled) {
                return false;
            }
        }
    }

    let invented = p.invented();
    let indices: BTreeSet<u32> = invented.iter().filter_map(|q| q.invented_index()).collect();
    if indices.len() != invented.len() {
        // One arity per invented index.
        return false;
    }
    if indices.iter().enumerate().any(|(i, k)| *k as usize != i + 1) {
        return false;
    }
    let heads: BTreeSet<_> = p.clauses.iter().map(|c| &c.head.pred).filter(|q| q.is_invented()).collect();
    let called: BTreeSet<_> =
        p.clauses.iter().flat_map(|c| &c.body).map(|l| &l.pred).filter(|q| q.is_invented()).collect();
    if heads != called {
        return false;
    }

    let g = DependencyGraph::new(p);
    let mut reached = BTreeSet::new();
    for (i, c) in p.clauses.iter().enumerate() {
        if c.head.pred.is_target() {
            reached.insert(i);
            reached.extend(g.reachable_from(i));
        }
    }
    if reached.len() != p.len() {
        return false;
    }

    let canon: std::collections::HashSet<_> = p.clauses.iter().map(canonicalise_clause).collect();
    if canon.len() != p.len() {
        return false;
    }
    schedule(bias, p).is_some() && infer_types(bias, p).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bias::parse_bias;
    use crate::logic::parse_program;

    fn robot() -> Bias {
        parse_bias("head_pred(f,2). body_pred(right,2). direction(f,(in,out)). direction(right,(in,out)).").unwrap()
    }

    fn valid(s: &str) -> bool {
        is_structurally_valid(&robot(), &parse_program(s, "f").unwrap())
    }

    #[test]
    fn robot_sixteen() {
        assert!(valid(
            "f(A,B) :- inv1(A,C),inv1(C,D),inv1(D,E),inv1(E,B). inv1(A,B) :- right(A,C),right(C,D),right(D,E),right(E,B)."
        ));
    }

    #[test]
    fn invented_head_calling_target() {
        assert!(!valid("f(A,B) :- inv1(A,B). inv1(A,B) :- f(A,B)."));
    }

    #[test]
    fn contiguity_and_occurrence() {
        assert!(!valid("f(A,B) :- inv2(A,B). inv2(A,B) :- right(A,B)."));
        assert!(!valid("f(A,B) :- inv1(A,B)."));
        assert!(!valid("f(A,B) :- right(A,B). inv1(A,B) :- right(A,B)."));
        assert!(!valid("f(A,B) :- inv1(A,C),inv1(C,B). inv1(A) :- right(A,B),right(B,A). inv1(A,B) :- right(A,B)."));
    }

    #[test]
    fn direction_and_duplicates() {
        assert!(!valid("f(A,B) :- right(B,A)."));
        assert!(valid("f(A,B) :- right(C,B),right(A,C)."));
        assert!(!valid("f(A,B) :- right(A,B). f(B,A) :- right(B,A)."));
    }
}
