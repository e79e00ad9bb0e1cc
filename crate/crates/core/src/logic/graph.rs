use std::collections::{BTreeMap, BTreeSet};

use super::{clause_subsumes, Predicate, Program};

/// Clause-level dependency graph: an edge runs from a clause to every clause
/// whose head predicate occurs in its body.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyGraph {
    edges: Vec<Vec<usize>>,
}

impl DependencyGraph {
    pub fn new(p: &Program) -> Self {
        let edges = p
            .clauses
            .iter()
            .map(|caller| {
                p.clauses
                    .iter()
                    .enumerate()
                    .filter(|(_, callee)| caller.body.iter().any(|l| l.pred == callee.head.pred))
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        DependencyGraph { edges }
    }

    pub fn num_nodes(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().enumerate().flat_map(|(i, out)| out.iter().map(move |&j| (i, j)))
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges[from].contains(&to)
    }

    /// Clauses reachable from `from` by a path of one or more edges.
    pub fn reachable_from(&self, from: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<usize> = self.edges[from].clone();
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                stack.extend(self.edges[n].iter().copied());
            }
        }
        seen
    }

    /// `c1` depends on `c2` iff a non-empty path leads from `c1` to `c2`.
    /// A clause depends on itself only through a cycle.
    pub fn depends(&self, c1: usize, c2: usize) -> bool {
        self.reachable_from(c1).contains(&c2)
    }
}

/// The clauses of `q` that `p`-specialise `q`: subsumed by a clause of `p`,
/// not depending on any clause of `q` outside that subsumed part, and not
/// depended upon by any such clause.
pub fn p_specialising_clauses(p: &Program, q: &Program) -> BTreeSet<usize> {
    let subsumed: BTreeSet<usize> = q
        .clauses
        .iter()
        .enumerate()
        .filter(|(_, c)| p.clauses.iter().any(|d| clause_subsumes(d, c)))
        .map(|(i, _)| i)
        .collect();
    let outside: Vec<usize> = (0..q.len()).filter(|i| !subsumed.contains(i)).collect();
    let g = DependencyGraph::new(q);
    subsumed
        .iter()
        .copied()
        .filter(|&c| {
            let reach = g.reachable_from(c);
            outside.iter().all(|o| !reach.contains(o)) && outside.iter().all(|&o| !g.depends(o, c))
        })
        .collect()
}

/// True iff no head predicate of `h` occurs in any body of `h`.
pub fn is_separable(h: &Program) -> bool {
    let heads: BTreeSet<&Predicate> = h.clauses.iter().map(|c| &c.head.pred).collect();
    !h.clauses.iter().any(|c| c.body.iter().any(|l| heads.contains(&l.pred)))
}

/// Clause and recursive-clause counts for one head predicate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PredicateStats {
    pub num_clauses: usize,
    pub num_recursive: usize,
}

pub fn predicate_stats(h: &Program) -> BTreeMap<Predicate, PredicateStats> {
    let mut out: BTreeMap<Predicate, PredicateStats> = BTreeMap::new();
    for c in &h.clauses {
        let s = out.entry(c.head.pred.clone()).or_default();
        s.num_clauses += 1;
        if c.is_recursive() {
            s.num_recursive += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_program;

    fn example_p() -> Program {
        parse_program("f(A,B) :- inv1(A,C),inv1(C,B). inv1(A,B) :- tail(A,C),tail(C,B).", "f").unwrap()
    }

    fn example_q() -> Program {
        let mut q = example_p();
        q.clauses.extend(parse_program("f(A,B) :- reverse(A,B).", "f").unwrap().clauses);
        q
    }

    #[test]
    fn example_one_dependencies() {
        let g = DependencyGraph::new(&example_p());
        assert!(g.has_edge(0, 1));
        assert!(g.depends(0, 1));
        assert!(!g.depends(1, 0));
        assert!(!g.depends(0, 0));
        let gq = DependencyGraph::new(&example_q());
        assert!(!gq.depends(1, 2) && !gq.depends(2, 1));
    }

    #[test]
    fn recursion_is_a_self_edge() {
        let p = parse_program("last(A,B) :- tail(A,C),last(C,B).", "last").unwrap();
        let g = DependencyGraph::new(&p);
        assert!(g.has_edge(0, 0));
        assert!(g.depends(0, 0));
        let flat = parse_program("f(A,B) :- right(A,B).", "f").unwrap();
        assert_eq!(DependencyGraph::new(&flat).edges().count(), 0);
    }

    #[test]
    fn example_one_specialisation() {
        let p = example_p();
        // C_Q neither calls nor is called by C1 or C2, so both qualify.
        let got = p_specialising_clauses(&p, &example_q());
        assert!(got.contains(&1));
        assert_eq!(got, BTreeSet::from([0, 1]));
        assert_eq!(p_specialising_clauses(&p, &p), BTreeSet::from([0, 1]));
        // An extra inv1 clause outside P′: C1 now reaches it, C2 is untouched.
        let mut q2 = p.clone();
        q2.clauses.extend(parse_program("inv1(A,B) :- head(A,B).", "f").unwrap().clauses);
        assert_eq!(p_specialising_clauses(&p, &q2), BTreeSet::from([1]));
    }

    #[test]
    fn separability() {
        assert!(is_separable(&parse_program("f(A,B) :- right(A,C),right(C,B).", "f").unwrap()));
        let pi =
            parse_program("f(A,B):-inv1(A,C),inv1(C,B). inv1(A,B):-mother(A,B). inv1(A,B):-father(A,B).", "f").unwrap();
        assert!(!is_separable(&pi));
        let last =
            parse_program("last(A,B) :- tail(A,C),empty(C),head(A,B). last(A,B) :- tail(A,C),last(C,B).", "last")
                .unwrap();
        assert!(!is_separable(&last));
    }

    #[test]
    fn stats() {
        let h = parse_program("f(A,B):-inv1(A,C),right(C,B). inv1(A,B):-right(A,C),right(C,B).", "f").unwrap();
        let s = predicate_stats(&h);
        assert_eq!(s[&Predicate::target("f", 2)], PredicateStats { num_clauses: 1, num_recursive: 0 });
        assert_eq!(s[&Predicate::invented(1, 2)], PredicateStats { num_clauses: 1, num_recursive: 0 });
        assert!(predicate_stats(&Program::default()).is_empty());
        let last =
            parse_program("last(A,B) :- tail(A,C),empty(C),head(A,B). last(A,B) :- tail(A,C),last(C,B).", "last")
                .unwrap();
        assert_eq!(
            predicate_stats(&last)[&Predicate::target("last", 2)],
            PredicateStats { num_clauses: 2, num_recursive: 1 }
        );
    }
}
