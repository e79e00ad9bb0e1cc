use super::{Atom, Clause, Program, Var};

/// Clause subsumption: does some θ map `c1`'s head onto `c2`'s head and
/// every body literal of `c1` into the body of `c2`? Bodies are sets here.
pub fn clause_subsumes(c1: &Clause, c2: &Clause) -> bool {
    subsumes_atoms(&c1.head, &c1.body, &c2.head, &c2.body)
}

/// Theory subsumption: every clause of `t2` is subsumed by a clause of `t1`.
pub fn theory_subsumes(t1: &Program, t2: &Program) -> bool {
    t2.clauses.iter().all(|c2| t1.clauses.iter().any(|c1| clause_subsumes(c1, c2)))
}

const UNBOUND: u8 = u8::MAX;

// Every variable is bound at most once between undos, so the trail never
// outgrows the variable range.
struct Matcher {
    theta: [u8; 256],
    trail: [u8; 256],
    len: usize,
}

impl Matcher {
    fn new() -> Self {
        Matcher { theta: [UNBOUND; 256], trail: [0; 256], len: 0 }
    }

    fn match_args(&mut self, from: &[Var], to: &[Var]) -> bool {
        if from.len() != to.len() {
            return false;
        }
        for (a, b) in from.iter().zip(to) {
            let slot = &mut self.theta[a.index()];
            if *slot == UNBOUND {
                *slot = b.0;
                self.trail[self.len] = a.0;
                self.len += 1;
            } else if *slot != b.0 {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for &v in &self.trail[mark..self.len] {
            self.theta[v as usize] = UNBOUND;
        }
        self.len = mark;
    }

    fn search<A: Atom>(&mut self, general: &[A], specific: &[A]) -> bool {
        let Some((first, rest)) = general.split_first() else {
            return true;
        };
        for cand in specific {
            if cand.pred() != first.pred() {
                continue;
            }
            let mark = self.len;
            if self.match_args(first.args(), cand.args()) && self.search(rest, specific) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// Subsumption over any atom encoding; see [`clause_subsumes`].
pub fn subsumes_atoms<A: Atom>(head1: &A, body1: &[A], head2: &A, body2: &[A]) -> bool {
    if head1.pred() != head2.pred() {
        return false;
    }
    // Each general literal needs at least one partner with the same predicate.
    if !body1.iter().all(|l| body2.iter().any(|m| m.pred() == l.pred())) {
        return false;
    }
    let mut m = Matcher::new();
    if !m.match_args(head1.args(), head2.args()) {
        return false;
    }
    m.search(body1, body2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_clause, parse_program};

    fn c(s: &str) -> Clause {
        parse_clause(s, "f").unwrap()
    }

    #[test]
    fn literal_subset() {
        assert!(clause_subsumes(&c("f(A,B) :- right(A,C)."), &c("f(A,B) :- right(A,C),right(C,B).")));
    }

    #[test]
    fn reflexive() {
        let x = c("f(A,B) :- right(A,C),right(C,B).");
        assert!(clause_subsumes(&x, &x));
    }

    #[test]
    fn different_relations_do_not_subsume() {
        let a = parse_clause("inv(A,B) :- mother(A,B).", "f").unwrap();
        let b = parse_clause("inv(A,B) :- father(A,B).", "f").unwrap();
        assert!(!clause_subsumes(&a, &b));
        assert!(!clause_subsumes(&b, &a));
    }

    #[test]
    fn non_identity_substitution() {
        // θ = {A↦A, B↦C, C↦B} is not needed; {B↦C} style mappings are.
        assert!(clause_subsumes(&c("f(A,B) :- right(A,B)."), &c("f(A,B) :- right(A,B),right(B,C),right(C,B).")));
        assert!(!clause_subsumes(
            &c("f(A,B) :- right(A,C),right(C,B)."),
            &c("f(A,B) :- right(A,C),right(C,D),right(D,B).")
        ));
        // Two general literals may collapse onto one specific literal.
        assert!(clause_subsumes(&c("f(A,B) :- right(A,C),right(A,D)."), &c("f(A,B) :- right(A,C),right(C,B).")));
    }

    #[test]
    fn example_one_theories() {
        let p = parse_program("f(A,B) :- inv1(A,C),inv1(C,B). inv1(A,B) :- tail(A,C),tail(C,B).", "f").unwrap();
        let mut q = p.clone();
        q.clauses.push(c("f(A,B) :- reverse(A,B)."));
        assert!(theory_subsumes(&q, &p));
        assert!(!theory_subsumes(&p, &q));
        assert!(theory_subsumes(&p, &p));
    }
}
