use super::BiasError;
use crate::logic::{Clause, Literal, Predicate, Var};
use crate::syntax::{parse_statements, Term};

/// A predicate variable applied to first-order variables, e.g. `[Q,A,C]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub pred_var: String,
    pub args: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metarule {
    pub second_order_vars: Vec<String>,
    pub head: Pattern,
    pub body: Vec<Pattern>,
}

impl Metarule {
    pub fn first_order_vars(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for p in std::iter::once(&self.head).chain(&self.body) {
            for a in &p.args {
                if !out.contains(&a.as_str()) {
                    out.push(a);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MetaruleSet {
    pub rules: Vec<Metarule>,
}

fn pattern(line: usize, t: &Term) -> Result<Pattern, BiasError> {
    let bad = |m: &str| BiasError::Parse { line, message: format!("{m} in `{t}`") };
    let Term::List(items) = t else { return Err(bad("expected a pattern list")) };
    let mut names = items.iter().map(|i| match i {
        Term::Var(v) => Ok(v.clone()),
        _ => Err(bad("pattern entries must be variables")),
    });
    let pred_var = names.next().ok_or_else(|| bad("empty pattern"))??;
    let args = names.collect::<Result<Vec<_>, _>>()?;
    if args.is_empty() {
        return Err(bad("pattern without arguments"));
    }
    Ok(Pattern { pred_var, args })
}

/// Reads `metarule([P,Q,R], [P,A,B], [[Q,A,C],[R,C,B]]).` lines.
pub fn parse_metarules(text: &str) -> Result<MetaruleSet, BiasError> {
    let mut rules = Vec::new();
    for st in parse_statements(text)? {
        let line = st.line;
        let bad = |m: &str| BiasError::Parse { line, message: m.to_string() };
        match (&st.term, st.body.is_empty()) {
            (Term::Compound(f, args), true) if f == "metarule" && args.len() == 3 => {
                let Term::List(so) = &args[0] else { return Err(bad("expected the predicate variable list")) };
                let second_order_vars = so
                    .iter()
                    .map(|t| match t {
                        Term::Var(v) => Ok(v.clone()),
                        _ => Err(bad("predicate variables must be uppercase")),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let head = pattern(line, &args[1])?;
                let Term::List(body_terms) = &args[2] else { return Err(bad("expected a list of body patterns")) };
                let body = body_terms.iter().map(|t| pattern(line, t)).collect::<Result<Vec<_>, _>>()?;
                if body.is_empty() {
                    return Err(bad("metarule with empty body"));
                }
                for p in std::iter::once(&head).chain(&body) {
                    if !second_order_vars.contains(&p.pred_var) {
                        return Err(bad(&format!("predicate variable {} is not listed", p.pred_var)));
                    }
                }
                for a in &head.args {
                    if !body.iter().any(|p| p.args.contains(a)) {
                        return Err(bad(&format!("head variable {a} does not occur in the body")));
                    }
                }
                rules.push(Metarule { second_order_vars, head, body });
            }
            _ => return Err(bad("expected metarule(Vars, Head, Body)")),
        }
    }
    Ok(MetaruleSet { rules })
}

struct Matcher<'a> {
    rule: &'a Metarule,
    fo: Vec<&'a str>,
    preds: Vec<Option<&'a Predicate>>,
    vars: Vec<Option<Var>>,
}

impl<'a> Matcher<'a> {
    fn so_index(&self, name: &str) -> usize {
        self.rule.second_order_vars.iter().position(|v| v == name).unwrap()
    }

    fn fo_index(&self, name: &str) -> usize {
        self.fo.iter().position(|v| *v == name).unwrap()
    }

    /// Binds `pat` to `lit`; returns the undo record or `None` on mismatch.
    fn bind(&mut self, pat: &'a Pattern, lit: &'a Literal) -> Option<(bool, usize, Vec<usize>)> {
        if pat.args.len() != lit.args.len() {
            return None;
        }
        let p = self.so_index(&pat.pred_var);
        let new_pred = match self.preds[p] {
            Some(q) if q != &lit.pred => return None,
            Some(_) => false,
            None => true,
        };
        let mut new_vars = Vec::new();
        for (a, v) in pat.args.iter().zip(&lit.args) {
            let i = self.fo_index(a);
            match self.vars[i] {
                Some(w) if w != *v => {
                    self.undo((false, 0, new_vars));
                    return None;
                }
                Some(_) => {}
                None => {
                    // First-order variables map injectively.
                    if self.vars.contains(&Some(*v)) {
                        self.undo((false, 0, new_vars));
                        return None;
                    }
                    self.vars[i] = Some(*v);
                    new_vars.push(i);
                }
            }
        }
        if new_pred {
            self.preds[p] = Some(&lit.pred);
        }
        Some((new_pred, p, new_vars))
    }

    fn undo(&mut self, (new_pred, p, vars): (bool, usize, Vec<usize>)) {
        if new_pred {
            self.preds[p] = None;
        }
        for i in vars {
            self.vars[i] = None;
        }
    }

    fn body(&mut self, i: usize, lits: &'a [Literal], used: &mut Vec<bool>) -> bool {
        if i == self.rule.body.len() {
            return true;
        }
        for j in 0..lits.len() {
            if used[j] {
                continue;
            }
            if let Some(rec) = self.bind(&self.rule.body[i], &lits[j]) {
                used[j] = true;
                if self.body(i + 1, lits, used) {
                    return true;
                }
                used[j] = false;
                self.undo(rec);
            }
        }
        false
    }
}

/// True iff some metarule instantiates to the clause: predicate variables map
/// to symbols (not necessarily injectively), first-order variables map
/// bijectively, and the bodies agree as multisets.
pub fn clause_matches_metarule(ms: &MetaruleSet, c: &Clause) -> bool {
    let clause_vars = c.num_vars();
    ms.rules.iter().any(|rule| {
        let fo = rule.first_order_vars();
        if rule.body.len() != c.body.len() || fo.len() != clause_vars {
            return false;
        }
        let mut m = Matcher { rule, preds: vec![None; rule.second_order_vars.len()], vars: vec![None; fo.len()], fo };
        if m.bind(&rule.head, &c.head).is_none() {
            return false;
        }
        let mut used = vec![false; c.body.len()];
        m.body(0, &c.body, &mut used)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_clause;

    #[test]
    fn parses_chain_and_recursive_tail() {
        let ms = parse_metarules(
            "metarule([P,Q,R], [P,A,B], [[Q,A,C],[R,C,B]]).\nmetarule([P,Q], [P,A,B], [[Q,A,C],[P,C,B]]).",
        )
        .unwrap();
        assert_eq!(ms.rules.len(), 2);
        assert_eq!(ms.rules[0].second_order_vars.len(), 3);
        assert_eq!(ms.rules[0].first_order_vars(), vec!["A", "B", "C"]);
        assert_eq!(ms.rules[1].body[1].pred_var, "P");
        assert!(parse_metarules("").unwrap().rules.is_empty());
        let e = parse_metarules("metarule([P,Q], [P,A,B], [[Q,A,B]]).\nmetarule([P], [P,A]).").unwrap_err();
        assert!(matches!(e, BiasError::Parse { line: 2, .. }));
    }

    #[test]
    fn matching() {
        let chain = parse_metarules("metarule([P,Q,R], [P,A,B], [[Q,A,C],[R,C,B]]).").unwrap();
        let ident = parse_metarules("metarule([P,Q], [P,A,B], [[Q,A,B]]).").unwrap();
        let c = |s| parse_clause(s, "f").unwrap();
        assert!(clause_matches_metarule(&chain, &c("f(A,B) :- tail(A,C),tail(C,B).")));
        assert!(clause_matches_metarule(&chain, &c("f(A,B) :- tail(C,B),tail(A,C).")));
        assert!(clause_matches_metarule(&ident, &c("f(A,B) :- right(A,B).")));
        assert!(!clause_matches_metarule(&chain, &c("f(A,B) :- right(A,C).")));
        assert!(!clause_matches_metarule(&chain, &c("f(A,B) :- tail(A,C),tail(B,C).")));
        assert!(!clause_matches_metarule(&MetaruleSet::default(), &c("f(A,B) :- right(A,B).")));
    }
}
