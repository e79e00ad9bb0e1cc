//! Ground terms appearing in examples and background knowledge.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::syntax::Term;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroundTerm {
    Int(i64),
    Atom(Arc<str>),
    List(List),
    Pair(Arc<(GroundTerm, GroundTerm)>),
}

/// An immutable list whose tails share storage with the original.
#[derive(Clone, Debug)]
pub struct List {
    items: Arc<[GroundTerm]>,
    start: usize,
}

impl List {
    pub fn new(items: Vec<GroundTerm>) -> Self {
        List { items: items.into(), start: 0 }
    }

    pub fn as_slice(&self) -> &[GroundTerm] {
        &self.items[self.start..]
    }

    pub fn len(&self) -> usize {
        self.items.len() - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn head(&self) -> Option<&GroundTerm> {
        self.as_slice().first()
    }

    pub fn tail(&self) -> Option<List> {
        (!self.is_empty()).then(|| List { items: self.items.clone(), start: self.start + 1 })
    }

    pub fn cons(head: GroundTerm, tail: &List) -> List {
        let mut v = Vec::with_capacity(tail.len() + 1);
        v.push(head);
        v.extend_from_slice(tail.as_slice());
        List::new(v)
    }
}

impl PartialEq for List {
    fn eq(&self, other: &Self) -> bool {
        self.as_slice() == other.as_slice()
    }
}

impl Eq for List {}

impl Hash for List {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.as_slice().hash(state)
    }
}

impl PartialOrd for List {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for List {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_slice().cmp(other.as_slice())
    }
}

impl GroundTerm {
    pub fn atom(s: &str) -> Self {
        GroundTerm::Atom(s.into())
    }

    pub fn list(items: Vec<GroundTerm>) -> Self {
        GroundTerm::List(List::new(items))
    }

    pub fn ints(items: &[i64]) -> Self {
        GroundTerm::list(items.iter().map(|&i| GroundTerm::Int(i)).collect())
    }

    pub fn pair(a: GroundTerm, b: GroundTerm) -> Self {
        GroundTerm::Pair(Arc::new((a, b)))
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            GroundTerm::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&List> {
        match self {
            GroundTerm::List(l) => Some(l),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&GroundTerm, &GroundTerm)> {
        match self {
            GroundTerm::Pair(p) => Some((&p.0, &p.1)),
            _ => None,
        }
    }

    /// Converts a parsed term; fails on variables and unsupported functors.
    pub fn from_term(t: &Term) -> Result<Self, String> {
        Ok(match t {
            Term::Int(i) => GroundTerm::Int(*i),
            Term::Atom(a) => GroundTerm::atom(a),
            Term::List(items) => GroundTerm::list(items.iter().map(GroundTerm::from_term).collect::<Result<_, _>>()?),
            Term::Compound(f, args) if f == "pair" && args.len() == 2 => {
                GroundTerm::pair(GroundTerm::from_term(&args[0])?, GroundTerm::from_term(&args[1])?)
            }
            Term::Var(v) => return Err(format!("variable `{v}` in a ground term")),
            other => return Err(format!("unsupported term `{other}`")),
        })
    }
}

impl fmt::Display for GroundTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundTerm::Int(i) => write!(f, "{i}"),
            GroundTerm::Atom(a) => write!(f, "{a}"),
            GroundTerm::List(l) => {
                write!(f, "[")?;
                for (i, t) in l.as_slice().iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, "]")
            }
            GroundTerm::Pair(p) => write!(f, "pair({},{})", p.0, p.1),
        }
    }
}

/// A ground atom `pred(t1,...,tn)`, used for examples and facts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundAtom {
    pub pred: Arc<str>,
    pub args: Vec<GroundTerm>,
}

impl GroundAtom {
    pub fn new(pred: &str, args: Vec<GroundTerm>) -> Self {
        GroundAtom { pred: pred.into(), args }
    }

    pub fn from_term(t: &Term) -> Result<Self, String> {
        match t {
            Term::Atom(a) => Ok(GroundAtom::new(a, Vec::new())),
            Term::Compound(f, args) => {
                Ok(GroundAtom::new(f, args.iter().map(GroundTerm::from_term).collect::<Result<_, _>>()?))
            }
            other => Err(format!("`{other}` is not an atom")),
        }
    }

    pub fn parse(src: &str) -> Result<Self, String> {
        let t = crate::syntax::parse_term(src).map_err(|e| e.to_string())?;
        GroundAtom::from_term(&t)
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pred)?;
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shared_tails_compare_by_content() {
        let l = List::new(vec![GroundTerm::Int(1), GroundTerm::Int(2)]);
        let t = l.tail().unwrap();
        assert_eq!(GroundTerm::List(t.clone()), GroundTerm::ints(&[2]));
        assert_eq!(t.tail().unwrap().tail(), None);
        assert_eq!(List::cons(GroundTerm::Int(1), &t), l);
    }

    #[test]
    fn atoms_round_trip_through_text() {
        let a = GroundAtom::parse("f([a,b,c],pair(3,-1))").unwrap();
        assert_eq!(a.to_string(), "f([a,b,c],pair(3,-1))");
        assert!(GroundAtom::parse("f(X)").is_err());
    }
}
