use crate::bias::Direction::{self, In, Out};
use crate::term::{GroundTerm, List};

/// Natively evaluated background relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Builtin {
    Head,
    Tail,
    Empty,
    Zero,
    One,
    Even,
    Odd,
    Decrement,
    Increment,
    Geq,
    Cons,
    Member,
    Right,
    Reverse,
}

/// Right edge of the robot grid.
pub const GRID_MAX: i64 = 100;

pub const ALL: [Builtin; 14] = [
    Builtin::Head,
    Builtin::Tail,
    Builtin::Empty,
    Builtin::Zero,
    Builtin::One,
    Builtin::Even,
    Builtin::Odd,
    Builtin::Decrement,
    Builtin::Increment,
    Builtin::Geq,
    Builtin::Cons,
    Builtin::Member,
    Builtin::Right,
    Builtin::Reverse,
];

impl Builtin {
    pub fn from_name(name: &str) -> Option<Builtin> {
        ALL.iter().copied().find(|b| b.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Head => "head",
            Builtin::Tail => "tail",
            Builtin::Empty => "empty",
            Builtin::Zero => "zero",
            Builtin::One => "one",
            Builtin::Even => "even",
            Builtin::Odd => "odd",
            Builtin::Decrement => "decrement",
            Builtin::Increment => "increment",
            Builtin::Geq => "geq",
            Builtin::Cons => "cons",
            Builtin::Member => "member",
            Builtin::Right => "right",
            Builtin::Reverse => "reverse",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Builtin::Empty | Builtin::Zero | Builtin::One | Builtin::Even | Builtin::Odd => 1,
            Builtin::Cons => 3,
            _ => 2,
        }
    }

    /// Supported call modes.
    pub fn modes(self) -> Vec<Vec<Direction>> {
        match self {
            Builtin::Empty | Builtin::Zero | Builtin::One | Builtin::Even | Builtin::Odd => vec![vec![In]],
            Builtin::Geq => vec![vec![In, In]],
            Builtin::Cons => vec![vec![In, In, Out], vec![Out, Out, In]],
            _ => vec![vec![In, Out]],
        }
    }

    /// All argument tuples consistent with the bound arguments. `Err(i)`
    /// reports an input position `i` that is unbound in every mode.
    pub fn solve(self, args: &[Option<&GroundTerm>]) -> Result<Vec<Vec<GroundTerm>>, usize> {
        let int = |i: usize| args[i].and_then(GroundTerm::as_int);
        let list = |i: usize| args[i].and_then(GroundTerm::as_list);
        let need = |i: usize| if args[i].is_none() { Err(i) } else { Ok(()) };
        let one = |v: Vec<GroundTerm>| Ok(vec![v]);
        let none = || Ok(Vec::new());
        let test1 = |ok: Option<bool>| -> Result<Vec<Vec<GroundTerm>>, usize> {
            need(0)?;
            if ok == Some(true) {
                one(vec![args[0].unwrap().clone()])
            } else {
                none()
            }
        };
        match self {
            Builtin::Head => {
                need(0)?;
                match list(0).and_then(List::head) {
                    Some(h) => one(vec![args[0].unwrap().clone(), h.clone()]),
                    None => none(),
                }
            }
            Builtin::Tail => {
                need(0)?;
                match list(0).and_then(List::tail) {
                    Some(t) => one(vec![args[0].unwrap().clone(), GroundTerm::List(t)]),
                    None => none(),
                }
            }
            Builtin::Reverse => {
                need(0)?;
                match list(0) {
                    Some(l) => {
                        let r: Vec<GroundTerm> = l.as_slice().iter().rev().cloned().collect();
                        one(vec![args[0].unwrap().clone(), GroundTerm::list(r)])
                    }
                    None => none(),
                }
            }
            Builtin::Member => {
                need(0)?;
                Ok(list(0)
                    .map(|l| l.as_slice().iter().map(|x| vec![args[0].unwrap().clone(), x.clone()]).collect())
                    .unwrap_or_default())
            }
            Builtin::Empty => test1(list(0).map(List::is_empty)),
            Builtin::Zero => test1(int(0).map(|n| n == 0)),
            Builtin::One => test1(int(0).map(|n| n == 1)),
            Builtin::Even => test1(int(0).map(|n| n % 2 == 0)),
            Builtin::Odd => test1(int(0).map(|n| n % 2 != 0)),
            Builtin::Decrement => {
                need(0)?;
                match int(0) {
                    Some(n) if n > 0 => one(vec![GroundTerm::Int(n), GroundTerm::Int(n - 1)]),
                    _ => none(),
                }
            }
            Builtin::Increment => {
                need(0)?;
                match int(0) {
                    Some(n) => one(vec![GroundTerm::Int(n), GroundTerm::Int(n + 1)]),
                    None => none(),
                }
            }
            Builtin::Geq => {
                need(0)?;
                need(1)?;
                match (int(0), int(1)) {
                    (Some(a), Some(b)) if a >= b => one(vec![GroundTerm::Int(a), GroundTerm::Int(b)]),
                    _ => none(),
                }
            }
            Builtin::Right => {
                need(0)?;
                match args[0].and_then(GroundTerm::as_pair) {
                    Some((x, y)) => match x.as_int() {
                        Some(x) if x < GRID_MAX => {
                            one(vec![args[0].unwrap().clone(), GroundTerm::pair(GroundTerm::Int(x + 1), y.clone())])
                        }
                        _ => none(),
                    },
                    None => none(),
                }
            }
            Builtin::Cons => {
                if let (Some(a), Some(b)) = (args[0], args[1]) {
                    match b.as_list() {
                        Some(l) => one(vec![a.clone(), b.clone(), GroundTerm::List(List::cons(a.clone(), l))]),
                        None => none(),
                    }
                } else if let Some(c) = args[2] {
                    match c.as_list() {
                        Some(l) if !l.is_empty() => {
                            one(vec![l.head().unwrap().clone(), GroundTerm::List(l.tail().unwrap()), c.clone()])
                        }
                        _ => none(),
                    }
                } else {
                    Err(if args[0].is_none() { 0 } else { 1 })
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(b: Builtin, args: &[Option<GroundTerm>]) -> Result<Vec<Vec<GroundTerm>>, usize> {
        let refs: Vec<Option<&GroundTerm>> = args.iter().map(Option::as_ref).collect();
        b.solve(&refs)
    }

    #[test]
    fn list_relations() {
        let l = GroundTerm::ints(&[3, 1, 3]);
        assert_eq!(solve(Builtin::Head, &[Some(l.clone()), None]).unwrap()[0][1], GroundTerm::Int(3));
        assert_eq!(solve(Builtin::Tail, &[Some(l.clone()), None]).unwrap()[0][1], GroundTerm::ints(&[1, 3]));
        assert_eq!(solve(Builtin::Member, &[Some(l.clone()), None]).unwrap().len(), 3);
        assert!(solve(Builtin::Empty, &[Some(l.clone())]).unwrap().is_empty());
        assert_eq!(solve(Builtin::Head, &[None, None]), Err(0));
    }

    #[test]
    fn cons_both_ways() {
        let built = solve(Builtin::Cons, &[Some(GroundTerm::Int(1)), Some(GroundTerm::ints(&[2])), None]).unwrap();
        assert_eq!(built[0][2], GroundTerm::ints(&[1, 2]));
        let split = solve(Builtin::Cons, &[None, None, Some(GroundTerm::ints(&[1, 2]))]).unwrap();
        assert_eq!(split[0][0], GroundTerm::Int(1));
        assert_eq!(split[0][1], GroundTerm::ints(&[2]));
    }

    #[test]
    fn grid_border() {
        let p = |x| GroundTerm::pair(GroundTerm::Int(x), GroundTerm::Int(0));
        assert_eq!(solve(Builtin::Right, &[Some(p(99)), None]).unwrap()[0][1], p(100));
        assert!(solve(Builtin::Right, &[Some(p(100)), None]).unwrap().is_empty());
    }

    #[test]
    fn arithmetic() {
        assert!(solve(Builtin::Decrement, &[Some(GroundTerm::Int(0)), None]).unwrap().is_empty());
        assert!(solve(Builtin::Geq, &[Some(GroundTerm::Int(2)), Some(GroundTerm::Int(2))]).unwrap().len() == 1);
        assert!(solve(Builtin::Odd, &[Some(GroundTerm::Int(-3))]).unwrap().len() == 1);
    }
}
