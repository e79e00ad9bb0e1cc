//! The ten list puzzles: their meanings, background knowledge, reference
//! programs and example samplers.

use rand::Rng;

use crate::term::{GroundAtom, GroundTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Puzzle {
    Addhead,
    Dropk,
    Droplast,
    Evens,
    Finddup,
    Last,
    Len,
    Member,
    Sorted,
    Threesame,
}

pub const ALL_PUZZLES: [Puzzle; 10] = [
    Puzzle::Addhead,
    Puzzle::Dropk,
    Puzzle::Droplast,
    Puzzle::Evens,
    Puzzle::Finddup,
    Puzzle::Last,
    Puzzle::Len,
    Puzzle::Member,
    Puzzle::Sorted,
    Puzzle::Threesame,
];

/// Longest generated list.
pub const MAX_LEN: usize = 50;
/// Largest generated element; elements are drawn from `1..=MAX_ELEM`.
pub const MAX_ELEM: i64 = 100;

const COMMON_BK: [&str; 9] = ["head", "tail", "decrement", "geq", "empty", "zero", "one", "even", "odd"];

impl Puzzle {
    pub fn name(self) -> &'static str {
        match self {
            Puzzle::Addhead => "addhead",
            Puzzle::Dropk => "dropk",
            Puzzle::Droplast => "droplast",
            Puzzle::Evens => "evens",
            Puzzle::Finddup => "finddup",
            Puzzle::Last => "last",
            Puzzle::Len => "len",
            Puzzle::Member => "member",
            Puzzle::Sorted => "sorted",
            Puzzle::Threesame => "threesame",
        }
    }

    pub fn from_name(s: &str) -> Option<Puzzle> {
        ALL_PUZZLES.into_iter().find(|p| p.name() == s)
    }

    /// Argument types of the target.
    pub fn signature(self) -> &'static [&'static str] {
        match self {
            Puzzle::Addhead | Puzzle::Droplast => &["list", "list"],
            Puzzle::Dropk => &["list", "int", "list"],
            Puzzle::Evens | Puzzle::Sorted | Puzzle::Threesame => &["list"],
            Puzzle::Finddup | Puzzle::Last | Puzzle::Len | Puzzle::Member => &["list", "int"],
        }
    }

    /// Target directions: the answer is an output where some program can
    /// compute it, an input otherwise.
    pub fn directions(self) -> &'static [&'static str] {
        match self {
            Puzzle::Addhead | Puzzle::Droplast | Puzzle::Finddup | Puzzle::Last | Puzzle::Member => &["in", "out"],
            Puzzle::Dropk => &["in", "in", "out"],
            Puzzle::Len => &["in", "in"],
            Puzzle::Evens | Puzzle::Sorted | Puzzle::Threesame => &["in"],
        }
    }

    pub fn builtins(self) -> Vec<&'static str> {
        let mut v = COMMON_BK.to_vec();
        match self {
            Puzzle::Len => v.push("increment"),
            Puzzle::Finddup => v.push("member"),
            Puzzle::Addhead | Puzzle::Dropk | Puzzle::Droplast => v.push("cons"),
            _ => {}
        }
        v
    }

    /// A hand-written program for the puzzle within the default bounds.
    pub fn reference(self) -> &'static str {
        match self {
            Puzzle::Addhead => "addhead(A,B) :- head(A,C),cons(C,A,B).",
            Puzzle::Dropk => "dropk(A,B,C) :- one(B),tail(A,C). dropk(A,B,C) :- tail(A,D),decrement(B,E),dropk(D,E,C).",
            Puzzle::Droplast => {
                "droplast(A,B) :- tail(A,B),empty(B). droplast(A,B) :- head(A,C),tail(A,D),droplast(D,E),cons(C,E,B)."
            }
            Puzzle::Evens => "evens(A) :- empty(A). evens(A) :- head(A,B),even(B),tail(A,C),evens(C).",
            Puzzle::Finddup => {
                "finddup(A,B) :- head(A,B),tail(A,C),member(C,B). finddup(A,B) :- tail(A,C),finddup(C,B)."
            }
            Puzzle::Last => "last(A,B) :- tail(A,C),empty(C),head(A,B). last(A,B) :- tail(A,C),last(C,B).",
            Puzzle::Len => "len(A,B) :- empty(A),zero(B). len(A,B) :- tail(A,C),decrement(B,D),len(C,D).",
            Puzzle::Member => "member(A,B) :- head(A,B). member(A,B) :- tail(A,C),member(C,B).",
            Puzzle::Sorted => {
                "sorted(A) :- tail(A,B),empty(B). sorted(A) :- head(A,B),tail(A,C),head(C,D),geq(D,B),sorted(C)."
            }
            Puzzle::Threesame => "threesame(A) :- head(A,B),tail(A,C),head(C,B),tail(C,D),head(D,B).",
        }
    }

    /// The intended meaning, over integer lists.
    pub fn holds(self, args: &[Val]) -> bool {
        match (self, args) {
            (Puzzle::Addhead, [Val::L(a), Val::L(b)]) => {
                !a.is_empty() && b.len() == a.len() + 1 && b[0] == a[0] && b[1..] == a[..]
            }
            (Puzzle::Dropk, [Val::L(a), Val::I(k), Val::L(b)]) => {
                *k >= 0 && (*k as usize) <= a.len() && a[*k as usize..] == b[..]
            }
            (Puzzle::Droplast, [Val::L(a), Val::L(b)]) => !a.is_empty() && a[..a.len() - 1] == b[..],
            (Puzzle::Evens, [Val::L(a)]) => a.iter().all(|x| x % 2 == 0),
            (Puzzle::Finddup, [Val::L(a), Val::I(x)]) => a.iter().filter(|y| *y == x).count() >= 2,
            (Puzzle::Last, [Val::L(a), Val::I(x)]) => a.last() == Some(x),
            (Puzzle::Len, [Val::L(a), Val::I(n)]) => *n == a.len() as i64,
            (Puzzle::Member, [Val::L(a), Val::I(x)]) => a.contains(x),
            (Puzzle::Sorted, [Val::L(a)]) => a.windows(2).all(|w| w[0] <= w[1]),
            (Puzzle::Threesame, [Val::L(a)]) => a.len() >= 3 && a[0] == a[1] && a[1] == a[2],
            _ => false,
        }
    }

    /// One positive example.
    pub fn positive(self, rng: &mut impl Rng) -> Vec<Val> {
        match self {
            Puzzle::Addhead => {
                let a = list(rng, 1);
                let mut b = a.clone();
                b.insert(0, a[0]);
                vec![Val::L(a), Val::L(b)]
            }
            Puzzle::Dropk => {
                let a = list(rng, 1);
                let k = rng.gen_range(1..=a.len());
                let b = a[k..].to_vec();
                vec![Val::L(a), Val::I(k as i64), Val::L(b)]
            }
            Puzzle::Droplast => {
                let a = list(rng, 1);
                let b = a[..a.len() - 1].to_vec();
                vec![Val::L(a), Val::L(b)]
            }
            Puzzle::Evens => {
                let n = rng.gen_range(1..=MAX_LEN);
                vec![Val::L((0..n).map(|_| 2 * rng.gen_range(1..=MAX_ELEM / 2)).collect())]
            }
            Puzzle::Finddup => {
                let mut a = list(rng, 1);
                if a.len() == MAX_LEN {
                    a.pop();
                }
                let x = a[rng.gen_range(0..a.len())];
                a.insert(rng.gen_range(0..=a.len()), x);
                vec![Val::L(a), Val::I(x)]
            }
            Puzzle::Last => {
                let a = list(rng, 1);
                let x = *a.last().unwrap();
                vec![Val::L(a), Val::I(x)]
            }
            Puzzle::Len => {
                let a = list(rng, 0);
                let n = a.len() as i64;
                vec![Val::L(a), Val::I(n)]
            }
            Puzzle::Member => {
                let a = list(rng, 1);
                let x = a[rng.gen_range(0..a.len())];
                vec![Val::L(a), Val::I(x)]
            }
            Puzzle::Sorted => {
                let mut a = list(rng, 1);
                a.sort_unstable();
                vec![Val::L(a)]
            }
            Puzzle::Threesame => {
                let mut a = list(rng, 3);
                a[1] = a[0];
                a[2] = a[0];
                vec![Val::L(a)]
            }
        }
    }

    /// A candidate negative, often a near miss of a positive. May still be
    /// positive; callers filter with [`Puzzle::holds`].
    pub fn negative_candidate(self, rng: &mut impl Rng) -> Vec<Val> {
        let mut v = self.positive(rng);
        let near = rng.gen_bool(0.5);
        match (self, v.as_mut_slice()) {
            (Puzzle::Evens | Puzzle::Sorted | Puzzle::Threesame, [a]) => *a = Val::L(list(rng, 1)),
            (Puzzle::Dropk, [Val::L(a), Val::I(k), b]) => {
                if near {
                    let j = rng.gen_range(0..=a.len());
                    *b = Val::L(a[j..].to_vec());
                } else {
                    *k = rng.gen_range(1..=a.len() as i64);
                    *b = Val::L(list(rng, 0));
                }
            }
            (_, [Val::L(a), b]) => match b {
                Val::I(x) => {
                    if near && !a.is_empty() {
                        *x = a[rng.gen_range(0..a.len())];
                    } else {
                        *x = rng.gen_range(if self == Puzzle::Len { 0..=MAX_LEN as i64 } else { 1..=MAX_ELEM });
                    }
                }
                Val::L(l) => {
                    if near && !l.is_empty() {
                        let i = rng.gen_range(0..l.len());
                        l[i] = rng.gen_range(1..=MAX_ELEM);
                    } else {
                        *l = list(rng, 0);
                    }
                }
            },
            _ => unreachable!("puzzle arities are fixed"),
        }
        v
    }
}

/// An argument value of a puzzle example.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    I(i64),
    L(Vec<i64>),
}

impl Val {
    pub fn to_term(&self) -> GroundTerm {
        match self {
            Val::I(x) => GroundTerm::Int(*x),
            Val::L(l) => GroundTerm::ints(l),
        }
    }

    pub fn from_term(t: &GroundTerm) -> Option<Val> {
        match t {
            GroundTerm::Int(x) => Some(Val::I(*x)),
            GroundTerm::List(l) => l.as_slice().iter().map(GroundTerm::as_int).collect::<Option<_>>().map(Val::L),
            _ => None,
        }
    }
}

pub fn to_atom(p: Puzzle, args: &[Val]) -> GroundAtom {
    GroundAtom::new(p.name(), args.iter().map(Val::to_term).collect())
}

fn list(rng: &mut impl Rng, min_len: usize) -> Vec<i64> {
    let n = rng.gen_range(min_len..=MAX_LEN);
    (0..n).map(|_| rng.gen_range(1..=MAX_ELEM)).collect()
}
