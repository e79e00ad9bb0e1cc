use std::collections::BTreeMap;

use crate::bias::{fixed_in_masks, greedy_order, Bias};
use crate::logic::{Atom, Clause, Literal, Predicate, Var};

use super::MAX_ARITY;

pub(crate) type Sym = u16;

/// Compact literal. Symbol ids are assigned in predicate order, so the
/// derived order agrees with the order on [`Literal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Lit {
    pub pred: Sym,
    pub args: [Var; MAX_ARITY],
    pub arity: u8,
}

impl Lit {
    pub fn new(pred: Sym, args: &[Var]) -> Self {
        let mut a = [Var(0); MAX_ARITY];
        a[..args.len()].copy_from_slice(args);
        Lit { pred, args: a, arity: args.len() as u8 }
    }

    pub fn vars(&self) -> &[Var] {
        &self.args[..self.arity as usize]
    }
}

impl Atom for Lit {
    type Pred = Sym;
    fn pred(&self) -> &Sym {
        &self.pred
    }
    fn args(&self) -> &[Var] {
        self.vars()
    }
    fn with_args(&self, args: &[Var]) -> Self {
        Lit::new(self.pred, args)
    }
}

pub(crate) struct SymInfo {
    pub pred: Predicate,
    /// Alternative `in` masks; empty for invented symbols.
    pub masks: Vec<u8>,
    /// Declared argument types as ids; `None` for invented symbols and an
    /// untyped target.
    pub types: Option<Vec<u16>>,
}

/// Every predicate the generator may use, sorted. Id 0 is the target,
/// ids `1..=n_inv` the invented symbols, background relations follow.
pub(crate) struct Symbols {
    pub info: Vec<SymInfo>,
    pub n_inv: usize,
    ids: BTreeMap<Predicate, Sym>,
    /// Ids handed to predicates met only in constraints.
    extra: BTreeMap<Predicate, Sym>,
    pub typed: bool,
}

impl Symbols {
    pub fn new(bias: &Bias) -> Self {
        let mut preds = vec![bias.target()];
        preds.extend(bias.invented_symbols());
        preds.extend(bias.body_predicates());
        let mut names: Vec<&str> = Vec::new();
        let info: Vec<SymInfo> = preds
            .into_iter()
            .map(|pred| {
                let types = if pred.is_invented() {
                    None
                } else {
                    bias.types_of(&pred).map(|ts| {
                        ts.iter()
                            .map(|t| {
                                let id = names.iter().position(|n| n == t).unwrap_or_else(|| {
                                    names.push(t);
                                    names.len() - 1
                                });
                                id as u16
                            })
                            .collect()
                    })
                };
                let masks = if pred.is_invented() { Vec::new() } else { fixed_in_masks(bias, &pred) };
                SymInfo { pred, masks, types }
            })
            .collect();
        let ids = info.iter().enumerate().map(|(i, s)| (s.pred.clone(), i as Sym)).collect();
        Symbols {
            n_inv: bias.invented_symbols().len(),
            info,
            ids,
            extra: BTreeMap::new(),
            typed: !bias.types.is_empty(),
        }
    }

    pub fn len(&self) -> usize {
        self.info.len()
    }

    pub fn arity(&self, s: Sym) -> usize {
        self.info[s as usize].pred.arity()
    }

    pub fn is_invented(&self, s: Sym) -> bool {
        s >= 1 && (s as usize) <= self.n_inv
    }

    /// Bit of an invented symbol in the 64-bit invented masks.
    pub fn inv_bit(&self, s: Sym) -> u64 {
        if self.is_invented(s) {
            1 << (s - 1)
        } else {
            0
        }
    }

    pub fn id(&self, p: &Predicate) -> Option<Sym> {
        self.ids.get(p).copied()
    }

    /// Id for a predicate, allocating a fresh one beyond the table if the
    /// generator never uses it.
    pub fn id_or_extra(&mut self, p: &Predicate) -> Sym {
        if let Some(s) = self.id(p) {
            return s;
        }
        let next = (self.info.len() + self.extra.len()) as Sym;
        *self.extra.entry(p.clone()).or_insert(next)
    }

    pub fn mask_bit(s: Sym) -> u128 {
        1u128 << (s as usize).min(127)
    }

    pub fn head_lit(&self, s: Sym) -> Lit {
        let args: Vec<Var> = (0..self.arity(s) as u8).map(Var).collect();
        Lit::new(s, &args)
    }

    pub fn to_literal(&self, l: &Lit) -> Literal {
        Literal::new(self.info[l.pred as usize].pred.clone(), l.vars().to_vec())
    }

    pub fn to_clause(&self, head: Sym, body: &[Lit]) -> Clause {
        Clause::new(self.to_literal(&self.head_lit(head)), body.iter().map(|l| self.to_literal(l)).collect())
    }

    /// Does some direction tuple per invented symbol make every clause
    /// schedulable?
    pub fn modes_ok(&self, clauses: &[(Sym, &[Lit])]) -> bool {
        let mut inv: Vec<Sym> = Vec::new();
        for (h, body) in clauses {
            for s in std::iter::once(*h).chain(body.iter().map(|l| l.pred)) {
                if self.is_invented(s) && !inv.contains(&s) {
                    inv.push(s);
                }
            }
        }
        let total: usize = inv.iter().map(|&s| self.arity(s)).sum();
        let mut chosen = vec![0u8; self.len()];
        'codes: for code in 0..1u64 << total {
            let mut shift = 0;
            for &s in &inv {
                let a = self.arity(s);
                chosen[s as usize] = (!(code >> shift) & ((1 << a) - 1)) as u8;
                shift += a;
            }
            for (h, body) in clauses {
                let masks = |s: Sym| -> &[u8] {
                    if self.is_invented(s) {
                        std::slice::from_ref(&chosen[s as usize])
                    } else {
                        &self.info[s as usize].masks
                    }
                };
                let hm = masks(*h).iter().fold(u8::MAX, |a, b| a & b);
                let bound = (0..self.arity(*h)).filter(|i| hm >> i & 1 == 1).fold(0u32, |b, i| b | 1 << i);
                let lits: Vec<(&[u8], &[Var])> = body.iter().map(|l| (masks(l.pred), l.vars())).collect();
                if greedy_order(bound, &lits).is_none() {
                    continue 'codes;
                }
            }
            return true;
        }
        false
    }

    /// Type consistency across the given clauses: invented symbols and an
    /// untyped target get one shared slot per argument position.
    pub fn types_ok(&self, clauses: &[(Sym, &[Lit])]) -> bool {
        if !self.typed {
            return true;
        }
        let mut uf = Uf::default();
        let mut slots: BTreeMap<Sym, usize> = BTreeMap::new();
        for (h, body) in clauses {
            let head = self.head_lit(*h);
            let mut var_node = [usize::MAX; 64];
            for l in std::iter::once(&head).chain(body.iter()) {
                let info = &self.info[l.pred as usize];
                let base = match (&info.types, self.is_invented(l.pred) || l.pred == 0) {
                    (Some(_), _) => None,
                    (None, true) => Some(*slots.entry(l.pred).or_insert_with(|| {
                        let b = uf.ty.len();
                        for _ in 0..l.arity {
                            uf.add(None);
                        }
                        b
                    })),
                    (None, false) => continue,
                };
                for (i, v) in l.vars().iter().enumerate() {
                    let vn = &mut var_node[v.index()];
                    if *vn == usize::MAX {
                        *vn = uf.add(None);
                    }
                    let vn = *vn;
                    let ok = match (base, &info.types) {
                        (Some(b), _) => uf.union(vn, b + i),
                        (None, Some(ts)) => {
                            let t = uf.add(Some(ts[i]));
                            uf.union(vn, t)
                        }
                        _ => true,
                    };
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Default)]
struct Uf {
    parent: Vec<usize>,
    ty: Vec<Option<u16>>,
}

impl Uf {
    fn add(&mut self, t: Option<u16>) -> usize {
        self.parent.push(self.parent.len());
        self.ty.push(t);
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return true;
        }
        match (self.ty[ra], self.ty[rb]) {
            (Some(x), Some(y)) if x != y => return false,
            (None, t) => self.ty[ra] = t,
            _ => {}
        }
        self.parent[rb] = ra;
        true
    }
}
