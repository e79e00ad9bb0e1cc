use crate::bias::{clause_matches_metarule, Bias};
use crate::logic::{canonical_body, Var};

use super::symbols::{Lit, Sym, Symbols};

/// A canonical clause body for a fixed head symbol, with cached metadata.
pub(crate) struct PoolClause {
    pub body: Box<[Lit]>,
    /// Invented symbols called in the body.
    pub calls: u64,
    pub recursive: bool,
    pub sym_mask: u128,
    /// Distinct constraint clauses of this head already examined.
    pub seen: u32,
    /// Constraint entries of this head when `related` was last brought up
    /// to date.
    pub synced: u32,
    /// `(clause id, down, up, entries examined)` for the distinct constraint
    /// clauses this clause is related to by subsumption. `down` says the
    /// constraint clause subsumes this one, `up` the converse.
    pub related: Vec<(u32, bool, bool, u32)>,
    pub banned: bool,
}

/// Body symbols a clause headed by `head` may call: nothing lower than the
/// head, the head itself only under recursion, and no other arity of the
/// head's invented index.
pub(crate) fn body_symbols(bias: &Bias, syms: &Symbols, head: Sym) -> Vec<Sym> {
    let head_index = syms.info[head as usize].pred.invented_index();
    (head..syms.len() as Sym)
        .filter(|&s| {
            if s == head {
                return bias.recursion_enabled;
            }
            match (head_index, syms.info[s as usize].pred.invented_index()) {
                (Some(a), Some(b)) => a != b,
                _ => true,
            }
        })
        .collect()
}

/// Every set of invented symbols a body of at most `max_body` literals headed
/// by `head` may call, at most one arity per index, in increasing order.
pub(crate) fn call_masks(syms: &Symbols, allowed: &[Sym], max_body: usize) -> Vec<u64> {
    let inv: Vec<Sym> = allowed.iter().copied().filter(|&s| syms.is_invented(s)).collect();
    let mut out = vec![0u64];
    for &s in &inv {
        let k = syms.info[s as usize].pred.invented_index();
        let more: Vec<u64> = out
            .iter()
            .filter(|&&m| {
                (m.count_ones() as usize) < max_body
                    && (0..64).filter(|b| m >> b & 1 == 1).all(|b| syms.info[b + 1].pred.invented_index() != k)
            })
            .map(|m| m | syms.inv_bit(s))
            .collect();
        out.extend(more);
    }
    out.sort_unstable();
    out
}

/// Every literal over `syms` with distinct argument variables below
/// `max_vars`, sorted.
pub(crate) fn candidate_literals(syms: &Symbols, allowed: &[Sym], max_vars: usize) -> Vec<Lit> {
    let mut out = Vec::new();
    for &s in allowed {
        let a = syms.arity(s);
        let mut args = Vec::with_capacity(a);
        tuples(a, max_vars, &mut args, &mut |args| out.push(Lit::new(s, args)));
    }
    out.sort();
    out
}

fn tuples(a: usize, n: usize, cur: &mut Vec<Var>, f: &mut dyn FnMut(&[Var])) {
    if cur.len() == a {
        f(cur);
        return;
    }
    for v in 0..n as u8 {
        if !cur.contains(&Var(v)) {
            cur.push(Var(v));
            tuples(a, n, cur, f);
            cur.pop();
        }
    }
}

struct Builder<'a> {
    bias: &'a Bias,
    syms: &'a Symbols,
    head: Sym,
    head_arity: usize,
    len: usize,
    /// Exact set of invented symbols the body must call.
    calls: u64,
    cands: &'a [Lit],
    max_arity: usize,
    body: Vec<Lit>,
    counts: [u8; 16],
    /// Declared type each variable has met so far.
    types: [Option<u16>; 16],
    out: Vec<PoolClause>,
}

impl Builder<'_> {
    fn deficit(&self, top: i32) -> usize {
        (0..=top).filter(|&v| self.counts[v as usize] < 2).count()
    }

    fn dfs(&mut self, start: usize, top: i32) {
        let remaining = self.len - self.body.len();
        if remaining == 0 {
            if self.deficit(top) == 0 {
                self.leaf();
            }
            return;
        }
        if self.deficit(top) > remaining * self.max_arity {
            return;
        }
        let mut seen = 0;
        for l in &self.body {
            seen |= self.syms.inv_bit(l.pred);
        }
        if ((self.calls & !seen).count_ones() as usize) > remaining {
            return;
        }
        for i in start..self.cands.len() {
            let lit = self.cands[i];
            if self.syms.is_invented(lit.pred) && self.calls & self.syms.inv_bit(lit.pred) == 0 {
                continue;
            }
            // Body-only variables must appear in increasing order.
            let mut t = top;
            let mut ok = true;
            for v in lit.vars() {
                let v = v.0 as i32;
                if v >= self.head_arity as i32 {
                    if v > t + 1 {
                        ok = false;
                        break;
                    }
                    t = t.max(v);
                }
            }
            if !ok {
                continue;
            }
            let saved = self.types;
            if let Some(ts) = &self.syms.info[lit.pred as usize].types {
                let clash = lit.vars().iter().zip(ts).any(|(v, t)| {
                    let slot = &mut self.types[v.index()];
                    match slot {
                        Some(u) => u != t,
                        None => {
                            *slot = Some(*t);
                            false
                        }
                    }
                });
                if clash {
                    self.types = saved;
                    continue;
                }
            }
            for v in lit.vars() {
                self.counts[v.index()] += 1;
            }
            self.body.push(lit);
            self.dfs(i + 1, t);
            self.body.pop();
            for v in lit.vars() {
                self.counts[v.index()] -= 1;
            }
            self.types = saved;
        }
    }

    fn leaf(&mut self) {
        let head_lit = self.syms.head_lit(self.head);
        if self.body.contains(&head_lit) {
            return;
        }
        if canonical_body(self.head_arity, &self.body) != self.body {
            return;
        }
        let clause = [(self.head, self.body.as_slice())];
        if !self.syms.types_ok(&clause) || !self.syms.modes_ok(&clause) {
            return;
        }
        if let Some(ms) = &self.bias.metarules {
            if !clause_matches_metarule(ms, &self.syms.to_clause(self.head, &self.body)) {
                return;
            }
        }
        let mut calls = 0;
        let mut sym_mask = 0;
        for l in &self.body {
            calls |= self.syms.inv_bit(l.pred);
            sym_mask |= Symbols::mask_bit(l.pred);
        }
        if calls != self.calls {
            return;
        }
        self.out.push(PoolClause {
            body: self.body.clone().into_boxed_slice(),
            calls,
            recursive: self.body.iter().any(|l| l.pred == self.head),
            sym_mask,
            seen: 0,
            synced: 0,
            related: Vec::new(),
            banned: false,
        });
    }
}

/// All canonical, well-formed, type- and mode-consistent clauses with the
/// given head, exactly `len` body literals and exactly the invented calls in
/// `calls`, in clause order.
pub(crate) fn build_pool(
    bias: &Bias,
    syms: &Symbols,
    head: Sym,
    len: usize,
    calls: u64,
    cands: &[Lit],
) -> Vec<PoolClause> {
    let head_arity = syms.arity(head);
    if head_arity > bias.max_vars {
        return Vec::new();
    }
    let mut b = Builder {
        bias,
        syms,
        head,
        head_arity,
        len,
        calls,
        cands,
        max_arity: cands.iter().map(|l| l.arity as usize).max().unwrap_or(0),
        body: Vec::with_capacity(len),
        counts: [0; 16],
        types: [None; 16],
        out: Vec::new(),
    };
    if let Some(ts) = &syms.info[head as usize].types {
        for (v, t) in ts.iter().enumerate() {
            b.types[v] = Some(*t);
        }
    }
    for v in 0..head_arity {
        b.counts[v] = 1;
    }
    b.dfs(0, head_arity as i32 - 1);
    b.out
}
