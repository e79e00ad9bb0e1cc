//! Enumeration of candidate programs in non-decreasing cost order, one
//! canonical representative per program, with constraints added between
//! yields pruning the rest of the enumeration.
//!
//! Clauses are drawn from lazily built pools of canonical clause bodies, one
//! pool per (head symbol, body length, set of invented symbols called).
//! Programs are strictly increasing sequences of pool positions, which makes
//! every yield canonical. Pools whose calls cannot be defined within the
//! remaining cost are skipped without being built.

mod pool;
mod symbols;
mod valid;

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::bias::Bias;
use crate::constraints::{violates, HypothesisConstraint};
use crate::logic::{subsumes_atoms, Program};

use pool::{body_symbols, build_pool, call_masks, candidate_literals, PoolClause};
use symbols::{Lit, Sym, Symbols};

pub use valid::is_structurally_valid;

/// Largest predicate arity the generator handles.
pub const MAX_ARITY: usize = 4;

#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    pub bias: Bias,
    /// Outer cost ceiling.
    pub max_literals: usize,
}

impl GeneratorConfig {
    pub fn new(bias: Bias) -> Self {
        let max_literals = bias.default_max_literals();
        GeneratorConfig { bias, max_literals }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GeneratorStats {
    /// Programs yielded per cost level.
    pub yielded: BTreeMap<usize, u64>,
    pub pool_clauses: usize,
    pub constraints: usize,
    pub banned_clauses: usize,
}

/// A distinct clause occurring in registered constraints, with every
/// `(constraint id, clause position, is a specialisation constraint)` it
/// occurs at.
struct Shared {
    head: Lit,
    body: Vec<Lit>,
    mask: u128,
    entries: Vec<(u32, u8, bool)>,
}

struct Cond {
    pivot: Sym,
    counts: Vec<(Sym, usize)>,
    rec: usize,
}

enum Kind {
    Gen,
    Spec,
    Red(Vec<Cond>),
}

struct Compiled {
    kind: Kind,
    full: u64,
}

/// Whether a constraint prunes a program of `n` clauses whose accumulated
/// bits are `a`, given clause and recursive-clause counts per head.
/// Monotone: once true, adding clause bits keeps it true.
fn violated(comp: &Compiled, a: Acc, n: usize, counts: &[usize], recs: &[usize]) -> bool {
    let get = |v: &[usize], s: Sym| v.get(s as usize).copied().unwrap_or(0);
    match &comp.kind {
        Kind::Gen => a.up == comp.full,
        Kind::Spec => a.n_down as usize == n,
        Kind::Red(conds) => {
            a.down == comp.full
                && conds
                    .iter()
                    .any(|c| c.counts.iter().all(|&(s, n)| get(counts, s) == n) && get(recs, c.pivot) == c.rec)
        }
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq)]
struct Acc {
    down: u64,
    up: u64,
    n_down: u16,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    head: Sym,
    len: u8,
    grp: u16,
    idx: u32,
}

impl Pos {
    fn succ(self) -> Pos {
        Pos { idx: self.idx + 1, ..self }
    }
}

struct Frame {
    pos: Pos,
    log_mark: usize,
    red_mark: usize,
    cost: usize,
    called: u64,
    defined: u64,
}

pub struct Generator {
    bias: Bias,
    max_literals: usize,
    syms: Symbols,
    /// Invented symbols sharing an index, per index.
    index_masks: Vec<u64>,
    cands: Vec<Option<Vec<Lit>>>,
    /// Call sets per head, indexing the groups of each pool slot.
    call_sets: Vec<Vec<u64>>,
    pools: Vec<Vec<Option<Vec<PoolClause>>>>,
    registered: HashSet<HypothesisConstraint>,
    constraints: Vec<Compiled>,
    /// Constraints too wide for the bitmask encoding, checked directly.
    slow: Vec<HypothesisConstraint>,
    shared: Vec<Vec<Shared>>,
    shared_ids: Vec<HashMap<(Lit, Vec<Lit>), u32>>,
    /// Constraint entries per head.
    entry_count: Vec<u32>,
    prune_all: bool,
    cost: usize,
    stack: Vec<Frame>,
    next: Option<Pos>,
    exhausted: bool,
    dirty: bool,
    cur_cost: usize,
    called: u64,
    defined: u64,
    counts: Vec<usize>,
    recs: Vec<usize>,
    acc: Vec<Acc>,
    log: Vec<(u32, Acc)>,
    /// Last `epoch` in which each constraint was touched.
    stamp: Vec<u64>,
    epoch: u64,
    /// Epoch and trial bits of each constraint during a leaf check.
    probe: Vec<(u64, u64)>,
    /// Redundancy constraints whose clauses are all covered by the prefix.
    red_full: Vec<u32>,
    stats: GeneratorStats,
}

pub fn new_generator(config: GeneratorConfig) -> Generator {
    Generator::new(config)
}

impl Generator {
    pub fn new(config: GeneratorConfig) -> Self {
        let GeneratorConfig { bias, max_literals } = config;
        let syms = Symbols::new(&bias);
        let heads = 1 + syms.n_inv;
        let mut index_masks = vec![0u64; bias.max_invented() + 1];
        for s in 1..=syms.n_inv as Sym {
            let k = syms.info[s as usize].pred.invented_index().unwrap() as usize;
            index_masks[k] |= syms.inv_bit(s);
        }
        Generator {
            max_literals,
            index_masks,
            cands: (0..heads).map(|_| None).collect(),
            call_sets: (0..heads as Sym)
                .map(|h| call_masks(&syms, &body_symbols(&bias, &syms, h), bias.max_body))
                .collect(),
            pools: (0..heads * (bias.max_body + 1)).map(|_| Vec::new()).collect(),
            registered: HashSet::new(),
            constraints: Vec::new(),
            slow: Vec::new(),
            shared: (0..heads).map(|_| Vec::new()).collect(),
            shared_ids: (0..heads).map(|_| HashMap::new()).collect(),
            entry_count: vec![0; heads],
            prune_all: false,
            cost: 2,
            stack: Vec::new(),
            next: Some(Pos { head: 0, len: 1, grp: 0, idx: 0 }),
            exhausted: max_literals < 2,
            dirty: false,
            cur_cost: 0,
            called: 0,
            defined: 0,
            counts: vec![0; heads],
            recs: vec![0; heads],
            acc: Vec::new(),
            log: Vec::new(),
            stamp: Vec::new(),
            probe: Vec::new(),
            epoch: 0,
            red_full: Vec::new(),
            stats: GeneratorStats::default(),
            syms,
            bias,
        }
    }

    /// Cost level currently being enumerated.
    pub fn current_cost(&self) -> usize {
        self.cost
    }

    pub fn stats(&self) -> &GeneratorStats {
        &self.stats
    }

    pub fn bias(&self) -> &Bias {
        &self.bias
    }

    /// Next canonical program, or `None` once every cost level up to the
    /// ceiling is exhausted.
    pub fn next_program(&mut self) -> Option<Program> {
        loop {
            if self.exhausted || self.prune_all {
                return None;
            }
            if self.dirty {
                self.rebuild();
            }
            if let Some(p) = self.advance() {
                *self.stats.yielded.entry(self.cost).or_insert(0) += 1;
                return Some(p);
            }
            self.cost += 1;
            if self.cost > self.max_literals {
                self.exhausted = true;
            } else {
                self.next = Some(Pos { head: 0, len: 1, grp: 0, idx: 0 });
            }
        }
    }

    /// Registers a constraint. Every later yield, including the rest of the
    /// current cost level, satisfies it.
    pub fn add_constraint(&mut self, c: &HypothesisConstraint) {
        if !self.registered.insert(c.clone()) {
            return;
        }
        self.stats.constraints += 1;
        let h = c.program();
        if h.is_empty() {
            // Every program generalises the empty one.
            self.prune_all |= matches!(c, HypothesisConstraint::Generalisation(_));
            return;
        }
        if h.len() > 64 {
            self.slow.push(c.clone());
            return;
        }
        let cid = self.constraints.len() as u32;
        let kind = match c {
            HypothesisConstraint::Generalisation(_) => Kind::Gen,
            HypothesisConstraint::Specialisation(_) => Kind::Spec,
            HypothesisConstraint::Redundancy(_, conds) => Kind::Red(
                conds
                    .iter()
                    .map(|cond| Cond {
                        pivot: self.syms.id_or_extra(&cond.pivot),
                        counts: cond.clause_counts.iter().map(|(p, n)| (self.syms.id_or_extra(p), *n)).collect(),
                        rec: cond.pivot_recursive_count,
                    })
                    .collect(),
            ),
        };
        let spec = matches!(kind, Kind::Spec);
        for (j, clause) in h.clauses.iter().enumerate() {
            let head = match self.syms.id(&clause.head.pred) {
                Some(s) if (s as usize) <= self.syms.n_inv => s,
                // A clause no candidate can share a head with never matches.
                _ => continue,
            };
            let mut to_lit = |l: &crate::logic::Literal| {
                let s = self.syms.id_or_extra(&l.pred);
                Lit::new(s, &l.args[..l.args.len().min(MAX_ARITY)])
            };
            let head_lit = to_lit(&clause.head);
            let body: Vec<Lit> = clause.body.iter().map(&mut to_lit).collect();
            let shared = &mut self.shared[head as usize];
            let id = *self.shared_ids[head as usize].entry((head_lit, body.clone())).or_insert_with(|| {
                let mask = body.iter().fold(0, |m, l| m | Symbols::mask_bit(l.pred));
                shared.push(Shared { head: head_lit, body, mask, entries: Vec::new() });
                shared.len() as u32 - 1
            });
            shared[id as usize].entries.push((cid, j as u8, spec));
            self.entry_count[head as usize] += 1;
        }
        let full = if h.len() == 64 { u64::MAX } else { (1 << h.len()) - 1 };
        self.constraints.push(Compiled { kind, full });
        self.acc.push(Acc::default());
        self.stamp.push(0);
        self.probe.push((0, 0));
        self.dirty = true;
    }

    fn slot(&self, head: Sym, len: u8) -> usize {
        head as usize * (self.bias.max_body + 1) + len as usize
    }

    fn ensure_pool(&mut self, head: Sym, len: u8, grp: u16) -> usize {
        let slot = self.slot(head, len);
        let groups = self.call_sets[head as usize].len();
        if self.pools[slot].is_empty() {
            self.pools[slot] = (0..groups).map(|_| None).collect();
        }
        if self.pools[slot][grp as usize].is_none() {
            if self.cands[head as usize].is_none() {
                let allowed = body_symbols(&self.bias, &self.syms, head);
                self.cands[head as usize] = Some(candidate_literals(&self.syms, &allowed, self.bias.max_vars));
            }
            let cands = self.cands[head as usize].as_ref().unwrap();
            let calls = self.call_sets[head as usize][grp as usize];
            let pool = build_pool(&self.bias, &self.syms, head, len as usize, calls, cands);
            self.stats.pool_clauses += pool.len();
            self.pools[slot][grp as usize] = Some(pool);
        }
        slot
    }

    fn pc(&self, p: Pos) -> &PoolClause {
        &self.pools[self.slot(p.head, p.len)][p.grp as usize].as_ref().unwrap()[p.idx as usize]
    }

    /// Relates a pool clause to constraint clauses added since it was last
    /// looked at, banning it if a one-clause constraint rules it out.
    fn sync(&mut self, p: Pos) {
        let slot = self.slot(p.head, p.len);
        let Generator { pools, shared, constraints, syms, bias, stats, entry_count, .. } = self;
        let pc = &mut pools[slot][p.grp as usize].as_mut().unwrap()[p.idx as usize];
        if pc.synced == entry_count[p.head as usize] {
            return;
        }
        pc.synced = entry_count[p.head as usize];
        let shared = &shared[p.head as usize];
        let head = syms.head_lit(p.head);
        let mut i = 0;
        loop {
            if i == pc.related.len() {
                // Relate the next distinct clause, if any.
                let Some(e) = shared.get(pc.seen as usize) else { break };
                let id = pc.seen;
                pc.seen += 1;
                let down = e.mask & !pc.sym_mask == 0 && subsumes_atoms(&e.head, &e.body, &head, &pc.body);
                let up = pc.sym_mask & !e.mask == 0 && subsumes_atoms(&head, &pc.body, &e.head, &e.body);
                if !(down || up) {
                    continue;
                }
                pc.related.push((id, down, up, 0));
            }
            let r = &mut pc.related[i];
            i += 1;
            let entries = &shared[r.0 as usize].entries;
            for &(cid, _, _) in &entries[r.3 as usize..] {
                // One-clause constraints that hold for every program
                // containing this clause ban it outright.
                let comp = &constraints[cid as usize];
                let ban = comp.full == 1
                    && match &comp.kind {
                        Kind::Gen => r.2,
                        Kind::Red(conds) => r.1 && !bias.recursion_enabled && !conds.is_empty(),
                        Kind::Spec => false,
                    };
                if ban {
                    // A banned clause is never looked at again.
                    pc.banned = true;
                    stats.banned_clauses += 1;
                    return;
                }
            }
            r.3 = entries.len() as u32;
        }
    }

    /// Adds the bits of every constraint clause related to `p` to the
    /// accumulators, logging old values for undo. True if a generalisation
    /// constraint became violated.
    fn touch(&mut self, p: Pos) -> bool {
        self.epoch += 1;
        let epoch = self.epoch;
        let slot = self.slot(p.head, p.len);
        let Generator { pools, shared, constraints, acc, log, stamp, red_full, .. } = self;
        let pc = &pools[slot][p.grp as usize].as_ref().unwrap()[p.idx as usize];
        let shared = &shared[p.head as usize];
        let mut gen_violated = false;
        for &(id, down, up, synced) in &pc.related {
            for &(cid, j, spec) in &shared[id as usize].entries[..synced as usize] {
                let c = cid as usize;
                // Specialisation constraints only count covered clauses.
                if spec {
                    if down && stamp[c] != epoch {
                        stamp[c] = epoch;
                        log.push((cid, acc[c]));
                        acc[c].n_down += 1;
                    }
                    continue;
                }
                let comp = &constraints[c];
                let gen = matches!(comp.kind, Kind::Gen);
                let (down, up) = (!gen && down, gen && up);
                if !(down || up) {
                    continue;
                }
                let a = &mut acc[c];
                if stamp[c] != epoch {
                    stamp[c] = epoch;
                    log.push((cid, *a));
                }
                let was_full = a.down == comp.full;
                if down {
                    a.down |= 1 << j;
                }
                if up {
                    a.up |= 1 << j;
                    gen_violated |= a.up == comp.full;
                }
                if !gen && !was_full && a.down == comp.full {
                    red_full.push(cid);
                }
            }
        }
        gen_violated
    }

    /// Whether some constraint `p` relates to is violated by the prefix
    /// completed by `p`, an `n`-clause program. Leaves the accumulators
    /// alone: trial bits go to `probe`.
    fn leaf_hit(&mut self, p: Pos, n: usize) -> bool {
        self.epoch += 1;
        let epoch = self.epoch;
        let slot = self.slot(p.head, p.len);
        let Generator { pools, shared, constraints, acc, probe, counts, recs, .. } = self;
        let pc = &pools[slot][p.grp as usize].as_ref().unwrap()[p.idx as usize];
        let shared = &shared[p.head as usize];
        for &(id, down, up, synced) in &pc.related {
            for &(cid, j, spec) in &shared[id as usize].entries[..synced as usize] {
                let c = cid as usize;
                if spec {
                    if down && acc[c].n_down as usize + 1 == n {
                        return true;
                    }
                    continue;
                }
                let comp = &constraints[c];
                let gen = matches!(comp.kind, Kind::Gen);
                if !(if gen { up } else { down }) {
                    continue;
                }
                let pr = &mut probe[c];
                if pr.0 != epoch {
                    *pr = (epoch, if gen { acc[c].up } else { acc[c].down });
                }
                pr.1 |= 1 << j;
                let a = if gen { Acc { up: pr.1, ..acc[c] } } else { Acc { down: pr.1, ..acc[c] } };
                if pr.1 == comp.full && violated(comp, a, n, counts, recs) {
                    return true;
                }
            }
        }
        false
    }

    fn head_ok(&self, h: Sym) -> bool {
        let Some(top) = self.stack.last() else { return h == 0 };
        let prev = top.pos.head;
        if h < prev {
            return false;
        }
        // A new invented head must already be called by a lower clause.
        if h != prev && self.called & self.syms.inv_bit(h) == 0 {
            return false;
        }
        // Called invented symbols below the head can no longer be defined.
        let below = if h <= 1 { 0 } else { (1u64 << (h - 1)) - 1 };
        self.called & below & !self.defined == 0
    }

    fn len_ok(&self, len: usize, rem: usize) -> bool {
        let after = rem - 1 - len;
        let last = self.stack.len() + 1 == self.bias.max_clauses;
        after == 0 || (after >= 2 && !last)
    }

    /// Whether a clause with these calls can still be completed to a
    /// program of the current cost: same test as the descent in `advance`.
    fn group_ok(&self, head: Sym, len: usize, calls: u64, rem: usize) -> bool {
        let defined = self.defined | self.syms.inv_bit(head);
        let called = self.called | calls;
        let used = called | defined;
        if !self.index_masks.iter().all(|m| (used & m).count_ones() <= 1) {
            return false;
        }
        // Invented symbols below the head can no longer get a definition.
        let below = if head <= 1 { 0 } else { (1u64 << (head - 1)) - 1 };
        if calls & below & !defined != 0 {
            return false;
        }
        let undefined = (called & !defined).count_ones() as usize;
        let rem = rem - 1 - len;
        let open = self.bias.max_clauses - self.stack.len() - 1;
        if rem == 0 {
            undefined == 0
        } else {
            2 * undefined <= rem && undefined <= open
        }
    }

    fn candidate_ok(&mut self, p: Pos) -> bool {
        if self.pc(p).banned {
            return false;
        }
        self.sync(p);
        !self.pc(p).banned
    }

    fn find_candidate(&mut self, mut p: Pos) -> Option<Pos> {
        let rem = self.cost - self.cur_cost;
        let max_len = self.bias.max_body.min(rem - 1);
        loop {
            if p.head as usize > self.syms.n_inv {
                return None;
            }
            let next_head = Pos { head: p.head + 1, len: 1, grp: 0, idx: 0 };
            if !self.head_ok(p.head) || p.len as usize > max_len {
                p = next_head;
                continue;
            }
            let next_len = Pos { len: p.len + 1, grp: 0, idx: 0, ..p };
            if !self.len_ok(p.len as usize, rem) {
                p = next_len;
                continue;
            }
            let groups = &self.call_sets[p.head as usize];
            if p.grp as usize >= groups.len() {
                p = next_len;
                continue;
            }
            if !self.group_ok(p.head, p.len as usize, groups[p.grp as usize], rem) {
                p = Pos { grp: p.grp + 1, idx: 0, ..p };
                continue;
            }
            let slot = self.ensure_pool(p.head, p.len, p.grp);
            let n = self.pools[slot][p.grp as usize].as_ref().unwrap().len();
            while (p.idx as usize) < n {
                if self.candidate_ok(p) {
                    return Some(p);
                }
                p.idx += 1;
            }
            p = Pos { grp: p.grp + 1, idx: 0, ..p };
        }
    }

    /// Pushes a clause; true if the prefix now generalises a failed
    /// inconsistent program, which no extension can undo.
    fn apply(&mut self, p: Pos) -> bool {
        self.stack.push(Frame {
            pos: p,
            log_mark: self.log.len(),
            red_mark: self.red_full.len(),
            cost: self.cur_cost,
            called: self.called,
            defined: self.defined,
        });
        let pc = &self.pools[self.slot(p.head, p.len)][p.grp as usize].as_ref().unwrap()[p.idx as usize];
        self.cur_cost += 1 + p.len as usize;
        self.called |= pc.calls;
        self.defined |= self.syms.inv_bit(p.head);
        self.counts[p.head as usize] += 1;
        self.recs[p.head as usize] += pc.recursive as usize;
        // Only reachable through `rebuild`, after a new ban.
        let banned = pc.banned;
        self.touch(p) || banned
    }

    fn unapply(&mut self) -> Pos {
        let f = self.stack.pop().unwrap();
        while self.log.len() > f.log_mark {
            let (cid, old) = self.log.pop().unwrap();
            self.acc[cid as usize] = old;
        }
        self.red_full.truncate(f.red_mark);
        self.cur_cost = f.cost;
        self.called = f.called;
        self.defined = f.defined;
        let rec = self.pc(f.pos).recursive;
        self.counts[f.pos.head as usize] -= 1;
        self.recs[f.pos.head as usize] -= rec as usize;
        f.pos
    }

    /// Replays the current prefix so newly added constraints see it.
    fn rebuild(&mut self) {
        let positions: Vec<Pos> = self.stack.iter().map(|f| f.pos).collect();
        while !self.stack.is_empty() {
            self.unapply();
        }
        for p in positions {
            self.sync(p);
            self.apply(p);
        }
        self.dirty = false;
    }

    fn undefined(&self) -> usize {
        (self.called & !self.defined).count_ones() as usize
    }

    fn violated(&self, cid: u32, a: Acc, n: usize) -> bool {
        violated(&self.constraints[cid as usize], a, n, &self.counts, &self.recs)
    }

    fn clauses(&self) -> Vec<(Sym, &[Lit])> {
        self.stack.iter().map(|f| (f.pos.head, &*self.pc(f.pos).body)).collect()
    }

    /// Constraint check for the prefix completed by `p`, without pushing
    /// a frame. Only constraints `p` touches, or redundancy constraints the
    /// prefix already covers, can newly be violated.
    fn leaf_constraints_ok(&mut self, p: Pos) -> bool {
        let n = self.stack.len() + 1;
        let (head, rec) = (p.head as usize, self.pc(p).recursive as usize);
        self.counts[head] += 1;
        self.recs[head] += rec;
        let ok =
            !self.leaf_hit(p, n) && !self.red_full.iter().any(|&cid| self.violated(cid, self.acc[cid as usize], n));
        self.counts[head] -= 1;
        self.recs[head] -= rec;
        ok
    }

    /// The program formed by the prefix and `p`, if it passes every check
    /// left for complete programs.
    fn leaf(&mut self, p: Pos) -> Option<Program> {
        let pc = self.pc(p);
        let defined = self.defined | self.syms.inv_bit(p.head);
        let used = self.called | pc.calls | defined;
        if (self.called | pc.calls) & !defined != 0 {
            return None;
        }
        let mut gap = false;
        for m in &self.index_masks[1..] {
            let here = used & m != 0;
            if here && gap {
                return None;
            }
            gap |= !here;
        }
        if !self.leaf_constraints_ok(p) {
            return None;
        }
        let mut clauses = self.clauses();
        clauses.push((p.head, &*self.pc(p).body));
        if !self.syms.types_ok(&clauses) {
            return None;
        }
        if used != 0 && !self.syms.modes_ok(&clauses) {
            return None;
        }
        let prog = Program::new(clauses.into_iter().map(|(h, b)| self.syms.to_clause(h, b)).collect());
        if self.slow.iter().any(|c| violates(c, &prog)) {
            return None;
        }
        Some(prog)
    }

    /// Continues the depth-first walk over the current cost level.
    fn advance(&mut self) -> Option<Program> {
        loop {
            let pos = match self.next.take() {
                Some(p) => p,
                None => {
                    self.stack.last()?;
                    self.unapply().succ()
                }
            };
            let Some(p) = self.find_candidate(pos) else { continue };
            if self.cost - self.cur_cost == 1 + p.len as usize {
                self.next = Some(p.succ());
                if let Some(out) = self.leaf(p) {
                    return Some(out);
                }
                continue;
            }
            let pruned = self.apply(p);
            let rem = self.cost - self.cur_cost;
            let undefined = self.undefined();
            let open = self.bias.max_clauses - self.stack.len();
            if !pruned && rem >= 2 && open > 0 && 2 * undefined <= rem && undefined <= open {
                self.next = Some(p.succ());
            } else {
                self.unapply();
                self.next = Some(p.succ());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bias::parse_bias;
    use crate::logic::parse_program;

    fn micro() -> Bias {
        parse_bias(
            "head_pred(f,2). body_pred(right,2). direction(f,(in,out)). direction(right,(in,out)).
             setting(max_vars,3). setting(max_body,2). setting(max_clauses,1). setting(enable_pi,false).",
        )
        .unwrap()
    }

    fn drain(g: &mut Generator) -> Vec<Program> {
        std::iter::from_fn(|| g.next_program()).collect()
    }

    #[test]
    fn micro_yields() {
        let mut g = new_generator(GeneratorConfig { bias: micro(), max_literals: 3 });
        let all = drain(&mut g);
        let text: Vec<String> = all.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            text,
            vec!["f(A,B) :- right(A,B).", "f(A,B) :- right(A,B),right(B,A).", "f(A,B) :- right(A,C),right(C,B)."]
        );
        assert!(g.next_program().is_none());
        assert!(g.next_program().is_none());
    }

    #[test]
    fn specialisation_prunes_rest_of_level() {
        let mut g = new_generator(GeneratorConfig { bias: micro(), max_literals: 3 });
        let first = g.next_program().unwrap();
        g.add_constraint(&HypothesisConstraint::Specialisation(first));
        let rest: Vec<String> = drain(&mut g).iter().map(|p| p.to_string()).collect();
        assert_eq!(rest, vec!["f(A,B) :- right(A,C),right(C,B)."]);
    }

    #[test]
    fn degenerate_configs() {
        assert!(new_generator(GeneratorConfig { bias: micro(), max_literals: 1 }).next_program().is_none());
        let empty = parse_bias("head_pred(f,2). setting(enable_pi,false).").unwrap();
        assert!(new_generator(GeneratorConfig::new(empty)).next_program().is_none());
    }

    #[test]
    fn robot_sixteen_program_is_yielded() {
        let b = parse_bias(
            "head_pred(f,2). body_pred(right,2). direction(f,(in,out)). direction(right,(in,out)).
             setting(max_clauses,2).",
        )
        .unwrap();
        let want = parse_program(
            "f(A,B) :- inv1(A,C),inv1(C,D),inv1(D,E),inv1(E,B). inv1(A,B) :- right(A,C),right(C,D),right(D,E),right(E,B).",
            "f",
        )
        .unwrap();
        let want = crate::logic::canonicalise(&want);
        let mut g = new_generator(GeneratorConfig { bias: b, max_literals: 10 });
        let all = drain(&mut g);
        assert!(all.contains(&want));
        let costs: Vec<usize> = all.iter().map(crate::logic::cost).collect();
        assert!(costs.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn generalisation_bans_itself() {
        let mut g = new_generator(GeneratorConfig { bias: micro(), max_literals: 3 });
        let first = g.next_program().unwrap();
        g.add_constraint(&HypothesisConstraint::Generalisation(first.clone()));
        g.add_constraint(&HypothesisConstraint::Generalisation(first.clone()));
        let rest = drain(&mut g);
        assert_eq!(rest.len(), 2);
        assert!(!rest.contains(&first));
        assert_eq!(g.stats().constraints, 1);
    }
}
