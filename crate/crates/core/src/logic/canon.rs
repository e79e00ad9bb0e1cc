use std::cmp::Ordering;

use super::{Atom, Clause, Literal, Program, Var};

/// Largest number of body-only variables for which the exact minimum over all
/// renamings is computed. Above it the first-occurrence numbering is used.
const EXACT_LIMIT: usize = 8;

/// Canonical body of a clause whose head variables are already `0..head_vars`.
///
/// Body-only variables are renamed to `head_vars..` so that the sorted,
/// deduplicated body is lexicographically minimal over all such renamings.
pub fn canonical_body<A: Atom>(head_vars: usize, body: &[A]) -> Vec<A> {
    let mut free: Vec<Var> = Vec::new();
    for lit in body {
        for &v in lit.args() {
            if v.index() >= head_vars && !free.contains(&v) {
                free.push(v);
            }
        }
    }
    let mut map = [0u8; 256];
    for (i, m) in map.iter_mut().enumerate().take(head_vars) {
        *m = i as u8;
    }
    let rename = |map: &[u8; 256]| -> Vec<A> {
        let mut out: Vec<A> = body
            .iter()
            .map(|l| {
                let args: Vec<Var> = l.args().iter().map(|v| Var(map[v.index()])).collect();
                l.with_args(&args)
            })
            .collect();
        out.sort();
        out.dedup();
        out
    };
    let assign = |map: &mut [u8; 256], order: &[Var]| {
        for (i, v) in order.iter().enumerate() {
            map[v.index()] = (head_vars + i) as u8;
        }
    };

    if free.len() > EXACT_LIMIT {
        assign(&mut map, &free);
        return rename(&map);
    }

    // Heap's algorithm over the order in which free variables receive ids.
    let mut order = free.clone();
    assign(&mut map, &order);
    let mut best = rename(&map);
    let n = order.len();
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            assign(&mut map, &order);
            let cand = rename(&map);
            if cand < best {
                best = cand;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Canonical form of one clause: head variables numbered by first
/// occurrence, body sorted, deduplicated and minimal over renamings of the
/// body-only variables.
pub fn canonicalise_clause(c: &Clause) -> Clause {
    let mut head_map: Vec<(Var, Var)> = Vec::new();
    for &v in &c.head.args {
        if !head_map.iter().any(|(from, _)| *from == v) {
            head_map.push((v, Var(head_map.len() as u8)));
        }
    }
    let h = head_map.len() as u8;
    // Park body-only variables above the head range before minimising.
    let mut body_only: Vec<Var> = Vec::new();
    for l in &c.body {
        for &v in &l.args {
            if !head_map.iter().any(|(from, _)| *from == v) && !body_only.contains(&v) {
                body_only.push(v);
            }
        }
    }
    let lookup = |v: Var| -> Var {
        if let Some((_, to)) = head_map.iter().find(|(from, _)| *from == v) {
            *to
        } else {
            let i = body_only.iter().position(|b| *b == v).unwrap();
            Var(h + i as u8)
        }
    };
    let head = Literal { pred: c.head.pred.clone(), args: c.head.args.iter().map(|v| lookup(*v)).collect() };
    let body: Vec<Literal> = c
        .body
        .iter()
        .map(|l| Literal { pred: l.pred.clone(), args: l.args.iter().map(|v| lookup(*v)).collect() })
        .collect();
    Clause { head, body: canonical_body(h as usize, &body) }
}

/// The fixed total order on clauses: head literal, then body length, then
/// body literals lexicographically.
pub fn compare_clauses(a: &Clause, b: &Clause) -> Ordering {
    a.head.cmp(&b.head).then(a.body.len().cmp(&b.body.len())).then_with(|| a.body.cmp(&b.body))
}

/// Unique normal form up to variable renaming, body reordering and clause
/// reordering. Duplicate body literals and duplicate clauses collapse.
pub fn canonicalise(h: &Program) -> Program {
    let mut clauses: Vec<Clause> = h.clauses.iter().map(canonicalise_clause).collect();
    clauses.sort_by(compare_clauses);
    clauses.dedup();
    Program { clauses }
}
