use std::collections::BTreeMap;

use super::Bias;
use crate::logic::{PredKind, Predicate, Program, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("variable {var} in clause {clause} is used as both {first} and {second}")]
    Variable { clause: usize, var: Var, first: String, second: String },
    #[error("argument {position} of {pred} is used as both {first} and {second}")]
    Predicate { pred: Predicate, position: usize, first: String, second: String },
}

/// A program together with the argument types induced for its invented
/// predicates. Positions never connected to a declared type stay `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedProgram {
    pub program: Program,
    pub invented_types: BTreeMap<Predicate, Vec<Option<String>>>,
}

struct UnionFind {
    parent: Vec<usize>,
    ty: Vec<Option<usize>>,
}

impl UnionFind {
    fn add(&mut self, ty: Option<usize>) -> usize {
        self.parent.push(self.parent.len());
        self.ty.push(ty);
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges two classes; on a type clash returns the two type ids.
    fn union(&mut self, a: usize, b: usize) -> Result<(), (usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return Ok(());
        }
        match (self.ty[ra], self.ty[rb]) {
            (Some(x), Some(y)) if x != y => return Err((x, y)),
            (None, t) => self.ty[ra] = t,
            _ => {}
        }
        self.parent[rb] = ra;
        Ok(())
    }
}

/// Propagates declared argument types through the program. Invented
/// predicates and an untyped target take the types of their use sites,
/// consistently across every occurrence.
pub fn infer_types(bias: &Bias, p: &Program) -> Result<TypedProgram, TypeError> {
    let mut out = TypedProgram { program: p.clone(), invented_types: BTreeMap::new() };
    if bias.types.is_empty() {
        return Ok(out);
    }
    let mut names: Vec<String> = Vec::new();
    let mut uf = UnionFind { parent: Vec::new(), ty: Vec::new() };
    let mut slots: BTreeMap<Predicate, Vec<usize>> = BTreeMap::new();
    for c in &p.clauses {
        for l in std::iter::once(&c.head).chain(&c.body) {
            if slots.contains_key(&l.pred) {
                continue;
            }
            let ids = match bias.types_of(&l.pred) {
                Some(tys) if !l.pred.is_invented() => tys
                    .iter()
                    .map(|t| {
                        let id = names.iter().position(|n| n == t).unwrap_or_else(|| {
                            names.push(t.clone());
                            names.len() - 1
                        });
                        uf.add(Some(id))
                    })
                    .collect(),
                _ if matches!(l.pred.kind(), PredKind::Background) => continue,
                _ => (0..l.pred.arity()).map(|_| uf.add(None)).collect(),
            };
            slots.insert(l.pred.clone(), ids);
        }
    }
    for (ci, c) in p.clauses.iter().enumerate() {
        let mut var_node: BTreeMap<Var, usize> = BTreeMap::new();
        for l in std::iter::once(&c.head).chain(&c.body) {
            let Some(ids) = slots.get(&l.pred) else { continue };
            for (pos, v) in l.args.iter().enumerate() {
                let node = *var_node.entry(*v).or_insert_with(|| uf.add(None));
                if let Err((x, y)) = uf.union(node, ids[pos]) {
                    let (first, second) = (names[x].clone(), names[y].clone());
                    return Err(if l.pred.is_invented() || l.pred.is_target() && bias.types_of(&l.pred).is_none() {
                        TypeError::Predicate { pred: l.pred.clone(), position: pos, first, second }
                    } else {
                        TypeError::Variable { clause: ci, var: *v, first, second }
                    });
                }
            }
        }
    }
    for (pred, ids) in &slots {
        if pred.is_invented() {
            let tys = ids
                .iter()
                .map(|&i| {
                    let r = uf.find(i);
                    uf.ty[r].map(|t| names[t].clone())
                })
                .collect();
            out.invented_types.insert(pred.clone(), tys);
        }
    }
    Ok(out)
}
