//! Task files: bias, background knowledge and examples in one text.

use std::fmt::Write as _;

use crate::bias::{parse_bias_statements, Bias, BiasError, Direction};
use crate::interp::{load_kb, BkClause, Builtin, EvalLimits, InterpError, KnowledgeBase};
use crate::syntax::{parse_statements, SyntaxError, Term};
use crate::term::GroundAtom;

#[derive(Debug, thiserror::Error)]
pub enum TaskError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Bias(#[from] BiasError),
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error("line {line}: {message}")]
    Example { line: usize, message: String },
}

#[derive(Clone, Debug)]
pub struct TaskInstance {
    pub bias: Bias,
    pub builtins: Vec<String>,
    pub bk: Vec<BkClause>,
    pub pos: Vec<GroundAtom>,
    pub neg: Vec<GroundAtom>,
    pub limits: EvalLimits,
}

fn one_arg(line: usize, t: &Term) -> Result<&Term, TaskError> {
    match t.args() {
        [a] => Ok(a),
        _ => Err(TaskError::Example { line, message: format!("`{t}` takes exactly one argument") }),
    }
}

/// Parses a task file. Selected builtins that are declared body predicates
/// get their native modes unless the file declares directions for them.
pub fn parse_task(text: &str) -> Result<TaskInstance, TaskError> {
    let statements = parse_statements(text)?;
    let mut bias = parse_bias_statements(&statements)?;
    let target = bias.target();
    let mut task = TaskInstance {
        bias: Bias::default(),
        builtins: Vec::new(),
        bk: Vec::new(),
        pos: Vec::new(),
        neg: Vec::new(),
        limits: EvalLimits::default(),
    };
    for st in &statements {
        let line = st.line;
        let Some((functor, _)) = st.term.functor() else { continue };
        match functor {
            "builtin" => match one_arg(line, &st.term)? {
                Term::Atom(name) => task.builtins.push(name.clone()),
                other => return Err(TaskError::Example { line, message: format!("bad builtin name `{other}`") }),
            },
            "bk_fact" => task.bk.push(BkClause { head: one_arg(line, &st.term)?.clone(), body: Vec::new() }),
            "bk_clause" => match one_arg(line, &st.term)? {
                Term::Rule(h, body) => task.bk.push(BkClause { head: (**h).clone(), body: body.clone() }),
                other => task.bk.push(BkClause { head: other.clone(), body: Vec::new() }),
            },
            "pos" | "neg" => {
                let atom = GroundAtom::from_term(one_arg(line, &st.term)?)
                    .map_err(|message| TaskError::Example { line, message })?;
                if (atom.pred.as_ref(), atom.args.len()) != (target.name(), target.arity()) {
                    return Err(TaskError::Example {
                        line,
                        message: format!("example `{atom}` is not about {target}"),
                    });
                }
                if functor == "pos" {
                    task.pos.push(atom);
                } else {
                    task.neg.push(atom);
                }
            }
            _ => {}
        }
    }
    for name in &task.builtins {
        let b = Builtin::from_name(name).ok_or_else(|| InterpError::UnknownBuiltin(name.clone()))?;
        let key = (name.clone(), b.arity());
        if bias.body_preds.contains(&key) {
            bias.default_directions(key, b.modes());
        }
    }
    task.bias = bias;
    Ok(task)
}

impl TaskInstance {
    pub fn kb(&self) -> Result<KnowledgeBase, InterpError> {
        load_kb(&self.bias, &self.builtins, &self.bk)
    }

    /// Renders the task in the task-file grammar. Builtin modes installed at
    /// load time are left implicit.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let b = &self.bias;
        for (n, a) in &b.head_preds {
            let _ = writeln!(s, "head_pred({n},{a}).");
        }
        for (n, a) in &b.body_preds {
            let _ = writeln!(s, "body_pred({n},{a}).");
        }
        for ((n, _), tys) in &b.types {
            let _ = writeln!(s, "type({n},({})).", tys.join(","));
        }
        for ((n, a), alts) in &b.directions {
            let native = self
                .builtins
                .iter()
                .filter_map(|x| Builtin::from_name(x))
                .any(|x| x.name() == n && x.arity() == *a && &x.modes() == alts);
            if native {
                continue;
            }
            for dirs in alts {
                let d: Vec<&str> = dirs.iter().map(|d| if *d == Direction::In { "in" } else { "out" }).collect();
                let _ = writeln!(s, "direction({n},({})).", d.join(","));
            }
        }
        let _ = writeln!(s, "setting(max_vars,{}).", b.max_vars);
        let _ = writeln!(s, "setting(max_body,{}).", b.max_body);
        let _ = writeln!(s, "setting(max_clauses,{}).", b.max_clauses);
        let _ = writeln!(s, "setting(enable_pi,{}).", b.pi_enabled);
        let _ = writeln!(s, "setting(enable_recursion,{}).", b.recursion_enabled);
        if let Some(n) = b.max_literals {
            let _ = writeln!(s, "setting(max_literals,{n}).");
        }
        if let Some(n) = b.invented_arity_limit {
            let _ = writeln!(s, "setting(max_invented_arity,{n}).");
        }
        for name in &self.builtins {
            let _ = writeln!(s, "builtin({name}).");
        }
        for c in &self.bk {
            if c.body.is_empty() {
                let _ = writeln!(s, "bk_fact({}).", c.head);
            } else {
                let body: Vec<String> = c.body.iter().map(Term::to_string).collect();
                let _ = writeln!(s, "bk_clause({} :- {}).", c.head, body.join(","));
            }
        }
        for e in &self.pos {
            let _ = writeln!(s, "pos({e}).");
        }
        for e in &self.neg {
            let _ = writeln!(s, "neg({e}).");
        }
        s
    }
}
