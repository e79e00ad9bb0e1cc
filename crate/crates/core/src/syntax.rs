//! Reader for the Prolog-flavoured surface syntax shared by task files and
//! metarule files.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Int(i64),
    Atom(String),
    Compound(String, Vec<Term>),
    List(Vec<Term>),
    /// Parenthesised comma sequence, e.g. `(in,out)`.
    Tuple(Vec<Term>),
    /// `head :- b1,...,bn`, only accepted inside `bk_clause(...)`.
    Rule(Box<Term>, Vec<Term>),
}

impl Term {
    pub fn functor(&self) -> Option<(&str, usize)> {
        match self {
            Term::Atom(a) => Some((a, 0)),
            Term::Compound(f, args) => Some((f, args.len())),
            _ => None,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Compound(_, args) | Term::Tuple(args) | Term::List(args) => args,
            _ => &[],
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn seq(f: &mut fmt::Formatter<'_>, items: &[Term]) -> fmt::Result {
            for (i, t) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{t}")?;
            }
            Ok(())
        }
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Int(i) => write!(f, "{i}"),
            Term::Atom(a) => write!(f, "{a}"),
            Term::Compound(name, args) => {
                write!(f, "{name}(")?;
                seq(f, args)?;
                write!(f, ")")
            }
            Term::List(items) => {
                write!(f, "[")?;
                seq(f, items)?;
                write!(f, "]")
            }
            Term::Tuple(items) => {
                write!(f, "(")?;
                seq(f, items)?;
                write!(f, ")")
            }
            Term::Rule(h, body) => {
                write!(f, "{h} :- ")?;
                seq(f, body)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    Int(i64),
    Open,
    Close,
    LBrack,
    RBrack,
    Comma,
    Neck,
    Dot,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
        let mut lx = Lexer { chars: src.chars().peekable(), line: 1 };
        let mut out = Vec::new();
        while let Some(&c) = lx.chars.peek() {
            let line = lx.line;
            match c {
                '\n' => {
                    lx.line += 1;
                    lx.chars.next();
                }
                c if c.is_whitespace() => {
                    lx.chars.next();
                }
                '%' => {
                    while let Some(&c) = lx.chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        lx.chars.next();
                    }
                }
                '(' | ')' | '[' | ']' | ',' | '.' => {
                    lx.chars.next();
                    out.push((
                        line,
                        match c {
                            '(' => Tok::Open,
                            ')' => Tok::Close,
                            '[' => Tok::LBrack,
                            ']' => Tok::RBrack,
                            ',' => Tok::Comma,
                            _ => Tok::Dot,
                        },
                    ));
                }
                ':' => {
                    lx.chars.next();
                    if lx.chars.next() != Some('-') {
                        return Err(SyntaxError { line, message: "expected `:-`".into() });
                    }
                    out.push((line, Tok::Neck));
                }
                '-' | '0'..='9' => {
                    let mut s = String::new();
                    s.push(c);
                    lx.chars.next();
                    while let Some(&d) = lx.chars.peek() {
                        if d.is_ascii_digit() {
                            s.push(d);
                            lx.chars.next();
                        } else {
                            break;
                        }
                    }
                    let n = s.parse().map_err(|_| SyntaxError { line, message: format!("bad integer `{s}`") })?;
                    out.push((line, Tok::Int(n)));
                }
                c if c.is_alphabetic() || c == '_' => {
                    let mut s = String::new();
                    while let Some(&d) = lx.chars.peek() {
                        if d.is_alphanumeric() || d == '_' {
                            s.push(d);
                            lx.chars.next();
                        } else {
                            break;
                        }
                    }
                    if c.is_uppercase() || c == '_' {
                        out.push((line, Tok::Var(s)));
                    } else {
                        out.push((line, Tok::Ident(s)));
                    }
                }
                other => return Err(SyntaxError { line, message: format!("unexpected character `{other}`") }),
            }
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn line(&self) -> usize {
        self.toks.get(self.pos).or(self.toks.last()).map(|t| t.0).unwrap_or(1)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError { line: self.line(), message: message.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), SyntaxError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn seq(&mut self, close: Tok, allow_rule: bool) -> Result<Vec<Term>, SyntaxError> {
        let mut items = Vec::new();
        if self.peek() == Some(&close) {
            self.pos += 1;
            return Ok(items);
        }
        loop {
            let t = self.term()?;
            if allow_rule && self.peek() == Some(&Tok::Neck) {
                self.pos += 1;
                let mut body = vec![self.term()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    body.push(self.term()?);
                }
                items.push(Term::Rule(Box::new(t), body));
            } else {
                items.push(t);
            }
            match self.next() {
                Some(Tok::Comma) => continue,
                Some(t) if t == close => return Ok(items),
                _ => return self.err("expected `,` or closing bracket"),
            }
        }
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Term::Int(n)),
            Some(Tok::Var(v)) => Ok(Term::Var(v)),
            Some(Tok::LBrack) => Ok(Term::List(self.seq(Tok::RBrack, false)?)),
            Some(Tok::Open) => Ok(Term::Tuple(self.seq(Tok::Close, false)?)),
            Some(Tok::Ident(name)) => {
                if self.peek() == Some(&Tok::Open) {
                    self.pos += 1;
                    let rule = name == "bk_clause";
                    let args = self.seq(Tok::Close, rule)?;
                    Ok(Term::Compound(name, args))
                } else {
                    Ok(Term::Atom(name))
                }
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.err("expected a term")
            }
        }
    }
}

/// A top-level statement: a term terminated by `.`, optionally a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub line: usize,
    pub term: Term,
    pub body: Vec<Term>,
}

/// Splits source text into `.`-terminated statements. `%` starts a comment.
pub fn parse_statements(src: &str) -> Result<Vec<Statement>, SyntaxError> {
    let toks = Lexer::tokens(src)?;
    let mut p = Parser { toks, pos: 0 };
    let mut out = Vec::new();
    while p.peek().is_some() {
        let line = p.line();
        let term = p.term()?;
        let mut body = Vec::new();
        if p.peek() == Some(&Tok::Neck) {
            p.pos += 1;
            body.push(p.term()?);
            while p.peek() == Some(&Tok::Comma) {
                p.pos += 1;
                body.push(p.term()?);
            }
        }
        p.expect(Tok::Dot, "`.` at end of statement")?;
        out.push(Statement { line, term, body });
    }
    Ok(out)
}

/// Parses a single term (no trailing `.`).
pub fn parse_term(src: &str) -> Result<Term, SyntaxError> {
    let toks = Lexer::tokens(src)?;
    let mut p = Parser { toks, pos: 0 };
    let t = p.term()?;
    if p.peek().is_some() {
        return p.err("trailing input after term");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_directives_with_lines() {
        let src = "% comment\nhead_pred(f,2).\n\ntype(f,(list,element)).\npos(f([1,2],pair(0,-1))).";
        let st = parse_statements(src).unwrap();
        assert_eq!(st.len(), 3);
        assert_eq!(st[0].line, 2);
        assert_eq!(st[1].term.to_string(), "type(f,(list,element))");
        assert_eq!(st[2].term.to_string(), "pos(f([1,2],pair(0,-1)))");
    }

    #[test]
    fn reads_bk_rules() {
        let st = parse_statements("bk_clause(parent(X,Y) :- mother(X,Y)).").unwrap();
        match &st[0].term.args()[0] {
            Term::Rule(h, body) => {
                assert_eq!(h.to_string(), "parent(X,Y)");
                assert_eq!(body.len(), 1);
            }
            other => panic!("expected rule, got {other:?}"),
        }
    }

    #[test]
    fn reports_line_of_error() {
        let err = parse_statements("head_pred(f,2).\nbody_pred(g,2)\nfoo.").unwrap_err();
        assert_eq!(err.line, 3);
    }
}
