use std::fmt;
use std::str::FromStr;

use super::{Elem, FinalgError, FiniteAlgebra};

/// A term over variables `v0, v1, ..` and operation symbols.
///
/// Text form is a prefix s-expression: `(join (star v1) v0)`. Constants are
/// written bare (`k`) or as `(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn app<S: Into<String>>(symbol: S, args: Vec<Term>) -> Term {
        Term::App(symbol.into(), args)
    }

    pub fn constant<S: Into<String>>(symbol: S) -> Term {
        Term::App(symbol.into(), Vec::new())
    }

    /// Highest variable index, if any variable occurs.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::App(_, args) => args.iter().filter_map(Term::max_var).max(),
        }
    }

    /// Checks that every symbol exists with the right arity and every
    /// variable is below `arity`.
    pub fn check(&self, alg: &FiniteAlgebra, arity: usize) -> Result<(), FinalgError> {
        match self {
            Term::Var(i) if *i >= arity => Err(FinalgError::TermArity { var: *i, arity }),
            Term::Var(_) => Ok(()),
            Term::App(name, args) => {
                let op = alg.symbol(name)?;
                let expected = alg.signature().arity(op);
                if expected != args.len() {
                    return Err(FinalgError::ArityMismatch {
                        symbol: name.clone(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| a.check(alg, arity))
            }
        }
    }

    /// Evaluates bottom-up through the operation tables.
    pub fn eval(&self, alg: &FiniteAlgebra, assignment: &[Elem]) -> Result<Elem, FinalgError> {
        if let Some(&bad) = assignment.iter().find(|&&a| a >= alg.size()) {
            return Err(FinalgError::ElementOutOfRange(bad));
        }
        self.eval_unchecked(alg, assignment)
    }

    fn eval_unchecked(
        &self,
        alg: &FiniteAlgebra,
        assignment: &[Elem],
    ) -> Result<Elem, FinalgError> {
        match self {
            Term::Var(i) => assignment
                .get(*i)
                .copied()
                .ok_or(FinalgError::UnboundVariable {
                    var: *i,
                    len: assignment.len(),
                }),
            Term::App(name, args) => {
                let values = args
                    .iter()
                    .map(|a| a.eval_unchecked(alg, assignment))
                    .collect::<Result<Vec<_>, _>>()?;
                alg.apply_named(name, &values)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "v{i}"),
            Term::App(name, args) if args.is_empty() => write!(f, "{name}"),
            Term::App(name, args) => {
                write!(f, "({name}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(s: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        let delim = c == '(' || c == ')' || c.is_whitespace();
        if delim {
            if let Some(st) = start.take() {
                out.push(Token::Atom(&s[st..i]));
            }
            match c {
                '(' => out.push(Token::Open),
                ')' => out.push(Token::Close),
                _ => {}
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push(Token::Atom(&s[st..]));
    }
    out
}

fn atom(a: &str) -> Term {
    match a.strip_prefix('v').and_then(|d| d.parse::<usize>().ok()) {
        Some(i) if a.len() > 1 && a[1..].chars().all(|c| c.is_ascii_digit()) => Term::Var(i),
        _ => Term::constant(a),
    }
}

fn parse_at(tokens: &[Token<'_>], pos: &mut usize) -> Result<Term, FinalgError> {
    let syntax = |m: &str| FinalgError::TermSyntax(m.to_string());
    match tokens.get(*pos) {
        None => Err(syntax("unexpected end of input")),
        Some(Token::Close) => Err(syntax("unexpected `)`")),
        Some(Token::Atom(a)) => {
            *pos += 1;
            Ok(atom(a))
        }
        Some(Token::Open) => {
            *pos += 1;
            let head = match tokens.get(*pos) {
                Some(Token::Atom(a)) => *a,
                _ => return Err(syntax("expected an operation symbol after `(`")),
            };
            if let Term::Var(_) = atom(head) {
                return Err(syntax("a variable cannot be applied"));
            }
            *pos += 1;
            let mut args = Vec::new();
            loop {
                match tokens.get(*pos) {
                    Some(Token::Close) => {
                        *pos += 1;
                        return Ok(Term::app(head, args));
                    }
                    None => return Err(syntax("missing `)`")),
                    _ => args.push(parse_at(tokens, pos)?),
                }
            }
        }
    }
}

impl FromStr for Term {
    type Err = FinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens = tokenize(s);
        let mut pos = 0;
        let term = parse_at(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(FinalgError::TermSyntax("trailing input".into()));
        }
        Ok(term)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finalg::z3;

    #[test]
    fn parse_and_print() {
        let t: Term = "(join (star v1) v0)".parse().unwrap();
        assert_eq!(
            t,
            Term::app(
                "join",
                vec![Term::app("star", vec![Term::var(1)]), Term::var(0)]
            )
        );
        assert_eq!(t.to_string(), "(join (star v1) v0)");
        assert_eq!(t.max_var(), Some(1));
        let k: Term = "(k)".parse().unwrap();
        assert_eq!(k, Term::constant("k"));
        assert_eq!(k.to_string(), "k");
        assert_eq!("v".parse::<Term>().unwrap(), Term::constant("v"));
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "(", ")", "(join v0", "(v0 v1)", "v0 v1", "()"] {
            assert!(
                matches!(bad.parse::<Term>(), Err(FinalgError::TermSyntax(_))),
                "{bad:?} should fail"
            );
        }
    }

    #[test]
    fn z3_majority_value() {
        // z - (z - y)(z - x)^2 at (2, 2, 0)
        let t: Term =
            "(add v2 (neg (mul (add v2 (neg v1)) (mul (add v2 (neg v0)) (add v2 (neg v0))))))"
                .parse()
                .unwrap();
        assert_eq!(t.eval(&z3(), &[2, 2, 0]).unwrap(), 2);
    }

    #[test]
    fn eval_errors() {
        let z = z3();
        let t: Term = "(add v0 v3)".parse().unwrap();
        assert_eq!(
            t.eval(&z, &[0, 1]),
            Err(FinalgError::UnboundVariable { var: 3, len: 2 })
        );
        let wrong: Term = "(neg v0 v1)".parse().unwrap();
        assert!(matches!(
            wrong.eval(&z, &[0, 1]),
            Err(FinalgError::ArityMismatch { .. })
        ));
        assert!(matches!(
            wrong.check(&z, 2),
            Err(FinalgError::ArityMismatch { .. })
        ));
        assert_eq!(
            t.check(&z, 3),
            Err(FinalgError::TermArity { var: 3, arity: 3 })
        );
        assert_eq!(
            Term::var(0).eval(&z, &[5]),
            Err(FinalgError::ElementOutOfRange(5))
        );
    }
}
