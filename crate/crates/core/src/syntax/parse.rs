//! Recursive-descent parser for the ASCII process grammar.
//!
//! Prefixes (`x?(…) =>` and `(new x)`) bind tighter than `|`, which is
//! left-associative; parentheses group.

use thiserror::Error;

use super::{is_identifier, Name, NameSet, Process};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: input on `{subject}` binds `{param}` more than once")]
    DuplicateParameter {
        line: usize,
        column: usize,
        subject: String,
        param: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    Query,
    Bang,
    LParen,
    RParen,
    Comma,
    Arrow,
    Bar,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("name `{s}`"),
            Tok::Zero => "`0`".into(),
            Tok::Query => "`?`".into(),
            Tok::Bang => "`!`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Arrow => "`=>`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        let mut advance = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '0' => Some(Tok::Zero),
            '?' => Some(Tok::Query),
            '!' => Some(Tok::Bang),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '|' => Some(Tok::Bar),
            '=' if chars.get(i + 1) == Some(&'>') => {
                advance = 2;
                Some(Tok::Arrow)
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                advance = j - start;
                Some(Tok::Ident(chars[start..j].iter().collect()))
            }
            other => {
                return Err(ParseError::Syntax {
                    line: l,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        if let Some(tok) = tok {
            out.push(Spanned {
                tok,
                line: l,
                column: col,
            });
        }
        i += advance;
        column += advance;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError::Syntax {
            line,
            column,
            message: format!("expected {expected}, found {}", self.peek().describe()),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(&tok.describe())
        }
    }

    fn name(&mut self) -> Result<Name, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if is_identifier(&s) => {
                self.bump();
                Ok(Name::new(&s).expect("lexer only yields identifiers"))
            }
            _ => self.error("a name"),
        }
    }

    fn names(&mut self) -> Result<Vec<Name>, ParseError> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::new();
        if *self.peek() != Tok::RParen {
            out.push(self.name()?);
            while *self.peek() == Tok::Comma {
                self.bump();
                out.push(self.name()?);
            }
        }
        self.expect(Tok::RParen)?;
        Ok(out)
    }

    fn par(&mut self) -> Result<Process, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let rhs = self.unary()?;
            acc = Process::par(acc, rhs);
        }
        Ok(acc)
    }

    fn is_restriction(&self) -> bool {
        matches!(self.peek(), Tok::LParen)
            && matches!(self.peek_at(1), Tok::Ident(s) if s == "new")
            && matches!(self.peek_at(2), Tok::Ident(_))
            && matches!(self.peek_at(3), Tok::RParen)
    }

    fn unary(&mut self) -> Result<Process, ParseError> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Process::Stop)
            }
            Tok::LParen if self.is_restriction() => {
                self.bump();
                self.bump();
                let binder = self.name()?;
                self.expect(Tok::RParen)?;
                let body = self.unary()?;
                Ok(Process::new_scope(binder, body))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.par()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(_) => {
                let subject = self.name()?;
                match self.peek() {
                    Tok::Query => {
                        self.bump();
                        let (line, column) = self.here();
                        let params = self.names()?;
                        let mut seen = NameSet::new();
                        for p in &params {
                            if !seen.insert(p.clone()) {
                                return Err(ParseError::DuplicateParameter {
                                    line,
                                    column,
                                    subject: subject.to_string(),
                                    param: p.to_string(),
                                });
                            }
                        }
                        self.expect(Tok::Arrow)?;
                        let body = self.unary()?;
                        Ok(Process::input(subject, params, body))
                    }
                    Tok::Bang => {
                        self.bump();
                        let args = self.names()?;
                        Ok(Process::output(subject, args))
                    }
                    _ => self.error("`?` or `!` after a channel name"),
                }
            }
            _ => self.error("a process"),
        }
    }
}

/// Parses a process term.
pub fn parse(text: &str) -> Result<Process, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let proc = p.par()?;
    if *p.peek() != Tok::Eof {
        return p.error("`|` or end of input");
    }
    Ok(proc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::name;

    #[test]
    fn stop() {
        assert_eq!(parse("0").unwrap(), Process::Stop);
    }

    #[test]
    fn prefix_binds_tighter_than_par() {
        let p = parse("x?(y) => y!() | x!(u)").unwrap();
        let expected = Process::par(
            Process::input(
                name("x"),
                vec![name("y")],
                Process::output(name("y"), vec![]),
            ),
            Process::output(name("x"), vec![name("u")]),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn restriction_over_parenthesised_par() {
        let p = parse("(new x)(x!(u) | x?(v) => 0)").unwrap();
        let expected = Process::new_scope(
            name("x"),
            Process::par(
                Process::output(name("x"), vec![name("u")]),
                Process::input(name("x"), vec![name("v")], Process::Stop),
            ),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn par_is_left_associative() {
        let p = parse("a!() | b!() | c!()").unwrap();
        let expected = Process::par(
            Process::par(
                Process::output(name("a"), vec![]),
                Process::output(name("b"), vec![]),
            ),
            Process::output(name("c"), vec![]),
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn polyadic_and_nested() {
        let p = parse("x?(a, b) => (new c) a!(b, c)").unwrap();
        assert_eq!(p.to_string(), "x?(a, b) => (new c)a!(b, c)");
    }

    #[test]
    fn a_name_called_new_is_still_a_name() {
        let p = parse("(new!())").unwrap();
        assert_eq!(p, Process::output(name("new"), vec![]));
        let q = parse("(new new)new!()").unwrap();
        assert_eq!(
            q,
            Process::new_scope(name("new"), Process::output(name("new"), vec![]))
        );
    }

    #[test]
    fn duplicate_parameters_rejected() {
        let err = parse("x?(y, y) => 0").unwrap_err();
        assert!(matches!(err, ParseError::DuplicateParameter { line: 1, column: 3, .. }));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("x!(a) |\n  y?(b) 0").unwrap_err();
        match err {
            ParseError::Syntax { line, column, .. } => assert_eq!((line, column), (2, 9)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("").is_err());
        assert!(parse("x").is_err());
        assert!(parse("x!(a) x!(b)").is_err());
        assert!(parse("x!(a,)").is_err());
        assert!(parse("#").is_err());
    }
}
