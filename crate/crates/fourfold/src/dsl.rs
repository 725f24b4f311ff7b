//! The expression language.
//!
//! Grammar (left-associative, `#` and `#s1` at equal precedence):
//!
//! ```text
//! expr  := unary ( ("#" | "#s1") unary )*
//! unary := INT "*" "(" expr ")"          n-fold connected sum of a summand
//!        | "csum" "(" INT "," expr ")"   n-fold circle sum
//!        | FUNC "(" expr ")"             FUNC := bar | twist | gluck | cover
//!        | ATOM
//!        | "(" expr ")"
//! ```
//!
//! Operators elaborate through the checked constructors as they parse, so
//! precondition violations (an orientable circle-sum operand, a twist of a
//! non-Pin+ manifold, ...) surface as parse errors with source positions.
//! The parsed result is returned in canonical form; rendering an expression
//! and parsing it back is the identity on canonical forms.

use std::fmt;

use crate::cover::orientation_cover;
use crate::expr::{atom_by_name, bar, circle_sum, conn_sum, conn_sum_all, csum, gluck_twist,
                  twist, Expr};

/// Largest repeat count accepted by `n*(...)` and `csum(n, ...)`.
pub const MAX_REPEAT: u64 = 4096;
/// Largest number of atoms a parsed expression may contain.
pub const MAX_ATOMS: usize = 1 << 16;

/// Distinguishes malformed input from well-formed input whose operators
/// violate a precondition during elaboration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Domain,
}

/// A syntax or elaboration error, with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub message: String,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Hash,
    HashS1,
    LParen,
    RParen,
    Star,
    Comma,
    Int(u64),
    Ident(String),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Hash => "'#'".into(),
            Tok::HashS1 => "'#s1'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Star => "'*'".into(),
            Tok::Comma => "','".into(),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Lexed {
    tok: Tok,
    line: u32,
    col: u32,
}

fn lex(input: &str) -> PResult<Vec<Lexed>> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
                continue;
            }
            '#' => {
                bump(&mut chars);
                // "#s1" is a single token
                let mut look = chars.clone();
                if look.next() == Some('s') && look.next() == Some('1') {
                    bump(&mut chars);
                    bump(&mut chars);
                    out.push(Lexed {
                        tok: Tok::HashS1,
                        line: tline,
                        col: tcol,
                    });
                } else {
                    out.push(Lexed {
                        tok: Tok::Hash,
                        line: tline,
                        col: tcol,
                    });
                }
            }
            '(' | ')' | '*' | ',' => {
                let tok = match bump(&mut chars) {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '*' => Tok::Star,
                    _ => Tok::Comma,
                };
                out.push(Lexed {
                    tok,
                    line: tline,
                    col: tcol,
                });
            }
            '0'..='9' => {
                let mut n: u64 = 0;
                while matches!(chars.peek(), Some('0'..='9')) {
                    let d = bump(&mut chars) as u64 - '0' as u64;
                    n = n.saturating_mul(10).saturating_add(d);
                }
                out.push(Lexed {
                    tok: Tok::Int(n),
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while matches!(chars.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                    s.push(bump(&mut chars));
                }
                out.push(Lexed {
                    tok: Tok::Ident(s),
                    line: tline,
                    col: tcol,
                });
            }
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    message: format!("unexpected character '{other}'"),
                    kind: ParseErrorKind::Syntax,
                })
            }
        }
    }
    out.push(Lexed {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Lexed {
        &self.toks[self.pos]
    }

    fn advance(&mut self) -> Lexed {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, at: &Lexed, message: String) -> PResult<T> {
        Err(ParseError {
            line: at.line,
            col: at.col,
            message,
            kind: ParseErrorKind::Syntax,
        })
    }

    fn expect(&mut self, want: &Tok) -> PResult<Lexed> {
        let t = self.advance();
        if t.tok == *want {
            Ok(t)
        } else {
            self.err(
                &t,
                format!("expected {}, found {}", want.describe(), t.tok.describe()),
            )
        }
    }

    fn expect_int(&mut self) -> PResult<(u64, Lexed)> {
        let t = self.advance();
        match t.tok {
            Tok::Int(n) => Ok((n, t)),
            ref other => self.err(&t, format!("expected an integer, found {}", other.describe())),
        }
    }

    /// Map an elaboration error onto the position of the operator token.
    fn elaborate<T>(&self, at: &Lexed, r: crate::error::Result<T>) -> PResult<T> {
        r.map_err(|e| ParseError {
            line: at.line,
            col: at.col,
            message: e.to_string(),
            kind: ParseErrorKind::Domain,
        })
    }

    fn check_size(&self, at: &Lexed, e: &Expr) -> PResult<()> {
        if atoms_in(e) > MAX_ATOMS {
            return self.err(
                &at.clone(),
                format!("expression exceeds {MAX_ATOMS} atoms"),
            );
        }
        Ok(())
    }

    fn parse_expr(&mut self) -> PResult<Expr> {
        let mut acc = self.parse_unary()?;
        loop {
            let op = self.peek().clone();
            match op.tok {
                Tok::Hash => {
                    self.advance();
                    let rhs = self.parse_unary()?;
                    acc = self.elaborate(&op, conn_sum(acc, rhs))?;
                }
                Tok::HashS1 => {
                    self.advance();
                    let rhs = self.parse_unary()?;
                    acc = self.elaborate(&op, circle_sum(acc, rhs))?;
                }
                _ => return Ok(acc),
            }
            self.check_size(&op, &acc)?;
        }
    }

    fn parse_unary(&mut self) -> PResult<Expr> {
        let t = self.advance();
        match &t.tok {
            Tok::Int(n) => {
                let n = *n;
                if n > MAX_REPEAT {
                    return self.err(&t, format!("repeat count {n} exceeds {MAX_REPEAT}"));
                }
                self.expect(&Tok::Star)?;
                self.expect(&Tok::LParen)?;
                let inner = self.parse_expr()?;
                self.expect(&Tok::RParen)?;
                if n as usize * atoms_in(&inner) > MAX_ATOMS {
                    return self.err(&t, format!("expression exceeds {MAX_ATOMS} atoms"));
                }
                if n == 0 {
                    // the empty connected sum is the identity
                    return Ok(atom_by_name("S4").expect("S4 exists"));
                }
                self.elaborate(&t, conn_sum_all(vec![inner; n as usize]))
            }
            Tok::LParen => {
                let inner = self.parse_expr()?;
                self.expect(&Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "bar" | "twist" | "gluck" | "cover" => {
                    let name = name.clone();
                    self.expect(&Tok::LParen)?;
                    let inner = self.parse_expr()?;
                    self.expect(&Tok::RParen)?;
                    match name.as_str() {
                        "bar" => self.elaborate(&t, bar(inner)),
                        "twist" => self.elaborate(&t, twist(inner)),
                        "gluck" => self.elaborate(&t, gluck_twist(&inner)),
                        _ => self.elaborate(&t, orientation_cover(&inner)),
                    }
                }
                "csum" => {
                    self.expect(&Tok::LParen)?;
                    let (n, nt) = self.expect_int()?;
                    if n > MAX_REPEAT {
                        return self.err(&nt, format!("repeat count {n} exceeds {MAX_REPEAT}"));
                    }
                    self.expect(&Tok::Comma)?;
                    let inner = self.parse_expr()?;
                    self.expect(&Tok::RParen)?;
                    if n as usize * atoms_in(&inner) > MAX_ATOMS {
                        return self.err(&t, format!("expression exceeds {MAX_ATOMS} atoms"));
                    }
                    self.elaborate(&t, csum(n as usize, &inner))
                }
                _ => self.elaborate(&t, atom_by_name(name)),
            },
            other => self.err(
                &t.clone(),
                format!("expected an expression, found {}", other.describe()),
            ),
        }
    }
}

fn atoms_in(e: &Expr) -> usize {
    match e {
        Expr::Atom(_) | Expr::TwistToken => 1,
        Expr::ConnSum(parts) => parts.iter().map(atoms_in).sum(),
        Expr::CircleSum(x, y) => atoms_in(x) + atoms_in(y),
        Expr::Bar(x) => atoms_in(x),
    }
}

/// Parse an expression and return its canonical form.
pub fn parse(input: &str) -> PResult<Expr> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.parse_expr()?;
    let end = p.advance();
    if end.tok != Tok::Eof {
        return Err(ParseError {
            line: end.line,
            col: end.col,
            message: format!("unexpected {} after the expression", end.tok.describe()),
            kind: ParseErrorKind::Syntax,
        });
    }
    Ok(e.normalize())
}
