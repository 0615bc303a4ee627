//! Lexer and recursive-descent parser for `.plx` programs.
//!
//! ```text
//! program := stmt*
//! stmt    := "let" IDENT "=" expr | query
//! expr    := expr ("+" | "-") term | term
//! term    := RATIONAL "*" factor | factor
//! factor  := "max(" expr "," expr ")" | "min(" expr "," expr ")" | "abs(" expr ")"
//!          | "pl" "[" point ("," point)* "]" | "u" | "one" | IDENT | "(" expr ")"
//! point   := "(" RATIONAL "," RATIONAL ")"
//! RATIONAL:= INT | INT "/" POSINT          (INT may carry a leading "-")
//! query   := "eval" expr "at" RATIONAL | "norm" expr "wrt" expr
//!          | "leq" expr expr | "in_ideal" expr "wrt" expr
//! ```
//!
//! `#` starts a comment that runs to the end of the line.

use rucert_core::Rational;
use thiserror::Error;

use super::ast::{Expr, Query, Statement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message} (found {token})")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub token: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Int(s) => format!("{s:?}"),
            Tok::Sym(c) => format!("{:?}", c.to_string()),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const KEYWORDS: &[&str] = &[
    "let", "eval", "at", "norm", "wrt", "leq", "in_ideal", "max", "min", "abs", "pl", "u", "one",
];

const SYMBOLS: &str = "+-*/=,()[]";

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let ch = chars.next().unwrap();
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            ch
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '#' {
            while chars.peek().is_some_and(|&ch| ch != '\n') {
                bump(&mut chars);
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|ch| ch.is_ascii_digit()) {
                s.push(bump(&mut chars));
            }
            out.push(Token { tok: Tok::Int(s), line: l0, col: c0 });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars
                .peek()
                .is_some_and(|ch| ch.is_ascii_alphanumeric() || *ch == '_')
            {
                s.push(bump(&mut chars));
            }
            out.push(Token { tok: Tok::Ident(s), line: l0, col: c0 });
        } else if SYMBOLS.contains(c) {
            bump(&mut chars);
            out.push(Token { tok: Tok::Sym(c), line: l0, col: c0 });
        } else {
            return Err(ParseError {
                line: l0,
                col: c0,
                token: format!("{c:?}"),
                message: "unexpected character".into(),
            });
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        let t = &self.toks[self.pos];
        Err(ParseError {
            line: t.line,
            col: t.col,
            token: t.tok.describe(),
            message: message.into(),
        })
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.is_sym(c) {
            self.advance();
            Ok(())
        } else {
            self.error(format!("expected {c:?}"))
        }
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.is_kw(kw) {
            self.advance();
            Ok(())
        } else {
            self.error(format!("expected {kw:?}"))
        }
    }

    fn starts_rational(&self) -> bool {
        match self.peek() {
            Tok::Int(_) => true,
            Tok::Sym('-') => matches!(self.peek_at(1), Tok::Int(_)),
            _ => false,
        }
    }

    fn rational(&mut self) -> PResult<Rational> {
        let neg = if self.is_sym('-') {
            self.advance();
            true
        } else {
            false
        };
        let Tok::Int(num) = self.peek().clone() else {
            return self.error("expected an integer");
        };
        self.advance();
        let mut text = if neg { format!("-{num}") } else { num };
        if self.is_sym('/') {
            self.advance();
            let Tok::Int(den) = self.peek().clone() else {
                return self.error("expected a positive denominator");
            };
            if den.bytes().all(|b| b == b'0') {
                return self.error("denominator must be positive");
            }
            self.advance();
            text = format!("{text}/{den}");
        }
        Ok(text.parse().expect("lexer only yields digit runs"))
    }

    fn program(&mut self) -> PResult<Vec<Statement>> {
        let mut stmts = Vec::new();
        while *self.peek() != Tok::Eof {
            stmts.push(self.statement()?);
        }
        Ok(stmts)
    }

    fn statement(&mut self) -> PResult<Statement> {
        if self.is_kw("let") {
            self.advance();
            let name = match self.peek().clone() {
                Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => s,
                Tok::Ident(_) => return self.error("keywords cannot be bound"),
                _ => return self.error("expected an identifier"),
            };
            self.advance();
            self.expect_sym('=')?;
            let e = self.expr()?;
            return Ok(Statement::Let(name, e));
        }
        Ok(Statement::Query(self.query()?))
    }

    fn query(&mut self) -> PResult<Query> {
        let Tok::Ident(kw) = self.peek().clone() else {
            return self.error("expected a statement");
        };
        match kw.as_str() {
            "eval" => {
                self.advance();
                let expr = self.expr()?;
                self.expect_kw("at")?;
                let at = self.rational()?;
                Ok(Query::Eval { expr, at })
            }
            "norm" => {
                self.advance();
                let expr = self.expr()?;
                self.expect_kw("wrt")?;
                let wrt = self.expr()?;
                Ok(Query::Norm { expr, wrt })
            }
            "leq" => {
                self.advance();
                let lhs = self.expr()?;
                let rhs = self.expr()?;
                Ok(Query::Leq { lhs, rhs })
            }
            "in_ideal" => {
                self.advance();
                let expr = self.expr()?;
                self.expect_kw("wrt")?;
                let wrt = self.expr()?;
                Ok(Query::InIdeal { expr, wrt })
            }
            _ => self.error("expected a statement"),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.is_sym('+') {
                self.advance();
                lhs = Expr::Sum(Box::new(lhs), Box::new(self.term()?));
            } else if self.is_sym('-') {
                self.advance();
                lhs = Expr::Diff(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        if self.starts_rational() {
            let c = self.rational()?;
            self.expect_sym('*')?;
            let f = self.factor()?;
            return Ok(Expr::Scale(c, Box::new(f)));
        }
        self.factor()
    }

    fn binary_call(&mut self) -> PResult<(Expr, Expr)> {
        self.expect_sym('(')?;
        let a = self.expr()?;
        self.expect_sym(',')?;
        let b = self.expr()?;
        self.expect_sym(')')?;
        Ok((a, b))
    }

    fn factor(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Sym('(') => {
                self.advance();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(s) => match s.as_str() {
                "max" => {
                    self.advance();
                    let (a, b) = self.binary_call()?;
                    Ok(Expr::Join(Box::new(a), Box::new(b)))
                }
                "min" => {
                    self.advance();
                    let (a, b) = self.binary_call()?;
                    Ok(Expr::Meet(Box::new(a), Box::new(b)))
                }
                "abs" => {
                    self.advance();
                    self.expect_sym('(')?;
                    let e = self.expr()?;
                    self.expect_sym(')')?;
                    Ok(Expr::Abs(Box::new(e)))
                }
                "pl" => {
                    self.advance();
                    self.expect_sym('[')?;
                    let mut points = vec![self.point()?];
                    while self.is_sym(',') {
                        self.advance();
                        points.push(self.point()?);
                    }
                    self.expect_sym(']')?;
                    Ok(Expr::Literal(points))
                }
                "u" => {
                    self.advance();
                    Ok(Expr::U)
                }
                "one" => {
                    self.advance();
                    Ok(Expr::One)
                }
                kw if KEYWORDS.contains(&kw) => self.error("expected an expression"),
                _ => {
                    self.advance();
                    Ok(Expr::Var(s))
                }
            },
            _ => self.error("expected an expression"),
        }
    }

    fn point(&mut self) -> PResult<(Rational, Rational)> {
        self.expect_sym('(')?;
        let t = self.rational()?;
        self.expect_sym(',')?;
        let v = self.rational()?;
        self.expect_sym(')')?;
        Ok((t, v))
    }
}

/// Parses a whole program.
pub fn parse(source: &str) -> Result<Vec<Statement>, ParseError> {
    let toks = lex(source)?;
    Parser { toks, pos: 0 }.program()
}

/// Parses a single expression, rejecting trailing input.
pub fn parse_expr(source: &str) -> Result<Expr, ParseError> {
    let toks = lex(source)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

/// Parses a rational literal such as `-3/4`.
pub fn parse_rational(source: &str) -> Result<Rational, ParseError> {
    let toks = lex(source)?;
    let mut p = Parser { toks, pos: 0 };
    let r = p.rational()?;
    if *p.peek() != Tok::Eof {
        return p.error("unexpected trailing input");
    }
    Ok(r)
}
