use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use thiserror::Error;

use super::lexer::{tokenize, Pos, Spanned, Tok};
use crate::symexpr::{Expr, ExprError, FuncDecl, JetSymbol, Rational};

/// Largest exponent magnitude accepted by the parser.
const MAX_EXPONENT: i64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected {found}, expected {}", expected.join(" or "))]
    Unexpected { found: String, expected: Vec<String> },
    #[error("invalid character `{0}`")]
    InvalidChar(char),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown function `{0}` (declare it first)")]
    UnknownFunction(String),
    #[error("`{arg}` is not an argument of `{func}`")]
    NotAnArgument { func: String, arg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent out of range (at most {MAX_EXPONENT} in magnitude)")]
    ExponentOutOfRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.kind)
    }
}

impl ParseError {
    pub(crate) fn at(pos: Pos, kind: ParseErrorKind) -> ParseError {
        ParseError { line: pos.line, col: pos.col, kind }
    }
}

/// Names visible to the parser: allowed coordinates and declared functions.
#[derive(Debug, Clone, Default)]
pub struct Scope {
    coords: Option<Vec<String>>,
    funcs: BTreeMap<String, Arc<FuncDecl>>,
}

impl Scope {
    /// Only the given coordinates are accepted as bare identifiers.
    pub fn with_coords(coords: &[&str]) -> Scope {
        Scope { coords: Some(coords.iter().map(|s| s.to_string()).collect()), funcs: BTreeMap::new() }
    }

    /// Any bare identifier is accepted as a variable.
    pub fn open() -> Scope {
        Scope::default()
    }

    pub fn declare(&mut self, decl: Arc<FuncDecl>) {
        self.funcs.insert(decl.name().to_string(), decl);
    }

    pub fn with(mut self, decl: Arc<FuncDecl>) -> Scope {
        self.declare(decl);
        self
    }

    pub fn function(&self, name: &str) -> Option<&Arc<FuncDecl>> {
        self.funcs.get(name)
    }

    pub fn is_coord(&self, name: &str) -> bool {
        self.coords.as_ref().map_or(true, |cs| cs.iter().any(|c| c == name))
    }

    pub fn coords(&self) -> Option<&[String]> {
        self.coords.as_deref()
    }
}

/// Parses one expression.
pub fn parse_expr(text: &str, scope: &Scope) -> Result<Expr, ParseError> {
    parse_expr_at(text, scope, Pos { line: 1, col: 1 })
}

pub(crate) fn parse_expr_at(text: &str, scope: &Scope, start: Pos) -> Result<Expr, ParseError> {
    let toks = tokenize(text, start).map_err(|(p, c)| ParseError::at(p, ParseErrorKind::InvalidChar(c)))?;
    let mut p = Parser { toks, i: 0, scope };
    let e = p.expr()?;
    p.expect(Tok::Eof, &["operator", "end of input"])?;
    Ok(e)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    i: usize,
    scope: &'a Scope,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError::at(
            self.pos(),
            ParseErrorKind::Unexpected {
                found: self.peek().describe(),
                expected: expected.iter().map(|s| s.to_string()).collect(),
            },
        )
    }

    fn expect(&mut self, t: Tok, expected: &[&str]) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc.push(self.term()?.neg());
                }
                _ => break,
            }
        }
        Ok(if acc.len() == 1 { acc.pop().unwrap() } else { Expr::sum(acc) })
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = Expr::product([acc, rhs]);
                }
                Tok::Slash => {
                    let at = self.pos();
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).map_err(|_| ParseError::at(at, ParseErrorKind::DivisionByZero))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    // power := atom ('^' exponent)?
    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let at = self.pos();
        self.bump();
        let k = self.exponent()?;
        base.checked_pow(k).map_err(|_| ParseError::at(at, ParseErrorKind::DivisionByZero))
    }

    // exponent := '-'? int | '(' '-'? int ')'
    fn exponent(&mut self) -> Result<i64, ParseError> {
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        let at = self.pos();
        let k = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                n.to_i64().filter(|k| *k <= MAX_EXPONENT).ok_or_else(|| ParseError::at(at, ParseErrorKind::ExponentOutOfRange))?
            }
            _ => return Err(self.unexpected(if neg { &["integer"] } else { &["integer", "`-`", "`(`"] })),
        };
        if paren {
            self.expect(Tok::RParen, &["`)`"])?;
        }
        Ok(if neg { -k } else { k })
    }

    // atom := int | ident | ident '[' args ']' | '(' expr ')'
    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::constant(Rational::from_integer(n)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, &["`)`", "operator"])?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() == Tok::LBracket {
                    self.jet(&name, at)
                } else if self.scope.function(&name).is_some() {
                    Err(self.unexpected(&["`[`"]))
                } else if self.scope.is_coord(&name) {
                    Ok(Expr::var(&name))
                } else {
                    Err(ParseError::at(at, ParseErrorKind::UnknownVariable(name)))
                }
            }
            _ => Err(self.unexpected(&["number", "identifier", "`(`", "`-`"])),
        }
    }

    fn jet(&mut self, name: &str, at: Pos) -> Result<Expr, ParseError> {
        let func = self
            .scope
            .function(name)
            .cloned()
            .ok_or_else(|| ParseError::at(at, ParseErrorKind::UnknownFunction(name.to_string())))?;
        self.bump(); // '['
        let mut args: Vec<(String, Pos)> = Vec::new();
        if *self.peek() != Tok::RBracket {
            loop {
                let apos = self.pos();
                match self.peek().clone() {
                    Tok::Ident(a) => {
                        self.bump();
                        args.push((a, apos));
                    }
                    _ => return Err(self.unexpected(&["argument name"])),
                }
                match self.peek() {
                    Tok::Comma => {
                        self.bump();
                    }
                    Tok::RBracket => break,
                    _ => return Err(self.unexpected(&["`,`", "`]`"])),
                }
            }
        }
        self.bump(); // ']'
        for (a, apos) in &args {
            if func.position(a).is_none() {
                return Err(ParseError::at(
                    *apos,
                    ParseErrorKind::NotAnArgument { func: name.to_string(), arg: a.clone() },
                ));
            }
        }
        let names: Vec<&str> = args.iter().map(|(a, _)| a.as_str()).collect();
        let j = JetSymbol::new(&func, &names).map_err(|e| match e {
            ExprError::NotAnArgument { func, arg } => ParseError::at(at, ParseErrorKind::NotAnArgument { func, arg }),
            ExprError::DivisionByZero => ParseError::at(at, ParseErrorKind::DivisionByZero),
        })?;
        Ok(Expr::jet(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symexpr::Node;

    fn ode4() -> Scope {
        Scope::with_coords(&["x", "y", "p", "q", "r"])
    }

    #[test]
    fn quotient_shape() {
        let e = parse_expr("(4*r^2)/(3*q)", &ode4()).unwrap();
        match e.node() {
            Node::Div(a, b) => {
                assert_eq!(*a, Expr::int(4) * Expr::var("r").pow(2));
                assert_eq!(*b, Expr::int(3) * Expr::var("q"));
            }
            other => panic!("expected a quotient, got {other:?}"),
        }
    }

    #[test]
    fn jet_power() {
        let l = FuncDecl::new("L", &["x", "y", "p", "q"]);
        let scope = ode4().with(l.clone());
        let e = parse_expr("L[q,q,q]^2", &scope).unwrap();
        assert_eq!(e, Expr::jet(JetSymbol::new(&l, &["q", "q", "q"]).unwrap()).pow(2));
        let err = parse_expr("L[z]", &scope).unwrap_err();
        assert_eq!((err.line, err.col), (1, 3));
        assert!(matches!(err.kind, ParseErrorKind::NotAnArgument { .. }));
    }

    #[test]
    fn error_positions() {
        let err = parse_expr("x + * y", &ode4()).unwrap_err();
        assert_eq!((err.line, err.col), (1, 5));
        let err = parse_expr("x + w", &ode4()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownVariable("w".into()));
        let err = parse_expr("x/0", &ode4()).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DivisionByZero);
        let err = parse_expr("(x", &ode4()).unwrap_err();
        assert_eq!((err.line, err.col), (1, 3));
    }

    #[test]
    fn exponents() {
        let s = ode4();
        assert_eq!(parse_expr("x^(-2)", &s).unwrap(), Expr::var("x").pow(-2));
        assert_eq!(parse_expr("x^-2", &s).unwrap(), Expr::var("x").pow(-2));
        assert_eq!(parse_expr("-x^2", &s).unwrap(), -Expr::var("x").pow(2));
        assert!(parse_expr("x^99999", &s).is_err());
    }
}
