//! Parsers for expressions and problem files.

mod lexer;
mod parser;
mod problem;

pub use parser::{parse_expr, ParseError, ParseErrorKind, Scope};
pub use problem::{parse_problem, FrontendError, Payload, Problem, ProblemKind, SchemaError};
