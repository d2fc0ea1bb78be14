//! The command language: parser, evaluator, diagram export and session
//! files.

mod ast;
mod diagram;
mod exec;
mod lexer;
mod parser;
mod print;
mod session;

pub use ast::{CatFixture, CmpOp, Command, Expr, Operand, Pred};
pub use diagram::DiagramGraph;
pub use exec::{elaborate, Output, Session};
pub use parser::{is_blank, parse, parse_line};
pub use session::SESSION_HEADER;
