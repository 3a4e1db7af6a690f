//! Concrete syntax: tokens, parse trees and the canonical printer.

pub mod ast;
pub mod lexer;
pub mod parser;
mod print;

pub use ast::*;
pub use lexer::{tokenize, LexError, Loc, Token, TokenKind};
pub use parser::{parse_program, ParseError};

/// Tokenizes and parses one source text.
pub fn parse_source(source: &str) -> Result<Program, SyntaxFailure> {
    let tokens = tokenize(source)?;
    Ok(parse_program(&tokens)?)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SyntaxFailure {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl SyntaxFailure {
    pub fn loc(&self) -> Loc {
        match self {
            SyntaxFailure::Lex(e) => e.loc(),
            SyntaxFailure::Parse(e) => e.loc(),
        }
    }
}
