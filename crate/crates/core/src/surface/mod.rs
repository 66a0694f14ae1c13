//! Human-facing syntax: lexing, parsing and printing.

mod lexer;
mod parser;
mod print;
mod syntax;

pub use lexer::{tokenize, LexError, Spanned, Token};
pub use parser::{parse_module, parse_term, SyntaxError};
pub use print::{core_to_surface, occurs, print_core, print_term};
pub use syntax::*;

/// Either stage of reading source text.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

impl ParseError {
    pub fn span(&self) -> Span {
        match self {
            ParseError::Lex(e) => e.span(),
            ParseError::Syntax(e) => e.span,
        }
    }
}

pub fn parse_source(src: &str) -> Result<SurfaceModule, ParseError> {
    Ok(parse_module(&tokenize(src)?)?)
}

pub fn parse_term_source(src: &str) -> Result<SurfaceTerm, ParseError> {
    Ok(parse_term(&tokenize(src)?)?)
}
