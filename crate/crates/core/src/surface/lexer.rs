use std::fmt;

use super::syntax::{Prim, Span, Tier};
use crate::syntax::Level;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Univ(Level),
    Int(u64),
    Str(String),
    Prim(Prim),
    Define,
    Postulate,
    Import,
    Let,
    In,
    Lambda,
    Pi,
    Sigma,
    Arrow,
    Times,
    LParen,
    RParen,
    Colon,
    ColonEq,
    Comma,
    Underscore,
    Tier(Tier),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(name) => write!(f, "identifier `{name}`"),
            Token::Univ(level) => write!(f, "`U{level}`"),
            Token::Int(n) => write!(f, "`{n}`"),
            Token::Str(s) => write!(f, "string {s:?}"),
            Token::Prim(p) => write!(f, "`{}`", p.keyword()),
            Token::Tier(t) => write!(f, "tier pragma {t}"),
            other => f.write_str(describe(other)),
        }
    }
}

fn describe(token: &Token) -> &'static str {
    match token {
        Token::Define => "`define`",
        Token::Postulate => "`postulate`",
        Token::Import => "`import`",
        Token::Let => "`let`",
        Token::In => "`in`",
        Token::Lambda => "`λ`",
        Token::Pi => "`Π`",
        Token::Sigma => "`Σ`",
        Token::Arrow => "`→`",
        Token::Times => "`×`",
        Token::LParen => "`(`",
        Token::RParen => "`)`",
        Token::Colon => "`:`",
        Token::ColonEq => "`:=`",
        Token::Comma => "`,`",
        Token::Underscore => "`_`",
        _ => "token",
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub token: Token,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LexError {
    #[error("unterminated block comment")]
    UnterminatedComment(Span),
    #[error("unterminated string literal")]
    UnterminatedString(Span),
    #[error("illegal character {0:?}")]
    IllegalChar(char, Span),
    #[error("malformed pragma")]
    BadPragma(Span),
    #[error("integer literal out of range")]
    IntOverflow(Span),
}

impl LexError {
    pub fn span(&self) -> Span {
        match self {
            LexError::UnterminatedComment(s)
            | LexError::UnterminatedString(s)
            | LexError::IllegalChar(_, s)
            | LexError::BadPragma(s)
            | LexError::IntOverflow(s) => *s,
        }
    }
}

const SUBSCRIPTS: &str = "₀₁₂₃₄₅₆₇₈₉";

fn is_reserved_symbol(c: char) -> bool {
    matches!(c, 'λ' | 'Π' | 'Σ' | '×' | '→')
}

fn is_ident_start(c: char) -> bool {
    (c.is_alphabetic() || c == '_') && !is_reserved_symbol(c)
}

fn is_ident_continue(c: char) -> bool {
    (c.is_alphanumeric() || matches!(c, '_' | '\'' | '′') || SUBSCRIPTS.contains(c))
        && !is_reserved_symbol(c)
}

fn keyword(word: &str) -> Option<Token> {
    let token = match word {
        "define" => Token::Define,
        "postulate" => Token::Postulate,
        "import" => Token::Import,
        "let" => Token::Let,
        "in" => Token::In,
        "fun" => Token::Lambda,
        "forall" | "Pi" => Token::Pi,
        "exists" | "Sigma" => Token::Sigma,
        "_" => Token::Underscore,
        "U0" => Token::Univ(Level::ZERO),
        "U1" => Token::Univ(Level::ONE),
        "U2" => Token::Univ(Level::TWO),
        _ => return Prim::from_keyword(word).map(Token::Prim),
    };
    Some(token)
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
    out: Vec<Spanned>,
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn push(&mut self, token: Token, start: usize) {
        self.out.push(Spanned {
            token,
            span: Span::new(start, self.pos),
        });
    }

    fn block_comment(&mut self, start: usize) -> Result<(), LexError> {
        // Positioned just after the opening `{-`.
        let mut depth = 1usize;
        while depth > 0 {
            let rest = self.rest();
            if rest.is_empty() {
                return Err(LexError::UnterminatedComment(Span::new(start, self.pos)));
            }
            if rest.starts_with("{-") {
                depth += 1;
                self.pos += 2;
            } else if rest.starts_with("-}") {
                depth -= 1;
                self.pos += 2;
            } else {
                self.bump();
            }
        }
        Ok(())
    }

    fn pragma(&mut self, start: usize) -> Result<(), LexError> {
        // Positioned just after `{-#`.
        let Some(close) = self.rest().find("#-}") else {
            return Err(LexError::UnterminatedComment(Span::new(
                start,
                self.src.len(),
            )));
        };
        let body = &self.rest()[..close];
        self.pos += close + 3;
        let span = Span::new(start, self.pos);
        let mut words = body.split_whitespace();
        match (words.next(), words.next(), words.next()) {
            (Some("TIER"), Some(letter), None) => match Tier::from_letter(letter) {
                Some(tier) => {
                    self.out.push(Spanned {
                        token: Token::Tier(tier),
                        span,
                    });
                    Ok(())
                }
                None => Err(LexError::BadPragma(span)),
            },
            _ => Err(LexError::BadPragma(span)),
        }
    }

    fn run(mut self) -> Result<Vec<Spanned>, LexError> {
        while let Some(c) = self.peek() {
            let start = self.pos;
            let rest = self.rest();
            if c.is_whitespace() {
                self.bump();
            } else if rest.starts_with("--") {
                match rest.find('\n') {
                    Some(nl) => self.pos += nl,
                    None => self.pos = self.src.len(),
                }
            } else if rest.starts_with("{-#") {
                self.pos += 3;
                self.pragma(start)?;
            } else if rest.starts_with("{-") {
                self.pos += 2;
                self.block_comment(start)?;
            } else if rest.starts_with("->") {
                self.pos += 2;
                self.push(Token::Arrow, start);
            } else if rest.starts_with(":=") {
                self.pos += 2;
                self.push(Token::ColonEq, start);
            } else if c.is_ascii_digit() {
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.bump();
                }
                let text = &self.src[start..self.pos];
                let n = text
                    .parse::<u64>()
                    .map_err(|_| LexError::IntOverflow(Span::new(start, self.pos)))?;
                self.push(Token::Int(n), start);
            } else if c == '"' {
                self.bump();
                let Some(close) = self.rest().find(['"', '\n']) else {
                    return Err(LexError::UnterminatedString(Span::new(
                        start,
                        self.src.len(),
                    )));
                };
                if !self.rest()[close..].starts_with('"') {
                    return Err(LexError::UnterminatedString(Span::new(
                        start,
                        self.pos + close,
                    )));
                }
                let text = self.rest()[..close].to_string();
                self.pos += close + 1;
                self.push(Token::Str(text), start);
            } else if is_ident_start(c) {
                while self.peek().is_some_and(is_ident_continue) {
                    self.bump();
                }
                let word = &self.src[start..self.pos];
                let token = keyword(word).unwrap_or_else(|| Token::Ident(word.to_string()));
                self.push(token, start);
            } else {
                self.bump();
                let token = match c {
                    'λ' | '\\' => Token::Lambda,
                    'Π' | '∀' => Token::Pi,
                    'Σ' | '∃' => Token::Sigma,
                    '→' => Token::Arrow,
                    '×' | '*' => Token::Times,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    ':' => Token::Colon,
                    ',' => Token::Comma,
                    '≔' => Token::ColonEq,
                    other => return Err(LexError::IllegalChar(other, Span::new(start, self.pos))),
                };
                self.push(token, start);
            }
        }
        Ok(self.out)
    }
}

/// Split source text into tokens, dropping whitespace and comments.
pub fn tokenize(src: &str) -> Result<Vec<Spanned>, LexError> {
    Lexer {
        src,
        pos: 0,
        out: Vec::new(),
    }
    .run()
}
