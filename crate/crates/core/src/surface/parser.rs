use super::lexer::{Spanned, Token};
use super::syntax::*;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("expected {}, found {found}", expected.join(" or "))]
pub struct SyntaxError {
    pub span: Span,
    pub expected: Vec<String>,
    pub found: String,
}

struct Parser<'a> {
    tokens: &'a [Spanned],
    pos: usize,
    /// Offset used for end-of-input errors.
    eof: usize,
}

type PResult<T> = Result<T, SyntaxError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos).map(|t| &t.token)
    }

    fn peek_span(&self) -> Span {
        self.tokens
            .get(self.pos)
            .map(|t| t.span)
            .unwrap_or(Span::new(self.eof, self.eof))
    }

    fn prev_end(&self) -> usize {
        self.pos
            .checked_sub(1)
            .and_then(|i| self.tokens.get(i))
            .map(|t| t.span.end)
            .unwrap_or(0)
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        let found = match self.peek() {
            Some(tok) => tok.to_string(),
            None => "end of input".to_string(),
        };
        Err(SyntaxError {
            span: self.peek_span(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        })
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: Token) -> PResult<Span> {
        let span = self.peek_span();
        if self.eat(&token) {
            Ok(span)
        } else {
            self.error(&[&token.to_string()])
        }
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        let span = self.peek_span();
        match self.peek() {
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok((name.clone(), span))
            }
            _ => self.error(&["identifier"]),
        }
    }

    fn binder_name(&mut self) -> PResult<String> {
        if self.eat(&Token::Underscore) {
            Ok("_".to_string())
        } else {
            self.ident().map(|(name, _)| name)
        }
    }

    fn module(&mut self) -> PResult<SurfaceModule> {
        let mut module = SurfaceModule::default();
        while let Some(token) = self.peek() {
            match token {
                Token::Import => {
                    let start = self.peek_span().start;
                    self.pos += 1;
                    match self.peek() {
                        Some(Token::Str(name)) => {
                            self.pos += 1;
                            module.imports.push(Import {
                                name: name.clone(),
                                span: Span::new(start, self.prev_end()),
                            });
                        }
                        _ => return self.error(&["string literal"]),
                    }
                }
                Token::Tier(_) | Token::Define | Token::Postulate => {
                    module.decls.push(self.decl()?);
                }
                _ => return self.error(&["`define`", "`postulate`", "`import`", "tier pragma"]),
            }
        }
        Ok(module)
    }

    fn decl(&mut self) -> PResult<SurfaceDecl> {
        let start = self.peek_span().start;
        let tier = match self.peek() {
            Some(Token::Tier(t)) => {
                self.pos += 1;
                Some(*t)
            }
            _ => None,
        };
        let kind = if self.eat(&Token::Define) {
            DeclKind::Define
        } else if self.eat(&Token::Postulate) {
            DeclKind::Postulate
        } else {
            return self.error(&["`define`", "`postulate`"]);
        };
        let (name, name_span) = self.ident()?;
        let mut params = Vec::new();
        while self.peek() == Some(&Token::LParen) {
            params.push(self.typed_binder()?);
        }
        self.expect(Token::Colon)?;
        let ty = self.expr()?;
        let body = match kind {
            DeclKind::Define => {
                self.expect(Token::ColonEq)?;
                Some(self.expr()?)
            }
            DeclKind::Postulate => {
                if self.peek() == Some(&Token::ColonEq) {
                    return self.error(&["next declaration"]);
                }
                None
            }
        };
        Ok(SurfaceDecl {
            kind,
            name,
            name_span,
            params,
            ty,
            body,
            tier,
            span: Span::new(start, self.prev_end()),
        })
    }

    /// `(x y : A)`
    fn typed_binder(&mut self) -> PResult<Binder> {
        self.expect(Token::LParen)?;
        let mut names = vec![self.binder_name()?];
        while matches!(self.peek(), Some(Token::Ident(_) | Token::Underscore)) {
            names.push(self.binder_name()?);
        }
        self.expect(Token::Colon)?;
        let ty = self.expr()?;
        self.expect(Token::RParen)?;
        Ok(Binder { names, ty })
    }

    fn expr(&mut self) -> PResult<SurfaceTerm> {
        let start = self.peek_span().start;
        match self.peek() {
            Some(Token::Lambda) => {
                self.pos += 1;
                let mut binders = Vec::new();
                loop {
                    match self.peek() {
                        Some(Token::LParen) => {
                            let group = self.typed_binder()?;
                            for name in group.names {
                                binders.push(LamBinder {
                                    name,
                                    ty: Some(group.ty.clone()),
                                });
                            }
                        }
                        Some(Token::Ident(_) | Token::Underscore) => binders.push(LamBinder {
                            name: self.binder_name()?,
                            ty: None,
                        }),
                        _ if binders.is_empty() => return self.error(&["binder"]),
                        _ => break,
                    }
                }
                self.expect(Token::Arrow)?;
                let body = self.expr()?;
                Ok(self.node(TermKind::Lam(binders, Box::new(body)), start))
            }
            Some(Token::Pi | Token::Sigma) => {
                let is_pi = self.peek() == Some(&Token::Pi);
                self.pos += 1;
                let mut binders = vec![self.typed_binder()?];
                while self.peek() == Some(&Token::LParen) {
                    binders.push(self.typed_binder()?);
                }
                self.expect(Token::Comma)?;
                let body = Box::new(self.expr()?);
                let kind = if is_pi {
                    TermKind::Pi(binders, body)
                } else {
                    TermKind::Sigma(binders, body)
                };
                Ok(self.node(kind, start))
            }
            Some(Token::Let) => {
                self.pos += 1;
                let name = self.binder_name()?;
                let ty = if self.eat(&Token::Colon) {
                    Some(Box::new(self.expr()?))
                } else {
                    None
                };
                self.expect(Token::ColonEq)?;
                let value = Box::new(self.expr()?);
                self.expect(Token::In)?;
                let body = Box::new(self.expr()?);
                Ok(self.node(
                    TermKind::Let {
                        name,
                        ty,
                        value,
                        body,
                    },
                    start,
                ))
            }
            _ => {
                let lhs = self.product()?;
                if self.eat(&Token::Arrow) {
                    let rhs = self.expr()?;
                    Ok(self.node(TermKind::Arrow(Box::new(lhs), Box::new(rhs)), start))
                } else {
                    Ok(lhs)
                }
            }
        }
    }

    fn product(&mut self) -> PResult<SurfaceTerm> {
        let start = self.peek_span().start;
        let lhs = self.application()?;
        if self.eat(&Token::Times) {
            let rhs = self.product()?;
            Ok(self.node(TermKind::Product(Box::new(lhs), Box::new(rhs)), start))
        } else {
            Ok(lhs)
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(
                Token::Ident(_)
                    | Token::Univ(_)
                    | Token::Int(_)
                    | Token::Underscore
                    | Token::LParen
                    | Token::Prim(_)
            )
        )
    }

    fn application(&mut self) -> PResult<SurfaceTerm> {
        let start = self.peek_span().start;
        let mut head = match self.peek() {
            Some(Token::Prim(prim)) if prim.arity() > 0 => {
                let prim = *prim;
                self.pos += 1;
                let mut args = Vec::with_capacity(prim.arity());
                for _ in 0..prim.arity() {
                    if !self.starts_atom() {
                        return self.error(&[&format!("argument to `{}`", prim.keyword())]);
                    }
                    args.push(self.atom()?);
                }
                self.node(TermKind::Prim(prim, args), start)
            }
            _ => self.atom()?,
        };
        while self.starts_atom() {
            let arg = self.atom()?;
            head = self.node(TermKind::App(Box::new(head), Box::new(arg)), start);
        }
        Ok(head)
    }

    fn atom(&mut self) -> PResult<SurfaceTerm> {
        let span = self.peek_span();
        let start = span.start;
        let kind = match self.peek() {
            Some(Token::Ident(name)) => TermKind::Var(name.clone()),
            Some(Token::Univ(level)) => TermKind::Univ(*level),
            Some(Token::Underscore) => TermKind::Hole,
            Some(Token::Int(n)) => {
                self.pos += 1;
                return Ok(numeral(*n, span));
            }
            Some(Token::Prim(prim)) if prim.arity() == 0 => TermKind::Prim(*prim, vec![]),
            Some(Token::Prim(prim)) => {
                return self.error(&[&format!("`({} …)`", prim.keyword())]);
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let first = self.expr()?;
                if self.eat(&Token::Colon) {
                    let ty = self.expr()?;
                    self.expect(Token::RParen)?;
                    return Ok(self.node(TermKind::Ann(Box::new(first), Box::new(ty)), start));
                }
                let mut items = vec![first];
                while self.eat(&Token::Comma) {
                    items.push(self.expr()?);
                }
                self.expect(Token::RParen)?;
                if items.len() == 1 {
                    // Parentheses widen the span of the inner term.
                    let mut inner = items.pop().unwrap();
                    inner.span = Span::new(start, self.prev_end());
                    return Ok(inner);
                }
                let end = self.prev_end();
                let mut acc = items.pop().unwrap();
                while let Some(item) = items.pop() {
                    let span = Span::new(item.span.start, end);
                    acc = SurfaceTerm::new(TermKind::Pair(Box::new(item), Box::new(acc)), span);
                }
                acc.span = Span::new(start, end);
                return Ok(acc);
            }
            _ => return self.error(&["term"]),
        };
        self.pos += 1;
        Ok(SurfaceTerm::new(kind, span))
    }

    fn node(&self, kind: TermKind, start: usize) -> SurfaceTerm {
        SurfaceTerm::new(kind, Span::new(start, self.prev_end()))
    }
}

/// Integer literals desugar to iterated `succ` over `zero`.
fn numeral(n: u64, span: Span) -> SurfaceTerm {
    let mut term = SurfaceTerm::new(TermKind::Prim(Prim::Zero, vec![]), span);
    for _ in 0..n {
        term = SurfaceTerm::new(TermKind::Prim(Prim::Succ, vec![term]), span);
    }
    term
}

pub fn parse_module(tokens: &[Spanned]) -> Result<SurfaceModule, SyntaxError> {
    let eof = tokens.last().map(|t| t.span.end).unwrap_or(0);
    Parser {
        tokens,
        pos: 0,
        eof,
    }
    .module()
}

/// Parse a single term that must consume all tokens.
pub fn parse_term(tokens: &[Spanned]) -> Result<SurfaceTerm, SyntaxError> {
    let eof = tokens.last().map(|t| t.span.end).unwrap_or(0);
    let mut parser = Parser {
        tokens,
        pos: 0,
        eof,
    };
    let term = parser.expr()?;
    if parser.peek().is_some() {
        return parser.error(&["end of input"]);
    }
    Ok(term)
}
