//! Scope resolution: named variables become de Bruijn indices, references to
//! earlier declarations become global nodes.

use std::collections::HashSet;
use std::rc::Rc;

use crate::surface::{DeclKind, Prim, Span, SurfaceDecl, SurfaceTerm, TermKind, Tier};
use crate::syntax::{RcTerm, Term};

/// Names of declarations visible to the term being resolved.
pub trait GlobalScope {
    fn contains_global(&self, name: &str) -> bool;
    fn global_names(&self) -> Vec<String>;
}

impl GlobalScope for HashSet<String> {
    fn contains_global(&self, name: &str) -> bool {
        self.contains(name)
    }

    fn global_names(&self) -> Vec<String> {
        self.iter().cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ResolveError {
    #[error("unbound identifier `{name}`{}", suggestion.as_ref().map(|s| format!(" (did you mean `{s}`?)")).unwrap_or_default())]
    Unbound {
        name: String,
        span: Span,
        suggestion: Option<String>,
    },
    #[error("duplicate definition of `{name}`")]
    Duplicate { name: String, span: Span },
}

impl ResolveError {
    pub fn span(&self) -> Span {
        match self {
            ResolveError::Unbound { span, .. } | ResolveError::Duplicate { span, .. } => *span,
        }
    }

    pub fn rule(&self) -> &'static str {
        match self {
            ResolveError::Unbound { .. } => "unbound-identifier",
            ResolveError::Duplicate { .. } => "duplicate-definition",
        }
    }
}

/// A declaration after resolution, before type checking.
#[derive(Clone, Debug)]
pub struct ResolvedDecl {
    pub kind: DeclKind,
    pub name: String,
    pub name_span: Span,
    pub ty: RcTerm,
    pub body: Option<RcTerm>,
    pub tier: Option<Tier>,
    pub span: Span,
}

pub fn resolve_decl(
    scope: &dyn GlobalScope,
    decl: &SurfaceDecl,
) -> Result<ResolvedDecl, ResolveError> {
    if scope.contains_global(&decl.name) {
        return Err(ResolveError::Duplicate {
            name: decl.name.clone(),
            span: decl.name_span,
        });
    }
    let mut r = Resolver {
        scope,
        locals: Vec::new(),
    };
    // Parameters scope over both the type and the body.
    let mut param_types = Vec::new();
    for binder in &decl.params {
        for name in &binder.names {
            let ty = r.term(&binder.ty)?;
            param_types.push((name.clone(), ty, binder.ty.span));
            r.locals.push(name.clone());
        }
    }
    let mut ty = r.term(&decl.ty)?;
    let mut body = decl.body.as_ref().map(|b| r.term(b)).transpose()?;
    for (name, param_ty, span) in param_types.into_iter().rev() {
        let name: Rc<str> = name.into();
        let whole = span.merge(decl.ty.span);
        ty = Rc::new(Term::Loc(
            whole,
            Rc::new(Term::Pi(name.clone(), param_ty, ty)),
        ));
        body = body.map(|b| Rc::new(Term::Lam(name.clone(), None, b)));
    }
    Ok(ResolvedDecl {
        kind: decl.kind,
        name: decl.name.clone(),
        name_span: decl.name_span,
        ty,
        body,
        tier: decl.tier,
        span: decl.span,
    })
}

/// Resolve a standalone term with the given local names in scope (innermost last).
pub fn resolve_term(
    scope: &dyn GlobalScope,
    locals: &[String],
    term: &SurfaceTerm,
) -> Result<RcTerm, ResolveError> {
    Resolver {
        scope,
        locals: locals.to_vec(),
    }
    .term(term)
}

struct Resolver<'a> {
    scope: &'a dyn GlobalScope,
    locals: Vec<String>,
}

impl Resolver<'_> {
    fn with_binder<T>(
        &mut self,
        name: &str,
        f: impl FnOnce(&mut Self) -> Result<T, ResolveError>,
    ) -> Result<T, ResolveError> {
        self.locals.push(name.to_string());
        let out = f(self);
        self.locals.pop();
        out
    }

    fn variable(&self, name: &str, span: Span) -> Result<Term, ResolveError> {
        // `_` binders are never referable.
        if let Some(pos) = self.locals.iter().rposition(|l| l == name && l != "_") {
            return Ok(Term::Var(self.locals.len() - 1 - pos));
        }
        if self.scope.contains_global(name) {
            return Ok(Term::Global(name.into()));
        }
        let mut candidates = self.scope.global_names();
        candidates.extend(self.locals.iter().filter(|l| *l != "_").cloned());
        Err(ResolveError::Unbound {
            name: name.to_string(),
            span,
            suggestion: nearest(name, &candidates),
        })
    }

    /// Resolve `binders` one at a time, then `body`, building nested binder nodes.
    fn telescope(
        &mut self,
        binders: &[(String, Option<&SurfaceTerm>)],
        body: &SurfaceTerm,
        build: &dyn Fn(Rc<str>, Option<RcTerm>, RcTerm) -> Term,
    ) -> Result<RcTerm, ResolveError> {
        let Some(((name, ty), rest)) = binders.split_first() else {
            return self.term(body);
        };
        let ty = ty.map(|t| self.term(t)).transpose()?;
        let inner = self.with_binder(name, |r| r.telescope(rest, body, build))?;
        Ok(Rc::new(build(name.as_str().into(), ty, inner)))
    }

    fn term(&mut self, t: &SurfaceTerm) -> Result<RcTerm, ResolveError> {
        let core = match &t.kind {
            TermKind::Var(name) => self.variable(name, t.span)?,
            TermKind::Univ(level) => Term::Univ(*level),
            TermKind::Hole => Term::Hole,
            TermKind::App(f, a) => Term::App(self.term(f)?, self.term(a)?),
            TermKind::Pair(a, b) => Term::Pair(self.term(a)?, self.term(b)?),
            TermKind::Ann(e, ty) => Term::Ann(self.term(e)?, self.term(ty)?),
            TermKind::Arrow(a, b) | TermKind::Product(a, b) => {
                let dom = self.term(a)?;
                let cod = self.with_binder("_", |r| r.term(b))?;
                if matches!(t.kind, TermKind::Arrow(..)) {
                    Term::Pi("_".into(), dom, cod)
                } else {
                    Term::Sigma("_".into(), dom, cod)
                }
            }
            TermKind::Pi(binders, body) | TermKind::Sigma(binders, body) => {
                let flat: Vec<_> = binders
                    .iter()
                    .flat_map(|b| b.names.iter().map(move |n| (n.clone(), Some(&b.ty))))
                    .collect();
                let is_pi = matches!(t.kind, TermKind::Pi(..));
                let build = move |name, ty: Option<RcTerm>, body| {
                    let ty = ty.expect("typed binder");
                    if is_pi {
                        Term::Pi(name, ty, body)
                    } else {
                        Term::Sigma(name, ty, body)
                    }
                };
                return located(t.span, self.telescope(&flat, body, &build)?);
            }
            TermKind::Lam(binders, body) => {
                let flat: Vec<_> = binders
                    .iter()
                    .map(|b| (b.name.clone(), b.ty.as_ref()))
                    .collect();
                let build = |name, ty, body| Term::Lam(name, ty, body);
                return located(t.span, self.telescope(&flat, body, &build)?);
            }
            TermKind::Let {
                name,
                ty,
                value,
                body,
            } => {
                let ty = ty.as_ref().map(|ty| self.term(ty)).transpose()?;
                let value = self.term(value)?;
                let body = self.with_binder(name, |r| r.term(body))?;
                Term::Let(name.as_str().into(), ty, value, body)
            }
            TermKind::Prim(prim, args) => {
                let args = args
                    .iter()
                    .map(|a| self.term(a))
                    .collect::<Result<Vec<_>, _>>()?;
                prim_term(*prim, args)
            }
        };
        Ok(Rc::new(Term::Loc(t.span, Rc::new(core))))
    }
}

fn located(span: Span, term: RcTerm) -> Result<RcTerm, ResolveError> {
    Ok(Rc::new(Term::Loc(span, term)))
}

fn prim_term(prim: Prim, args: Vec<RcTerm>) -> Term {
    let mut it = args.into_iter();
    let mut next = || it.next().expect("parser saturates primitives");
    match prim {
        Prim::Fst => Term::Fst(next()),
        Prim::Snd => Term::Snd(next()),
        Prim::Id => Term::Id(next(), next(), next()),
        Prim::Refl => Term::Refl,
        Prim::J => Term::J(next(), next(), next()),
        Prim::Nat => Term::Nat,
        Prim::Zero => Term::Zero,
        Prim::Succ => Term::Succ(next()),
        Prim::NatInd => Term::NatInd(next(), next(), next(), next()),
        Prim::Bool => Term::Bool,
        Prim::True => Term::True,
        Prim::False => Term::False,
        Prim::BoolInd => Term::BoolInd(next(), next(), next(), next()),
        Prim::Empty => Term::Empty,
        Prim::Abort => Term::Abort(next(), next()),
        Prim::Unit => Term::Unit,
        Prim::Star => Term::Star,
        Prim::UnitInd => Term::UnitInd(next(), next(), next()),
        Prim::GQuot => Term::GQuot(next(), next()),
        Prim::Gpt => Term::Gpt(next(), next(), next()),
        Prim::Gedg => Term::Gedg(next(), next(), next(), next(), next()),
        Prim::Gind => Term::Gind(next(), next(), next(), next()),
    }
}

fn edit_distance(a: &str, b: &str) -> usize {
    let b: Vec<char> = b.chars().collect();
    let mut row: Vec<usize> = (0..=b.len()).collect();
    for (i, ca) in a.chars().enumerate() {
        let mut prev = row[0];
        row[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let cur = row[j + 1];
            row[j + 1] = if ca == *cb {
                prev
            } else {
                1 + prev.min(cur).min(row[j])
            };
            prev = cur;
        }
    }
    row[b.len()]
}

fn nearest(name: &str, candidates: &[String]) -> Option<String> {
    let limit = (name.chars().count() / 3).max(1);
    candidates
        .iter()
        .map(|c| (edit_distance(name, c), c))
        .filter(|(d, _)| *d <= limit)
        .min()
        .map(|(_, c)| c.clone())
}
