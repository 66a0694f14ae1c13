//! Pretty printing for surface terms and for core terms with name hints.
//!
//! The printed form is part of the stable interface: golden files compare it
//! byte for byte.

use std::collections::HashSet;

use super::syntax::*;
use crate::syntax::{RcTerm, Term};

const PREC_EXPR: u8 = 0;
const PREC_PRODUCT: u8 = 1;
const PREC_APP: u8 = 2;
const PREC_ATOM: u8 = 3;

fn precedence(t: &SurfaceTerm) -> u8 {
    match &t.kind {
        TermKind::Lam(..)
        | TermKind::Pi(..)
        | TermKind::Sigma(..)
        | TermKind::Let { .. }
        | TermKind::Arrow(..) => PREC_EXPR,
        TermKind::Product(..) => PREC_PRODUCT,
        TermKind::App(..) => PREC_APP,
        TermKind::Prim(_, args) if !args.is_empty() => PREC_APP,
        _ => PREC_ATOM,
    }
}

pub fn print_term(t: &SurfaceTerm) -> String {
    let mut out = String::new();
    write_term(&mut out, t, PREC_EXPR);
    out
}

fn write_term(out: &mut String, t: &SurfaceTerm, needed: u8) {
    let parens = precedence(t) < needed;
    if parens {
        out.push('(');
    }
    match &t.kind {
        TermKind::Var(name) => out.push_str(name),
        TermKind::Univ(level) => {
            out.push('U');
            out.push_str(&level.to_string());
        }
        TermKind::Hole => out.push('_'),
        TermKind::Prim(prim, args) => {
            out.push_str(prim.keyword());
            for arg in args {
                out.push(' ');
                write_term(out, arg, PREC_ATOM);
            }
        }
        TermKind::App(fun, arg) => {
            write_term(out, fun, PREC_APP);
            out.push(' ');
            write_term(out, arg, PREC_ATOM);
        }
        TermKind::Arrow(a, b) => {
            write_term(out, a, PREC_PRODUCT);
            out.push_str(" → ");
            write_term(out, b, PREC_EXPR);
        }
        TermKind::Product(a, b) => {
            write_term(out, a, PREC_APP);
            out.push_str(" × ");
            write_term(out, b, PREC_PRODUCT);
        }
        TermKind::Pi(binders, body) | TermKind::Sigma(binders, body) => {
            out.push_str(if matches!(t.kind, TermKind::Pi(..)) {
                "Π"
            } else {
                "Σ"
            });
            for binder in binders {
                out.push_str(" (");
                out.push_str(&binder.names.join(" "));
                out.push_str(" : ");
                write_term(out, &binder.ty, PREC_EXPR);
                out.push(')');
            }
            out.push_str(", ");
            write_term(out, body, PREC_EXPR);
        }
        TermKind::Lam(binders, body) => {
            out.push('λ');
            for binder in binders {
                out.push(' ');
                match &binder.ty {
                    Some(ty) => {
                        out.push('(');
                        out.push_str(&binder.name);
                        out.push_str(" : ");
                        write_term(out, ty, PREC_EXPR);
                        out.push(')');
                    }
                    None => out.push_str(&binder.name),
                }
            }
            out.push_str(" → ");
            write_term(out, body, PREC_EXPR);
        }
        TermKind::Pair(a, b) => {
            out.push('(');
            write_term(out, a, PREC_EXPR);
            let mut rest = b;
            while let TermKind::Pair(x, y) = &rest.kind {
                out.push_str(", ");
                write_term(out, x, PREC_EXPR);
                rest = y;
            }
            out.push_str(", ");
            write_term(out, rest, PREC_EXPR);
            out.push(')');
        }
        TermKind::Ann(term, ty) => {
            out.push('(');
            write_term(out, term, PREC_EXPR);
            out.push_str(" : ");
            write_term(out, ty, PREC_EXPR);
            out.push(')');
        }
        TermKind::Let {
            name,
            ty,
            value,
            body,
        } => {
            out.push_str("let ");
            out.push_str(name);
            if let Some(ty) = ty {
                out.push_str(" : ");
                write_term(out, ty, PREC_EXPR);
            }
            out.push_str(" := ");
            write_term(out, value, PREC_EXPR);
            out.push_str(" in ");
            write_term(out, body, PREC_EXPR);
        }
    }
    if parens {
        out.push(')');
    }
}

/// Print a core term whose free indices are named by `names` (innermost last).
pub fn print_core(names: &[String], term: &Term) -> String {
    print_term(&core_to_surface(names, term))
}

/// Convert a core term back to surface syntax, choosing binder names that
/// cannot capture.
pub fn core_to_surface(names: &[String], term: &Term) -> SurfaceTerm {
    let mut scope = names.to_vec();
    Unresolver { scope: &mut scope }.go(term)
}

struct Unresolver<'a> {
    scope: &'a mut Vec<String>,
}

fn mk(kind: TermKind) -> SurfaceTerm {
    SurfaceTerm::new(kind, Span::default())
}

const SUBSCRIPT_DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];

fn subscript(n: usize) -> String {
    n.to_string()
        .chars()
        .map(|d| SUBSCRIPT_DIGITS[d.to_digit(10).unwrap() as usize])
        .collect()
}

/// Does index `index` occur free in `term`?
pub fn occurs(term: &Term, index: usize) -> bool {
    match term {
        Term::Var(i) => *i == index,
        _ => term
            .children_with_binders()
            .into_iter()
            .any(|(child, binders)| occurs(child, index + binders)),
    }
}

fn globals_in(term: &Term) -> HashSet<String> {
    let mut out = HashSet::new();
    term.for_each_global(&mut |name| {
        out.insert(name.to_string());
    });
    out
}

fn is_reserved(name: &str) -> bool {
    Prim::from_keyword(name).is_some()
        || matches!(
            name,
            "define"
                | "postulate"
                | "import"
                | "let"
                | "in"
                | "fun"
                | "forall"
                | "Pi"
                | "exists"
                | "Sigma"
                | "U0"
                | "U1"
                | "U2"
        )
}

impl Unresolver<'_> {
    fn fresh(&self, hint: &str, body: &Term) -> String {
        let used = occurs(body, 0);
        if !used {
            return "_".to_string();
        }
        let base = if hint == "_" || hint.is_empty() {
            "x"
        } else {
            hint
        };
        let globals = globals_in(body);
        let taken = |name: &str| {
            is_reserved(name) || globals.contains(name) || self.scope.iter().any(|s| s == name)
        };
        if !taken(base) {
            return base.to_string();
        }
        let stem = base.trim_end_matches(|c| SUBSCRIPT_DIGITS.contains(&c));
        (1..)
            .map(|n| format!("{stem}{}", subscript(n)))
            .find(|candidate| !taken(candidate))
            .unwrap()
    }

    fn under<T>(&mut self, name: String, f: impl FnOnce(&mut Self) -> T) -> T {
        self.scope.push(name);
        let result = f(self);
        self.scope.pop();
        result
    }

    fn go(&mut self, term: &Term) -> SurfaceTerm {
        use Term as T;
        let boxed = |t: SurfaceTerm| Box::new(t);
        match term {
            T::Var(i) => {
                let name = self
                    .scope
                    .len()
                    .checked_sub(i + 1)
                    .map(|k| self.scope[k].clone())
                    .unwrap_or_else(|| format!("free{}", subscript(*i)));
                mk(TermKind::Var(name))
            }
            T::Global(name) => mk(TermKind::Var(name.to_string())),
            T::Univ(level) => mk(TermKind::Univ(*level)),
            T::Hole => mk(TermKind::Hole),
            T::Loc(_, inner) => self.go(inner),
            T::Ann(t, ty) => mk(TermKind::Ann(boxed(self.go(t)), boxed(self.go(ty)))),
            T::App(f, a) => mk(TermKind::App(boxed(self.go(f)), boxed(self.go(a)))),
            T::Pair(a, b) => mk(TermKind::Pair(boxed(self.go(a)), boxed(self.go(b)))),
            T::Pi(hint, dom, cod) | T::Sigma(hint, dom, cod) => {
                let is_pi = matches!(term, T::Pi(..));
                let dom_s = self.go(dom);
                if !occurs(cod, 0) {
                    let cod_s = self.under("_".into(), |u| u.go(cod));
                    let kind = if is_pi {
                        TermKind::Arrow(boxed(dom_s), boxed(cod_s))
                    } else {
                        TermKind::Product(boxed(dom_s), boxed(cod_s))
                    };
                    return mk(kind);
                }
                let name = self.fresh(hint, cod);
                let body = self.under(name.clone(), |u| u.go(cod));
                let mut binders = vec![Binder {
                    names: vec![name],
                    ty: dom_s,
                }];
                let body = match body.kind {
                    TermKind::Pi(more, inner) if is_pi => {
                        binders.extend(more);
                        *inner
                    }
                    TermKind::Sigma(more, inner) if !is_pi => {
                        binders.extend(more);
                        *inner
                    }
                    kind => mk(kind),
                };
                let kind = if is_pi {
                    TermKind::Pi(binders, boxed(body))
                } else {
                    TermKind::Sigma(binders, boxed(body))
                };
                mk(kind)
            }
            T::Lam(hint, ann, body) => {
                let ty = ann.as_ref().map(|a| self.go(a));
                let name = self.fresh(hint, body);
                let body = self.under(name.clone(), |u| u.go(body));
                let mut binders = vec![LamBinder { name, ty }];
                let body = match body.kind {
                    TermKind::Lam(more, inner) => {
                        binders.extend(more);
                        *inner
                    }
                    kind => mk(kind),
                };
                mk(TermKind::Lam(binders, boxed(body)))
            }
            T::Let(hint, ann, value, body) => {
                let ty = ann.as_ref().map(|a| boxed(self.go(a)));
                let value = boxed(self.go(value));
                let mut name = self.fresh(hint, body);
                if name == "_" {
                    name = self.fresh_any(hint);
                }
                let body = boxed(self.under(name.clone(), |u| u.go(body)));
                mk(TermKind::Let {
                    name,
                    ty,
                    value,
                    body,
                })
            }
            _ => {
                let (prim, args) = prim_parts(term);
                let args = args.into_iter().map(|a| self.go(a)).collect();
                mk(TermKind::Prim(prim, args))
            }
        }
    }

    fn fresh_any(&self, hint: &str) -> String {
        let base = if hint == "_" || hint.is_empty() {
            "x"
        } else {
            hint
        };
        if !is_reserved(base) && !self.scope.iter().any(|s| s == base) {
            return base.to_string();
        }
        (1..)
            .map(|n| format!("{base}{}", subscript(n)))
            .find(|c| !self.scope.iter().any(|s| s == c))
            .unwrap()
    }
}

/// Split a primitive core node into its keyword and arguments.
fn prim_parts(term: &Term) -> (Prim, Vec<&RcTerm>) {
    use Term as T;
    match term {
        T::Fst(a) => (Prim::Fst, vec![a]),
        T::Snd(a) => (Prim::Snd, vec![a]),
        T::Id(a, b, c) => (Prim::Id, vec![a, b, c]),
        T::Refl => (Prim::Refl, vec![]),
        T::J(a, b, c) => (Prim::J, vec![a, b, c]),
        T::Nat => (Prim::Nat, vec![]),
        T::Zero => (Prim::Zero, vec![]),
        T::Succ(a) => (Prim::Succ, vec![a]),
        T::NatInd(a, b, c, d) => (Prim::NatInd, vec![a, b, c, d]),
        T::Bool => (Prim::Bool, vec![]),
        T::True => (Prim::True, vec![]),
        T::False => (Prim::False, vec![]),
        T::BoolInd(a, b, c, d) => (Prim::BoolInd, vec![a, b, c, d]),
        T::Empty => (Prim::Empty, vec![]),
        T::Abort(a, b) => (Prim::Abort, vec![a, b]),
        T::Unit => (Prim::Unit, vec![]),
        T::Star => (Prim::Star, vec![]),
        T::UnitInd(a, b, c) => (Prim::UnitInd, vec![a, b, c]),
        T::GQuot(a, b) => (Prim::GQuot, vec![a, b]),
        T::Gpt(a, b, c) => (Prim::Gpt, vec![a, b, c]),
        T::Gedg(a, b, c, d, e) => (Prim::Gedg, vec![a, b, c, d, e]),
        T::Gind(a, b, c, d) => (Prim::Gind, vec![a, b, c, d]),
        other => unreachable!("not a primitive node: {other:?}"),
    }
}
