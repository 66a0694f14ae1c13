use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use super::context::{Context, GlobalTable};
use super::diagnostic::Diagnostic;
use crate::nbe::{apply_all, conv, eval, quote, subtype, Closure, Env, RcValue, Value};
use crate::resolve::resolve_term;
use crate::surface::{parse_term_source, print_core, Span};
use crate::syntax::{Level, RcTerm, Term};

pub type CheckResult<T> = Result<T, Diagnostic>;

/// Rules that a failing motive or method check is reported under.
const REMAPPABLE: [&str; 6] = [
    "type-mismatch",
    "refl-endpoint",
    "cannot-infer",
    "not-a-type",
    "app-nonfunction",
    "universe-too-big",
];

/// Bidirectional checker over a fixed global table.
pub struct Checker<'a> {
    table: &'a GlobalTable,
    span: Span,
}

impl<'a> Checker<'a> {
    pub fn new(table: &'a GlobalTable, span: Span) -> Checker<'a> {
        Checker { table, span }
    }

    pub fn eval(&self, ctx: &Context, term: &Term) -> RcValue {
        eval(self.table, ctx.env(), term)
    }

    pub fn quote(&self, ctx: &Context, value: &RcValue) -> RcTerm {
        quote(self.table, ctx.depth(), value)
    }

    pub fn print(&self, ctx: &Context, value: &RcValue) -> String {
        print_core(ctx.names(), &self.quote(ctx, value))
    }

    fn error(&self, rule: &'static str, message: impl Into<String>) -> Diagnostic {
        Diagnostic::error(rule, self.span, message)
    }

    fn mismatch(
        &self,
        ctx: &Context,
        rule: &'static str,
        message: impl Into<String>,
        expected: &RcValue,
        actual: &RcValue,
    ) -> Diagnostic {
        self.error(rule, message).with_types(
            Some(self.print(ctx, expected)),
            Some(self.print(ctx, actual)),
        )
    }

    fn located<T>(
        &mut self,
        span: Span,
        f: impl FnOnce(&mut Self) -> CheckResult<T>,
    ) -> CheckResult<T> {
        let saved = self.span;
        self.span = span;
        let out = f(self);
        if out.is_ok() {
            self.span = saved;
        }
        out
    }

    /// Evaluate a built-in type scheme whose free names are bound to `values`.
    fn scheme(&self, src: &str, names: &[&str], values: &[RcValue]) -> RcValue {
        let term = scheme_term(src, names);
        eval(self.table, &Env::from_values(values.iter().cloned()), &term)
    }

    /// Check a motive or method, reporting shape failures under `rule`.
    fn check_part(
        &mut self,
        ctx: &Context,
        rule: &'static str,
        what: &str,
        term: &RcTerm,
        expected: &RcValue,
    ) -> CheckResult<()> {
        self.check(ctx, term, expected).map_err(|mut d| {
            if REMAPPABLE.contains(&d.rule) {
                d.rule = rule;
                d.message = format!("ill-formed {what}: {}", d.message);
                if d.expected.is_none() {
                    d.expected = Some(self.print(ctx, expected));
                }
            }
            d
        })
    }

    /// Check that `term` is a type and return its universe level.
    pub fn check_type(&mut self, ctx: &Context, term: &RcTerm) -> CheckResult<Level> {
        let ty = self.infer(ctx, term)?;
        match ty.as_univ() {
            Some(level) => Ok(level),
            None => Err(self
                .error("not-a-type", "expected a type")
                .with_types(Some("a universe".into()), Some(self.print(ctx, &ty)))),
        }
    }

    pub fn infer(&mut self, ctx: &Context, term: &RcTerm) -> CheckResult<RcValue> {
        let g = self.table;
        match term.as_ref() {
            Term::Loc(span, inner) => self.located(*span, |c| c.infer(ctx, inner)),
            Term::Var(i) => ctx
                .type_of(*i)
                .cloned()
                .ok_or_else(|| self.error("internal", format!("variable index {i} out of scope"))),
            Term::Global(name) => match g.get(name) {
                Some(decl) => Ok(decl.ty_value().clone()),
                None => Err(self.error("unbound-identifier", format!("unknown global `{name}`"))),
            },
            Term::Univ(level) => match level.succ() {
                Some(next) => Ok(Value::univ(next)),
                None => Err(self.error(
                    "universe-too-big",
                    format!("U{level} has no type; the hierarchy stops at U2"),
                )),
            },
            Term::Pi(x, a, b) | Term::Sigma(x, a, b) => {
                let la = self.check_type(ctx, a)?;
                let va = self.eval(ctx, a);
                let lb = self.check_type(&ctx.bind(x, va), b)?;
                Ok(Value::univ(la.max(lb)))
            }
            Term::Lam(x, Some(a), body) => {
                self.check_type(ctx, a)?;
                let va = self.eval(ctx, a);
                let inner = ctx.bind(x, va.clone());
                let body_ty = self.infer(&inner, body)?;
                let code = self.quote(&inner, &body_ty);
                Ok(Rc::new(Value::Pi(
                    x.clone(),
                    va,
                    Closure {
                        env: ctx.env().clone(),
                        body: code,
                    },
                )))
            }
            Term::Lam(_, None, _) => Err(self.error(
                "cannot-infer",
                "cannot infer lambda; annotate the binder or the whole term",
            )),
            Term::Pair(..) => Err(self.error("cannot-infer", "cannot infer the type of a pair")),
            Term::Refl => Err(self.error("cannot-infer", "cannot infer the type of refl")),
            Term::App(f, a) => {
                let fty = self.infer(ctx, f)?;
                match fty.as_ref() {
                    Value::Pi(_, dom, cod) => {
                        self.check(ctx, a, dom)?;
                        Ok(cod.apply(g, self.eval(ctx, a)))
                    }
                    _ => Err(self
                        .error("app-nonfunction", "applying a term that is not a function")
                        .with_types(Some("a Π type".into()), Some(self.print(ctx, &fty)))),
                }
            }
            Term::Fst(p) | Term::Snd(p) => {
                let pty = self.infer(ctx, p)?;
                match pty.as_ref() {
                    Value::Sigma(_, a, b) => {
                        if matches!(term.as_ref(), Term::Fst(_)) {
                            Ok(a.clone())
                        } else {
                            Ok(b.apply(g, crate::nbe::fst(&self.eval(ctx, p))))
                        }
                    }
                    _ => Err(self
                        .error(
                            "projection-nonpair",
                            "projecting from a term that is not a pair",
                        )
                        .with_types(Some("a Σ type".into()), Some(self.print(ctx, &pty)))),
                }
            }
            Term::Id(a, x, y) => {
                let level = self.check_type(ctx, a)?;
                let va = self.eval(ctx, a);
                self.check(ctx, x, &va)?;
                self.check(ctx, y, &va)?;
                Ok(Value::univ(level))
            }
            Term::J(motive, base, path) => {
                let pty = self.infer(ctx, path)?;
                let Value::Id(a, from, to) = pty.as_ref() else {
                    return Err(self
                        .error("j-path", "J eliminates a path, but this is not one")
                        .with_types(Some("an identity type".into()), Some(self.print(ctx, &pty))));
                };
                let motive_ty = self.scheme(
                    "Π (y : A) (q : Id A a y), U2",
                    &["A", "a"],
                    &[a.clone(), from.clone()],
                );
                self.check_part(ctx, "j-motive", "J motive", motive, &motive_ty)?;
                let vm = self.eval(ctx, motive);
                let base_ty = apply_all(g, &vm, [from.clone(), Rc::new(Value::Refl)]);
                self.check_part(ctx, "j-base", "J base case", base, &base_ty)?;
                Ok(apply_all(g, &vm, [to.clone(), self.eval(ctx, path)]))
            }
            Term::Nat | Term::Bool | Term::Empty | Term::Unit => Ok(Value::univ(Level::ZERO)),
            Term::Zero => Ok(Rc::new(Value::Nat)),
            Term::Succ(n) => {
                self.check(ctx, n, &Rc::new(Value::Nat))?;
                Ok(Rc::new(Value::Nat))
            }
            Term::True | Term::False => Ok(Rc::new(Value::Bool)),
            Term::Star => Ok(Rc::new(Value::Unit)),
            Term::NatInd(motive, zero, succ, n) => {
                self.check(ctx, n, &Rc::new(Value::Nat))?;
                let motive_ty = self.scheme("Nat → U2", &[], &[]);
                self.check_part(ctx, "natind-motive", "natind motive", motive, &motive_ty)?;
                let vm = self.eval(ctx, motive);
                let zero_ty = apply_all(g, &vm, [Rc::new(Value::Zero)]);
                self.check_part(ctx, "natind-method", "natind zero case", zero, &zero_ty)?;
                let succ_ty = self.scheme("Π (k : Nat), P k → P (succ k)", &["P"], std::slice::from_ref(&vm));
                self.check_part(
                    ctx,
                    "natind-method",
                    "natind successor case",
                    succ,
                    &succ_ty,
                )?;
                Ok(apply_all(g, &vm, [self.eval(ctx, n)]))
            }
            Term::BoolInd(motive, t, f, b) => {
                self.check(ctx, b, &Rc::new(Value::Bool))?;
                let motive_ty = self.scheme("Bool → U2", &[], &[]);
                self.check_part(ctx, "boolind-motive", "boolind motive", motive, &motive_ty)?;
                let vm = self.eval(ctx, motive);
                let t_ty = apply_all(g, &vm, [Rc::new(Value::True)]);
                self.check_part(ctx, "boolind-method", "boolind true case", t, &t_ty)?;
                let f_ty = apply_all(g, &vm, [Rc::new(Value::False)]);
                self.check_part(ctx, "boolind-method", "boolind false case", f, &f_ty)?;
                Ok(apply_all(g, &vm, [self.eval(ctx, b)]))
            }
            Term::Abort(motive, e) => {
                self.check(ctx, e, &Rc::new(Value::Empty))?;
                let motive_ty = self.scheme("Empty → U2", &[], &[]);
                self.check_part(ctx, "abort-motive", "abort motive", motive, &motive_ty)?;
                let vm = self.eval(ctx, motive);
                Ok(apply_all(g, &vm, [self.eval(ctx, e)]))
            }
            Term::UnitInd(motive, s, u) => {
                self.check(ctx, u, &Rc::new(Value::Unit))?;
                let motive_ty = self.scheme("Unit → U2", &[], &[]);
                self.check_part(ctx, "unitind-motive", "unitind motive", motive, &motive_ty)?;
                let vm = self.eval(ctx, motive);
                let s_ty = apply_all(g, &vm, [Rc::new(Value::Star)]);
                self.check_part(ctx, "unitind-method", "unitind star case", s, &s_ty)?;
                Ok(apply_all(g, &vm, [self.eval(ctx, u)]))
            }
            Term::GQuot(v, e) => {
                let level = self.check_type(ctx, v)?;
                if level == Level::TWO {
                    return Err(self.error(
                        "gquot-level",
                        "graph quotients take vertex types in U0 or U1",
                    ));
                }
                let vv = self.eval(ctx, v);
                let edge_ty = self.scheme(&format!("V → V → U{level}"), &["V"], std::slice::from_ref(&vv));
                if let Err(d) = self.check(ctx, e, &edge_ty) {
                    let larger = self.scheme("V → V → U2", &["V"], &[vv]);
                    let mut probe = Checker::new(self.table, self.span);
                    if probe.check(ctx, e, &larger).is_ok() {
                        return Err(self
                            .error(
                                "gquot-level",
                                "the edge family lives in a larger universe than the vertices",
                            )
                            .with_types(Some(self.print(ctx, &edge_ty)), None));
                    }
                    return Err(d);
                }
                Ok(Value::univ(level))
            }
            Term::Gpt(v, e, x) => {
                let (vv, _) = self.quotient(ctx, v, e)?;
                self.check(ctx, x, &vv)?;
                Ok(self.eval(ctx, &Term::GQuot(v.clone(), e.clone())))
            }
            Term::Gedg(v, e, i, j, r) => {
                let (vv, ve) = self.quotient(ctx, v, e)?;
                self.check(ctx, i, &vv)?;
                self.check(ctx, j, &vv)?;
                let (vi, vj) = (self.eval(ctx, i), self.eval(ctx, j));
                let r_ty = apply_all(g, &ve, [vi.clone(), vj.clone()]);
                self.check(ctx, r, &r_ty)?;
                let q = Rc::new(Value::GQuot(vv.clone(), ve.clone()));
                let pt = |x: RcValue| Rc::new(Value::Gpt(vv.clone(), ve.clone(), x));
                Ok(Rc::new(Value::Id(q, pt(vi), pt(vj))))
            }
            Term::Gind(motive, point, edge, x) => {
                let xty = self.infer(ctx, x)?;
                let Value::GQuot(v, e) = xty.as_ref() else {
                    return Err(self
                        .error(
                            "gind-scrutinee",
                            "gind eliminates a graph quotient, but this is not one",
                        )
                        .with_types(Some("a graph quotient".into()), Some(self.print(ctx, &xty))));
                };
                let motive_ty = self.scheme("GQuot V E → U2", &["V", "E"], &[v.clone(), e.clone()]);
                self.check_part(ctx, "gind-motive", "gind motive", motive, &motive_ty)?;
                let vm = self.eval(ctx, motive);
                let point_ty = self.scheme(
                    "Π (v : V), P (gpt V E v)",
                    &["V", "E", "P"],
                    &[v.clone(), e.clone(), vm.clone()],
                );
                self.check_part(ctx, "gind-point", "gind point method", point, &point_ty)?;
                let vp = self.eval(ctx, point);
                let edge_ty = self.scheme(
                    GIND_EDGE_METHOD,
                    &["V", "E", "P", "p"],
                    &[v.clone(), e.clone(), vm.clone(), vp],
                );
                self.check_part(ctx, "gind-edge", "gind edge method", edge, &edge_ty)?;
                Ok(apply_all(g, &vm, [self.eval(ctx, x)]))
            }
            Term::Let(x, ann, value, body) => {
                let inner = self.let_context(ctx, x, ann.as_ref(), value)?;
                self.infer(&inner, body)
            }
            Term::Ann(t, ty) => {
                self.check_type(ctx, ty)?;
                let vty = self.eval(ctx, ty);
                self.check(ctx, t, &vty)?;
                Ok(vty)
            }
            Term::Hole => Err(self.error(
                "unsolved-hole",
                "unsolved hole; its type cannot be inferred",
            )),
        }
    }

    /// Check `GQuot v e` is well formed; return the evaluated `v` and `e`.
    fn quotient(
        &mut self,
        ctx: &Context,
        v: &RcTerm,
        e: &RcTerm,
    ) -> CheckResult<(RcValue, RcValue)> {
        self.infer(ctx, &Rc::new(Term::GQuot(v.clone(), e.clone())))?;
        Ok((self.eval(ctx, v), self.eval(ctx, e)))
    }

    fn let_context(
        &mut self,
        ctx: &Context,
        name: &str,
        ann: Option<&RcTerm>,
        value: &RcTerm,
    ) -> CheckResult<Context> {
        let ty = match ann {
            Some(ann) => {
                self.check_type(ctx, ann)?;
                let ty = self.eval(ctx, ann);
                self.check(ctx, value, &ty)?;
                ty
            }
            None => self.infer(ctx, value)?,
        };
        Ok(ctx.define(name, ty, self.eval(ctx, value)))
    }

    pub fn check(&mut self, ctx: &Context, term: &RcTerm, expected: &RcValue) -> CheckResult<()> {
        let g = self.table;
        match (term.as_ref(), expected.as_ref()) {
            (Term::Loc(span, inner), _) => self.located(*span, |c| c.check(ctx, inner, expected)),
            (Term::Lam(x, ann, body), Value::Pi(_, dom, cod)) => {
                if let Some(ann) = ann {
                    self.check_type(ctx, ann)?;
                    let va = self.eval(ctx, ann);
                    if !conv(g, ctx.depth(), &va, dom) {
                        return Err(self.mismatch(
                            ctx,
                            "type-mismatch",
                            "binder annotation differs from the expected domain",
                            dom,
                            &va,
                        ));
                    }
                }
                let inner = ctx.bind(x, dom.clone());
                let cod = cod.apply(g, Value::var(ctx.depth()));
                self.check(&inner, body, &cod)
            }
            (Term::Lam(..), _) => Err(self
                .error(
                    "type-mismatch",
                    "a lambda was given where a non-function is expected",
                )
                .with_types(Some(self.print(ctx, expected)), Some("a function".into()))),
            (Term::Pair(a, b), Value::Sigma(_, dom, cod)) => {
                self.check(ctx, a, dom)?;
                let cod = cod.apply(g, self.eval(ctx, a));
                self.check(ctx, b, &cod)
            }
            (Term::Pair(..), _) => Err(self
                .error(
                    "type-mismatch",
                    "a pair was given where a non-Σ type is expected",
                )
                .with_types(Some(self.print(ctx, expected)), Some("a pair".into()))),
            (Term::Refl, Value::Id(_, x, y)) => {
                if conv(g, ctx.depth(), x, y) {
                    Ok(())
                } else {
                    Err(self.mismatch(
                        ctx,
                        "refl-endpoint",
                        "refl needs definitionally equal endpoints",
                        x,
                        y,
                    ))
                }
            }
            (Term::Refl, _) => Err(self
                .error(
                    "type-mismatch",
                    "refl was given where a non-identity type is expected",
                )
                .with_types(Some(self.print(ctx, expected)), Some("a path".into()))),
            (Term::Let(x, ann, value, body), _) => {
                let inner = self.let_context(ctx, x, ann.as_ref(), value)?;
                self.check(&inner, body, expected)
            }
            (Term::Hole, _) => Err(self
                .error("unsolved-hole", "unsolved hole")
                .with_types(Some(self.print(ctx, expected)), None)),
            (Term::Gedg(..), Value::Id(..)) => {
                let actual = self.infer(ctx, term)?;
                if subtype(g, ctx.depth(), &actual, expected) {
                    Ok(())
                } else {
                    Err(self.mismatch(
                        ctx,
                        "gedg-endpoint",
                        "edge endpoints do not match the expected path",
                        expected,
                        &actual,
                    ))
                }
            }
            _ => {
                let actual = self.infer(ctx, term)?;
                self.subsume(ctx, &actual, expected)
            }
        }
    }

    fn subsume(&self, ctx: &Context, actual: &RcValue, expected: &RcValue) -> CheckResult<()> {
        if subtype(self.table, ctx.depth(), actual, expected) {
            return Ok(());
        }
        if let (Some(have), Some(want)) = (actual.as_univ(), expected.as_univ()) {
            return Err(self.mismatch(
                ctx,
                "universe-too-big",
                format!("a type in U{have} is not contained in U{want}"),
                expected,
                actual,
            ));
        }
        Err(self.mismatch(ctx, "type-mismatch", "type mismatch", expected, actual))
    }
}

/// Type of the edge method of `gind`, over `V E P p`.
pub const GIND_EDGE_METHOD: &str = "Π (i j : V) (r : E i j), \
    Id (P (gpt V E j)) (J (λ y _ → P y) (p i) (gedg V E i j r)) (p j)";

thread_local! {
    static SCHEMES: RefCell<HashMap<(String, Vec<String>), RcTerm>> = RefCell::new(HashMap::new());
}

/// Parse and resolve a scheme over the given free names (innermost last).
fn scheme_term(src: &str, names: &[&str]) -> RcTerm {
    let key = (
        src.to_string(),
        names.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
    );
    SCHEMES.with(|cache| {
        if let Some(term) = cache.borrow().get(&key) {
            return term.clone();
        }
        let surface = parse_term_source(src).expect("built-in scheme parses");
        let term = resolve_term(&HashSet::new(), &key.1, &surface)
            .expect("built-in scheme resolves")
            .strip();
        cache.borrow_mut().insert(key, term.clone());
        term
    })
}
