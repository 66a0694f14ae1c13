use std::rc::Rc;

use super::eval::{eval, Globals};
use super::value::*;
use crate::syntax::{RcTerm, Term};

/// Read a value back into a β-normal term in a context of `depth` variables.
pub fn quote(globals: &dyn Globals, depth: usize, value: &Value) -> RcTerm {
    let q = |v: &RcValue| quote(globals, depth, v);
    let under = |c: &Closure| quote(globals, depth + 1, &c.apply(globals, Value::var(depth)));
    let term = match value {
        Value::Univ(level) => Term::Univ(*level),
        Value::Pi(name, a, b) => Term::Pi(name.clone(), q(a), under(b)),
        Value::Lam(name, body) => Term::Lam(name.clone(), None, under(body)),
        Value::Sigma(name, a, b) => Term::Sigma(name.clone(), q(a), under(b)),
        Value::Pair(a, b) => Term::Pair(q(a), q(b)),
        Value::Id(a, x, y) => Term::Id(q(a), q(x), q(y)),
        Value::Refl => Term::Refl,
        Value::Nat => Term::Nat,
        Value::Zero => Term::Zero,
        Value::Succ(n) => Term::Succ(q(n)),
        Value::Bool => Term::Bool,
        Value::True => Term::True,
        Value::False => Term::False,
        Value::Empty => Term::Empty,
        Value::Unit => Term::Unit,
        Value::Star => Term::Star,
        Value::GQuot(v, e) => Term::GQuot(q(v), q(e)),
        Value::Gpt(v, e, x) => Term::Gpt(q(v), q(e), q(x)),
        Value::Gedg(v, e, i, j, r) => Term::Gedg(q(v), q(e), q(i), q(j), q(r)),
        Value::Neutral(head, spine) => return quote_neutral(globals, depth, head, spine),
    };
    Rc::new(term)
}

pub fn quote_neutral(globals: &dyn Globals, depth: usize, head: &Head, spine: &[Elim]) -> RcTerm {
    let q = |v: &RcValue| quote(globals, depth, v);
    let mut term = match head {
        Head::Var(level) => Rc::new(Term::Var(depth - level - 1)),
        Head::Postulate(name) => Rc::new(Term::Global(name.clone())),
        Head::Edge(path) => q(path),
    };
    for elim in spine {
        term = Rc::new(match elim {
            Elim::App(arg) => Term::App(term, q(arg)),
            Elim::Fst => Term::Fst(term),
            Elim::Snd => Term::Snd(term),
            Elim::J(m, d) => Term::J(q(m), q(d), term),
            Elim::NatInd(m, z, s) => Term::NatInd(q(m), q(z), q(s), term),
            Elim::BoolInd(m, t, f) => Term::BoolInd(q(m), q(t), q(f), term),
            Elim::Abort(m) => Term::Abort(q(m), term),
            Elim::UnitInd(m, s) => Term::UnitInd(q(m), q(s), term),
            Elim::Gind(m, p, e) => Term::Gind(q(m), q(p), q(e), term),
        });
    }
    term
}

/// Evaluate a term in the identity environment and read it back.
pub fn normalize(globals: &dyn Globals, depth: usize, term: &Term) -> RcTerm {
    let value = eval(globals, &Env::identity(depth), term);
    quote(globals, depth, &value)
}
