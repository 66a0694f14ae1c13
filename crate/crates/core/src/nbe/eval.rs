use std::rc::Rc;

use super::value::*;
use crate::syntax::{RcTerm, Term};

/// Access to the bodies of defined globals. Postulates return `None` and stay
/// neutral.
pub trait Globals {
    fn unfold(&self, name: &str) -> Option<RcValue>;
}

/// No globals at all; every reference is treated as a postulate.
pub struct NoGlobals;

impl Globals for NoGlobals {
    fn unfold(&self, _: &str) -> Option<RcValue> {
        None
    }
}

#[cfg(debug_assertions)]
mod steps {
    use std::cell::Cell;

    /// Generous bound; hitting it means the kernel evaluated an unchecked term.
    const LIMIT: u64 = 2_000_000_000;

    thread_local!(static STEPS: Cell<u64> = const { Cell::new(0) });

    pub fn tick() {
        STEPS.with(|s| {
            let n = s.get() + 1;
            assert!(n < LIMIT, "evaluation step limit exceeded");
            s.set(n);
        });
    }

    pub fn reset() {
        STEPS.with(|s| s.set(0));
    }
}

/// Reset the debug-build evaluation step counter.
pub fn reset_step_counter() {
    #[cfg(debug_assertions)]
    steps::reset();
}

pub fn eval(globals: &dyn Globals, env: &Env, term: &Term) -> RcValue {
    #[cfg(debug_assertions)]
    steps::tick();
    let ev = |t: &RcTerm| eval(globals, env, t);
    let closure = |body: &RcTerm| Closure {
        env: env.clone(),
        body: body.clone(),
    };
    let value = match term {
        Term::Var(i) => {
            return env
                .lookup(*i)
                .unwrap_or_else(|| panic!("index {i} out of scope at depth {}", env.len()))
                .clone()
        }
        Term::Global(name) => {
            return globals
                .unfold(name)
                .unwrap_or_else(|| Value::postulate(name.clone()))
        }
        Term::Loc(_, inner) | Term::Ann(inner, _) => return ev(inner),
        Term::Let(_, _, value, body) => {
            let value = ev(value);
            return eval(globals, &env.extend(value), body);
        }
        Term::App(f, a) => return apply(globals, &ev(f), ev(a)),
        Term::Fst(p) => return fst(&ev(p)),
        Term::Snd(p) => return snd(&ev(p)),
        Term::J(motive, base, path) => return do_j(globals, ev(motive), ev(base), &ev(path)),
        Term::NatInd(motive, zero, succ, n) => {
            return natind(globals, ev(motive), ev(zero), ev(succ), &ev(n))
        }
        Term::BoolInd(motive, t, f, b) => return boolind(ev(motive), ev(t), ev(f), &ev(b)),
        Term::Abort(motive, e) => return abort(ev(motive), &ev(e)),
        Term::UnitInd(motive, s, u) => return unitind(ev(motive), ev(s), &ev(u)),
        Term::Gind(motive, point, edge, x) => {
            return gind(globals, ev(motive), ev(point), ev(edge), &ev(x))
        }

        Term::Univ(level) => Value::Univ(*level),
        Term::Pi(name, a, b) => Value::Pi(name.clone(), ev(a), closure(b)),
        Term::Lam(name, _, body) => Value::Lam(name.clone(), closure(body)),
        Term::Sigma(name, a, b) => Value::Sigma(name.clone(), ev(a), closure(b)),
        Term::Pair(a, b) => Value::Pair(ev(a), ev(b)),
        Term::Id(a, x, y) => Value::Id(ev(a), ev(x), ev(y)),
        Term::Refl => Value::Refl,
        Term::Nat => Value::Nat,
        Term::Zero => Value::Zero,
        Term::Succ(n) => Value::Succ(ev(n)),
        Term::Bool => Value::Bool,
        Term::True => Value::True,
        Term::False => Value::False,
        Term::Empty => Value::Empty,
        Term::Unit => Value::Unit,
        Term::Star => Value::Star,
        Term::GQuot(v, e) => Value::GQuot(ev(v), ev(e)),
        Term::Gpt(v, e, x) => Value::Gpt(ev(v), ev(e), ev(x)),
        Term::Gedg(v, e, i, j, r) => Value::Gedg(ev(v), ev(e), ev(i), ev(j), ev(r)),
        // The kernel rejects holes before evaluating; keep them inert.
        Term::Hole => return Value::postulate("?".into()),
    };
    Rc::new(value)
}

impl Closure {
    pub fn apply(&self, globals: &dyn Globals, arg: RcValue) -> RcValue {
        eval(globals, &self.env.extend(arg), &self.body)
    }
}

fn push(head: &Head, spine: &[Elim], elim: Elim) -> RcValue {
    let mut spine = spine.to_vec();
    spine.push(elim);
    Rc::new(Value::Neutral(head.clone(), spine))
}

pub fn apply(globals: &dyn Globals, fun: &RcValue, arg: RcValue) -> RcValue {
    match fun.as_ref() {
        Value::Lam(_, body) => body.apply(globals, arg),
        Value::Neutral(head, spine) => push(head, spine, Elim::App(arg)),
        other => panic!("applying a non-function value: {other:?}"),
    }
}

pub fn apply_all(
    globals: &dyn Globals,
    fun: &RcValue,
    args: impl IntoIterator<Item = RcValue>,
) -> RcValue {
    args.into_iter()
        .fold(fun.clone(), |f, a| apply(globals, &f, a))
}

pub fn fst(pair: &RcValue) -> RcValue {
    match pair.as_ref() {
        Value::Pair(a, _) => a.clone(),
        Value::Neutral(head, spine) => push(head, spine, Elim::Fst),
        other => panic!("first projection of a non-pair value: {other:?}"),
    }
}

pub fn snd(pair: &RcValue) -> RcValue {
    match pair.as_ref() {
        Value::Pair(_, b) => b.clone(),
        Value::Neutral(head, spine) => push(head, spine, Elim::Snd),
        other => panic!("second projection of a non-pair value: {other:?}"),
    }
}

pub fn do_j(_globals: &dyn Globals, motive: RcValue, base: RcValue, path: &RcValue) -> RcValue {
    match path.as_ref() {
        Value::Refl => base,
        Value::Neutral(head, spine) => push(head, spine, Elim::J(motive, base)),
        // A `gedg` path is canonical but not reflexivity, so `J` is stuck on it.
        Value::Gedg(..) => Rc::new(Value::Neutral(
            Head::Edge(path.clone()),
            vec![Elim::J(motive, base)],
        )),
        other => panic!("J on a non-path value: {other:?}"),
    }
}

pub fn natind(
    globals: &dyn Globals,
    motive: RcValue,
    zero: RcValue,
    succ: RcValue,
    n: &RcValue,
) -> RcValue {
    match n.as_ref() {
        Value::Zero => zero,
        Value::Succ(pred) => {
            let rec = natind(globals, motive, zero, succ.clone(), pred);
            apply_all(globals, &succ, [pred.clone(), rec])
        }
        Value::Neutral(head, spine) => push(head, spine, Elim::NatInd(motive, zero, succ)),
        other => panic!("natind on a non-numeral value: {other:?}"),
    }
}

pub fn boolind(motive: RcValue, t: RcValue, f: RcValue, b: &RcValue) -> RcValue {
    match b.as_ref() {
        Value::True => t,
        Value::False => f,
        Value::Neutral(head, spine) => push(head, spine, Elim::BoolInd(motive, t, f)),
        other => panic!("boolind on a non-boolean value: {other:?}"),
    }
}

pub fn abort(motive: RcValue, e: &RcValue) -> RcValue {
    match e.as_ref() {
        Value::Neutral(head, spine) => push(head, spine, Elim::Abort(motive)),
        other => panic!("abort on a non-neutral value: {other:?}"),
    }
}

pub fn unitind(motive: RcValue, s: RcValue, u: &RcValue) -> RcValue {
    match u.as_ref() {
        Value::Star => s,
        Value::Neutral(head, spine) => push(head, spine, Elim::UnitInd(motive, s)),
        other => panic!("unitind on a non-unit value: {other:?}"),
    }
}

/// Graph-quotient induction. The point rule `gind P p e (gpt v) ≡ p v` is
/// definitional; edges have no definitional rule.
pub fn gind(
    globals: &dyn Globals,
    motive: RcValue,
    point: RcValue,
    edge: RcValue,
    x: &RcValue,
) -> RcValue {
    match x.as_ref() {
        Value::Gpt(_, _, v) => apply(globals, &point, v.clone()),
        Value::Neutral(head, spine) => push(head, spine, Elim::Gind(motive, point, edge)),
        other => panic!("gind on a non-quotient value: {other:?}"),
    }
}

/// Apply an elimination to a value.
pub fn eliminate(globals: &dyn Globals, value: &RcValue, elim: &Elim) -> RcValue {
    match elim {
        Elim::App(arg) => apply(globals, value, arg.clone()),
        Elim::Fst => fst(value),
        Elim::Snd => snd(value),
        Elim::J(m, d) => do_j(globals, m.clone(), d.clone(), value),
        Elim::NatInd(m, z, s) => natind(globals, m.clone(), z.clone(), s.clone(), value),
        Elim::BoolInd(m, t, f) => boolind(m.clone(), t.clone(), f.clone(), value),
        Elim::Abort(m) => abort(m.clone(), value),
        Elim::UnitInd(m, s) => unitind(m.clone(), s.clone(), value),
        Elim::Gind(m, p, e) => gind(globals, m.clone(), p.clone(), e.clone(), value),
    }
}
