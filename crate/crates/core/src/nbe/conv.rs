use std::rc::Rc;

use super::eval::{apply, fst, snd, Globals};
use super::value::*;

/// Definitional equality of two values in a context of `depth` variables.
/// Includes η for functions and pairs.
pub fn conv(globals: &dyn Globals, depth: usize, left: &RcValue, right: &RcValue) -> bool {
    use Value as V;
    if Rc::ptr_eq(left, right) {
        return true;
    }
    let c = |a: &RcValue, b: &RcValue| conv(globals, depth, a, b);
    let under = |a: &Closure, b: &Closure| {
        same_closure(globals, depth, a, b) || {
            let x = Value::var(depth);
            conv(
                globals,
                depth + 1,
                &a.apply(globals, x.clone()),
                &b.apply(globals, x),
            )
        }
    };
    match (left.as_ref(), right.as_ref()) {
        (V::Lam(_, a), V::Lam(_, b)) => under(a, b),
        (V::Lam(_, body), _) => {
            let x = Value::var(depth);
            conv(
                globals,
                depth + 1,
                &body.apply(globals, x.clone()),
                &apply(globals, right, x),
            )
        }
        (_, V::Lam(_, body)) => {
            let x = Value::var(depth);
            conv(
                globals,
                depth + 1,
                &apply(globals, left, x.clone()),
                &body.apply(globals, x),
            )
        }
        (V::Pair(a1, b1), V::Pair(a2, b2)) => c(a1, a2) && c(b1, b2),
        (V::Pair(a, b), V::Neutral(..)) => c(a, &fst(right)) && c(b, &snd(right)),
        (V::Neutral(..), V::Pair(a, b)) => c(&fst(left), a) && c(&snd(left), b),

        (V::Univ(i), V::Univ(j)) => i == j,
        (V::Pi(_, a1, b1), V::Pi(_, a2, b2)) | (V::Sigma(_, a1, b1), V::Sigma(_, a2, b2)) => {
            c(a1, a2) && under(b1, b2)
        }
        (V::Id(a1, x1, y1), V::Id(a2, x2, y2)) => c(a1, a2) && c(x1, x2) && c(y1, y2),
        (V::Refl, V::Refl)
        | (V::Nat, V::Nat)
        | (V::Zero, V::Zero)
        | (V::Bool, V::Bool)
        | (V::True, V::True)
        | (V::False, V::False)
        | (V::Empty, V::Empty)
        | (V::Unit, V::Unit)
        | (V::Star, V::Star) => true,
        (V::Succ(m), V::Succ(n)) => c(m, n),
        (V::GQuot(v1, e1), V::GQuot(v2, e2)) => c(v1, v2) && c(e1, e2),
        (V::Gpt(v1, e1, x1), V::Gpt(v2, e2, x2)) => c(v1, v2) && c(e1, e2) && c(x1, x2),
        (V::Gedg(v1, e1, i1, j1, r1), V::Gedg(v2, e2, i2, j2, r2)) => {
            c(v1, v2) && c(e1, e2) && c(i1, i2) && c(j1, j2) && c(r1, r2)
        }
        (V::Neutral(h1, s1), V::Neutral(h2, s2)) => {
            conv_head(globals, depth, h1, h2)
                && s1.len() == s2.len()
                && s1
                    .iter()
                    .zip(s2)
                    .all(|(e1, e2)| conv_elim(globals, depth, e1, e2))
        }
        _ => false,
    }
}

/// Closures over the same body in convertible environments are convertible.
/// A cheap sufficient check that avoids unfolding shared definitions twice.
fn same_closure(globals: &dyn Globals, depth: usize, a: &Closure, b: &Closure) -> bool {
    if !Rc::ptr_eq(&a.body, &b.body) || a.env.len() != b.env.len() {
        return false;
    }
    let (mut l, mut r) = (a.env.clone(), b.env.clone());
    loop {
        match (l.split(), r.split()) {
            (None, None) => return true,
            (Some((x, xs)), Some((y, ys))) => {
                if l.same_node(&r) {
                    return true;
                }
                if !conv(globals, depth, x, y) {
                    return false;
                }
                (l, r) = (xs.clone(), ys.clone());
            }
            _ => return false,
        }
    }
}

fn conv_head(globals: &dyn Globals, depth: usize, left: &Head, right: &Head) -> bool {
    match (left, right) {
        (Head::Var(a), Head::Var(b)) => a == b,
        (Head::Postulate(a), Head::Postulate(b)) => a == b,
        (Head::Edge(a), Head::Edge(b)) => conv(globals, depth, a, b),
        _ => false,
    }
}

fn conv_elim(globals: &dyn Globals, depth: usize, left: &Elim, right: &Elim) -> bool {
    let c = |a: &RcValue, b: &RcValue| conv(globals, depth, a, b);
    match (left, right) {
        (Elim::App(a), Elim::App(b)) => c(a, b),
        (Elim::Fst, Elim::Fst) | (Elim::Snd, Elim::Snd) => true,
        (Elim::J(m1, d1), Elim::J(m2, d2)) => c(m1, m2) && c(d1, d2),
        (Elim::NatInd(m1, z1, s1), Elim::NatInd(m2, z2, s2)) => c(m1, m2) && c(z1, z2) && c(s1, s2),
        (Elim::BoolInd(m1, t1, f1), Elim::BoolInd(m2, t2, f2)) => {
            c(m1, m2) && c(t1, t2) && c(f1, f2)
        }
        (Elim::Abort(m1), Elim::Abort(m2)) => c(m1, m2),
        (Elim::UnitInd(m1, s1), Elim::UnitInd(m2, s2)) => c(m1, m2) && c(s1, s2),
        (Elim::Gind(m1, p1, e1), Elim::Gind(m2, p2, e2)) => c(m1, m2) && c(p1, p2) && c(e1, e2),
        _ => false,
    }
}

/// Cumulative subtyping: `U_i ≤ U_j` when `i ≤ j`, extended covariantly through
/// Π codomains and componentwise through Σ. Everything else is conversion.
pub fn subtype(globals: &dyn Globals, depth: usize, sub: &RcValue, sup: &RcValue) -> bool {
    use Value as V;
    match (sub.as_ref(), sup.as_ref()) {
        (V::Univ(i), V::Univ(j)) => i <= j,
        (V::Pi(_, a1, b1), V::Pi(_, a2, b2)) => {
            let x = Value::var(depth);
            conv(globals, depth, a1, a2)
                && (same_closure(globals, depth, b1, b2)
                    || subtype(
                        globals,
                        depth + 1,
                        &b1.apply(globals, x.clone()),
                        &b2.apply(globals, x),
                    ))
        }
        (V::Sigma(_, a1, b1), V::Sigma(_, a2, b2)) => {
            let x = Value::var(depth);
            subtype(globals, depth, a1, a2)
                && (same_closure(globals, depth, b1, b2)
                    || subtype(
                        globals,
                        depth + 1,
                        &b1.apply(globals, x.clone()),
                        &b2.apply(globals, x),
                    ))
        }
        _ => conv(globals, depth, sub, sup),
    }
}
