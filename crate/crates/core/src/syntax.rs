//! Core terms with de Bruijn indices.
//!
//! Local variables are indices counting binders outward; globals are referred
//! to by name and live in the declaration table. Binder names are kept only as
//! printing hints and are ignored by [`alpha_eq`].

use std::fmt;
use std::rc::Rc;

use crate::surface::Span;

pub type RcTerm = Rc<Term>;

/// A name hint for a binder, or a global name.
pub type Name = Rc<str>;

/// Universe level. Only `U0`, `U1` and `U2` exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(u8);

impl Level {
    pub const ZERO: Level = Level(0);
    pub const ONE: Level = Level(1);
    pub const TWO: Level = Level(2);
    pub const MAX: Level = Level::TWO;

    pub fn new(value: u8) -> Option<Level> {
        (value <= 2).then_some(Level(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// The level of the universe that `U_self` inhabits, if there is one.
    pub fn succ(self) -> Option<Level> {
        Level::new(self.0 + 1)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Term {
    Var(usize),
    Global(Name),
    Univ(Level),

    Pi(Name, RcTerm, RcTerm),
    /// Lambda with an optional domain annotation.
    Lam(Name, Option<RcTerm>, RcTerm),
    App(RcTerm, RcTerm),

    Sigma(Name, RcTerm, RcTerm),
    Pair(RcTerm, RcTerm),
    Fst(RcTerm),
    Snd(RcTerm),

    Id(RcTerm, RcTerm, RcTerm),
    Refl,
    /// `J P d p` with `p : Id A a b`, `P : Π(y : A). Id A a y → U`, `d : P a refl`.
    J(RcTerm, RcTerm, RcTerm),

    Nat,
    Zero,
    Succ(RcTerm),
    /// `natind P z s n`
    NatInd(RcTerm, RcTerm, RcTerm, RcTerm),

    Bool,
    True,
    False,
    /// `boolind P t f b`
    BoolInd(RcTerm, RcTerm, RcTerm, RcTerm),

    Empty,
    /// `abort P e`
    Abort(RcTerm, RcTerm),

    Unit,
    Star,
    /// `unitind P s u`
    UnitInd(RcTerm, RcTerm, RcTerm),

    /// `GQuot V E`
    GQuot(RcTerm, RcTerm),
    /// `gpt V E v`
    Gpt(RcTerm, RcTerm, RcTerm),
    /// `gedg V E i j r`
    Gedg(RcTerm, RcTerm, RcTerm, RcTerm, RcTerm),
    /// `gind P p e x`
    Gind(RcTerm, RcTerm, RcTerm, RcTerm),

    Let(Name, Option<RcTerm>, RcTerm, RcTerm),
    Ann(RcTerm, RcTerm),
    Hole,
    /// Source location of the wrapped term. Only produced by resolution.
    Loc(Span, RcTerm),
}

impl Term {
    pub fn var(index: usize) -> RcTerm {
        Rc::new(Term::Var(index))
    }

    pub fn global(name: &str) -> RcTerm {
        Rc::new(Term::Global(name.into()))
    }

    pub fn app(fun: RcTerm, arg: RcTerm) -> RcTerm {
        Rc::new(Term::App(fun, arg))
    }

    pub fn apps(fun: RcTerm, args: impl IntoIterator<Item = RcTerm>) -> RcTerm {
        args.into_iter().fold(fun, Term::app)
    }

    pub fn lam(name: &str, body: RcTerm) -> RcTerm {
        Rc::new(Term::Lam(name.into(), None, body))
    }

    pub fn pi(name: &str, domain: RcTerm, codomain: RcTerm) -> RcTerm {
        Rc::new(Term::Pi(name.into(), domain, codomain))
    }

    /// The numeral `succ^n zero`.
    pub fn numeral(n: u64) -> RcTerm {
        (0..n).fold(Rc::new(Term::Zero), |t, _| Rc::new(Term::Succ(t)))
    }

    /// Remove location wrappers and type annotations.
    pub fn strip(self: &Rc<Self>) -> RcTerm {
        map_children(self, &mut |t, _| match t.as_ref() {
            Term::Loc(_, inner) | Term::Ann(inner, _) => Some(inner.strip()),
            _ => None,
        })
    }

    /// Remove location wrappers only.
    pub fn strip_locs(self: &Rc<Self>) -> RcTerm {
        map_children(self, &mut |t, _| match t.as_ref() {
            Term::Loc(_, inner) => Some(inner.strip_locs()),
            _ => None,
        })
    }

    /// Visit every global name referenced by this term.
    pub fn for_each_global(&self, f: &mut impl FnMut(&Name)) {
        if let Term::Global(name) = self {
            f(name);
        }
        for child in self.children() {
            child.for_each_global(f);
        }
    }

    /// Number of binders each immediate child sits under, paired with the child.
    pub fn children_with_binders(&self) -> Vec<(&RcTerm, usize)> {
        use Term::*;
        match self {
            Var(_) | Global(_) | Univ(_) | Refl | Nat | Zero | Bool | True | False | Empty
            | Unit | Star | Hole => vec![],
            Pi(_, a, b) | Sigma(_, a, b) => vec![(a, 0), (b, 1)],
            Lam(_, ann, body) => {
                let mut out: Vec<_> = ann.iter().map(|a| (a, 0)).collect();
                out.push((body, 1));
                out
            }
            Let(_, ann, val, body) => {
                let mut out: Vec<_> = ann.iter().map(|a| (a, 0)).collect();
                out.push((val, 0));
                out.push((body, 1));
                out
            }
            App(a, b) | Pair(a, b) | Abort(a, b) | GQuot(a, b) | Ann(a, b) => {
                vec![(a, 0), (b, 0)]
            }
            Fst(a) | Snd(a) | Succ(a) | Loc(_, a) => vec![(a, 0)],
            Id(a, b, c) | J(a, b, c) | UnitInd(a, b, c) | Gpt(a, b, c) => {
                vec![(a, 0), (b, 0), (c, 0)]
            }
            NatInd(a, b, c, d) | BoolInd(a, b, c, d) | Gind(a, b, c, d) => {
                vec![(a, 0), (b, 0), (c, 0), (d, 0)]
            }
            Gedg(a, b, c, d, e) => vec![(a, 0), (b, 0), (c, 0), (d, 0), (e, 0)],
        }
    }

    pub fn children(&self) -> impl Iterator<Item = &RcTerm> {
        self.children_with_binders().into_iter().map(|(t, _)| t)
    }

    /// True when every index is below `depth` (the number of enclosing binders).
    pub fn is_closed_under(&self, depth: usize) -> bool {
        match self {
            Term::Var(i) => *i < depth,
            _ => self
                .children_with_binders()
                .into_iter()
                .all(|(child, binders)| child.is_closed_under(depth + binders)),
        }
    }

    /// Number of nodes, excluding location wrappers.
    pub fn size(&self) -> usize {
        let own = usize::from(!matches!(self, Term::Loc(..)));
        own + self.children().map(|c| c.size()).sum::<usize>()
    }
}

/// Rebuild `term`, letting `f` replace any node (given the number of binders
/// passed so far). Nodes for which `f` returns `None` are rebuilt from their
/// recursively mapped children.
pub fn map_children(term: &RcTerm, f: &mut impl FnMut(&RcTerm, usize) -> Option<RcTerm>) -> RcTerm {
    map_at(term, 0, f)
}

fn map_at(
    term: &RcTerm,
    depth: usize,
    f: &mut impl FnMut(&RcTerm, usize) -> Option<RcTerm>,
) -> RcTerm {
    if let Some(replaced) = f(term, depth) {
        return replaced;
    }
    use Term::*;
    let mut go = |t: &RcTerm, binders: usize| map_at(t, depth + binders, f);
    let rebuilt = match term.as_ref() {
        Var(_) | Global(_) | Univ(_) | Refl | Nat | Zero | Bool | True | False | Empty | Unit
        | Star | Hole => return term.clone(),
        Pi(x, a, b) => Pi(x.clone(), go(a, 0), go(b, 1)),
        Sigma(x, a, b) => Sigma(x.clone(), go(a, 0), go(b, 1)),
        Lam(x, ann, body) => {
            let ann = ann.as_ref().map(|a| go(a, 0));
            Lam(x.clone(), ann, go(body, 1))
        }
        Let(x, ann, val, body) => {
            let ann = ann.as_ref().map(|a| go(a, 0));
            let val = go(val, 0);
            Let(x.clone(), ann, val, go(body, 1))
        }
        App(a, b) => App(go(a, 0), go(b, 0)),
        Pair(a, b) => Pair(go(a, 0), go(b, 0)),
        Abort(a, b) => Abort(go(a, 0), go(b, 0)),
        GQuot(a, b) => GQuot(go(a, 0), go(b, 0)),
        Ann(a, b) => Ann(go(a, 0), go(b, 0)),
        Fst(a) => Fst(go(a, 0)),
        Snd(a) => Snd(go(a, 0)),
        Succ(a) => Succ(go(a, 0)),
        Loc(span, a) => Loc(*span, go(a, 0)),
        Id(a, b, c) => Id(go(a, 0), go(b, 0), go(c, 0)),
        J(a, b, c) => J(go(a, 0), go(b, 0), go(c, 0)),
        UnitInd(a, b, c) => UnitInd(go(a, 0), go(b, 0), go(c, 0)),
        Gpt(a, b, c) => Gpt(go(a, 0), go(b, 0), go(c, 0)),
        NatInd(a, b, c, d) => NatInd(go(a, 0), go(b, 0), go(c, 0), go(d, 0)),
        BoolInd(a, b, c, d) => BoolInd(go(a, 0), go(b, 0), go(c, 0), go(d, 0)),
        Gind(a, b, c, d) => Gind(go(a, 0), go(b, 0), go(c, 0), go(d, 0)),
        Gedg(a, b, c, d, e) => Gedg(go(a, 0), go(b, 0), go(c, 0), go(d, 0), go(e, 0)),
    };
    Rc::new(rebuilt)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("index {index} shifted by {amount} would become negative")]
pub struct ShiftUnderflow {
    pub index: usize,
    pub amount: isize,
}

/// Adjust every free index `>= cutoff` by `amount`.
pub fn shift_free(term: &RcTerm, cutoff: usize, amount: isize) -> Result<RcTerm, ShiftUnderflow> {
    let mut failure = None;
    let shifted = map_children(term, &mut |t, depth| match t.as_ref() {
        Term::Var(i) if *i >= cutoff + depth => {
            let moved = *i as isize + amount;
            if moved < 0 {
                failure.get_or_insert(ShiftUnderflow { index: *i, amount });
                Some(t.clone())
            } else {
                Some(Term::var(moved as usize))
            }
        }
        _ => None,
    });
    match failure {
        Some(err) => Err(err),
        None => Ok(shifted),
    }
}

/// Syntactic equality up to binder names, locations and lambda annotations.
pub fn alpha_eq(left: &Term, right: &Term) -> bool {
    use Term::*;
    match (left, right) {
        (Loc(_, l), _) => alpha_eq(l, right),
        (_, Loc(_, r)) => alpha_eq(left, r),
        (Var(i), Var(j)) => i == j,
        (Global(a), Global(b)) => a == b,
        (Univ(a), Univ(b)) => a == b,
        (Pi(_, a1, b1), Pi(_, a2, b2)) | (Sigma(_, a1, b1), Sigma(_, a2, b2)) => {
            alpha_eq(a1, a2) && alpha_eq(b1, b2)
        }
        (Lam(_, a1, b1), Lam(_, a2, b2)) => {
            let anns = match (a1, a2) {
                (Some(x), Some(y)) => alpha_eq(x, y),
                (None, None) => true,
                _ => false,
            };
            anns && alpha_eq(b1, b2)
        }
        (Let(_, a1, v1, b1), Let(_, a2, v2, b2)) => {
            let anns = match (a1, a2) {
                (Some(x), Some(y)) => alpha_eq(x, y),
                (None, None) => true,
                _ => false,
            };
            anns && alpha_eq(v1, v2) && alpha_eq(b1, b2)
        }
        _ => {
            if std::mem::discriminant(left) != std::mem::discriminant(right) {
                return false;
            }
            let (lc, rc): (Vec<_>, Vec<_>) =
                (left.children().collect(), right.children().collect());
            lc.len() == rc.len() && lc.iter().zip(rc).all(|(l, r)| alpha_eq(l, r))
        }
    }
}
