//! Closed Nat terms: a generator of well-typed terms and an independent
//! normalizer by capture-avoiding substitution on de Bruijn terms.

#![allow(dead_code)]

use std::rc::Rc;

use joinlang::kernel::{Checker, Context, GlobalTable};
use joinlang::nbe::{eval, normalize, Env, NoGlobals};
use joinlang::surface::Span;
use joinlang::syntax::{alpha_eq, RcTerm, Term};

/// Shift free variables at or above `cutoff` by `by`.
pub fn shift(t: &Term, by: isize, cutoff: usize) -> Term {
    let s = |u: &RcTerm, c: usize| Rc::new(shift(u, by, c));
    match t {
        Term::Var(i) if *i >= cutoff => Term::Var((*i as isize + by) as usize),
        Term::Var(i) => Term::Var(*i),
        Term::Zero => Term::Zero,
        Term::Nat => Term::Nat,
        Term::Succ(n) => Term::Succ(s(n, cutoff)),
        Term::Lam(x, ann, b) => Term::Lam(x.clone(), ann.clone(), s(b, cutoff + 1)),
        Term::App(f, a) => Term::App(s(f, cutoff), s(a, cutoff)),
        Term::NatInd(p, z, st, n) => {
            Term::NatInd(s(p, cutoff), s(z, cutoff), s(st, cutoff), s(n, cutoff))
        }
        other => panic!("oracle: unexpected {other:?}"),
    }
}

/// Replace variable `j` with `with`.
fn subst(t: &Term, j: usize, with: &Term) -> Term {
    let s = |u: &RcTerm, j: usize, w: &Term| Rc::new(subst(u, j, w));
    match t {
        Term::Var(i) if *i == j => with.clone(),
        Term::Var(i) => Term::Var(*i),
        Term::Zero => Term::Zero,
        Term::Nat => Term::Nat,
        Term::Succ(n) => Term::Succ(s(n, j, with)),
        Term::Lam(x, ann, b) => Term::Lam(x.clone(), ann.clone(), s(b, j + 1, &shift(with, 1, 0))),
        Term::App(f, a) => Term::App(s(f, j, with), s(a, j, with)),
        Term::NatInd(p, z, st, n) => {
            Term::NatInd(s(p, j, with), s(z, j, with), s(st, j, with), s(n, j, with))
        }
        other => panic!("oracle: unexpected {other:?}"),
    }
}

fn beta(body: &Term, arg: &Term) -> Term {
    shift(&subst(body, 0, &shift(arg, 1, 0)), -1, 0)
}

pub struct Oracle {
    pub fuel: u64,
}

impl Oracle {
    pub fn norm(&mut self, t: &Term) -> Option<Term> {
        self.fuel = self.fuel.checked_sub(1)?;
        Some(match t {
            Term::Var(_) | Term::Zero | Term::Nat => t.clone(),
            Term::Succ(n) => Term::Succ(Rc::new(self.norm(n)?)),
            Term::Lam(x, _, b) => Term::Lam(x.clone(), None, Rc::new(self.norm(b)?)),
            Term::App(f, a) => {
                let f = self.norm(f)?;
                let a = self.norm(a)?;
                match f {
                    Term::Lam(_, _, body) => self.norm(&beta(&body, &a))?,
                    f => Term::App(Rc::new(f), Rc::new(a)),
                }
            }
            Term::NatInd(p, z, s, n) => match self.norm(n)? {
                Term::Zero => self.norm(z)?,
                Term::Succ(m) => {
                    let rec = Term::NatInd(p.clone(), z.clone(), s.clone(), m.clone());
                    let step = Term::App(Rc::new(Term::App(s.clone(), m)), Rc::new(rec));
                    self.norm(&step)?
                }
                n => Term::NatInd(
                    Rc::new(self.norm(p)?),
                    Rc::new(self.norm(z)?),
                    Rc::new(self.norm(s)?),
                    Rc::new(n),
                ),
            },
            other => panic!("oracle: unexpected {other:?}"),
        })
    }
}

// ---- generator -------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub enum Ty {
    Nat,
    Arr(Box<Ty>, Box<Ty>),
}

impl Ty {
    pub fn arr(a: Ty, b: Ty) -> Ty {
        Ty::Arr(Box::new(a), Box::new(b))
    }

    pub fn to_term(&self) -> RcTerm {
        match self {
            Ty::Nat => Rc::new(Term::Nat),
            Ty::Arr(a, b) => Rc::new(Term::Pi("_".into(), a.to_term(), b.to_term())),
        }
    }
}

/// Decodes a choice sequence into a well-typed term; running out of choices
/// always selects the smallest option, so every sequence decodes.
struct Gen<'a> {
    choices: &'a [u8],
    pos: usize,
}

impl Gen<'_> {
    fn pick(&mut self, n: usize) -> usize {
        let c = self.choices.get(self.pos).copied().unwrap_or(0);
        self.pos += 1;
        c as usize % n
    }

    fn var(&mut self, ty: &Ty, ctx: &[Ty]) -> Option<RcTerm> {
        let candidates: Vec<usize> = (0..ctx.len())
            .filter(|&i| ctx[ctx.len() - 1 - i] == *ty)
            .collect();
        if candidates.is_empty() {
            return None;
        }
        let i = candidates[self.pick(candidates.len())];
        Some(Rc::new(Term::Var(i)))
    }

    fn term(&mut self, ty: &Ty, ctx: &mut Vec<Ty>, depth: usize) -> RcTerm {
        match ty {
            Ty::Arr(a, b) => {
                if depth > 0 && self.pick(4) == 3 {
                    if let Some(v) = self.var(ty, ctx) {
                        return v;
                    }
                }
                ctx.push((**a).clone());
                let body = self.term(b, ctx, depth.saturating_sub(1));
                ctx.pop();
                Rc::new(Term::Lam(["x", "y", "z"][self.pick(3)].into(), None, body))
            }
            Ty::Nat if depth == 0 => match self.pick(2) {
                1 => self.var(ty, ctx).unwrap_or_else(|| Rc::new(Term::Zero)),
                _ => Rc::new(Term::Zero),
            },
            Ty::Nat => match self.pick(6) {
                0 => Rc::new(Term::Zero),
                1 => self.var(ty, ctx).unwrap_or_else(|| Rc::new(Term::Zero)),
                2 => Rc::new(Term::Succ(self.term(ty, ctx, depth - 1))),
                3 | 4 => {
                    let arg_ty = if self.pick(3) == 0 {
                        Ty::arr(Ty::Nat, Ty::Nat)
                    } else {
                        Ty::Nat
                    };
                    let fun_ty = Ty::arr(arg_ty.clone(), Ty::Nat);
                    let f = self.term(&fun_ty, ctx, depth - 1);
                    // A lambda in head position needs an annotation to be inferable.
                    let f = match f.as_ref() {
                        Term::Lam(..) => Rc::new(Term::Ann(f, fun_ty.to_term())),
                        _ => f,
                    };
                    let a = self.term(&arg_ty, ctx, depth - 1);
                    Rc::new(Term::App(f, a))
                }
                _ => {
                    let motive = Rc::new(Term::Lam("_".into(), None, Rc::new(Term::Nat)));
                    let z = self.term(ty, ctx, depth - 1);
                    ctx.push(Ty::Nat);
                    ctx.push(Ty::Nat);
                    let s = self.term(ty, ctx, depth - 1);
                    ctx.pop();
                    ctx.pop();
                    let s = Rc::new(Term::Lam(
                        "k".into(),
                        None,
                        Rc::new(Term::Lam("r".into(), None, s)),
                    ));
                    let n = self.term(ty, ctx, depth - 1);
                    Rc::new(Term::NatInd(motive, z, s, n))
                }
            },
        }
    }
}

pub fn decode(choices: &[u8], ty: &Ty) -> RcTerm {
    Gen { choices, pos: 0 }.term(ty, &mut Vec::new(), 7)
}

pub fn well_typed(term: &RcTerm, ty: &Ty) -> bool {
    let table = GlobalTable::new();
    let ty_value = eval(&table, &Env::new(), &ty.to_term());
    Checker::new(&table, Span::default())
        .check(&Context::new(), term, &ty_value)
        .is_ok()
}

pub const FUEL: u64 = 200_000;

/// Outcome of comparing NbE with the oracle on one generated term.
pub enum Agreement {
    Agreed,
    OutOfFuel,
}

/// Decodes `choices` into a term of type `ty` and compares both normalizers.
pub fn compare(choices: &[u8], ty: &Ty) -> Result<Agreement, String> {
    let term = decode(choices, ty);
    if !well_typed(&term, ty) {
        return Err(format!("generator produced ill-typed {term:?}"));
    }
    let Some(expected) = (Oracle { fuel: FUEL }).norm(&term.strip()) else {
        return Ok(Agreement::OutOfFuel);
    };
    let actual = normalize(&NoGlobals, 0, &term);
    if alpha_eq(&actual, &expected) {
        Ok(Agreement::Agreed)
    } else {
        Err(format!("nbe {actual:?}\noracle {expected:?}"))
    }
}
