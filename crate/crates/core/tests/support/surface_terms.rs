//! Random surface terms over the whole syntax, decoded from choice
//! sequences, and the print/parse round trip they must survive.

#![allow(dead_code)]

use std::collections::HashSet;

use joinlang::resolve::resolve_term;
use joinlang::surface::{
    parse_term_source, print_core, print_term, tokenize, Binder, LamBinder, Prim, Span,
    SurfaceTerm, TermKind,
};
use joinlang::syntax::{alpha_eq, Level, RcTerm};

const GLOBALS: [&str; 3] = ["f", "g", "idfn"];
const NAMES: [&str; 6] = ["x", "y", "z", "f", "A", "_"];

struct Gen<'a> {
    choices: &'a [u8],
    pos: usize,
}

fn node(kind: TermKind) -> SurfaceTerm {
    SurfaceTerm::new(kind, Span::default())
}

impl Gen<'_> {
    fn pick(&mut self, n: usize) -> usize {
        let c = self.choices.get(self.pos).copied().unwrap_or(0);
        self.pos += 1;
        c as usize % n
    }

    fn name(&mut self) -> String {
        NAMES[self.pick(NAMES.len())].to_string()
    }

    fn leaf(&mut self, scope: &[String]) -> SurfaceTerm {
        let visible: Vec<&str> = scope
            .iter()
            .map(String::as_str)
            .filter(|n| *n != "_")
            .chain(GLOBALS)
            .collect();
        match self.pick(5) {
            0 | 1 => node(TermKind::Var(visible[self.pick(visible.len())].to_string())),
            2 => node(TermKind::Univ(Level::new(self.pick(3) as u8).unwrap())),
            3 => node(TermKind::Hole),
            _ => {
                let nullary: Vec<Prim> = Prim::ALL
                    .iter()
                    .copied()
                    .filter(|p| p.arity() == 0)
                    .collect();
                node(TermKind::Prim(nullary[self.pick(nullary.len())], vec![]))
            }
        }
    }

    fn binders(&mut self, scope: &mut Vec<String>, depth: usize) -> Vec<Binder> {
        let groups = 1 + self.pick(2);
        let mut out = Vec::new();
        for _ in 0..groups {
            let ty = self.term(scope, depth);
            let names: Vec<String> = (0..1 + self.pick(2)).map(|_| self.name()).collect();
            scope.extend(names.iter().cloned());
            out.push(Binder { names, ty });
        }
        out
    }

    fn term(&mut self, scope: &mut Vec<String>, depth: usize) -> SurfaceTerm {
        if depth == 0 {
            return self.leaf(scope);
        }
        let d = depth - 1;
        let mark = scope.len();
        let kind = match self.pick(12) {
            0 => return self.leaf(scope),
            1 => TermKind::App(Box::new(self.term(scope, d)), Box::new(self.term(scope, d))),
            2 => TermKind::Arrow(Box::new(self.term(scope, d)), Box::new(self.term(scope, d))),
            3 => TermKind::Product(Box::new(self.term(scope, d)), Box::new(self.term(scope, d))),
            4 => TermKind::Pair(Box::new(self.term(scope, d)), Box::new(self.term(scope, d))),
            5 => TermKind::Ann(Box::new(self.term(scope, d)), Box::new(self.term(scope, d))),
            6 => {
                let binders = self.binders(scope, d);
                TermKind::Pi(binders, Box::new(self.term(scope, d)))
            }
            7 => {
                let binders = self.binders(scope, d);
                TermKind::Sigma(binders, Box::new(self.term(scope, d)))
            }
            8 => {
                let mut binders = Vec::new();
                for _ in 0..1 + self.pick(3) {
                    let ty = (self.pick(2) == 0).then(|| self.term(scope, d));
                    let name = self.name();
                    scope.push(name.clone());
                    binders.push(LamBinder { name, ty });
                }
                TermKind::Lam(binders, Box::new(self.term(scope, d)))
            }
            9 => {
                let ty = (self.pick(2) == 0).then(|| Box::new(self.term(scope, d)));
                let value = Box::new(self.term(scope, d));
                let name = self.name();
                scope.push(name.clone());
                TermKind::Let {
                    name,
                    ty,
                    value,
                    body: Box::new(self.term(scope, d)),
                }
            }
            _ => {
                let prim = Prim::ALL[self.pick(Prim::ALL.len())];
                let args = (0..prim.arity()).map(|_| self.term(scope, d)).collect();
                TermKind::Prim(prim, args)
            }
        };
        scope.truncate(mark);
        node(kind)
    }
}

pub fn decode(choices: &[u8]) -> SurfaceTerm {
    Gen { choices, pos: 0 }.term(&mut Vec::new(), 5)
}

fn globals() -> HashSet<String> {
    GLOBALS.iter().map(|g| g.to_string()).collect()
}

pub fn resolve(t: &SurfaceTerm) -> RcTerm {
    resolve_term(&globals(), &[], t)
        .unwrap_or_else(|e| panic!("{e} in {}", print_term(t)))
        .strip_locs()
}

pub fn spans_nest(t: &SurfaceTerm) -> bool {
    t.span.start < t.span.end
        && t.children()
            .into_iter()
            .all(|c| t.span.start <= c.span.start && c.span.end <= t.span.end && spans_nest(c))
}

/// Prints the term decoded from `choices`, parses it back, and checks the
/// result is alpha-equivalent and prints identically.
pub fn surface_round_trip(choices: &[u8]) -> Result<(), String> {
    let term = decode(choices);
    let text = print_term(&term);
    if tokenize(&text).is_err() {
        return Err(format!("lexer rejected {text}"));
    }
    let reparsed = parse_term_source(&text).map_err(|e| format!("{e} in {text}"))?;
    if !spans_nest(&reparsed) {
        return Err(format!("spans do not nest in {text}"));
    }
    if !alpha_eq(&resolve(&term), &resolve(&reparsed)) {
        return Err(format!("round trip changed {text}"));
    }
    let again = print_term(&reparsed);
    if again != text {
        return Err(format!("printing is not stable: {text} became {again}"));
    }
    Ok(())
}

/// Same round trip starting from the resolved core term.
pub fn core_round_trip(choices: &[u8]) -> Result<(), String> {
    let core = resolve(&decode(choices));
    let text = print_core(&[], &core);
    let reparsed = parse_term_source(&text).map_err(|e| format!("{e} in {text}"))?;
    if alpha_eq(&core, &resolve(&reparsed)) {
        Ok(())
    } else {
        Err(format!("round trip changed {text}"))
    }
}
