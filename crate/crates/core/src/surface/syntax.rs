use std::fmt;

use crate::syntax::Level;

/// Byte range into a source file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }

    pub fn merge(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }

    pub fn contains(self, other: Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Built-in constants and eliminators. Each takes a fixed number of explicit
/// arguments and must appear fully applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Prim {
    Fst,
    Snd,
    Id,
    Refl,
    J,
    Nat,
    Zero,
    Succ,
    NatInd,
    Bool,
    True,
    False,
    BoolInd,
    Empty,
    Abort,
    Unit,
    Star,
    UnitInd,
    GQuot,
    Gpt,
    Gedg,
    Gind,
}

impl Prim {
    pub const ALL: [Prim; 22] = [
        Prim::Fst,
        Prim::Snd,
        Prim::Id,
        Prim::Refl,
        Prim::J,
        Prim::Nat,
        Prim::Zero,
        Prim::Succ,
        Prim::NatInd,
        Prim::Bool,
        Prim::True,
        Prim::False,
        Prim::BoolInd,
        Prim::Empty,
        Prim::Abort,
        Prim::Unit,
        Prim::Star,
        Prim::UnitInd,
        Prim::GQuot,
        Prim::Gpt,
        Prim::Gedg,
        Prim::Gind,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            Prim::Fst => "fst",
            Prim::Snd => "snd",
            Prim::Id => "Id",
            Prim::Refl => "refl",
            Prim::J => "J",
            Prim::Nat => "Nat",
            Prim::Zero => "zero",
            Prim::Succ => "succ",
            Prim::NatInd => "natind",
            Prim::Bool => "Bool",
            Prim::True => "true",
            Prim::False => "false",
            Prim::BoolInd => "boolind",
            Prim::Empty => "Empty",
            Prim::Abort => "abort",
            Prim::Unit => "Unit",
            Prim::Star => "star",
            Prim::UnitInd => "unitind",
            Prim::GQuot => "GQuot",
            Prim::Gpt => "gpt",
            Prim::Gedg => "gedg",
            Prim::Gind => "gind",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Prim::Refl
            | Prim::Nat
            | Prim::Zero
            | Prim::Bool
            | Prim::True
            | Prim::False
            | Prim::Empty
            | Prim::Unit
            | Prim::Star => 0,
            Prim::Fst | Prim::Snd | Prim::Succ => 1,
            Prim::Abort | Prim::GQuot => 2,
            Prim::Id | Prim::J | Prim::UnitInd | Prim::Gpt => 3,
            Prim::NatInd | Prim::BoolInd | Prim::Gind => 4,
            Prim::Gedg => 5,
        }
    }

    pub fn from_keyword(word: &str) -> Option<Prim> {
        Prim::ALL.into_iter().find(|p| p.keyword() == word)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceTerm {
    pub kind: TermKind,
    pub span: Span,
}

/// A group of binders sharing one type: `(x y : A)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Binder {
    pub names: Vec<String>,
    pub ty: SurfaceTerm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LamBinder {
    pub name: String,
    pub ty: Option<SurfaceTerm>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TermKind {
    Var(String),
    Univ(Level),
    Pi(Vec<Binder>, Box<SurfaceTerm>),
    Arrow(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Lam(Vec<LamBinder>, Box<SurfaceTerm>),
    Sigma(Vec<Binder>, Box<SurfaceTerm>),
    Product(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Pair(Box<SurfaceTerm>, Box<SurfaceTerm>),
    App(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Prim(Prim, Vec<SurfaceTerm>),
    Let {
        name: String,
        ty: Option<Box<SurfaceTerm>>,
        value: Box<SurfaceTerm>,
        body: Box<SurfaceTerm>,
    },
    Ann(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Hole,
}

impl SurfaceTerm {
    pub fn new(kind: TermKind, span: Span) -> SurfaceTerm {
        SurfaceTerm { kind, span }
    }

    /// Immediate subterms, in source order.
    pub fn children(&self) -> Vec<&SurfaceTerm> {
        match &self.kind {
            TermKind::Var(_) | TermKind::Univ(_) | TermKind::Hole => vec![],
            TermKind::Pi(binders, body) | TermKind::Sigma(binders, body) => binders
                .iter()
                .map(|b| &b.ty)
                .chain(std::iter::once(body.as_ref()))
                .collect(),
            TermKind::Lam(binders, body) => binders
                .iter()
                .filter_map(|b| b.ty.as_ref())
                .chain(std::iter::once(body.as_ref()))
                .collect(),
            TermKind::Arrow(a, b)
            | TermKind::Product(a, b)
            | TermKind::Pair(a, b)
            | TermKind::App(a, b)
            | TermKind::Ann(a, b) => vec![a, b],
            TermKind::Prim(_, args) => args.iter().collect(),
            TermKind::Let {
                ty, value, body, ..
            } => ty
                .iter()
                .map(|t| t.as_ref())
                .chain([value.as_ref(), body.as_ref()])
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Define,
    Postulate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tier {
    A,
    B,
    C,
}

impl Tier {
    pub fn from_letter(letter: &str) -> Option<Tier> {
        match letter {
            "A" => Some(Tier::A),
            "B" => Some(Tier::B),
            "C" => Some(Tier::C),
            _ => None,
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self {
            Tier::A => "A",
            Tier::B => "B",
            Tier::C => "C",
        };
        f.write_str(letter)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceDecl {
    pub kind: DeclKind,
    pub name: String,
    pub name_span: Span,
    pub params: Vec<Binder>,
    pub ty: SurfaceTerm,
    pub body: Option<SurfaceTerm>,
    pub tier: Option<Tier>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Import {
    pub name: String,
    pub span: Span,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SurfaceModule {
    pub imports: Vec<Import>,
    pub decls: Vec<SurfaceDecl>,
}
