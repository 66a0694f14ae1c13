use std::rc::Rc;

use crate::syntax::{Level, Name, RcTerm};

pub type RcValue = Rc<Value>;

/// Semantic values. Variables in neutrals are de Bruijn levels.
#[derive(Clone, Debug)]
pub enum Value {
    Univ(Level),
    Pi(Name, RcValue, Closure),
    Lam(Name, Closure),
    Sigma(Name, RcValue, Closure),
    Pair(RcValue, RcValue),
    Id(RcValue, RcValue, RcValue),
    Refl,
    Nat,
    Zero,
    Succ(RcValue),
    Bool,
    True,
    False,
    Empty,
    Unit,
    Star,
    GQuot(RcValue, RcValue),
    Gpt(RcValue, RcValue, RcValue),
    Gedg(RcValue, RcValue, RcValue, RcValue, RcValue),
    Neutral(Head, Vec<Elim>),
}

#[derive(Clone, Debug)]
pub enum Head {
    /// A bound variable, as a de Bruijn level.
    Var(usize),
    /// A postulated global; never unfolds.
    Postulate(Name),
    /// A `gedg` path that an eliminator is stuck on.
    Edge(RcValue),
}

/// One elimination in a neutral spine.
#[derive(Clone, Debug)]
pub enum Elim {
    App(RcValue),
    Fst,
    Snd,
    /// motive, base case
    J(RcValue, RcValue),
    NatInd(RcValue, RcValue, RcValue),
    BoolInd(RcValue, RcValue, RcValue),
    Abort(RcValue),
    UnitInd(RcValue, RcValue),
    /// motive, point method, edge method
    Gind(RcValue, RcValue, RcValue),
}

impl Value {
    pub fn var(level: usize) -> RcValue {
        Rc::new(Value::Neutral(Head::Var(level), Vec::new()))
    }

    pub fn postulate(name: Name) -> RcValue {
        Rc::new(Value::Neutral(Head::Postulate(name), Vec::new()))
    }

    pub fn univ(level: Level) -> RcValue {
        Rc::new(Value::Univ(level))
    }

    pub fn as_univ(&self) -> Option<Level> {
        match self {
            Value::Univ(level) => Some(*level),
            _ => None,
        }
    }
}

/// A term awaiting a value for its outermost bound variable.
#[derive(Clone, Debug)]
pub struct Closure {
    pub env: Env,
    pub body: RcTerm,
}

/// Values for the enclosing binders; index 0 is the innermost.
#[derive(Clone, Debug, Default)]
pub struct Env(Option<Rc<EnvNode>>);

#[derive(Debug)]
struct EnvNode {
    value: RcValue,
    len: usize,
    rest: Env,
}

impl Env {
    pub fn new() -> Env {
        Env(None)
    }

    pub fn len(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.len)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn extend(&self, value: RcValue) -> Env {
        Env(Some(Rc::new(EnvNode {
            value,
            len: self.len() + 1,
            rest: self.clone(),
        })))
    }

    pub fn lookup(&self, index: usize) -> Option<&RcValue> {
        let mut node = self.0.as_ref()?;
        for _ in 0..index {
            node = node.rest.0.as_ref()?;
        }
        Some(&node.value)
    }

    /// The innermost value and the rest, unless empty.
    pub fn split(&self) -> Option<(&RcValue, &Env)> {
        self.0.as_ref().map(|n| (&n.value, &n.rest))
    }

    /// Whether both environments share their innermost node.
    pub fn same_node(&self, other: &Env) -> bool {
        match (&self.0, &other.0) {
            (Some(a), Some(b)) => Rc::ptr_eq(a, b),
            (None, None) => true,
            _ => false,
        }
    }

    /// An environment of fresh variables for a context of length `depth`.
    pub fn identity(depth: usize) -> Env {
        (0..depth).fold(Env::new(), |env, level| env.extend(Value::var(level)))
    }

    pub fn from_values(values: impl IntoIterator<Item = RcValue>) -> Env {
        values.into_iter().fold(Env::new(), |env, v| env.extend(v))
    }
}
