use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::nbe::{Env, Globals, RcValue, Value};
use crate::resolve::GlobalScope;
use crate::surface::{print_core, Span, Tier};
use crate::syntax::{Name, RcTerm};

/// The local telescope: a name hint and a type per bound variable, plus the
/// values those variables stand for (fresh neutrals, or let-bound values).
#[derive(Clone, Debug, Default)]
pub struct Context {
    names: Vec<String>,
    types: Vec<RcValue>,
    env: Env,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn depth(&self) -> usize {
        self.types.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    /// Extend with a fresh variable of type `ty`.
    pub fn bind(&self, name: &str, ty: RcValue) -> Context {
        let value = Value::var(self.depth());
        self.define(name, ty, value)
    }

    /// Extend with a variable that stands for a known value.
    pub fn define(&self, name: &str, ty: RcValue, value: RcValue) -> Context {
        let mut next = self.clone();
        next.names.push(name.to_string());
        next.types.push(ty);
        next.env = self.env.extend(value);
        next
    }

    /// The type of de Bruijn index `index`.
    pub fn type_of(&self, index: usize) -> Option<&RcValue> {
        let depth = self.depth();
        (index < depth).then(|| &self.types[depth - 1 - index])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DeclarationKind {
    Define,
    Postulate,
    /// Built into the kernel and part of the trusted base.
    Primitive,
}

impl fmt::Display for DeclarationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeclarationKind::Define => "define",
            DeclarationKind::Postulate => "postulate",
            DeclarationKind::Primitive => "primitive",
        })
    }
}

/// A checked declaration.
#[derive(Clone, Debug)]
pub struct Declaration {
    pub name: Name,
    pub kind: DeclarationKind,
    pub tier: Option<Tier>,
    pub ty: RcTerm,
    pub body: Option<RcTerm>,
    /// Postulates and primitives reachable through global references.
    pub assumptions: BTreeSet<String>,
    pub file: String,
    pub span: Span,
    pub(crate) ty_value: RcValue,
    pub(crate) value: Option<RcValue>,
}

impl Declaration {
    pub fn ty_value(&self) -> &RcValue {
        &self.ty_value
    }

    pub fn is_assumption(&self) -> bool {
        self.kind != DeclarationKind::Define
    }

    /// One line per field group; used for determinism checks.
    pub fn dump(&self) -> String {
        let tier = self
            .tier
            .map(|t| t.to_string())
            .unwrap_or_else(|| "-".into());
        let body = self
            .body
            .as_ref()
            .map(|b| print_core(&[], b))
            .unwrap_or_else(|| "-".into());
        let assumptions: Vec<_> = self.assumptions.iter().map(String::as_str).collect();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.kind,
            self.name,
            tier,
            self.file,
            print_core(&[], &self.ty),
            body,
            assumptions.join(",")
        )
    }
}

/// The append-only table of checked declarations.
#[derive(Clone, Debug, Default)]
pub struct GlobalTable {
    decls: Vec<Declaration>,
    index: HashMap<String, usize>,
}

impl GlobalTable {
    pub fn new() -> GlobalTable {
        GlobalTable::default()
    }

    pub fn get(&self, name: &str) -> Option<&Declaration> {
        self.index.get(name).map(|&i| &self.decls[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.decls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decls.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Declaration> {
        self.decls.iter()
    }

    /// Append a declaration. Panics if the name is taken; callers resolve
    /// against this table first.
    pub fn push(&mut self, decl: Declaration) {
        let name = decl.name.to_string();
        assert!(!self.index.contains_key(&name), "duplicate global `{name}`");
        self.index.insert(name, self.decls.len());
        self.decls.push(decl);
    }

    /// The transitive assumption set of a declaration.
    pub fn assumptions_of(&self, name: &str) -> Option<&BTreeSet<String>> {
        self.get(name).map(|d| &d.assumptions)
    }

    /// Printed form of every declaration, in insertion order.
    pub fn dump(&self) -> String {
        self.decls.iter().map(|d| d.dump() + "\n").collect()
    }
}

impl Globals for GlobalTable {
    fn unfold(&self, name: &str) -> Option<RcValue> {
        self.get(name).and_then(|d| d.value.clone())
    }
}

impl GlobalScope for GlobalTable {
    fn contains_global(&self, name: &str) -> bool {
        self.contains(name)
    }

    fn global_names(&self) -> Vec<String> {
        self.decls.iter().map(|d| d.name.to_string()).collect()
    }
}
