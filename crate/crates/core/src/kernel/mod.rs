//! Bidirectional type checking of declarations, including the graph-quotient
//! rules, with per-declaration assumption tracking.

mod builtins;
mod check;
mod context;
mod decl;
mod diagnostic;

pub use builtins::{
    gind_edge_name, gind_edge_source, is_trusted, primitive_table, GIND_EDGE_PREFIX,
    TRUSTED_POSTULATES,
};
pub use check::{CheckResult, Checker, GIND_EDGE_METHOD};
pub use context::{Context, Declaration, DeclarationKind, GlobalTable};
pub use decl::check_decl;
pub use diagnostic::{escape, unescape, Diagnostic, Severity};
