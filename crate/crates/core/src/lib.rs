//! A small Martin-Löf type theory kernel whose only higher inductive type is
//! the graph quotient.

// Diagnostics carry printed types and are the error type throughout.
#![allow(clippy::result_large_err)]

pub mod kernel;
pub mod library;
pub mod nbe;
pub mod resolve;
pub mod surface;
pub mod syntax;

pub use kernel::{Declaration, Diagnostic, GlobalTable};
pub use library::Library;
pub use syntax::{Level, Term};
