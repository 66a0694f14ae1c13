//! Normalization by evaluation: values, evaluation, read-back and conversion.

mod conv;
mod eval;
mod quote;
mod value;

pub use conv::{conv, subtype};
pub use eval::{
    abort, apply, apply_all, boolind, do_j, eliminate, eval, fst, gind, natind, reset_step_counter,
    snd, unitind, Globals, NoGlobals,
};
pub use quote::{normalize, quote, quote_neutral};
pub use value::{Closure, Elim, Env, Head, RcValue, Value};
