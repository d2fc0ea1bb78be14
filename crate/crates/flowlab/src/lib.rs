//! A finitary term engine for Flow theory.
//!
//! Every value is an interned monadic function ([`TermRef`]). The
//! [`Universe`] owns the registry and the memo tables; constructions take
//! `&mut Universe` because evaluating rule terms may intern new numerals.
//! Share a universe across threads behind a lock.

pub mod algebra;
pub mod bridges;
pub mod classify;
pub mod error;
pub mod kernel;
pub mod shell;
pub mod structures;

pub use algebra::PredicateExpr;
pub use error::{FlowError, Result};
pub use kernel::{Behavior, Default, FamilyKind, OtherPart, PhiPart, TermRef, Universe};
