//! Term store, bootstrap constants, evaluation and equivalence.

mod eval;
mod term;
mod universe;

pub use term::{Behavior, Default, FamilyKind, OtherPart, PhiPart, TermRef};
pub use universe::{Universe, MAX_NUMERAL};
