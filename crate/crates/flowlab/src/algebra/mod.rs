//! Composition, successor, restriction, subfunction, power, union and
//! intersection.

mod compose;
mod power;
pub mod predicate;
mod restrict;
mod successor;
mod union;

pub use predicate::{Extension, Operand, PredicateExpr, SUBMAP_LIMIT};
