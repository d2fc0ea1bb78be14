//! Pairs, products, relations, arrows, choice, local inverses, operation
//! families, static groups and fields, and Cantor–Schröder–Bernstein.

mod arrow;
mod choice;
mod csb;
mod family;
mod groups;
mod inverse;
mod pairs;

pub use choice::ChoiceOrder;
pub use family::{Carrier, FamilySpec};
pub use groups::{AxiomCheck, StructureReport};
pub use pairs::{PairDecomposition, PairKind};
