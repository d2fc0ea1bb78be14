//! Bounded model checks of the ZF and category translations, plus the
//! static-category layer.

mod category;
mod functor;
mod zf;

use std::fmt;

pub use category::{StaticCategory, DEFAULT_FRAGMENT_CAP};
pub use functor::Variance;
pub use zf::{ZfAxiom, ZfUniverse, MAX_RANK};

/// Outcome of one translated axiom over a finite model.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomReport {
    pub axiom: String,
    pub instances: usize,
    pub counterexample: Option<String>,
    pub pass: bool,
}

impl AxiomReport {
    pub(crate) fn new(axiom: impl Into<String>, instances: usize, counterexample: Option<String>) -> Self {
        AxiomReport {
            axiom: axiom.into(),
            instances,
            pass: counterexample.is_none(),
            counterexample,
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} ({} instances)",
            self.axiom,
            if self.pass { "PASS" } else { "FAIL" },
            self.instances
        )?;
        if let Some(w) = &self.counterexample {
            write!(f, " counterexample: {w}")?;
        }
        Ok(())
    }
}

/// The K axioms of the category translation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KAxiom {
    K1,
    K2,
    K3,
    K4,
    K5,
    K6,
}

impl KAxiom {
    pub const ALL: [KAxiom; 6] = [
        KAxiom::K1,
        KAxiom::K2,
        KAxiom::K3,
        KAxiom::K4,
        KAxiom::K5,
        KAxiom::K6,
    ];
}

impl fmt::Display for KAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K{}", *self as u8 + 1)
    }
}
