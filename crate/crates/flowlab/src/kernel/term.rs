use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::PredicateExpr;

/// Stable handle of an interned function. Ids are allocated in order and
/// never reused within a universe.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TermRef(pub(crate) u32);

impl TermRef {
    /// The rigid function: maps everything to itself-as-constant.
    pub const ZERO: TermRef = TermRef(0);
    /// The identity function.
    pub const ONE: TermRef = TermRef(1);
    /// Behaves as `ZERO` everywhere except its own self-point.
    pub const PHI0: TermRef = TermRef(2);
    /// `ONE . ONE`: identity except at `ONE`.
    pub const PSI: TermRef = TermRef(3);
    /// The successor function.
    pub const SIGMA: TermRef = TermRef(4);
    /// `phi n -> phi (n+1)`, zero elsewhere.
    pub const LAMBDA: TermRef = TermRef(5);
    /// Fixes every numeral, zero elsewhere. The canonical inductive term.
    pub const OMEGA: TermRef = TermRef(6);

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn from_id(id: u32) -> TermRef {
        TermRef(id)
    }
}

impl fmt::Display for TermRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FamilyKind {
    Plus,
    Times,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Plus => "plus",
            FamilyKind::Times => "times",
        }
    }
}

/// Action of a rule default on the numerals `phi m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PhiPart {
    /// `phi m -> phi (scale*m + offset)`
    Affine {
        scale: u64,
        offset: u64,
    },
    Const(TermRef),
    /// `phi m -> ` the m-th member of the arithmetic family.
    Family(FamilyKind),
}

/// Action of a rule default on every term that is not a numeral.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum OtherPart {
    Const(TermRef),
    /// k-fold successor; `Succ(0)` is the identity.
    Succ(u32),
}

/// The value a term takes off its finite exception map.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Default {
    Zero,
    Identity,
    Const(TermRef),
    Rule {
        phi: PhiPart,
        other: OtherPart,
    },
    /// Identity where the predicate holds, zero elsewhere.
    Filter(PredicateExpr),
}

impl Default {
    pub fn is_zero(&self) -> bool {
        matches!(self, Default::Zero)
    }

    /// Defaults whose action is finite once the exceptions are known.
    pub fn is_finite(&self) -> bool {
        matches!(self, Default::Zero)
    }

    pub fn mentions_successor(&self) -> bool {
        matches!(
            self,
            Default::Rule {
                other: OtherPart::Succ(k),
                ..
            } if *k > 0
        )
    }
}

/// Default plus finite exception map. The owner's self-point is implicit
/// and never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Behavior {
    pub default: Default,
    pub exceptions: BTreeMap<TermRef, TermRef>,
}

impl Behavior {
    pub fn new(default: Default, exceptions: BTreeMap<TermRef, TermRef>) -> Behavior {
        Behavior { default, exceptions }
    }

    pub fn zero(exceptions: BTreeMap<TermRef, TermRef>) -> Behavior {
        Behavior::new(Default::Zero, exceptions)
    }
}
