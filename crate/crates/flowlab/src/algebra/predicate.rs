use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Result;
use crate::kernel::{Default, TermRef, Universe};

/// Largest exception map whose sub-maps are enumerated for `x ⊆ t`.
pub const SUBMAP_LIMIT: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Operand {
    Var,
    Term(TermRef),
}

/// Restriction formula `F(x)` over a single free variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PredicateExpr {
    True,
    False,
    Eq(Operand, Operand),
    Neq(Operand, Operand),
    /// `a ∈ b`, i.e. `b` acts on `a`.
    In(Operand, Operand),
    /// `a ⊆ b`.
    Subset(Operand, Operand),
    IsPair(Operand),
    IsZfSet(Operand),
    And(Box<PredicateExpr>, Box<PredicateExpr>),
    Or(Box<PredicateExpr>, Box<PredicateExpr>),
    Not(Box<PredicateExpr>),
}

/// Which terms satisfy a predicate, when that is a finite or cofinite set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Extension {
    Finite(BTreeSet<TermRef>),
    Cofinite(BTreeSet<TermRef>),
    Opaque,
}

impl PredicateExpr {
    pub fn eq(t: TermRef) -> PredicateExpr {
        PredicateExpr::Eq(Operand::Var, Operand::Term(t))
    }

    pub fn neq(t: TermRef) -> PredicateExpr {
        PredicateExpr::Neq(Operand::Var, Operand::Term(t))
    }

    pub fn member_of(t: TermRef) -> PredicateExpr {
        PredicateExpr::In(Operand::Var, Operand::Term(t))
    }

    pub fn subset_of(t: TermRef) -> PredicateExpr {
        PredicateExpr::Subset(Operand::Var, Operand::Term(t))
    }

    pub fn zf_set() -> PredicateExpr {
        PredicateExpr::IsZfSet(Operand::Var)
    }

    pub fn and(self, other: PredicateExpr) -> PredicateExpr {
        PredicateExpr::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: PredicateExpr) -> PredicateExpr {
        PredicateExpr::Or(Box::new(self), Box::new(other))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> PredicateExpr {
        PredicateExpr::Not(Box::new(self))
    }

    /// `x = t1 ∨ … ∨ x = tn`; `false` when empty.
    pub fn one_of(ts: &[TermRef]) -> PredicateExpr {
        ts.iter()
            .map(|&t| PredicateExpr::eq(t))
            .reduce(PredicateExpr::or)
            .unwrap_or(PredicateExpr::False)
    }

    /// Constant folding. Does not consult the universe.
    pub fn simplify(&self) -> PredicateExpr {
        use PredicateExpr::*;
        match self {
            Eq(Operand::Var, Operand::Var) => True,
            Neq(Operand::Var, Operand::Var) => False,
            Eq(Operand::Term(a), Operand::Term(b)) => {
                if a == b {
                    True
                } else {
                    False
                }
            }
            Neq(Operand::Term(a), Operand::Term(b)) => {
                if a != b {
                    True
                } else {
                    False
                }
            }
            In(Operand::Var, Operand::Var) => False,
            And(a, b) => match (a.simplify(), b.simplify()) {
                (False, _) | (_, False) => False,
                (True, q) | (q, True) => q,
                (p, q) => p.and(q),
            },
            Or(a, b) => match (a.simplify(), b.simplify()) {
                (True, _) | (_, True) => True,
                (False, q) | (q, False) => q,
                (p, q) => p.or(q),
            },
            Not(a) => match a.simplify() {
                True => False,
                False => True,
                Not(inner) => *inner,
                p => p.not(),
            },
            p => p.clone(),
        }
    }

    pub fn has_var(&self) -> bool {
        use PredicateExpr::*;
        let v = |o: &Operand| matches!(o, Operand::Var);
        match self {
            True | False => false,
            Eq(a, b) | Neq(a, b) | In(a, b) | Subset(a, b) => v(a) || v(b),
            IsPair(a) | IsZfSet(a) => v(a),
            And(a, b) | Or(a, b) => a.has_var() || b.has_var(),
            Not(a) => a.has_var(),
        }
    }

    /// True when `Z(x)` is a top-level conjunct, so every satisfying term
    /// is a ZF-set.
    pub fn implies_zf_set(&self) -> bool {
        match self {
            PredicateExpr::IsZfSet(Operand::Var) => true,
            PredicateExpr::And(a, b) => a.implies_zf_set() || b.implies_zf_set(),
            _ => false,
        }
    }

    /// Serialized form; also the memo key for restrictions.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Var => write!(f, "x"),
            Operand::Term(t) => write!(f, "{t}"),
        }
    }
}

impl fmt::Display for PredicateExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PredicateExpr::*;
        match self {
            True => write!(f, "true"),
            False => write!(f, "false"),
            Eq(a, b) => write!(f, "{a} = {b}"),
            Neq(a, b) => write!(f, "{a} != {b}"),
            In(a, b) => write!(f, "{a} in {b}"),
            Subset(a, b) => write!(f, "{a} sub {b}"),
            IsPair(a) => write!(f, "pair? {a}"),
            IsZfSet(a) => write!(f, "zf? {a}"),
            And(a, b) => write!(f, "({a} and {b})"),
            Or(a, b) => write!(f, "({a} or {b})"),
            Not(a) => write!(f, "not {}", Paren(a)),
        }
    }
}

struct Paren<'a>(&'a PredicateExpr);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            PredicateExpr::And(..) | PredicateExpr::Or(..) | PredicateExpr::True | PredicateExpr::False => {
                write!(f, "{}", self.0)
            }
            p => write!(f, "({p})"),
        }
    }
}

impl Universe {
    fn operand(&self, o: Operand, x: TermRef) -> TermRef {
        match o {
            Operand::Var => x,
            Operand::Term(t) => t,
        }
    }

    /// `F(x)`.
    pub fn eval_predicate(&mut self, p: &PredicateExpr, x: TermRef) -> Result<bool> {
        use PredicateExpr::*;
        Ok(match p {
            True => true,
            False => false,
            Eq(a, b) => self.operand(*a, x) == self.operand(*b, x),
            Neq(a, b) => self.operand(*a, x) != self.operand(*b, x),
            In(a, b) => {
                let (a, b) = (self.operand(*a, x), self.operand(*b, x));
                self.acts_on(b, a)?
            }
            Subset(a, b) => {
                let (a, b) = (self.operand(*a, x), self.operand(*b, x));
                self.is_subfunction(a, b)?
            }
            IsPair(a) => {
                let a = self.operand(*a, x);
                self.decompose_pair(a).is_ok()
            }
            IsZfSet(a) => {
                let a = self.operand(*a, x);
                self.is_zf_set(a)?
            }
            And(a, b) => self.eval_predicate(a, x)? && self.eval_predicate(b, x)?,
            Or(a, b) => self.eval_predicate(a, x)? || self.eval_predicate(b, x)?,
            Not(a) => !self.eval_predicate(a, x)?,
        })
    }

    /// Symbolic extension of `F` over the whole (unbounded) universe.
    pub fn extension(&mut self, p: &PredicateExpr) -> Result<Extension> {
        use PredicateExpr::*;
        let p = p.simplify();
        if !p.has_var() {
            return Ok(if self.eval_predicate(&p, TermRef::ZERO)? {
                Extension::Cofinite(BTreeSet::new())
            } else {
                Extension::Finite(BTreeSet::new())
            });
        }
        Ok(match &p {
            True => Extension::Cofinite(BTreeSet::new()),
            False => Extension::Finite(BTreeSet::new()),
            Eq(Operand::Var, Operand::Term(t)) | Eq(Operand::Term(t), Operand::Var) => {
                Extension::Finite(BTreeSet::from([*t]))
            }
            Neq(Operand::Var, Operand::Term(t)) | Neq(Operand::Term(t), Operand::Var) => {
                Extension::Cofinite(BTreeSet::from([*t]))
            }
            In(Operand::Var, Operand::Term(t)) => match self.default_of(*t) {
                Default::Zero => Extension::Finite(self.support(*t)?.into_iter().collect()),
                Default::Identity | Default::Const(_) => {
                    Extension::Cofinite(self.co_action(*t)?.into_iter().collect())
                }
                _ => Extension::Opaque,
            },
            Subset(Operand::Var, Operand::Term(t)) => {
                if *t == TermRef::ZERO {
                    Extension::Finite(BTreeSet::new())
                } else if self.has_finite_action(*t) && self.exceptions_of(*t).len() <= SUBMAP_LIMIT {
                    let mut subs: BTreeSet<TermRef> = self.submaps(*t)?.into_iter().collect();
                    subs.insert(*t);
                    Extension::Finite(subs)
                } else {
                    Extension::Opaque
                }
            }
            Subset(Operand::Var, Operand::Var) => Extension::Cofinite(BTreeSet::from([TermRef::ZERO])),
            Not(a) => match self.extension(a)? {
                Extension::Finite(s) => Extension::Cofinite(s),
                Extension::Cofinite(s) => Extension::Finite(s),
                Extension::Opaque => Extension::Opaque,
            },
            And(a, b) => {
                let (ea, eb) = (self.extension(a)?, self.extension(b)?);
                match (ea, eb) {
                    (Extension::Finite(s), _) => Extension::Finite(self.filter_set(s, b, true)?),
                    (_, Extension::Finite(s)) => Extension::Finite(self.filter_set(s, a, true)?),
                    (Extension::Cofinite(s), Extension::Cofinite(t)) => {
                        Extension::Cofinite(s.union(&t).copied().collect())
                    }
                    _ => Extension::Opaque,
                }
            }
            Or(a, b) => {
                let (ea, eb) = (self.extension(a)?, self.extension(b)?);
                match (ea, eb) {
                    (Extension::Finite(s), Extension::Finite(t)) => {
                        Extension::Finite(s.union(&t).copied().collect())
                    }
                    (Extension::Cofinite(s), _) => Extension::Cofinite(self.filter_set(s, b, false)?),
                    (_, Extension::Cofinite(s)) => Extension::Cofinite(self.filter_set(s, a, false)?),
                    _ => Extension::Opaque,
                }
            }
            _ => Extension::Opaque,
        })
    }

    fn filter_set(
        &mut self,
        s: BTreeSet<TermRef>,
        p: &PredicateExpr,
        keep: bool,
    ) -> Result<BTreeSet<TermRef>> {
        let mut out = BTreeSet::new();
        for t in s {
            if self.eval_predicate(p, t)? == keep {
                out.insert(t);
            }
        }
        Ok(out)
    }

    /// Interns every sub-map of a finite-action term's exception map.
    /// Always contains φ₀ and the term itself.
    pub fn submaps(&mut self, f: TermRef) -> Result<Vec<TermRef>> {
        let entries: Vec<(TermRef, TermRef)> = self.exceptions_of(f).iter().map(|(&k, &v)| (k, v)).collect();
        let n = entries.len();
        let mut out = Vec::with_capacity(1 << n);
        for mask in 0u64..(1u64 << n) {
            let map: BTreeMap<TermRef, TermRef> = entries
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            out.push(self.intern(Default::Zero, map)?);
        }
        Ok(out)
    }
}
