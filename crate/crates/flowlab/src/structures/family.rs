use std::collections::BTreeMap;

use crate::error::{FlowError, Result};
use crate::kernel::{Default, FamilyKind, TermRef, Universe};

/// Which terms index a family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Carrier {
    /// Every numeral.
    Numerals,
    Finite(Vec<TermRef>),
}

/// A two-place operation encoded as a term sending each index `r` to the
/// monadic member `∗_r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilySpec {
    pub term: TermRef,
    pub carrier: Carrier,
}

impl Universe {
    pub fn plus_family(&mut self) -> Result<FamilySpec> {
        Ok(FamilySpec {
            term: self.family_term(FamilyKind::Plus)?,
            carrier: Carrier::Numerals,
        })
    }

    pub fn times_family(&mut self) -> Result<FamilySpec> {
        Ok(FamilySpec {
            term: self.family_term(FamilyKind::Times)?,
            carrier: Carrier::Numerals,
        })
    }

    /// Addition or multiplication modulo `k` on `φ₀..φ_{k-1}`.
    pub fn mod_family(&mut self, kind: FamilyKind, k: u64) -> Result<FamilySpec> {
        if k == 0 {
            return Err(FlowError::Precondition("modulus 0".into()));
        }
        let carrier: Vec<TermRef> = (0..k).map(|n| self.phi(n)).collect::<Result<_>>()?;
        let mut members = BTreeMap::new();
        for r in 0..k {
            let mut graph = Vec::new();
            for s in 0..k {
                let v = match kind {
                    FamilyKind::Plus => (r + s) % k,
                    FamilyKind::Times => (r * s) % k,
                };
                graph.push((carrier[s as usize], carrier[v as usize]));
            }
            members.insert(carrier[r as usize], self.arrow(&graph)?);
        }
        Ok(FamilySpec {
            term: self.intern(Default::Zero, members)?,
            carrier: Carrier::Finite(carrier),
        })
    }

    pub fn in_family_carrier(&self, star: &FamilySpec, t: TermRef) -> bool {
        match &star.carrier {
            Carrier::Numerals => self.phi_index(t).is_some(),
            Carrier::Finite(c) => c.contains(&t),
        }
    }

    /// `∗_r(s)`.
    pub fn family_apply(&mut self, star: &FamilySpec, r: TermRef, s: TermRef) -> Result<TermRef> {
        for t in [r, s] {
            self.check(t)?;
            if !self.in_family_carrier(star, t) {
                return Err(FlowError::Precondition(format!(
                    "{} is outside the family carrier",
                    self.name(t)
                )));
            }
        }
        let member = self.evaluate(star.term, r)?;
        self.evaluate(member, s)
    }

    /// `∗_{r∗s}` agrees with `∗_r ∘ ∗_s` on every carrier point, for all
    /// carrier indices up to `bound`.
    pub fn is_family_associative(&mut self, star: &FamilySpec, bound: u64) -> Result<bool> {
        let idx = self.family_indices(star, bound)?;
        Ok(self.associativity_witness(star, &idx)?.is_none())
    }

    pub fn is_family_commutative(&mut self, star: &FamilySpec, bound: u64) -> Result<bool> {
        let idx = self.family_indices(star, bound)?;
        for &r in &idx {
            for &s in &idx {
                if self.family_apply(star, r, s)? != self.family_apply(star, s, r)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// First `(r, s, t)` over `idx` with `∗_{r∗s}(t) ≠ ∗_r(∗_s(t))`, with the
    /// right side read through `compose`.
    pub(crate) fn associativity_witness(
        &mut self,
        star: &FamilySpec,
        idx: &[TermRef],
    ) -> Result<Option<(TermRef, TermRef, TermRef)>> {
        for &r in idx {
            for &s in idx {
                let rs = self.family_apply(star, r, s)?;
                if !self.in_family_carrier(star, rs) {
                    continue;
                }
                let left = self.evaluate(star.term, rs)?;
                let (mr, ms) = (self.evaluate(star.term, r)?, self.evaluate(star.term, s)?);
                let right = self.compose(mr, ms)?;
                for &t in idx {
                    if self.evaluate(left, t)? != self.evaluate(right, t)? {
                        return Ok(Some((r, s, t)));
                    }
                }
            }
        }
        Ok(None)
    }

    fn family_indices(&mut self, star: &FamilySpec, bound: u64) -> Result<Vec<TermRef>> {
        match &star.carrier {
            Carrier::Numerals => (0..=bound).map(|n| self.phi(n)).collect(),
            Carrier::Finite(c) => Ok(c
                .iter()
                .copied()
                .filter(|&t| self.phi_index(t).is_none_or(|n| n <= bound))
                .collect()),
        }
    }
}
