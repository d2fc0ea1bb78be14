use std::collections::{BTreeMap, BTreeSet};

use crate::error::{FlowError, Result};
use crate::kernel::{Behavior, Default, OtherPart, PhiPart, TermRef, Universe};

impl Universe {
    /// `f ∘ g`, memoized by the ordered pair.
    pub fn compose(&mut self, f: TermRef, g: TermRef) -> Result<TermRef> {
        self.check(f)?;
        self.check(g)?;
        if let Some(&h) = self.memo.compose.get(&(f, g)) {
            return Ok(h);
        }
        let h = self.compose_uncached(f, g)?;
        self.memo.compose.insert((f, g), h);
        Ok(h)
    }

    fn compose_uncached(&mut self, f: TermRef, g: TermRef) -> Result<TermRef> {
        let unsupported = || FlowError::UnsupportedRuleComposition { f, g };
        let sf = self.signature(f)?.clone();
        let sg = self.signature(g)?.clone();
        let dh = self
            .compose_defaults(f, &sf.default, &sg.default)?
            .ok_or_else(unsupported)?;

        // Points where f ∘ D_g may differ from the composite: g's
        // exceptions, f and g, and D_g-preimages of f's exceptions and f.
        let mut special: BTreeSet<TermRef> = sg.exceptions.keys().copied().collect();
        special.insert(f);
        special.insert(g);
        let mut targets: BTreeSet<TermRef> = sf.exceptions.keys().copied().collect();
        targets.insert(f);
        let pre = self
            .default_preimages(&sg.default, &targets)?
            .ok_or_else(unsupported)?;
        special.extend(pre);

        let mut map = BTreeMap::new();
        for x in special {
            let v = if x == f || x == g {
                TermRef::ZERO
            } else {
                let gx = self.evaluate(g, x)?;
                self.evaluate(f, gx)?
            };
            map.insert(x, v);
        }
        let cand = self.normalize(dh, map)?;
        let prefer: Vec<TermRef> = [f, g]
            .into_iter()
            .filter(|&t| t != TermRef::ZERO && t != TermRef::ONE)
            .collect();
        let h = self.resolve(cand, &prefer)?;
        Ok(match h {
            TermRef::ZERO => TermRef::PHI0,
            TermRef::ONE => TermRef::PSI,
            h => h,
        })
    }

    /// Symbolic `D_f ∘ D_g`; `None` outside the supported closed forms.
    fn compose_defaults(&mut self, f: TermRef, df: &Default, dg: &Default) -> Result<Option<Default>> {
        Ok(Some(match dg {
            Default::Zero => Default::Const(self.evaluate(f, TermRef::ZERO)?),
            Default::Const(t) => Default::Const(self.evaluate(f, *t)?),
            Default::Identity => df.clone(),
            Default::Filter(p) => {
                if self.evaluate(f, TermRef::ZERO)? != TermRef::ZERO {
                    return Ok(None);
                }
                match df {
                    Default::Zero => Default::Zero,
                    Default::Identity => Default::Filter(p.clone()),
                    Default::Filter(q) => Default::Filter(q.clone().and(p.clone())),
                    _ => return Ok(None),
                }
            }
            Default::Rule { phi, other } => {
                let phi_h = match phi {
                    PhiPart::Const(t) => PhiPart::Const(self.evaluate(f, *t)?),
                    PhiPart::Affine { scale, offset } => match phi_action(df) {
                        Some(PhiPart::Affine { scale: c, offset: d }) => {
                            match (c.checked_mul(*scale), c.checked_mul(*offset)) {
                                (Some(a), Some(b)) => match b.checked_add(d) {
                                    Some(b) => PhiPart::Affine { scale: a, offset: b },
                                    None => return Ok(None),
                                },
                                _ => return Ok(None),
                            }
                        }
                        Some(PhiPart::Const(t)) => PhiPart::Const(t),
                        Some(PhiPart::Family(k)) if (*scale, *offset) == (1, 0) => PhiPart::Family(k),
                        _ => return Ok(None),
                    },
                    PhiPart::Family(k) => match other_action(df) {
                        Some(OtherPart::Const(t)) => PhiPart::Const(t),
                        Some(OtherPart::Succ(0)) => PhiPart::Family(*k),
                        _ => return Ok(None),
                    },
                };
                let other_h = match other {
                    OtherPart::Const(t) => OtherPart::Const(self.evaluate(f, *t)?),
                    OtherPart::Succ(0) => match other_action(df) {
                        Some(o) => o,
                        None => return Ok(None),
                    },
                    OtherPart::Succ(k) => match successor_shift(df) {
                        Some(Shift::Const(t)) => OtherPart::Const(t),
                        Some(Shift::By(j)) => OtherPart::Succ(k + j),
                        None => return Ok(None),
                    },
                };
                Default::Rule {
                    phi: phi_h,
                    other: other_h,
                }
            }
        }))
    }

    /// Terms `x` with `D_g(x)` in `targets`, for defaults whose value set
    /// does not already absorb them. `None` when the preimage is unbounded.
    fn default_preimages(
        &mut self,
        dg: &Default,
        targets: &BTreeSet<TermRef>,
    ) -> Result<Option<BTreeSet<TermRef>>> {
        let mut out = BTreeSet::new();
        match dg {
            Default::Zero | Default::Const(_) => {}
            Default::Identity | Default::Filter(_) => out.extend(targets.iter().copied()),
            Default::Rule { phi, other } => {
                for &t in targets {
                    match phi {
                        PhiPart::Affine { scale, offset } => {
                            if let Some(j) = self.phi_index(t) {
                                if j >= *offset && (j - offset) % scale == 0 {
                                    out.insert(self.phi((j - offset) / scale)?);
                                }
                            }
                        }
                        PhiPart::Family(k) => {
                            if let Some(m) = self.family_index(*k, t) {
                                out.insert(self.phi(m)?);
                            }
                        }
                        PhiPart::Const(_) => {}
                    }
                }
                match other {
                    OtherPart::Const(_) => {}
                    OtherPart::Succ(k) => {
                        let mut level: BTreeSet<TermRef> = targets.clone();
                        for _ in 0..*k {
                            if level.contains(&TermRef::ZERO) {
                                return Ok(None);
                            }
                            let mut next = BTreeSet::new();
                            for &t in &level {
                                next.extend(self.successor_preimages(t)?);
                            }
                            level = next;
                        }
                        out.extend(level.into_iter().filter(|&x| self.phi_index(x).is_none()));
                    }
                }
            }
        }
        Ok(Some(out))
    }

    /// Picks the term realizing a candidate behavior: a preferred operand
    /// that agrees with it off its own self-point, an exact match, or a
    /// fresh term.
    pub(crate) fn resolve(&mut self, cand: Behavior, prefer: &[TermRef]) -> Result<TermRef> {
        for &p in prefer {
            if self.agrees_off_self(p, &cand)? {
                return Ok(p);
            }
        }
        if let Some(t) = self.lookup(&cand) {
            return Ok(t);
        }
        Ok(self.insert_normalized(cand))
    }

    pub(crate) fn agrees_off_self(&self, p: TermRef, cand: &Behavior) -> Result<bool> {
        let sig = self.signature(p)?;
        if sig.default != cand.default {
            return Ok(false);
        }
        let mut e = cand.exceptions.clone();
        e.remove(&p);
        Ok(e == sig.exceptions)
    }
}

/// What a default does to numerals, when uniform.
fn phi_action(d: &Default) -> Option<PhiPart> {
    match d {
        Default::Zero => Some(PhiPart::Const(TermRef::ZERO)),
        Default::Identity => Some(PhiPart::Affine { scale: 1, offset: 0 }),
        Default::Const(t) => Some(PhiPart::Const(*t)),
        Default::Rule { phi, .. } => Some(phi.clone()),
        Default::Filter(_) => None,
    }
}

/// What a default does to non-numerals, when uniform.
fn other_action(d: &Default) -> Option<OtherPart> {
    match d {
        Default::Zero => Some(OtherPart::Const(TermRef::ZERO)),
        Default::Identity => Some(OtherPart::Succ(0)),
        Default::Const(t) => Some(OtherPart::Const(*t)),
        Default::Rule { other, .. } => Some(other.clone()),
        Default::Filter(_) => None,
    }
}

enum Shift {
    Const(TermRef),
    By(u32),
}

/// Defaults that commute with "apply σ first": constants, and rules that
/// act as the j-fold successor on numerals and non-numerals alike.
fn successor_shift(d: &Default) -> Option<Shift> {
    match d {
        Default::Zero => Some(Shift::Const(TermRef::ZERO)),
        Default::Const(t) => Some(Shift::Const(*t)),
        Default::Identity => Some(Shift::By(0)),
        Default::Rule {
            phi: PhiPart::Affine { scale: 1, offset },
            other: OtherPart::Succ(j),
        } if *offset == *j as u64 => Some(Shift::By(*j)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(pairs: &[(TermRef, TermRef)]) -> BTreeMap<TermRef, TermRef> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn privileged_composites() {
        let mut u = Universe::new();
        assert_eq!(u.compose(TermRef::ZERO, TermRef::ZERO).unwrap(), TermRef::PHI0);
        assert_eq!(u.compose(TermRef::ONE, TermRef::ONE).unwrap(), TermRef::PSI);
        assert_eq!(u.compose(TermRef::PSI, TermRef::PSI).unwrap(), TermRef::PSI);
        let p2 = u.phi(2).unwrap();
        assert_eq!(u.compose(TermRef::ZERO, p2).unwrap(), TermRef::PHI0);
        assert_eq!(u.compose(TermRef::ONE, p2).unwrap(), p2);
        assert_eq!(u.compose(p2, TermRef::ONE).unwrap(), p2);
    }

    #[test]
    fn numerals_compose_to_the_minimum() {
        let mut u = Universe::new();
        let p3 = u.phi(3).unwrap();
        let p5 = u.phi(5).unwrap();
        assert_eq!(u.compose(p5, p3).unwrap(), p3);
        assert_eq!(u.compose(p3, p5).unwrap(), p3);
    }

    #[test]
    fn sigma_after_phi2() {
        let mut u = Universe::new();
        let (p0, p1, p2) = (TermRef::PHI0, u.phi(1).unwrap(), u.phi(2).unwrap());
        let h = u.compose(TermRef::SIGMA, p2).unwrap();
        let b = u.behavior(h).unwrap().clone();
        assert_eq!(b.default, Default::Const(p0));
        assert_eq!(
            b.exceptions,
            map(&[
                (p0, p1),
                (p1, p2),
                (p2, TermRef::ZERO),
                (TermRef::SIGMA, TermRef::ZERO)
            ])
        );
    }

    #[test]
    fn phi2_after_sigma() {
        let mut u = Universe::new();
        let (p0, p1, p2) = (TermRef::PHI0, u.phi(1).unwrap(), u.phi(2).unwrap());
        let h = u.compose(p2, TermRef::SIGMA).unwrap();
        let b = u.behavior(h).unwrap().clone();
        assert_eq!(b.default, Default::Zero);
        assert_eq!(b.exceptions, map(&[(TermRef::ZERO, p0), (p0, p1), (p1, p2)]));
    }

    #[test]
    fn sigma_after_sigma_is_a_double_step() {
        let mut u = Universe::new();
        let h = u.compose(TermRef::SIGMA, TermRef::SIGMA).unwrap();
        let p3 = u.phi(3).unwrap();
        let p5 = u.phi(5).unwrap();
        assert_eq!(u.evaluate(h, p3).unwrap(), p5);
        assert_eq!(u.evaluate(h, TermRef::SIGMA).unwrap(), TermRef::ZERO);
        assert_eq!(u.evaluate(h, TermRef::ZERO).unwrap(), u.phi(1).unwrap());
    }

    #[test]
    fn unsupported_open_preimage() {
        let mut u = Universe::new();
        let f = u.arrow(&[(TermRef::ZERO, TermRef::PHI0)]).unwrap();
        assert_eq!(
            u.compose(f, TermRef::SIGMA),
            Err(FlowError::UnsupportedRuleComposition { f, g: TermRef::SIGMA })
        );
    }
}
