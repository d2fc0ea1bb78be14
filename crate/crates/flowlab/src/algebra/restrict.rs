use std::collections::BTreeMap;

use super::predicate::{Extension, PredicateExpr};
use crate::error::{FlowError, Result};
use crate::kernel::{Behavior, Default, OtherPart, PhiPart, TermRef, Universe};

impl Universe {
    /// `f|_{F(x)}`: agrees with `f` where `F` holds, 0̲ elsewhere.
    pub fn restrict(&mut self, f: TermRef, pred: &PredicateExpr) -> Result<TermRef> {
        self.check(f)?;
        if f == TermRef::ZERO {
            return Err(FlowError::Precondition("restriction of 0̲".into()));
        }
        let p = pred.simplify();
        let key = (f, p.canonical());
        if let Some(&g) = self.memo.restrict.get(&key) {
            return Ok(g);
        }
        let g = self.restrict_uncached(f, &p)?;
        self.memo.restrict.insert(key, g);
        Ok(g)
    }

    fn restrict_uncached(&mut self, f: TermRef, p: &PredicateExpr) -> Result<TermRef> {
        let sig = self.signature(f)?.clone();
        let cand = if sig.default.is_zero() {
            let mut map = BTreeMap::new();
            for (&k, &v) in &sig.exceptions {
                if self.eval_predicate(p, k)? {
                    map.insert(k, v);
                }
            }
            Behavior::zero(map)
        } else {
            match self.extension(p)? {
                Extension::Finite(s) => {
                    let mut map = BTreeMap::new();
                    for x in s {
                        if x == f {
                            continue;
                        }
                        let v = self.evaluate(f, x)?;
                        if v != TermRef::ZERO {
                            map.insert(x, v);
                        }
                    }
                    Behavior::zero(map)
                }
                Extension::Cofinite(c) => {
                    if c.iter().all(|&x| x == f) {
                        return Ok(f);
                    }
                    let mut map = sig.exceptions.clone();
                    for x in c {
                        map.insert(x, TermRef::ZERO);
                    }
                    map.insert(f, TermRef::ZERO);
                    Behavior::new(sig.default.clone(), map)
                }
                Extension::Opaque => {
                    let d = match &sig.default {
                        Default::Identity => Default::Filter(p.clone()),
                        Default::Filter(q) => Default::Filter(q.clone().and(p.clone())),
                        _ => {
                            return Err(FlowError::CofiniteSupport {
                                term: f,
                                co_action: self.co_action(f)?,
                            })
                        }
                    };
                    let mut map = BTreeMap::new();
                    for (&k, &v) in &sig.exceptions {
                        let keep = self.eval_predicate(p, k)?;
                        map.insert(k, if keep { v } else { TermRef::ZERO });
                    }
                    map.insert(f, TermRef::ZERO);
                    Behavior::new(d, map)
                }
            }
        };
        let cand = self.normalize(cand.default, cand.exceptions)?;
        self.resolve(cand, &[f])
    }

    /// `g ⊆ f` under the non-zero agreement reading: `g = f`, or `g(f) = 0̲`
    /// and `g(x) ≠ 0̲ ⇒ g(x) = f(x)` off `{g, f}`.
    pub fn is_subfunction(&mut self, g: TermRef, f: TermRef) -> Result<bool> {
        self.check(g)?;
        self.check(f)?;
        if g == TermRef::ZERO || f == TermRef::ZERO {
            return Ok(false);
        }
        if g == f {
            return Ok(true);
        }
        if self.evaluate(g, f)? != TermRef::ZERO {
            return Ok(false);
        }
        let (sg, sf) = (self.signature(g)?.clone(), self.signature(f)?.clone());
        if !subdefault(&sg.default, &sf.default) {
            return Ok(false);
        }
        let keys: Vec<TermRef> = sg
            .exceptions
            .keys()
            .chain(sf.exceptions.keys())
            .copied()
            .filter(|&k| k != g && k != f)
            .collect();
        for k in keys {
            let gk = self.evaluate(g, k)?;
            if gk != TermRef::ZERO && gk != self.evaluate(f, k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `dg(x) ≠ 0̲ ⇒ dg(x) = df(x)` for every `x`, decided on the descriptors.
/// Incomparable filters answer `false`.
fn subdefault(dg: &Default, df: &Default) -> bool {
    if dg == df || dg.is_zero() {
        return true;
    }
    let zero_phi = PhiPart::Const(TermRef::ZERO);
    let zero_other = OtherPart::Const(TermRef::ZERO);
    match (dg, df) {
        (Default::Filter(_), Default::Identity) => true,
        (Default::Filter(p), Default::Filter(q)) => implies(p, q),
        (Default::Rule { phi, other }, Default::Identity) => {
            (*phi == zero_phi || *phi == PhiPart::Affine { scale: 1, offset: 0 })
                && (*other == zero_other || *other == OtherPart::Succ(0))
        }
        (Default::Rule { phi: pg, other: og }, Default::Rule { phi: pf, other: of }) => {
            (pg == pf || *pg == zero_phi) && (og == of || *og == zero_other)
        }
        _ => false,
    }
}

fn implies(p: &PredicateExpr, q: &PredicateExpr) -> bool {
    p == q
        || match p {
            PredicateExpr::And(a, b) => implies(a, q) || implies(b, q),
            _ => false,
        }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::predicate::Operand;

    #[test]
    fn gamma_restriction_of_phi_two() {
        let mut u = Universe::new();
        let p1 = u.phi(1).unwrap();
        let p2 = u.phi(2).unwrap();
        let gamma = u.restrict(p2, &PredicateExpr::eq(p1)).unwrap();
        assert!(![TermRef::PHI0, p1, p2].contains(&gamma));
        assert_eq!(u.behavior(gamma).unwrap().exceptions, BTreeMap::from([(p1, p1)]));
        assert!(u.is_subfunction(gamma, p2).unwrap());
        assert!(!u.is_subfunction(p2, p1).unwrap());
    }

    #[test]
    fn empty_and_total_restrictions() {
        let mut u = Universe::new();
        let p2 = u.phi(2).unwrap();
        let never = PredicateExpr::Neq(Operand::Var, Operand::Var);
        assert_eq!(u.restrict(p2, &never).unwrap(), TermRef::PHI0);
        assert_eq!(u.restrict(p2, &PredicateExpr::True).unwrap(), p2);
        assert_eq!(
            u.restrict(TermRef::ONE, &PredicateExpr::True).unwrap(),
            TermRef::ONE
        );
        assert!(matches!(
            u.restrict(TermRef::ZERO, &PredicateExpr::True),
            Err(FlowError::Precondition(_))
        ));
    }

    #[test]
    fn cofinite_restriction_of_one() {
        let mut u = Universe::new();
        let p4 = u.phi(4).unwrap();
        let g = u.restrict(TermRef::ONE, &PredicateExpr::neq(p4)).unwrap();
        let b = u.behavior(g).unwrap().clone();
        assert_eq!(b.default, Default::Identity);
        assert_eq!(
            b.exceptions,
            BTreeMap::from([(TermRef::ONE, TermRef::ZERO), (p4, TermRef::ZERO)])
        );
    }

    #[test]
    fn phi0_is_below_everything() {
        let mut u = Universe::new();
        let p3 = u.phi(3).unwrap();
        for f in [TermRef::ONE, TermRef::PSI, TermRef::SIGMA, TermRef::OMEGA, p3] {
            assert!(u.is_subfunction(TermRef::PHI0, f).unwrap());
        }
        assert!(!u.is_subfunction(TermRef::PHI0, TermRef::ZERO).unwrap());
    }
}
