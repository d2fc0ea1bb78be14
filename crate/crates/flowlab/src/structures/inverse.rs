use std::collections::BTreeMap;

use crate::error::{FlowError, Result};
use crate::kernel::{Default, TermRef, Universe};

impl Universe {
    /// Distinct action points have distinct images. 0̲ counts as an action
    /// point when `f` sends it somewhere other than 0̲.
    pub fn is_locally_injective(&mut self, f: TermRef) -> Result<bool> {
        let graph = self.action_graph(f)?;
        let mut seen = BTreeMap::new();
        for (k, v) in graph {
            if seen.insert(v, k).is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The reversed graph first, then the variant that also sends 0̲ to an
    /// image `f` does not act on, when there is one.
    pub fn local_inverses(&mut self, f: TermRef) -> Result<Vec<TermRef>> {
        if !self.is_locally_injective(f)? {
            return Err(FlowError::NoLocalInverse(f));
        }
        let graph = self.action_graph(f)?;
        let mut map = BTreeMap::new();
        for &(k, v) in &graph {
            if k != TermRef::ZERO {
                map.insert(v, k);
            }
        }
        let mut out = vec![self.intern(Default::Zero, map.clone())?];
        if !map.contains_key(&TermRef::ZERO) {
            for &(_, v) in &graph {
                if v != f && self.evaluate(f, v)? == TermRef::ZERO {
                    map.insert(TermRef::ZERO, v);
                    out.push(self.intern(Default::Zero, map)?);
                    break;
                }
            }
        }
        for &g in &out {
            if !self.is_local_inverse(g, f)? {
                return Err(FlowError::NoLocalInverse(f));
            }
        }
        Ok(out)
    }

    /// `∀t: (g[t] ⇒ f(g(t)) = t) ∧ (f[t] ⇒ g(f(t)) = t)`, checked at every
    /// point where either side is not 0̲.
    pub fn is_local_inverse(&mut self, g: TermRef, f: TermRef) -> Result<bool> {
        for (t, gt) in self.action_graph(g)? {
            if self.evaluate(f, gt)? != t {
                return Ok(false);
            }
        }
        for (t, ft) in self.action_graph(f)? {
            if self.evaluate(g, ft)? != t {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Action points with their images, including 0̲ when it is acted on.
    fn action_graph(&mut self, f: TermRef) -> Result<Vec<(TermRef, TermRef)>> {
        self.check(f)?;
        if !self.has_finite_action(f) {
            return Err(FlowError::CofiniteSupport {
                term: f,
                co_action: self.co_action(f)?,
            });
        }
        let mut out = Vec::new();
        for k in self.support(f)? {
            out.push((k, self.evaluate(f, k)?));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PredicateExpr;

    #[test]
    fn zero_acting_example_has_two_inverses() {
        let mut u = Universe::new();
        let p5 = u.phi(5).unwrap();
        let p6 = u.phi(6).unwrap();
        let f = u
            .intern(Default::Zero, BTreeMap::from([(TermRef::ZERO, p5), (p5, p6)]))
            .unwrap();
        let inv = u.local_inverses(f).unwrap();
        let h = u.arrow(&[(p6, p5)]).unwrap();
        let g = u.arrow(&[(TermRef::ZERO, p6), (p6, p5)]).unwrap();
        assert_eq!(inv, vec![h, g]);
    }

    #[test]
    fn doubling_map() {
        let mut u = Universe::new();
        let p: Vec<_> = (0..7).map(|n| u.phi(n).unwrap()).collect();
        let f = u.arrow(&[(p[1], p[2]), (p[2], p[4]), (p[3], p[6])]).unwrap();
        let inv = u.local_inverses(f).unwrap();
        let expect = u.arrow(&[(p[2], p[1]), (p[4], p[2]), (p[6], p[3])]).unwrap();
        assert_eq!(inv[0], expect);
        for g in inv {
            assert!(u.is_local_inverse(g, f).unwrap());
        }
    }

    #[test]
    fn restrictions_of_one_invert_themselves() {
        let mut u = Universe::new();
        let p2 = u.phi(2).unwrap();
        let p4 = u.phi(4).unwrap();
        let g = u
            .restrict(TermRef::ONE, &PredicateExpr::one_of(&[p2, p4]))
            .unwrap();
        assert_eq!(u.local_inverses(g).unwrap(), vec![g]);
        assert_eq!(u.local_inverses(p4).unwrap(), vec![p4]);
    }

    #[test]
    fn collapsing_map_has_none() {
        let mut u = Universe::new();
        let p1 = u.phi(1).unwrap();
        let p2 = u.phi(2).unwrap();
        let f = u.arrow(&[(TermRef::PHI0, p2), (p1, p2)]).unwrap();
        assert!(!u.is_locally_injective(f).unwrap());
        assert_eq!(u.local_inverses(f), Err(FlowError::NoLocalInverse(f)));
    }
}
