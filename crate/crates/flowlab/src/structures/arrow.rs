use std::collections::BTreeMap;

use crate::error::{FlowError, Result};
use crate::kernel::{Default, TermRef, Universe};

impl Universe {
    /// The structure-free-default term with exactly the given graph.
    pub fn arrow(&mut self, graph: &[(TermRef, TermRef)]) -> Result<TermRef> {
        let mut map = BTreeMap::new();
        for &(k, v) in graph {
            self.check(k)?;
            self.check(v)?;
            if v == TermRef::ZERO {
                return Err(FlowError::Precondition(format!(
                    "arrow maps {} to 0̲",
                    self.name(k)
                )));
            }
            if let Some(&w) = map.get(&k) {
                if w != v {
                    return Err(FlowError::Precondition(format!(
                        "arrow graph is not single-valued at {}",
                        self.name(k)
                    )));
                }
            }
            map.insert(k, v);
        }
        self.intern(Default::Zero, map)
    }

    /// Decodes a pair-encoded function and builds its arrow.
    pub fn arrow_from_pairs(&mut self, f: TermRef) -> Result<TermRef> {
        let graph = self.pair_graph(f)?;
        self.arrow(&graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrow_from_relation() {
        let mut u = Universe::new();
        let (p0, p1, p2) = (TermRef::PHI0, u.phi(1).unwrap(), u.phi(2).unwrap());
        let f = u.relation(&[(p0, p1), (p1, p0), (p2, p1)]).unwrap();
        let g = u.arrow_from_pairs(f).unwrap();
        assert_eq!(u.evaluate(g, p0).unwrap(), p1);
        assert_eq!(u.evaluate(g, p1).unwrap(), p0);
        assert_eq!(u.evaluate(g, p2).unwrap(), p1);
        assert_eq!(u.support(g).unwrap(), vec![p0, p1, p2]);
    }

    #[test]
    fn empty_and_rejected_graphs() {
        let mut u = Universe::new();
        let p1 = u.phi(1).unwrap();
        let p2 = u.phi(2).unwrap();
        assert_eq!(u.arrow(&[]).unwrap(), TermRef::PHI0);
        assert!(u.arrow(&[(p1, p2), (p1, p1)]).is_err());
        assert!(u.arrow(&[(p1, TermRef::ZERO)]).is_err());
        let bad = u.relation(&[(p1, p1), (p1, p2)]).unwrap();
        assert!(u.arrow_from_pairs(bad).is_err());
    }

    #[test]
    fn finite_slice_of_lambda() {
        let mut u = Universe::new();
        let graph: Vec<_> = (0..6)
            .map(|n| (u.phi(n).unwrap(), u.phi(n + 1).unwrap()))
            .collect();
        let g = u.arrow(&graph).unwrap();
        for (k, _) in graph {
            assert_eq!(u.evaluate(g, k).unwrap(), u.evaluate(TermRef::LAMBDA, k).unwrap());
        }
    }
}
