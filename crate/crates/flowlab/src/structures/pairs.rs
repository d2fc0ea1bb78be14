use std::collections::BTreeMap;

use crate::algebra::PredicateExpr;
use crate::error::{FlowError, Result};
use crate::kernel::{Default, TermRef, Universe};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairKind {
    /// `α ≠ b`: the Kuratowski-like shape.
    FirstKind,
    /// `α = b`, e.g. `(φ₀, φ₁)`.
    SecondKind,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PairDecomposition {
    pub first: TermRef,
    pub second: TermRef,
    pub alpha: TermRef,
    pub beta: TermRef,
    pub kind: PairKind,
}

impl Universe {
    /// `(a, b)`: built from three restrictions of 1̲.
    pub fn make_pair(&mut self, a: TermRef, b: TermRef) -> Result<TermRef> {
        self.check(a)?;
        self.check(b)?;
        for t in [a, b] {
            if t == TermRef::ZERO || t == TermRef::ONE {
                return Err(FlowError::Precondition(format!(
                    "pair coordinate {} must differ from 0̲ and 1̲",
                    self.name(t)
                )));
            }
        }
        let alpha = self.restrict(TermRef::ONE, &PredicateExpr::eq(a))?;
        let beta = self.restrict(TermRef::ONE, &PredicateExpr::one_of(&[a, b]))?;
        self.restrict(TermRef::ONE, &PredicateExpr::one_of(&[alpha, beta]))
    }

    pub fn decompose_pair(&self, f: TermRef) -> Result<PairDecomposition> {
        self.check(f)?;
        let not_pair = || FlowError::NotAPair(f);
        let sig = self.signature(f)?;
        if !sig.default.is_zero() || !sig.exceptions.iter().all(|(k, v)| k == v) {
            return Err(not_pair());
        }
        let singleton = |t: TermRef| -> Option<TermRef> {
            let s = self.signature(t).ok()?;
            match (s.default.is_zero(), s.exceptions.len()) {
                (true, 1) => {
                    let (&k, &v) = s.exceptions.iter().next()?;
                    (k == v).then_some(k)
                }
                _ => None,
            }
        };
        let keys: Vec<TermRef> = sig.exceptions.keys().copied().collect();
        let (alpha, beta, a, b) = match keys.as_slice() {
            [x] => {
                let a = singleton(*x).ok_or_else(not_pair)?;
                (*x, *x, a, a)
            }
            [x, y] => {
                let (alpha, beta, a) = match (singleton(*x), singleton(*y)) {
                    (Some(a), _) if self.is_doubleton_over(*y, a) => (*x, *y, a),
                    (_, Some(a)) if self.is_doubleton_over(*x, a) => (*y, *x, a),
                    _ => return Err(not_pair()),
                };
                let b = self
                    .exceptions_of(beta)
                    .keys()
                    .copied()
                    .find(|&k| k != a)
                    .ok_or_else(not_pair)?;
                (alpha, beta, a, b)
            }
            _ => return Err(not_pair()),
        };
        if [a, b].iter().any(|&t| t == TermRef::ZERO || t == TermRef::ONE) {
            return Err(not_pair());
        }
        let kind = if alpha == b {
            PairKind::SecondKind
        } else {
            PairKind::FirstKind
        };
        Ok(PairDecomposition {
            first: a,
            second: b,
            alpha,
            beta,
            kind,
        })
    }

    fn is_doubleton_over(&self, t: TermRef, a: TermRef) -> bool {
        match self.signature(t) {
            Ok(s) => {
                s.default.is_zero()
                    && s.exceptions.len() == 2
                    && s.exceptions.get(&a) == Some(&a)
                    && s.exceptions.iter().all(|(k, v)| k == v)
            }
            Err(_) => false,
        }
    }

    /// `l ⊗ m`: acts on `(a, b)` for every `a` in `l` and `b` in `m`.
    pub fn trivial_product(&mut self, l: TermRef, m: TermRef) -> Result<TermRef> {
        self.check_factor(l)?;
        self.check_factor(m)?;
        if let Some(&p) = self.memo.product.get(&(l, m)) {
            return Ok(p);
        }
        let (sl, sm) = (self.support(l)?, self.support(m)?);
        let mut map = BTreeMap::new();
        for &a in &sl {
            for &b in &sm {
                let p = self.make_pair(a, b)?;
                map.insert(p, p);
            }
        }
        let p = self.intern(Default::Zero, map)?;
        self.memo.product.insert((l, m), p);
        Ok(p)
    }

    fn check_factor(&mut self, t: TermRef) -> Result<()> {
        self.check(t)?;
        if t == TermRef::ZERO || t == TermRef::PHI0 {
            return Err(FlowError::Precondition(format!(
                "product factor {} must differ from 0̲ and φ₀",
                self.name(t)
            )));
        }
        if !self.has_finite_action(t) {
            return Err(FlowError::CofiniteSupport {
                term: t,
                co_action: self.co_action(t)?,
            });
        }
        Ok(())
    }

    /// `f ⊆ l ⊗ m`.
    pub fn is_relation(&mut self, f: TermRef, l: TermRef, m: TermRef) -> Result<bool> {
        let p = self.trivial_product(l, m)?;
        self.is_subfunction(f, p)
    }

    /// `T_{l→m}(g)`: a relation that is total and single-valued on `l`.
    pub fn is_trivially_arbitrary(&mut self, g: TermRef, l: TermRef, m: TermRef) -> Result<bool> {
        if !self.is_relation(g, l, m)? {
            return Ok(false);
        }
        let graph = match self.pair_graph(g) {
            Ok(gr) => gr,
            Err(FlowError::NotAPair(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        for a in self.support(l)? {
            if graph.iter().filter(|(x, _)| *x == a).count() != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The `(a, b)` coordinates of every pair a finite term acts on, in
    /// support order.
    pub fn pair_graph(&mut self, f: TermRef) -> Result<Vec<(TermRef, TermRef)>> {
        if !self.has_finite_action(f) {
            return Err(FlowError::CofiniteSupport {
                term: f,
                co_action: self.co_action(f)?,
            });
        }
        let mut out = Vec::new();
        for p in self.support(f)? {
            let d = self.decompose_pair(p)?;
            out.push((d.first, d.second));
        }
        Ok(out)
    }

    /// Structure-free term acting on the pairs of a graph.
    pub fn relation(&mut self, graph: &[(TermRef, TermRef)]) -> Result<TermRef> {
        let mut map = BTreeMap::new();
        for &(a, b) in graph {
            let p = self.make_pair(a, b)?;
            map.insert(p, p);
        }
        self.intern(Default::Zero, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_kinds() {
        let mut u = Universe::new();
        let p1 = u.phi(1).unwrap();
        let f = u.make_pair(p1, TermRef::PHI0).unwrap();
        let d = u.decompose_pair(f).unwrap();
        assert_eq!(
            (d.first, d.second, d.kind),
            (p1, TermRef::PHI0, PairKind::FirstKind)
        );
        let g = u.make_pair(TermRef::PHI0, p1).unwrap();
        let d = u.decompose_pair(g).unwrap();
        assert_eq!(
            (d.first, d.second, d.kind),
            (TermRef::PHI0, p1, PairKind::SecondKind)
        );
        assert!(!u.acts_on(f, p1).unwrap());
    }

    #[test]
    fn diagonal_pair_acts_once() {
        let mut u = Universe::new();
        let p2 = u.phi(2).unwrap();
        let f = u.make_pair(p2, p2).unwrap();
        assert_eq!(u.support(f).unwrap().len(), 1);
        let d = u.decompose_pair(f).unwrap();
        assert_eq!(d.alpha, d.beta);
    }

    #[test]
    fn non_pairs() {
        let mut u = Universe::new();
        let p3 = u.phi(3).unwrap();
        assert_eq!(u.decompose_pair(p3), Err(FlowError::NotAPair(p3)));
        assert!(u.make_pair(TermRef::ONE, p3).is_err());
    }

    #[test]
    fn products() {
        let mut u = Universe::new();
        let p1 = u.phi(1).unwrap();
        let p2 = u.phi(2).unwrap();
        let p3 = u.phi(3).unwrap();
        let a = u.trivial_product(p3, p2).unwrap();
        assert_eq!(u.support(a).unwrap().len(), 6);
        let b = u.trivial_product(p2, p3).unwrap();
        assert_ne!(a, b);
        let c = u.trivial_product(p1, p1).unwrap();
        assert_eq!(u.support(c).unwrap().len(), 1);
        assert!(u.is_relation(a, p3, p2).unwrap());
        assert!(!u.is_trivially_arbitrary(a, p3, p2).unwrap());
        assert!(u.is_relation(TermRef::PHI0, p3, p2).unwrap());
    }

    #[test]
    fn trivially_arbitrary_relation() {
        let mut u = Universe::new();
        let (p0, p1, p2) = (TermRef::PHI0, u.phi(1).unwrap(), u.phi(2).unwrap());
        let p3 = u.phi(3).unwrap();
        let f = u.relation(&[(p0, p1), (p1, p0), (p2, p1)]).unwrap();
        assert!(u.is_trivially_arbitrary(f, p3, p2).unwrap());
    }
}
