use std::collections::BTreeSet;

use super::term::{Default, TermRef};
use super::universe::Universe;
use crate::error::{FlowError, Result};

impl Universe {
    /// `f(x)`. The self-point always wins: `f(f) = f`.
    pub fn evaluate(&mut self, f: TermRef, x: TermRef) -> Result<TermRef> {
        self.check(f)?;
        self.check(x)?;
        if f == x {
            return Ok(f);
        }
        if let Some(&v) = self.behavior(f)?.exceptions.get(&x) {
            return Ok(v);
        }
        let d = self.default_of(f);
        self.default_value(&d, x)
    }

    pub fn equals(&self, f: TermRef, g: TermRef) -> bool {
        f == g
    }

    /// Agreement at every point except `f` and `g`, decided on the
    /// descriptors: equal defaults and matching exceptions off `{f, g}`.
    pub fn similar(&mut self, f: TermRef, g: TermRef) -> Result<bool> {
        self.check(f)?;
        self.check(g)?;
        if f == g {
            return Ok(true);
        }
        let (bf, bg) = (self.signature(f)?.clone(), self.signature(g)?.clone());
        if bf.default != bg.default {
            return Ok(false);
        }
        let keys: BTreeSet<TermRef> = bf
            .exceptions
            .keys()
            .chain(bg.exceptions.keys())
            .copied()
            .filter(|&k| k != f && k != g)
            .collect();
        for k in keys {
            if self.evaluate(f, k)? != self.evaluate(g, k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `f[t]`: `t ≠ f` and `f(t) ≠ 0̲`.
    pub fn acts_on(&mut self, f: TermRef, t: TermRef) -> Result<bool> {
        Ok(t != f && self.evaluate(f, t)? != TermRef::ZERO)
    }

    /// Terms `f` acts on, sorted by id. Rule terms are scanned over the
    /// registry as it stands when the call starts.
    pub fn support(&mut self, f: TermRef) -> Result<Vec<TermRef>> {
        self.check(f)?;
        match self.default_of(f) {
            Default::Zero => Ok(self
                .exceptions_of(f)
                .iter()
                .filter(|(&k, &v)| k != f && v != TermRef::ZERO)
                .map(|(&k, _)| k)
                .collect()),
            Default::Rule { .. } => {
                let n = self.len() as u32;
                let mut out = Vec::new();
                for t in (0..n).map(TermRef) {
                    if self.acts_on(f, t)? {
                        out.push(t);
                    }
                }
                Ok(out)
            }
            _ => Err(FlowError::CofiniteSupport {
                term: f,
                co_action: self.co_action(f)?,
            }),
        }
    }

    /// Known points an infinite-action term does not act on: the
    /// zero-valued exceptions, 0̲ when the default sends it to 0̲, and the
    /// self-point.
    pub fn co_action(&mut self, f: TermRef) -> Result<Vec<TermRef>> {
        let mut out: BTreeSet<TermRef> = self
            .exceptions_of(f)
            .iter()
            .filter(|(_, &v)| v == TermRef::ZERO)
            .map(|(&k, _)| k)
            .collect();
        if self.evaluate(f, TermRef::ZERO)? == TermRef::ZERO {
            out.insert(TermRef::ZERO);
        }
        out.insert(f);
        Ok(out.into_iter().collect())
    }

    /// True when the action of `f` is a finite set independent of the
    /// registry.
    pub fn has_finite_action(&self, f: TermRef) -> bool {
        matches!(self.default_of(f), Default::Zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bootstrap_evaluation() {
        let mut u = Universe::new();
        let p3 = u.phi(3).unwrap();
        assert_eq!(u.evaluate(TermRef::ONE, p3).unwrap(), p3);
        assert_eq!(
            u.evaluate(TermRef::SIGMA, TermRef::SIGMA).unwrap(),
            TermRef::SIGMA
        );
        assert_eq!(u.evaluate(TermRef::SIGMA, TermRef::ZERO).unwrap(), TermRef::PHI0);
        assert_eq!(u.evaluate(TermRef::SIGMA, TermRef::ONE).unwrap(), TermRef::ZERO);
        assert_eq!(u.evaluate(TermRef::SIGMA, TermRef::PSI).unwrap(), TermRef::ONE);
        let p4 = u.phi(4).unwrap();
        assert_eq!(u.evaluate(TermRef::LAMBDA, p3).unwrap(), p4);
        let p9 = u.phi(9).unwrap();
        assert_eq!(u.evaluate(TermRef::OMEGA, p9).unwrap(), p9);
        assert_eq!(u.evaluate(TermRef::OMEGA, TermRef::ONE).unwrap(), TermRef::ZERO);
    }

    #[test]
    fn similarity_of_privileged_pairs() {
        let mut u = Universe::new();
        assert!(u.similar(TermRef::ZERO, TermRef::PHI0).unwrap());
        assert!(u.similar(TermRef::ONE, TermRef::PSI).unwrap());
        assert!(!u.equals(TermRef::ONE, TermRef::PSI));
        assert!(!u.similar(TermRef::ZERO, TermRef::ONE).unwrap());
    }

    #[test]
    fn support_of_numerals() {
        let mut u = Universe::new();
        let p2 = u.phi(2).unwrap();
        let p1 = u.phi(1).unwrap();
        assert_eq!(u.support(p2).unwrap(), vec![TermRef::PHI0, p1]);
        assert!(u.support(TermRef::PHI0).unwrap().is_empty());
        assert!(matches!(
            u.support(TermRef::ONE),
            Err(FlowError::CofiniteSupport { .. })
        ));
        assert!(!u.acts_on(p2, p2).unwrap());
    }

    #[test]
    fn unregistered_terms_are_rejected() {
        let mut u = Universe::new();
        assert_eq!(
            u.evaluate(TermRef::from_id(999), TermRef::ONE),
            Err(FlowError::UnregisteredTerm(999))
        );
    }
}
