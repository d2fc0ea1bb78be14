use std::collections::{BTreeMap, BTreeSet};

use crate::error::{FlowError, Result};
use crate::kernel::{Behavior, Default, TermRef, Universe};

impl Universe {
    /// Union of the members of `carrier` (the terms it acts on).
    pub fn union(&mut self, carrier: TermRef) -> Result<TermRef> {
        let members = self.carrier_members(carrier)?;
        self.union_members(&members)
    }

    /// Union over an explicit member list, through the structure-free
    /// carrier acting on exactly those members.
    pub fn union_of(&mut self, members: &[TermRef]) -> Result<TermRef> {
        let carrier = self.carrier_for(members)?;
        self.union(carrier)
    }

    /// Restriction of the union to points where every member acts.
    pub fn intersection(&mut self, carrier: TermRef) -> Result<TermRef> {
        let members = self.carrier_members(carrier)?;
        let u = self.union_members(&members)?;
        if members.is_empty() {
            return Ok(u);
        }
        let mut map = BTreeMap::new();
        let points: Vec<(TermRef, TermRef)> = self.exceptions_of(u).iter().map(|(&k, &v)| (k, v)).collect();
        for (t, v) in points {
            let mut all = true;
            for &m in &members {
                if !self.acts_on(m, t)? {
                    all = false;
                    break;
                }
            }
            if all {
                map.insert(t, v);
            }
        }
        let cand = self.normalize(Default::Zero, map)?;
        self.resolve(cand, &[])
    }

    pub fn intersection_of(&mut self, members: &[TermRef]) -> Result<TermRef> {
        let carrier = self.carrier_for(members)?;
        self.intersection(carrier)
    }

    /// `Zero{m→m}` over the given members.
    pub fn carrier_for(&mut self, members: &[TermRef]) -> Result<TermRef> {
        let map: BTreeMap<TermRef, TermRef> = members.iter().map(|&m| (m, m)).collect();
        if map.contains_key(&TermRef::ZERO) {
            return Err(FlowError::Precondition("0̲ cannot be a member".into()));
        }
        self.intern(Default::Zero, map)
    }

    fn carrier_members(&mut self, carrier: TermRef) -> Result<Vec<TermRef>> {
        self.check(carrier)?;
        if carrier == TermRef::ZERO {
            return Err(FlowError::Precondition("union over 0̲".into()));
        }
        if !self.has_finite_action(carrier) {
            return Err(FlowError::CofiniteSupport {
                term: carrier,
                co_action: self.co_action(carrier)?,
            });
        }
        self.support(carrier)
    }

    fn union_members(&mut self, members: &[TermRef]) -> Result<TermRef> {
        let key: Vec<TermRef> = members
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if let Some(&u) = self.memo.union.get(&key) {
            return Ok(u);
        }
        for &m in &key {
            if self.successor(m)? == TermRef::ZERO {
                return Err(FlowError::Precondition(format!("member {m} has successor 0̲")));
            }
            if !self.has_finite_action(m) {
                return Err(FlowError::CofiniteSupport {
                    term: m,
                    co_action: self.co_action(m)?,
                });
            }
        }
        let points: BTreeSet<TermRef> = key
            .iter()
            .flat_map(|&m| self.exceptions_of(m).keys().copied().collect::<Vec<_>>())
            .collect();
        let mut map = BTreeMap::new();
        for t in points {
            let mut value: Option<TermRef> = None;
            let mut clash = false;
            for &m in &key {
                if !self.acts_on(m, t)? {
                    continue;
                }
                let v = self.evaluate(m, t)?;
                match value {
                    None => value = Some(v),
                    Some(w) if w != v => clash = true,
                    _ => {}
                }
            }
            if let (Some(v), false) = (value, clash) {
                map.insert(t, v);
            }
        }
        let cand: Behavior = self.normalize(Default::Zero, map)?;
        let u = self.resolve(cand, &[])?;
        self.memo.union.insert(key, u);
        Ok(u)
    }

    /// Whether `u` satisfies the `σ_u ≠ 0̲` clause of the union axiom.
    pub fn union_has_successor(&mut self, u: TermRef) -> Result<bool> {
        Ok(self.successor(u)? != TermRef::ZERO)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_of_two_arrows() {
        let mut u = Universe::new();
        let (p0, p1, p2) = (TermRef::PHI0, u.phi(1).unwrap(), u.phi(2).unwrap());
        let g = u.arrow(&[(p0, p1), (p1, p0), (p2, p1)]).unwrap();
        let h = u.arrow(&[(p0, p2), (p1, p0), (p2, p1)]).unwrap();
        let un = u.union_of(&[g, h]).unwrap();
        assert_eq!(
            u.behavior(un).unwrap().exceptions,
            BTreeMap::from([(p1, p0), (p2, p1)])
        );
        assert_eq!(u.evaluate(un, p0).unwrap(), TermRef::ZERO);
        assert!(u.union_has_successor(un).unwrap());
    }

    #[test]
    fn union_depends_only_on_members() {
        let mut u = Universe::new();
        let p2 = u.phi(2).unwrap();
        let p3 = u.phi(3).unwrap();
        let c1 = u.carrier_for(&[p2, p3]).unwrap();
        let c2 = u.arrow(&[(p2, p3), (p3, p2)]).unwrap();
        assert_ne!(c1, c2);
        assert_eq!(u.union(c2).unwrap(), u.union(c1).unwrap());
        let a = u.union(c1).unwrap();
        let b = u.union_of(&[p3, p2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, p3);
    }

    #[test]
    fn singleton_union_and_intersection() {
        let mut u = Universe::new();
        let p1 = u.phi(1).unwrap();
        let p2 = u.phi(2).unwrap();
        assert_eq!(u.union_of(&[p2]).unwrap(), p2);
        assert_eq!(u.intersection_of(&[p2, p1]).unwrap(), p1);
        assert_eq!(u.union_of(&[]).unwrap(), TermRef::PHI0);
    }

    #[test]
    fn member_without_successor_is_rejected() {
        let mut u = Universe::new();
        assert!(matches!(
            u.union_of(&[TermRef::ONE]),
            Err(FlowError::Precondition(_))
        ));
    }
}
