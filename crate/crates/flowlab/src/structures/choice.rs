use std::collections::BTreeMap;

use crate::error::{FlowError, Result};
use crate::kernel::{Default, TermRef, Universe};

/// Order in which a choice function prefers action points.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, std::default::Default)]
pub enum ChoiceOrder {
    #[default]
    Id,
    ReverseId,
}

impl ChoiceOrder {
    fn sort(self, v: &mut [TermRef]) {
        v.sort();
        if self == ChoiceOrder::ReverseId {
            v.reverse();
        }
    }
}

impl Universe {
    /// The choice function of `f` under id order.
    pub fn choice(&mut self, f: TermRef) -> Result<TermRef> {
        self.choice_by(f, ChoiceOrder::Id)
    }

    /// Picks one action point per member of `f`, every point distinct,
    /// preferring earlier points in `order`.
    pub fn choice_by(&mut self, f: TermRef, order: ChoiceOrder) -> Result<TermRef> {
        self.check(f)?;
        if let Some(&c) = self.memo.choice.get(&(f, order)) {
            return Ok(c);
        }
        let mut members = self.support(f)?;
        order.sort(&mut members);
        let mut actions: Vec<Vec<TermRef>> = Vec::new();
        for &m in &members {
            if m == TermRef::PHI0 || !self.has_finite_action(m) {
                return Err(FlowError::ChoiceHypothesisFailed { x: m, y: m });
            }
            let mut pts = self.support(m)?;
            order.sort(&mut pts);
            actions.push(pts);
        }
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                for &s in &actions[i] {
                    if s == y {
                        continue;
                    }
                    let xs = self.evaluate(x, s)?;
                    if xs != TermRef::ZERO && self.evaluate(y, s)? == xs {
                        return Err(FlowError::ChoiceHypothesisFailed { x, y });
                    }
                }
            }
        }

        // Augmenting-path matching of members to distinct points.
        let mut owner: BTreeMap<TermRef, usize> = BTreeMap::new();
        for i in 0..members.len() {
            let mut seen = Vec::new();
            if !augment(i, &actions, &mut owner, &mut seen) {
                let y = actions[i]
                    .iter()
                    .find_map(|p| owner.get(p))
                    .map_or(members[i], |&j| members[j]);
                return Err(FlowError::ChoiceHypothesisFailed { x: members[i], y });
            }
        }
        let mut map = BTreeMap::new();
        for (p, i) in owner {
            let v = self.evaluate(members[i], p)?;
            map.insert(p, v);
        }
        let c = self.intern(Default::Zero, map)?;
        self.memo.choice.insert((f, order), c);
        Ok(c)
    }
}

fn augment(
    i: usize,
    actions: &[Vec<TermRef>],
    owner: &mut BTreeMap<TermRef, usize>,
    seen: &mut Vec<TermRef>,
) -> bool {
    for &p in &actions[i] {
        if seen.contains(&p) {
            continue;
        }
        seen.push(p);
        let free = match owner.get(&p) {
            None => true,
            Some(&j) => augment(j, actions, owner, seen),
        };
        if free {
            owner.insert(p, i);
            return true;
        }
    }
    false
}
