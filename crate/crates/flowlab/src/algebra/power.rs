use std::collections::BTreeMap;

use super::predicate::SUBMAP_LIMIT;
use crate::error::{FlowError, Result};
use crate::kernel::{Default, TermRef, Universe};

impl Universe {
    /// The structure-free term acting exactly on the restrictions of `f`.
    pub fn power(&mut self, f: TermRef) -> Result<TermRef> {
        self.check(f)?;
        if f == TermRef::ZERO {
            return Err(FlowError::Precondition("power of 0̲".into()));
        }
        if !self.has_finite_action(f) {
            return Err(FlowError::CofiniteSupport {
                term: f,
                co_action: self.co_action(f)?,
            });
        }
        if let Some(&p) = self.memo.power.get(&f) {
            return Ok(p);
        }
        let n = self.exceptions_of(f).len();
        if n > SUBMAP_LIMIT {
            return Err(FlowError::Precondition(format!(
                "{f} has {n} action points; power enumerates at most {SUBMAP_LIMIT}"
            )));
        }
        let map: BTreeMap<TermRef, TermRef> = self.submaps(f)?.into_iter().map(|s| (s, s)).collect();
        let p = self.intern(Default::Zero, map)?;
        self.memo.power.insert(f, p);
        Ok(p)
    }
}
