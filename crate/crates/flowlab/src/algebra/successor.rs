use std::collections::BTreeMap;

use crate::error::Result;
use crate::kernel::{Default, TermRef, Universe};

impl Universe {
    /// `σ_f`, or 0̲ when `f` has no successor.
    pub fn successor(&mut self, f: TermRef) -> Result<TermRef> {
        self.check(f)?;
        if f == TermRef::SIGMA {
            return Ok(TermRef::SIGMA);
        }
        if let Some(&s) = self.memo.successor.get(&f) {
            return Ok(s);
        }
        let s = self.successor_uncached(f)?;
        self.memo.successor.insert(f, s);
        Ok(s)
    }

    fn successor_uncached(&mut self, f: TermRef) -> Result<TermRef> {
        let sig = self.signature(f)?.clone();
        match &sig.default {
            // the clone check would itself need σ at the clone
            d if d.mentions_successor() => return Ok(TermRef::ZERO),
            // coherence: a non-0̲ successor would make f a ZF-set acting on itself
            Default::Filter(p) if p.implies_zf_set() => return Ok(TermRef::ZERO),
            _ => {}
        }

        let mut map = sig.exceptions.clone();
        map.insert(f, f);
        let clone = self.intern(sig.default.clone(), map)?;
        if clone != f && self.evaluate(f, clone)? == TermRef::ZERO {
            return Ok(clone);
        }
        if sig.default.is_zero() {
            self.mark_degenerate(f);
            return Ok(TermRef::ZERO);
        }

        // A zero-mapped exception point k whose own behavior is f's with k
        // removed and f fixed.
        for (&k, &v) in &sig.exceptions {
            if v != TermRef::ZERO || k == f {
                continue;
            }
            let mut rest: BTreeMap<TermRef, TermRef> = sig.exceptions.clone();
            rest.remove(&k);
            rest.insert(f, f);
            let target = self.normalize(sig.default.clone(), rest)?;
            if self.signature(k)? == &target {
                return Ok(k);
            }
        }
        Ok(TermRef::ZERO)
    }

    /// Every term whose successor is `t`, including ones that are interned
    /// here for the first time. Never called with `t = 0̲`, whose preimage
    /// is unbounded.
    pub(crate) fn successor_preimages(&mut self, t: TermRef) -> Result<Vec<TermRef>> {
        debug_assert_ne!(t, TermRef::ZERO);
        let mut cands = Vec::new();
        if t == TermRef::SIGMA {
            cands.push(TermRef::SIGMA);
        }
        if t == TermRef::PHI0 {
            cands.push(TermRef::ZERO);
        }
        let sig = self.signature(t)?.clone();
        for (&k, &v) in &sig.exceptions {
            if k == v {
                cands.push(k);
            }
        }
        if !sig.default.is_zero() {
            let mut map = sig.exceptions.clone();
            map.insert(t, TermRef::ZERO);
            cands.push(self.intern(sig.default.clone(), map)?);
        }
        let mut out = Vec::new();
        for y in cands {
            if !out.contains(&y) && self.successor(y)? == t {
                out.push(y);
            }
        }
        out.sort();
        Ok(out)
    }
}
