use std::collections::{BTreeMap, BTreeSet};

use crate::error::{FlowError, Result};
use crate::kernel::{TermRef, Universe};

impl Universe {
    /// A bijection `r → s` from injections `f: r → s` and `g: s → r`, all
    /// pair-encoded. Chains that start in `r` or cycle use `f`; chains
    /// that start in `s` use `g⁻¹`.
    pub fn csb(&mut self, f: TermRef, g: TermRef, r: TermRef, s: TermRef) -> Result<TermRef> {
        let fmap = self.injection(f, r, s, "f")?;
        let gmap = self.injection(g, s, r, "g")?;
        let finv: BTreeMap<TermRef, TermRef> = fmap.iter().map(|(&a, &b)| (b, a)).collect();
        let ginv: BTreeMap<TermRef, TermRef> = gmap.iter().map(|(&a, &b)| (b, a)).collect();

        let mut graph = Vec::new();
        for &a in fmap.keys() {
            let b = if starts_in_s(a, &finv, &ginv) {
                ginv[&a]
            } else {
                fmap[&a]
            };
            graph.push((a, b));
        }
        self.relation(&graph)
    }

    /// Whether `h` is a bijection from `r` onto `s`.
    pub fn is_bijection(&mut self, h: TermRef, r: TermRef, s: TermRef) -> Result<bool> {
        if !self.is_trivially_arbitrary(h, r, s)? {
            return Ok(false);
        }
        let images: BTreeSet<TermRef> = self.pair_graph(h)?.into_iter().map(|(_, b)| b).collect();
        let target: BTreeSet<TermRef> = self.support(s)?.into_iter().collect();
        Ok(images == target && images.len() == self.support(r)?.len())
    }

    fn injection(
        &mut self,
        f: TermRef,
        r: TermRef,
        s: TermRef,
        label: &str,
    ) -> Result<BTreeMap<TermRef, TermRef>> {
        if !self.is_trivially_arbitrary(f, r, s)? {
            return Err(FlowError::Precondition(format!(
                "{label} is not a function from {} to {}",
                self.name(r),
                self.name(s)
            )));
        }
        let map: BTreeMap<TermRef, TermRef> = self.pair_graph(f)?.into_iter().collect();
        let images: BTreeSet<TermRef> = map.values().copied().collect();
        if images.len() != map.len() {
            return Err(FlowError::Precondition(format!("{label} is not injective")));
        }
        Ok(map)
    }
}

/// Walks `a ← g ← f ← g ...` backwards; true when the walk ends at an
/// element of `s` with no `f`-preimage.
fn starts_in_s(a: TermRef, finv: &BTreeMap<TermRef, TermRef>, ginv: &BTreeMap<TermRef, TermRef>) -> bool {
    let mut x = a;
    let mut seen = BTreeSet::new();
    loop {
        if !seen.insert(x) {
            return false;
        }
        let Some(&b) = ginv.get(&x) else {
            return false;
        };
        let Some(&y) = finv.get(&b) else {
            return true;
        };
        x = y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phis(u: &mut Universe, n: u64) -> Vec<TermRef> {
        (0..n).map(|i| u.phi(i).unwrap()).collect()
    }

    #[test]
    fn identity_gives_identity() {
        let mut u = Universe::new();
        let p = phis(&mut u, 2);
        let c = u.phi(2).unwrap();
        let id = u.relation(&[(p[0], p[0]), (p[1], p[1])]).unwrap();
        assert_eq!(u.csb(id, id, c, c).unwrap(), id);
    }

    #[test]
    fn rotations() {
        let mut u = Universe::new();
        let p = phis(&mut u, 3);
        let c = u.phi(3).unwrap();
        let f = u.relation(&[(p[0], p[1]), (p[1], p[2]), (p[2], p[0])]).unwrap();
        let g = u.relation(&[(p[0], p[2]), (p[1], p[0]), (p[2], p[1])]).unwrap();
        let h = u.csb(f, g, c, c).unwrap();
        assert!(u.is_bijection(h, c, c).unwrap());
        assert_eq!(h, f);
    }

    #[test]
    fn rejects_non_injective() {
        let mut u = Universe::new();
        let p = phis(&mut u, 2);
        let c = u.phi(2).unwrap();
        let f = u.relation(&[(p[0], p[0]), (p[1], p[0])]).unwrap();
        let id = u.relation(&[(p[0], p[0]), (p[1], p[1])]).unwrap();
        assert!(matches!(u.csb(f, id, c, c), Err(FlowError::Precondition(_))));
    }
}
