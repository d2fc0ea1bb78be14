//! Collection predicates: classes, sets, ZF-sets, proper classes,
//! constants, strict unifiability and bounded inductivity.

use std::collections::BTreeSet;

use crate::error::{FlowError, Result};
use crate::kernel::{Default, OtherPart, PhiPart, TermRef, Universe};

/// Supports up to this size have every sub-map checked for a successor.
/// Larger ones are sampled.
pub const ZF_ENUM_CAP: usize = 8;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classification {
    pub is_class: bool,
    pub is_structure_free: bool,
    pub is_set: bool,
    pub is_zf_set: bool,
    pub is_proper_class: bool,
    pub constant_value: Option<TermRef>,
    /// `None` when the term's action is not enumerable.
    pub strictly_unifiable: Option<bool>,
    /// Checked up to `φ_16` only.
    pub inductive: bool,
}

const INDUCTIVE_BOUND: u64 = 16;

/// `φ_n ↦ φ_n`, 0̲ elsewhere: the default of ω.
fn is_numeral_identity(d: &Default) -> bool {
    matches!(
        d,
        Default::Rule {
            phi: PhiPart::Affine { scale: 1, offset: 0 },
            other: OtherPart::Const(TermRef::ZERO),
        }
    )
}

impl Universe {
    pub fn classify(&mut self, f: TermRef) -> Result<Classification> {
        self.check(f)?;
        let is_class = self.is_class(f)?;
        let is_structure_free = is_class && self.is_structure_free_action(f);
        let set_clause = is_class && self.action_points_have_successors(f)?;
        let is_zf_set = self.is_zf_set(f)?;
        let is_proper_class = is_class && (!set_clause || self.successor(f)? == TermRef::ZERO);
        let strictly_unifiable = match self.is_strictly_unifiable(f) {
            Ok(b) => Some(b),
            Err(FlowError::CofiniteSupport { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(Classification {
            is_class,
            is_structure_free,
            is_set: set_clause,
            is_zf_set,
            is_proper_class,
            constant_value: self.is_constant(f)?,
            strictly_unifiable,
            inductive: self.is_inductive_bounded(f, INDUCTIVE_BOUND)?,
        })
    }

    /// `Col(f)`: `f ≠ 0̲` and every non-0̲ image is acted on. Rule terms are
    /// checked over the registry as it stands.
    pub fn is_class(&mut self, f: TermRef) -> Result<bool> {
        self.check(f)?;
        if f == TermRef::ZERO {
            return Ok(false);
        }
        let sig = self.signature(f)?.clone();
        let mut images: BTreeSet<TermRef> = sig.exceptions.values().copied().collect();
        match &sig.default {
            Default::Zero | Default::Identity | Default::Filter(_) => {}
            Default::Const(c) => {
                images.insert(*c);
            }
            Default::Rule { .. } => {
                for t in self.terms().collect::<Vec<_>>() {
                    if t != f {
                        let v = self.evaluate(f, t)?;
                        images.insert(v);
                    }
                }
            }
        }
        for v in images {
            if v != TermRef::ZERO && v != f && self.evaluate(f, v)? == TermRef::ZERO {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `f(x) ≠ 0̲ ⇒ f(x) = x` everywhere off the self-point.
    pub(crate) fn is_structure_free_action(&self, f: TermRef) -> bool {
        let Ok(sig) = self.signature(f) else {
            return false;
        };
        let default_ok = matches!(
            sig.default,
            Default::Zero | Default::Identity | Default::Filter(_)
        ) || is_numeral_identity(&sig.default);
        default_ok
            && sig
                .exceptions
                .iter()
                .all(|(&k, &v)| k == f || v == k || v == TermRef::ZERO)
    }

    /// `f[x] ⇒ σ_x ≠ 0̲`. Infinite actions that reach the successor-less
    /// restrictions of 1̲ answer `false`.
    fn action_points_have_successors(&mut self, f: TermRef) -> Result<bool> {
        let sig = self.signature(f)?.clone();
        let default_ok = match &sig.default {
            Default::Zero => true,
            Default::Filter(p) => p.implies_zf_set(),
            // acts on numerals only
            Default::Rule {
                other: OtherPart::Const(TermRef::ZERO),
                ..
            } => true,
            _ => false,
        };
        if !default_ok {
            return Ok(false);
        }
        for (&k, &v) in &sig.exceptions {
            if k != f && v != TermRef::ZERO && self.successor(k)? == TermRef::ZERO {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_set(&mut self, f: TermRef) -> Result<bool> {
        Ok(self.is_class(f)? && self.action_points_have_successors(f)?)
    }

    /// `Z(f)`. Sub-maps are enumerated up to [`ZF_ENUM_CAP`] action points
    /// and sampled beyond.
    pub fn is_zf_set(&mut self, f: TermRef) -> Result<bool> {
        self.is_zf_set_with_cap(f, ZF_ENUM_CAP)
    }

    pub fn is_zf_set_with_cap(&mut self, f: TermRef, cap: usize) -> Result<bool> {
        self.check(f)?;
        if let Some(&b) = self.memo.zf.get(&f) {
            return Ok(b);
        }
        let b = self.zf_uncached(f, cap)?;
        self.memo.zf.insert(f, b);
        Ok(b)
    }

    fn zf_uncached(&mut self, f: TermRef, cap: usize) -> Result<bool> {
        if f == TermRef::ZERO || !self.is_structure_free_action(f) {
            return Ok(false);
        }
        let d = self.default_of(f);
        if !(d.is_zero() || is_numeral_identity(&d)) {
            return Ok(false);
        }
        if !self.action_points_have_successors(f)? || self.successor(f)? == TermRef::ZERO {
            return Ok(false);
        }
        if d.is_zero() {
            let n = self.exceptions_of(f).len();
            if n <= cap {
                for g in self.submaps(f)? {
                    if self.successor(g)? == TermRef::ZERO {
                        return Ok(false);
                    }
                }
                return Ok(true);
            }
        }
        // Sampled sub-maps: the singletons and the first few initial
        // segments of the action.
        let pts: Vec<TermRef> = match d {
            Default::Zero => self.support(f)?,
            _ => (0..8).map(|i| self.phi(i)).collect::<Result<_>>()?,
        };
        for (i, &p) in pts.iter().enumerate() {
            for sub in [vec![p], pts[..=i].to_vec()] {
                let map = sub.iter().map(|&x| (x, x)).collect();
                let g = self.intern(Default::Zero, map)?;
                if self.successor(g)? == TermRef::ZERO {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_proper_class(&mut self, f: TermRef) -> Result<bool> {
        Ok(self.is_class(f)?
            && (!self.action_points_have_successors(f)? || self.successor(f)? == TermRef::ZERO))
    }

    /// `x ∈ f`.
    pub fn member_of(&mut self, x: TermRef, f: TermRef) -> Result<bool> {
        self.acts_on(f, x)
    }

    pub fn is_empty_zf_set(&mut self, f: TermRef) -> Result<bool> {
        Ok(self.is_zf_set(f)? && self.support(f)?.is_empty())
    }

    /// The `y` with `f(x) = y` for every `x ≠ f`.
    pub fn is_constant(&mut self, f: TermRef) -> Result<Option<TermRef>> {
        self.is_constant_off(f, &[])
    }

    /// As [`Universe::is_constant`], also ignoring the `exempt` points.
    pub fn is_constant_off(&mut self, f: TermRef, exempt: &[TermRef]) -> Result<Option<TermRef>> {
        self.check(f)?;
        let sig = self.signature(f)?.clone();
        let y = match sig.default {
            Default::Zero => TermRef::ZERO,
            Default::Const(c) => c,
            _ => return Ok(None),
        };
        let uniform = sig
            .exceptions
            .iter()
            .all(|(&k, &v)| k == f || v == y || exempt.contains(&k));
        Ok(uniform.then_some(y))
    }

    /// `U(f)`: any two terms `f` sends away from 0̲ (including `f` itself)
    /// agree wherever both are non-0̲.
    pub fn is_strictly_unifiable(&mut self, f: TermRef) -> Result<bool> {
        self.check(f)?;
        if f == TermRef::ZERO {
            return Ok(false);
        }
        let mut members = self.support(f)?;
        if !self.has_finite_action(f) {
            return Err(FlowError::CofiniteSupport {
                term: f,
                co_action: self.co_action(f)?,
            });
        }
        members.push(f);
        let infinite: Vec<TermRef> = members
            .iter()
            .copied()
            .filter(|&m| !self.has_finite_action(m))
            .collect();
        for (i, &a) in infinite.iter().enumerate() {
            for &b in &infinite[i + 1..] {
                if !compatible_defaults(&self.default_of(a), &self.default_of(b)) {
                    return Ok(false);
                }
            }
        }
        let mut points: BTreeSet<TermRef> = members.iter().copied().collect();
        points.insert(TermRef::ZERO);
        for &m in &members {
            points.extend(self.exceptions_of(m).keys().copied());
        }
        for t in points {
            let mut seen: Option<TermRef> = None;
            for &m in &members {
                let v = self.evaluate(m, t)?;
                if v == TermRef::ZERO {
                    continue;
                }
                match seen {
                    Some(w) if w != v => return Ok(false),
                    _ => seen = Some(v),
                }
            }
        }
        Ok(true)
    }

    /// Inductivity checked on `φ₀..φ_bound` and on the exception points:
    /// structure-free, `σ_f ≠ 0̲`, `f(φ₀) = φ₀`, and every fixed point
    /// other than `f` has its successor fixed as well.
    pub fn is_inductive_bounded(&mut self, f: TermRef, bound: u64) -> Result<bool> {
        self.check(f)?;
        if f == TermRef::ZERO || !self.is_structure_free_action(f) {
            return Ok(false);
        }
        if self.successor(f)? == TermRef::ZERO {
            return Ok(false);
        }
        if self.evaluate(f, TermRef::PHI0)? != TermRef::PHI0 {
            return Ok(false);
        }
        let mut pts: Vec<TermRef> = (0..=bound).map(|n| self.phi(n)).collect::<Result<_>>()?;
        pts.extend(self.exceptions_of(f).keys().copied());
        for x in pts {
            if x == f || self.evaluate(f, x)? != x {
                continue;
            }
            let s = self.successor(x)?;
            if s == TermRef::ZERO || !self.acts_on(f, s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Two infinite defaults agree wherever both are non-0̲.
fn compatible_defaults(a: &Default, b: &Default) -> bool {
    let free = |d: &Default| matches!(d, Default::Identity | Default::Filter(_));
    a == b || (free(a) && free(b))
}
