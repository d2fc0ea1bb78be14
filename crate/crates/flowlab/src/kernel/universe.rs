use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::term::{Behavior, Default, FamilyKind, OtherPart, PhiPart, TermRef};
use crate::error::{FlowError, Result};

/// Largest numeral `n` for which `phi n` is materialized. Each numeral owns
/// an n-entry exception map, so the registry grows quadratically.
pub const MAX_NUMERAL: u64 = 1024;

#[derive(Debug, Clone, std::default::Default)]
pub(crate) struct Memo {
    pub compose: HashMap<(TermRef, TermRef), TermRef>,
    pub successor: HashMap<TermRef, TermRef>,
    pub restrict: HashMap<(TermRef, String), TermRef>,
    pub union: HashMap<Vec<TermRef>, TermRef>,
    pub choice: HashMap<(TermRef, crate::structures::ChoiceOrder), TermRef>,
    pub power: HashMap<TermRef, TermRef>,
    pub product: HashMap<(TermRef, TermRef), TermRef>,
    pub zf: HashMap<TermRef, bool>,
}

/// Interning registry plus memo tables.
///
/// Bootstrap ids are fixed: 0̲=0, 1̲=1, φ₀=2, ψ=3, σ=4, λ=5, ω=6.
#[derive(Debug, Clone)]
pub struct Universe {
    terms: Vec<Behavior>,
    registry: HashMap<Behavior, TermRef>,
    // σ keeps its literal exceptions {1̲→0̲, ψ→1̲}; this is its canonical key.
    sigma_sig: Behavior,
    phis: Vec<TermRef>,
    phi_index: HashMap<TermRef, u64>,
    degenerate: BTreeSet<TermRef>,
    pub(crate) memo: Memo,
}

impl std::default::Default for Universe {
    fn default() -> Self {
        Universe::new()
    }
}

fn sigma_rule() -> Default {
    Default::Rule {
        phi: PhiPart::Affine { scale: 1, offset: 1 },
        other: OtherPart::Succ(1),
    }
}

pub(crate) fn plus_rule(n: u64) -> Default {
    Default::Rule {
        phi: PhiPart::Affine { scale: 1, offset: n },
        other: OtherPart::Const(TermRef::ZERO),
    }
}

impl Universe {
    pub fn new() -> Universe {
        let sigma_sig = Behavior::new(sigma_rule(), BTreeMap::new());
        let mut u = Universe {
            terms: Vec::new(),
            registry: HashMap::new(),
            sigma_sig: sigma_sig.clone(),
            phis: Vec::new(),
            phi_index: HashMap::new(),
            degenerate: BTreeSet::new(),
            memo: Memo::default(),
        };
        // 0̲ is never looked up: an all-zero behavior resolves to φ₀.
        u.terms.push(Behavior::zero(BTreeMap::new()));
        let one = u.insert(Behavior::new(Default::Identity, BTreeMap::new()));
        let phi0 = u.insert(Behavior::zero(BTreeMap::new()));
        let psi = u.insert(Behavior::new(
            Default::Identity,
            BTreeMap::from([(TermRef::ONE, TermRef::ZERO)]),
        ));
        u.terms.push(Behavior::new(
            sigma_rule(),
            BTreeMap::from([(TermRef::ONE, TermRef::ZERO), (TermRef::PSI, TermRef::ONE)]),
        ));
        u.registry.insert(sigma_sig, TermRef::SIGMA);
        let lambda = u.insert(Behavior::new(plus_rule(1), BTreeMap::new()));
        let omega = u.insert(Behavior::new(plus_rule(0), BTreeMap::new()));
        debug_assert_eq!(
            [one, phi0, psi, lambda, omega],
            [
                TermRef::ONE,
                TermRef::PHI0,
                TermRef::PSI,
                TermRef::LAMBDA,
                TermRef::OMEGA
            ]
        );
        u
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every registered term in id order.
    pub fn terms(&self) -> impl Iterator<Item = TermRef> + '_ {
        (0..self.terms.len() as u32).map(TermRef)
    }

    pub fn check(&self, t: TermRef) -> Result<()> {
        if (t.0 as usize) < self.terms.len() {
            Ok(())
        } else {
            Err(FlowError::UnregisteredTerm(t.0))
        }
    }

    /// Stored behavior, including σ's literal exceptions.
    pub fn behavior(&self, t: TermRef) -> Result<&Behavior> {
        self.check(t)?;
        Ok(&self.terms[t.0 as usize])
    }

    /// Canonical behavior: identical to [`Universe::behavior`] except for σ.
    pub fn signature(&self, t: TermRef) -> Result<&Behavior> {
        self.check(t)?;
        if t == TermRef::SIGMA {
            Ok(&self.sigma_sig)
        } else {
            Ok(&self.terms[t.0 as usize])
        }
    }

    pub(crate) fn default_of(&self, t: TermRef) -> Default {
        self.terms[t.0 as usize].default.clone()
    }

    pub(crate) fn exceptions_of(&self, t: TermRef) -> &BTreeMap<TermRef, TermRef> {
        &self.signature(t).expect("registered").exceptions
    }

    pub fn is_degenerate(&self, t: TermRef) -> bool {
        self.degenerate.contains(&t)
    }

    pub(crate) fn mark_degenerate(&mut self, t: TermRef) {
        self.degenerate.insert(t);
    }

    pub fn phi(&mut self, n: u64) -> Result<TermRef> {
        if n > MAX_NUMERAL {
            return Err(FlowError::NumeralOverflow(n));
        }
        while self.phis.len() as u64 <= n {
            let k = self.phis.len() as u64;
            let map: BTreeMap<_, _> = self.phis.iter().map(|&p| (p, p)).collect();
            let t = self.intern(Default::Zero, map)?;
            if self.phis.len() as u64 == k {
                self.phis.push(t);
                self.phi_index.insert(t, k);
            }
        }
        Ok(self.phis[n as usize])
    }

    pub fn phi_index(&self, t: TermRef) -> Option<u64> {
        self.phi_index.get(&t).copied()
    }

    /// Number of numerals materialized so far.
    pub fn phi_count(&self) -> u64 {
        self.phis.len() as u64
    }

    /// `+m` or `×m` as a rule term.
    pub fn family_member(&mut self, kind: FamilyKind, m: u64) -> Result<TermRef> {
        let d = match kind {
            FamilyKind::Plus => plus_rule(m),
            FamilyKind::Times => Default::Rule {
                phi: PhiPart::Affine { scale: m, offset: 0 },
                other: OtherPart::Const(TermRef::ZERO),
            },
        };
        self.intern(d, BTreeMap::new())
    }

    /// Decodes `+m` / `×m` from the signature.
    pub fn family_index(&self, kind: FamilyKind, t: TermRef) -> Option<u64> {
        let sig = self.signature(t).ok()?;
        if !sig.exceptions.is_empty() {
            return None;
        }
        let Default::Rule {
            phi,
            other: OtherPart::Const(TermRef::ZERO),
        } = &sig.default
        else {
            return None;
        };
        match (kind, phi) {
            (FamilyKind::Plus, PhiPart::Affine { scale: 1, offset }) => Some(*offset),
            (FamilyKind::Times, PhiPart::Affine { scale, offset: 0 }) => Some(*scale),
            (FamilyKind::Times, PhiPart::Const(TermRef::PHI0)) => Some(0),
            _ => None,
        }
    }

    /// The term sending `phi m` to the m-th member of the family.
    pub fn family_term(&mut self, kind: FamilyKind) -> Result<TermRef> {
        self.intern(
            Default::Rule {
                phi: PhiPart::Family(kind),
                other: OtherPart::Const(TermRef::ZERO),
            },
            BTreeMap::new(),
        )
    }

    /// Canonical short name, when the term has one.
    pub fn canonical_name(&self, t: TermRef) -> Option<String> {
        let s = match t {
            TermRef::ZERO => "0".to_string(),
            TermRef::ONE => "1".to_string(),
            TermRef::PSI => "psi".to_string(),
            TermRef::SIGMA => "sigma".to_string(),
            TermRef::LAMBDA => "lambda".to_string(),
            TermRef::OMEGA => "omega".to_string(),
            _ => {
                if let Some(n) = self.phi_index(t) {
                    format!("phi {n}")
                } else if let Some(m) = self.family_index(FamilyKind::Plus, t) {
                    format!("plus {m}")
                } else {
                    format!("times {}", self.family_index(FamilyKind::Times, t)?)
                }
            }
        };
        Some(s)
    }

    pub fn name(&self, t: TermRef) -> String {
        self.canonical_name(t).unwrap_or_else(|| t.to_string())
    }

    /// Canonicalize and look up; allocate a fresh id when unseen.
    pub fn intern(&mut self, default: Default, exceptions: BTreeMap<TermRef, TermRef>) -> Result<TermRef> {
        let b = self.normalize(default, exceptions)?;
        if let Some(&t) = self.registry.get(&b) {
            return Ok(t);
        }
        Ok(self.insert(b))
    }

    /// Exact lookup of an already-normalized behavior.
    pub(crate) fn lookup(&self, b: &Behavior) -> Option<TermRef> {
        self.registry.get(b).copied()
    }

    pub(crate) fn insert_normalized(&mut self, b: Behavior) -> TermRef {
        match self.registry.get(&b) {
            Some(&t) => t,
            None => self.insert(b),
        }
    }

    fn insert(&mut self, b: Behavior) -> TermRef {
        let t = TermRef(self.terms.len() as u32);
        let is_next_phi = b.default.is_zero()
            && b.exceptions.len() == self.phis.len()
            && !self.phis.is_empty()
            && b.exceptions
                .iter()
                .zip(&self.phis)
                .all(|((k, v), p)| k == p && v == p);
        if b.default.is_zero() && b.exceptions.is_empty() && self.phis.is_empty() {
            self.phis.push(t);
            self.phi_index.insert(t, 0);
        } else if is_next_phi {
            self.phi_index.insert(t, self.phis.len() as u64);
            self.phis.push(t);
        }
        self.registry.insert(b.clone(), t);
        self.terms.push(b);
        t
    }

    /// Session loading: append a record at the next id, rejecting
    /// duplicates of non-privileged behaviors.
    pub(crate) fn push_loaded(&mut self, b: Behavior) -> Result<TermRef> {
        if let Some(&t) = self.registry.get(&b) {
            return Err(FlowError::Session(format!(
                "record #{} duplicates the behavior of {}",
                self.terms.len(),
                t
            )));
        }
        Ok(self.insert(b))
    }

    pub(crate) fn normalize(
        &mut self,
        default: Default,
        mut exceptions: BTreeMap<TermRef, TermRef>,
    ) -> Result<Behavior> {
        let default = self.normalize_default(default)?;
        for &k in exceptions.keys() {
            self.check(k)?;
        }
        for &v in exceptions.values() {
            self.check(v)?;
        }
        let keys: Vec<TermRef> = exceptions.keys().copied().collect();
        for k in keys {
            if self.default_value(&default, k)? == exceptions[&k] {
                exceptions.remove(&k);
            }
        }
        Ok(Behavior::new(default, exceptions))
    }

    pub(crate) fn normalize_default(&mut self, d: Default) -> Result<Default> {
        Ok(match d {
            Default::Const(TermRef::ZERO) => Default::Zero,
            Default::Rule { phi, other } => {
                let phi = match phi {
                    PhiPart::Affine { scale: 0, offset } => PhiPart::Const(self.phi(offset)?),
                    p => p,
                };
                match (&phi, &other) {
                    (PhiPart::Const(a), OtherPart::Const(b)) if a == b => {
                        if *a == TermRef::ZERO {
                            Default::Zero
                        } else {
                            Default::Const(*a)
                        }
                    }
                    (PhiPart::Affine { scale: 1, offset: 0 }, OtherPart::Succ(0)) => Default::Identity,
                    _ => Default::Rule { phi, other },
                }
            }
            Default::Filter(p) => match p.simplify() {
                crate::algebra::PredicateExpr::True => Default::Identity,
                crate::algebra::PredicateExpr::False => Default::Zero,
                p => Default::Filter(p),
            },
            d => d,
        })
    }

    /// Value of a default at `x`, ignoring exceptions and self-points.
    pub(crate) fn default_value(&mut self, d: &Default, x: TermRef) -> Result<TermRef> {
        match d {
            Default::Zero => Ok(TermRef::ZERO),
            Default::Identity => Ok(x),
            Default::Const(t) => Ok(*t),
            Default::Rule { phi, other } => match self.phi_index(x) {
                Some(m) => match phi {
                    PhiPart::Affine { scale, offset } => {
                        let n = scale
                            .checked_mul(m)
                            .and_then(|v| v.checked_add(*offset))
                            .ok_or(FlowError::NumeralOverflow(u64::MAX))?;
                        self.phi(n)
                    }
                    PhiPart::Const(t) => Ok(*t),
                    PhiPart::Family(kind) => self.family_member(*kind, m),
                },
                None => match other {
                    OtherPart::Const(t) => Ok(*t),
                    OtherPart::Succ(k) => {
                        let mut y = x;
                        for _ in 0..*k {
                            y = self.successor(y)?;
                        }
                        Ok(y)
                    }
                },
            },
            Default::Filter(p) => {
                if self.eval_predicate(p, x)? {
                    Ok(x)
                } else {
                    Ok(TermRef::ZERO)
                }
            }
        }
    }
}
