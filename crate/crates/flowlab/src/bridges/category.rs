use std::collections::{BTreeMap, BTreeSet};

use super::zf::ZfUniverse;
use super::{AxiomReport, KAxiom};
use crate::error::{FlowError, Result};
use crate::kernel::{TermRef, Universe};
use crate::structures::StructureReport;

/// Morphisms a `set` fragment may hold before it is truncated.
pub const DEFAULT_FRAGMENT_CAP: usize = 256;

/// Hom-sets larger than this are not enumerated.
const HOM_LIMIT: usize = 4096;

/// A checked static category with its morphisms, objects and partial
/// composition table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StaticCategory {
    pub carrier: TermRef,
    pub morphisms: Vec<TermRef>,
    pub objects: Vec<TermRef>,
    /// `(g, h) ↦ g ∘† h` where defined.
    pub table: BTreeMap<(TermRef, TermRef), TermRef>,
    /// Set when a fragment builder stopped at its cap.
    pub truncated: bool,
}

impl Universe {
    /// `M(g, r, s)`: `r`, `s` structure-free, `g` trivially arbitrary from
    /// `r` to `s`, and every point of `s` is hit.
    pub fn is_static_morphism(&mut self, g: TermRef, r: TermRef, s: TermRef) -> Result<bool> {
        for t in [g, r, s] {
            self.check(t)?;
        }
        for t in [r, s] {
            if t == TermRef::ZERO
                || t == TermRef::PHI0
                || !self.has_finite_action(t)
                || !self.is_structure_free_action(t)
            {
                return Ok(false);
            }
        }
        if !self.has_finite_action(g) || !self.is_trivially_arbitrary(g, r, s)? {
            return Ok(false);
        }
        let hit: BTreeSet<TermRef> = self.pair_graph(g)?.into_iter().map(|(_, b)| b).collect();
        let target: BTreeSet<TermRef> = self.support(s)?.into_iter().collect();
        Ok(hit == target)
    }

    /// The `(r, s)` a pair-encoded term is a static morphism between, read
    /// off its coordinates.
    pub fn morphism_ends(&mut self, g: TermRef) -> Result<Option<(TermRef, TermRef)>> {
        self.check(g)?;
        if !self.has_finite_action(g) || g == TermRef::PHI0 {
            return Ok(None);
        }
        let graph = match self.pair_graph(g) {
            Ok(gr) => gr,
            Err(FlowError::NotAPair(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let firsts: Vec<TermRef> = graph.iter().map(|&(a, _)| a).collect();
        let seconds: Vec<TermRef> = graph.iter().map(|&(_, b)| b).collect();
        let r = self.carrier_for(&firsts)?;
        let s = self.carrier_for(&seconds)?;
        Ok(self.is_static_morphism(g, r, s)?.then_some((r, s)))
    }

    fn ends(&mut self, g: TermRef) -> Result<(TermRef, TermRef)> {
        self.morphism_ends(g)?
            .ok_or_else(|| FlowError::Precondition(format!("{} is not a static morphism", self.name(g))))
    }

    /// `d_g†`: the identity pairs on `g`'s first coordinates.
    pub fn static_domain(&mut self, g: TermRef) -> Result<TermRef> {
        let (r, _) = self.ends(g)?;
        self.identity_morphism(r)
    }

    /// `c_g†`: the identity pairs on `g`'s second coordinates.
    pub fn static_codomain(&mut self, g: TermRef) -> Result<TermRef> {
        let (_, s) = self.ends(g)?;
        self.identity_morphism(s)
    }

    pub fn identity_morphism(&mut self, r: TermRef) -> Result<TermRef> {
        let graph: Vec<(TermRef, TermRef)> = self.support(r)?.into_iter().map(|a| (a, a)).collect();
        self.relation(&graph)
    }

    /// `g ∘† h`: acts on `(a, c)` when `g` acts on `(a, b)` and `h` on
    /// `(b, c)`. Defined only when `c_g† = d_h†`.
    pub fn static_compose(&mut self, g: TermRef, h: TermRef) -> Result<Option<TermRef>> {
        if self.static_codomain(g)? != self.static_domain(h)? {
            return Ok(None);
        }
        let gg = self.pair_graph(g)?;
        let hg: BTreeMap<TermRef, TermRef> = self.pair_graph(h)?.into_iter().collect();
        let graph: Vec<(TermRef, TermRef)> = gg.iter().map(|&(a, b)| (a, hg[&b])).collect();
        self.relation(&graph).map(Some)
    }

    /// Every static morphism from `r` to `s`, in the order of the
    /// enumerated assignments.
    pub fn static_hom(&mut self, r: TermRef, s: TermRef) -> Result<Vec<TermRef>> {
        let dom = self.support(r)?;
        let cod = self.support(s)?;
        if dom.is_empty() || cod.is_empty() || cod.len() > dom.len() {
            return Ok(Vec::new());
        }
        let total = (cod.len() as f64).powi(dom.len() as i32);
        if total > HOM_LIMIT as f64 {
            return Err(FlowError::Precondition(format!(
                "hom-set {} -> {} has {total} candidate maps",
                self.name(r),
                self.name(s)
            )));
        }
        let mut out = Vec::new();
        let mut digits = vec![0usize; dom.len()];
        loop {
            let hit: BTreeSet<usize> = digits.iter().copied().collect();
            if hit.len() == cod.len() {
                let graph: Vec<_> = dom.iter().zip(&digits).map(|(&a, &j)| (a, cod[j])).collect();
                out.push(self.relation(&graph)?);
            }
            let mut i = 0;
            while i < digits.len() {
                digits[i] += 1;
                if digits[i] < cod.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            if i == digits.len() {
                break;
            }
        }
        Ok(out)
    }

    /// The four clauses of the static-category predicate, with witnesses.
    pub fn static_category_report(&mut self, f: TermRef) -> Result<StructureReport> {
        self.check(f)?;
        let mut rep = StructureReport::default();
        let nonzero = f != TermRef::ZERO;
        push(&mut rep, "nonzero", (!nonzero).then(|| "f is 0".to_string()));
        if !nonzero || !self.has_finite_action(f) {
            push(&mut rep, "finite action", Some(self.name(f)));
            return Ok(rep);
        }
        let members = self.support(f)?;
        let w = members
            .iter()
            .find(|&&g| self.exceptions_of(f).get(&g) != Some(&g))
            .map(|&g| self.name(g));
        push(&mut rep, "structure-free", w);

        let mut w = None;
        'c3: for &g in &members {
            let Some((r, s)) = self.morphism_ends(g)? else {
                w = Some(format!("{} is not a static morphism", self.name(g)));
                break;
            };
            for h in self.static_hom(r, s)? {
                let d = self.static_domain(h)?;
                let c = self.static_codomain(h)?;
                for t in [h, d, c] {
                    if !self.acts_on(f, t)? {
                        w = Some(format!(
                            "missing {} for hom-set of {}",
                            self.name(t),
                            self.name(g)
                        ));
                        break 'c3;
                    }
                }
            }
        }
        push(&mut rep, "morphisms", w);

        let mut arrows = Vec::new();
        for &g in &members {
            if self.morphism_ends(g)?.is_some() {
                arrows.push(g);
            }
        }
        let mut w = None;
        'c4: for &g in &arrows {
            for &h in &arrows {
                if let Some(i) = self.static_compose(g, h)? {
                    if !self.acts_on(f, i)? {
                        w = Some(format!(
                            "{} o {} = {} missing",
                            self.name(g),
                            self.name(h),
                            self.name(i)
                        ));
                        break 'c4;
                    }
                }
            }
        }
        push(&mut rep, "composition closure", w);
        Ok(rep)
    }

    pub fn is_static_category(&mut self, f: TermRef) -> Result<bool> {
        Ok(self.static_category_report(f)?.pass())
    }

    /// The three-morphism example: `g` the identity pairs on `{φ₀, φ₁}`,
    /// `h = {(φ₀, φ₁), (φ₁, φ₂)}`, `i` the identity pairs on `{φ₁, φ₂}`,
    /// completed with the rest of their hom-sets. Returns `[f, g, h, i]`.
    pub fn worked_example(&mut self) -> Result<[TermRef; 4]> {
        let (p0, p1, p2) = (TermRef::PHI0, self.phi(1)?, self.phi(2)?);
        let g = self.relation(&[(p0, p0), (p1, p1)])?;
        let h = self.relation(&[(p0, p1), (p1, p2)])?;
        let i = self.relation(&[(p1, p1), (p2, p2)])?;
        let a = self.carrier_for(&[p0, p1])?;
        let b = self.carrier_for(&[p1, p2])?;
        let mut members = Vec::new();
        for (r, s) in [(a, a), (a, b), (b, b)] {
            members.extend(self.static_hom(r, s)?);
        }
        let f = self.carrier_for(&members)?;
        Ok([f, g, h, i])
    }
}

fn push(rep: &mut StructureReport, axiom: &str, witness: Option<String>) {
    rep.checks.push(crate::structures::AxiomCheck {
        axiom: axiom.to_string(),
        pass: witness.is_none(),
        witness,
    });
}

impl StaticCategory {
    pub fn new(u: &mut Universe, carrier: TermRef) -> Result<StaticCategory> {
        let rep = u.static_category_report(carrier)?;
        if !rep.pass() {
            return Err(FlowError::Precondition(format!(
                "{} is not a static category:\n{rep}",
                u.name(carrier)
            )));
        }
        Self::tabulate(u, carrier, false)
    }

    fn tabulate(u: &mut Universe, carrier: TermRef, truncated: bool) -> Result<StaticCategory> {
        let morphisms = u.support(carrier)?;
        let mut objects = BTreeSet::new();
        let mut table = BTreeMap::new();
        for &g in &morphisms {
            objects.insert(u.static_domain(g)?);
            objects.insert(u.static_codomain(g)?);
            for &h in &morphisms {
                if let Some(i) = u.static_compose(g, h)? {
                    table.insert((g, h), i);
                }
            }
        }
        Ok(StaticCategory {
            carrier,
            morphisms,
            objects: objects.into_iter().collect(),
            table,
            truncated,
        })
    }

    /// The finite part of the category of ZF-sets over a roster: every
    /// static morphism between non-empty roster members, up to `cap`
    /// morphisms, whole hom-sets at a time.
    pub fn set_fragment(z: &mut ZfUniverse, cap: usize) -> Result<StaticCategory> {
        let u = &mut z.universe;
        let objs: Vec<TermRef> = z.roster.iter().copied().filter(|&t| t != TermRef::PHI0).collect();
        let mut members = Vec::new();
        let mut truncated = false;
        'outer: for &r in &objs {
            for &s in &objs {
                let hom = match u.static_hom(r, s) {
                    Ok(h) => h,
                    Err(FlowError::Precondition(_)) => {
                        truncated = true;
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                if members.len() + hom.len() > cap {
                    truncated = true;
                    break 'outer;
                }
                members.extend(hom);
            }
        }
        let f = u.carrier_for(&members)?;
        Self::tabulate(u, f, truncated)
    }

    fn domain(&self, u: &mut Universe, g: TermRef) -> Result<TermRef> {
        u.static_domain(g)
    }

    fn codomain(&self, u: &mut Universe, g: TermRef) -> Result<TermRef> {
        u.static_codomain(g)
    }

    fn comp(&self, g: TermRef, h: TermRef) -> Option<TermRef> {
        self.table.get(&(g, h)).copied()
    }

    /// One translated K axiom, quantifiers bounded to the morphisms.
    pub fn check(&self, u: &mut Universe, axiom: KAxiom) -> Result<AxiomReport> {
        let ms = &self.morphisms;
        let mut n = 0;
        let mut w = None;
        let name =
            |u: &Universe, ts: &[TermRef]| ts.iter().map(|&t| u.name(t)).collect::<Vec<_>>().join(", ");
        match axiom {
            KAxiom::K1 => {
                for &a in ms {
                    n += 1;
                    let (d, c) = (self.domain(u, a)?, self.codomain(u, a)?);
                    if self.domain(u, c)? != c || self.codomain(u, d)? != d {
                        w = Some(name(u, &[a]));
                        break;
                    }
                }
            }
            KAxiom::K2 => {
                // the table is a function of (a, b); recomputing must agree
                for (&(a, b), &c) in &self.table {
                    n += 1;
                    if u.static_compose(a, b)? != Some(c) {
                        w = Some(name(u, &[a, b]));
                        break;
                    }
                }
            }
            KAxiom::K3 => {
                'k3: for &a in ms {
                    for &b in ms {
                        n += 1;
                        let exists = self.comp(a, b).is_some_and(|c| ms.contains(&c));
                        let typed = self.codomain(u, a)? == self.domain(u, b)?;
                        if exists != typed {
                            w = Some(name(u, &[a, b]));
                            break 'k3;
                        }
                    }
                }
            }
            KAxiom::K4 => {
                for (&(a, b), &c) in &self.table {
                    n += 1;
                    if self.domain(u, c)? != self.domain(u, a)?
                        || self.codomain(u, c)? != self.codomain(u, b)?
                    {
                        w = Some(name(u, &[a, b, c]));
                        break;
                    }
                }
            }
            KAxiom::K5 => {
                for &a in ms {
                    n += 1;
                    let (d, c) = (self.domain(u, a)?, self.codomain(u, a)?);
                    if self.comp(d, a) != Some(a) || self.comp(a, c) != Some(a) {
                        w = Some(name(u, &[a]));
                        break;
                    }
                }
            }
            KAxiom::K6 => {
                'k6: for (&(a, b), &c) in &self.table {
                    for &d in ms {
                        let (Some(e), Some(g)) = (self.comp(b, d), self.comp(c, d)) else {
                            continue;
                        };
                        n += 1;
                        if self.comp(a, e) != Some(g) {
                            w = Some(name(u, &[a, b, d]));
                            break 'k6;
                        }
                    }
                }
            }
        }
        Ok(AxiomReport::new(axiom.to_string(), n, w))
    }

    pub fn check_all(&self, u: &mut Universe) -> Result<Vec<AxiomReport>> {
        KAxiom::ALL.into_iter().map(|a| self.check(u, a)).collect()
    }
}
