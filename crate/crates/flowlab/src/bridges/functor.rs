use std::collections::BTreeSet;

use super::category::StaticCategory;
use crate::error::Result;
use crate::kernel::{TermRef, Universe};
use crate::structures::StructureReport;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variance {
    Covariant,
    Contravariant,
}

impl Universe {
    /// Clauses (i)-(v) of a static functor `θ: a → b`, each with the first
    /// failing morphism (or pair) as witness.
    pub fn functor_report(
        &mut self,
        theta: TermRef,
        a: &StaticCategory,
        b: &StaticCategory,
        variance: Variance,
    ) -> Result<StructureReport> {
        self.check(theta)?;
        let mut rep = StructureReport::default();
        let bm: BTreeSet<TermRef> = b.morphisms.iter().copied().collect();

        // (i) θ acts exactly where a does, and b acts on every image
        let mut w = None;
        for &t in &a.morphisms {
            let v = self.evaluate(theta, t)?;
            if !bm.contains(&v) {
                w = Some(format!("theta({}) = {} is not in b", self.name(t), self.name(v)));
                break;
            }
        }
        if w.is_none() && self.has_finite_action(theta) {
            let am: BTreeSet<TermRef> = a.morphisms.iter().copied().collect();
            if let Some(t) = self.support(theta)?.into_iter().find(|t| !am.contains(t)) {
                w = Some(format!("theta acts on {} outside a", self.name(t)));
            }
        } else if w.is_none() {
            w = Some(format!("{} has infinite action", self.name(theta)));
        }
        rep.push("(i) action", w);

        // (ii) surjective onto b
        let mut hit = BTreeSet::new();
        for &t in &a.morphisms {
            hit.insert(self.evaluate(theta, t)?);
        }
        let w = b
            .morphisms
            .iter()
            .find(|t| !hit.contains(t))
            .map(|&t| format!("{} has no preimage", self.name(t)));
        rep.push("(ii) surjectivity", w);

        // (iii), (iv) objects go to objects
        let mut w3 = None;
        let mut w4 = None;
        for &t in &a.morphisms {
            let th = self.evaluate(theta, t)?;
            if !bm.contains(&th) {
                continue;
            }
            let (d, c) = (self.static_domain(t)?, self.static_codomain(t)?);
            let (d2, c2) = (self.static_domain(th)?, self.static_codomain(th)?);
            let (want_d, want_c) = match variance {
                Variance::Covariant => (d2, c2),
                Variance::Contravariant => (c2, d2),
            };
            if w3.is_none() && self.evaluate(theta, d)? != want_d {
                w3 = Some(self.name(t));
            }
            if w4.is_none() && self.evaluate(theta, c)? != want_c {
                w4 = Some(self.name(t));
            }
        }
        rep.push("(iii) domains", w3);
        rep.push("(iv) codomains", w4);

        // (v) composition, wherever it is defined in a
        let mut w = None;
        for (&(t, s), &ts) in &a.table {
            let (x, y) = (self.evaluate(theta, t)?, self.evaluate(theta, s)?);
            let want = match variance {
                Variance::Covariant => b.table.get(&(x, y)),
                Variance::Contravariant => b.table.get(&(y, x)),
            };
            if want != Some(&self.evaluate(theta, ts)?) {
                w = Some(format!("({}, {})", self.name(t), self.name(s)));
                break;
            }
        }
        rep.push("(v) composition", w);
        Ok(rep)
    }

    pub fn is_covariant_functor(
        &mut self,
        theta: TermRef,
        a: &StaticCategory,
        b: &StaticCategory,
    ) -> Result<bool> {
        Ok(self.functor_report(theta, a, b, Variance::Covariant)?.pass())
    }

    pub fn is_contravariant_functor(
        &mut self,
        theta: TermRef,
        a: &StaticCategory,
        b: &StaticCategory,
    ) -> Result<bool> {
        Ok(self.functor_report(theta, a, b, Variance::Contravariant)?.pass())
    }

    /// The arrow sending each morphism of `a` to `ϑ(θ(t))`.
    pub fn compose_functors(
        &mut self,
        theta: TermRef,
        vartheta: TermRef,
        a: &StaticCategory,
    ) -> Result<TermRef> {
        let mut graph = Vec::with_capacity(a.morphisms.len());
        for &t in &a.morphisms {
            let x = self.evaluate(theta, t)?;
            graph.push((t, self.evaluate(vartheta, x)?));
        }
        self.arrow(&graph)
    }

    /// Components and naturality squares of `η: θ ⇒ ϑ`. Composition is
    /// diagrammatic, so the square reads `θ(f) ∘‡ η_y = η_x ∘‡ ϑ(f)`.
    pub fn natural_transformation_report(
        &mut self,
        eta: TermRef,
        theta: TermRef,
        vartheta: TermRef,
        a: &StaticCategory,
        b: &StaticCategory,
    ) -> Result<StructureReport> {
        self.check(eta)?;
        let mut rep = StructureReport::default();
        let bm: BTreeSet<TermRef> = b.morphisms.iter().copied().collect();

        let mut w = None;
        for &x in &a.objects {
            let e = self.evaluate(eta, x)?;
            if !bm.contains(&e) {
                w = Some(format!("eta({}) = {} is not in b", self.name(x), self.name(e)));
                break;
            }
            let (tx, vx) = (self.evaluate(theta, x)?, self.evaluate(vartheta, x)?);
            if self.static_domain(e)? != tx || self.static_codomain(e)? != vx {
                w = Some(format!("eta({}) has the wrong ends", self.name(x)));
                break;
            }
        }
        let components_ok = w.is_none();
        rep.push("(i) components", w);

        let mut w = None;
        if components_ok {
            for &f in &a.morphisms {
                let (x, y) = (self.static_domain(f)?, self.static_codomain(f)?);
                let (ex, ey) = (self.evaluate(eta, x)?, self.evaluate(eta, y)?);
                let (tf, vf) = (self.evaluate(theta, f)?, self.evaluate(vartheta, f)?);
                let left = b.table.get(&(tf, ey));
                let right = b.table.get(&(ex, vf));
                if left.is_none() || left != right {
                    w = Some(format!(
                        "x={} y={} f={}",
                        self.name(x),
                        self.name(y),
                        self.name(f)
                    ));
                    break;
                }
            }
        } else {
            w = Some("undefined without components".into());
        }
        rep.push("(ii) naturality", w);
        Ok(rep)
    }

    pub fn is_natural_transformation(
        &mut self,
        eta: TermRef,
        theta: TermRef,
        vartheta: TermRef,
        a: &StaticCategory,
        b: &StaticCategory,
    ) -> Result<bool> {
        Ok(self
            .natural_transformation_report(eta, theta, vartheta, a, b)?
            .pass())
    }
}
