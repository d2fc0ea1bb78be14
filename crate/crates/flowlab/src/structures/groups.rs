use std::fmt;

use super::family::FamilySpec;
use crate::error::Result;
use crate::kernel::{TermRef, Universe};

/// One axiom of a structure check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AxiomCheck {
    pub axiom: String,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct StructureReport {
    pub checks: Vec<AxiomCheck>,
    /// Neutral element of the (additive) operation, when found.
    pub neutral: Option<TermRef>,
}

impl StructureReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub(crate) fn push(&mut self, axiom: &str, witness: Option<String>) {
        self.checks.push(AxiomCheck {
            axiom: axiom.to_string(),
            pass: witness.is_none(),
            witness,
        });
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{:<24} {}", c.axiom, if c.pass { "PASS" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                write!(f, "  {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl Universe {
    /// Closure, associativity, neutral element and inverses of `star` over
    /// the terms `carrier` acts on.
    pub fn is_static_group(&mut self, star: &FamilySpec, carrier: TermRef) -> Result<StructureReport> {
        let elems = self.support(carrier)?;
        let mut report = StructureReport::default();
        self.group_checks(star, &elems, "", &mut report)?;
        Ok(report)
    }

    /// Both group structures (the multiplicative one without the additive
    /// neutral element), commutativity and distributivity.
    pub fn is_static_field(
        &mut self,
        plus: &FamilySpec,
        times: &FamilySpec,
        carrier: TermRef,
    ) -> Result<StructureReport> {
        let elems = self.support(carrier)?;
        let mut report = StructureReport::default();
        let zero = self.group_checks(plus, &elems, "plus ", &mut report)?;
        report.neutral = zero;
        let w = self.commutativity_witness(plus, &elems)?;
        report.push("plus commutativity", w);

        let units: Vec<TermRef> = elems.iter().copied().filter(|&e| Some(e) != zero).collect();
        if units.is_empty() {
            report.push("times nontrivial", Some("carrier has one element".into()));
        }
        let w = self.closure_witness(times, &elems)?;
        report.push("times closure", w);
        self.group_checks(times, &units, "times ", &mut report)?;
        let w = self.commutativity_witness(times, &elems)?;
        report.push("times commutativity", w);

        let mut w = None;
        'dist: for &a in &elems {
            for &b in &elems {
                for &c in &elems {
                    let bc = self.family_apply(plus, b, c)?;
                    let left = self.family_apply(times, a, bc)?;
                    let ab = self.family_apply(times, a, b)?;
                    let ac = self.family_apply(times, a, c)?;
                    let right = self.family_apply(plus, ab, ac)?;
                    if left != right {
                        w = Some(format!(
                            "a={} b={} c={}",
                            self.name(a),
                            self.name(b),
                            self.name(c)
                        ));
                        break 'dist;
                    }
                }
            }
        }
        report.push("distributivity", w);
        Ok(report)
    }

    fn group_checks(
        &mut self,
        star: &FamilySpec,
        elems: &[TermRef],
        prefix: &str,
        report: &mut StructureReport,
    ) -> Result<Option<TermRef>> {
        let closure = self.closure_witness(star, elems)?;
        let closed = closure.is_none();
        report.push(&format!("{prefix}closure"), closure);

        let assoc = if closed {
            self.associativity_witness(star, elems)?
                .map(|(r, s, t)| format!("r={} s={} t={}", self.name(r), self.name(s), self.name(t)))
        } else {
            Some("undefined without closure".into())
        };
        report.push(&format!("{prefix}associativity"), assoc);

        let mut neutral = None;
        for &e in elems {
            let mut ok = true;
            for &a in elems {
                if self.family_apply(star, e, a)? != a || self.family_apply(star, a, e)? != a {
                    ok = false;
                    break;
                }
            }
            if ok {
                neutral = Some(e);
                break;
            }
        }
        report.push(
            &format!("{prefix}neutral"),
            neutral.is_none().then(|| "none".to_string()),
        );
        if prefix.is_empty() {
            report.neutral = neutral;
        }

        let mut inv = None;
        if let Some(e) = neutral {
            for &a in elems {
                let mut found = false;
                for &b in elems {
                    if self.family_apply(star, a, b)? == e && self.family_apply(star, b, a)? == e {
                        found = true;
                        break;
                    }
                }
                if !found {
                    inv = Some(format!("a={}", self.name(a)));
                    break;
                }
            }
        } else {
            inv = Some("no neutral element".into());
        }
        report.push(&format!("{prefix}inverses"), inv);
        Ok(neutral)
    }

    fn closure_witness(&mut self, star: &FamilySpec, elems: &[TermRef]) -> Result<Option<String>> {
        for &a in elems {
            for &b in elems {
                let c = self.family_apply(star, a, b)?;
                if !elems.contains(&c) {
                    return Ok(Some(format!(
                        "{} * {} = {}",
                        self.name(a),
                        self.name(b),
                        self.name(c)
                    )));
                }
            }
        }
        Ok(None)
    }

    fn commutativity_witness(&mut self, star: &FamilySpec, elems: &[TermRef]) -> Result<Option<String>> {
        for &a in elems {
            for &b in elems {
                if self.family_apply(star, a, b)? != self.family_apply(star, b, a)? {
                    return Ok(Some(format!("a={} b={}", self.name(a), self.name(b))));
                }
            }
        }
        Ok(None)
    }
}
