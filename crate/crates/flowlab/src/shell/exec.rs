use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use super::ast::{CatFixture, CmpOp, Command, Expr, Operand, Pred};
use super::print::{behavior_text, default_row};
use crate::algebra::{self, PredicateExpr};
use crate::bridges::{StaticCategory, ZfAxiom, ZfUniverse, DEFAULT_FRAGMENT_CAP};
use crate::error::{FlowError, Result};
use crate::kernel::{TermRef, Universe};

/// Rank of the universe behind `check cat set`.
const SET_FIXTURE_RANK: u32 = 2;

/// A universe plus name bindings.
#[derive(Debug, Clone, Default)]
pub struct Session {
    pub universe: Universe,
    pub bindings: BTreeMap<String, TermRef>,
    /// First seed of harness runs.
    pub seed: u64,
}

/// Text produced by one command. `failed` marks a check that ran but did
/// not pass.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Output {
    pub text: String,
    pub failed: bool,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, failed: false }
    }
}

/// Elaborates an expression against a universe and bindings.
pub fn elaborate(u: &mut Universe, env: &BTreeMap<String, TermRef>, e: &Expr) -> Result<TermRef> {
    let mut go = |e: &Expr| elaborate(u, env, e);
    Ok(match e {
        Expr::Zero => TermRef::ZERO,
        Expr::One => TermRef::ONE,
        Expr::Psi => TermRef::PSI,
        Expr::Sigma => TermRef::SIGMA,
        Expr::Lambda => TermRef::LAMBDA,
        Expr::Omega => TermRef::OMEGA,
        Expr::Phi(n) => u.phi(*n)?,
        Expr::Id(n) => {
            let t = TermRef::from_id(*n);
            u.check(t)?;
            t
        }
        Expr::Name(n) => *env
            .get(n)
            .ok_or_else(|| FlowError::Usage(format!("unknown name '{n}'")))?,
        Expr::Compose(a, b) => {
            let (a, b) = (go(a)?, go(b)?);
            u.compose(a, b)?
        }
        Expr::Succ(a) => {
            let a = go(a)?;
            u.successor(a)?
        }
        Expr::Power(a) => {
            let a = go(a)?;
            u.power(a)?
        }
        Expr::Choice(a) => {
            let a = go(a)?;
            u.choice(a)?
        }
        Expr::Fst(a) => {
            let a = go(a)?;
            u.decompose_pair(a)?.first
        }
        Expr::Snd(a) => {
            let a = go(a)?;
            u.decompose_pair(a)?.second
        }
        Expr::Restrict(a, p) => {
            let a = go(a)?;
            let p = predicate(u, env, p)?;
            u.restrict(a, &p)?
        }
        Expr::Union(xs) | Expr::Inter(xs) => {
            let ts = xs.iter().map(&mut go).collect::<Result<Vec<_>>>()?;
            if matches!(e, Expr::Union(_)) {
                u.union_of(&ts)?
            } else {
                u.intersection_of(&ts)?
            }
        }
        Expr::Pair(a, b) => {
            let (a, b) = (go(a)?, go(b)?);
            u.make_pair(a, b)?
        }
        Expr::Prod(a, b) => {
            let (a, b) = (go(a)?, go(b)?);
            u.trivial_product(a, b)?
        }
        Expr::Eval(a, b) => {
            let (a, b) = (go(a)?, go(b)?);
            u.evaluate(a, b)?
        }
        Expr::Plus(a, b) | Expr::Times(a, b) => {
            let (a, b) = (go(a)?, go(b)?);
            let star = if matches!(e, Expr::Plus(..)) {
                u.plus_family()?
            } else {
                u.times_family()?
            };
            u.family_apply(&star, a, b)?
        }
        Expr::Arrow(xs) => {
            let mut graph = Vec::with_capacity(xs.len());
            for (a, b) in xs {
                graph.push((go(a)?, go(b)?));
            }
            u.arrow(&graph)?
        }
    })
}

/// Translates a surface predicate into a restriction formula.
pub fn predicate(u: &mut Universe, env: &BTreeMap<String, TermRef>, p: &Pred) -> Result<PredicateExpr> {
    let mut op = |o: &Operand| -> Result<algebra::Operand> {
        Ok(match o {
            Operand::Var => algebra::Operand::Var,
            Operand::Expr(e) => algebra::Operand::Term(elaborate(u, env, e)?),
        })
    };
    Ok(match p {
        Pred::True => PredicateExpr::True,
        Pred::False => PredicateExpr::False,
        Pred::Cmp(c, a, b) => {
            let (a, b) = (op(a)?, op(b)?);
            match c {
                CmpOp::Eq => PredicateExpr::Eq(a, b),
                CmpOp::Neq => PredicateExpr::Neq(a, b),
                CmpOp::In => PredicateExpr::In(a, b),
                CmpOp::Sub => PredicateExpr::Subset(a, b),
            }
        }
        Pred::IsPair(a) => PredicateExpr::IsPair(op(a)?),
        Pred::IsZf(a) => PredicateExpr::IsZfSet(op(a)?),
        Pred::Not(a) => predicate(u, env, a)?.not(),
        Pred::And(a, b) => predicate(u, env, a)?.and(predicate(u, env, b)?),
        Pred::Or(a, b) => predicate(u, env, a)?.or(predicate(u, env, b)?),
    })
}

impl Session {
    pub fn new() -> Session {
        Session::default()
    }

    pub fn with_seed(seed: u64) -> Session {
        Session {
            seed,
            ..Session::default()
        }
    }

    pub fn eval(&mut self, e: &Expr) -> Result<TermRef> {
        elaborate(&mut self.universe, &self.bindings, e)
    }

    /// Bound name (alphabetically first), canonical name, or `#id`.
    pub fn short_name(&self, t: TermRef) -> String {
        if let Some((n, _)) = self.bindings.iter().find(|(_, &v)| v == t) {
            return n.clone();
        }
        self.universe.name(t)
    }

    /// `#id kind [k -> v, ...]` with short names inside.
    pub fn literal(&self, t: TermRef) -> Result<String> {
        let b = self.universe.behavior(t)?;
        Ok(format!("{t} {}", behavior_text(b, &|x| self.short_name(x))))
    }

    /// Short name when the term has one, else its literal.
    pub fn term_text(&self, t: TermRef) -> Result<String> {
        if self.bindings.values().any(|&v| v == t) || self.universe.canonical_name(t).is_some() {
            Ok(self.short_name(t))
        } else {
            self.literal(t)
        }
    }

    /// One row per exception point, then the default.
    pub fn table(&self, t: TermRef) -> Result<String> {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.short_name(t));
        let b = self.universe.behavior(t)?;
        let name = |x| self.short_name(x);
        for (&k, &v) in &b.exceptions {
            let _ = writeln!(s, "  {} -> {}", name(k), name(v));
        }
        let _ = writeln!(s, "  otherwise: {}", default_row(&b.default, &name));
        Ok(s.trim_end().to_string())
    }

    pub fn execute(&mut self, cmd: &Command) -> Result<Output> {
        match cmd {
            Command::Let(n, e) => {
                let t = self.eval(e)?;
                let text = if self.universe.canonical_name(t).is_some() {
                    self.universe.name(t)
                } else {
                    self.literal(t)?
                };
                self.bindings.insert(n.clone(), t);
                Ok(Output::ok(format!("{n} = {text}")))
            }
            Command::Query(e) => {
                let t = self.eval(e)?;
                Ok(Output::ok(self.term_text(t)?))
            }
            Command::Show(e) => {
                let t = self.eval(e)?;
                if let Some(n) = self.universe.canonical_name(t) {
                    return Ok(Output::ok(n));
                }
                Ok(Output::ok(self.table(t)?))
            }
            Command::Classify(e) => {
                let t = self.eval(e)?;
                let c = self.universe.classify(t)?;
                let yn = |b: bool| if b { "yes" } else { "no" };
                let mut s = String::new();
                let _ = writeln!(s, "class: {}", yn(c.is_class));
                let _ = writeln!(s, "structure-free: {}", yn(c.is_structure_free));
                let _ = writeln!(s, "set: {}", yn(c.is_set));
                let _ = writeln!(s, "zf-set: {}", yn(c.is_zf_set));
                let _ = writeln!(s, "proper class: {}", yn(c.is_proper_class));
                let constant = c
                    .constant_value
                    .map_or("none".to_string(), |v| self.short_name(v));
                let _ = writeln!(s, "constant: {constant}");
                let unif = c.strictly_unifiable.map_or("n/a", yn);
                let _ = writeln!(s, "strictly unifiable: {unif}");
                let _ = write!(s, "inductive: {}", yn(c.inductive));
                Ok(Output::ok(s))
            }
            Command::CheckZf { rank, seeds } => self.check_zf(*rank, *seeds),
            Command::CheckCat(fixture) => self.check_cat(*fixture),
            Command::Diagram(e, path) => {
                let t = self.eval(e)?;
                self.universe.export_diagram(t, Path::new(path))?;
                Ok(Output::ok(format!("wrote {path}")))
            }
            Command::Save(path) => {
                std::fs::write(path, self.save_text())?;
                Ok(Output::ok(format!(
                    "saved {} terms to {path}",
                    self.universe.len()
                )))
            }
            Command::Load(path) => {
                let text = std::fs::read_to_string(path)?;
                let loaded = Session::load_text(&text)?;
                self.universe = loaded.universe;
                self.bindings = loaded.bindings;
                Ok(Output::ok(format!(
                    "loaded {} terms from {path}",
                    self.universe.len()
                )))
            }
        }
    }

    /// Runs every translated ZF axiom over `seeds` universes, starting at
    /// the session seed, and prints one line per axiom.
    pub fn check_zf(&mut self, rank: u32, seeds: u64) -> Result<Output> {
        let mut instances = [0usize; 9];
        let mut witness: [Option<String>; 9] = Default::default();
        for seed in self.seed..self.seed.saturating_add(seeds) {
            let mut z = ZfUniverse::generate(seed, rank)?;
            for (i, r) in z.check_all()?.into_iter().enumerate() {
                instances[i] += r.instances;
                if witness[i].is_none() {
                    witness[i] = r.counterexample.map(|c| format!("seed {seed}: {c}"));
                }
            }
        }
        let mut s = String::new();
        let mut failed = false;
        for (i, a) in ZfAxiom::ALL.iter().enumerate() {
            let r = crate::bridges::AxiomReport::new(a.to_string(), instances[i], witness[i].take());
            failed |= !r.pass;
            let _ = writeln!(s, "{r}");
        }
        Ok(Output {
            text: s.trim_end().to_string(),
            failed,
        })
    }

    pub fn check_cat(&mut self, fixture: CatFixture) -> Result<Output> {
        let mut s = String::new();
        let (cat, reports, u) = match fixture {
            CatFixture::Worked => {
                let u = &mut self.universe;
                let [f, ..] = u.worked_example()?;
                let cat = StaticCategory::new(u, f)?;
                let reports = cat.check_all(u)?;
                (cat, reports, &self.universe)
            }
            CatFixture::Set => {
                let mut z = ZfUniverse::generate(self.seed, SET_FIXTURE_RANK)?;
                let cat = StaticCategory::set_fragment(&mut z, DEFAULT_FRAGMENT_CAP)?;
                let pass = z.universe.is_static_category(cat.carrier)?;
                let reports = cat.check_all(&mut z.universe)?;
                let _ = writeln!(s, "static category {}", if pass { "PASS" } else { "FAIL" });
                let failed = !pass || reports.iter().any(|r| !r.pass);
                let _ = write!(s, "{}", summary(&cat, &reports, &z.universe));
                return Ok(Output {
                    text: s.trim_end().to_string(),
                    failed,
                });
            }
        };
        let _ = writeln!(s, "static category PASS");
        let _ = write!(s, "{}", summary(&cat, &reports, u));
        Ok(Output {
            text: s.trim_end().to_string(),
            failed: reports.iter().any(|r| !r.pass),
        })
    }
}

fn summary(cat: &StaticCategory, reports: &[crate::bridges::AxiomReport], u: &Universe) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} morphisms, {} objects{} over {}",
        cat.morphisms.len(),
        cat.objects.len(),
        if cat.truncated { ", truncated" } else { "" },
        u.name(cat.carrier)
    );
    for r in reports {
        let _ = writeln!(s, "{r}");
    }
    s
}
