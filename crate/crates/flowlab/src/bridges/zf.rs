use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::AxiomReport;
use crate::algebra::PredicateExpr;
use crate::error::{FlowError, Result};
use crate::kernel::{TermRef, Universe};

pub const MAX_RANK: u32 = 4;
const STEPS: usize = 40;
const MAX_ROSTER: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ZfAxiom {
    Zf1,
    Zf2,
    Zf3,
    Zf4,
    Zf5,
    Zf6,
    Zf7,
    Zf8,
    Zf9,
}

impl ZfAxiom {
    pub const ALL: [ZfAxiom; 9] = [
        ZfAxiom::Zf1,
        ZfAxiom::Zf2,
        ZfAxiom::Zf3,
        ZfAxiom::Zf4,
        ZfAxiom::Zf5,
        ZfAxiom::Zf6,
        ZfAxiom::Zf7,
        ZfAxiom::Zf8,
        ZfAxiom::Zf9,
    ];
}

impl fmt::Display for ZfAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZF{}", *self as u8 + 1)
    }
}

impl FromStr for ZfAxiom {
    type Err = FlowError;

    fn from_str(s: &str) -> Result<Self> {
        ZfAxiom::ALL
            .into_iter()
            .find(|a| a.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| FlowError::Usage(format!("unknown axiom {s}")))
    }
}

/// A universe whose roster is a transitive family of hereditarily finite
/// ZF-sets of bounded rank.
#[derive(Clone, Debug)]
pub struct ZfUniverse {
    pub seed: u64,
    pub rank: u32,
    pub roster: Vec<TermRef>,
    pub universe: Universe,
}

/// `{x, y}` as a restriction of 1̲.
pub(crate) fn pair_set(u: &mut Universe, x: TermRef, y: TermRef) -> Result<TermRef> {
    u.restrict(TermRef::ONE, &PredicateExpr::one_of(&[x, y]))
}

/// Rank of a hereditarily finite term; φ₀ has rank 0.
fn hf_rank(u: &mut Universe, t: TermRef, memo: &mut BTreeMap<TermRef, u32>) -> Result<u32> {
    if let Some(&r) = memo.get(&t) {
        return Ok(r);
    }
    let mut r = 0;
    for x in u.support(t)? {
        r = r.max(hf_rank(u, x, memo)? + 1);
    }
    memo.insert(t, r);
    Ok(r)
}

impl ZfUniverse {
    /// Deterministic random closure of `{φ₀}` under pairing, power, union
    /// and restriction, keeping results of rank at most `rank` together
    /// with their hereditary elements.
    pub fn generate(seed: u64, rank: u32) -> Result<ZfUniverse> {
        if rank > MAX_RANK {
            return Err(FlowError::RankOverflow { rank, max: MAX_RANK });
        }
        let mut u = Universe::new();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ranks = BTreeMap::new();
        let mut roster = BTreeSet::from([TermRef::PHI0]);
        if rank >= 1 {
            let p1 = u.power(TermRef::PHI0)?;
            roster.insert(p1);
        }
        for _ in 0..STEPS {
            if rank == 0 || roster.len() >= MAX_ROSTER {
                break;
            }
            let pool: Vec<TermRef> = roster.iter().copied().collect();
            let x = *pool.choose(&mut rng).expect("roster is never empty");
            let y = *pool.choose(&mut rng).expect("roster is never empty");
            let rx = hf_rank(&mut u, x, &mut ranks)?;
            let ry = hf_rank(&mut u, y, &mut ranks)?;
            let t = match rng.gen_range(0..4) {
                0 if rx.max(ry) < rank => pair_set(&mut u, x, y)?,
                1 if rx < rank => u.power(x)?,
                2 => u.union(x)?,
                3 => {
                    let preds = [
                        PredicateExpr::neq(y),
                        PredicateExpr::member_of(y),
                        PredicateExpr::eq(y).not().and(PredicateExpr::neq(TermRef::PHI0)),
                    ];
                    let p = preds.choose(&mut rng).expect("catalog is non-empty");
                    u.restrict(x, p)?
                }
                _ => continue,
            };
            if hf_rank(&mut u, t, &mut ranks)? <= rank {
                add_hereditarily(&mut u, t, &mut roster)?;
            }
        }
        Ok(ZfUniverse {
            seed,
            rank,
            roster: roster.into_iter().collect(),
            universe: u,
        })
    }

    /// Runs one translated axiom with every quantifier bounded to the
    /// roster; existential witnesses are built by the matching operation.
    pub fn check(&mut self, axiom: ZfAxiom) -> Result<AxiomReport> {
        let (n, w) = match axiom {
            ZfAxiom::Zf1 => self.zf1()?,
            ZfAxiom::Zf2 => self.zf2()?,
            ZfAxiom::Zf3 => self.zf3()?,
            ZfAxiom::Zf4 => self.zf4()?,
            ZfAxiom::Zf5 => self.zf5()?,
            ZfAxiom::Zf6 => self.zf6()?,
            ZfAxiom::Zf7 => self.zf7()?,
            ZfAxiom::Zf8 => self.zf8()?,
            ZfAxiom::Zf9 => self.zf9()?,
        };
        Ok(AxiomReport::new(axiom.to_string(), n, w))
    }

    pub fn check_all(&mut self) -> Result<Vec<AxiomReport>> {
        ZfAxiom::ALL.into_iter().map(|a| self.check(a)).collect()
    }

    fn name(&self, t: TermRef) -> String {
        self.universe.name(t)
    }

    /// Points a membership biconditional is checked on: the roster plus
    /// whatever the witness acts on.
    fn points(&mut self, witness: TermRef) -> Result<BTreeSet<TermRef>> {
        let mut pts: BTreeSet<TermRef> = self.roster.iter().copied().collect();
        pts.extend(self.universe.support(witness)?);
        Ok(pts)
    }

    /// Extensionality.
    fn zf1(&mut self) -> Result<(usize, Option<String>)> {
        let r = self.roster.clone();
        let mut n = 0;
        for &x in &r {
            for &y in &r {
                n += 1;
                let mut same = true;
                for &z in &r {
                    if self.universe.acts_on(x, z)? != self.universe.acts_on(y, z)? {
                        same = false;
                        break;
                    }
                }
                if same && x != y {
                    return Ok((n, Some(format!("x={} y={}", self.name(x), self.name(y)))));
                }
            }
        }
        Ok((n, None))
    }

    /// Empty set, witnessed by φ₀.
    fn zf2(&mut self) -> Result<(usize, Option<String>)> {
        let r = self.roster.clone();
        for &y in &r {
            if self.universe.acts_on(TermRef::PHI0, y)? {
                return Ok((r.len(), Some(format!("phi 0 acts on {}", self.name(y)))));
            }
        }
        if !r.contains(&TermRef::PHI0) || !self.universe.is_zf_set(TermRef::PHI0)? {
            return Ok((r.len(), Some("phi 0 missing".into())));
        }
        Ok((r.len(), None))
    }

    /// Pairing.
    fn zf3(&mut self) -> Result<(usize, Option<String>)> {
        let r = self.roster.clone();
        let mut n = 0;
        for &x in &r {
            for &y in &r {
                n += 1;
                let z = pair_set(&mut self.universe, x, y)?;
                if !self.universe.is_zf_set(z)? {
                    return Ok((
                        n,
                        Some(format!("{{{}, {}}} is not a ZF-set", self.name(x), self.name(y))),
                    ));
                }
                for t in self.points(z)? {
                    if self.universe.acts_on(z, t)? != (t == x || t == y) {
                        return Ok((
                            n,
                            Some(format!(
                                "x={} y={} t={}",
                                self.name(x),
                                self.name(y),
                                self.name(t)
                            )),
                        ));
                    }
                }
            }
        }
        Ok((n, None))
    }

    /// Power set.
    fn zf4(&mut self) -> Result<(usize, Option<String>)> {
        let r = self.roster.clone();
        let mut n = 0;
        for &x in &r {
            n += 1;
            let p = self.universe.power(x)?;
            if !self.universe.is_zf_set(p)? {
                return Ok((n, Some(format!("power of {} is not a ZF-set", self.name(x)))));
            }
            for t in self.points(p)? {
                let sub = self.universe.is_zf_set(t)? && self.universe.is_subfunction(t, x)?;
                if self.universe.acts_on(p, t)? != sub {
                    return Ok((n, Some(format!("x={} t={}", self.name(x), self.name(t)))));
                }
            }
        }
        Ok((n, None))
    }

    fn separation_catalog(&self) -> Vec<PredicateExpr> {
        let mut out = vec![
            PredicateExpr::eq(TermRef::PHI0),
            PredicateExpr::neq(TermRef::PHI0),
            PredicateExpr::zf_set(),
        ];
        for &y in self.roster.iter().take(4) {
            out.push(PredicateExpr::member_of(y));
            out.push(PredicateExpr::subset_of(y).not());
        }
        out
    }

    /// Separation over a fixed formula catalog.
    fn zf5(&mut self) -> Result<(usize, Option<String>)> {
        let r = self.roster.clone();
        let catalog = self.separation_catalog();
        let mut n = 0;
        for &f in &r {
            for p in &catalog {
                n += 1;
                let g = self.universe.restrict(f, p)?;
                if !self.universe.is_zf_set(g)? {
                    return Ok((n, Some(format!("{}|{p} is not a ZF-set", self.name(f)))));
                }
                for x in self.points(g)? {
                    let rhs = self.universe.acts_on(f, x)? && self.universe.eval_predicate(p, x)?;
                    if self.universe.acts_on(g, x)? != rhs {
                        return Ok((n, Some(format!("f={} F={p} x={}", self.name(f), self.name(x)))));
                    }
                }
            }
        }
        Ok((n, None))
    }

    /// Replacement for the functional formulas `y = A(x)` of a catalog:
    /// successor, singleton, and the constant φ₀.
    fn zf6(&mut self) -> Result<(usize, Option<String>)> {
        let r = self.roster.clone();
        let mut n = 0;
        for which in 0..3 {
            for &z in &r {
                n += 1;
                let mut graph = Vec::new();
                for s in self.universe.support(z)? {
                    let img = match which {
                        0 => self.universe.successor(s)?,
                        1 => pair_set(&mut self.universe, s, s)?,
                        _ => TermRef::PHI0,
                    };
                    graph.push((s, img));
                }
                let images: Vec<TermRef> = graph.iter().map(|&(_, v)| v).collect();
                let w = self
                    .universe
                    .restrict(TermRef::ONE, &PredicateExpr::one_of(&images))?;
                let label = ["successor", "singleton", "constant phi 0"][which];
                if !self.universe.is_zf_set(w)? {
                    return Ok((
                        n,
                        Some(format!("{label} image of {} is not a ZF-set", self.name(z))),
                    ));
                }
                for t in self.points(w)? {
                    let rhs = graph.iter().any(|&(_, v)| v == t);
                    if self.universe.acts_on(w, t)? != rhs {
                        return Ok((n, Some(format!("{label} z={} t={}", self.name(z), self.name(t)))));
                    }
                }
            }
        }
        Ok((n, None))
    }

    /// Union, compared with a plain set union of the members' elements.
    fn zf7(&mut self) -> Result<(usize, Option<String>)> {
        let r = self.roster.clone();
        let mut n = 0;
        for &f in &r {
            n += 1;
            let un = self.universe.union(f)?;
            let mut oracle = BTreeSet::new();
            for m in self.universe.support(f)? {
                for (&k, &v) in self.universe.exceptions_of(m) {
                    if v != TermRef::ZERO && k != m {
                        oracle.insert(k);
                    }
                }
            }
            let got: BTreeSet<TermRef> = self.universe.support(un)?.into_iter().collect();
            if got != oracle || !self.universe.is_zf_set(un)? {
                return Ok((n, Some(format!("union of {}", self.name(f)))));
            }
        }
        Ok((n, None))
    }

    /// Infinity, witnessed by ω.
    fn zf8(&mut self) -> Result<(usize, Option<String>)> {
        let w = TermRef::OMEGA;
        if !self.universe.acts_on(w, TermRef::PHI0)? || !self.universe.is_zf_set(w)? {
            return Ok((1, Some("omega".into())));
        }
        let r = self.roster.clone();
        let mut n = 1;
        for &y in &r {
            if !self.universe.acts_on(w, y)? {
                continue;
            }
            n += 1;
            let s = self.universe.successor(y)?;
            let single = pair_set(&mut self.universe, y, y)?;
            let members = [y, single];
            let yy = self.universe.union_of(&members)?;
            if s != yy || !self.universe.acts_on(w, s)? {
                return Ok((n, Some(format!("y={}", self.name(y)))));
            }
        }
        Ok((n, None))
    }

    /// Choice, on every roster member whose members are non-empty and
    /// pairwise disjoint.
    fn zf9(&mut self) -> Result<(usize, Option<String>)> {
        let r = self.roster.clone();
        let mut n = 0;
        for &x in &r {
            let members = self.universe.support(x)?;
            if !self.disjoint_nonempty(&members)? {
                continue;
            }
            n += 1;
            let c = self.universe.choice(x)?;
            if !self.universe.is_zf_set(c)? {
                return Ok((n, Some(format!("choice of {} is not a ZF-set", self.name(x)))));
            }
            for &m in &members {
                let mut hits = 0;
                for w in self.universe.support(m)? {
                    if self.universe.acts_on(c, w)?
                        && self.universe.evaluate(c, w)? == self.universe.evaluate(m, w)?
                    {
                        hits += 1;
                    }
                }
                if hits != 1 {
                    return Ok((
                        n,
                        Some(format!("x={} member={} hits={hits}", self.name(x), self.name(m))),
                    ));
                }
            }
        }
        Ok((n, None))
    }

    fn disjoint_nonempty(&mut self, members: &[TermRef]) -> Result<bool> {
        let mut seen = BTreeSet::new();
        for &m in members {
            let s = self.universe.support(m)?;
            if s.is_empty() {
                return Ok(false);
            }
            for t in s {
                if !seen.insert(t) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn add_hereditarily(u: &mut Universe, t: TermRef, roster: &mut BTreeSet<TermRef>) -> Result<()> {
    if roster.insert(t) {
        for x in u.support(t)? {
            add_hereditarily(u, x, roster)?;
        }
    }
    Ok(())
}
