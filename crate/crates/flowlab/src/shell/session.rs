//! Line-oriented session files:
//!
//! ```text
//! flowlab-session 1
//! #7 zero [#2 -> #2]
//! bindings
//! g #7
//! ```
//!
//! One record per interned term in id order, then the bindings. Bootstrap
//! records are optional and must match the built-in terms.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::exec::{predicate, Session};
use super::parser::parse_pred;
use super::print::behavior_text;
use crate::error::{FlowError, Result};
use crate::kernel::{Behavior, Default, FamilyKind, OtherPart, PhiPart, TermRef, Universe};

pub const SESSION_HEADER: &str = "flowlab-session 1";

/// Ids below this are created by `Universe::new`.
const BOOTSTRAP_LEN: u32 = 7;

fn bad(line: usize, msg: impl std::fmt::Display) -> FlowError {
    FlowError::Session(format!("line {line}: {msg}"))
}

impl Session {
    pub fn save_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{SESSION_HEADER}");
        let id = |t: TermRef| t.to_string();
        for t in self.universe.terms() {
            let b = self.universe.behavior(t).expect("registered");
            let _ = writeln!(s, "{t} {}", behavior_text(b, &id));
        }
        let _ = writeln!(s, "bindings");
        for (n, t) in &self.bindings {
            let _ = writeln!(s, "{n} {t}");
        }
        s
    }

    /// Rebuilds a session from [`Session::save_text`] output. Nothing is
    /// kept on failure.
    pub fn load_text(text: &str) -> Result<Session> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        match lines.next() {
            Some((_, h)) if h.trim_end() == SESSION_HEADER => {}
            Some((_, h)) => return Err(FlowError::Session(format!("unsupported header '{h}'"))),
            None => return Err(FlowError::Session("empty file".into())),
        }
        let mut u = Universe::new();
        let mut bindings = BTreeMap::new();
        let mut in_bindings = false;
        for (no, line) in lines {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            if line == "bindings" {
                in_bindings = true;
                continue;
            }
            if in_bindings {
                let (name, id) = line.split_once(' ').ok_or_else(|| bad(no, "malformed binding"))?;
                let t = parse_id(id).ok_or_else(|| bad(no, "malformed binding"))?;
                u.check(t).map_err(|e| bad(no, e))?;
                if bindings.insert(name.to_string(), t).is_some() {
                    return Err(bad(no, format!("name '{name}' bound twice")));
                }
                continue;
            }
            let (id, rest) = line.split_once(' ').ok_or_else(|| bad(no, "malformed record"))?;
            let t = parse_id(id).ok_or_else(|| bad(no, "malformed record id"))?;
            let b = parse_behavior(&mut u, rest).map_err(|e| bad(no, e))?;
            if t.id() < BOOTSTRAP_LEN {
                if u.behavior(t)? != &b {
                    return Err(bad(no, format!("record {t} differs from the built-in term")));
                }
                continue;
            }
            if t.id() as usize != u.len() {
                return Err(bad(no, format!("id collision: expected #{}, found {t}", u.len())));
            }
            u.push_loaded(b).map_err(|e| bad(no, e))?;
        }
        Ok(Session {
            universe: u,
            bindings,
            seed: 0,
        })
    }
}

fn parse_id(s: &str) -> Option<TermRef> {
    s.strip_prefix('#')?.parse().ok().map(TermRef::from_id)
}

fn parse_behavior(u: &mut Universe, rest: &str) -> std::result::Result<Behavior, String> {
    let open = rest.rfind('[').ok_or("missing exception list")?;
    let kind = rest[..open].trim();
    let list = rest[open + 1..]
        .strip_suffix(']')
        .ok_or("unterminated exception list")?;
    let mut exceptions = BTreeMap::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once("->").ok_or("malformed exception")?;
        let k = term(u, k.trim())?;
        let v = term(u, v.trim())?;
        if exceptions.insert(k, v).is_some() {
            return Err(format!("duplicate key {k}"));
        }
    }
    Ok(Behavior::new(parse_kind(u, kind)?, exceptions))
}

fn term(u: &Universe, s: &str) -> std::result::Result<TermRef, String> {
    let t = parse_id(s).ok_or_else(|| format!("expected a term id, found '{s}'"))?;
    u.check(t).map_err(|e| e.to_string())?;
    Ok(t)
}

fn parse_kind(u: &mut Universe, kind: &str) -> std::result::Result<Default, String> {
    if let Some(p) = kind.strip_prefix("filter ") {
        let pred = parse_pred(p).map_err(|e| e.to_string())?;
        let pred = predicate(u, &BTreeMap::new(), &pred).map_err(|e| e.to_string())?;
        return Ok(Default::Filter(pred));
    }
    let w: Vec<&str> = kind.split_whitespace().collect();
    let num = |s: &str| s.parse::<u64>().map_err(|_| format!("bad number '{s}'"));
    Ok(match w.as_slice() {
        ["zero"] => Default::Zero,
        ["identity"] => Default::Identity,
        ["const", t] => Default::Const(term(u, t)?),
        ["rule", rest @ ..] => {
            let (phi, other) = match rest {
                ["affine", s, o, tail @ ..] => (
                    PhiPart::Affine {
                        scale: num(s)?,
                        offset: num(o)?,
                    },
                    tail,
                ),
                ["phiconst", t, tail @ ..] => (PhiPart::Const(term(u, t)?), tail),
                ["family", "plus", tail @ ..] => (PhiPart::Family(FamilyKind::Plus), tail),
                ["family", "times", tail @ ..] => (PhiPart::Family(FamilyKind::Times), tail),
                _ => return Err(format!("bad rule '{kind}'")),
            };
            let other = match other {
                ["succ", k] => OtherPart::Succ(num(k)?.try_into().map_err(|_| "succ count too large")?),
                ["else", t] => OtherPart::Const(term(u, t)?),
                _ => return Err(format!("bad rule '{kind}'")),
            };
            Default::Rule { phi, other }
        }
        _ => return Err(format!("unknown kind '{kind}'")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shell::parse;

    fn populated() -> Session {
        let mut s = Session::new();
        for line in [
            "let g = arrow { phi 0 -> phi 1, phi 1 -> phi 0, phi 2 -> phi 1 }",
            "let r = 1 where x != phi 4 and not x = phi 1",
            "let c = sigma . phi 3",
            "let p = prod(phi 3, phi 2)",
            "let w = power phi 3",
            "let q = plus(phi 2, phi 2) . lambda",
        ] {
            s.execute(&parse(line).unwrap()).unwrap();
        }
        s
    }

    #[test]
    fn roundtrip_preserves_everything() {
        let s = populated();
        let text = s.save_text();
        let t = Session::load_text(&text).unwrap();
        assert_eq!(t.universe.len(), s.universe.len());
        for id in s.universe.terms() {
            assert_eq!(s.universe.behavior(id).unwrap(), t.universe.behavior(id).unwrap());
            assert_eq!(s.universe.phi_index(id), t.universe.phi_index(id));
        }
        assert_eq!(s.bindings, t.bindings);
        assert_eq!(t.save_text(), text);
    }

    #[test]
    fn header_only_gives_bootstrap() {
        let s = Session::load_text("flowlab-session 1\n").unwrap();
        assert_eq!(s.universe.len(), 7);
        assert_eq!(
            s.universe.canonical_name(TermRef::SIGMA).as_deref(),
            Some("sigma")
        );
    }

    #[test]
    fn rejects_bad_files() {
        assert!(Session::load_text("flowlab-session 2\n").is_err());
        let dup = "flowlab-session 1\n#7 zero [#2 -> #2]\n#8 zero [#2 -> #2]\n";
        let e = Session::load_text(dup).unwrap_err();
        assert!(e.to_string().contains("duplicates"), "{e}");
        let gap = "flowlab-session 1\n#9 zero [#2 -> #2]\n";
        assert!(Session::load_text(gap)
            .unwrap_err()
            .to_string()
            .contains("collision"));
        let junk = "flowlab-session 1\n#7 wobble []\n";
        assert!(Session::load_text(junk).is_err());
    }
}
