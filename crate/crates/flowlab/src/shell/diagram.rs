use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{FlowError, Result};
use crate::kernel::{TermRef, Universe};

/// Rectangle diagram of a finite-action term: one edge `x -> f(x)` per
/// point of its action. The self-point is never drawn.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramGraph {
    pub title: String,
    pub nodes: Vec<(TermRef, String)>,
    pub edges: Vec<(TermRef, TermRef)>,
    pub omitted: TermRef,
}

impl Universe {
    pub fn diagram(&mut self, f: TermRef) -> Result<DiagramGraph> {
        self.check(f)?;
        if !self.has_finite_action(f) {
            let co_action = self.co_action(f).unwrap_or_default();
            return Err(FlowError::CofiniteSupport { term: f, co_action });
        }
        let mut edges = Vec::new();
        let mut involved = BTreeSet::new();
        for x in self.support(f)? {
            let y = self.evaluate(f, x)?;
            involved.insert(x);
            involved.insert(y);
            edges.push((x, y));
        }
        let nodes = involved.into_iter().map(|t| (t, self.label(t))).collect();
        Ok(DiagramGraph {
            title: self.label(f),
            nodes,
            edges,
            omitted: f,
        })
    }

    /// Writes the diagram of `f` to `path`.
    pub fn export_diagram(&mut self, f: TermRef, path: &Path) -> Result<()> {
        let dot = self.diagram(f)?.to_dot();
        std::fs::write(path, dot)?;
        Ok(())
    }

    /// Canonical name, else `(a, b)` for ordered pairs, else `#id`.
    pub fn label(&self, t: TermRef) -> String {
        if let Some(n) = self.canonical_name(t) {
            return n;
        }
        match self.decompose_pair(t) {
            Ok(p) => format!("({}, {})", self.label(p.first), self.label(p.second)),
            Err(_) => t.to_string(),
        }
    }
}

fn node_id(t: TermRef) -> String {
    format!("t{}", t.id())
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

impl DiagramGraph {
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph flow {{");
        let _ = writeln!(s, "  label=\"{}\";", escape(&self.title));
        let _ = writeln!(s, "  // self-point {} omitted", self.omitted);
        for (t, l) in &self.nodes {
            let _ = writeln!(s, "  {} [label=\"{}\"];", node_id(*t), escape(l));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  {} -> {};", node_id(a), node_id(b));
        }
        s.push_str("}\n");
        s
    }
}
