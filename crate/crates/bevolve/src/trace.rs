//! Ordered edge traces and their on-disk format.
//!
//! A trace records one full run of either process variant: the parameters,
//! the edges in arrival order, and which variant produced it. The text
//! format is line-oriented and deterministic down to the byte:
//!
//! ```text
//! bipartite-trace L R t alpha beta simple_flag
//! u v
//! u v
//! ...
//! ```
//!
//! The header carries the part sizes, the number of edges, both attachment
//! weights (shortest round-trip decimal form), and `1` for the simple
//! variant or `0` for the multigraph variant. Each subsequent line is one
//! edge, left vertex first. Writing the same trace twice yields identical
//! bytes, which is what the seed-determinism tests check.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::BipartiteMultigraph;
use crate::params::Params;

#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub params: Params,
    pub edges: Vec<(u32, u32)>,
    /// True when produced by the simple (non-adjacent pairs only) variant.
    pub simple: bool,
}

const HEADER_TAG: &str = "bipartite-trace";

impl Trace {
    /// Rebuilds the multigraph by replaying the edges in order.
    ///
    /// Fails if an edge is out of range, or if the trace claims to be
    /// simple but repeats a pair.
    pub fn replay(&self) -> Result<BipartiteMultigraph> {
        let mut g = BipartiteMultigraph::new(self.params.left_count(), self.params.right_count());
        for &(u, v) in &self.edges {
            if self.simple && g.adjacent(u, v) {
                return Err(Error::TraceFormat(format!(
                    "simple trace repeats the pair ({u}, {v})"
                )));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graphs after 0, 1, ..., t edges, in order.
    pub fn prefix_graphs(&self) -> Result<Vec<BipartiteMultigraph>> {
        let mut g = BipartiteMultigraph::new(self.params.left_count(), self.params.right_count());
        let mut out = Vec::with_capacity(self.edges.len() + 1);
        out.push(g.clone());
        for &(u, v) in &self.edges {
            g.add_edge(u, v)?;
            out.push(g.clone());
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{HEADER_TAG} {} {} {} {} {} {}",
            self.params.left_count(),
            self.params.right_count(),
            self.edges.len(),
            self.params.alpha(),
            self.params.beta(),
            u8::from(self.simple),
        );
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Trace> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::TraceFormat("empty input".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 7 || fields[0] != HEADER_TAG {
            return Err(Error::TraceFormat(format!(
                "header must be '{HEADER_TAG} L R t alpha beta simple_flag', got '{header}'"
            )));
        }
        let parse_u32 = |s: &str, what: &str| {
            s.parse::<u32>()
                .map_err(|_| Error::TraceFormat(format!("bad {what} '{s}'")))
        };
        let parse_f64 = |s: &str, what: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::TraceFormat(format!("bad {what} '{s}'")))
        };
        let left = parse_u32(fields[1], "left count")?;
        let right = parse_u32(fields[2], "right count")?;
        let t = fields[3]
            .parse::<usize>()
            .map_err(|_| Error::TraceFormat(format!("bad edge count '{}'", fields[3])))?;
        let alpha = parse_f64(fields[4], "alpha")?;
        let beta = parse_f64(fields[5], "beta")?;
        let simple = match fields[6] {
            "0" => false,
            "1" => true,
            other => {
                return Err(Error::TraceFormat(format!("bad simple flag '{other}'")));
            }
        };
        let params = Params::new(alpha, beta, left, right)?;
        let mut edges = Vec::with_capacity(t);
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let (u, v) = match (it.next(), it.next(), it.next()) {
                (Some(u), Some(v), None) => (parse_u32(u, "edge endpoint")?, parse_u32(v, "edge endpoint")?),
                _ => return Err(Error::TraceFormat(format!("bad edge line '{line}'"))),
            };
            if u >= left || v >= right {
                return Err(Error::TraceFormat(format!("edge ({u}, {v}) out of range")));
            }
            edges.push((u, v));
        }
        if edges.len() != t {
            return Err(Error::TraceFormat(format!(
                "header promises {t} edges, found {}",
                edges.len()
            )));
        }
        Ok(Trace { params, edges, simple })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Trace> {
        let text = fs::read_to_string(path)?;
        Trace::from_text(&text)
    }
}
