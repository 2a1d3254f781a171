//! Edge-labeled multigraphs on `[n]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::perm::{parse_header, Transposition, TranspositionSequence};

/// A loopless multigraph on `[n]` whose `m` edges carry the labels `1..=m`.
/// Position `k - 1` of `edges` holds the edge labeled `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledMultigraph {
    n: usize,
    edges: Vec<Transposition>,
}

impl LabeledMultigraph {
    pub fn new(n: usize, edges: Vec<Transposition>) -> Result<Self> {
        // same invariants as a sequence
        let s = TranspositionSequence::new(n, edges)?;
        Ok(LabeledMultigraph::from(&s))
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Ok(LabeledMultigraph::from(&TranspositionSequence::from_pairs(n, pairs)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Transposition] {
        &self.edges
    }

    /// Endpoints of the edge labeled `label`.
    pub fn edge(&self, label: usize) -> Option<Transposition> {
        label.checked_sub(1).and_then(|i| self.edges.get(i)).copied()
    }

    /// Edge labels incident to each vertex, ascending. Index 0 is vertex 1.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.x() - 1].push(i + 1);
            inc[e.y() - 1].push(i + 1);
        }
        inc
    }

    pub fn to_sequence(&self) -> TranspositionSequence {
        TranspositionSequence::new(self.n, self.edges.clone()).expect("graph invariants match sequence invariants")
    }

    /// Graphviz rendering with edge labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for v in 1..=self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (i, e) in self.edges.iter().enumerate() {
            out.push_str(&format!("  {} -- {} [label=\"{}\"];\n", e.x(), e.y(), i + 1));
        }
        out.push_str("}\n");
        out
    }

    pub(crate) fn write_edges(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}; m={};", self.n, self.m())?;
        for (i, e) in self.edges.iter().enumerate() {
            writeln!(f, "{}: {} {}", i + 1, e.x(), e.y())?;
        }
        Ok(())
    }

    /// Parses the graph header and its `m` edge lines, returning the lines left over.
    pub(crate) fn parse_prefix<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<Self> {
        let header = lines.next().ok_or(Error::EmptyInput)?;
        let (n, rest) = parse_header(header, "n")?;
        let (m, rest) = parse_header(rest, "m")?;
        if !rest.trim().is_empty() {
            return Err(parse_err(format!("trailing text after header: {rest:?}")));
        }
        let mut edges = vec![None; m];
        for _ in 0..m {
            let line = lines
                .next()
                .ok_or_else(|| parse_err(format!("expected {m} edge lines")))?;
            let (label, body) = line
                .split_once(':')
                .ok_or_else(|| parse_err(format!("bad edge line {line:?}")))?;
            let label: usize = label
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad edge label in {line:?}")))?;
            let ends = body
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| parse_err(format!("bad vertex in {line:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let [a, b] = ends[..] else {
                return Err(parse_err(format!("edge line needs two endpoints: {line:?}")));
            };
            if label == 0 || label > m || edges[label - 1].is_some() {
                return Err(parse_err(format!("edge label {label} missing or repeated")));
            }
            edges[label - 1] = Some(Transposition::new(a, b)?);
        }
        let edges = edges.into_iter().map(|e| e.expect("all m labels filled")).collect();
        LabeledMultigraph::new(n, edges)
    }
}

impl From<&TranspositionSequence> for LabeledMultigraph {
    fn from(s: &TranspositionSequence) -> Self {
        LabeledMultigraph {
            n: s.n(),
            edges: s.entries().to_vec(),
        }
    }
}

impl fmt::Display for LabeledMultigraph {
    /// `n=<k>; m=<j>;` followed by one `label: x y` line per edge.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_edges(f)
    }
}

impl FromStr for LabeledMultigraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let g = LabeledMultigraph::parse_prefix(&mut lines)?;
        if let Some(extra) = lines.next() {
            return Err(parse_err(format!("unexpected line {extra:?}")));
        }
        Ok(g)
    }
}

/// Non-blank lines with `#` comments stripped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}
