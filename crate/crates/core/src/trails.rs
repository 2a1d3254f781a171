//! Greedy trails, trail double covers and their realizability.
//!
//! The minimal increasing greedy trail (MIGT) from a vertex repeatedly takes
//! the smallest incident edge label exceeding every label used so far. The
//! MIGTs of a labeled graph form a trail double cover: one trail starts at
//! each vertex and every edge is used by exactly two trails. A cover is
//! realizable (arises as the MIGTs of some labeling) exactly when its edge
//! digraph, which links consecutive edges of each trail, is acyclic; any
//! topological order of that digraph is a witness labeling.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::graph::{content_lines, LabeledMultigraph};
use crate::perm::Permutation;

/// A walk `v_1 -e_1- v_2 ... v_k` with no repeated edge. Edges are stored by
/// label (edge id), never by endpoints, so parallel edges stay distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trail {
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl Trail {
    pub fn new(vertices: Vec<usize>, edges: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyInput);
        }
        if vertices.len() != edges.len() + 1 {
            return Err(parse_err(format!(
                "trail with {} vertices needs {} edges, found {}",
                vertices.len(),
                vertices.len() - 1,
                edges.len()
            )));
        }
        Ok(Trail { vertices, edges })
    }

    pub fn trivial(v: usize) -> Self {
        Trail {
            vertices: vec![v],
            edges: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("trails are nonempty")
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn uses(&self, edge: usize) -> bool {
        self.edges.contains(&edge)
    }

    fn map_edges(&self, f: impl Fn(usize) -> usize) -> Trail {
        Trail {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|&e| f(e)).collect(),
        }
    }
}

impl fmt::Display for Trail {
    /// `v1 -e1- v2 -e2- v3`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices[0])?;
        for (e, v) in self.edges.iter().zip(&self.vertices[1..]) {
            write!(f, " -{e}- {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Trail {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (i, tok) in text.split_whitespace().enumerate() {
            if i % 2 == 0 {
                vertices.push(tok.parse().map_err(|_| parse_err(format!("bad vertex {tok:?}")))?);
            } else {
                let inner = tok
                    .strip_prefix('-')
                    .and_then(|t| t.strip_suffix('-'))
                    .ok_or_else(|| parse_err(format!("bad edge token {tok:?}")))?;
                edges.push(inner.parse().map_err(|_| parse_err(format!("bad edge {tok:?}")))?);
            }
        }
        Trail::new(vertices, edges)
    }
}

/// The MIGT `T_u`; a trivial trail when `u` has no incident edge.
pub fn migt(g: &LabeledMultigraph, u: usize) -> Result<Trail> {
    if u == 0 || u > g.n() {
        return Err(Error::LabelOutOfRange { label: u, n: g.n() });
    }
    Ok(migt_with(g, &g.incidence(), u))
}

fn migt_with(g: &LabeledMultigraph, incidence: &[Vec<usize>], u: usize) -> Trail {
    let mut vertices = vec![u];
    let mut edges = Vec::new();
    let mut at = u;
    let mut last = 0;
    loop {
        let inc = &incidence[at - 1];
        let i = inc.partition_point(|&e| e <= last);
        let Some(&e) = inc.get(i) else { break };
        at = g.edges()[e - 1].other(at);
        last = e;
        edges.push(e);
        vertices.push(at);
    }
    Trail { vertices, edges }
}

/// The set of all MIGTs of `g`.
pub fn migt_cover(g: &LabeledMultigraph) -> TrailDoubleCover {
    let incidence = g.incidence();
    let trails = (1..=g.n()).map(|u| migt_with(g, &incidence, u)).collect();
    TrailDoubleCover {
        graph: g.clone(),
        trails,
    }
}

/// One failed condition of a candidate trail double cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { trail: usize, vertex: usize },
    UnknownEdge { trail: usize, edge: usize },
    BrokenStep { trail: usize, step: usize },
    RepeatedEdge { trail: usize, edge: usize },
    MissingStart { vertex: usize },
    DuplicateStart { vertex: usize, count: usize },
    EdgeUse { edge: usize, count: usize },
    EndCount { vertex: usize, count: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { trail, vertex } => {
                write!(f, "trail #{trail} visits unknown vertex {vertex}")
            }
            Violation::UnknownEdge { trail, edge } => write!(f, "trail #{trail} uses unknown edge {edge}"),
            Violation::BrokenStep { trail, step } => {
                write!(f, "trail #{trail} step {step} does not follow its edge")
            }
            Violation::RepeatedEdge { trail, edge } => write!(f, "trail #{trail} repeats edge {edge}"),
            Violation::MissingStart { vertex } => write!(f, "no trail starts at vertex {vertex}"),
            Violation::DuplicateStart { vertex, count } => {
                write!(f, "{count} trails start at vertex {vertex}")
            }
            Violation::EdgeUse { edge, count } => write!(f, "edge {edge} is used {count} times"),
            Violation::EndCount { vertex, count } => write!(f, "{count} trails end at vertex {vertex}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverViolations(pub Vec<Violation>);

impl fmt::Display for CoverViolations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Checks every trail double cover condition; `trails` may come in any order.
/// Trail numbers in the report are 0-based positions in `trails`.
pub fn tdc_validate(g: &LabeledMultigraph, trails: &[Trail]) -> Result<(), CoverViolations> {
    let mut violations = Vec::new();
    let mut edge_use = vec![0usize; g.m()];
    let mut starts = vec![0usize; g.n()];
    let mut ends = vec![0usize; g.n()];

    for (ti, trail) in trails.iter().enumerate() {
        let bad_vertex = trail.vertices.iter().find(|&&v| v == 0 || v > g.n());
        if let Some(&vertex) = bad_vertex {
            violations.push(Violation::VertexOutOfRange { trail: ti, vertex });
            continue;
        }
        starts[trail.start() - 1] += 1;
        ends[trail.end() - 1] += 1;
        let mut seen = BTreeSet::new();
        for (step, &e) in trail.edges.iter().enumerate() {
            let Some(edge) = g.edge(e) else {
                violations.push(Violation::UnknownEdge { trail: ti, edge: e });
                continue;
            };
            let (a, b) = (trail.vertices[step], trail.vertices[step + 1]);
            if !(edge.contains(a) && edge.other(a) == b) {
                violations.push(Violation::BrokenStep { trail: ti, step: step + 1 });
            }
            if !seen.insert(e) {
                violations.push(Violation::RepeatedEdge { trail: ti, edge: e });
            } else {
                edge_use[e - 1] += 1;
            }
        }
    }
    for (i, &count) in starts.iter().enumerate() {
        match count {
            0 => violations.push(Violation::MissingStart { vertex: i + 1 }),
            1 => {}
            _ => violations.push(Violation::DuplicateStart { vertex: i + 1, count }),
        }
    }
    for (i, &count) in edge_use.iter().enumerate() {
        if count != 2 {
            violations.push(Violation::EdgeUse { edge: i + 1, count });
        }
    }
    for (i, &count) in ends.iter().enumerate() {
        if count != 1 {
            violations.push(Violation::EndCount { vertex: i + 1, count });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CoverViolations(violations))
    }
}

/// A validated trail double cover; `trails[v - 1]` starts at `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrailDoubleCover {
    graph: LabeledMultigraph,
    trails: Vec<Trail>,
}

impl TrailDoubleCover {
    pub fn new(graph: LabeledMultigraph, mut trails: Vec<Trail>) -> Result<Self> {
        tdc_validate(&graph, &trails).map_err(Error::InvalidCover)?;
        trails.sort_by_key(|t| t.start());
        Ok(TrailDoubleCover { graph, trails })
    }

    pub fn graph(&self) -> &LabeledMultigraph {
        &self.graph
    }

    pub fn trails(&self) -> &[Trail] {
        &self.trails
    }

    pub fn trail_from(&self, v: usize) -> &Trail {
        &self.trails[v - 1]
    }

    /// Start vertices of the two trails using `edge`.
    pub fn users(&self, edge: usize) -> (usize, usize) {
        let mut it = self.trails.iter().filter(|t| t.uses(edge)).map(|t| t.start());
        let a = it.next().expect("edge used twice");
        let b = it.next().expect("edge used twice");
        (a, b)
    }

    /// Each trail sends its start vertex to its end vertex.
    pub fn permutation(&self) -> Permutation {
        Permutation::from_images(self.trails.iter().map(|t| t.end()).collect())
            .expect("ends are unique in a valid cover")
    }

    pub fn edge_digraph(&self) -> EdgeDigraph {
        let mut arcs = BTreeSet::new();
        for t in &self.trails {
            for w in t.edges.windows(2) {
                arcs.insert((w[0], w[1]));
            }
        }
        EdgeDigraph {
            nodes: self.graph.m(),
            arcs,
        }
    }

    /// The same cover after renaming edge `e` to `labeling.label_of(e)`.
    pub fn relabel_edges(&self, labeling: &EdgeLabeling) -> TrailDoubleCover {
        TrailDoubleCover {
            graph: relabel(&self.graph, labeling),
            trails: self.trails.iter().map(|t| t.map_edges(|e| labeling.label_of(e))).collect(),
        }
    }
}

impl fmt::Display for TrailDoubleCover {
    /// The graph text followed by one `start: v1 -e1- v2 ...` line per trail.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.graph.write_edges(f)?;
        for t in &self.trails {
            writeln!(f, "{}: {}", t.start(), t)?;
        }
        Ok(())
    }
}

impl FromStr for TrailDoubleCover {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let graph = LabeledMultigraph::parse_prefix(&mut lines)?;
        let mut trails = Vec::new();
        for line in lines {
            let (start, body) = line
                .split_once(':')
                .ok_or_else(|| parse_err(format!("bad trail line {line:?}")))?;
            let start: usize = start
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad trail start in {line:?}")))?;
            let trail: Trail = body.parse()?;
            if trail.start() != start {
                return Err(parse_err(format!("trail line {line:?} does not start at {start}")));
            }
            trails.push(trail);
        }
        TrailDoubleCover::new(graph, trails)
    }
}

/// Digraph on the edges of a graph with an arc between consecutive edges of each trail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDigraph {
    nodes: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl EdgeDigraph {
    /// Node count; nodes are the edge labels `1..=nodes`.
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &BTreeSet<(usize, usize)> {
        &self.arcs
    }

    /// Kahn's algorithm with the smallest ready node taken first. On failure
    /// returns a directed cycle, rotated to start at its smallest node.
    pub fn topological_order(&self) -> Result<Vec<usize>, Vec<usize>> {
        let mut indeg = vec![0usize; self.nodes + 1];
        let mut succ = vec![Vec::new(); self.nodes + 1];
        let mut pred = vec![Vec::new(); self.nodes + 1];
        for &(a, b) in &self.arcs {
            indeg[b] += 1;
            succ[a].push(b);
            pred[b].push(a);
        }
        let mut ready: BinaryHeap<Reverse<usize>> =
            (1..=self.nodes).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(self.nodes);
        let mut done = vec![false; self.nodes + 1];
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            done[v] = true;
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(Reverse(w));
                }
            }
        }
        if order.len() == self.nodes {
            return Ok(order);
        }
        // every leftover node keeps a leftover predecessor, so walking
        // predecessors must revisit a node
        let start = (1..=self.nodes).find(|&v| !done[v]).expect("leftover node exists");
        let mut position = vec![usize::MAX; self.nodes + 1];
        let mut walk = Vec::new();
        let mut v = start;
        while position[v] == usize::MAX {
            position[v] = walk.len();
            walk.push(v);
            v = *pred[v]
                .iter()
                .filter(|&&p| !done[p])
                .min()
                .expect("leftover node has leftover predecessor");
        }
        let mut cycle: Vec<usize> = walk[position[v]..].to_vec();
        cycle.reverse();
        let min_at = cycle
            .iter()
            .enumerate()
            .min_by_key(|(_, &x)| x)
            .map(|(i, _)| i)
            .unwrap_or(0);
        cycle.rotate_left(min_at);
        Err(cycle)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n");
        for v in 1..=self.nodes {
            out.push_str(&format!("  e{v} [label=\"{v}\"];\n"));
        }
        for (a, b) in &self.arcs {
            out.push_str(&format!("  e{a} -> e{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// A bijection from edge ids to new labels; `label_of(e)` is the new label of edge `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeLabeling(Vec<usize>);

impl EdgeLabeling {
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        Permutation::from_images(labels.clone()).map_err(|_| Error::InvalidLabeling(labels.len()))?;
        Ok(EdgeLabeling(labels))
    }

    /// The labeling that numbers edges in the given order: `order[i]` gets label `i + 1`.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let m = order.len();
        let mut labels = vec![0; m];
        for (i, &e) in order.iter().enumerate() {
            if e == 0 || e > m || labels[e - 1] != 0 {
                return Err(Error::InvalidLabeling(m));
            }
            labels[e - 1] = i + 1;
        }
        Ok(EdgeLabeling(labels))
    }

    pub fn label_of(&self, edge: usize) -> usize {
        self.0[edge - 1]
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }
}

/// `g` with edge `e` moved to label `labeling.label_of(e)`.
pub fn relabel(g: &LabeledMultigraph, labeling: &EdgeLabeling) -> LabeledMultigraph {
    let mut edges = g.edges().to_vec();
    for (i, &e) in g.edges().iter().enumerate() {
        edges[labeling.label_of(i + 1) - 1] = e;
    }
    LabeledMultigraph::new(g.n(), edges).expect("relabeling keeps graph invariants")
}

/// Whether the MIGTs of the relabeled graph are exactly `cover` (renamed along).
pub fn is_realized_by(cover: &TrailDoubleCover, labeling: &EdgeLabeling) -> bool {
    if labeling.labels().len() != cover.graph().m() {
        return false;
    }
    let relabeled = relabel(cover.graph(), labeling);
    migt_cover(&relabeled) == cover.relabel_edges(labeling)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realization {
    /// `order` is the topological order used; `labeling` is derived from it.
    Realizable { order: Vec<usize>, labeling: EdgeLabeling },
    /// A directed cycle of the edge digraph.
    NotRealizable { cycle: Vec<usize> },
}

impl Realization {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Realization::Realizable { .. })
    }
}

/// Decides realizability; a returned labeling has been checked against the cover.
pub fn realize(cover: &TrailDoubleCover) -> Result<Realization> {
    match cover.edge_digraph().topological_order() {
        Err(cycle) => Ok(Realization::NotRealizable { cycle }),
        Ok(order) => {
            let labeling = EdgeLabeling::from_order(&order)?;
            if !is_realized_by(cover, &labeling) {
                return Err(Error::RealizationMismatch);
            }
            Ok(Realization::Realizable { order, labeling })
        }
    }
}
