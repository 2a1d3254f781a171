//! Four constructions of the dual of a transposition sequence.
//!
//! * mind-body: read the sequence as body swaps and record the minds swapped;
//! * trail: edge `k` joins the two vertices whose greedy trails use edge `k`;
//! * algebraic: entry `k` is `s_k` conjugated by `s_{k-1} ... s_1`;
//! * incremental: insert edges from `m` down to `1`, swapping endpoint labels
//!   after each insertion.
//!
//! All four agree on every input.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};
use crate::graph::LabeledMultigraph;
use crate::mindbody::mb_dual;
use crate::perm::{Permutation, Transposition, TranspositionSequence};
use crate::trails::migt_cover;

/// Edge `k` joins the start vertices of the two greedy trails that use it.
pub fn trail_dual(g: &LabeledMultigraph) -> LabeledMultigraph {
    let cover = migt_cover(g);
    let mut users: Vec<Vec<usize>> = vec![Vec::with_capacity(2); g.m()];
    for trail in cover.trails() {
        for &e in trail.edges() {
            users[e - 1].push(trail.start());
        }
    }
    let edges = users
        .into_iter()
        .map(|u| Transposition::new(u[0], u[1]).expect("greedy trails use each edge from distinct starts"))
        .collect();
    LabeledMultigraph::new(g.n(), edges).expect("dual stays on the same vertex set")
}

/// `⟨s_1, s_2^{s_1}, s_3^{s_2 s_1}, ...⟩`.
pub fn algebraic_dual(s: &TranspositionSequence) -> TranspositionSequence {
    let n = s.n();
    // conj = s_{k-1} ... s_1 with s_{k-1} acting first
    let mut conj = Permutation::identity(n);
    let mut entries = Vec::with_capacity(s.len());
    for t in s.iter() {
        entries.push(t.conjugate(&conj).expect("same n"));
        conj = t.to_permutation(n).expect("label in range").then(&conj).expect("same n");
    }
    TranspositionSequence::new(n, entries).expect("conjugates stay in [n]")
}

/// Snapshots of the incremental construction: after processing label `k`,
/// the current edges `(label, endpoints)` with labels `m` down to `k`.
pub fn graph_algorithm_trace(g: &LabeledMultigraph) -> Vec<Vec<(usize, Transposition)>> {
    let mut steps = Vec::with_capacity(g.m());
    run_graph_algorithm(g, |state| steps.push(state.materialize()));
    steps
}

pub fn graph_algorithm_dual(g: &LabeledMultigraph) -> LabeledMultigraph {
    let mut labeled = run_graph_algorithm(g, |_| {}).materialize();
    labeled.sort_by_key(|&(k, _)| k);
    let edges = labeled.into_iter().map(|(_, e)| e).collect();
    LabeledMultigraph::new(g.n(), edges).expect("dual stays on the same vertex set")
}

/// Edges of G* are stored between fixed slots; labels move over the slots.
struct IncrementalDual {
    slot_of_label: Vec<usize>,
    label_of_slot: Vec<usize>,
    edges: Vec<(usize, usize, usize)>,
}

impl IncrementalDual {
    fn materialize(&self) -> Vec<(usize, Transposition)> {
        self.edges
            .iter()
            .map(|&(k, a, b)| {
                let t = Transposition::new(self.label_of_slot[a], self.label_of_slot[b]).expect("slots differ");
                (k, t)
            })
            .collect()
    }
}

fn run_graph_algorithm(g: &LabeledMultigraph, mut on_step: impl FnMut(&IncrementalDual)) -> IncrementalDual {
    let n = g.n();
    let mut state = IncrementalDual {
        slot_of_label: (0..=n).collect(),
        label_of_slot: (0..=n).collect(),
        edges: Vec::with_capacity(g.m()),
    };
    for k in (1..=g.m()).rev() {
        let e = g.edges()[k - 1];
        let (sa, sb) = (state.slot_of_label[e.x()], state.slot_of_label[e.y()]);
        state.edges.push((k, sa, sb));
        state.slot_of_label.swap(e.x(), e.y());
        state.label_of_slot[sa] = e.y();
        state.label_of_slot[sb] = e.x();
        on_step(&state);
    }
    state
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DualMethod {
    MindBody,
    Trail,
    Algebraic,
    GraphAlgorithm,
}

impl DualMethod {
    pub const ALL: [DualMethod; 4] = [
        DualMethod::MindBody,
        DualMethod::Trail,
        DualMethod::Algebraic,
        DualMethod::GraphAlgorithm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DualMethod::MindBody => "mb",
            DualMethod::Trail => "trail",
            DualMethod::Algebraic => "algebraic",
            DualMethod::GraphAlgorithm => "graph-alg",
        }
    }

    pub fn apply(self, s: &TranspositionSequence) -> TranspositionSequence {
        match self {
            DualMethod::MindBody => mb_dual(s),
            DualMethod::Trail => trail_dual(&LabeledMultigraph::from(s)).to_sequence(),
            DualMethod::Algebraic => algebraic_dual(s),
            DualMethod::GraphAlgorithm => graph_algorithm_dual(&LabeledMultigraph::from(s)).to_sequence(),
        }
    }
}

impl fmt::Display for DualMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DualMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DualMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| parse_err(format!("unknown dual method {s:?}")))
    }
}

/// The default dual.
pub fn dual(s: &TranspositionSequence) -> TranspositionSequence {
    mb_dual(s)
}

/// One entry where a method disagrees with the mind-body dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub method: DualMethod,
    pub entry: usize,
    pub expected: Transposition,
    pub found: Transposition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualEquivalenceReport {
    pub input: TranspositionSequence,
    pub results: Vec<(DualMethod, TranspositionSequence)>,
    pub divergences: Vec<Divergence>,
}

impl DualEquivalenceReport {
    pub fn agrees(&self) -> bool {
        self.divergences.is_empty()
    }
}

/// Runs every method and compares each entrywise against the mind-body dual.
pub fn dual_equivalence_report(s: &TranspositionSequence) -> DualEquivalenceReport {
    let results: Vec<(DualMethod, TranspositionSequence)> =
        DualMethod::ALL.iter().map(|&m| (m, m.apply(s))).collect();
    let reference = results[0].1.clone();
    let mut divergences = Vec::new();
    for (method, d) in &results[1..] {
        for (i, (&expected, &found)) in reference.entries().iter().zip(d.entries()).enumerate() {
            if expected != found {
                divergences.push(Divergence {
                    method: *method,
                    entry: i + 1,
                    expected,
                    found,
                });
            }
        }
    }
    DualEquivalenceReport {
        input: s.clone(),
        results,
        divergences,
    }
}
