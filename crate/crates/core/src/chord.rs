//! Circle chord diagrams.
//!
//! Points `1..n` sit clockwise on a circle and each edge of a tree becomes a
//! labeled chord. All geometry is combinatorial: a point's position is its
//! label, and clockwise order around `v` is the order of `(w - v) mod n`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::bijection::is_tree_sequence;
use crate::error::{Error, Result};
use crate::graph::LabeledMultigraph;
use crate::perm::{Transposition, TranspositionSequence};
use crate::trails::Trail;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircleChordDiagram {
    n: usize,
    chords: Vec<Transposition>,
}

/// Whether `u` lies strictly inside the clockwise arc from `a` to `b`.
fn strictly_between(a: usize, b: usize, u: usize) -> bool {
    let (lo, hi) = (a.min(b), a.max(b));
    lo < u && u < hi
}

/// Two chords cross when they share no endpoint and exactly one endpoint of
/// one lies strictly between the endpoints of the other.
pub fn crosses(p: Transposition, q: Transposition) -> bool {
    if p.contains(q.x()) || p.contains(q.y()) {
        return false;
    }
    strictly_between(p.x(), p.y(), q.x()) != strictly_between(p.x(), p.y(), q.y())
}

impl CircleChordDiagram {
    pub fn new(n: usize, chords: Vec<Transposition>) -> Result<Self> {
        let s = TranspositionSequence::new(n, chords)?;
        Ok(CircleChordDiagram {
            n,
            chords: s.entries().to_vec(),
        })
    }

    /// One chord per entry of a tree sequence, labels carried over.
    pub fn from_tree(t: &TranspositionSequence) -> Result<Self> {
        if !is_tree_sequence(t) {
            return Err(Error::NotATree);
        }
        CircleChordDiagram::new(t.n(), t.entries().to_vec())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn chords(&self) -> &[Transposition] {
        &self.chords
    }

    pub fn chord(&self, label: usize) -> Option<Transposition> {
        label.checked_sub(1).and_then(|i| self.chords.get(i)).copied()
    }

    /// The first crossing pair of chord labels, if any.
    pub fn check_noncrossing(&self) -> Result<(), (usize, usize)> {
        for (i, &p) in self.chords.iter().enumerate() {
            for (j, &q) in self.chords.iter().enumerate().skip(i + 1) {
                if crosses(p, q) {
                    return Err((i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    /// Labels of the chords at `v`, ordered by the clockwise position of the
    /// far endpoint starting just after `v`.
    pub fn clockwise_at(&self, v: usize) -> Vec<usize> {
        let mut at: Vec<(usize, usize)> = self
            .chords
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(v))
            .map(|(i, c)| ((c.other(v) + self.n - v) % self.n, i + 1))
            .collect();
        at.sort_unstable();
        at.into_iter().map(|(_, label)| label).collect()
    }

    /// The first point whose chord labels fail to decrease clockwise.
    pub fn check_clockwise_decreasing(&self) -> Result<(), usize> {
        for v in 1..=self.n {
            let labels = self.clockwise_at(v);
            if labels.windows(2).any(|w| w[0] <= w[1]) {
                return Err(v);
            }
        }
        Ok(())
    }

    /// Boundary of the region bordering the arc that ends at `x`.
    pub fn region_walk(&self, x: usize) -> Result<RegionWalk> {
        if x == 0 || x > self.n {
            return Err(Error::LabelOutOfRange { label: x, n: self.n });
        }
        if let Err((a, b)) = self.check_noncrossing() {
            return Err(Error::CrossingChords(a, b));
        }
        Ok(self.walk(x))
    }

    fn walk(&self, x: usize) -> RegionWalk {
        let mut vertices = vec![x];
        let mut edges = Vec::new();
        let mut chord = self.clockwise_at(x).last().copied();
        while let Some(c) = chord {
            if edges.len() > self.chords.len() {
                break;
            }
            let here = *vertices.last().expect("nonempty");
            let next = self.chords[c - 1].other(here);
            edges.push(c);
            vertices.push(next);
            let around = self.clockwise_at(next);
            let pos = around.iter().position(|&l| l == c).expect("chord meets its endpoint");
            chord = pos.checked_sub(1).map(|p| around[p]);
        }
        RegionWalk {
            region: x,
            boundary: Trail::new(vertices, edges).expect("walk alternates vertices and chords"),
        }
    }

    /// SVG drawing with circled chord labels and, optionally, a dual drawn dashed
    /// between region markers.
    pub fn to_svg(&self, dual: Option<&LabeledMultigraph>) -> String {
        let (size, r) = (420.0, 170.0);
        let c = size / 2.0;
        let n = self.n.max(1) as f64;
        let at = |pos: f64, radius: f64| {
            let angle = std::f64::consts::TAU * pos / n;
            (c + radius * angle.sin(), c - radius * angle.cos())
        };
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let _ = writeln!(out, r#"  <circle cx="{c}" cy="{c}" r="{r}" fill="none" stroke="black"/>"#);
        for (i, chord) in self.chords.iter().enumerate() {
            let (x1, y1) = at(chord.x() as f64, r);
            let (x2, y2) = at(chord.y() as f64, r);
            let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
            let _ = writeln!(
                out,
                r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black"/>"#
            );
            let _ = writeln!(
                out,
                r#"  <circle cx="{mx:.2}" cy="{my:.2}" r="9" fill="white" stroke="black"/><text x="{mx:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#,
                my + 4.0,
                i + 1
            );
        }
        for v in 1..=self.n {
            let (x, y) = at(v as f64, r);
            let (tx, ty) = at(v as f64, r + 18.0);
            let _ = writeln!(out, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/>"#);
            let _ = writeln!(
                out,
                r#"  <text x="{tx:.2}" y="{:.2}" font-size="13" text-anchor="middle">{v}</text>"#,
                ty + 4.0
            );
        }
        if let Some(d) = dual {
            let region = |k: usize| at(k as f64 - 0.5, r * 0.82);
            for (i, e) in d.edges().iter().enumerate() {
                let (x1, y1) = region(e.x());
                let (x2, y2) = region(e.y());
                let _ = writeln!(
                    out,
                    r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="gray" stroke-dasharray="4 3"/><text x="{:.2}" y="{:.2}" font-size="10" fill="gray">{}</text>"#,
                    (x1 + x2) / 2.0 + 6.0,
                    (y1 + y2) / 2.0 - 6.0,
                    i + 1
                );
            }
            for k in 1..=d.n() {
                let (x, y) = region(k);
                let _ = writeln!(out, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="4" fill="gray"/>"#);
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

/// The boundary of region `region`, walked from `region` to `region - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionWalk {
    pub region: usize,
    pub boundary: Trail,
}

impl RegionWalk {
    pub fn chords(&self) -> BTreeSet<usize> {
        self.boundary.edges().iter().copied().collect()
    }
}

pub fn chord_diagram(t: &TranspositionSequence) -> Result<CircleChordDiagram> {
    CircleChordDiagram::from_tree(t)
}

/// The dual whose vertex `k` is region `k`, with chord `k` becoming an edge
/// labeled `k` between the two regions it borders.
pub fn gy_dual(t: &TranspositionSequence) -> Result<LabeledMultigraph> {
    let d = CircleChordDiagram::from_tree(t).map_err(|_| Error::NotInFdown("not a tree".into()))?;
    if let Err((a, b)) = d.check_noncrossing() {
        return Err(Error::NotInFdown(format!("chords {a} and {b} cross")));
    }
    if let Err(v) = d.check_clockwise_decreasing() {
        return Err(Error::NotInFdown(format!("labels at point {v} do not decrease clockwise")));
    }
    let mut sides: Vec<Vec<usize>> = vec![Vec::new(); d.chords.len()];
    for x in 1..=d.n {
        for c in d.walk(x).chords() {
            sides[c - 1].push(x);
        }
    }
    let edges = sides
        .into_iter()
        .enumerate()
        .map(|(i, regions)| match regions[..] {
            [a, b] => Transposition::new(a, b),
            _ => Err(Error::NotInFdown(format!("chord {} borders {} regions", i + 1, regions.len()))),
        })
        .collect::<Result<Vec<_>>>()?;
    LabeledMultigraph::new(d.n, edges)
}
