//! Named example inputs bundled with the library.
//!
//! Files live in `fixtures/` and are looked up by stem plus a kind-specific
//! extension: `.seq`, `.graph`, `.cover`, `.tree`, `.steps`.

use crate::error::{parse_err, Error, Result};
use crate::graph::{content_lines, LabeledMultigraph};
use crate::perm::{Transposition, TranspositionSequence};
use crate::trails::TrailDoubleCover;
use crate::bijection::VertexLabeledTree;

const FILES: &[(&str, &str)] = &[
    ("fig1.seq", include_str!("../fixtures/fig1.seq")),
    ("fig1.graph", include_str!("../fixtures/fig1.graph")),
    ("fig2.cover", include_str!("../fixtures/fig2.cover")),
    ("fig3.cover", include_str!("../fixtures/fig3.cover")),
    ("fig6.graph", include_str!("../fixtures/fig6.graph")),
    ("fig7.steps", include_str!("../fixtures/fig7.steps")),
    ("fig8.seq", include_str!("../fixtures/fig8.seq")),
    ("fig8.tree", include_str!("../fixtures/fig8.tree")),
    ("fig9.seq", include_str!("../fixtures/fig9.seq")),
    ("fig10.graph", include_str!("../fixtures/fig10.graph")),
    ("fig11.graph", include_str!("../fixtures/fig11.graph")),
];

/// All bundled file names, e.g. `fig3.cover`.
pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(name, _)| *name)
}

/// Raw text of a bundled file, by full file name.
pub fn load(file: &str) -> Option<&'static str> {
    FILES.iter().find(|(name, _)| *name == file).map(|(_, text)| *text)
}

fn text(stem: &str, ext: &str) -> Result<&'static str> {
    let file = format!("{stem}.{ext}");
    load(&file).ok_or_else(|| parse_err(format!("no fixture named {file}")))
}

pub fn sequence(stem: &str) -> Result<TranspositionSequence> {
    let body: Vec<&str> = content_lines(text(stem, "seq")?).collect();
    body.join(" ").parse()
}

pub fn graph(stem: &str) -> Result<LabeledMultigraph> {
    text(stem, "graph")?.parse()
}

pub fn cover(stem: &str) -> Result<TrailDoubleCover> {
    text(stem, "cover")?.parse()
}

pub fn tree(stem: &str) -> Result<VertexLabeledTree> {
    let body: Vec<&str> = content_lines(text(stem, "tree")?).collect();
    body.join(" ").parse()
}

/// Step snapshots: each step lists `(label, edge)` pairs in file order.
pub fn steps(stem: &str) -> Result<Vec<Vec<(usize, Transposition)>>> {
    let mut out: Vec<Vec<(usize, Transposition)>> = Vec::new();
    for line in content_lines(text(stem, "steps")?) {
        if line.starts_with("step") {
            out.push(Vec::new());
            continue;
        }
        let current = out
            .last_mut()
            .ok_or_else(|| parse_err("edge line before the first step"))?;
        let (label, ends) = line
            .split_once(':')
            .ok_or_else(|| parse_err(format!("bad step line {line:?}")))?;
        let nums = std::iter::once(label)
            .chain(ends.split_whitespace())
            .map(|t| t.trim().parse::<usize>().map_err(|_| parse_err(format!("bad number in {line:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let [k, a, b] = nums[..] else {
            return Err(Error::Parse(format!("bad step line {line:?}")));
        };
        current.push((k, Transposition::new(a, b)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_parses() {
        for name in names() {
            let (stem, ext) = name.rsplit_once('.').unwrap();
            let ok = match ext {
                "seq" => sequence(stem).is_ok(),
                "graph" => graph(stem).is_ok(),
                "cover" => cover(stem).is_ok(),
                "tree" => tree(stem).is_ok(),
                "steps" => steps(stem).is_ok(),
                _ => false,
            };
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn sequence_and_graph_agree() {
        assert_eq!(LabeledMultigraph::from(&sequence("fig1").unwrap()), graph("fig1").unwrap());
        assert_eq!(LabeledMultigraph::from(&sequence("fig9").unwrap()), graph("fig10").unwrap());
    }

    #[test]
    fn unknown_fixture() {
        assert!(graph("fig99").is_err());
        assert!(load("fig1.seq").is_some());
    }
}
