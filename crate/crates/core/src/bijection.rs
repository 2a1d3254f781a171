//! Minimal factorizations of the long cycle and vertex-labeled trees.
//!
//! `F↓n` holds the length `n-1` sequences whose product is `(n,...,2,1)`;
//! `F↑n` uses `(1,2,...,n)`. Both consist of trees. The dual carries `F↓n`
//! onto `F↑n`, and the relabeling `S` turns an edge-labeled tree in `F↑n` into
//! a vertex-labeled tree: vertex 1 stays put and every other vertex takes one
//! more than the label of its edge towards vertex 1. `B = S ∘ D` is a
//! bijection from `F↓n` onto the `n^{n-2}` labeled trees.

use std::collections::{BTreeSet, BinaryHeap, VecDeque};
use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::dual::dual;
use crate::error::{parse_err, Error, Result};
use crate::graph::LabeledMultigraph;
use crate::perm::{parse_header, Permutation, Transposition, TranspositionSequence};
use crate::trails::migt_cover;

/// Environment variable overriding [`DEFAULT_MAX_N`].
pub const MAX_N_VAR: &str = "PERMDUAL_MAX_N";
pub const DEFAULT_MAX_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Product `(n,...,2,1)`.
    Down,
    /// Product `(1,2,...,n)`.
    Up,
}

impl Direction {
    pub fn target(self, n: usize) -> Permutation {
        match self {
            Direction::Down => Permutation::long_cycle_down(n),
            Direction::Up => Permutation::long_cycle_up(n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Down => "down",
            Direction::Up => "up",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "down" => Ok(Direction::Down),
            "up" => Ok(Direction::Up),
            _ => Err(parse_err(format!("unknown direction {s:?}"))),
        }
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..=n).collect())
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.0[v] != v {
            self.0[v] = self.0[self.0[v]];
            v = self.0[v];
        }
        v
    }

    /// False when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

fn is_spanning_tree(n: usize, edges: impl ExactSizeIterator<Item = (usize, usize)>) -> bool {
    if n == 0 || edges.len() + 1 != n {
        return false;
    }
    let mut dsu = Dsu::new(n);
    let mut ok = true;
    for (a, b) in edges {
        ok &= dsu.union(a, b);
    }
    ok
}

/// Whether `s`, read as a graph, is a tree on `[n]`.
pub fn is_tree_sequence(s: &TranspositionSequence) -> bool {
    is_spanning_tree(s.n(), s.entries().iter().map(|t| (t.x(), t.y())))
}

fn check_tree(s: &TranspositionSequence) -> Result<()> {
    if is_tree_sequence(s) {
        Ok(())
    } else {
        Err(Error::NotATree)
    }
}

/// Checks that `s` is a tree whose product is the long cycle of `dir`.
pub fn check_factorization(s: &TranspositionSequence, dir: Direction) -> Result<()> {
    check_tree(s)?;
    let target = dir.target(s.n());
    let product = s.product();
    if product != target {
        return Err(Error::WrongProduct {
            expected: target.to_string(),
            found: product.to_string(),
        });
    }
    Ok(())
}

/// A tree on `[n]` without edge labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabeledTree {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl VertexLabeledTree {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        let mut edges = BTreeSet::new();
        let mut count = 0;
        for (a, b) in pairs {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::LabelOutOfRange { label: v, n });
                }
            }
            edges.insert((a.min(b), a.max(b)));
            count += 1;
        }
        if count != edges.len() || edges.iter().any(|&(a, b)| a == b) {
            return Err(Error::NotATree);
        }
        if !is_spanning_tree(n, edges.iter().copied()) {
            return Err(Error::NotATree);
        }
        Ok(VertexLabeledTree { n, edges })
    }

    /// Forgets the edge labels of a tree sequence.
    pub fn from_sequence(s: &TranspositionSequence) -> Result<Self> {
        check_tree(s)?;
        VertexLabeledTree::new(s.n(), s.iter().map(|t| (t.x(), t.y())))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// Neighbors of each vertex, ascending. Index 0 is vertex 1.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a - 1].push(b);
            adj[b - 1].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// The two components left after deleting edge `{a, b}`.
    pub fn split(&self, a: usize, b: usize) -> Option<VertexPartition> {
        if !self.has_edge(a, b) {
            return None;
        }
        let adj = self.adjacency();
        let side = component(self.n, a, |v| {
            adj[v - 1]
                .iter()
                .copied()
                .filter(move |&w| !((v == a && w == b) || (v == b && w == a)))
                .collect()
        });
        Some(VertexPartition::from_side(self.n, side))
    }

    /// Index of the smallest edge split: `min(|A|, |B|)` for every edge, sorted.
    pub fn t_indices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges()
            .map(|(a, b)| self.split(a, b).expect("own edge").min_size())
            .collect();
        out.sort_unstable();
        out
    }
}

fn component(n: usize, start: usize, neighbors: impl Fn(usize) -> Vec<usize>) -> BTreeSet<usize> {
    let mut seen = vec![false; n + 1];
    let mut out = BTreeSet::new();
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        out.insert(v);
        for w in neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    out
}

impl fmt::Display for VertexLabeledTree {
    /// `n=<k>; {x,y} {x,y} ...` with edges ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.n)?;
        for (a, b) in &self.edges {
            write!(f, " {{{a},{b}}}")?;
        }
        Ok(())
    }
}

impl FromStr for VertexLabeledTree {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (n, rest) = parse_header(text.trim(), "n")?;
        let mut pairs = Vec::new();
        for tok in rest.split_whitespace() {
            let inner = tok
                .strip_prefix('{')
                .and_then(|t| t.strip_suffix('}'))
                .ok_or_else(|| parse_err(format!("bad tree edge {tok:?}")))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| parse_err(format!("bad tree edge {tok:?}")))?;
            let parse = |v: &str| {
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| parse_err(format!("bad vertex in {tok:?}")))
            };
            pairs.push((parse(a)?, parse(b)?));
        }
        VertexLabeledTree::new(n, pairs)
    }
}

/// An unordered pair of complementary nonempty label sets covering `[n]`.
/// The part holding label 1 is stored first, so equality ignores order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPartition {
    first: BTreeSet<usize>,
    second: BTreeSet<usize>,
}

impl VertexPartition {
    pub fn new(a: impl IntoIterator<Item = usize>, b: impl IntoIterator<Item = usize>) -> Result<Self> {
        let a: BTreeSet<usize> = a.into_iter().collect();
        let b: BTreeSet<usize> = b.into_iter().collect();
        let n = a.len() + b.len();
        let union: BTreeSet<usize> = a.union(&b).copied().collect();
        if a.is_empty() || b.is_empty() || union.len() != n || union != (1..=n).collect() {
            return Err(parse_err("parts must be disjoint, nonempty and cover 1..=n"));
        }
        Ok(VertexPartition::ordered(a, b))
    }

    fn ordered(a: BTreeSet<usize>, b: BTreeSet<usize>) -> Self {
        if a.contains(&1) {
            VertexPartition { first: a, second: b }
        } else {
            VertexPartition { first: b, second: a }
        }
    }

    fn from_side(n: usize, side: BTreeSet<usize>) -> Self {
        let rest = (1..=n).filter(|v| !side.contains(v)).collect();
        VertexPartition::ordered(side, rest)
    }

    /// The part containing 1, then the other part.
    pub fn parts(&self) -> (&BTreeSet<usize>, &BTreeSet<usize>) {
        (&self.first, &self.second)
    }

    pub fn min_size(&self) -> usize {
        self.first.len().min(self.second.len())
    }
}

impl fmt::Display for VertexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &BTreeSet<usize>| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{{{}}} | {{{}}}", show(&self.first), show(&self.second))
    }
}

/// Components of the tree `s` after deleting entry `k` (1-based).
pub fn fpart(s: &TranspositionSequence, k: usize) -> Result<VertexPartition> {
    check_tree(s)?;
    let t = s.entry(k)?;
    let n = s.n();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for (i, e) in s.iter().enumerate() {
        adj[e.x()].push((e.y(), i + 1));
        adj[e.y()].push((e.x(), i + 1));
    }
    let side = component(n, t.x(), |v| {
        adj[v].iter().filter(|&&(_, label)| label != k).map(|&(w, _)| w).collect()
    });
    Ok(VertexPartition::from_side(n, side))
}

/// For an `n`-cycle `p` written `(x, x_1, ..., x_a, y, y_1, ..., y_b)`,
/// the partition `{x, x_1, ..., x_a} | {y, y_1, ..., y_b}`.
pub fn cycle_partition(p: &Permutation, t: Transposition) -> Result<VertexPartition> {
    let n = p.n();
    if t.y() > n {
        return Err(Error::DimensionMismatch { expected: n, found: t.y() });
    }
    if p.orbit(t.x()).len() != n {
        return Err(Error::WrongProduct {
            expected: format!("an {n}-cycle"),
            found: p.to_string(),
        });
    }
    let mut side = BTreeSet::new();
    let mut v = t.x();
    while v != t.y() {
        side.insert(v);
        v = p.apply(v);
    }
    Ok(VertexPartition::from_side(n, side))
}

/// The split of the product cycle of `s` at entry `k` (1-based).
pub fn cpart(s: &TranspositionSequence, k: usize) -> Result<VertexPartition> {
    let t = s.entry(k)?;
    cycle_partition(&s.product(), t)
}

pub fn c_index(s: &TranspositionSequence, k: usize) -> Result<usize> {
    Ok(cpart(s, k)?.min_size())
}

pub fn t_index(s: &TranspositionSequence, k: usize) -> Result<usize> {
    Ok(fpart(s, k)?.min_size())
}

/// `S`: vertex 1 keeps its label, every other vertex `v` becomes `1 + w`
/// where `w` labels the edge from `v` towards vertex 1; edge labels are dropped.
pub fn relabel_s(s: &TranspositionSequence) -> Result<VertexLabeledTree> {
    check_tree(s)?;
    let n = s.n();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for (i, e) in s.iter().enumerate() {
        adj[e.x()].push((e.y(), i + 1));
        adj[e.y()].push((e.x(), i + 1));
    }
    let mut new_label = vec![0; n + 1];
    new_label[1] = 1;
    let mut queue = VecDeque::from([1]);
    while let Some(v) = queue.pop_front() {
        for &(w, label) in &adj[v] {
            if new_label[w] == 0 {
                new_label[w] = label + 1;
                queue.push_back(w);
            }
        }
    }
    VertexLabeledTree::new(n, s.iter().map(|t| (new_label[t.x()], new_label[t.y()])))
}

/// `S⁻¹`: the edge from `v` towards vertex 1 gets label `v - 1`; the original
/// names are recovered by following greedy trails `1 -> 2 -> ... -> n`.
pub fn relabel_s_inverse(tree: &VertexLabeledTree) -> Result<TranspositionSequence> {
    let n = tree.n();
    let adj = tree.adjacency();
    let mut edges = vec![None; n.saturating_sub(1)];
    let mut seen = vec![false; n + 1];
    seen[1] = true;
    let mut queue = VecDeque::from([1]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v - 1] {
            if !seen[w] {
                seen[w] = true;
                edges[w - 2] = Some(Transposition::new(v, w)?);
                queue.push_back(w);
            }
        }
    }
    let edges: Vec<Transposition> = edges.into_iter().map(|e| e.expect("tree reaches every vertex")).collect();
    let g = LabeledMultigraph::new(n, edges)?;
    let next = migt_cover(&g).permutation();

    let mut old_name = vec![0; n + 1];
    let mut v = 1;
    for name in 1..=n {
        if old_name[v] != 0 {
            return Err(Error::WrongProduct {
                expected: format!("an {n}-cycle"),
                found: next.to_string(),
            });
        }
        old_name[v] = name;
        v = next.apply(v);
    }
    let renamed = g
        .edges()
        .iter()
        .map(|e| Transposition::new(old_name[e.x()], old_name[e.y()]))
        .collect::<Result<Vec<_>>>()?;
    TranspositionSequence::new(n, renamed)
}

/// `B = S ∘ D` on `F↓n`.
pub fn bijection_b(s: &TranspositionSequence) -> Result<VertexLabeledTree> {
    check_factorization(s, Direction::Down)?;
    relabel_s(&dual(s))
}

/// `B⁻¹ = D ∘ S⁻¹`.
pub fn bijection_b_inverse(tree: &VertexLabeledTree) -> Result<TranspositionSequence> {
    Ok(dual(&relabel_s_inverse(tree)?))
}

/// Prüfer code of a tree; empty for `n <= 2`.
pub fn prufer_encode(tree: &VertexLabeledTree) -> Vec<usize> {
    let n = tree.n();
    if n <= 2 {
        return Vec::new();
    }
    let adj = tree.adjacency();
    let mut degree: Vec<usize> = std::iter::once(0).chain(adj.iter().map(|a| a.len())).collect();
    let mut removed = vec![false; n + 1];
    let mut leaves: BinaryHeap<Reverse<usize>> = (1..=n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut code = Vec::with_capacity(n - 2);
    while code.len() < n - 2 {
        let Reverse(leaf) = leaves.pop().expect("a tree with 3+ vertices has a leaf");
        removed[leaf] = true;
        let parent = *adj[leaf - 1].iter().find(|&&w| !removed[w]).expect("leaf has a neighbor");
        code.push(parent);
        degree[parent] -= 1;
        if degree[parent] == 1 {
            leaves.push(Reverse(parent));
        }
    }
    code
}

pub fn prufer_decode(n: usize, code: &[usize]) -> Result<VertexLabeledTree> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if n == 1 {
        return if code.is_empty() { VertexLabeledTree::new(1, []) } else { Err(Error::NotATree) };
    }
    if code.len() != n - 2 {
        return Err(parse_err(format!("a code for n={n} has {} entries, found {}", n - 2, code.len())));
    }
    let mut degree = vec![1usize; n + 1];
    for &v in code {
        if v == 0 || v > n {
            return Err(Error::LabelOutOfRange { label: v, n });
        }
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (1..=n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut pairs = Vec::with_capacity(n - 1);
    for &v in code {
        let Reverse(leaf) = leaves.pop().expect("a leaf remains");
        pairs.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().expect("two vertices remain");
    let Reverse(b) = leaves.pop().expect("two vertices remain");
    pairs.push((a, b));
    VertexLabeledTree::new(n, pairs)
}

/// `n^{n-2}`, the number of labeled trees on `[n]` (1 for `n = 1`).
pub fn tree_count(n: usize) -> usize {
    if n <= 2 {
        1
    } else {
        n.pow((n - 2) as u32)
    }
}

/// The `index`-th Prüfer code in lexicographic order.
pub fn prufer_code_at(n: usize, mut index: usize) -> Vec<usize> {
    let len = n.saturating_sub(2);
    let mut code = vec![1; len];
    for slot in code.iter_mut().rev() {
        *slot = index % n + 1;
        index /= n;
    }
    code
}

/// The member of `F↓n` or `F↑n` matching a Prüfer code.
pub fn factorization_from_prufer(n: usize, code: &[usize], dir: Direction) -> Result<TranspositionSequence> {
    let tree = prufer_decode(n, code)?;
    match dir {
        Direction::Up => relabel_s_inverse(&tree),
        Direction::Down => bijection_b_inverse(&tree),
    }
}

/// A uniformly random member of `F↓n`.
pub fn random_fdown<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<TranspositionSequence> {
    let code: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(1..=n)).collect();
    factorization_from_prufer(n, &code, Direction::Down)
}

/// The enumeration cap: `PERMDUAL_MAX_N` if set, else [`DEFAULT_MAX_N`].
pub fn max_n() -> usize {
    std::env::var(MAX_N_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

pub fn check_cap(n: usize) -> Result<()> {
    let cap = max_n();
    if n > cap {
        return Err(Error::ResourceCap { n, cap });
    }
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Depth-first search over transpositions keeping a forest.
    Dfs,
    /// Prüfer codes mapped back through the bijection.
    Prufer,
}

impl Generator {
    pub fn name(self) -> &'static str {
        match self {
            Generator::Dfs => "dfs",
            Generator::Prufer => "prufer",
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dfs" => Ok(Generator::Dfs),
            "prufer" => Ok(Generator::Prufer),
            _ => Err(parse_err(format!("unknown generator {s:?}"))),
        }
    }
}

/// Streams every member to `visit`; returns the number visited.
pub fn for_each_factorization(
    n: usize,
    dir: Direction,
    generator: Generator,
    visit: impl FnMut(&TranspositionSequence),
) -> Result<usize> {
    check_cap(n)?;
    match generator {
        Generator::Dfs => Ok(dfs_factorizations(n, dir, visit)),
        Generator::Prufer => prufer_factorizations(n, dir, visit),
    }
}

fn prufer_factorizations(n: usize, dir: Direction, mut visit: impl FnMut(&TranspositionSequence)) -> Result<usize> {
    let total = tree_count(n);
    for i in 0..total {
        let s = factorization_from_prufer(n, &prufer_code_at(n, i), dir)?;
        visit(&s);
    }
    Ok(total)
}

struct Search<'a, F> {
    n: usize,
    target: Vec<usize>,
    image: Vec<usize>,
    inverse: Vec<usize>,
    component: Vec<usize>,
    entries: Vec<Transposition>,
    pairs: Vec<Transposition>,
    seen: Vec<bool>,
    visit: &'a mut F,
    count: usize,
}

impl<F: FnMut(&TranspositionSequence)> Search<'_, F> {
    /// Right-multiplies the running product by `t`; its own inverse.
    fn toggle(&mut self, t: Transposition) {
        let (x, y) = (t.x(), t.y());
        let (px, py) = (self.inverse[x], self.inverse[y]);
        self.image[px] = y;
        self.image[py] = x;
        self.inverse.swap(x, y);
    }

    /// Transpositions still needed to reach the target from the running product.
    fn distance_to_target(&mut self) -> usize {
        // q = p^{-1} · target, so q(v) = target(p^{-1}(v))
        self.seen.iter_mut().for_each(|s| *s = false);
        let mut cycles = 0;
        for start in 1..=self.n {
            if self.seen[start] {
                continue;
            }
            cycles += 1;
            let mut v = start;
            while !self.seen[v] {
                self.seen[v] = true;
                v = self.target[self.inverse[v]];
            }
        }
        self.n - cycles
    }

    fn run(&mut self, depth: usize) {
        if depth + 1 == self.n {
            if self.image[1..] == self.target[1..] {
                let s = TranspositionSequence::new(self.n, self.entries.clone()).expect("labels in range");
                (self.visit)(&s);
                self.count += 1;
            }
            return;
        }
        let left = self.n - 2 - depth;
        for i in 0..self.pairs.len() {
            let t = self.pairs[i];
            let (cx, cy) = (self.component[t.x()], self.component[t.y()]);
            if cx == cy {
                continue;
            }
            self.toggle(t);
            if self.distance_to_target() <= left {
                let saved = self.component.clone();
                for c in self.component.iter_mut() {
                    if *c == cy {
                        *c = cx;
                    }
                }
                self.entries.push(t);
                self.run(depth + 1);
                self.entries.pop();
                self.component = saved;
            }
            self.toggle(t);
        }
    }
}

fn dfs_factorizations(n: usize, dir: Direction, mut visit: impl FnMut(&TranspositionSequence)) -> usize {
    let mut target = vec![0];
    target.extend_from_slice(dir.target(n).images());
    let mut pairs = Vec::new();
    for x in 1..=n {
        for y in x + 1..=n {
            pairs.push(Transposition::new(x, y).expect("x < y"));
        }
    }
    let mut search = Search {
        n,
        target,
        image: (0..=n).collect(),
        inverse: (0..=n).collect(),
        component: (0..=n).collect(),
        entries: Vec::with_capacity(n),
        pairs,
        seen: vec![false; n + 1],
        visit: &mut visit,
        count: 0,
    };
    search.run(0);
    search.count
}

/// All members of `F↓n` or `F↑n`, sorted, each checked to be a tree with the right product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationSet {
    n: usize,
    direction: Direction,
    members: Vec<TranspositionSequence>,
    visited: usize,
}

impl FactorizationSet {
    pub fn enumerate(n: usize, direction: Direction, generator: Generator) -> Result<Self> {
        let mut members = Vec::new();
        let mut failure = None;
        let visited = for_each_factorization(n, direction, generator, |s| {
            if failure.is_none() {
                if let Err(e) = check_factorization(s, direction) {
                    failure = Some(e);
                }
            }
            members.push(s.clone());
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        members.sort();
        members.dedup();
        Ok(FactorizationSet {
            n,
            direction,
            members,
            visited,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn members(&self) -> &[TranspositionSequence] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// False when the generator produced some member more than once.
    pub fn is_duplicate_free(&self) -> bool {
        self.visited == self.members.len()
    }

    pub fn contains(&self, s: &TranspositionSequence) -> bool {
        self.members.binary_search(s).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuralViolation {
    /// `fpart(s, k) != cpart(s', k)`.
    EdgeSplit { k: usize, fpart: VertexPartition, cpart: VertexPartition },
    /// `cpart(s, k) != fpart(s', k)`.
    CycleSplit { k: usize, cpart: VertexPartition, fpart: VertexPartition },
    /// Sorted C-indices of `s` differ from sorted T-indices of `B(s)`.
    IndexMultiset { c_indices: Vec<usize>, t_indices: Vec<usize> },
}

impl fmt::Display for StructuralViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructuralViolation::EdgeSplit { k, fpart, cpart } => {
                write!(f, "entry {k}: edge split {fpart} but dual cycle split {cpart}")
            }
            StructuralViolation::CycleSplit { k, cpart, fpart } => {
                write!(f, "entry {k}: cycle split {cpart} but dual edge split {fpart}")
            }
            StructuralViolation::IndexMultiset { c_indices, t_indices } => {
                write!(f, "C-indices {c_indices:?} but T-indices {t_indices:?}")
            }
        }
    }
}

/// Outcome of the partition and index checks on one member of `F↓n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralReport {
    pub sequence: TranspositionSequence,
    pub violation: Option<StructuralViolation>,
}

impl StructuralReport {
    pub fn passes(&self) -> bool {
        self.violation.is_none()
    }
}

pub fn verify_structural(s: &TranspositionSequence) -> Result<StructuralReport> {
    check_factorization(s, Direction::Down)?;
    let d = dual(s);
    let report = |violation| StructuralReport {
        sequence: s.clone(),
        violation,
    };
    for k in 1..=s.len() {
        let (f, c) = (fpart(s, k)?, cpart(&d, k)?);
        if f != c {
            return Ok(report(Some(StructuralViolation::EdgeSplit { k, fpart: f, cpart: c })));
        }
        let (c, f) = (cpart(s, k)?, fpart(&d, k)?);
        if c != f {
            return Ok(report(Some(StructuralViolation::CycleSplit { k, cpart: c, fpart: f })));
        }
    }
    let mut c_indices = (1..=s.len()).map(|k| c_index(s, k)).collect::<Result<Vec<_>>>()?;
    c_indices.sort_unstable();
    let t_indices = bijection_b(s)?.t_indices();
    if c_indices != t_indices {
        return Ok(report(Some(StructuralViolation::IndexMultiset { c_indices, t_indices })));
    }
    Ok(report(None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use std::collections::HashSet;

    fn seq(text: &str) -> TranspositionSequence {
        text.parse().unwrap()
    }

    /// Every length `n-1` sequence of transpositions, filtered by product.
    fn brute_force(n: usize, dir: Direction) -> BTreeSet<TranspositionSequence> {
        let mut pairs = Vec::new();
        for x in 1..=n {
            for y in x + 1..=n {
                pairs.push((x, y));
            }
        }
        let target = dir.target(n);
        let mut out = BTreeSet::new();
        let len = n - 1;
        let total = pairs.len().pow(len as u32);
        for mut i in 0..total {
            let mut chosen = Vec::with_capacity(len);
            for _ in 0..len {
                chosen.push(pairs[i % pairs.len()]);
                i /= pairs.len();
            }
            let s = TranspositionSequence::from_pairs(n, &chosen).unwrap();
            if s.product() == target {
                out.insert(s);
            }
        }
        out
    }

    /// All trees on `[n]` by brute force over edge subsets.
    fn all_trees(n: usize) -> BTreeSet<VertexLabeledTree> {
        let mut pairs = Vec::new();
        for x in 1..=n {
            for y in x + 1..=n {
                pairs.push((x, y));
            }
        }
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            if mask.count_ones() as usize + 1 != n {
                continue;
            }
            let chosen = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
            if let Ok(t) = VertexLabeledTree::new(n, chosen) {
                out.insert(t);
            }
        }
        out
    }

    #[test]
    fn fdown3_members() {
        let set = FactorizationSet::enumerate(3, Direction::Down, Generator::Dfs).unwrap();
        let expected: Vec<TranspositionSequence> = vec![
            seq("n=3; (1,2) (2,3)"),
            seq("n=3; (1,3) (1,2)"),
            seq("n=3; (2,3) (1,3)"),
        ];
        assert_eq!(set.members(), expected.as_slice());
        let two = FactorizationSet::enumerate(2, Direction::Down, Generator::Prufer).unwrap();
        assert_eq!(two.members(), &[seq("n=2; (1,2)")]);
    }

    #[test]
    fn generators_match_brute_force() {
        for n in 2..=5 {
            for dir in [Direction::Down, Direction::Up] {
                let oracle = brute_force(n, dir);
                for generator in [Generator::Dfs, Generator::Prufer] {
                    let set = FactorizationSet::enumerate(n, dir, generator).unwrap();
                    assert!(set.is_duplicate_free(), "n={n} {dir} {}", generator.name());
                    let got: BTreeSet<_> = set.members().iter().cloned().collect();
                    assert_eq!(got, oracle, "n={n} {dir} {}", generator.name());
                }
            }
        }
    }

    #[test]
    fn counts_through_six() {
        for n in 1..=6 {
            let dfs = FactorizationSet::enumerate(n, Direction::Down, Generator::Dfs).unwrap();
            let prufer = FactorizationSet::enumerate(n, Direction::Down, Generator::Prufer).unwrap();
            assert_eq!(dfs.len(), tree_count(n));
            assert_eq!(dfs, FactorizationSet { visited: dfs.len(), ..prufer });
        }
    }

    #[test]
    fn cap_is_enforced() {
        let n = max_n() + 1;
        assert_eq!(
            for_each_factorization(n, Direction::Down, Generator::Dfs, |_| {}),
            Err(Error::ResourceCap { n, cap: max_n() })
        );
        assert!(check_cap(0).is_err());
    }

    #[test]
    fn fig8_relabeling() {
        let t = fixtures::sequence("fig8").unwrap();
        let s = relabel_s(&t).unwrap();
        assert_eq!(s, fixtures::tree("fig8").unwrap());
        assert_eq!(relabel_s(&seq("n=2; (1,2)")).unwrap().to_string(), "n=2; {1,2}");
    }

    #[test]
    fn star_relabeling() {
        // star at 1: leaf v gets 1 + label of its edge
        let s = seq("n=4; (1,3) (1,4) (1,2)");
        let tree = relabel_s(&s).unwrap();
        assert_eq!(tree.to_string(), "n=4; {1,2} {1,3} {1,4}");
        let s = seq("n=4; (1,2) (1,3) (1,4)");
        assert!(relabel_s(&s).is_ok());
    }

    #[test]
    fn relabel_rejects_non_trees() {
        assert_eq!(relabel_s(&seq("n=3; (1,2) (1,2)")), Err(Error::NotATree));
        assert_eq!(relabel_s(&seq("n=4; (1,2) (2,3)")), Err(Error::NotATree));
    }

    #[test]
    fn inverse_of_two_vertex_tree() {
        let t: VertexLabeledTree = "n=2; {1,2}".parse().unwrap();
        assert_eq!(relabel_s_inverse(&t).unwrap(), seq("n=2; (1,2)"));
    }

    #[test]
    fn s_round_trips_on_all_small_trees() {
        for n in 1..=6 {
            for tree in all_trees(n) {
                let s = relabel_s_inverse(&tree).unwrap();
                check_factorization(&s, Direction::Up).unwrap();
                assert_eq!(relabel_s(&s).unwrap(), tree);
            }
        }
    }

    #[test]
    fn b_is_a_bijection_for_small_n() {
        for n in 2..=6 {
            let set = FactorizationSet::enumerate(n, Direction::Down, Generator::Dfs).unwrap();
            let image: BTreeSet<VertexLabeledTree> =
                set.members().iter().map(|s| bijection_b(s).unwrap()).collect();
            assert_eq!(image.len(), tree_count(n));
            if n <= 5 {
                assert_eq!(image, all_trees(n));
            }
            for s in set.members() {
                assert_eq!(&bijection_b_inverse(&bijection_b(s).unwrap()).unwrap(), s);
            }
        }
    }

    #[test]
    fn b_rejects_wrong_input() {
        assert!(matches!(bijection_b(&seq("n=3; (2,3) (1,2)")), Err(Error::WrongProduct { .. })));
        assert_eq!(bijection_b(&seq("n=3; (1,2) (1,2)")), Err(Error::NotATree));
    }

    #[test]
    fn partitions_of_fig8_edge() {
        let t = fixtures::sequence("fig8").unwrap();
        let f = fpart(&t, 4).unwrap();
        assert_eq!(f, VertexPartition::new([1, 8], 2..=7).unwrap());
        assert_eq!(t_index(&t, 4).unwrap(), 2);
        let c = cycle_partition(&Permutation::long_cycle_down(8), Transposition::new(2, 8).unwrap()).unwrap();
        assert_eq!(c, VertexPartition::new(3..=8, [1, 2]).unwrap());
        assert_eq!(c.min_size(), 2);
        assert_eq!(t.product(), Permutation::long_cycle_down(8));
        assert_eq!(c_index(&t, 4).unwrap(), 2);
    }

    #[test]
    fn small_partitions() {
        let s = seq("n=2; (1,2)");
        assert_eq!(cpart(&s, 1).unwrap(), VertexPartition::new([1], [2]).unwrap());
        assert_eq!(fpart(&s, 1).unwrap(), VertexPartition::new([2], [1]).unwrap());
        assert!(fpart(&s, 2).is_err());
        assert!(VertexPartition::new([1, 2], [2, 3]).is_err());
        assert!(VertexPartition::new([1, 2], Vec::new()).is_err());
    }

    #[test]
    fn leaf_edges_have_index_one() {
        let t = fixtures::sequence("fig8").unwrap();
        // (4,5) is entry 1 and vertex 4 is a leaf
        assert_eq!(fpart(&t, 1).unwrap(), VertexPartition::new([4], (1..=8).filter(|&v| v != 4)).unwrap());
        assert_eq!(t_index(&t, 1).unwrap(), 1);
    }

    #[test]
    fn structural_on_small_n() {
        for n in 2..=5 {
            let set = FactorizationSet::enumerate(n, Direction::Down, Generator::Dfs).unwrap();
            for s in set.members() {
                let r = verify_structural(s).unwrap();
                assert!(r.passes(), "{s}: {}", r.violation.unwrap());
            }
        }
    }

    #[test]
    fn tree_text_form() {
        let t = fixtures::tree("fig8").unwrap();
        assert_eq!(t.to_string().parse::<VertexLabeledTree>().unwrap(), t);
        assert!("n=3; {1,2} {1,2}".parse::<VertexLabeledTree>().is_err());
        assert!("n=3; {1,2}".parse::<VertexLabeledTree>().is_err());
        assert!("n=3; {1,2} {2,3} {1,3}".parse::<VertexLabeledTree>().is_err());
        assert_eq!("n=1;".parse::<VertexLabeledTree>().unwrap().n(), 1);
    }

    #[test]
    fn prufer_round_trip_and_count() {
        for n in 1..=6 {
            let mut seen = HashSet::new();
            for i in 0..tree_count(n) {
                let code = prufer_code_at(n, i);
                let t = prufer_decode(n, &code).unwrap();
                assert_eq!(prufer_encode(&t), code);
                seen.insert(t);
            }
            assert_eq!(seen.len(), tree_count(n));
        }
        assert_eq!(prufer_code_at(4, 0), vec![1, 1]);
        assert_eq!(prufer_code_at(4, 15), vec![4, 4]);
    }

    #[test]
    fn random_members_lie_in_fdown() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [2, 5, 8] {
            for _ in 0..50 {
                let s = random_fdown(n, &mut rng).unwrap();
                check_factorization(&s, Direction::Down).unwrap();
            }
        }
    }

    proptest! {
        #[test]
        fn partitions_are_complementary(i in 0usize..1296, k in 1usize..6) {
            let s = factorization_from_prufer(6, &prufer_code_at(6, i), Direction::Down).unwrap();
            for p in [fpart(&s, k).unwrap(), cpart(&s, k).unwrap()] {
                let (a, b) = p.parts();
                prop_assert!(!a.is_empty() && !b.is_empty());
                prop_assert_eq!(a.len() + b.len(), 6);
                prop_assert!(a.is_disjoint(b));
                prop_assert!(p.min_size() >= 1 && p.min_size() <= 3);
            }
        }

        #[test]
        fn sampled_structural_for_larger_n(seed in any::<u64>(), n in 7usize..=8) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let s = random_fdown(n, &mut rng).unwrap();
            prop_assert!(verify_structural(&s).unwrap().passes());
        }
    }
}
