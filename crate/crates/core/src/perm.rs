//! Permutations of `[n]`, transpositions and transposition sequences.
//!
//! Every public interface speaks 1-based labels. Products are taken left to
//! right: in `a.then(&b)` the permutation `a` acts first.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};

/// A bijection of `[n]` onto itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // image[k - 1] is the image of k
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (1..=n).collect(),
        }
    }

    /// Builds a permutation from its image list, `images[k - 1]` being the image of `k`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::NotAPermutation(n));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { image: images })
    }

    /// Builds a permutation from disjoint cycles; `(a,b,c)` maps a->b->c->a.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut image: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a == 0 || a > n {
                    return Err(Error::LabelOutOfRange { label: a, n });
                }
                if touched[a - 1] {
                    return Err(Error::NotAPermutation(n));
                }
                touched[a - 1] = true;
                image[a - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { image })
    }

    /// The long cycle `(n, ..., 2, 1)`: maps `k` to `k - 1` and `1` to `n`.
    pub fn long_cycle_down(n: usize) -> Self {
        Permutation {
            image: (1..=n).map(|k| if k == 1 { n } else { k - 1 }).collect(),
        }
    }

    /// The long cycle `(1, 2, ..., n)`: maps `k` to `k + 1` and `n` to `1`.
    pub fn long_cycle_up(n: usize) -> Self {
        Permutation {
            image: (1..=n).map(|k| if k == n { 1 } else { k + 1 }).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// Image of `x`. Panics if `x` is not in `[n]`.
    pub fn apply(&self, x: usize) -> usize {
        self.image[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { image: inv }
    }

    /// Left-to-right product `self · other`: `self` acts first.
    pub fn then(&self, other: &Permutation) -> Result<Self> {
        check_dim(self.n(), other.n())?;
        Ok(Permutation {
            image: self.image.iter().map(|&v| other.apply(v)).collect(),
        })
    }

    /// The conjugate `t⁻¹ · self · t`.
    pub fn conjugate(&self, t: &Permutation) -> Result<Self> {
        check_dim(self.n(), t.n())?;
        let mut image = vec![0; self.n()];
        // t⁻¹ p t sends t(x) to t(p(x))
        for x in 1..=self.n() {
            image[t.apply(x) - 1] = t.apply(self.apply(x));
        }
        Ok(Permutation { image })
    }

    /// In-place right multiplication by a transposition (`self · t`).
    pub(crate) fn swap_values(&mut self, t: Transposition) {
        for v in self.image.iter_mut() {
            *v = t.apply(*v);
        }
    }

    /// Disjoint cycles of length at least two, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x - 1] {
                seen[x - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        self.cycles().len() + self.image.iter().enumerate().filter(|(i, &v)| v == i + 1).count()
    }

    /// The orbit of `x`, starting at `x`.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut out = vec![x];
        let mut y = self.apply(x);
        while y != x {
            out.push(y);
            y = self.apply(y);
        }
        out
    }

    /// Parses cycle notation such as `(4,3,2,1)(5,6)`; `()` is the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let cycles = parse_groups(text)?
            .into_iter()
            .filter(|c| !c.is_empty())
            .collect::<Vec<_>>();
        for c in &cycles {
            if c.len() == 1 {
                return Err(parse_err("cycle of length one"));
            }
        }
        Permutation::from_cycles(n, &cycles)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, fixed points omitted; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            write!(f, "({})", join(&c, ","))?;
        }
        Ok(())
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub(crate) fn join(items: &[usize], sep: &str) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Splits `(a,b,..)(c,..)` into groups; only whitespace may sit between groups.
fn parse_groups(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut groups = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(parse_err(format!("expected '(' at {rest:?}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| parse_err("unclosed parenthesis"))?;
        let body = rest[1..close].trim();
        let group = if body.is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| parse_err(format!("bad label {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        groups.push(group);
        rest = rest[close + 1..].trim_start();
    }
    Ok(groups)
}

/// A transposition `(x,y)`, stored with `x < y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition {
    x: usize,
    y: usize,
}

impl Transposition {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::FixedTransposition(a));
        }
        if a == 0 || b == 0 {
            return Err(Error::LabelOutOfRange { label: 0, n: a.max(b) });
        }
        Ok(Transposition {
            x: a.min(b),
            y: a.max(b),
        })
    }

    pub fn x(self) -> usize {
        self.x
    }

    pub fn y(self) -> usize {
        self.y
    }

    pub fn contains(self, v: usize) -> bool {
        self.x == v || self.y == v
    }

    /// The endpoint opposite `v`; `v` must be an endpoint.
    pub fn other(self, v: usize) -> usize {
        debug_assert!(self.contains(v));
        if self.x == v {
            self.y
        } else {
            self.x
        }
    }

    pub fn apply(self, v: usize) -> usize {
        if v == self.x {
            self.y
        } else if v == self.y {
            self.x
        } else {
            v
        }
    }

    /// Conjugation by another transposition: exchanges the labels of `t` inside `self`.
    pub fn swap_labels(self, t: Transposition) -> Transposition {
        Transposition::new(t.apply(self.x), t.apply(self.y)).expect("conjugation preserves distinctness")
    }

    /// The conjugate `t⁻¹ · self · t = (t(x), t(y))`.
    pub fn conjugate(self, t: &Permutation) -> Result<Transposition> {
        if self.y > t.n() {
            return Err(Error::DimensionMismatch {
                expected: self.y,
                found: t.n(),
            });
        }
        Transposition::new(t.apply(self.x), t.apply(self.y))
    }

    pub fn to_permutation(self, n: usize) -> Result<Permutation> {
        if self.y > n {
            return Err(Error::LabelOutOfRange { label: self.y, n });
        }
        let mut p = Permutation::identity(n);
        p.image[self.x - 1] = self.y;
        p.image[self.y - 1] = self.x;
        Ok(p)
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Ordered list of transpositions over `S_n`. Also read as the labeled
/// multigraph on `[n]` whose edge `k` is the `k`-th entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TranspositionSequence {
    n: usize,
    entries: Vec<Transposition>,
}

impl TranspositionSequence {
    pub fn new(n: usize, entries: Vec<Transposition>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if let Some(t) = entries.iter().find(|t| t.y > n) {
            return Err(Error::LabelOutOfRange { label: t.y, n });
        }
        Ok(TranspositionSequence { n, entries })
    }

    /// Convenience constructor from raw pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let entries = pairs
            .iter()
            .map(|&(a, b)| Transposition::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        TranspositionSequence::new(n, entries)
    }

    pub fn empty(n: usize) -> Result<Self> {
        TranspositionSequence::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Transposition] {
        &self.entries
    }

    /// The `k`-th entry, 1-based.
    pub fn entry(&self, k: usize) -> Result<Transposition> {
        if k == 0 || k > self.len() {
            return Err(Error::IndexOutOfRange {
                index: k,
                len: self.len(),
            });
        }
        Ok(self.entries[k - 1])
    }

    pub fn iter(&self) -> impl Iterator<Item = Transposition> + '_ {
        self.entries.iter().copied()
    }

    /// The product `s_1 · s_2 ··· s_m`, leftmost factor acting first.
    pub fn product(&self) -> Permutation {
        let mut p = Permutation::identity(self.n);
        for &t in &self.entries {
            p.swap_values(t);
        }
        p
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &TranspositionSequence) -> Result<Self> {
        check_dim(self.n, other.n)?;
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(TranspositionSequence { n: self.n, entries })
    }

    /// `⟨t⟩ ++ self`.
    pub fn prepend(&self, t: Transposition) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.len() + 1);
        entries.push(t);
        entries.extend_from_slice(&self.entries);
        TranspositionSequence::new(self.n, entries)
    }

    pub fn prefix(&self, k: usize) -> Self {
        TranspositionSequence {
            n: self.n,
            entries: self.entries[..k.min(self.len())].to_vec(),
        }
    }

    /// Entrywise conjugation by `t`.
    pub fn conjugate(&self, t: Transposition) -> Result<Self> {
        if t.y > self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: t.y,
            });
        }
        Ok(TranspositionSequence {
            n: self.n,
            entries: self.entries.iter().map(|s| s.swap_labels(t)).collect(),
        })
    }

    /// The trajectory of `x`: contracted images of `x` under every prefix product.
    pub fn trajectory(&self, x: usize) -> Result<Trajectory> {
        if x == 0 || x > self.n {
            return Err(Error::LabelOutOfRange { label: x, n: self.n });
        }
        let mut points = Vec::with_capacity(self.len() + 1);
        let mut cur = x;
        points.push(cur);
        for t in self.iter() {
            cur = t.apply(cur);
            points.push(cur);
        }
        contraction(&points)
    }
}

impl fmt::Display for TranspositionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={};", self.n)?;
        for t in &self.entries {
            write!(f, " {t}")?;
        }
        Ok(())
    }
}

impl FromStr for TranspositionSequence {
    type Err = Error;

    /// Parses `n=<k>; (x,y) (x,y) ...`.
    fn from_str(text: &str) -> Result<Self> {
        let (n, rest) = parse_header(text.trim(), "n")?;
        let entries = parse_groups(rest)?
            .into_iter()
            .map(|g| match g.as_slice() {
                [a, b] => Transposition::new(*a, *b),
                _ => Err(parse_err(format!("expected a pair, found {g:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        TranspositionSequence::new(n, entries)
    }
}

/// Reads a leading `key=<value>;` field and returns the value and the remaining text.
pub(crate) fn parse_header<'a>(text: &'a str, key: &str) -> Result<(usize, &'a str)> {
    let text = text.trim_start();
    let body = text
        .strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix('='))
        .ok_or_else(|| parse_err(format!("expected '{key}=' header")))?;
    let semi = body
        .find(';')
        .ok_or_else(|| parse_err(format!("missing ';' after {key}=")))?;
    let value = body[..semi]
        .trim()
        .parse::<usize>()
        .map_err(|_| parse_err(format!("bad value for {key}")))?;
    Ok((value, &body[semi + 1..]))
}

/// A contracted sequence of points: no two consecutive points are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Trajectory {
    points: Vec<usize>,
}

impl Trajectory {
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn start(&self) -> usize {
        self.points[0]
    }

    pub fn end(&self) -> usize {
        *self.points.last().expect("trajectories are nonempty")
    }
}

/// Collapses maximal runs of equal consecutive entries.
pub fn contraction(points: &[usize]) -> Result<Trajectory> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut out: Vec<usize> = Vec::with_capacity(points.len());
    for &p in points {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    Ok(Trajectory { points: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::{any_sequence, any_sequence_with_n};
    use proptest::prelude::*;

    fn ex12() -> TranspositionSequence {
        "n=4; (3,4) (1,3) (1,2) (3,4) (2,3)".parse().unwrap()
    }

    fn t(a: usize, b: usize) -> Transposition {
        Transposition::new(a, b).unwrap()
    }

    #[test]
    fn worked_product_is_long_cycle_down() {
        let p = ex12().product();
        assert_eq!(p, Permutation::parse_cycles(4, "(4,3,2,1)").unwrap());
        assert_eq!(p.images(), &[4, 1, 2, 3]);
        assert_eq!(p, Permutation::long_cycle_down(4));
    }

    #[test]
    fn empty_and_squared_products() {
        assert!(TranspositionSequence::empty(5).unwrap().product().is_identity());
        let s = TranspositionSequence::from_pairs(2, &[(1, 2), (1, 2)]).unwrap();
        assert!(s.product().is_identity());
    }

    #[test]
    fn conjugation_examples() {
        let p = t(1, 2).to_permutation(4).unwrap();
        let a = t(1, 3).to_permutation(4).unwrap();
        let b = t(3, 4).to_permutation(4).unwrap();
        let step = p.conjugate(&a).unwrap();
        assert_eq!(step, t(2, 3).to_permutation(4).unwrap());
        let full = p.conjugate(&a.then(&b).unwrap()).unwrap();
        assert_eq!(full, t(2, 4).to_permutation(4).unwrap());
        assert_eq!(t(1, 2).swap_labels(t(1, 3)).swap_labels(t(3, 4)), t(2, 4));
        assert_eq!(t(1, 2).conjugate(&a.then(&b).unwrap()).unwrap(), t(2, 4));
        assert_eq!(p.conjugate(&Permutation::identity(4)).unwrap(), p);
    }

    #[test]
    fn conjugation_dimension_mismatch() {
        let p = Permutation::identity(3);
        let q = Permutation::identity(4);
        assert_eq!(
            p.conjugate(&q),
            Err(Error::DimensionMismatch { expected: 3, found: 4 })
        );
        assert!(ex12().conjugate(t(1, 7)).is_err());
    }

    #[test]
    fn sequence_conjugation_example() {
        let expected: TranspositionSequence = "n=4; (3,4) (1,4) (1,2) (3,4) (2,4)".parse().unwrap();
        assert_eq!(ex12().conjugate(t(3, 4)).unwrap(), expected);
        let s: TranspositionSequence = "n=6; (1,2) (2,3)".parse().unwrap();
        assert_eq!(s.conjugate(t(5, 6)).unwrap(), s);
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(contraction(&[3, 4, 4, 4, 3, 2, 2]).unwrap().points(), &[3, 4, 3, 2]);
        assert_eq!(contraction(&[5]).unwrap().points(), &[5]);
        assert_eq!(contraction(&[1, 1, 1]).unwrap().points(), &[1]);
        assert_eq!(contraction(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn trajectory_examples() {
        assert_eq!(ex12().trajectory(3).unwrap().points(), &[3, 4, 3, 2]);
        let s: TranspositionSequence = "n=5; (1,2) (2,3)".parse().unwrap();
        assert_eq!(s.trajectory(5).unwrap().points(), &[5]);
        assert_eq!(
            s.trajectory(6),
            Err(Error::LabelOutOfRange { label: 6, n: 5 })
        );
    }

    #[test]
    fn text_form() {
        let s = ex12();
        assert_eq!(s.to_string(), "n=4; (3,4) (1,3) (1,2) (3,4) (2,3)");
        assert_eq!("n=5;".parse::<TranspositionSequence>().unwrap().len(), 0);
        assert_eq!("n=3; (2, 1)".parse::<TranspositionSequence>().unwrap().to_string(), "n=3; (1,2)");
        assert!("n=3; (1,4)".parse::<TranspositionSequence>().is_err());
        assert!("n=3; (1,1)".parse::<TranspositionSequence>().is_err());
        assert!("n=3 (1,2)".parse::<TranspositionSequence>().is_err());
        assert!("n=3; (1,2,3)".parse::<TranspositionSequence>().is_err());
        assert!("n=3; 1,2".parse::<TranspositionSequence>().is_err());
    }

    #[test]
    fn cycle_notation() {
        let p = Permutation::long_cycle_down(4);
        assert_eq!(p.to_string(), "(1,4,3,2)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(Permutation::parse_cycles(3, "()").unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::long_cycle_up(3).inverse(), Permutation::long_cycle_down(3));
        assert!(Permutation::parse_cycles(3, "(1,2)(2,3)").is_err());
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert_eq!(Permutation::long_cycle_down(5).cycle_count(), 1);
        assert_eq!(Permutation::identity(5).cycle_count(), 5);
    }

    proptest! {
        #[test]
        fn product_splits(s in any_sequence(), cut in 0usize..13) {
            let cut = cut.min(s.len());
            let left = s.prefix(cut);
            let right = TranspositionSequence::new(s.n(), s.entries()[cut..].to_vec()).unwrap();
            prop_assert_eq!(s.product(), left.product().then(&right.product()).unwrap());
            prop_assert_eq!(left.concat(&right).unwrap(), s);
        }

        #[test]
        fn conjugation_composes(
            (a, b, c) in (2usize..8).prop_flat_map(|n| (any_sequence_with_n(n), any_sequence_with_n(n), any_sequence_with_n(n)))
        ) {
            let (p, a, b) = (a.product(), b.product(), c.product());
            let lhs = p.conjugate(&a).unwrap().conjugate(&b).unwrap();
            let rhs = p.conjugate(&a.then(&b).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn sequence_conjugation_is_involution(s in any_sequence(), a in 1usize..10, b in 1usize..10) {
            prop_assume!(a != b && a <= s.n() && b <= s.n());
            let t = Transposition::new(a, b).unwrap();
            prop_assert_eq!(s.conjugate(t).unwrap().conjugate(t).unwrap(), s);
        }

        #[test]
        fn trajectory_ends_at_image(s in any_sequence(), x in 1usize..10) {
            prop_assume!(x <= s.n());
            let tr = s.trajectory(x).unwrap();
            prop_assert_eq!(tr.start(), x);
            prop_assert_eq!(tr.end(), s.product().apply(x));
            prop_assert!(tr.points().windows(2).all(|w| w[0] != w[1]));
        }

        #[test]
        fn text_round_trip(s in any_sequence()) {
            let text = s.to_string();
            let back: TranspositionSequence = text.parse().unwrap();
            prop_assert_eq!(&back, &s);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn cycle_notation_round_trip(s in any_sequence()) {
            let p = s.product();
            prop_assert_eq!(Permutation::parse_cycles(s.n(), &p.to_string()).unwrap(), p);
        }
    }
}
