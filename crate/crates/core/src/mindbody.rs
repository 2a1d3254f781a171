//! Mind-body assignments and the mind-body dual.
//!
//! An assignment records which body each mind occupies. A transposition can
//! act on it in two ways: swapping two minds over fixed bodies, or swapping
//! two bodies under fixed minds. A sequence read as body swaps has a
//! companion sequence of mind swaps with the same effect; that companion is
//! the mind-body dual.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition, TranspositionSequence};

/// A permutation presented as a mind -> body map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MindBodyAssignment {
    body_of: Permutation,
}

impl MindBodyAssignment {
    /// Every mind in its own body.
    pub fn identity(n: usize) -> Self {
        MindBodyAssignment {
            body_of: Permutation::identity(n),
        }
    }

    pub fn from_permutation(body_of: Permutation) -> Self {
        MindBodyAssignment { body_of }
    }

    pub fn as_permutation(&self) -> &Permutation {
        &self.body_of
    }

    pub fn n(&self) -> usize {
        self.body_of.n()
    }

    pub fn body_of(&self, mind: usize) -> usize {
        self.body_of.apply(mind)
    }

    /// The mind sitting above `body`.
    pub fn mind_in(&self, body: usize) -> usize {
        self.body_of
            .images()
            .iter()
            .position(|&b| b == body)
            .map(|i| i + 1)
            .expect("assignments are bijections")
    }

    fn check(&self, t: Transposition) -> Result<()> {
        if t.y() > self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: t.y(),
            });
        }
        Ok(())
    }

    /// `A ⓜ t`: minds `x` and `y` trade bodies. Equals `t · A`.
    pub fn mind_swap(&self, t: Transposition) -> Result<Self> {
        self.check(t)?;
        let mut images = self.body_of.images().to_vec();
        images.swap(t.x() - 1, t.y() - 1);
        Ok(MindBodyAssignment {
            body_of: Permutation::from_images(images).expect("swap keeps a bijection"),
        })
    }

    /// `A ⓑ t`: bodies `x` and `y` trade minds. Equals `A · t`.
    pub fn body_swap(&self, t: Transposition) -> Result<Self> {
        self.check(t)?;
        let images = self.body_of.images().iter().map(|&b| t.apply(b)).collect();
        Ok(MindBodyAssignment {
            body_of: Permutation::from_images(images).expect("swap keeps a bijection"),
        })
    }

    pub fn mind_swap_all(&self, s: &TranspositionSequence) -> Result<Self> {
        s.iter().try_fold(self.clone(), |a, t| a.mind_swap(t))
    }

    pub fn body_swap_all(&self, s: &TranspositionSequence) -> Result<Self> {
        s.iter().try_fold(self.clone(), |a, t| a.body_swap(t))
    }

    /// `MB_A(t)`: the pair of minds above the bodies of `t`.
    pub fn minds_above(&self, t: Transposition) -> Result<Transposition> {
        self.check(t)?;
        Transposition::new(self.mind_in(t.x()), self.mind_in(t.y()))
    }
}

impl fmt::Display for MindBodyAssignment {
    /// Two rows, minds ascending: `[1,2,3,4 / 3,2,4,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let minds: Vec<String> = (1..=self.n()).map(|m| m.to_string()).collect();
        let bodies: Vec<String> = self.body_of.images().iter().map(|b| b.to_string()).collect();
        write!(f, "[{} / {}]", minds.join(","), bodies.join(","))
    }
}

/// The assignments `A_0 = 𝓘, A_k = 𝓘 ⓑ ⟨s_1..s_k⟩` of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MindBodySequence {
    assignments: Vec<MindBodyAssignment>,
}

impl MindBodySequence {
    pub fn assignments(&self) -> &[MindBodyAssignment] {
        &self.assignments
    }

    pub fn get(&self, k: usize) -> Option<&MindBodyAssignment> {
        self.assignments.get(k)
    }

    pub fn last(&self) -> &MindBodyAssignment {
        self.assignments.last().expect("A_0 is always present")
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn mb_sequence(s: &TranspositionSequence) -> MindBodySequence {
    let mut assignments = Vec::with_capacity(s.len() + 1);
    let mut a = MindBodyAssignment::identity(s.n());
    assignments.push(a.clone());
    for t in s.iter() {
        a = a.body_swap(t).expect("sequence labels lie in [n]");
        assignments.push(a.clone());
    }
    MindBodySequence { assignments }
}

/// The mind-body dual: entry `k` is `MB_{A_{k-1}}(s_k)`.
pub fn mb_dual(s: &TranspositionSequence) -> TranspositionSequence {
    mb_dual_from(&MindBodyAssignment::identity(s.n()), s).expect("identity has the sequence's n")
}

/// The mind-body dual taken along `start ⓑ s_1 ⓑ ... ⓑ s_k` instead of from the identity.
pub fn mb_dual_from(start: &MindBodyAssignment, s: &TranspositionSequence) -> Result<TranspositionSequence> {
    if start.n() != s.n() {
        return Err(Error::DimensionMismatch {
            expected: start.n(),
            found: s.n(),
        });
    }
    let mut entries = Vec::with_capacity(s.len());
    let mut a = start.clone();
    for t in s.iter() {
        entries.push(a.minds_above(t).expect("sequence labels lie in [n]"));
        a = a.body_swap(t).expect("sequence labels lie in [n]");
    }
    Ok(TranspositionSequence::new(s.n(), entries).expect("dual keeps labels in [n]"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::contraction;
    use crate::strategies::{any_sequence, any_sequence_with_n};
    use proptest::prelude::*;

    fn ex12() -> TranspositionSequence {
        "n=4; (3,4) (1,3) (1,2) (3,4) (2,3)".parse().unwrap()
    }

    fn seq(text: &str) -> TranspositionSequence {
        text.parse().unwrap()
    }

    #[test]
    fn body_and_mind_swaps_from_identity() {
        let s = seq("n=4; (3,4) (1,3)");
        let id = MindBodyAssignment::identity(4);
        assert_eq!(id.body_swap_all(&s).unwrap().to_string(), "[1,2,3,4 / 3,2,4,1]");
        // minds 3,2,4,1 over bodies 1,2,3,4: mind 3 in body 1, mind 2 in 2, ...
        let m = id.mind_swap_all(&s).unwrap();
        assert_eq!((m.mind_in(1), m.mind_in(2), m.mind_in(3), m.mind_in(4)), (3, 2, 4, 1));
    }

    #[test]
    fn order_free_equality() {
        // [1,2,3,4 / 4,1,2,3] and [2,3,4,1 / 1,2,3,4] are the same assignment
        let a = MindBodyAssignment::from_permutation(Permutation::from_images(vec![4, 1, 2, 3]).unwrap());
        let b = MindBodyAssignment::from_permutation(Permutation::from_cycles(4, &[vec![2, 1, 4, 3]]).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn worked_mind_body_sequence() {
        let rows = [
            "[1,2,3,4 / 1,2,3,4]",
            "[1,2,3,4 / 1,2,4,3]",
            "[1,2,3,4 / 3,2,4,1]",
            "[1,2,3,4 / 3,1,4,2]",
            "[1,2,3,4 / 4,1,3,2]",
            "[1,2,3,4 / 4,1,2,3]",
        ];
        let mbs = mb_sequence(&ex12());
        let got: Vec<String> = mbs.assignments().iter().map(|a| a.to_string()).collect();
        assert_eq!(got, rows);
        assert_eq!(mbs.last().as_permutation(), &ex12().product());
        assert_eq!(mb_sequence(&TranspositionSequence::empty(3).unwrap()).len(), 1);
    }

    #[test]
    fn worked_dual() {
        assert_eq!(mb_dual(&ex12()), seq("n=4; (3,4) (1,4) (2,4) (1,3) (3,4)"));
        let single = seq("n=5; (2,5)");
        assert_eq!(mb_dual(&single), single);
    }

    #[test]
    fn fixed_dual_needs_identity_start() {
        // from a non-identity start the identity-based dual no longer matches
        let s = seq("n=3; (1,2)");
        let a = MindBodyAssignment::from_permutation(Permutation::from_images(vec![2, 3, 1]).unwrap());
        assert_ne!(a.body_swap_all(&s).unwrap(), a.mind_swap_all(&mb_dual(&s)).unwrap());
        let relative = mb_dual_from(&a, &s).unwrap();
        assert_eq!(a.body_swap_all(&s).unwrap(), a.mind_swap_all(&relative).unwrap());
        assert!(mb_dual_from(&MindBodyAssignment::identity(4), &s).is_err());
    }

    #[test]
    fn swap_dimension_mismatch() {
        let a = MindBodyAssignment::identity(3);
        let t = Transposition::new(2, 4).unwrap();
        assert!(matches!(a.mind_swap(t), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.body_swap(t), Err(Error::DimensionMismatch { .. })));
    }

    proptest! {
        #[test]
        fn single_swap_from_identity_agrees(n in 2usize..9, a in 1usize..9, b in 1usize..9) {
            prop_assume!(a != b && a <= n && b <= n);
            let t = Transposition::new(a, b).unwrap();
            let id = MindBodyAssignment::identity(n);
            prop_assert_eq!(id.mind_swap(t).unwrap(), id.body_swap(t).unwrap());
        }

        #[test]
        fn swaps_are_involutions(s in any_sequence(), a in 1usize..10, b in 1usize..10) {
            prop_assume!(a != b && a <= s.n() && b <= s.n());
            let t = Transposition::new(a, b).unwrap();
            let base = MindBodyAssignment::identity(s.n()).body_swap_all(&s).unwrap();
            prop_assert_eq!(base.mind_swap(t).unwrap().mind_swap(t).unwrap(), base.clone());
            prop_assert_eq!(base.body_swap(t).unwrap().body_swap(t).unwrap(), base);
        }

        #[test]
        fn swaps_are_products(s in any_sequence(), a in 1usize..10, b in 1usize..10) {
            prop_assume!(a != b && a <= s.n() && b <= s.n());
            let t = Transposition::new(a, b).unwrap();
            let tp = t.to_permutation(s.n()).unwrap();
            let base = MindBodyAssignment::identity(s.n()).body_swap_all(&s).unwrap();
            prop_assert_eq!(base.mind_swap(t).unwrap().as_permutation().clone(), tp.then(base.as_permutation()).unwrap());
            prop_assert_eq!(base.body_swap(t).unwrap().as_permutation().clone(), base.as_permutation().then(&tp).unwrap());
        }

        #[test]
        fn mind_swaps_invert_body_swaps(s in any_sequence()) {
            let id = MindBodyAssignment::identity(s.n());
            let m = id.mind_swap_all(&s).unwrap();
            let b = id.body_swap_all(&s).unwrap();
            prop_assert_eq!(m.as_permutation(), &b.as_permutation().inverse());
        }

        #[test]
        fn dual_swaps_agree_from_identity(s in any_sequence()) {
            let id = MindBodyAssignment::identity(s.n());
            let d = mb_dual(&s);
            prop_assert_eq!(id.body_swap_all(&s).unwrap(), id.mind_swap_all(&d).unwrap());
            prop_assert_eq!(id.mind_swap_all(&s).unwrap(), id.body_swap_all(&d).unwrap());
        }

        #[test]
        fn relative_dual_swaps_agree(
            (s, start) in (2usize..9).prop_flat_map(|n| (any_sequence_with_n(n), any_sequence_with_n(n)))
        ) {
            let a = MindBodyAssignment::identity(s.n()).body_swap_all(&start).unwrap();
            let d = mb_dual_from(&a, &s).unwrap();
            prop_assert_eq!(a.body_swap_all(&s).unwrap(), a.mind_swap_all(&d).unwrap());
        }

        #[test]
        fn dual_is_involution_with_inverse_product(s in any_sequence()) {
            let d = mb_dual(&s);
            prop_assert_eq!(mb_dual(&d), s.clone());
            prop_assert_eq!(d.product(), s.product().inverse());
        }

        #[test]
        fn body_trace_is_trajectory(s in any_sequence(), x in 1usize..10) {
            prop_assume!(x <= s.n());
            let bodies: Vec<usize> = mb_sequence(&s).assignments().iter().map(|a| a.body_of(x)).collect();
            prop_assert_eq!(contraction(&bodies).unwrap(), s.trajectory(x).unwrap());
        }
    }
}
