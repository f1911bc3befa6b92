//! Eventually constant monotone sequences in a finite lattice.

use std::fmt;

use crate::error::{LatspecError, Result};
use crate::lattice::DLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeqDirection {
    Nonincreasing,
    Nondecreasing,
}

impl SeqDirection {
    fn respects(self, l: &DLattice, earlier: usize, later: usize) -> bool {
        match self {
            SeqDirection::Nonincreasing => l.leq(later, earlier),
            SeqDirection::Nondecreasing => l.leq(earlier, later),
        }
    }
}

/// A monotone sequence that is constant from some index on: `prefix`
/// followed by `tail` repeated forever. The prefix never ends with a copy of
/// the tail, so equal sequences have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventualSeq {
    prefix: Vec<usize>,
    tail: usize,
    direction: SeqDirection,
}

impl EventualSeq {
    /// Validates monotonicity in `l` and strips trailing copies of the tail.
    pub fn new(l: &DLattice, mut prefix: Vec<usize>, tail: usize, direction: SeqDirection) -> Result<Self> {
        if prefix.iter().chain([&tail]).any(|&x| x >= l.size()) {
            return Err(LatspecError::invalid("sequence entry out of range"));
        }
        let all: Vec<usize> = prefix.iter().copied().chain([tail]).collect();
        if !all.windows(2).all(|w| direction.respects(l, w[0], w[1])) {
            return Err(LatspecError::invalid(format!("sequence is not {direction:?}")));
        }
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        Ok(EventualSeq { prefix, tail, direction })
    }

    /// The sequence that repeats the last entry of a nonempty tuple.
    pub fn from_tuple(l: &DLattice, tuple: &[usize], direction: SeqDirection) -> Result<Self> {
        match tuple.split_last() {
            Some((&tail, prefix)) => EventualSeq::new(l, prefix.to_vec(), tail, direction),
            None => Err(LatspecError::invalid("empty tuple")),
        }
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn tail(&self) -> usize {
        self.tail
    }

    pub fn direction(&self) -> SeqDirection {
        self.direction
    }

    /// First index from which the sequence is constant.
    pub fn stabilizes_at(&self) -> usize {
        self.prefix.len()
    }

    pub fn get(&self, n: usize) -> usize {
        self.prefix.get(n).copied().unwrap_or(self.tail)
    }

    /// The first `n` entries.
    pub fn truncate(&self, n: usize) -> Vec<usize> {
        (0..n).map(|k| self.get(k)).collect()
    }

    /// Whether some entry equals `x`.
    pub fn reaches(&self, x: usize) -> bool {
        self.tail == x || self.prefix.contains(&x)
    }

    /// Pointwise combination; the result is again monotone in the same
    /// direction when `op` is a lattice operation.
    pub fn zip_with(&self, other: &EventualSeq, l: &DLattice, op: impl Fn(usize, usize) -> usize) -> Result<EventualSeq> {
        let n = self.prefix.len().max(other.prefix.len());
        let prefix = (0..n).map(|k| op(self.get(k), other.get(k))).collect();
        EventualSeq::new(l, prefix, op(self.tail, other.tail), self.direction)
    }
}

impl fmt::Display for EventualSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.prefix {
            write!(f, "{x} ")?;
        }
        write!(f, "({})*", self.tail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OmegaKind {
    /// Nonincreasing sequences that reach bottom.
    Omega,
    /// All nonincreasing sequences.
    OmegaBar,
}

/// Nonincreasing sequences whose prefix has at most `depth` entries, ordered
/// by prefix length, then lexicographically.
pub fn omega_enumerate(l: &DLattice, depth: usize, which: OmegaKind) -> Vec<EventualSeq> {
    let all = enumerate(l, depth, SeqDirection::Nonincreasing);
    match which {
        OmegaKind::OmegaBar => all,
        OmegaKind::Omega => all.into_iter().filter(|s| s.tail == l.bot()).collect(),
    }
}

/// Nondecreasing sequences whose prefix has at most `depth` entries, ordered
/// as in [`omega_enumerate`].
pub fn nondecreasing_enumerate(l: &DLattice, depth: usize) -> Vec<EventualSeq> {
    enumerate(l, depth, SeqDirection::Nondecreasing)
}

fn enumerate(l: &DLattice, depth: usize, direction: SeqDirection) -> Vec<EventualSeq> {
    fn rec(l: &DLattice, len: usize, dir: SeqDirection, t: &mut Vec<usize>, out: &mut Vec<EventualSeq>) {
        if t.len() == len + 1 {
            if len == 0 || t[len - 1] != t[len] {
                out.push(EventualSeq { prefix: t[..len].to_vec(), tail: t[len], direction: dir });
            }
            return;
        }
        for v in 0..l.size() {
            if t.last().is_none_or(|&p| dir.respects(l, p, v)) {
                t.push(v);
                rec(l, len, dir, t, out);
                t.pop();
            }
        }
    }
    let mut out = Vec::new();
    for len in 0..=depth {
        rec(l, len, direction, &mut Vec::with_capacity(len + 1), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counts() {
        let two = DLattice::two();
        assert_eq!(omega_enumerate(&two, 3, OmegaKind::OmegaBar).len(), 5);
        assert_eq!(omega_enumerate(&two, 3, OmegaKind::Omega).len(), 4);
        let c3 = DLattice::chain(3);
        let brute = (0..3).count() + (0..3).flat_map(|p| (0..p).map(move |t| (p, t))).count();
        assert_eq!(omega_enumerate(&c3, 1, OmegaKind::OmegaBar).len(), brute);
        assert_eq!(nondecreasing_enumerate(&two, 0).len(), 2);
    }

    #[test]
    fn canonical_form_strips_tail() {
        let two = DLattice::two();
        let s = EventualSeq::new(&two, vec![1, 0, 0], 0, SeqDirection::Nonincreasing).unwrap();
        assert_eq!(s.prefix(), &[1]);
        assert_eq!(s.to_string(), "1 (0)*");
        assert!(EventualSeq::new(&two, vec![0], 1, SeqDirection::Nonincreasing).is_err());
    }

    proptest! {
        #[test]
        fn representation_is_canonical(a in prop::collection::vec(0usize..4, 0..6), b in prop::collection::vec(0usize..4, 0..6), ta in 0usize..4, tb in 0usize..4) {
            let l = DLattice::chain(4);
            let mono = |mut v: Vec<usize>, t: usize| { v.push(t); v.sort_unstable_by(|x, y| y.cmp(x)); v };
            let va = mono(a, ta);
            let vb = mono(b, tb);
            let sa = EventualSeq::from_tuple(&l, &va, SeqDirection::Nonincreasing).unwrap();
            let sb = EventualSeq::from_tuple(&l, &vb, SeqDirection::Nonincreasing).unwrap();
            let horizon = va.len().max(vb.len()) + 1;
            let same = (0..horizon).all(|k| sa.get(k) == sb.get(k));
            prop_assert_eq!(same, sa == sb);
        }
    }
}
