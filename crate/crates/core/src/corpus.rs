//! Exhaustive small test corpora: distributive lattices and algebras.

use std::collections::BTreeSet;

use crate::algebra::{BaseLattice, DAlgebra};
use crate::budget::Budget;
use crate::error::{LatspecError, Result};
use crate::lattice::{lattice_homs, DLattice};
use crate::poset::{upset_lattice, Poset};

/// Posets, up to isomorphism, with at most `max_upsets` up-sets.
///
/// Every poset arises by repeatedly adding a new maximal element above a
/// down-set, and adding an element never decreases the number of up-sets,
/// so the search can stop as soon as the bound is passed.
pub fn small_posets(max_upsets: usize) -> Result<Vec<Poset>> {
    let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut layer = vec![Poset::empty()];
    let mut out = Vec::new();
    seen.insert(Poset::empty().canonical_code());
    while !layer.is_empty() {
        let mut next = Vec::new();
        for p in &layer {
            out.push(p.clone());
            let n = p.size();
            let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            for up in p.upsets()? {
                let down = full & !up;
                let size = n + 1;
                let mut leq = vec![false; size * size];
                for i in 0..n {
                    for j in 0..n {
                        leq[i * size + j] = p.leq(i, j);
                    }
                    leq[i * size + n] = down >> i & 1 == 1;
                }
                leq[n * size + n] = true;
                let q = Poset::from_relation(size, leq).map_err(|v| LatspecError::internal(v.to_string()))?;
                if q.upsets()?.len() > max_upsets {
                    continue;
                }
                if seen.insert(q.canonical_code()) {
                    next.push(q);
                }
            }
        }
        layer = next;
    }
    Ok(out)
}

/// Distributive lattices with at most `max_size` elements, one per
/// isomorphism class, ordered by size.
pub fn distributive_lattices(max_size: usize) -> Result<Vec<DLattice>> {
    let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut out = Vec::new();
    for p in small_posets(max_size)? {
        let l = upset_lattice(&p)?.lattice;
        if seen.insert(l.order().canonical_code()) {
            out.push(l);
        }
    }
    out.sort_by_key(DLattice::size);
    Ok(out)
}

/// Algebras over `base` with at most `max_size` elements, one per
/// isomorphism class: every distributive lattice of that size with every
/// structure map from the base.
pub fn algebra_library(base: &BaseLattice, max_size: usize, budget: Budget) -> Result<Vec<DAlgebra>> {
    let mut out: Vec<DAlgebra> = Vec::new();
    for l in distributive_lattices(max_size)? {
        let mut here: Vec<DAlgebra> = Vec::new();
        for h in lattice_homs(&base.lattice, &l, budget)? {
            let a = DAlgebra::new(base.clone(), l.clone(), h.table)?;
            if !here.iter().any(|b| b.is_isomorphic(&a)) {
                here.push(a);
            }
        }
        out.extend(here);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distributive_lattice_counts() {
        // Known counts of distributive lattices on 1..=8 elements.
        let counts: Vec<usize> =
            (1..=8).map(|n| distributive_lattices(8).unwrap().iter().filter(|l| l.size() == n).count()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 5, 8, 15]);
        for l in distributive_lattices(8).unwrap() {
            l.validate().unwrap();
        }
    }

    #[test]
    fn algebra_library_over_two() {
        let lib = algebra_library(&BaseLattice::two(), 4, Budget::default()).unwrap();
        // The trivial algebra, 2, the 3-chain, and the two 4-element lattices.
        assert_eq!(lib.len(), 5);
        for a in &lib {
            a.validate().unwrap();
        }
    }

    #[test]
    fn algebra_library_counts_structure_maps() {
        let base = BaseLattice::builtin("2x2").unwrap();
        let lib = algebra_library(&base, 4, Budget::default()).unwrap();
        for a in &lib {
            assert!(lib.iter().filter(|b| b.is_isomorphic(a)).count() == 1);
        }
        assert!(lib.iter().any(|a| a.size() == 4));
    }
}
