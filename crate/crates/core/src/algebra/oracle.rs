//! Term-closure model of free algebras, independent of the monotone-map
//! construction.
//!
//! An element of the free algebra on `n` generators is represented by the
//! function `D^n -> D` it induces. Starting from the projections and the
//! constant functions, the set is closed under pointwise meet and join.

use std::collections::BTreeSet;

use crate::budget::{Budget, Meter};
use crate::error::Result;
use crate::lattice::DLattice;

/// All term functions `D^n -> D`, as value tables over `D^n` (first
/// coordinate most significant), sorted.
pub fn term_closure(d: &DLattice, n: usize, budget: Budget) -> Result<Vec<Vec<usize>>> {
    budget.check_power(d.size(), n, "closing term functions")?;
    let points = d.size().pow(n as u32);
    let coord = |p: usize, i: usize| p / d.size().pow((n - 1 - i) as u32) % d.size();
    let mut seeds: Vec<Vec<usize>> = (0..d.size()).map(|c| vec![c; points]).collect();
    seeds.extend((0..n).map(|i| (0..points).map(|p| coord(p, i)).collect()));
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut known: Vec<Vec<usize>> = Vec::new();
    for s in seeds {
        if seen.insert(s.clone()) {
            known.push(s);
        }
    }
    let mut meter = Meter::new(budget, "closing term functions");
    let mut i = 0;
    while i < known.len() {
        for j in 0..=i {
            let m: Vec<usize> = known[i].iter().zip(&known[j]).map(|(&a, &b)| d.meet(a, b)).collect();
            let jn: Vec<usize> = known[i].iter().zip(&known[j]).map(|(&a, &b)| d.join(a, b)).collect();
            for f in [m, jn] {
                meter.tick()?;
                if seen.insert(f.clone()) {
                    known.push(f);
                }
            }
        }
        i += 1;
    }
    Ok(seen.into_iter().collect())
}

/// Restricts term functions to arguments drawn from `{bot, top}^n`, indexed
/// by bitmask (bit `i` set when coordinate `i` is top).
pub fn restrict_to_cube(d: &DLattice, n: usize, f: &[usize]) -> Vec<usize> {
    (0..1usize << n)
        .map(|mask| {
            let p = (0..n).fold(0, |acc, i| acc * d.size() + if mask >> i & 1 == 1 { d.top() } else { d.bot() });
            f[p]
        })
        .collect()
}
