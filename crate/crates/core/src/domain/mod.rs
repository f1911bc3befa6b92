//! Slices, lifts and co-lifts, simplices, and sequence constructions.

mod chain;
mod locality;
mod sequence;

use std::collections::HashMap;

use crate::algebra::{algebra_homs, present, spec, AlgebraHom, BaseLattice, DAlgebra, Presentation, Term};
use crate::budget::Budget;
use crate::error::{LatspecError, Result};
use crate::lattice::{congruence_quotient, DLattice};
use crate::polynomial::{chain_quotient, Direction};
use crate::poset::Poset;

pub use chain::{
    chain_completeness_check, inductivity_check, ChainCompletenessReport, InclusionFormula, InductivityReport, StageReport,
    UniversalReport,
};
pub use locality::{coskeletal_limit, segal_pullback, simplicial_pullback};
pub use sequence::{nondecreasing_enumerate, omega_enumerate, EventualSeq, OmegaKind, SeqDirection};

/// Which of the two pair constructions: the lift keeps `a <= eta(i)`, the
/// co-lift keeps `eta(i) <= a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Lift,
    Colift,
}

/// A quotient of `A` realised as an interval of `A`.
#[derive(Clone, Debug)]
pub struct Slice {
    pub algebra: DAlgebra,
    /// `b -> b ∧ e` (lift side) or `b -> b ∨ e` (co-lift side).
    pub projection: AlgebraHom,
    /// Elements of `A` in the interval, in increasing index order.
    pub elements: Vec<usize>,
}

/// The down-set of `e` with top `e`, and the projection `b -> b ∧ e`. The
/// kernel of the projection is checked against the congruence generated by
/// `e = top`.
pub fn slice_quotient(a: &DAlgebra, e: usize) -> Result<Slice> {
    interval_quotient(a, e, Side::Lift)
}

/// The up-set of `e` with bottom `e`, and the projection `b -> b ∨ e`. The
/// kernel of the projection is checked against the congruence generated by
/// `e = bot`.
pub fn coslice_quotient(a: &DAlgebra, e: usize) -> Result<Slice> {
    interval_quotient(a, e, Side::Colift)
}

fn interval_quotient(a: &DAlgebra, e: usize, side: Side) -> Result<Slice> {
    let l = a.lat();
    if e >= l.size() {
        return Err(LatspecError::invalid(format!("element {e} out of range")));
    }
    let (keep, squash, generator): (Box<dyn Fn(usize) -> bool>, Box<dyn Fn(usize) -> usize>, usize) = match side {
        Side::Lift => (Box::new(|b| l.leq(b, e)), Box::new(|b| l.meet(b, e)), l.top()),
        Side::Colift => (Box::new(|b| l.leq(e, b)), Box::new(|b| l.join(b, e)), l.bot()),
    };
    let elements: Vec<usize> = (0..l.size()).filter(|&b| keep(b)).collect();
    let index: HashMap<usize, usize> = elements.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    let n = elements.len();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for (x, &bx) in elements.iter().enumerate() {
        for (y, &by) in elements.iter().enumerate() {
            meet[x * n + y] = index[&l.meet(bx, by)];
            join[x * n + y] = index[&l.join(bx, by)];
        }
    }
    let lat = DLattice::from_tables(n, meet, join).map_err(|v| LatspecError::internal(v.to_string()))?;
    let eta: Vec<usize> = a.eta_table().iter().map(|&x| index[&squash(x)]).collect();
    let algebra = DAlgebra::new(a.base().clone(), lat, eta)?;
    let projection = AlgebraHom { table: (0..l.size()).map(|b| index[&squash(b)]).collect() };
    if !projection.is_hom(a, &algebra) {
        return Err(LatspecError::internal("interval projection is not a homomorphism"));
    }
    let (_, q) = congruence_quotient(l, &[(e, generator)]);
    for b in 0..l.size() {
        for c in 0..l.size() {
            if (projection.apply(b) == projection.apply(c)) != (q.table[b] == q.table[c]) {
                return Err(LatspecError::internal("interval and congruence quotient disagree"));
            }
        }
    }
    Ok(Slice { algebra, projection, elements })
}

/// An algebra of pairs `(i, a)` with `i` in the base and `a` in `A`.
#[derive(Clone, Debug)]
pub struct LiftAlgebra {
    pub algebra: DAlgebra,
    /// Carrier pairs in lexicographic order; element `k` of `algebra` is
    /// `pairs[k]`.
    pub pairs: Vec<(usize, usize)>,
}

impl LiftAlgebra {
    pub fn index_of(&self, pair: (usize, usize)) -> Option<usize> {
        self.pairs.binary_search(&pair).ok()
    }
}

/// Pairs `(i, a)` with `a <= eta(i)` under componentwise operations, with
/// structure map `d -> (d, eta(d))`.
pub fn lift_algebra(a: &DAlgebra) -> Result<LiftAlgebra> {
    pair_algebra(a, Side::Lift)
}

/// Pairs `(i, a)` with `eta(i) <= a` under componentwise operations.
pub fn colift_algebra(a: &DAlgebra) -> Result<LiftAlgebra> {
    pair_algebra(a, Side::Colift)
}

fn pair_algebra(a: &DAlgebra, side: Side) -> Result<LiftAlgebra> {
    let d = &a.base().lattice;
    let l = a.lat();
    let mut pairs = Vec::new();
    for i in 0..d.size() {
        for x in 0..l.size() {
            let ok = match side {
                Side::Lift => l.leq(x, a.eta(i)),
                Side::Colift => l.leq(a.eta(i), x),
            };
            if ok {
                pairs.push((i, x));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let n = pairs.len();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for (p, &(i, x)) in pairs.iter().enumerate() {
        for (q, &(j, y)) in pairs.iter().enumerate() {
            meet[p * n + q] = index[&(d.meet(i, j), l.meet(x, y))];
            join[p * n + q] = index[&(d.join(i, j), l.join(x, y))];
        }
    }
    let lat = DLattice::from_tables(n, meet, join).map_err(|v| LatspecError::internal(v.to_string()))?;
    let eta = (0..d.size()).map(|i| index[&(i, a.eta(i))]).collect();
    Ok(LiftAlgebra { algebra: DAlgebra::new(a.base().clone(), lat, eta)?, pairs })
}

/// Points of the lift (or co-lift) of `Spec A`: a base element `i` with a
/// homomorphism from `A` into the slice at `i`.
#[derive(Clone, Debug)]
pub struct LiftSpec {
    pub side: Side,
    /// `(i, h)` with `h` tabulated as base elements, sorted.
    pub points: Vec<(usize, Vec<usize>)>,
    /// `(i, h) <= (j, k)` iff `i <= j` and `h <= k` pointwise.
    pub poset: Poset,
    /// Whether the spectrum of the lifted presentation is isomorphic to
    /// `poset` via generator values.
    pub presentation_agrees: bool,
}

impl LiftSpec {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn index_of(&self, i: usize, h: &[usize]) -> Option<usize> {
        self.points.iter().position(|(j, k)| *j == i && k == h)
    }
}

/// The lift of `Spec A`, cross-checked against the spectrum of the
/// presentation of `A` relativised to a new top generator.
pub fn lift_spec(a: &DAlgebra, budget: Budget) -> Result<LiftSpec> {
    pair_spec(a, Side::Lift, budget)
}

/// The co-lift of `Spec A`, cross-checked against the presentation
/// relativised to a new bottom generator.
pub fn colift_spec(a: &DAlgebra, budget: Budget) -> Result<LiftSpec> {
    pair_spec(a, Side::Colift, budget)
}

fn pair_spec(a: &DAlgebra, side: Side, budget: Budget) -> Result<LiftSpec> {
    let base = a.base();
    let d = &base.lattice;
    let initial = DAlgebra::initial(base);
    let mut points = Vec::new();
    for i in 0..d.size() {
        let s = interval_quotient(&initial, i, side)?;
        for h in algebra_homs(a, &s.algebra, budget)? {
            points.push((i, h.table.iter().map(|&x| s.elements[x]).collect::<Vec<_>>()));
        }
    }
    points.sort();
    let n = points.len();
    let mut leq = vec![false; n * n];
    for (p, (i, h)) in points.iter().enumerate() {
        for (q, (j, k)) in points.iter().enumerate() {
            leq[p * n + q] = d.leq(*i, *j) && h.iter().zip(k).all(|(&x, &y)| d.leq(x, y));
        }
    }
    let poset = Poset::from_relation(n, leq).map_err(|v| LatspecError::internal(format!("pair order: {v}")))?;
    let presentation_agrees = relativised_agrees(a, side, &points, &poset, budget)?;
    Ok(LiftSpec { side, points, poset, presentation_agrees })
}

/// The presentation of `A` with a new generator `t` in front, every old
/// generator below `t` (lift) or above it (co-lift), and constants and the
/// relevant bound read relative to `t`.
pub fn relativised_presentation(a: &DAlgebra, side: Side) -> Result<Presentation> {
    let p = a.presented()?;
    let mut t = String::from("t");
    while p.presentation.gens.contains(&t) {
        t.push('\'');
    }
    let mut gens = vec![t];
    gens.extend(p.presentation.gens.iter().cloned());
    fn shift(term: &Term, side: Side) -> Term {
        match term {
            Term::Bot => match side {
                Side::Lift => Term::Bot,
                Side::Colift => Term::Gen(0),
            },
            Term::Top => match side {
                Side::Lift => Term::Gen(0),
                Side::Colift => Term::Top,
            },
            Term::Const(d) => match side {
                Side::Lift => Term::meet(Term::Const(*d), Term::Gen(0)),
                Side::Colift => Term::join(Term::Const(*d), Term::Gen(0)),
            },
            Term::Gen(k) => Term::Gen(k + 1),
            Term::Meet(x, y) => Term::meet(shift(x, side), shift(y, side)),
            Term::Join(x, y) => Term::join(shift(x, side), shift(y, side)),
        }
    }
    let rels = p.presentation.rels.iter().map(|(l, r)| (shift(l, side), shift(r, side))).collect();
    let mut pres = Presentation::new(a.base().clone(), gens, rels)?;
    for k in 1..=p.gen_elems.len() {
        pres = match side {
            Side::Lift => pres.with_le(Term::Gen(k), Term::Gen(0)),
            Side::Colift => pres.with_le(Term::Gen(0), Term::Gen(k)),
        };
    }
    Ok(pres)
}

fn relativised_agrees(a: &DAlgebra, side: Side, points: &[(usize, Vec<usize>)], poset: &Poset, budget: Budget) -> Result<bool> {
    let gens = a.presented()?.gen_elems.clone();
    let lifted = present(&relativised_presentation(a, side)?, budget)?;
    let sp = spec(&lifted, budget)?;
    if sp.size() != points.len() || !sp.generator_order_agrees {
        return Ok(false);
    }
    let lgens = lifted.presented()?.gen_elems.clone();
    let key = |h: &AlgebraHom| -> Vec<usize> { lgens.iter().map(|&g| h.apply(g)).collect() };
    let index: HashMap<Vec<usize>, usize> = sp.homs.iter().enumerate().map(|(k, h)| (key(h), k)).collect();
    let mut image = Vec::with_capacity(points.len());
    for (i, h) in points {
        let mut v = vec![*i];
        v.extend(gens.iter().map(|&g| h[g]));
        match index.get(&v) {
            Some(&k) => image.push(k),
            None => return Ok(false),
        }
    }
    let n = points.len();
    Ok((0..n).all(|p| (0..n).all(|q| poset.leq(p, q) == sp.poset.leq(image[p], image[q]))))
}

/// The algebra whose spectrum is the `n`-simplex: `D[x1..xn]` modulo the
/// generator chain, with points read as `n`-tuples in `direction`.
pub fn simplex_algebra(base: &BaseLattice, n: usize, direction: Direction, budget: Budget) -> Result<DAlgebra> {
    let (q, _) = chain_quotient(&DAlgebra::initial(base), n, direction.flip(), budget)?;
    Ok(q)
}

/// Comparison of the lifted (or co-lifted) `n`-simplex with the
/// `(n+1)`-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSimplexReport {
    pub lift_size: usize,
    pub simplex_size: usize,
    /// `(i, h)` read as the tuple with `i` prepended (lift) or appended
    /// (co-lift) is an order isomorphism.
    pub iso: bool,
    /// The unit `x -> (top, x)` (lift) or `x -> (bot, x)` (co-lift) lands on
    /// the tuple with top prepended (bot appended) and is an order embedding.
    pub unit_embedding: bool,
    pub presentation_agrees: bool,
    pub pass: bool,
}

/// Checks `L Δ^n ≅ Δ^(n+1)` (or the co-lift analogue) over `base`, with
/// descending tuples.
pub fn lift_simplex_check(base: &BaseLattice, n: usize, side: Side, budget: Budget) -> Result<LiftSimplexReport> {
    let d = &base.lattice;
    let a = simplex_algebra(base, n, Direction::Descending, budget)?;
    let next = simplex_algebra(base, n + 1, Direction::Descending, budget)?;
    let lifted = pair_spec(&a, side, budget)?;
    let sa = spec(&a, budget)?;
    let sn = spec(&next, budget)?;
    let agens = a.presented()?.gen_elems.clone();
    let ngens = next.presented()?.gen_elems.clone();
    let with_point = |i: usize, mut t: Vec<usize>| -> Vec<usize> {
        match side {
            Side::Lift => t.insert(0, i),
            Side::Colift => t.push(i),
        }
        t
    };
    let next_index: HashMap<Vec<usize>, usize> =
        sn.homs.iter().enumerate().map(|(k, h)| (ngens.iter().map(|&g| h.apply(g)).collect(), k)).collect();
    let image: Option<Vec<usize>> = lifted
        .points
        .iter()
        .map(|(i, h)| next_index.get(&with_point(*i, agens.iter().map(|&g| h[g]).collect())).copied())
        .collect();
    let m = lifted.size();
    let iso = match &image {
        Some(img) => {
            let mut s = img.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == m
                && m == sn.size()
                && (0..m).all(|p| (0..m).all(|q| lifted.poset.leq(p, q) == sn.poset.leq(img[p], img[q])))
        }
        None => false,
    };
    let unit_point = match side {
        Side::Lift => d.top(),
        Side::Colift => d.bot(),
    };
    let unit: Option<Vec<usize>> = sa.homs.iter().map(|h| lifted.index_of(unit_point, &h.table)).collect();
    let unit_embedding = match (&unit, &image) {
        (Some(u), Some(img)) => {
            let lands = sa.homs.iter().zip(u).all(|(h, &p)| {
                let t = with_point(unit_point, agens.iter().map(|&g| h.apply(g)).collect());
                next_index.get(&t) == Some(&img[p])
            });
            let k = sa.size();
            lands && (0..k).all(|x| (0..k).all(|y| sa.poset.leq(x, y) == lifted.poset.leq(u[x], u[y])))
        }
        _ => false,
    };
    let presentation_agrees = lifted.presentation_agrees;
    Ok(LiftSimplexReport {
        lift_size: m,
        simplex_size: sn.size(),
        iso,
        unit_embedding,
        presentation_agrees,
        pass: iso && unit_embedding && presentation_agrees,
    })
}

/// Elements with a complement, paired with it. Fails if some element has
/// two complements, which distributivity rules out.
pub fn complemented_elements(a: &DAlgebra) -> Result<Vec<(usize, usize)>> {
    let l = a.lat();
    let mut out = Vec::new();
    for x in 0..l.size() {
        let comps: Vec<usize> = (0..l.size()).filter(|&y| l.meet(x, y) == l.bot() && l.join(x, y) == l.top()).collect();
        match comps.as_slice() {
            [] => {}
            [y] => out.push((x, *y)),
            _ => return Err(LatspecError::internal(format!("element {x} has {} complements", comps.len()))),
        }
    }
    Ok(out)
}

/// `D[i, j]` modulo `i ∧ j = bot` and `i ∨ j = top`; its homomorphisms pick
/// out complemented pairs.
pub fn complement_classifier(base: &BaseLattice, budget: Budget) -> Result<DAlgebra> {
    let pres = Presentation::free(base.clone(), &["i", "j"])
        .with_rel(Term::meet(Term::Gen(0), Term::Gen(1)), Term::Bot)
        .with_rel(Term::join(Term::Gen(0), Term::Gen(1)), Term::Top);
    present(&pres, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::free_algebra;

    fn b() -> Budget {
        Budget::default()
    }

    fn two() -> BaseLattice {
        BaseLattice::two()
    }

    #[test]
    fn slice_examples() {
        let f = free_algebra(&two(), 1, b()).unwrap();
        let top = f.lat().top();
        let s = slice_quotient(&f, top).unwrap();
        assert_eq!(s.algebra.size(), 3);
        assert!(s.projection.is_bijective(&s.algebra));
        let s = slice_quotient(&f, f.lat().bot()).unwrap();
        assert_eq!(s.algebra.size(), 1);
        let i = f.presented().unwrap().gen_elems[0];
        let s = slice_quotient(&f, i).unwrap();
        assert_eq!(s.algebra.size(), 2);
        let c = coslice_quotient(&f, i).unwrap();
        assert_eq!(c.algebra.size(), 2);
    }

    #[test]
    fn slices_agree_with_congruences_across_library() {
        for base in BaseLattice::library() {
            let f = free_algebra(&base, 1, b()).unwrap();
            for e in 0..f.size() {
                slice_quotient(&f, e).unwrap();
                coslice_quotient(&f, e).unwrap();
            }
        }
    }

    #[test]
    fn lift_algebra_examples() {
        let d = DAlgebra::initial(&two());
        let l = lift_algebra(&d).unwrap();
        assert_eq!(l.pairs, vec![(0, 0), (1, 0), (1, 1)]);
        assert_eq!(colift_algebra(&d).unwrap().algebra.size(), 3);
        let t = DAlgebra::trivial(&two());
        assert_eq!(lift_algebra(&t).unwrap().algebra.size(), 2);
        assert_eq!(colift_algebra(&t).unwrap().algebra.size(), 2);
        let c3 = DAlgebra::new(two(), DLattice::chain(3), vec![0, 2]).unwrap();
        assert_eq!(lift_algebra(&c3).unwrap().algebra.size(), 4);
        let ll = lift_algebra(&d).unwrap().algebra;
        let brute = (0..2).map(|i| (0..ll.size()).filter(|&x| ll.lat().leq(ll.eta(i), x)).count()).sum::<usize>();
        assert_eq!(colift_algebra(&ll).unwrap().algebra.size(), brute);
        assert_eq!(brute, 4);
    }

    #[test]
    fn lift_algebra_counts() {
        for base in BaseLattice::library() {
            for n in 0..=1 {
                let a = free_algebra(&base, n, b()).unwrap();
                if a.size() > 6 {
                    continue;
                }
                let expect: usize = (0..base.size()).map(|i| (0..a.size()).filter(|&x| a.lat().leq(x, a.eta(i))).count()).sum();
                assert_eq!(lift_algebra(&a).unwrap().algebra.size(), expect);
            }
        }
    }

    #[test]
    fn lift_spec_examples() {
        let d = DAlgebra::initial(&two());
        let l = lift_spec(&d, b()).unwrap();
        assert!(l.presentation_agrees);
        assert!(l.poset.is_isomorphic(&Poset::chain(2)));
        let t = DAlgebra::trivial(&two());
        let l = lift_spec(&t, b()).unwrap();
        assert_eq!(l.size(), 1);
        assert!(l.presentation_agrees);
    }

    #[test]
    fn lift_over_two_adjoins_bottom() {
        for n in 0..=3 {
            let a = simplex_algebra(&two(), n, Direction::Descending, b()).unwrap();
            let s = spec(&a, b()).unwrap();
            let l = lift_spec(&a, b()).unwrap();
            assert!(l.poset.is_isomorphic(&s.poset.with_bottom()));
            let c = colift_spec(&a, b()).unwrap();
            assert!(c.poset.is_isomorphic(&s.poset.with_top()));
        }
    }

    #[test]
    fn simplex_specs_are_chains() {
        for n in 0..=4 {
            for dir in [Direction::Descending, Direction::Ascending] {
                let a = simplex_algebra(&two(), n, dir, b()).unwrap();
                assert!(spec(&a, b()).unwrap().poset.is_isomorphic(&Poset::chain(n + 1)));
            }
        }
        assert_eq!(simplex_algebra(&two(), 2, Direction::Descending, b()).unwrap().size(), 4);
    }

    #[test]
    fn lifted_simplices() {
        for n in 0..=3 {
            for side in [Side::Lift, Side::Colift] {
                let r = lift_simplex_check(&two(), n, side, b()).unwrap();
                assert!(r.pass, "{n} {side:?} {r:?}");
            }
        }
        let r = lift_simplex_check(&BaseLattice::builtin("2x2").unwrap(), 1, Side::Lift, b()).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn complemented_examples() {
        let c = |a: &DAlgebra| complemented_elements(a).unwrap().into_iter().map(|(x, _)| x).collect::<Vec<_>>();
        assert_eq!(c(&DAlgebra::initial(&two())), vec![0, 1]);
        let c3 = DAlgebra::initial(&BaseLattice::builtin("3-chain").unwrap());
        assert_eq!(c(&c3), vec![0, 2]);
        let sq = DAlgebra::initial(&BaseLattice::builtin("2x2").unwrap());
        assert_eq!(c(&sq).len(), 4);
    }

    #[test]
    fn complement_classifier_has_two_points() {
        let bcl = complement_classifier(&two(), b()).unwrap();
        let s = spec(&bcl, b()).unwrap();
        assert!(s.poset.is_isomorphic(&Poset::antichain(2)));
    }
}
