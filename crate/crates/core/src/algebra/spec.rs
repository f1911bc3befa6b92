//! Spectra, observation algebras, and the evaluation maps between them.

use std::collections::HashMap;

use super::{algebra_homs, coproduct, AlgebraHom, BaseLattice, DAlgebra};
use crate::budget::Budget;
use crate::error::{LatspecError, Result};
use crate::poset::{MonotoneMap, Poset};

/// Homomorphisms into the base with the satisfaction order.
#[derive(Clone, Debug)]
pub struct SpecPoset {
    /// Points, in lexicographic order of their generator images.
    pub homs: Vec<AlgebraHom>,
    /// `x <= y` iff `x(a) <= y(a)` for every element `a`.
    pub poset: Poset,
    /// Whether comparing points on generators alone gives the same order.
    pub generator_order_agrees: bool,
}

impl SpecPoset {
    pub fn size(&self) -> usize {
        self.homs.len()
    }

    pub fn index_of(&self, table: &[usize]) -> Option<usize> {
        self.homs.iter().position(|h| h.table == table)
    }
}

/// The spectrum of `a`: homomorphisms into the base lattice.
pub fn spec(a: &DAlgebra, budget: Budget) -> Result<SpecPoset> {
    let d = DAlgebra::initial(a.base());
    let homs = algebra_homs(a, &d, budget)?;
    let dl = &a.base().lattice;
    let n = homs.len();
    let pointwise = |x: &AlgebraHom, y: &AlgebraHom, elems: &[usize]| elems.iter().all(|&e| dl.leq(x.apply(e), y.apply(e)));
    let all: Vec<usize> = (0..a.size()).collect();
    let gens = a.presented()?.gen_elems.clone();
    let mut leq = vec![false; n * n];
    let mut agrees = true;
    for i in 0..n {
        for j in 0..n {
            let full = pointwise(&homs[i], &homs[j], &all);
            let on_gens = pointwise(&homs[i], &homs[j], &gens);
            agrees &= full == on_gens;
            leq[i * n + j] = full;
        }
    }
    let poset = Poset::from_relation(n, leq).map_err(|v| LatspecError::internal(format!("satisfaction order: {v}")))?;
    Ok(SpecPoset { homs, poset, generator_order_agrees: agrees })
}

/// `D^n` with pointwise operations and the diagonal structure map. Tuples are
/// indexed as base-`|D|` numerals, first coordinate most significant.
pub fn opens(base: &BaseLattice, n: usize, budget: Budget) -> Result<DAlgebra> {
    budget.check_power(base.size(), 2 * n, "building an observation algebra")?;
    let lat = base.lattice.power(n);
    let eta = (0..base.size()).map(|d| (0..n).fold(0, |acc, _| acc * base.size() + d)).collect();
    DAlgebra::new(base.clone(), lat, eta)
}

fn tuple_index(base: usize, digits: impl Iterator<Item = usize>) -> usize {
    digits.fold(0, |acc, x| acc * base + x)
}

fn digit(base: usize, n: usize, index: usize, k: usize) -> usize {
    index / base.pow((n - 1 - k) as u32) % base
}

/// The evaluation map `a -> O(Spec a)` and whether it is injective or bijective.
#[derive(Clone, Debug)]
pub struct CounitDiagnostics {
    pub spec: SpecPoset,
    pub observations: DAlgebra,
    pub map: AlgebraHom,
    pub injective: bool,
    pub iso: bool,
}

pub fn counit_diagnostics(a: &DAlgebra, budget: Budget) -> Result<CounitDiagnostics> {
    let s = spec(a, budget)?;
    let obs = opens(a.base(), s.size(), budget)?;
    let b = a.base().size();
    let table = (0..a.size()).map(|e| tuple_index(b, s.homs.iter().map(|x| x.apply(e)))).collect();
    let map = AlgebraHom { table };
    if !map.is_hom(a, &obs) {
        return Err(LatspecError::internal("evaluation map is not a homomorphism"));
    }
    let injective = map.is_injective();
    let iso = map.is_bijective(&obs);
    Ok(CounitDiagnostics { spec: s, observations: obs, map, injective, iso })
}

/// The map `X -> Spec(O X)` sending a point to its projection, for an
/// `n`-element set `X`, as indices into the spectrum.
pub fn unit_map(base: &BaseLattice, n: usize, budget: Budget) -> Result<(SpecPoset, Vec<usize>)> {
    let obs = opens(base, n, budget)?;
    let s = spec(&obs, budget)?;
    let unit = unit_indices(&obs, &s, n)?;
    Ok((s, unit))
}

fn unit_indices(obs: &DAlgebra, s: &SpecPoset, n: usize) -> Result<Vec<usize>> {
    let b = obs.base().size();
    (0..n)
        .map(|x| {
            let proj: Vec<usize> = (0..obs.size()).map(|e| digit(b, n, e, x)).collect();
            s.index_of(&proj).ok_or_else(|| LatspecError::internal(format!("projection {x} is not a point")))
        })
        .collect()
}

/// `Spec a -> Spec O Spec a -> Spec a` is the identity.
///
/// Observations are kept as coordinate vectors over the points, so `O Spec a`
/// is never built: the counit sends an element to its values at the points,
/// and the unit at a point is the projection onto that coordinate. The
/// counit is checked to be a homomorphism coordinatewise.
pub fn spec_triangle(a: &DAlgebra, budget: Budget) -> Result<bool> {
    let s = spec(a, budget)?;
    let n = a.size();
    let l = a.lat();
    let d = &a.base().lattice;
    let eval: Vec<Vec<usize>> = (0..n).map(|e| s.homs.iter().map(|x| x.apply(e)).collect()).collect();
    let pointwise = |u: &[usize], v: &[usize], op: &dyn Fn(usize, usize) -> usize| -> Vec<usize> {
        u.iter().zip(v).map(|(&p, &q)| op(p, q)).collect()
    };
    let hom = (0..d.size()).all(|c| eval[a.eta(c)].iter().all(|&v| v == c))
        && (0..n).all(|x| {
            (0..n).all(|y| {
                eval[l.meet(x, y)] == pointwise(&eval[x], &eval[y], &|p, q| d.meet(p, q))
                    && eval[l.join(x, y)] == pointwise(&eval[x], &eval[y], &|p, q| d.join(p, q))
            })
        });
    Ok(hom && (0..s.size()).all(|k| (0..n).all(|e| eval[e][k] == s.homs[k].apply(e))))
}

/// `O X -> O Spec O X -> O X` is the identity, for an `n`-element set.
///
/// An observation `f` goes to its values at the points of `Spec O X`;
/// restricting along the unit reads them off at the projections.
pub fn observation_triangle(base: &BaseLattice, n: usize, budget: Budget) -> Result<bool> {
    let obs = opens(base, n, budget)?;
    let s = spec(&obs, budget)?;
    let unit = unit_indices(&obs, &s, n)?;
    let b = base.size();
    Ok((0..obs.size()).all(|f| (0..n).all(|x| s.homs[unit[x]].apply(f) == digit(b, n, f, x))))
}

/// Precomposition with `f: a -> b` as a monotone map `Spec b -> Spec a`.
pub fn spec_map(f: &AlgebraHom, spec_b: &SpecPoset, spec_a: &SpecPoset) -> Result<MonotoneMap> {
    let index: HashMap<&[usize], usize> = spec_a.homs.iter().enumerate().map(|(i, h)| (h.table.as_slice(), i)).collect();
    let table = spec_b
        .homs
        .iter()
        .map(|y| {
            let t = f.then(y);
            index.get(t.table.as_slice()).copied().ok_or_else(|| LatspecError::internal("precomposite is not a point"))
        })
        .collect::<Result<Vec<_>>>()?;
    MonotoneMap::new(spec_b.poset.clone(), spec_a.poset.clone(), table)
}

/// The canonical order of an algebra against its behavioural preorder.
#[derive(Clone, Debug)]
pub struct Orders {
    /// `a <= b` iff `a ∧ b = a`.
    pub canonical: Poset,
    /// `behavioural[a * n + b]` iff every point `x` has `x(a) <= x(b)`.
    pub behavioural: Vec<bool>,
    pub coincide: bool,
}

pub fn orders(a: &DAlgebra, budget: Budget) -> Result<Orders> {
    let s = spec(a, budget)?;
    let n = a.size();
    let d = &a.base().lattice;
    let canonical = a.lat().order();
    let behavioural: Vec<bool> = (0..n * n).map(|k| s.homs.iter().all(|x| d.leq(x.apply(k / n), x.apply(k % n)))).collect();
    let coincide = canonical.relation() == behavioural.as_slice();
    Ok(Orders { canonical, behavioural, coincide })
}

/// Points of the exponential of spectra `(Spec b)^(Spec c)` at stage `a`:
/// homomorphisms `b -> a ⊗ c`. Returns the coproduct and the homomorphisms.
pub fn stage_exponential(b: &DAlgebra, c: &DAlgebra, stage: &DAlgebra, budget: Budget) -> Result<(DAlgebra, Vec<AlgebraHom>)> {
    let cp = coproduct(stage, c, budget)?;
    let homs = algebra_homs(b, &cp.algebra, budget)?;
    Ok((cp.algebra, homs))
}
