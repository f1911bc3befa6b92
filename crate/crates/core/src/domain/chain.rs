//! Sequential limits and colimits of chain quotients `D[m]/(x1 >= ... >= xm)`.
//!
//! Stage `n` is the quotient on `n - 1` generators. Its elements are written
//! `t0 ∨ t1 ∧ x1 ∨ ... ∨ t(n-1) ∧ x(n-1)` for nondecreasing `n`-tuples `t`
//! of base elements.

use std::collections::{BTreeSet, HashMap};

use super::lift_algebra;
use super::sequence::{nondecreasing_enumerate, omega_enumerate, EventualSeq, OmegaKind, SeqDirection};
use crate::algebra::{
    algebra_homs, verify_colimit, verify_limit, AlgebraArrow, AlgebraDiagram, AlgebraHom, BaseLattice, DAlgebra,
};
use crate::budget::Budget;
use crate::error::{LatspecError, Result};
use crate::lattice::DLattice;
use crate::polynomial::{chain_quotient, chain_tuples, Direction};

struct Stage {
    algebra: DAlgebra,
    vars: Vec<usize>,
}

impl Stage {
    fn new(base: &BaseLattice, n: usize, budget: Budget) -> Result<Stage> {
        let (algebra, vars) = chain_quotient(&DAlgebra::initial(base), n - 1, Direction::Ascending, budget)?;
        Ok(Stage { algebra, vars })
    }

    /// `t0 ∨ ⋁ t(k+1) ∧ x(k+1)` for a nondecreasing tuple of length `n`.
    fn element(&self, t: &[usize]) -> usize {
        let l = self.algebra.lat();
        let mut acc = self.algebra.eta(t[0]);
        for (k, &x) in self.vars.iter().enumerate() {
            acc = l.join(acc, l.meet(self.algebra.eta(t[k + 1]), x));
        }
        acc
    }

    fn len(&self) -> usize {
        self.vars.len() + 1
    }
}

fn stages(base: &BaseLattice, depth: usize, budget: Budget) -> Result<Vec<Stage>> {
    if depth == 0 {
        return Err(LatspecError::invalid("depth must be at least 1"));
    }
    (1..=depth).map(|n| Stage::new(base, n, budget)).collect()
}

/// Finite join of the distinct values in `values`.
fn finite_join(l: &DLattice, values: impl IntoIterator<Item = usize>) -> usize {
    let distinct: BTreeSet<usize> = values.into_iter().collect();
    distinct.into_iter().fold(l.bot(), |acc, v| l.join(acc, v))
}

/// `eta(j0) ∨ ⋁_n eta(j(n+1)) ∧ a(n)` in `A`. Both sequences are eventually
/// constant, so the family takes finitely many values.
fn sigma_formula(a: &DAlgebra, j: &EventualSeq, seq: &EventualSeq) -> usize {
    let l = a.lat();
    let horizon = j.stabilizes_at().max(seq.stabilizes_at()) + 1;
    let terms = (0..horizon).map(|n| l.meet(a.eta(j.get(n + 1)), seq.get(n)));
    l.join(a.eta(j.get(0)), finite_join(l, terms))
}

/// `i_n = (0, ..., 0, 1, 1, ...)` with `n + 1` zeros.
fn generator_seq(d: &DLattice, n: usize) -> EventualSeq {
    EventualSeq::new(d, vec![d.bot(); n + 1], d.top(), SeqDirection::Nondecreasing).expect("monotone")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageReport {
    pub stage: usize,
    pub size: usize,
    /// Nondecreasing sequences determined by their first `stage` entries.
    pub sequences: usize,
    /// The normal form map from those sequences is a bijection.
    pub bijective: bool,
    pub preserves_operations: bool,
    /// The map `x(stage) -> bot` into the previous stage drops the last
    /// entry of each tuple.
    pub transition_forgets_last: bool,
    /// This stage with its composite transitions is the limit of stages
    /// `1..=stage`.
    pub limit_verified: bool,
}

impl StageReport {
    pub fn pass(&self) -> bool {
        self.bijective && self.preserves_operations && self.transition_forgets_last && self.limit_verified
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalReport {
    pub algebra: String,
    /// At every stage, homomorphisms into the algebra are exactly the
    /// nonincreasing tuples of generator images.
    pub homs_are_tuples: bool,
    /// Each such homomorphism evaluates by the normal form formula.
    pub homs_follow_formula: bool,
    /// Nonincreasing sequences in the algebra that were tested.
    pub sequences: usize,
    /// `f_a(i_n) = a_n` for every tested sequence and index.
    pub generators_hit: bool,
    /// `f_a` agrees with the last stage's homomorphism after truncation.
    pub factors_through_stage: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCompletenessReport {
    pub base: String,
    pub depth: usize,
    pub stages: Vec<StageReport>,
    /// Every tested sequence equals `j0 ∨ ⋁ j(n+1) ∧ i_n`, joins pointwise.
    pub decomposition_holds: bool,
    pub universal: Vec<UniversalReport>,
    pub pass: bool,
}

/// Algebras the universal property is tested against: the base and its lift.
pub fn chain_test_algebras(base: &BaseLattice) -> Result<Vec<(String, DAlgebra)>> {
    let d = DAlgebra::initial(base);
    let l = lift_algebra(&d)?.algebra;
    Ok(vec![(base.name.clone(), d), (format!("L({})", base.name), l)])
}

/// Builds stages `1..=depth` with the maps `x(n) -> bot`, checks each stage
/// against nondecreasing sequences and against the limit of the earlier
/// stages, and checks that homomorphisms out of the chain correspond to
/// nonincreasing sequences via `f_a(j) = j0 ∨ ⋁ j(n+1) ∧ a(n)`.
pub fn chain_completeness_check(base: &BaseLattice, depth: usize, budget: Budget) -> Result<ChainCompletenessReport> {
    let d = &base.lattice;
    let st = stages(base, depth, budget)?;
    let transitions: Vec<AlgebraHom> = (1..st.len())
        .map(|m| {
            let mut images = st[m - 1].vars.clone();
            images.push(st[m - 1].algebra.lat().bot());
            AlgebraHom::from_generator_images(&st[m].algebra, &st[m - 1].algebra, &images)
        })
        .collect::<Result<_>>()?;
    let mut reports = Vec::new();
    for (m, s) in st.iter().enumerate() {
        let seqs = nondecreasing_enumerate(d, m);
        let image: Vec<usize> = seqs.iter().map(|j| s.element(&j.truncate(s.len()))).collect();
        let distinct: BTreeSet<usize> = image.iter().copied().collect();
        let bijective = distinct.len() == seqs.len() && seqs.len() == s.algebra.size();
        let index: HashMap<&EventualSeq, usize> = seqs.iter().enumerate().map(|(k, j)| (j, k)).collect();
        let l = s.algebra.lat();
        let mut preserves_operations = true;
        for (x, jx) in seqs.iter().enumerate() {
            for (y, jy) in seqs.iter().enumerate() {
                let mt = jx.zip_with(jy, d, |p, q| d.meet(p, q))?;
                let jn = jx.zip_with(jy, d, |p, q| d.join(p, q))?;
                preserves_operations &= index.get(&mt).is_some_and(|&k| image[k] == l.meet(image[x], image[y]))
                    && index.get(&jn).is_some_and(|&k| image[k] == l.join(image[x], image[y]));
            }
        }
        let transition_forgets_last = m == 0
            || seqs.iter().zip(&image).all(|(j, &e)| {
                let prev = &st[m - 1];
                transitions[m - 1].apply(e) == prev.element(&j.truncate(prev.len()))
            });
        let objects: Vec<DAlgebra> = st[..=m].iter().map(|s| s.algebra.clone()).collect();
        let arrows = (1..=m).map(|k| AlgebraArrow { source: k, target: k - 1, hom: transitions[k - 1].clone() }).collect();
        let diagram = AlgebraDiagram::new(objects, arrows)?;
        let mut legs = vec![AlgebraHom::identity(&s.algebra)];
        for k in (0..m).rev() {
            let next = legs.last().expect("nonempty").then(&transitions[k]);
            legs.push(next);
        }
        legs.reverse();
        let limit_verified = verify_limit(&diagram, &s.algebra, &legs, budget)?.pass;
        reports.push(StageReport {
            stage: m + 1,
            size: s.algebra.size(),
            sequences: seqs.len(),
            bijective,
            preserves_operations,
            transition_forgets_last,
            limit_verified,
        });
    }

    let last = st.last().expect("depth >= 1");
    let seqs = nondecreasing_enumerate(d, depth - 1);
    let decomposition_holds = seqs.iter().all(|j| {
        let horizon = j.stabilizes_at() + 2;
        (0..horizon).all(|m| {
            let terms = (0..=m).map(|n| d.meet(j.get(n + 1), generator_seq(d, n).get(m)));
            d.join(j.get(0), finite_join(d, terms)) == j.get(m)
        })
    });

    let mut universal = Vec::new();
    for (name, a) in chain_test_algebras(base)? {
        let mut homs_are_tuples = true;
        let mut homs_follow_formula = true;
        let mut last_homs: HashMap<Vec<usize>, AlgebraHom> = HashMap::new();
        for (m, s) in st.iter().enumerate() {
            let homs = algebra_homs(&s.algebra, &a, budget)?;
            let got: BTreeSet<Vec<usize>> = homs.iter().map(|h| s.vars.iter().map(|&v| h.apply(v)).collect()).collect();
            let want: BTreeSet<Vec<usize>> = if m == 0 {
                BTreeSet::from([Vec::new()])
            } else {
                chain_tuples(a.lat(), m - 1, Direction::Descending).into_iter().collect()
            };
            homs_are_tuples &= got == want && got.len() == homs.len();
            let stage_seqs = nondecreasing_enumerate(d, m);
            for h in &homs {
                let imgs: Vec<usize> = s.vars.iter().map(|&v| h.apply(v)).collect();
                let al = a.lat();
                homs_follow_formula &= stage_seqs.iter().all(|j| {
                    let t = j.truncate(s.len());
                    let expect = (0..imgs.len()).fold(a.eta(t[0]), |acc, k| al.join(acc, al.meet(a.eta(t[k + 1]), imgs[k])));
                    h.apply(s.element(&t)) == expect
                });
            }
            if m + 1 == st.len() {
                last_homs = homs.into_iter().map(|h| (last.vars.iter().map(|&v| h.apply(v)).collect(), h)).collect();
            }
        }
        let a_seqs = omega_enumerate(a.lat(), depth - 1, OmegaKind::OmegaBar);
        let mut generators_hit = true;
        let mut factors_through_stage = true;
        for s in &a_seqs {
            generators_hit &= (0..depth).all(|n| sigma_formula(&a, &generator_seq(d, n), s) == s.get(n));
            match last_homs.get(&s.truncate(depth - 1)) {
                Some(h) => {
                    factors_through_stage &=
                        seqs.iter().all(|j| sigma_formula(&a, j, s) == h.apply(last.element(&j.truncate(depth))));
                }
                None => factors_through_stage = false,
            }
        }
        let pass = homs_are_tuples && homs_follow_formula && generators_hit && factors_through_stage;
        universal.push(UniversalReport {
            algebra: name,
            homs_are_tuples,
            homs_follow_formula,
            sequences: a_seqs.len(),
            generators_hit,
            factors_through_stage,
            pass,
        });
    }
    let pass = reports.iter().all(StageReport::pass) && decomposition_holds && universal.iter().all(|u| u.pass);
    Ok(ChainCompletenessReport { base: base.name.clone(), depth, stages: reports, decomposition_holds, universal, pass })
}

/// Tuple-level form of the generator-to-generator inclusion of one stage
/// into the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InclusionFormula {
    RepeatLast,
    AppendTop,
    AppendBot,
    PrependBot,
    PrependTop,
    Unrecognised,
}

impl InclusionFormula {
    const CANDIDATES: [InclusionFormula; 5] = [
        InclusionFormula::RepeatLast,
        InclusionFormula::AppendTop,
        InclusionFormula::AppendBot,
        InclusionFormula::PrependBot,
        InclusionFormula::PrependTop,
    ];

    fn apply(self, d: &DLattice, t: &[usize]) -> Option<Vec<usize>> {
        let mut v = t.to_vec();
        match self {
            InclusionFormula::RepeatLast => v.push(*t.last()?),
            InclusionFormula::AppendTop => v.push(d.top()),
            InclusionFormula::AppendBot => v.push(d.bot()),
            InclusionFormula::PrependBot => v.insert(0, d.bot()),
            InclusionFormula::PrependTop => v.insert(0, d.top()),
            InclusionFormula::Unrecognised => return None,
        }
        Some(v)
    }

    /// The sequence an element with tuple `t` at the last stage denotes in
    /// the colimit, when the formula determines one.
    fn limit_sequence(self, d: &DLattice, t: &[usize]) -> Option<EventualSeq> {
        let dir = SeqDirection::Nondecreasing;
        match self {
            InclusionFormula::RepeatLast => EventualSeq::from_tuple(d, t, dir).ok(),
            InclusionFormula::AppendTop => EventualSeq::new(d, t.to_vec(), d.top(), dir).ok(),
            InclusionFormula::AppendBot => EventualSeq::new(d, t.to_vec(), d.bot(), dir).ok(),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductivityReport {
    pub base: String,
    pub depth: usize,
    /// Sizes of stages `1..=depth`.
    pub sizes: Vec<usize>,
    pub inclusions_are_homs: bool,
    pub inclusions_injective: bool,
    /// Discovered tuple form of the inclusions; `None` at depth 1.
    pub formula: Option<InclusionFormula>,
    /// The last stage with its composite inclusions is the colimit of the
    /// prefix.
    pub colimit_verified: bool,
    /// Colimit elements read as sequences are exactly the nondecreasing
    /// sequences determined by their first `depth` entries.
    pub colimit_is_eventual: bool,
    /// Colimit elements whose sequence never reaches top.
    pub outside_delta_omega: Vec<EventualSeq>,
    /// Nondecreasing sequences within the truncation that no colimit
    /// element denotes.
    pub absent_from_colimit: Vec<EventualSeq>,
    /// Every colimit element reaches top and some nondecreasing sequence is
    /// missing.
    pub prediction_holds: bool,
}

/// Builds stages `1..=depth` with the inclusions `x(k) -> x(k)`, discovers
/// their form on tuples, and compares the colimit prefix with the
/// sequences that reach top.
pub fn inductivity_check(base: &BaseLattice, depth: usize, budget: Budget) -> Result<InductivityReport> {
    let d = &base.lattice;
    let st = stages(base, depth, budget)?;
    let mut inclusions = Vec::new();
    let mut inclusions_are_homs = true;
    for m in 1..st.len() {
        let images = st[m].vars[..st[m - 1].vars.len()].to_vec();
        match AlgebraHom::from_generator_images(&st[m - 1].algebra, &st[m].algebra, &images) {
            Ok(h) => inclusions.push(h),
            Err(_) => {
                inclusions_are_homs = false;
                break;
            }
        }
    }
    let inclusions_injective = inclusions.iter().all(AlgebraHom::is_injective);
    let decode: Vec<HashMap<usize, Vec<usize>>> = st
        .iter()
        .map(|s| chain_tuples(d, s.len() - 1, Direction::Ascending).into_iter().map(|t| (s.element(&t), t)).collect())
        .collect();
    let mut formula = None;
    if inclusions_are_homs && st.len() > 1 {
        let matches = |f: InclusionFormula| {
            (0..inclusions.len())
                .all(|m| decode[m].iter().all(|(&e, t)| f.apply(d, t).as_ref() == decode[m + 1].get(&inclusions[m].apply(e))))
        };
        formula = Some(InclusionFormula::CANDIDATES.into_iter().find(|&f| matches(f)).unwrap_or(InclusionFormula::Unrecognised));
    }
    let last = st.last().expect("depth >= 1");
    let mut colimit_verified = inclusions_are_homs;
    if inclusions_are_homs {
        let objects = st.iter().map(|s| s.algebra.clone()).collect();
        let arrows =
            inclusions.iter().enumerate().map(|(m, h)| AlgebraArrow { source: m, target: m + 1, hom: h.clone() }).collect();
        let diagram = AlgebraDiagram::new(objects, arrows)?;
        let mut legs = vec![AlgebraHom::identity(&last.algebra)];
        for h in inclusions.iter().rev() {
            let next = h.then(legs.last().expect("nonempty"));
            legs.push(next);
        }
        legs.reverse();
        colimit_verified = verify_colimit(&diagram, &last.algebra, &legs, budget)?.pass;
    }
    let read = formula.unwrap_or(InclusionFormula::RepeatLast);
    let colimit_seqs: Option<BTreeSet<EventualSeq>> =
        decode.last().expect("depth >= 1").values().map(|t| read.limit_sequence(d, t)).collect();
    let truncated: BTreeSet<EventualSeq> = nondecreasing_enumerate(d, depth - 1).into_iter().collect();
    let (colimit_is_eventual, outside_delta_omega, absent_from_colimit) = match &colimit_seqs {
        Some(cs) => (
            *cs == truncated,
            cs.iter().filter(|s| !s.reaches(d.top())).cloned().collect(),
            truncated.difference(cs).cloned().collect(),
        ),
        None => (false, Vec::new(), Vec::new()),
    };
    let prediction_holds = colimit_seqs.is_some() && outside_delta_omega.is_empty() && !absent_from_colimit.is_empty();
    Ok(InductivityReport {
        base: base.name.clone(),
        depth,
        sizes: st.iter().map(|s| s.algebra.size()).collect(),
        inclusions_are_homs,
        inclusions_injective,
        formula,
        colimit_verified,
        colimit_is_eventual,
        outside_delta_omega,
        absent_from_colimit,
        prediction_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn chain_completeness_over_two() {
        let r = chain_completeness_check(&BaseLattice::two(), 4, b()).unwrap();
        assert!(r.pass, "{r:?}");
        let sizes: Vec<usize> = r.stages.iter().map(|s| s.size).collect();
        assert_eq!(sizes, vec![2, 3, 4, 5]);
    }

    #[test]
    fn chain_completeness_small_cases() {
        let r = chain_completeness_check(&BaseLattice::two(), 1, b()).unwrap();
        assert!(r.pass && r.stages.len() == 1);
        let c3 = BaseLattice::builtin("3-chain").unwrap();
        let r = chain_completeness_check(&c3, 3, b()).unwrap();
        assert!(r.pass, "{r:?}");
        let sizes: Vec<usize> = r.stages.iter().map(|s| s.size).collect();
        assert_eq!(sizes, vec![3, 6, 10]);
    }

    #[test]
    fn inductivity_over_two() {
        let r = inductivity_check(&BaseLattice::two(), 3, b()).unwrap();
        assert_eq!(r.sizes, vec![2, 3, 4]);
        assert!(r.inclusions_are_homs && r.inclusions_injective && r.colimit_verified);
        assert_eq!(r.formula, Some(InclusionFormula::RepeatLast));
        assert!(r.colimit_is_eventual);
        assert!(r.absent_from_colimit.is_empty());
        let bot = EventualSeq::new(&DLattice::two(), vec![], 0, SeqDirection::Nondecreasing).unwrap();
        assert_eq!(r.outside_delta_omega, vec![bot]);
        assert!(!r.prediction_holds);
    }

    #[test]
    fn inductivity_depth_one_is_base() {
        let r = inductivity_check(&BaseLattice::two(), 1, b()).unwrap();
        assert_eq!(r.sizes, vec![2]);
        assert_eq!(r.formula, None);
        assert!(r.colimit_verified && r.colimit_is_eventual);
    }
}
