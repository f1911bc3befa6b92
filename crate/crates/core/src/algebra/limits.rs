//! Finite limits and colimits of algebras, and checks of candidate (co)cones.

use std::collections::HashMap;

use super::spec::{spec, spec_map, SpecPoset};
use super::{present, AlgebraHom, DAlgebra, Presentation};
use crate::budget::{Budget, Meter};
use crate::diagram::compatible_tuples;
use crate::error::{LatspecError, Result};
use crate::lattice::DLattice;
use crate::poset::{poset_limit, DiagramArrow, PosetDiagram};

#[derive(Clone, Debug)]
pub struct AlgebraArrow {
    pub source: usize,
    pub target: usize,
    pub hom: AlgebraHom,
}

/// A finite diagram of algebras over a common base.
#[derive(Clone, Debug)]
pub struct AlgebraDiagram {
    pub objects: Vec<DAlgebra>,
    pub arrows: Vec<AlgebraArrow>,
}

impl AlgebraDiagram {
    /// Checks that every arrow is a homomorphism between its objects.
    pub fn new(objects: Vec<DAlgebra>, arrows: Vec<AlgebraArrow>) -> Result<Self> {
        for (k, a) in arrows.iter().enumerate() {
            let (Some(s), Some(t)) = (objects.get(a.source), objects.get(a.target)) else {
                return Err(LatspecError::invalid(format!("arrow {k} refers to a missing object")));
            };
            if !a.hom.is_hom(s, t) {
                return Err(LatspecError::invalid(format!("arrow {k} is not a homomorphism")));
            }
        }
        if objects.windows(2).any(|w| w[0].base().lattice != w[1].base().lattice) {
            return Err(LatspecError::invalid("objects over different bases"));
        }
        Ok(AlgebraDiagram { objects, arrows })
    }

    /// Spectra of the objects and the opposite diagram of posets.
    pub fn spec_diagram(&self, budget: Budget) -> Result<(Vec<SpecPoset>, PosetDiagram)> {
        let specs = self.objects.iter().map(|o| spec(o, budget)).collect::<Result<Vec<_>>>()?;
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                let m = spec_map(&a.hom, &specs[a.target], &specs[a.source])?;
                Ok(DiagramArrow { source: a.target, target: a.source, table: m.table })
            })
            .collect::<Result<Vec<_>>>()?;
        let posets = specs.iter().map(|s| s.poset.clone()).collect();
        Ok((specs, PosetDiagram::new(posets, arrows)?))
    }
}

/// Limit computed on underlying sets: compatible tuples with componentwise
/// operations. Returns the limit and its projections.
pub fn algebra_limit(d: &AlgebraDiagram, budget: Budget) -> Result<(DAlgebra, Vec<AlgebraHom>)> {
    let base = d
        .objects
        .first()
        .map(|o| o.base().clone())
        .ok_or_else(|| LatspecError::invalid("the limit of an empty diagram needs a base; use the trivial algebra"))?;
    let sizes: Vec<usize> = d.objects.iter().map(DAlgebra::size).collect();
    let arrows: Vec<(usize, usize, &[usize])> = d.arrows.iter().map(|a| (a.source, a.target, a.hom.table.as_slice())).collect();
    let tuples = compatible_tuples(&sizes, &arrows, &mut Meter::new(budget, "computing an algebra limit"))?;
    let n = tuples.len();
    if (n as u64).saturating_mul(n as u64) > budget.limit() {
        return Err(budget.exceeded("building limit tables"));
    }
    let index: HashMap<&[usize], usize> = tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let k = d.objects.len();
    let combine = |a: &[usize], b: &[usize], meet: bool| -> usize {
        let t: Vec<usize> = (0..k)
            .map(|j| {
                let l = d.objects[j].lat();
                if meet {
                    l.meet(a[j], b[j])
                } else {
                    l.join(a[j], b[j])
                }
            })
            .collect();
        index[t.as_slice()]
    };
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = combine(&tuples[a], &tuples[b], true);
            join[a * n + b] = combine(&tuples[a], &tuples[b], false);
        }
    }
    let lat = DLattice::from_tables_unchecked(n, meet, join);
    let eta = (0..base.size())
        .map(|c| {
            let t: Vec<usize> = d.objects.iter().map(|o| o.eta(c)).collect();
            index[t.as_slice()]
        })
        .collect();
    let limit = DAlgebra::from_parts(base, lat, eta, None);
    let legs = (0..k).map(|j| AlgebraHom { table: tuples.iter().map(|t| t[j]).collect() }).collect();
    Ok((limit, legs))
}

/// Outcome of [`verify_limit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub limit_size: usize,
    pub candidate_size: usize,
    pub legs_are_homs: bool,
    pub cone_commutes: bool,
    pub comparison_bijective: bool,
    pub pass: bool,
}

/// Checks that `candidate` with projections `legs` is a limit of `d`: the
/// legs form a cone and the comparison map into the set-level limit is a
/// bijection.
pub fn verify_limit(d: &AlgebraDiagram, candidate: &DAlgebra, legs: &[AlgebraHom], budget: Budget) -> Result<LimitReport> {
    let (limit, proj) = algebra_limit(d, budget)?;
    let legs_are_homs = legs.len() == d.objects.len() && legs.iter().zip(&d.objects).all(|(l, o)| l.is_hom(candidate, o));
    let cone_commutes = legs_are_homs && d.arrows.iter().all(|a| legs[a.source].then(&a.hom) == legs[a.target]);
    let mut comparison_bijective = false;
    if cone_commutes {
        let index: HashMap<Vec<usize>, usize> =
            (0..limit.size()).map(|x| (proj.iter().map(|p| p.apply(x)).collect(), x)).collect();
        let table: Option<Vec<usize>> =
            (0..candidate.size()).map(|e| index.get(&legs.iter().map(|l| l.apply(e)).collect::<Vec<_>>()).copied()).collect();
        if let Some(table) = table {
            let cmp = AlgebraHom { table };
            comparison_bijective = cmp.is_bijective(&limit) && cmp.is_hom(candidate, &limit);
        }
    }
    Ok(LimitReport {
        limit_size: limit.size(),
        candidate_size: candidate.size(),
        legs_are_homs,
        cone_commutes,
        comparison_bijective,
        pass: cone_commutes && comparison_bijective,
    })
}

/// Colimit by merging presentations: generators of object `k` are renamed
/// `o<k>.<name>`, and each arrow identifies a source generator with a term
/// for its image. Returns the colimit and its injections.
pub fn algebra_colimit(d: &AlgebraDiagram, budget: Budget) -> Result<(DAlgebra, Vec<AlgebraHom>)> {
    let base = d
        .objects
        .first()
        .map(|o| o.base().clone())
        .ok_or_else(|| LatspecError::invalid("the colimit of an empty diagram needs a base; use the initial algebra"))?;
    let provs = d.objects.iter().map(|o| o.presented().map(|p| p.into_owned())).collect::<Result<Vec<_>>>()?;
    let mut offsets = Vec::with_capacity(provs.len());
    let mut gens = Vec::new();
    let mut rels = Vec::new();
    for (k, p) in provs.iter().enumerate() {
        let off = gens.len();
        offsets.push(off);
        gens.extend(p.presentation.gens.iter().map(|g| format!("o{k}.{g}")));
        rels.extend(p.presentation.rels.iter().map(|(l, r)| (l.map_gens(&|i| i + off), r.map_gens(&|i| i + off))));
    }
    for a in &d.arrows {
        let target = &d.objects[a.target];
        for (i, &g) in provs[a.source].gen_elems.iter().enumerate() {
            let image = target.element_term(a.hom.apply(g))?.map_gens(&|j| j + offsets[a.target]);
            rels.push((super::Term::Gen(offsets[a.source] + i), image));
        }
    }
    let pres = Presentation::new(base, gens, rels)?;
    let colim = present(&pres, budget)?;
    let cg = colim.presented()?.gen_elems.clone();
    let injections = d
        .objects
        .iter()
        .enumerate()
        .map(|(k, o)| AlgebraHom::from_generator_images(o, &colim, &cg[offsets[k]..offsets[k] + provs[k].gen_elems.len()]))
        .collect::<Result<Vec<_>>>()?;
    Ok((colim, injections))
}

/// Outcome of [`verify_colimit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimitReport {
    pub colimit_size: usize,
    pub candidate_size: usize,
    pub cocone_commutes: bool,
    pub comparison_bijective: bool,
    /// The spectrum of the colimit is the limit of the spectra.
    pub spec_is_limit: bool,
    pub pass: bool,
}

/// Checks that `candidate` with injections `legs` is a colimit of `d`, and
/// that taking spectra turns the colimit into a limit of posets.
pub fn verify_colimit(d: &AlgebraDiagram, candidate: &DAlgebra, legs: &[AlgebraHom], budget: Budget) -> Result<ColimitReport> {
    let (colim, inj) = algebra_colimit(d, budget)?;
    let legs_ok = legs.len() == d.objects.len() && legs.iter().zip(&d.objects).all(|(l, o)| l.is_hom(o, candidate));
    let cocone_commutes = legs_ok && d.arrows.iter().all(|a| a.hom.then(&legs[a.target]) == legs[a.source]);
    let mut comparison_bijective = false;
    if cocone_commutes {
        let provs = d.objects.iter().map(|o| o.presented().map(|p| p.gen_elems.clone())).collect::<Result<Vec<_>>>()?;
        let images: Vec<usize> = provs.iter().enumerate().flat_map(|(k, g)| g.iter().map(move |&e| legs[k].apply(e))).collect();
        if let Ok(cmp) = AlgebraHom::from_generator_images(&colim, candidate, &images) {
            let commutes = inj.iter().zip(legs).all(|(i, l)| i.then(&cmp) == *l);
            comparison_bijective = commutes && cmp.is_bijective(candidate);
        }
    }
    let spec_is_limit = spec_turns_colimit_into_limit(d, &colim, &inj, budget)?;
    Ok(ColimitReport {
        colimit_size: colim.size(),
        candidate_size: candidate.size(),
        cocone_commutes,
        comparison_bijective,
        spec_is_limit,
        pass: cocone_commutes && comparison_bijective && spec_is_limit,
    })
}

fn spec_turns_colimit_into_limit(d: &AlgebraDiagram, colim: &DAlgebra, inj: &[AlgebraHom], budget: Budget) -> Result<bool> {
    let (specs, pd) = d.spec_diagram(budget)?;
    let lim = poset_limit(&pd, budget)?;
    let sc = spec(colim, budget)?;
    let maps = inj.iter().zip(&specs).map(|(i, s)| spec_map(i, &sc, s)).collect::<Result<Vec<_>>>()?;
    let index: HashMap<Vec<usize>, usize> = (0..lim.apex.size()).map(|x| (lim.legs.iter().map(|l| l[x]).collect(), x)).collect();
    let table: Option<Vec<usize>> =
        (0..sc.size()).map(|x| index.get(&maps.iter().map(|m| m.table[x]).collect::<Vec<_>>()).copied()).collect();
    let Some(table) = table else { return Ok(false) };
    if sc.size() != lim.apex.size() {
        return Ok(false);
    }
    let mut seen = table.clone();
    seen.sort_unstable();
    seen.dedup();
    let n = sc.size();
    Ok(seen.len() == n && (0..n).all(|x| (0..n).all(|y| sc.poset.leq(x, y) == lim.apex.leq(table[x], table[y]))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{free_algebra, BaseLattice, Term};

    #[test]
    fn coproduct_cocone() {
        let b = Budget::default();
        let base = BaseLattice::two();
        let fi = present(&Presentation::free(base.clone(), &["i"]), b).unwrap();
        let fj = present(&Presentation::free(base.clone(), &["j"]), b).unwrap();
        let fij = present(&Presentation::free(base.clone(), &["i", "j"]), b).unwrap();
        let g = fij.provenance().unwrap().gen_elems.clone();
        let li = AlgebraHom::from_generator_images(&fi, &fij, &[g[0]]).unwrap();
        let lj = AlgebraHom::from_generator_images(&fj, &fij, &[g[1]]).unwrap();
        let d = AlgebraDiagram::new(vec![fi, fj], vec![]).unwrap();
        let r = verify_colimit(&d, &fij, &[li.clone(), lj.clone()], b).unwrap();
        assert!(r.pass, "{r:?}");
        // Swapping the legs still gives a colimit; sending both to one generator does not.
        assert!(verify_colimit(&d, &fij, &[lj.clone(), li.clone()], b).unwrap().pass);
        let li2 = AlgebraHom::from_generator_images(&d.objects[1], &fij, &[g[0]]).unwrap();
        assert!(!verify_colimit(&d, &fij, &[li, li2], b).unwrap().pass);
    }

    #[test]
    fn coequaliser_collapses_generator() {
        let b = Budget::default();
        let base = BaseLattice::two();
        let f1 = free_algebra(&base, 1, b).unwrap();
        let g = f1.provenance().unwrap().gen_elems[0];
        let id = AlgebraHom::identity(&f1);
        // The endomorphism sending the generator to top.
        let to_top = AlgebraHom::from_generator_images(&f1, &f1, &[f1.lat().top()]).unwrap();
        let d = AlgebraDiagram::new(
            vec![f1.clone(), f1.clone()],
            vec![AlgebraArrow { source: 0, target: 1, hom: id }, AlgebraArrow { source: 0, target: 1, hom: to_top }],
        )
        .unwrap();
        let two = crate::algebra::DAlgebra::initial(&base);
        let q = AlgebraHom::from_generator_images(&f1, &two, &[1]).unwrap();
        let r = verify_colimit(&d, &two, &[q.clone(), q], b).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.colimit_size, 2);
        let _ = g;
    }

    #[test]
    fn pullback_of_order_quotients() {
        let b = Budget::default();
        for base in BaseLattice::library() {
            let free = Presentation::free(base.clone(), &["i", "j"]);
            let ge = present(&free.clone().with_le(Term::Gen(1), Term::Gen(0)), b).unwrap();
            let le = present(&free.clone().with_le(Term::Gen(0), Term::Gen(1)), b).unwrap();
            let diag = present(&Presentation::free(base.clone(), &["k"]), b).unwrap();
            let fij = present(&free, b).unwrap();
            let k = diag.provenance().unwrap().gen_elems[0];
            let to_diag = |a: &DAlgebra| AlgebraHom::from_generator_images(a, &diag, &[k, k]).unwrap();
            let proj = |a: &DAlgebra| {
                let g = a.provenance().unwrap().gen_elems.clone();
                AlgebraHom::from_generator_images(&fij, a, &g).unwrap()
            };
            let d = AlgebraDiagram::new(
                vec![ge.clone(), le.clone(), diag.clone()],
                vec![
                    AlgebraArrow { source: 0, target: 2, hom: to_diag(&ge) },
                    AlgebraArrow { source: 1, target: 2, hom: to_diag(&le) },
                ],
            )
            .unwrap();
            let legs = [proj(&ge), proj(&le), proj(&ge).then(&to_diag(&ge))];
            let r = verify_limit(&d, &fij, &legs, b).unwrap();
            assert!(r.pass, "{} {r:?}", base.name);
        }
    }
}
