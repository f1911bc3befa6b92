//! Algebras over a base lattice `D`: a distributive lattice `A` together with
//! a lattice homomorphism `eta: D -> A`.

mod limits;
pub mod oracle;
mod presentation;
mod spec;
pub mod term;

use std::borrow::Cow;

use crate::budget::{Budget, Meter};
use crate::error::{LatspecError, Result};
use crate::lattice::{is_lattice_hom, DLattice};

pub use limits::{
    algebra_colimit, algebra_limit, verify_colimit, verify_limit, AlgebraArrow, AlgebraDiagram, ColimitReport, LimitReport,
};
pub use presentation::{free_algebra, present, present_via_free, Presentation};
pub use spec::{
    counit_diagnostics, observation_triangle, opens, orders, spec, spec_map, spec_triangle, stage_exponential, unit_map,
    CounitDiagnostics, Orders, SpecPoset,
};
pub use term::Term;

pub(crate) use presentation::relation_buckets;

/// The base lattice `D` with a display name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseLattice {
    pub name: String,
    pub lattice: DLattice,
}

/// Names of the built-in base lattices, in library order.
pub const BUILTIN_BASES: [&str; 4] = ["2", "3-chain", "2x2", "4-chain"];

impl BaseLattice {
    pub fn new(name: impl Into<String>, lattice: DLattice) -> Self {
        BaseLattice { name: name.into(), lattice }
    }

    /// One of `2`, `3-chain`, `2x2`, `4-chain`.
    pub fn builtin(name: &str) -> Option<Self> {
        let lattice = match name {
            "2" => DLattice::two(),
            "3-chain" => DLattice::chain(3),
            "2x2" => DLattice::boolean(2),
            "4-chain" => DLattice::chain(4),
            _ => return None,
        };
        Some(BaseLattice::new(name, lattice))
    }

    pub fn two() -> Self {
        Self::builtin("2").expect("builtin")
    }

    /// The four built-in bases: a Boolean algebra, two chains, and a square.
    pub fn library() -> Vec<Self> {
        BUILTIN_BASES.iter().map(|n| Self::builtin(n).expect("builtin")).collect()
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }
}

/// One instruction of a straight-line program computing every element of an
/// algebra from the bounds, constants and generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Bot,
    Top,
    Const(usize),
    Gen(usize),
    Meet(usize, usize),
    Join(usize, usize),
}

/// How an algebra is presented: the presentation, the elements realising the
/// generators, and a program expressing every element through them.
#[derive(Clone, Debug)]
pub struct Provenance {
    pub presentation: Presentation,
    pub gen_elems: Vec<usize>,
    /// `steps[e]` derives element `e` from elements earlier in `order`.
    pub steps: Vec<Step>,
    pub order: Vec<usize>,
}

impl Provenance {
    pub(crate) fn new(presentation: Presentation, gen_elems: Vec<usize>, (steps, order): (Vec<Step>, Vec<usize>)) -> Self {
        Provenance { presentation, gen_elems, steps, order }
    }

    /// Runs the program in `cod` with the given constant and generator images.
    pub fn run(&self, cod: &DLattice, consts: &[usize], gens: &[usize]) -> Vec<usize> {
        let mut img = vec![usize::MAX; self.steps.len()];
        for &e in &self.order {
            img[e] = match self.steps[e] {
                Step::Bot => cod.bot(),
                Step::Top => cod.top(),
                Step::Const(d) => consts[d],
                Step::Gen(i) => gens[i],
                Step::Meet(a, b) => cod.meet(img[a], img[b]),
                Step::Join(a, b) => cod.join(img[a], img[b]),
            };
        }
        img
    }
}

/// Breadth-first closure of bounds, constants and generators under meet and
/// join, recording how each element is first reached. Fails when the
/// generators do not generate.
pub(crate) fn derive_program(lat: &DLattice, eta: &[usize], gens: &[usize]) -> Result<(Vec<Step>, Vec<usize>)> {
    let n = lat.size();
    let mut steps: Vec<Option<Step>> = vec![None; n];
    let mut order = Vec::with_capacity(n);
    let seed = |e: usize, s: Step, steps: &mut Vec<Option<Step>>, order: &mut Vec<usize>| {
        if steps[e].is_none() {
            steps[e] = Some(s);
            order.push(e);
        }
    };
    seed(lat.bot(), Step::Bot, &mut steps, &mut order);
    seed(lat.top(), Step::Top, &mut steps, &mut order);
    for (d, &e) in eta.iter().enumerate() {
        seed(e, Step::Const(d), &mut steps, &mut order);
    }
    for (i, &e) in gens.iter().enumerate() {
        seed(e, Step::Gen(i), &mut steps, &mut order);
    }
    let mut i = 0;
    while i < order.len() && order.len() < n {
        for j in 0..=i {
            let (a, b) = (order[i], order[j]);
            seed(lat.meet(a, b), Step::Meet(a, b), &mut steps, &mut order);
            seed(lat.join(a, b), Step::Join(a, b), &mut steps, &mut order);
        }
        i += 1;
    }
    if order.len() < n {
        return Err(LatspecError::invalid(format!("generators and constants reach only {} of {} elements", order.len(), n)));
    }
    Ok((steps.into_iter().map(|s| s.expect("all reached")).collect(), order))
}

/// A distributive lattice with a structure map from the base lattice.
#[derive(Clone, Debug)]
pub struct DAlgebra {
    base: BaseLattice,
    lat: DLattice,
    eta: Vec<usize>,
    provenance: Option<Provenance>,
}

impl PartialEq for DAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.base.lattice == other.base.lattice && self.lat == other.lat && self.eta == other.eta
    }
}

impl DAlgebra {
    /// Validates the lattice and that `eta` is a lattice homomorphism.
    pub fn new(base: BaseLattice, lat: DLattice, eta: Vec<usize>) -> Result<Self> {
        lat.validate().map_err(|v| LatspecError::invalid(v.to_string()))?;
        if !is_lattice_hom(&base.lattice, &lat, &eta) {
            return Err(LatspecError::invalid("structure map is not a lattice homomorphism"));
        }
        Ok(DAlgebra { base, lat, eta, provenance: None })
    }

    pub(crate) fn from_parts(base: BaseLattice, lat: DLattice, eta: Vec<usize>, provenance: Option<Provenance>) -> Self {
        DAlgebra { base, lat, eta, provenance }
    }

    /// The base lattice as an algebra over itself; the initial algebra.
    /// Its elements are numbered as in the base lattice.
    pub fn initial(base: &BaseLattice) -> Self {
        let eta: Vec<usize> = (0..base.size()).collect();
        let program = derive_program(&base.lattice, &eta, &[]).expect("constants reach every element");
        let prov = Provenance::new(Presentation::free(base.clone(), &[]), Vec::new(), program);
        DAlgebra { base: base.clone(), lat: base.lattice.clone(), eta, provenance: Some(prov) }
    }

    /// The one-element algebra.
    pub fn trivial(base: &BaseLattice) -> Self {
        let pres = Presentation::free(base.clone(), &[]).with_rel(Term::Bot, Term::Top);
        present(&pres, Budget::default()).expect("the trivial algebra is small")
    }

    pub fn base(&self) -> &BaseLattice {
        &self.base
    }

    pub fn lat(&self) -> &DLattice {
        &self.lat
    }

    pub fn size(&self) -> usize {
        self.lat.size()
    }

    pub fn eta(&self, d: usize) -> usize {
        self.eta[d]
    }

    pub fn eta_table(&self) -> &[usize] {
        &self.eta
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn without_provenance(mut self) -> Self {
        self.provenance = None;
        self
    }

    /// Checks the lattice laws, the structure map, and the presentation.
    pub fn validate(&self) -> Result<()> {
        self.lat.validate().map_err(|v| LatspecError::invalid(v.to_string()))?;
        if !is_lattice_hom(&self.base.lattice, &self.lat, &self.eta) {
            return Err(LatspecError::invalid("structure map is not a lattice homomorphism"));
        }
        if let Some(p) = &self.provenance {
            for (l, r) in &p.presentation.rels {
                if l.eval(&self.lat, &self.eta, &p.gen_elems) != r.eval(&self.lat, &self.eta, &p.gen_elems) {
                    return Err(LatspecError::invalid(format!(
                        "relation {} = {} fails",
                        l.render(&p.presentation.gens),
                        r.render(&p.presentation.gens)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Attaches a presentation realised by `gen_elems`, checking that the
    /// relations hold, the generators generate, and the presented algebra
    /// has no more elements than this one.
    pub fn with_presentation(mut self, pres: Presentation, gen_elems: Vec<usize>, budget: Budget) -> Result<Self> {
        if pres.base.lattice != self.base.lattice || pres.gens.len() != gen_elems.len() {
            return Err(LatspecError::invalid("presentation does not match the algebra"));
        }
        let program = derive_program(&self.lat, &self.eta, &gen_elems)?;
        self.provenance = Some(Provenance::new(pres.clone(), gen_elems, program));
        self.validate()?;
        let presented = present(&pres, budget)?;
        if presented.size() != self.size() {
            return Err(LatspecError::invalid(format!(
                "presentation presents {} elements, algebra has {}",
                presented.size(),
                self.size()
            )));
        }
        Ok(self)
    }

    /// The attached provenance, or one computed from the join-irreducibles
    /// when the algebra was built without a presentation.
    pub fn presented(&self) -> Result<Cow<'_, Provenance>> {
        match &self.provenance {
            Some(p) => Ok(Cow::Borrowed(p)),
            None => auto_present(self).map(Cow::Owned),
        }
    }

    /// This algebra with a presentation attached.
    pub fn into_presented(self) -> Result<Self> {
        if self.provenance.is_some() {
            return Ok(self);
        }
        let p = auto_present(&self)?;
        Ok(DAlgebra { provenance: Some(p), ..self })
    }

    /// A term over the presentation's generators denoting element `e`.
    pub fn element_term(&self, e: usize) -> Result<Term> {
        let p = self.presented()?;
        fn build(p: &Provenance, e: usize) -> Term {
            match p.steps[e] {
                Step::Bot => Term::Bot,
                Step::Top => Term::Top,
                Step::Const(d) => Term::Const(d),
                Step::Gen(i) => Term::Gen(i),
                Step::Meet(a, b) => Term::meet(build(p, a), build(p, b)),
                Step::Join(a, b) => Term::join(build(p, a), build(p, b)),
            }
        }
        Ok(build(&p, e))
    }

    /// Evaluates a term over the presentation's generators.
    pub fn eval(&self, t: &Term) -> Result<usize> {
        let p = self.presented()?;
        Ok(t.eval(&self.lat, &self.eta, &p.gen_elems))
    }

    /// Some isomorphism of algebras `self -> other`.
    pub fn isomorphism_to(&self, other: &DAlgebra) -> Option<Vec<usize>> {
        if self.base.lattice != other.base.lattice {
            return None;
        }
        let mut found = None;
        self.lat.order().for_each_isomorphism(&other.lat.order(), |m| {
            if self.eta.iter().zip(&other.eta).all(|(&a, &b)| m[a] == b) {
                found = Some(m.to_vec());
                false
            } else {
                true
            }
        });
        found
    }

    pub fn is_isomorphic(&self, other: &DAlgebra) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// Elements with a complement, paired with it.
    pub fn complemented_elements(&self) -> Vec<(usize, usize)> {
        let l = &self.lat;
        (0..l.size())
            .filter_map(|a| (0..l.size()).find(|&b| l.meet(a, b) == l.bot() && l.join(a, b) == l.top()).map(|b| (a, b)))
            .collect()
    }
}

/// Presentation read off the join-irreducibles: the irreducibles generate,
/// each pairwise meet, the top, and each constant is set equal to the join
/// of the irreducibles below it.
pub fn auto_present(a: &DAlgebra) -> Result<Provenance> {
    let l = a.lat();
    let ji = l.join_irreducibles();
    let js = &ji.elements;
    let names: Vec<String> = js.iter().map(|j| format!("j{j}")).collect();
    let below = |x: usize| Term::join_all((0..js.len()).filter(|&k| l.leq(js[k], x)).map(Term::Gen));
    let mut rels = Vec::new();
    for p in 0..js.len() {
        for q in p + 1..js.len() {
            rels.push((Term::meet(Term::Gen(p), Term::Gen(q)), below(l.meet(js[p], js[q]))));
        }
    }
    rels.push((Term::Top, below(l.top())));
    for d in 0..a.base.size() {
        rels.push((Term::Const(d), below(a.eta(d))));
    }
    let pres = Presentation::new(a.base.clone(), names, rels)?;
    let program = derive_program(l, a.eta_table(), js)?;
    Ok(Provenance::new(pres, js.clone(), program))
}

/// A homomorphism of algebras given by its table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraHom {
    pub table: Vec<usize>,
}

impl AlgebraHom {
    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    pub fn identity(a: &DAlgebra) -> Self {
        AlgebraHom { table: (0..a.size()).collect() }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgebraHom) -> AlgebraHom {
        AlgebraHom { table: self.table.iter().map(|&x| other.table[x]).collect() }
    }

    /// Lattice homomorphism commuting with the structure maps.
    pub fn is_hom(&self, dom: &DAlgebra, cod: &DAlgebra) -> bool {
        is_lattice_hom(dom.lat(), cod.lat(), &self.table) && dom.eta.iter().zip(&cod.eta).all(|(&a, &b)| self.table[a] == b)
    }

    pub fn is_injective(&self) -> bool {
        let mut t = self.table.clone();
        t.sort_unstable();
        t.dedup();
        t.len() == self.table.len()
    }

    pub fn is_bijective(&self, cod: &DAlgebra) -> bool {
        self.is_injective() && self.table.len() == cod.size()
    }

    /// The homomorphism out of a presented algebra sending generator `i` to
    /// `images[i]`. Fails when the images violate a relation.
    pub fn from_generator_images(dom: &DAlgebra, cod: &DAlgebra, images: &[usize]) -> Result<AlgebraHom> {
        if dom.base.lattice != cod.base.lattice {
            return Err(LatspecError::invalid("algebras over different bases"));
        }
        let p = dom.presented()?;
        if images.len() != p.gen_elems.len() || images.iter().any(|&x| x >= cod.size()) {
            return Err(LatspecError::invalid("generator images do not fit"));
        }
        for (l, r) in &p.presentation.rels {
            if l.eval(cod.lat(), cod.eta_table(), images) != r.eval(cod.lat(), cod.eta_table(), images) {
                return Err(LatspecError::invalid(format!(
                    "images violate relation {} = {}",
                    l.render(&p.presentation.gens),
                    r.render(&p.presentation.gens)
                )));
            }
        }
        let h = AlgebraHom { table: p.run(cod.lat(), cod.eta_table(), images) };
        if !h.is_hom(dom, cod) {
            return Err(LatspecError::internal("presentation does not present its algebra"));
        }
        Ok(h)
    }
}

/// Every homomorphism `a -> b`, in lexicographic order of generator images.
pub fn algebra_homs(a: &DAlgebra, b: &DAlgebra, budget: Budget) -> Result<Vec<AlgebraHom>> {
    if a.base.lattice != b.base.lattice {
        return Err(LatspecError::invalid("algebras over different bases"));
    }
    let p = a.presented()?;
    let n = p.gen_elems.len();
    let buckets = relation_buckets(&p.presentation.rels, n);
    let mut meter = Meter::new(budget, "enumerating algebra homomorphisms");
    let mut out = Vec::new();
    let mut imgs = vec![0usize; n];
    let holds = |k: usize, imgs: &[usize]| {
        buckets[k].iter().all(|(l, r)| l.eval(b.lat(), b.eta_table(), imgs) == r.eval(b.lat(), b.eta_table(), imgs))
    };
    if !holds(0, &imgs) {
        return Ok(out);
    }
    fn rec(
        i: usize,
        a: &DAlgebra,
        b: &DAlgebra,
        p: &Provenance,
        imgs: &mut Vec<usize>,
        holds: &dyn Fn(usize, &[usize]) -> bool,
        out: &mut Vec<AlgebraHom>,
        meter: &mut Meter,
    ) -> Result<()> {
        if i == imgs.len() {
            let h = AlgebraHom { table: p.run(b.lat(), b.eta_table(), imgs) };
            if !h.is_hom(a, b) {
                return Err(LatspecError::internal("presentation does not present its algebra"));
            }
            out.push(h);
            return Ok(());
        }
        for v in 0..b.size() {
            meter.tick()?;
            imgs[i] = v;
            if holds(i + 1, imgs) {
                rec(i + 1, a, b, p, imgs, holds, out, meter)?;
            }
        }
        Ok(())
    }
    rec(0, a, b, &p, &mut imgs, &holds, &mut out, &mut meter)?;
    Ok(out)
}

/// Result of [`coproduct`]: the algebra and both injections.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub algebra: DAlgebra,
    pub left: AlgebraHom,
    pub right: AlgebraHom,
}

/// Coproduct by merging presentations; clashing generator names on the right
/// are primed.
pub fn coproduct(a: &DAlgebra, b: &DAlgebra, budget: Budget) -> Result<Coproduct> {
    if a.base.lattice != b.base.lattice {
        return Err(LatspecError::invalid("algebras over different bases"));
    }
    let pa = a.presented()?;
    let pb = b.presented()?;
    let mut gens = pa.presentation.gens.clone();
    for g in &pb.presentation.gens {
        let mut name = g.clone();
        while gens.contains(&name) {
            name.push('\'');
        }
        gens.push(name);
    }
    let off = pa.gen_elems.len();
    let mut rels = pa.presentation.rels.clone();
    rels.extend(pb.presentation.rels.iter().map(|(l, r)| (l.map_gens(&|i| i + off), r.map_gens(&|i| i + off))));
    let pres = Presentation::new(a.base.clone(), gens, rels)?;
    let algebra = present(&pres, budget)?;
    let gp = &algebra.presented()?.gen_elems.clone();
    let left = AlgebraHom::from_generator_images(a, &algebra, &gp[..off])?;
    let right = AlgebraHom::from_generator_images(b, &algebra, &gp[off..])?;
    Ok(Coproduct { algebra, left, right })
}

/// `A[names]`: adjoins free generators, returning the extension and the
/// inclusion of `a`.
pub fn free_extension(a: &DAlgebra, names: &[&str], budget: Budget) -> Result<(DAlgebra, AlgebraHom)> {
    let free = present(&Presentation::free(a.base.clone(), names), budget)?;
    let c = coproduct(a, &free, budget)?;
    Ok((c.algebra, c.left))
}

/// Quotient of a presented algebra by extra relations over its generators,
/// with the projection.
pub fn add_relations(a: &DAlgebra, rels: &[(Term, Term)], budget: Budget) -> Result<(DAlgebra, AlgebraHom)> {
    let p = a.presented()?;
    let mut pres = p.presentation.clone();
    pres.rels.extend(rels.iter().cloned());
    let pres = Presentation::new(pres.base, pres.gens, pres.rels)?;
    let q = present(&pres, budget)?;
    let gens = q.presented()?.gen_elems.clone();
    let proj = AlgebraHom::from_generator_images(a, &q, &gens)?;
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> BaseLattice {
        BaseLattice::two()
    }

    fn boolean_classifier() -> Presentation {
        Presentation::free(two(), &["i", "j"])
            .with_rel(Term::meet(Term::Gen(0), Term::Gen(1)), Term::Bot)
            .with_rel(Term::join(Term::Gen(0), Term::Gen(1)), Term::Top)
    }

    #[test]
    fn free_algebra_sizes() {
        let b = Budget::default();
        assert_eq!(free_algebra(&two(), 1, b).unwrap().size(), 3);
        assert_eq!(free_algebra(&two(), 2, b).unwrap().size(), 6);
        assert_eq!(free_algebra(&BaseLattice::builtin("3-chain").unwrap(), 1, b).unwrap().size(), 6);
        assert_eq!(free_algebra(&two(), 0, b).unwrap().size(), 2);
    }

    #[test]
    fn present_examples() {
        let b = Budget::default();
        let p = Presentation::free(two(), &["i"]).with_rel(Term::Gen(0), Term::Top);
        assert_eq!(present(&p, b).unwrap().size(), 2);
        let bool4 = present(&boolean_classifier(), b).unwrap();
        assert_eq!(bool4.size(), 4);
        assert!(bool4.lat().is_isomorphic(&DLattice::boolean(2)));
        let free = present(&Presentation::free(two(), &["i", "j"]), b).unwrap();
        assert!(free.is_isomorphic(&free_algebra(&two(), 2, b).unwrap()));
    }

    #[test]
    fn presentation_routes_agree() {
        let b = Budget::default();
        for base in BaseLattice::library() {
            let top = base.lattice.top();
            let pres = [
                Presentation::free(base.clone(), &["i", "j"]).with_le(Term::Gen(0), Term::Gen(1)),
                Presentation::free(base.clone(), &["i"]).with_rel(Term::Gen(0), Term::Const(top)),
                Presentation::free(base.clone(), &["i", "j"])
                    .with_rel(Term::meet(Term::Gen(0), Term::Gen(1)), Term::Bot)
                    .with_rel(Term::join(Term::Gen(0), Term::Gen(1)), Term::Top),
                Presentation::free(base.clone(), &["i"]).with_rel(Term::Bot, Term::Top),
            ];
            for p in &pres {
                let x = present(p, b).unwrap();
                let y = present_via_free(p, b).unwrap();
                x.validate().unwrap();
                assert!(x.is_isomorphic(&y), "{}", p.to_text());
            }
        }
    }

    #[test]
    fn hom_examples() {
        let b = Budget::default();
        for base in BaseLattice::library() {
            let d = DAlgebra::initial(&base);
            let free1 = free_algebra(&base, 1, b).unwrap();
            assert_eq!(algebra_homs(&free1, &d, b).unwrap().len(), base.size());
            assert!(algebra_homs(&DAlgebra::trivial(&base), &d, b).unwrap().is_empty());
        }
        let bool4 = present(&boolean_classifier(), b).unwrap();
        let homs = algebra_homs(&bool4, &DAlgebra::initial(&two()), b).unwrap();
        let gens = &bool4.provenance().unwrap().gen_elems;
        let imgs: Vec<(usize, usize)> = homs.iter().map(|h| (h.apply(gens[0]), h.apply(gens[1]))).collect();
        assert_eq!(imgs, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn coproduct_examples() {
        let b = Budget::default();
        let base = two();
        let fi = present(&Presentation::free(base.clone(), &["i"]), b).unwrap();
        let fj = present(&Presentation::free(base.clone(), &["j"]), b).unwrap();
        let c = coproduct(&fi, &fj, b).unwrap();
        assert!(c.algebra.is_isomorphic(&free_algebra(&base, 2, b).unwrap()));
        assert!(c.left.is_hom(&fi, &c.algebra) && c.right.is_hom(&fj, &c.algebra));
        let d = DAlgebra::initial(&base);
        assert!(coproduct(&fi, &d, b).unwrap().algebra.is_isomorphic(&fi));
        let qi = present(&Presentation::free(base.clone(), &["i"]).with_rel(Term::Gen(0), Term::Top), b).unwrap();
        let qj = present(&Presentation::free(base.clone(), &["j"]).with_rel(Term::Gen(0), Term::Bot), b).unwrap();
        assert!(coproduct(&qi, &qj, b).unwrap().algebra.is_isomorphic(&d));
        // Clashing names are primed.
        let cc = coproduct(&fi, &fi, b).unwrap();
        assert_eq!(cc.algebra.provenance().unwrap().presentation.gens, vec!["i", "i'"]);
    }

    #[test]
    fn auto_presentation_presents() {
        let b = Budget::default();
        for base in BaseLattice::library() {
            let free = free_algebra(&base, 2, b).unwrap().without_provenance();
            let p = auto_present(&free).unwrap();
            assert!(present(&p.presentation, b).unwrap().is_isomorphic(&free));
            let homs_auto = algebra_homs(&free, &DAlgebra::initial(&base), b).unwrap();
            assert_eq!(homs_auto.len(), base.size() * base.size());
        }
        let t = DAlgebra::trivial(&two()).without_provenance();
        assert!(present(&auto_present(&t).unwrap().presentation, b).unwrap().lat().is_trivial());
    }

    #[test]
    fn presentation_text_round_trip() {
        let p = boolean_classifier();
        let text = p.to_text();
        let q = Presentation::parse(&text, &mut |n| BaseLattice::builtin(n).ok_or_else(|| LatspecError::invalid(n))).unwrap();
        assert_eq!(p, q);
        let bad = "base 2\ngens i\nrel (meet i k) = i\n";
        let err = Presentation::parse(bad, &mut |n| BaseLattice::builtin(n).ok_or_else(|| LatspecError::invalid(n))).unwrap_err();
        assert!(matches!(err, LatspecError::Parse { line: 3, .. }));
        let le = "base 2\ngens i j\nrel i <= j\n";
        let q = Presentation::parse(le, &mut |n| BaseLattice::builtin(n).ok_or_else(|| LatspecError::invalid(n))).unwrap();
        assert_eq!(present(&q, Budget::default()).unwrap().size(), 4);
    }

    #[test]
    fn complemented_examples() {
        let b = Budget::default();
        let d2 = DAlgebra::initial(&two());
        assert_eq!(d2.complemented_elements().len(), 2);
        let c3 = DAlgebra::initial(&BaseLattice::builtin("3-chain").unwrap());
        assert_eq!(c3.complemented_elements().iter().map(|p| p.0).collect::<Vec<_>>(), vec![0, 2]);
        let sq = DAlgebra::initial(&BaseLattice::builtin("2x2").unwrap());
        assert_eq!(sq.complemented_elements().len(), 4);
        let _ = b;
    }
}
