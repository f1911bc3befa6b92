//! Limit diagrams of small presented algebras whose verification shows the
//! base lattice is orthogonal to the simplicial, 1-coskeletal and Segal
//! inclusions.

use crate::algebra::{
    present, verify_limit, AlgebraArrow, AlgebraDiagram, AlgebraHom, BaseLattice, DAlgebra, LimitReport, Presentation, Term,
};
use crate::budget::Budget;
use crate::error::Result;

struct Presented {
    algebra: DAlgebra,
    gens: Vec<usize>,
}

impl Presented {
    fn new(pres: Presentation, budget: Budget) -> Result<Self> {
        let algebra = present(&pres, budget)?;
        let gens = algebra.presented()?.gen_elems.clone();
        Ok(Presented { algebra, gens })
    }

    fn bot(&self) -> usize {
        self.algebra.lat().bot()
    }

    fn top(&self) -> usize {
        self.algebra.lat().top()
    }

    fn to(&self, other: &Presented, images: &[usize]) -> Result<AlgebraHom> {
        AlgebraHom::from_generator_images(&self.algebra, &other.algebra, images)
    }
}

fn free(base: &BaseLattice, names: &[&str], budget: Budget) -> Result<Presented> {
    Presented::new(Presentation::free(base.clone(), names), budget)
}

/// `D[i, j]` with `i <= j`.
fn ordered_pair(base: &BaseLattice, budget: Budget) -> Result<Presented> {
    Presented::new(Presentation::free(base.clone(), &["i", "j"]).with_le(Term::Gen(0), Term::Gen(1)), budget)
}

/// `D[i, j]` as the pullback of `D[i, j]/(i >= j)` and `D[i, j]/(i <= j)`
/// over `D[k]`, both maps sending `i, j` to `k`.
pub fn simplicial_pullback(base: &BaseLattice, budget: Budget) -> Result<LimitReport> {
    let ge = Presented::new(Presentation::free(base.clone(), &["i", "j"]).with_le(Term::Gen(1), Term::Gen(0)), budget)?;
    let le = ordered_pair(base, budget)?;
    let diag = free(base, &["k"], budget)?;
    let whole = free(base, &["i", "j"], budget)?;
    let k = diag.gens[0];
    let ge_k = ge.to(&diag, &[k, k])?;
    let le_k = le.to(&diag, &[k, k])?;
    let d = AlgebraDiagram::new(
        vec![ge.algebra.clone(), le.algebra.clone(), diag.algebra.clone()],
        vec![AlgebraArrow { source: 0, target: 2, hom: ge_k.clone() }, AlgebraArrow { source: 1, target: 2, hom: le_k }],
    )?;
    let to_ge = whole.to(&ge, &ge.gens)?;
    let to_le = whole.to(&le, &le.gens)?;
    let legs = [to_ge.clone(), to_le, to_ge.then(&ge_k)];
    verify_limit(&d, &whole.algebra, &legs, budget)
}

/// `D[i, j]/(i <= j)` as the limit of `D[i]`, `D[k]`, `D[j]` over three
/// copies of `D`, glued by the endpoint evaluations.
pub fn coskeletal_limit(base: &BaseLattice, budget: Budget) -> Result<LimitReport> {
    let le = ordered_pair(base, budget)?;
    let di = free(base, &["i"], budget)?;
    let dk = free(base, &["k"], budget)?;
    let dj = free(base, &["j"], budget)?;
    let d = free(base, &[], budget)?;
    let (bot, top) = (d.bot(), d.top());
    // Objects: D[i], D[k], D[j], then three copies of D.
    let arrows = vec![
        AlgebraArrow { source: 0, target: 3, hom: di.to(&d, &[top])? },
        AlgebraArrow { source: 0, target: 4, hom: di.to(&d, &[bot])? },
        AlgebraArrow { source: 1, target: 3, hom: dk.to(&d, &[top])? },
        AlgebraArrow { source: 1, target: 5, hom: dk.to(&d, &[bot])? },
        AlgebraArrow { source: 2, target: 4, hom: dj.to(&d, &[top])? },
        AlgebraArrow { source: 2, target: 5, hom: dj.to(&d, &[bot])? },
    ];
    let diagram = AlgebraDiagram::new(
        vec![di.algebra.clone(), dk.algebra.clone(), dj.algebra.clone(), d.algebra.clone(), d.algebra.clone(), d.algebra.clone()],
        arrows.clone(),
    )?;
    let to_i = le.to(&di, &[di.gens[0], di.top()])?;
    let to_k = le.to(&dk, &[dk.gens[0], dk.gens[0]])?;
    let to_j = le.to(&dj, &[dj.bot(), dj.gens[0]])?;
    let legs = [
        to_i.clone(),
        to_k.clone(),
        to_j.clone(),
        to_i.then(&arrows[0].hom),
        to_i.then(&arrows[1].hom),
        to_k.then(&arrows[3].hom),
    ];
    verify_limit(&diagram, &le.algebra, &legs, budget)
}

/// `D[i, j]/(i <= j)` as the pullback of `D[i] -> D <- D[j]` along
/// `i -> bot` and `j -> top`, with legs `j -> top` and `i -> bot`.
pub fn segal_pullback(base: &BaseLattice, budget: Budget) -> Result<LimitReport> {
    let le = ordered_pair(base, budget)?;
    let di = free(base, &["i"], budget)?;
    let dj = free(base, &["j"], budget)?;
    let d = free(base, &[], budget)?;
    let i_bot = di.to(&d, &[d.bot()])?;
    let j_top = dj.to(&d, &[d.top()])?;
    let diagram = AlgebraDiagram::new(
        vec![di.algebra.clone(), dj.algebra.clone(), d.algebra.clone()],
        vec![AlgebraArrow { source: 0, target: 2, hom: i_bot.clone() }, AlgebraArrow { source: 1, target: 2, hom: j_top }],
    )?;
    let to_i = le.to(&di, &[di.gens[0], di.top()])?;
    let to_j = le.to(&dj, &[dj.bot(), dj.gens[0]])?;
    let legs = [to_i.clone(), to_j, to_i.then(&i_bot)];
    verify_limit(&diagram, &le.algebra, &legs, budget)
}
