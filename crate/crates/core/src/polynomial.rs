//! Polynomial normal forms over an algebra and chain quotients of free
//! extensions.
//!
//! A polynomial over `A` in variables `x1..xn` is a term over the generators
//! of `A` followed by the variables: generator index `k` for `k < m` refers
//! to the `k`-th generator of `A`, and index `m + i` to `x(i+1)`.

use std::collections::HashMap;

use crate::algebra::{free_extension, present, AlgebraHom, DAlgebra, Presentation, Term};
use crate::budget::Budget;
use crate::error::{LatspecError, Result};
use crate::lattice::DLattice;

/// The free extension `A[x1..xn]` with the inclusion of `A`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub algebra: DAlgebra,
    pub inclusion: AlgebraHom,
    /// Elements of the extension realising the variables.
    pub vars: Vec<usize>,
    /// Number of generators of `A`.
    pub base_gens: usize,
}

impl Extension {
    pub fn new(a: &DAlgebra, n: usize, budget: Budget) -> Result<Self> {
        let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let (algebra, inclusion) = free_extension(a, &refs, budget)?;
        let gens = algebra.presented()?.gen_elems.clone();
        let base_gens = gens.len() - n;
        Ok(Extension { vars: gens[base_gens..].to_vec(), algebra, inclusion, base_gens })
    }

    /// Evaluates a polynomial in the extension.
    pub fn eval(&self, t: &Term) -> Result<usize> {
        self.algebra.eval(t)
    }
}

/// `a0 ∨ x ∧ a1` with `a0 <= a1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyNF1 {
    pub a0: usize,
    pub a1: usize,
}

fn substitute_var(t: &Term, m: usize, values: &[Term]) -> Term {
    t.substitute(&|i| if i >= m { values[i - m].clone() } else { Term::Gen(i) })
}

/// Normal form of a one-variable polynomial: `a0 = t[x := bot]`,
/// `a1 = t[x := top]`, with `t = a0 ∨ x ∧ a1` checked in `A[x]`.
pub fn poly_nf1(a: &DAlgebra, ext: &Extension, t: &Term) -> Result<PolyNF1> {
    let m = ext.base_gens;
    let a0 = a.eval(&substitute_var(t, m, &[Term::Bot]))?;
    let a1 = a.eval(&substitute_var(t, m, &[Term::Top]))?;
    if !a.lat().leq(a0, a1) {
        return Err(LatspecError::internal("evaluation at bottom exceeds evaluation at top"));
    }
    let l = ext.algebra.lat();
    let expected = l.join(ext.inclusion.apply(a0), l.meet(ext.vars[0], ext.inclusion.apply(a1)));
    if ext.eval(t)? != expected {
        return Err(LatspecError::internal("polynomial differs from its normal form"));
    }
    Ok(PolyNF1 { a0, a1 })
}

/// Values of a polynomial at the vertices of the Boolean cube; bit `i` of
/// the index sets `x(i+1)` to top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyNFn {
    pub table: Vec<usize>,
}

/// Normal form of an `n`-variable polynomial, checked in `A[x1..xn]`
/// against `⋁_v table(v) ∧ ⋀_{i in v} x_i`.
pub fn poly_nfn(a: &DAlgebra, ext: &Extension, n: usize, t: &Term) -> Result<PolyNFn> {
    let m = ext.base_gens;
    if ext.vars.len() != n {
        return Err(LatspecError::invalid("extension has the wrong number of variables"));
    }
    let mut table = Vec::with_capacity(1 << n);
    for v in 0..1usize << n {
        let values: Vec<Term> = (0..n).map(|i| if v >> i & 1 == 1 { Term::Top } else { Term::Bot }).collect();
        table.push(a.eval(&substitute_var(t, m, &values))?);
    }
    let al = a.lat();
    for v in 0..table.len() {
        for w in 0..table.len() {
            if v & !w == 0 && !al.leq(table[v], table[w]) {
                return Err(LatspecError::internal("polynomial table is not monotone"));
            }
        }
    }
    let l = ext.algebra.lat();
    let expected = l.join_all((0..table.len()).map(|v| {
        let mono = l.meet_all((0..n).filter(|&i| v >> i & 1 == 1).map(|i| ext.vars[i]));
        l.meet(ext.inclusion.apply(table[v]), mono)
    }));
    if ext.eval(t)? != expected {
        return Err(LatspecError::internal("polynomial differs from its normal form"));
    }
    Ok(PolyNFn { table })
}

/// Whether `f: D -> A` satisfies `f(i) = f(bot) ∨ eta(i) ∧ f(top)`.
pub fn phoa_check(a: &DAlgebra, f: &[usize]) -> bool {
    let d = &a.base().lattice;
    let l = a.lat();
    f.len() == d.size() && (0..d.size()).all(|i| f[i] == l.join(f[d.bot()], l.meet(a.eta(i), f[d.top()])))
}

/// All functions `D -> A` passing [`phoa_check`], in lexicographic order.
pub fn phoa_functions(a: &DAlgebra, budget: Budget) -> Result<Vec<Vec<usize>>> {
    let d = &a.base().lattice;
    budget.check_power(a.size(), d.size(), "enumerating functions out of the base")?;
    let mut out = Vec::new();
    let total = a.size().pow(d.size() as u32);
    for code in 0..total {
        let mut c = code;
        let mut f = vec![0; d.size()];
        for i in (0..d.size()).rev() {
            f[i] = c % a.size();
            c /= a.size();
        }
        if phoa_check(a, &f) {
            out.push(f);
        }
    }
    Ok(out)
}

/// Outcome of [`nf1_bijection`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nf1Report {
    pub extension_size: usize,
    pub pairs: usize,
    pub bijective: bool,
    pub reconstructs: bool,
    pub pass: bool,
}

/// Checks that `p ↦ (p[x := bot], p[x := top])` is a bijection from `A[x]`
/// onto the pairs `a0 <= a1` of `A`, with `p = a0 ∨ x ∧ a1`.
pub fn nf1_bijection(a: &DAlgebra, budget: Budget) -> Result<Nf1Report> {
    let ext = Extension::new(a, 1, budget)?;
    let gens = ext.algebra.presented()?.gen_elems.clone();
    let inc_gens: Vec<usize> = gens[..ext.base_gens].to_vec();
    let base_gens = a.presented()?.gen_elems.clone();
    // Evaluation homomorphisms A[x] -> A fixing A.
    let ev = |v: usize| {
        let mut imgs = base_gens.clone();
        imgs.push(v);
        AlgebraHom::from_generator_images(&ext.algebra, a, &imgs)
    };
    let ev0 = ev(a.lat().bot())?;
    let ev1 = ev(a.lat().top())?;
    debug_assert_eq!(inc_gens.len(), base_gens.len());
    let l = ext.algebra.lat();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut reconstructs = true;
    for p in 0..ext.algebra.size() {
        let (a0, a1) = (ev0.apply(p), ev1.apply(p));
        seen.insert((a0, a1), p);
        reconstructs &= p == l.join(ext.inclusion.apply(a0), l.meet(ext.vars[0], ext.inclusion.apply(a1)));
    }
    let al = a.lat();
    let pairs: Vec<(usize, usize)> =
        (0..a.size()).flat_map(|x| (0..a.size()).map(move |y| (x, y))).filter(|&(x, y)| al.leq(x, y)).collect();
    let bijective = seen.len() == ext.algebra.size() && seen.len() == pairs.len() && pairs.iter().all(|p| seen.contains_key(p));
    Ok(Nf1Report {
        extension_size: ext.algebra.size(),
        pairs: pairs.len(),
        bijective,
        reconstructs,
        pass: bijective && reconstructs,
    })
}

/// Orientation of tuples and generator chains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Tuples `a0 >= ... >= an` against generators `x1 <= ... <= xn`.
    Descending,
    /// Tuples `a0 <= ... <= an` against generators `x1 >= ... >= xn`.
    Ascending,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Descending => Direction::Ascending,
            Direction::Ascending => Direction::Descending,
        }
    }

    /// Converts a tuple to the opposite direction by reversing it.
    pub fn convert(tuple: &[usize]) -> Vec<usize> {
        tuple.iter().rev().copied().collect()
    }

    pub fn respects(self, l: &DLattice, tuple: &[usize]) -> bool {
        tuple.windows(2).all(|w| match self {
            Direction::Descending => l.leq(w[1], w[0]),
            Direction::Ascending => l.leq(w[0], w[1]),
        })
    }
}

/// The quotient `A[x1..xn]` by the generator chain of the given direction.
pub fn chain_quotient(a: &DAlgebra, n: usize, direction: Direction, budget: Budget) -> Result<(DAlgebra, Vec<usize>)> {
    let p = a.presented()?;
    let m = p.gen_elems.len();
    let mut gens = p.presentation.gens.clone();
    for i in 1..=n {
        let mut name = format!("x{i}");
        while gens.contains(&name) {
            name.push('\'');
        }
        gens.push(name);
    }
    let mut pres = Presentation::new(a.base().clone(), gens, p.presentation.rels.clone())?;
    for i in 0..n.saturating_sub(1) {
        let (lo, hi) = match direction {
            Direction::Descending => (m + i, m + i + 1),
            Direction::Ascending => (m + i + 1, m + i),
        };
        pres = pres.with_le(Term::Gen(lo), Term::Gen(hi));
    }
    let q = present(&pres, budget)?;
    let vars = q.presented()?.gen_elems[m..].to_vec();
    Ok((q, vars))
}

/// Tuples of length `n + 1` in the given direction, in lexicographic order.
pub fn chain_tuples(l: &DLattice, n: usize, direction: Direction) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(l: &DLattice, len: usize, dir: Direction, t: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if t.len() == len {
            out.push(t.clone());
            return;
        }
        for v in 0..l.size() {
            t.push(v);
            if dir.respects(l, t) {
                rec(l, len, dir, t, out);
            }
            t.pop();
        }
    }
    rec(l, n + 1, direction, &mut Vec::with_capacity(n + 1), &mut out);
    out
}

/// `a0 ∧ x1 ∨ a1 ∧ x2 ∨ ... ∨ an` evaluated left to right, for a descending
/// tuple; ascending tuples are reversed together with the variables.
pub fn chain_normal_form(
    q: &DLattice,
    inc: &AlgebraHom,
    vars: &[usize],
    tuple: &[usize],
    direction: Direction,
    right_nested: bool,
) -> usize {
    let (t, xs): (Vec<usize>, Vec<usize>) = match direction {
        Direction::Descending => (tuple.to_vec(), vars.to_vec()),
        Direction::Ascending => (Direction::convert(tuple), vars.iter().rev().copied().collect()),
    };
    let n = xs.len();
    if right_nested {
        let mut acc = inc.apply(t[n]);
        for k in (0..n).rev() {
            acc = q.meet(inc.apply(t[k]), q.join(xs[k], acc));
        }
        acc
    } else {
        let mut acc = inc.apply(t[0]);
        for k in 0..n {
            acc = q.join(q.meet(acc, xs[k]), inc.apply(t[k + 1]));
        }
        acc
    }
}

/// Outcome of [`chain_quotient_iso`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainQuotientReport {
    pub tuples: usize,
    pub quotient_size: usize,
    pub bijective: bool,
    pub preserves_operations: bool,
    pub nestings_agree: bool,
    pub faces_commute: bool,
    pub pass: bool,
}

/// Checks that the chain normal form is an isomorphism from the algebra of
/// `(n+1)`-tuples (pointwise operations, diagonal constants) onto the chain
/// quotient of `A[x1..xn]`, and that dropping the first or last entry of a
/// tuple matches substituting bottom or top for the extreme variable.
pub fn chain_quotient_iso(a: &DAlgebra, n: usize, direction: Direction, budget: Budget) -> Result<ChainQuotientReport> {
    let (q, vars) = chain_quotient(a, n, direction, budget)?;
    let base_gens = a.presented()?.gen_elems.clone();
    let qgens = q.presented()?.gen_elems.clone();
    let inc = AlgebraHom::from_generator_images(a, &q, &qgens[..base_gens.len()])?;
    let al = a.lat();
    let ql = q.lat();
    let tuples = chain_tuples(al, n, direction);
    let image: Vec<usize> = tuples.iter().map(|t| chain_normal_form(ql, &inc, &vars, t, direction, false)).collect();
    let nestings_agree = tuples.iter().zip(&image).all(|(t, &x)| chain_normal_form(ql, &inc, &vars, t, direction, true) == x);
    let mut sorted = image.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let bijective = sorted.len() == tuples.len() && tuples.len() == q.size();
    let index: HashMap<&[usize], usize> = tuples.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let pointwise = |s: &[usize], t: &[usize], meet: bool| -> Vec<usize> {
        s.iter().zip(t).map(|(&x, &y)| if meet { al.meet(x, y) } else { al.join(x, y) }).collect()
    };
    let mut preserves_operations = true;
    for (i, s) in tuples.iter().enumerate() {
        for (j, t) in tuples.iter().enumerate() {
            let m = index.get(pointwise(s, t, true).as_slice()).copied();
            let jn = index.get(pointwise(s, t, false).as_slice()).copied();
            preserves_operations &= m.is_some_and(|m| image[m] == ql.meet(image[i], image[j]))
                && jn.is_some_and(|jn| image[jn] == ql.join(image[i], image[j]));
        }
    }
    for d in 0..a.base().size() {
        let diag = vec![a.eta(d); n + 1];
        preserves_operations &= index.get(diag.as_slice()).is_some_and(|&k| image[k] == q.eta(d));
    }
    let faces_commute = n == 0 || faces_commute(a, &q, &inc, &vars, &tuples, &image, n, direction, budget)?;
    Ok(ChainQuotientReport {
        tuples: tuples.len(),
        quotient_size: q.size(),
        bijective,
        preserves_operations,
        nestings_agree,
        faces_commute,
        pass: bijective && preserves_operations && nestings_agree && faces_commute,
    })
}

#[allow(clippy::too_many_arguments)]
fn faces_commute(
    a: &DAlgebra,
    q: &DAlgebra,
    _inc: &AlgebraHom,
    _vars: &[usize],
    tuples: &[Vec<usize>],
    image: &[usize],
    n: usize,
    direction: Direction,
    budget: Budget,
) -> Result<bool> {
    let (q1, vars1) = chain_quotient(a, n - 1, direction, budget)?;
    let base_gens = a.presented()?.gen_elems.len();
    let q1gens = q1.presented()?.gen_elems.clone();
    let inc1 = AlgebraHom::from_generator_images(a, &q1, &q1gens[..base_gens])?;
    // Position of the variable paired with the first and last tuple entries.
    let (first_var, last_var) = match direction {
        Direction::Descending => (0, n - 1),
        Direction::Ascending => (n - 1, 0),
    };
    let subst = |drop_var: usize, value: usize| -> Result<AlgebraHom> {
        let mut imgs = q1gens[..base_gens].to_vec();
        let mut rest = vars1.iter();
        for k in 0..n {
            imgs.push(if k == drop_var { value } else { *rest.next().expect("n - 1 remaining variables") });
        }
        AlgebraHom::from_generator_images(q, &q1, &imgs)
    };
    let drop_first = subst(first_var, q1.lat().bot())?;
    let drop_last = subst(last_var, q1.lat().top())?;
    Ok(tuples.iter().zip(image).all(|(t, &x)| {
        let head = chain_normal_form(q1.lat(), &inc1, &vars1, &t[1..], direction, false);
        let tail = chain_normal_form(q1.lat(), &inc1, &vars1, &t[..n], direction, false);
        let (first_ok, last_ok) = match direction {
            // Dropping a0 kills the a0 ∧ x1 term; dropping an absorbs an into a(n-1).
            Direction::Descending => (drop_first.apply(x) == head, drop_last.apply(x) == tail),
            Direction::Ascending => (drop_first.apply(x) == tail, drop_last.apply(x) == head),
        };
        first_ok && last_ok
    }))
}
