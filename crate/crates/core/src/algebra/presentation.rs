//! Presentations by generators and relations, and the algebras they present.

use std::collections::HashMap;

use super::{derive_program, BaseLattice, DAlgebra, Provenance};
use crate::bits::Bits;
use crate::budget::{Budget, Meter};
use crate::error::{LatspecError, Result};
use crate::lattice::{congruence_quotient, lattice_homs, DLattice};
use crate::poset::Poset;

use super::term::Term;

/// Generators and relations over a base lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub base: BaseLattice,
    pub gens: Vec<String>,
    pub rels: Vec<(Term, Term)>,
}

impl Presentation {
    /// Checks that every term only mentions known generators and constants.
    pub fn new(base: BaseLattice, gens: Vec<String>, rels: Vec<(Term, Term)>) -> Result<Self> {
        let p = Presentation { base, gens, rels };
        for (l, r) in &p.rels {
            for t in [l, r] {
                if t.max_gen().is_some_and(|g| g >= p.gens.len()) {
                    return Err(LatspecError::invalid(format!("relation term {t} mentions an unknown generator")));
                }
                if t.max_const().is_some_and(|d| d >= p.base.lattice.size()) {
                    return Err(LatspecError::invalid(format!("relation term {t} mentions an unknown constant")));
                }
            }
        }
        Ok(p)
    }

    /// No relations; generators named as given.
    pub fn free(base: BaseLattice, gens: &[&str]) -> Self {
        Presentation { base, gens: gens.iter().map(|s| s.to_string()).collect(), rels: Vec::new() }
    }

    /// Generators `x1..xn` without relations.
    pub fn free_numbered(base: BaseLattice, n: usize) -> Self {
        Presentation { base, gens: (1..=n).map(|i| format!("x{i}")).collect(), rels: Vec::new() }
    }

    pub fn gen(&self, name: &str) -> Option<Term> {
        self.gens.iter().position(|g| g == name).map(Term::Gen)
    }

    pub fn with_rel(mut self, lhs: Term, rhs: Term) -> Self {
        self.rels.push((lhs, rhs));
        self
    }

    /// Adds `lhs <= rhs`, encoded as `lhs ∧ rhs = lhs`.
    pub fn with_le(self, lhs: Term, rhs: Term) -> Self {
        let m = Term::meet(lhs.clone(), rhs);
        self.with_rel(m, lhs)
    }

    /// Text form understood by [`Presentation::parse`]; the base line names
    /// the base lattice.
    pub fn to_text(&self) -> String {
        let mut s = format!("base {}\n", self.base.name);
        if !self.gens.is_empty() {
            s.push_str(&format!("gens {}\n", self.gens.join(" ")));
        }
        for (l, r) in &self.rels {
            s.push_str(&format!("rel {} = {}\n", l.render(&self.gens), r.render(&self.gens)));
        }
        s
    }

    /// Parses `base <name>`, `gens a b c` and `rel <term> = <term>` lines
    /// (`<=` and `>=` are accepted as order relations). `resolve` turns the
    /// base argument into a lattice.
    pub fn parse(text: &str, resolve: &mut dyn FnMut(&str) -> Result<BaseLattice>) -> Result<Presentation> {
        let mut base = None;
        let mut gens: Option<Vec<String>> = None;
        let mut rels = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match head {
                "base" => {
                    if base.is_some() || rest.is_empty() {
                        return Err(LatspecError::parse(line_no, "expected a single `base <lattice>` line"));
                    }
                    let b = resolve(rest).map_err(|e| match e {
                        LatspecError::Parse { line, message } => {
                            LatspecError::parse(line_no, format!("in base lattice `{rest}`, line {line}: {message}"))
                        }
                        other => LatspecError::parse(line_no, other.to_string()),
                    })?;
                    base = Some(b);
                }
                "gens" => {
                    if gens.is_some() || !rels.is_empty() {
                        return Err(LatspecError::parse(line_no, "`gens` must appear once, before any `rel`"));
                    }
                    let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    for (i, n) in names.iter().enumerate() {
                        let reserved = matches!(n.as_str(), "bot" | "top" | "meet" | "join") || n.starts_with("const:");
                        if reserved || n.contains(['(', ')', '=', '<', '>']) {
                            return Err(LatspecError::parse(line_no, format!("invalid generator name `{n}`")));
                        }
                        if names[..i].contains(n) {
                            return Err(LatspecError::parse(line_no, format!("duplicate generator `{n}`")));
                        }
                    }
                    gens = Some(names);
                }
                "rel" => {
                    let names = gens.clone().unwrap_or_default();
                    let (l, r, kind) = if let Some((l, r)) = rest.split_once("<=") {
                        (l, r, "<=")
                    } else if let Some((l, r)) = rest.split_once(">=") {
                        (l, r, ">=")
                    } else if let Some((l, r)) = rest.split_once('=') {
                        (l, r, "=")
                    } else {
                        return Err(LatspecError::parse(line_no, "expected `rel <term> = <term>`"));
                    };
                    let lt = Term::parse(l, &names, line_no)?;
                    let rt = Term::parse(r, &names, line_no)?;
                    let b = base.as_ref().ok_or_else(|| LatspecError::parse(line_no, "`rel` before `base`"))?;
                    for t in [&lt, &rt] {
                        if t.max_const().is_some_and(|d: usize| d >= b.lattice.size()) {
                            return Err(LatspecError::parse(line_no, format!("constant out of range in {t}")));
                        }
                    }
                    rels.push(match kind {
                        "<=" => (Term::meet(lt.clone(), rt), lt),
                        ">=" => (Term::meet(rt.clone(), lt), rt),
                        _ => (lt, rt),
                    });
                }
                other => return Err(LatspecError::parse(line_no, format!("unknown directive `{other}`"))),
            }
        }
        let base = base.ok_or_else(|| LatspecError::parse(1, "missing `base <lattice>` line"))?;
        Ok(Presentation { base, gens: gens.unwrap_or_default(), rels })
    }
}

/// Monotone functions from the Boolean `n`-cube into `D` with pointwise
/// operations. Generator `i` is the `i`-th coordinate projection and `eta(d)`
/// is the constant function.
pub fn free_algebra(base: &BaseLattice, n: usize, budget: Budget) -> Result<DAlgebra> {
    free_on(Presentation::free_numbered(base.clone(), n), budget)
}

/// Free algebra on the generators of `pres`, ignoring its relations.
pub(crate) fn free_on(pres: Presentation, budget: Budget) -> Result<DAlgebra> {
    let d = &pres.base.lattice;
    let n = pres.gens.len();
    if n > 16 {
        return Err(budget.exceeded("building a free algebra"));
    }
    let cube = Poset::boolean_cube(n);
    let tables = metered_monotone_tables(&cube, d, &mut Meter::new(budget, "building a free algebra"))?;
    let size = tables.len();
    if (size as u64).saturating_mul(size as u64) > budget.limit() {
        return Err(budget.exceeded("building free algebra tables"));
    }
    let index: HashMap<&[usize], usize> = tables.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let pointwise = |a: &[usize], b: &[usize], op: &dyn Fn(usize, usize) -> usize| -> usize {
        let t: Vec<usize> = a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect();
        index[t.as_slice()]
    };
    let mut meet = vec![0; size * size];
    let mut join = vec![0; size * size];
    for a in 0..size {
        for b in 0..size {
            meet[a * size + b] = pointwise(&tables[a], &tables[b], &|x, y| d.meet(x, y));
            join[a * size + b] = pointwise(&tables[a], &tables[b], &|x, y| d.join(x, y));
        }
    }
    let lat = DLattice::from_tables_unchecked(size, meet, join);
    let eta: Vec<usize> = (0..d.size()).map(|c| index[vec![c; cube.size()].as_slice()]).collect();
    let gen_elems: Vec<usize> = (0..n)
        .map(|i| {
            let t: Vec<usize> = (0..cube.size()).map(|v| if v >> i & 1 == 1 { d.top() } else { d.bot() }).collect();
            index[t.as_slice()]
        })
        .collect();
    let program = derive_program(&lat, &eta, &gen_elems)?;
    Ok(DAlgebra::from_parts(pres.base.clone(), lat, eta, Some(Provenance::new(pres, gen_elems, program))))
}

fn metered_monotone_tables(p: &Poset, q: &DLattice, meter: &mut Meter) -> Result<Vec<Vec<usize>>> {
    fn rec(i: usize, p: &Poset, q: &DLattice, t: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, meter: &mut Meter) -> Result<()> {
        if i == p.size() {
            out.push(t.clone());
            return Ok(());
        }
        for v in 0..q.size() {
            meter.tick()?;
            if (0..i).all(|k| (!p.leq(k, i) || q.leq(t[k], v)) && (!p.leq(i, k) || q.leq(v, t[k]))) {
                t[i] = v;
                rec(i + 1, p, q, t, out, meter)?;
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    rec(0, p, q, &mut vec![0; p.size()], &mut out, meter)?;
    Ok(out)
}

/// The algebra presented by `pres`.
///
/// Realised inside a power of the two-element lattice: each homomorphism
/// into `2` is a point, each element is the set of points where it holds.
/// Since prime filters separate elements of a finite distributive lattice,
/// the closure of the bounds, constants and generators under meet and join
/// in this power is the presented algebra. Elements are ordered by the
/// number of points, then by the point sets.
pub fn present(pres: &Presentation, budget: Budget) -> Result<DAlgebra> {
    let d = &pres.base.lattice;
    let two = DLattice::two();
    let phis = lattice_homs(d, &two, budget)?;
    let n = pres.gens.len();
    let mut meter = Meter::new(budget, "presenting an algebra");
    let buckets = relation_buckets(&pres.rels, n);
    let mut points: Vec<(usize, Vec<usize>)> = Vec::new();
    for (pi, phi) in phis.iter().enumerate() {
        let mut vals = vec![0usize; n];
        point_search(0, &two, &phi.table, &buckets, &mut vals, &mut |v| points.push((pi, v.to_vec())), &mut meter)?;
    }
    let np = points.len();
    let mut seeds: Vec<Bits> = Vec::new();
    seeds.push(Bits::zeros(np));
    seeds.push(Bits::ones(np));
    for c in 0..d.size() {
        let mut b = Bits::zeros(np);
        for (k, (pi, _)) in points.iter().enumerate() {
            if phis[*pi].table[c] == 1 {
                b.set(k);
            }
        }
        seeds.push(b);
    }
    for g in 0..n {
        let mut b = Bits::zeros(np);
        for (k, (_, v)) in points.iter().enumerate() {
            if v[g] == 1 {
                b.set(k);
            }
        }
        seeds.push(b);
    }
    let mut known: Vec<Bits> = Vec::new();
    let mut index: HashMap<Bits, usize> = HashMap::new();
    for s in &seeds {
        if !index.contains_key(s) {
            index.insert(s.clone(), known.len());
            known.push(s.clone());
        }
    }
    let mut i = 0;
    while i < known.len() {
        for j in 0..=i {
            for c in [known[i].and(&known[j]), known[i].or(&known[j])] {
                if !index.contains_key(&c) {
                    meter.tick()?;
                    index.insert(c.clone(), known.len());
                    known.push(c);
                }
            }
        }
        i += 1;
    }
    let size = known.len();
    if (size as u64).saturating_mul(size as u64) > budget.limit() {
        return Err(budget.exceeded("building presented algebra tables"));
    }
    known.sort_by(|a, b| (a.count(), a).cmp(&(b.count(), b)));
    let index: HashMap<&Bits, usize> = known.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut meet = vec![0; size * size];
    let mut join = vec![0; size * size];
    for a in 0..size {
        for b in a..size {
            let m = index[&known[a].and(&known[b])];
            let j = index[&known[a].or(&known[b])];
            meet[a * size + b] = m;
            meet[b * size + a] = m;
            join[a * size + b] = j;
            join[b * size + a] = j;
        }
    }
    let lat = DLattice::from_tables_unchecked(size, meet, join);
    let eta: Vec<usize> = (0..d.size()).map(|c| index[&seeds[2 + c]]).collect();
    let gen_elems: Vec<usize> = (0..n).map(|g| index[&seeds[2 + d.size() + g]]).collect();
    let program = derive_program(&lat, &eta, &gen_elems)?;
    Ok(DAlgebra::from_parts(pres.base.clone(), lat, eta, Some(Provenance::new(pres.clone(), gen_elems, program))))
}

/// The same algebra as [`present`], built as a quotient of the free algebra
/// by the congruence generated by the relations.
pub fn present_via_free(pres: &Presentation, budget: Budget) -> Result<DAlgebra> {
    let free = free_on(pres.clone(), budget)?;
    let prov = free.provenance().expect("free algebras carry a presentation");
    let pairs: Vec<(usize, usize)> = pres
        .rels
        .iter()
        .map(|(l, r)| {
            (l.eval(free.lat(), free.eta_table(), &prov.gen_elems), r.eval(free.lat(), free.eta_table(), &prov.gen_elems))
        })
        .collect();
    let (q, proj) = congruence_quotient(free.lat(), &pairs);
    let eta: Vec<usize> = free.eta_table().iter().map(|&e| proj.apply(e)).collect();
    let gen_elems: Vec<usize> = prov.gen_elems.iter().map(|&g| proj.apply(g)).collect();
    let program = derive_program(&q, &eta, &gen_elems)?;
    Ok(DAlgebra::from_parts(pres.base.clone(), q, eta, Some(Provenance::new(pres.clone(), gen_elems, program))))
}

/// Relations grouped by the largest generator they mention; bucket `k + 1`
/// holds relations whose largest generator is `k`, bucket 0 the closed ones.
pub(crate) fn relation_buckets(rels: &[(Term, Term)], n: usize) -> Vec<Vec<(Term, Term)>> {
    let mut buckets = vec![Vec::new(); n + 1];
    for (l, r) in rels {
        let k = l.max_gen().max(r.max_gen()).map_or(0, |g| g + 1);
        buckets[k].push((l.clone(), r.clone()));
    }
    buckets
}

fn point_search(
    i: usize,
    two: &DLattice,
    consts: &[usize],
    buckets: &[Vec<(Term, Term)>],
    vals: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
    meter: &mut Meter,
) -> Result<()> {
    let holds = |k: usize, vals: &[usize]| buckets[k].iter().all(|(l, r)| l.eval(two, consts, vals) == r.eval(two, consts, vals));
    if i == 0 && !holds(0, vals) {
        return Ok(());
    }
    if i == vals.len() {
        emit(vals);
        return Ok(());
    }
    for v in 0..2 {
        meter.tick()?;
        vals[i] = v;
        if holds(i + 1, vals) {
            point_search(i + 1, two, consts, buckets, vals, emit, meter)?;
        }
    }
    vals[i] = 0;
    Ok(())
}
