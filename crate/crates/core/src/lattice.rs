//! Finite bounded distributive lattices given by their operation tables.

use std::fmt;

use crate::budget::{Budget, Meter};
use crate::error::{LatspecError, Result};
use crate::poset::{parse_usize, upset_lattice, Poset, UnionFind, UpsetLattice};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DLattice {
    size: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
    bot: usize,
    top: usize,
}

impl fmt::Debug for DLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DLattice({}; bot {}, top {}, covers {:?})", self.size, self.bot, self.top, self.order().covers())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeLaw {
    Range,
    Commutativity,
    Associativity,
    Idempotence,
    Absorption,
    Bounds,
    Distributivity,
}

/// First violated law found by [`DLattice::validate`], with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeViolation {
    pub law: LatticeLaw,
    pub witnesses: Vec<usize>,
}

impl fmt::Display for LatticeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.law {
            LatticeLaw::Range => "range",
            LatticeLaw::Commutativity => "commutativity",
            LatticeLaw::Associativity => "associativity",
            LatticeLaw::Idempotence => "idempotence",
            LatticeLaw::Absorption => "absorption",
            LatticeLaw::Bounds => "bounds",
            LatticeLaw::Distributivity => "distributivity",
        };
        write!(f, "violation({name}")?;
        for w in &self.witnesses {
            write!(f, ", {w}")?;
        }
        write!(f, ")")
    }
}

impl DLattice {
    /// Builds a lattice from its tables and checks every law, including
    /// distributivity and the existence of bounds.
    pub fn from_tables(size: usize, meet: Vec<usize>, join: Vec<usize>) -> std::result::Result<Self, LatticeViolation> {
        if size == 0 || meet.len() != size * size || join.len() != size * size {
            return Err(LatticeViolation { law: LatticeLaw::Range, witnesses: vec![] });
        }
        let l = Self::from_tables_unchecked(size, meet, join);
        l.validate()?;
        Ok(l)
    }

    /// Wraps tables without checking them; bounds are located by search and
    /// default to index 0 when absent.
    pub fn from_tables_unchecked(size: usize, meet: Vec<usize>, join: Vec<usize>) -> Self {
        let bot = (0..size).find(|&b| (0..size).all(|x| meet.get(b * size + x) == Some(&b))).unwrap_or(0);
        let top = (0..size).find(|&t| (0..size).all(|x| join.get(t * size + x) == Some(&t))).unwrap_or(0);
        DLattice { size, meet, join, bot, top }
    }

    /// The lattice whose order is `p`, if `p` is a lattice.
    pub fn from_order(p: &Poset) -> Result<Self> {
        let n = p.size();
        if n == 0 {
            return Err(LatspecError::invalid("the empty poset is not a lattice"));
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&x| p.leq(x, a) && p.leq(x, b)).collect();
                let upper: Vec<usize> = (0..n).filter(|&x| p.leq(a, x) && p.leq(b, x)).collect();
                let glb = lower.iter().copied().find(|&g| lower.iter().all(|&x| p.leq(x, g)));
                let lub = upper.iter().copied().find(|&g| upper.iter().all(|&x| p.leq(g, x)));
                match (glb, lub) {
                    (Some(g), Some(l)) => {
                        meet[a * n + b] = g;
                        join[a * n + b] = l;
                    }
                    _ => return Err(LatspecError::invalid(format!("elements {a} and {b} lack a meet or join"))),
                }
            }
        }
        DLattice::from_tables(n, meet, join).map_err(|v| LatspecError::invalid(v.to_string()))
    }

    /// The one-element lattice, where bottom and top coincide.
    pub fn trivial() -> Self {
        Self::chain(1)
    }

    pub fn two() -> Self {
        Self::chain(2)
    }

    /// The chain `0 < 1 < ... < n-1`; `n` must be at least 1.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1, "a lattice has at least one element");
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = a.min(b);
                join[a * n + b] = a.max(b);
            }
        }
        DLattice { size: n, meet, join, bot: 0, top: n - 1 }
    }

    /// Boolean algebra of subsets of an `n`-element set, indexed by bitmask.
    pub fn boolean(n: usize) -> Self {
        let size = 1usize << n;
        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                meet[a * size + b] = a & b;
                join[a * size + b] = a | b;
            }
        }
        DLattice { size, meet, join, bot: 0, top: size - 1 }
    }

    /// Componentwise product; `(a, b)` has index `a * |other| + b`.
    pub fn product(&self, other: &DLattice) -> DLattice {
        let (n, m) = (self.size, other.size);
        let size = n * m;
        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for a in 0..n {
            for b in 0..m {
                for c in 0..n {
                    for d in 0..m {
                        meet[(a * m + b) * size + c * m + d] = self.meet(a, c) * m + other.meet(b, d);
                        join[(a * m + b) * size + c * m + d] = self.join(a, c) * m + other.join(b, d);
                    }
                }
            }
        }
        DLattice { size, meet, join, bot: self.bot * m + other.bot, top: self.top * m + other.top }
    }

    /// `n`-fold power; tuple `(x_0, ..., x_{n-1})` has index `sum x_k |L|^(n-1-k)`.
    pub fn power(&self, n: usize) -> DLattice {
        (0..n).fold(DLattice::trivial(), |acc, _| acc.product(self))
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    #[inline]
    pub fn bot(&self) -> usize {
        self.bot
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn is_chain(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.leq(a, b) || self.leq(b, a)))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bot, |acc, x| self.join(acc, x))
    }

    pub fn meet_table(&self) -> &[usize] {
        &self.meet
    }

    pub fn join_table(&self) -> &[usize] {
        &self.join
    }

    /// The induced order as a poset on the same indices.
    pub fn order(&self) -> Poset {
        let n = self.size;
        let leq = (0..n * n).map(|k| self.leq(k / n, k % n)).collect();
        Poset::from_relation_unchecked(n, leq)
    }

    /// Checks every lattice law exhaustively and reports the first failure.
    pub fn validate(&self) -> std::result::Result<(), LatticeViolation> {
        let n = self.size;
        let fail = |law, witnesses: Vec<usize>| Err(LatticeViolation { law, witnesses });
        if n == 0 || self.meet.len() != n * n || self.join.len() != n * n {
            return fail(LatticeLaw::Range, vec![]);
        }
        if let Some(k) = (0..n * n).find(|&k| self.meet[k] >= n || self.join[k] >= n) {
            return fail(LatticeLaw::Range, vec![k / n, k % n]);
        }
        for a in 0..n {
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) || self.join(a, b) != self.join(b, a) {
                    return fail(LatticeLaw::Commutativity, vec![a, b]);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.meet(self.meet(a, b), c) != self.meet(a, self.meet(b, c))
                        || self.join(self.join(a, b), c) != self.join(a, self.join(b, c))
                    {
                        return fail(LatticeLaw::Associativity, vec![a, b, c]);
                    }
                }
            }
        }
        if let Some(a) = (0..n).find(|&a| self.meet(a, a) != a || self.join(a, a) != a) {
            return fail(LatticeLaw::Idempotence, vec![a]);
        }
        for a in 0..n {
            for b in 0..n {
                if self.meet(a, self.join(a, b)) != a || self.join(a, self.meet(a, b)) != a {
                    return fail(LatticeLaw::Absorption, vec![a, b]);
                }
            }
        }
        let has_bot = (0..n).all(|x| self.meet(self.bot, x) == self.bot && self.join(self.bot, x) == x);
        let has_top = (0..n).all(|x| self.join(self.top, x) == self.top && self.meet(self.top, x) == x);
        if !has_bot || !has_top {
            return fail(LatticeLaw::Bounds, vec![self.bot, self.top]);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return fail(LatticeLaw::Distributivity, vec![a, b, c]);
                    }
                }
            }
        }
        Ok(())
    }

    /// Some lattice isomorphism `self -> other` (an order isomorphism).
    pub fn isomorphism_to(&self, other: &DLattice) -> Option<Vec<usize>> {
        self.order().isomorphism_to(&other.order())
    }

    pub fn is_isomorphic(&self, other: &DLattice) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// Lower covers of `a`.
    pub fn lower_covers(&self, a: usize) -> Vec<usize> {
        let n = self.size;
        (0..n)
            .filter(|&b| b != a && self.leq(b, a) && !(0..n).any(|c| c != a && c != b && self.leq(b, c) && self.leq(c, a)))
            .collect()
    }

    /// Join-irreducible elements with the induced order, in increasing index order.
    pub fn join_irreducibles(&self) -> JoinIrreducibles {
        let n = self.size;
        let elements: Vec<usize> = (0..n)
            .filter(|&j| j != self.bot && !(0..n).any(|a| (0..n).any(|b| self.join(a, b) == j && a != j && b != j)))
            .collect();
        let k = elements.len();
        let leq = (0..k * k).map(|x| self.leq(elements[x / k], elements[x % k])).collect();
        JoinIrreducibles { poset: Poset::from_relation_unchecked(k, leq), elements }
    }

    /// Line-oriented text form with `meet` and `join` table blocks.
    pub fn to_text(&self) -> String {
        let n = self.size;
        let mut s = format!("lattice {n}\n");
        for (name, table) in [("meet", &self.meet), ("join", &self.join)] {
            s.push_str(name);
            s.push('\n');
            for a in 0..n {
                let row: Vec<String> = (0..n).map(|b| table[a * n + b].to_string()).collect();
                s.push_str(&row.join(" "));
                s.push('\n');
            }
        }
        s
    }

    /// Parses the text form and validates the result.
    pub fn parse(text: &str) -> Result<DLattice> {
        #[derive(PartialEq)]
        enum Block {
            None,
            Meet,
            Join,
        }
        let mut size = None;
        let mut block = Block::None;
        let mut meet = Vec::new();
        let mut join = Vec::new();
        let mut last_line = 0;
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            last_line = line_no;
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "lattice" => {
                    if toks.len() != 2 || size.is_some() {
                        return Err(LatspecError::parse(line_no, "expected a single `lattice <size>` header"));
                    }
                    let n = parse_usize(toks[1], line_no)?;
                    if n == 0 {
                        return Err(LatspecError::parse(line_no, "a lattice has at least one element"));
                    }
                    size = Some(n);
                }
                "meet" | "join" if toks.len() == 1 => {
                    if size.is_none() {
                        return Err(LatspecError::parse(line_no, "table before `lattice` header"));
                    }
                    block = if toks[0] == "meet" { Block::Meet } else { Block::Join };
                }
                _ => {
                    let n = size.ok_or_else(|| LatspecError::parse(line_no, "row before `lattice` header"))?;
                    let target = match block {
                        Block::Meet => &mut meet,
                        Block::Join => &mut join,
                        Block::None => return Err(LatspecError::parse(line_no, "row outside a `meet`/`join` block")),
                    };
                    if toks.len() != n {
                        return Err(LatspecError::parse(line_no, format!("expected {n} entries, found {}", toks.len())));
                    }
                    if target.len() >= n * n {
                        return Err(LatspecError::parse(line_no, "too many rows in table"));
                    }
                    for t in toks {
                        let v = parse_usize(t, line_no)?;
                        if v >= n {
                            return Err(LatspecError::parse(line_no, format!("entry {v} out of range")));
                        }
                        target.push(v);
                    }
                }
            }
        }
        let n = size.ok_or_else(|| LatspecError::parse(1, "missing `lattice <size>` header"))?;
        if meet.len() != n * n || join.len() != n * n {
            return Err(LatspecError::parse(last_line, "meet and join tables must each have size rows"));
        }
        DLattice::from_tables(n, meet, join).map_err(|v| LatspecError::parse(last_line, v.to_string()))
    }
}

/// Join-irreducible elements of a lattice and their induced order.
#[derive(Clone, Debug)]
pub struct JoinIrreducibles {
    pub poset: Poset,
    /// `elements[k]` is the lattice element at position `k` of `poset`.
    pub elements: Vec<usize>,
}

/// A map between lattices given by its table. Whether it preserves the
/// operations is checked by [`LatticeHom::is_hom`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeHom {
    pub table: Vec<usize>,
}

impl LatticeHom {
    pub fn identity(l: &DLattice) -> Self {
        LatticeHom { table: (0..l.size()).collect() }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LatticeHom) -> LatticeHom {
        LatticeHom { table: self.table.iter().map(|&a| other.table[a]).collect() }
    }

    pub fn is_hom(&self, dom: &DLattice, cod: &DLattice) -> bool {
        is_lattice_hom(dom, cod, &self.table)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = self.table.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.table.len()
    }
}

pub(crate) fn is_lattice_hom(dom: &DLattice, cod: &DLattice, t: &[usize]) -> bool {
    let n = dom.size();
    t.len() == n
        && t.iter().all(|&x| x < cod.size())
        && t[dom.bot()] == cod.bot()
        && t[dom.top()] == cod.top()
        && (0..n).all(|a| (0..n).all(|b| t[dom.meet(a, b)] == cod.meet(t[a], t[b]) && t[dom.join(a, b)] == cod.join(t[a], t[b])))
}

/// Result of a successful Birkhoff representation check.
#[derive(Clone, Debug)]
pub struct BirkhoffIso {
    pub irreducibles: JoinIrreducibles,
    /// Up-sets of the opposite of the irreducible poset, i.e. its down-sets.
    pub representation: UpsetLattice,
    /// `table[a]` is the index in `representation` of `{j irreducible : j <= a}`.
    pub table: Vec<usize>,
}

/// Sends each element to the set of join-irreducibles below it and checks
/// that this is a lattice isomorphism. The sets are down-closed in the
/// irreducible poset, so they are taken as up-sets of its opposite.
pub fn birkhoff_check(l: &DLattice) -> Result<BirkhoffIso> {
    let ji = l.join_irreducibles();
    if ji.elements.len() > 63 {
        return Err(LatspecError::invalid("too many join-irreducibles for the bitmask representation"));
    }
    let rep = upset_lattice(&ji.poset.dual())?;
    let mut table = Vec::with_capacity(l.size());
    for a in 0..l.size() {
        let mask = ji.elements.iter().enumerate().filter(|&(_, &j)| l.leq(j, a)).fold(0u64, |m, (k, _)| m | 1 << k);
        let idx = rep
            .index_of(mask)
            .ok_or_else(|| LatspecError::internal(format!("element {a} maps to a set that is not down-closed")))?;
        table.push(idx);
    }
    let hom = LatticeHom { table: table.clone() };
    if rep.lattice.size() != l.size() || !hom.is_injective() {
        return Err(LatspecError::internal(format!(
            "evaluation map is not bijective: {} elements against {} down-sets",
            l.size(),
            rep.lattice.size()
        )));
    }
    if !hom.is_hom(l, &rep.lattice) {
        return Err(LatspecError::internal("evaluation map does not preserve the lattice operations"));
    }
    Ok(BirkhoffIso { irreducibles: ji, representation: rep, table })
}

/// Every bounded lattice homomorphism `l -> m`, sorted by table.
///
/// A homomorphism is determined by its values on join-irreducibles, so the
/// search assigns those (monotonically, respecting meets of pairs) and then
/// extends by joins and verifies.
pub fn lattice_homs(l: &DLattice, m: &DLattice, budget: Budget) -> Result<Vec<LatticeHom>> {
    let ji = l.join_irreducibles();
    let heights = ji.poset.heights();
    let mut order: Vec<usize> = (0..ji.elements.len()).collect();
    order.sort_by_key(|&k| (heights[k], k));
    let js: Vec<usize> = order.iter().map(|&k| ji.elements[k]).collect();
    let below: Vec<Vec<usize>> = (0..l.size()).map(|a| (0..js.len()).filter(|&k| l.leq(js[k], a)).collect()).collect();
    let mut meter = Meter::new(budget, "enumerating lattice homomorphisms");
    let mut vals = vec![0usize; js.len()];
    let mut out = Vec::new();
    search_ji(0, l, m, &js, &below, &mut vals, &mut out, &mut meter)?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search_ji(
    k: usize,
    l: &DLattice,
    m: &DLattice,
    js: &[usize],
    below: &[Vec<usize>],
    vals: &mut Vec<usize>,
    out: &mut Vec<LatticeHom>,
    meter: &mut Meter,
) -> Result<()> {
    if k == js.len() {
        let table: Vec<usize> = (0..l.size()).map(|a| m.join_all(below[a].iter().map(|&i| vals[i]))).collect();
        if is_lattice_hom(l, m, &table) {
            out.push(LatticeHom { table });
        }
        return Ok(());
    }
    for v in 0..m.size() {
        meter.tick()?;
        vals[k] = v;
        let ok = (0..k).all(|i| {
            let monotone = !l.leq(js[i], js[k]) || m.leq(vals[i], v);
            let g = l.meet(js[i], js[k]);
            // Irreducibles below g are strictly below js[k] unless js[k] <= js[i].
            let meet_ok = l.leq(js[k], js[i]) || m.meet(vals[i], v) == m.join_all(below[g].iter().map(|&x| vals[x]));
            monotone && meet_ok
        });
        if ok {
            search_ji(k + 1, l, m, js, below, vals, out, meter)?;
        }
    }
    Ok(())
}

/// Smallest congruence containing `pairs`, the quotient lattice and the
/// projection. Quotient elements are numbered by increasing least member.
pub fn congruence_quotient(l: &DLattice, pairs: &[(usize, usize)]) -> (DLattice, LatticeHom) {
    let n = l.size();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            work.push((a, b));
        }
    }
    // Only pairs that caused a merge need their translates processed.
    while let Some((a, b)) = work.pop() {
        for c in 0..n {
            let (x, y) = (l.meet(a, c), l.meet(b, c));
            if uf.union(x, y) {
                work.push((x, y));
            }
            let (x, y) = (l.join(a, c), l.join(b, c));
            if uf.union(x, y) {
                work.push((x, y));
            }
        }
    }
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        let r = uf.find(a);
        if class[r] == usize::MAX {
            class[r] = reps.len();
            reps.push(a);
        }
        class[a] = class[r];
    }
    let k = reps.len();
    let mut meet = vec![0; k * k];
    let mut join = vec![0; k * k];
    for x in 0..k {
        for y in 0..k {
            meet[x * k + y] = class[l.meet(reps[x], reps[y])];
            join[x * k + y] = class[l.join(reps[x], reps[y])];
        }
    }
    let q = DLattice::from_tables_unchecked(k, meet, join);
    (q, LatticeHom { table: class })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m3() -> DLattice {
        // 0 bottom, 4 top, atoms 1 2 3.
        let mut p = vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)];
        p.sort();
        let order = Poset::from_generating(5, &p).unwrap();
        let n = 5;
        let mut meet = vec![0; 25];
        let mut join = vec![0; 25];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = if order.leq(a, b) {
                    a
                } else if order.leq(b, a) {
                    b
                } else {
                    0
                };
                join[a * n + b] = if order.leq(a, b) {
                    b
                } else if order.leq(b, a) {
                    a
                } else {
                    4
                };
            }
        }
        DLattice::from_tables_unchecked(n, meet, join)
    }

    #[test]
    fn validate_examples() {
        assert!(DLattice::two().validate().is_ok());
        assert!(DLattice::chain(3).validate().is_ok());
        let v = m3().validate().unwrap_err();
        assert_eq!(v.law, LatticeLaw::Distributivity);
        let (a, b, c) = (v.witnesses[0], v.witnesses[1], v.witnesses[2]);
        let l = m3();
        assert_ne!(l.meet(a, l.join(b, c)), l.join(l.meet(a, b), l.meet(a, c)));
    }

    #[test]
    fn join_irreducible_examples() {
        assert!(DLattice::chain(3).join_irreducibles().poset.is_isomorphic(&Poset::chain(2)));
        assert_eq!(DLattice::two().join_irreducibles().poset.size(), 1);
        let u = upset_lattice(&Poset::square()).unwrap().lattice;
        assert_eq!(u.size(), 6);
        assert!(u.join_irreducibles().poset.is_isomorphic(&Poset::square()));
    }

    #[test]
    fn birkhoff_examples() {
        let b = birkhoff_check(&DLattice::chain(3)).unwrap();
        assert_eq!(b.representation.lattice.size(), 3);
        birkhoff_check(&DLattice::two()).unwrap();
        birkhoff_check(&DLattice::trivial()).unwrap();
        let free2 = upset_lattice(&Poset::square()).unwrap().lattice;
        let b = birkhoff_check(&free2).unwrap();
        assert_eq!(b.irreducibles.poset.size(), 4);
    }

    #[test]
    fn hom_examples() {
        let b = Budget::default();
        assert_eq!(lattice_homs(&DLattice::chain(3), &DLattice::two(), b).unwrap().len(), 2);
        assert_eq!(lattice_homs(&DLattice::two(), &DLattice::chain(4), b).unwrap().len(), 1);
        assert_eq!(lattice_homs(&DLattice::two(), &DLattice::trivial(), b).unwrap().len(), 1);
        assert_eq!(lattice_homs(&DLattice::trivial(), &DLattice::two(), b).unwrap().len(), 0);
    }

    fn brute_homs(l: &DLattice, m: &DLattice) -> Vec<LatticeHom> {
        let total = m.size().pow(l.size() as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut c = code;
            let mut t = vec![0; l.size()];
            for i in (0..l.size()).rev() {
                t[i] = c % m.size();
                c /= m.size();
            }
            if is_lattice_hom(l, m, &t) {
                out.push(LatticeHom { table: t });
            }
        }
        out
    }

    #[test]
    fn homs_match_brute_force() {
        let lib = [
            DLattice::trivial(),
            DLattice::two(),
            DLattice::chain(3),
            DLattice::boolean(2),
            DLattice::chain(2).product(&DLattice::chain(3)),
        ];
        for l in &lib {
            for m in &lib[..4] {
                assert_eq!(lattice_homs(l, m, Budget::default()).unwrap(), brute_homs(l, m));
            }
        }
    }

    #[test]
    fn congruence_examples() {
        let c3 = DLattice::chain(3);
        let (q, p) = congruence_quotient(&c3, &[(1, 2)]);
        assert_eq!(q.size(), 2);
        assert_eq!(p.table, vec![0, 1, 1]);
        let (q, _) = congruence_quotient(&c3, &[]);
        assert_eq!(q, c3);
        let (q, _) = congruence_quotient(&c3, &[(0, 2)]);
        assert!(q.is_trivial());
    }

    #[test]
    fn product_examples() {
        let sq = DLattice::two().product(&DLattice::two());
        assert_eq!(sq.size(), 4);
        assert!(sq.is_isomorphic(&DLattice::boolean(2)));
        assert_eq!(DLattice::chain(3).product(&DLattice::trivial()), DLattice::chain(3));
        let p = DLattice::chain(3).product(&DLattice::two());
        assert_eq!(p.size(), 6);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn text_round_trip() {
        let l = DLattice::boolean(2);
        assert_eq!(DLattice::parse(&l.to_text()).unwrap(), l);
        let err = DLattice::parse("lattice 2\nmeet\n0 0\n0 1\njoin\n0 1\n1 7\n").unwrap_err();
        assert_eq!(err, LatspecError::parse(7, "entry 7 out of range"));
        assert!(DLattice::parse(&m3().to_text()).is_err());
    }

    #[test]
    fn quotient_universal_property() {
        // Every hom identifying the pairs factors uniquely through the projection.
        let l = DLattice::chain(2).product(&DLattice::chain(3));
        let targets = [DLattice::two(), DLattice::chain(3), DLattice::boolean(2)];
        for pairs in [vec![(1, 4)], vec![(0, 3)], vec![(2, 5), (0, 1)]] {
            let (q, proj) = congruence_quotient(&l, &pairs);
            assert!(q.validate().is_ok());
            assert!(proj.is_hom(&l, &q));
            for m in &targets {
                for f in lattice_homs(&l, m, Budget::default()).unwrap() {
                    if !pairs.iter().all(|&(a, b)| f.apply(a) == f.apply(b)) {
                        continue;
                    }
                    let factors: Vec<_> =
                        lattice_homs(&q, m, Budget::default()).unwrap().into_iter().filter(|g| proj.then(g) == f).collect();
                    assert_eq!(factors.len(), 1);
                }
            }
        }
    }

    #[test]
    fn homs_compose() {
        let b = Budget::default();
        let (a, l, m) = (DLattice::boolean(2), DLattice::chain(3), DLattice::two());
        let ab = lattice_homs(&a, &l, b).unwrap();
        let bc = lattice_homs(&l, &m, b).unwrap();
        let ac = lattice_homs(&a, &m, b).unwrap();
        for f in &ab {
            for g in &bc {
                assert!(ac.contains(&f.then(g)));
            }
        }
    }

    fn arb_poset(max: usize) -> impl Strategy<Value = Poset> {
        (0..=max).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                // Keep only pairs i < j so the closure stays antisymmetric.
                let pairs: Vec<(usize, usize)> =
                    (0..n * n).filter(|&k| bits[k] && k / n < k % n).map(|k| (k / n, k % n)).collect();
                Poset::from_generating(n, &pairs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn upset_lattices_are_distributive(p in arb_poset(5)) {
            let u = upset_lattice(&p).unwrap();
            prop_assert!(u.lattice.validate().is_ok());
            prop_assert!(birkhoff_check(&u.lattice).is_ok());
            prop_assert!(u.lattice.join_irreducibles().poset.is_isomorphic(&p.dual()));
        }

        #[test]
        fn adding_relations_never_adds_maps(p in arb_poset(4), i in 0usize..4, j in 0usize..4) {
            let n = p.size();
            prop_assume!(n > 0);
            let (i, j) = (i % n, j % n);
            prop_assume!(!p.leq(j, i));
            let mut pairs: Vec<(usize, usize)> = p.covers();
            pairs.push((i, j));
            let stronger = Poset::from_generating(n, &pairs).unwrap();
            for q in [Poset::chain(2), Poset::square(), Poset::antichain(2)] {
                let before = crate::poset::monotone_tables(&p, &q, Budget::default()).unwrap().len();
                let after = crate::poset::monotone_tables(&stronger, &q, Budget::default()).unwrap().len();
                prop_assert!(after <= before);
            }
        }
    }
}
