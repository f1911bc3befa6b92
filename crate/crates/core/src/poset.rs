//! Finite posets, monotone maps, and finite (co)limits of posets.
//!
//! Elements of a poset of size `n` are the indices `0..n`. Constructions that
//! produce new posets (limits, colimits, up-set lattices) return them in
//! normalized order: sorted by height, ties broken by the original index, so
//! that `i <= j` in the order implies `i <= j` as integers.

use std::collections::HashMap;
use std::fmt;

use crate::budget::{Budget, Meter};
use crate::diagram::compatible_tuples;
use crate::error::{LatspecError, Result};
use crate::lattice::DLattice;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    size: usize,
    leq: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetAxiom {
    Reflexivity,
    Antisymmetry,
    Transitivity,
}

/// First violated axiom found by [`Poset::validate`], with witnessing indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetViolation {
    pub axiom: PosetAxiom,
    pub witnesses: Vec<usize>,
}

impl fmt::Display for PosetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.axiom {
            PosetAxiom::Reflexivity => "reflexivity",
            PosetAxiom::Antisymmetry => "antisymmetry",
            PosetAxiom::Transitivity => "transitivity",
        };
        write!(f, "violation({name}")?;
        for w in &self.witnesses {
            write!(f, ", {w}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({}; covers {:?})", self.size, self.covers())
    }
}

impl Poset {
    /// Builds a poset from a full `size x size` relation, validating the axioms.
    pub fn from_relation(size: usize, leq: Vec<bool>) -> std::result::Result<Self, PosetViolation> {
        let p = Self::from_relation_unchecked(size, leq);
        p.validate()?;
        Ok(p)
    }

    /// Wraps a relation without checking it. Use [`Poset::validate`] to diagnose.
    pub fn from_relation_unchecked(size: usize, leq: Vec<bool>) -> Self {
        assert_eq!(leq.len(), size * size, "relation must be size x size");
        Poset { size, leq }
    }

    /// Reflexive-transitive closure of a generating set of relations `(i, j)`
    /// meaning `i <= j`. Fails when the closure is not antisymmetric.
    pub fn from_generating(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        for &(i, j) in pairs {
            if i >= size || j >= size {
                return Err(LatspecError::invalid(format!("relation ({i}, {j}) out of range for size {size}")));
            }
            leq[i * size + j] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if leq[i * size + k] {
                    for j in 0..size {
                        if leq[k * size + j] {
                            leq[i * size + j] = true;
                        }
                    }
                }
            }
        }
        Poset::from_relation(size, leq).map_err(|v| LatspecError::invalid(v.to_string()))
    }

    pub fn empty() -> Self {
        Poset { size: 0, leq: Vec::new() }
    }

    pub fn point() -> Self {
        Self::chain(1)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in i..n {
                leq[i * n + j] = true;
            }
        }
        Poset { size: n, leq }
    }

    /// The two-element chain, i.e. the Sierpinski poset.
    pub fn sierpinski() -> Self {
        Self::chain(2)
    }

    pub fn antichain(n: usize) -> Self {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        Poset { size: n, leq }
    }

    /// Product order; element `(a, b)` has index `a * |other| + b`.
    pub fn product(&self, other: &Poset) -> Poset {
        let (n, m) = (self.size, other.size);
        let size = n * m;
        let mut leq = vec![false; size * size];
        for a in 0..n {
            for b in 0..m {
                for c in 0..n {
                    for d in 0..m {
                        leq[(a * m + b) * size + c * m + d] = self.leq(a, c) && other.leq(b, d);
                    }
                }
            }
        }
        Poset { size, leq }
    }

    /// `C2 x C2` with elements `(0,0), (0,1), (1,0), (1,1)`.
    pub fn square() -> Poset {
        Self::chain(2).product(&Self::chain(2))
    }

    /// Subsets of an `n`-element set ordered by inclusion, indexed by bitmask.
    pub fn boolean_cube(n: usize) -> Poset {
        let size = 1usize << n;
        let mut leq = vec![false; size * size];
        for u in 0..size {
            for v in 0..size {
                leq[u * size + v] = u & !v == 0;
            }
        }
        Poset { size, leq }
    }

    pub fn dual(&self) -> Poset {
        let n = self.size;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(j, i);
            }
        }
        Poset { size: n, leq }
    }

    /// Adjoins a new least element with index 0; old element `i` becomes `i + 1`.
    pub fn with_bottom(&self) -> Poset {
        let n = self.size + 1;
        let mut leq = vec![false; n * n];
        for j in 0..n {
            leq[j] = true;
        }
        for i in 0..self.size {
            for j in 0..self.size {
                leq[(i + 1) * n + j + 1] = self.leq(i, j);
            }
        }
        Poset { size: n, leq }
    }

    /// Adjoins a new greatest element with index `size`.
    pub fn with_top(&self) -> Poset {
        self.dual().with_bottom().dual().rotate_first_to_last()
    }

    fn rotate_first_to_last(&self) -> Poset {
        let n = self.size;
        let perm: Vec<usize> = (0..n).map(|i| if i == 0 { n - 1 } else { i - 1 }).collect();
        self.relabel(&perm)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size + j]
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    pub fn relation(&self) -> &[bool] {
        &self.leq
    }

    /// Checks reflexivity, antisymmetry and transitivity, in that order.
    pub fn validate(&self) -> std::result::Result<(), PosetViolation> {
        let n = self.size;
        if let Some(i) = (0..n).find(|&i| !self.leq(i, i)) {
            return Err(PosetViolation { axiom: PosetAxiom::Reflexivity, witnesses: vec![i] });
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.leq(i, j) && self.leq(j, i) {
                    return Err(PosetViolation { axiom: PosetAxiom::Antisymmetry, witnesses: vec![i, j] });
                }
            }
        }
        for i in 0..n {
            for k in 0..n {
                if self.leq(i, k) {
                    continue;
                }
                if (0..n).any(|j| self.leq(i, j) && self.leq(j, k)) {
                    return Err(PosetViolation { axiom: PosetAxiom::Transitivity, witnesses: vec![i, k] });
                }
            }
        }
        Ok(())
    }

    /// Height of each element: length of the longest chain ending at it.
    pub fn heights(&self) -> Vec<usize> {
        let n = self.size;
        let mut h = vec![0usize; n];
        // Longest-path relaxation; n rounds suffice on a DAG.
        for _ in 0..n {
            let mut changed = false;
            for j in 0..n {
                for i in 0..n {
                    if self.lt(i, j) && h[i] + 1 > h[j] {
                        h[j] = h[i] + 1;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        h
    }

    /// Applies the relabelling `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        let n = self.size;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[perm[i] * n + perm[j]] = self.leq(i, j);
            }
        }
        Poset { size: n, leq }
    }

    /// Sorts elements by (height, index). Returns the normalized poset and the
    /// relabelling `perm[old] = new`.
    pub fn normalized(&self) -> (Poset, Vec<usize>) {
        let h = self.heights();
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&i| (h[i], i));
        let mut perm = vec![0; self.size];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        (self.relabel(&perm), perm)
    }

    /// Covering pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// DOT digraph of the covering relation, edges pointing upwards.
    pub fn hasse_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
        for i in 0..self.size {
            s.push_str(&format!("  n{i};\n"));
        }
        for (i, j) in self.covers() {
            s.push_str(&format!("  n{i} -> n{j};\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn is_upset(&self, mask: u64) -> bool {
        (0..self.size).all(|i| mask >> i & 1 == 0 || (0..self.size).all(|j| !self.leq(i, j) || mask >> j & 1 == 1))
    }

    /// All up-closed subsets as bitmasks, sorted by (cardinality, mask).
    pub fn upsets(&self) -> Result<Vec<u64>> {
        if self.size > 63 {
            return Err(LatspecError::invalid("up-set enumeration supports at most 63 elements"));
        }
        let (norm, perm) = self.normalized();
        let n = self.size;
        // Decide elements from the top of the normalized order downwards: an
        // element may be included only when everything above it already is.
        let mut out = Vec::new();
        fn rec(p: &Poset, k: usize, mask: u64, out: &mut Vec<u64>) {
            if k == 0 {
                out.push(mask);
                return;
            }
            let x = k - 1;
            rec(p, x, mask, out);
            let above_in = (x + 1..p.size()).all(|y| !p.lt(x, y) || mask >> y & 1 == 1);
            if above_in {
                rec(p, x, mask | 1 << x, out);
            }
        }
        rec(&norm, n, 0, &mut out);
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mut masks: Vec<u64> =
            out.into_iter().map(|m| (0..n).filter(|&i| m >> i & 1 == 1).fold(0u64, |acc, i| acc | 1 << inv[i])).collect();
        masks.sort_by_key(|&m| (m.count_ones(), m));
        Ok(masks)
    }

    fn invariants(&self) -> Vec<(usize, usize, usize, usize)> {
        let up = self.heights();
        let down = self.dual().heights();
        (0..self.size)
            .map(|i| {
                let below = (0..self.size).filter(|&j| self.leq(j, i)).count();
                let above = (0..self.size).filter(|&j| self.leq(i, j)).count();
                (up[i], down[i], below, above)
            })
            .collect()
    }

    /// Calls `visit` on every order isomorphism `self -> other` (as `map[i]`),
    /// stopping early when `visit` returns `false`.
    pub fn for_each_isomorphism(&self, other: &Poset, mut visit: impl FnMut(&[usize]) -> bool) {
        if self.size != other.size {
            return;
        }
        let a = self.invariants();
        let b = other.invariants();
        let mut sa = a.clone();
        let mut sb = b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return;
        }
        let n = self.size;
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn rec(
            i: usize,
            p: &Poset,
            q: &Poset,
            a: &[(usize, usize, usize, usize)],
            b: &[(usize, usize, usize, usize)],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            visit: &mut dyn FnMut(&[usize]) -> bool,
        ) -> bool {
            if i == p.size() {
                return visit(map);
            }
            for j in 0..q.size() {
                if used[j] || a[i] != b[j] {
                    continue;
                }
                let ok = (0..i).all(|k| p.leq(k, i) == q.leq(map[k], j) && p.leq(i, k) == q.leq(j, map[k]));
                if !ok {
                    continue;
                }
                map[i] = j;
                used[j] = true;
                let cont = rec(i + 1, p, q, a, b, map, used, visit);
                used[j] = false;
                map[i] = usize::MAX;
                if !cont {
                    return false;
                }
            }
            true
        }
        rec(0, self, other, &a, &b, &mut map, &mut used, &mut visit);
    }

    /// Some order isomorphism `self -> other`, if one exists.
    pub fn isomorphism_to(&self, other: &Poset) -> Option<Vec<usize>> {
        let mut found = None;
        self.for_each_isomorphism(other, |m| {
            found = Some(m.to_vec());
            false
        });
        found
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// Isomorphism-invariant encoding: the lexicographically least relation
    /// matrix over all labellings that respect the sorted invariant classes.
    pub fn canonical_code(&self) -> Vec<bool> {
        let inv = self.invariants();
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&i| inv[i]);
        let mut best: Option<Vec<bool>> = None;
        let n = self.size;
        let mut placed: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(
            p: &Poset,
            order: &[usize],
            inv: &[(usize, usize, usize, usize)],
            placed: &mut Vec<usize>,
            used: &mut Vec<bool>,
            best: &mut Option<Vec<bool>>,
        ) {
            let pos = placed.len();
            if pos == p.size() {
                let code: Vec<bool> = placed.iter().flat_map(|&i| placed.iter().map(move |&j| p.leq(i, j))).collect();
                if best.as_ref().map_or(true, |b| code < *b) {
                    *best = Some(code);
                }
                return;
            }
            let class = inv[order[pos]];
            for &cand in order {
                if used[cand] || inv[cand] != class {
                    continue;
                }
                used[cand] = true;
                placed.push(cand);
                rec(p, order, inv, placed, used, best);
                placed.pop();
                used[cand] = false;
            }
        }
        rec(self, &order, &inv, &mut placed, &mut used, &mut best);
        let mut code = vec![false; 0];
        code.extend(std::iter::repeat(true).take(n));
        code.push(false);
        code.extend(best.unwrap_or_default());
        code
    }

    /// Line-oriented text form: `poset <size>` then one `le i j` per cover.
    pub fn to_text(&self) -> String {
        let mut s = format!("poset {}\n", self.size);
        for (i, j) in self.covers() {
            s.push_str(&format!("le {i} {j}\n"));
        }
        s
    }

    /// Parses the text form, closing the listed relations reflexively and
    /// transitively. Element indices are kept as written.
    pub fn parse(text: &str) -> Result<Poset> {
        let mut size = None;
        let mut pairs = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "poset" => {
                    if toks.len() != 2 || size.is_some() {
                        return Err(LatspecError::parse(line_no, "expected a single `poset <size>` header"));
                    }
                    size = Some(parse_usize(toks[1], line_no)?);
                }
                "le" => {
                    let n = size.ok_or_else(|| LatspecError::parse(line_no, "`le` before `poset` header"))?;
                    if toks.len() != 3 {
                        return Err(LatspecError::parse(line_no, "expected `le <i> <j>`"));
                    }
                    let i = parse_usize(toks[1], line_no)?;
                    let j = parse_usize(toks[2], line_no)?;
                    if i >= n || j >= n {
                        return Err(LatspecError::parse(line_no, format!("index out of range for poset of size {n}")));
                    }
                    pairs.push((i, j));
                }
                other => return Err(LatspecError::parse(line_no, format!("unknown directive `{other}`"))),
            }
        }
        let n = size.ok_or_else(|| LatspecError::parse(1, "missing `poset <size>` header"))?;
        Poset::from_generating(n, &pairs).map_err(|e| match e {
            LatspecError::Invalid(m) => LatspecError::parse(0, m),
            e => e,
        })
    }
}

pub(crate) fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| LatspecError::parse(line, format!("expected a non-negative integer, found `{tok}`")))
}

/// A monotone map between finite posets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonotoneMap {
    pub dom: Poset,
    pub cod: Poset,
    pub table: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: Poset, cod: Poset, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size() || table.iter().any(|&t| t >= cod.size()) {
            return Err(LatspecError::invalid("map table does not fit its domain/codomain"));
        }
        for i in 0..dom.size() {
            for j in 0..dom.size() {
                if dom.leq(i, j) && !cod.leq(table[i], table[j]) {
                    return Err(LatspecError::invalid(format!("map is not monotone at {i} <= {j}")));
                }
            }
        }
        Ok(MonotoneMap { dom, cod, table })
    }

    pub fn identity(p: &Poset) -> Self {
        MonotoneMap { dom: p.clone(), cod: p.clone(), table: (0..p.size()).collect() }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonotoneMap) -> MonotoneMap {
        assert_eq!(self.cod, other.dom, "maps are not composable");
        MonotoneMap { dom: self.dom.clone(), cod: other.cod.clone(), table: self.table.iter().map(|&x| other.table[x]).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }
}

/// Every monotone map `p -> q`, in lexicographic order of their tables.
/// Refused when `|q|^|p|` exceeds the budget.
pub fn monotone_maps(p: &Poset, q: &Poset, budget: Budget) -> Result<Vec<MonotoneMap>> {
    Ok(monotone_tables(p, q, budget)?.into_iter().map(|table| MonotoneMap { dom: p.clone(), cod: q.clone(), table }).collect())
}

/// Tables of all monotone maps, without the poset copies.
pub fn monotone_tables(p: &Poset, q: &Poset, budget: Budget) -> Result<Vec<Vec<usize>>> {
    budget.check_power(q.size(), p.size(), "enumerating monotone maps")?;
    let mut out = Vec::new();
    let mut table = vec![0usize; p.size()];
    fn rec(i: usize, p: &Poset, q: &Poset, table: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == p.size() {
            out.push(table.clone());
            return;
        }
        for v in 0..q.size() {
            let ok = (0..i).all(|k| (!p.leq(k, i) || q.leq(table[k], v)) && (!p.leq(i, k) || q.leq(v, table[k])));
            if ok {
                table[i] = v;
                rec(i + 1, p, q, table, out);
            }
        }
    }
    rec(0, p, q, &mut table, &mut out);
    Ok(out)
}

/// The lattice of up-sets of a poset together with the sets themselves.
#[derive(Clone, Debug)]
pub struct UpsetLattice {
    pub lattice: DLattice,
    /// `sets[k]` is the bitmask of the `k`-th element of `lattice`.
    pub sets: Vec<u64>,
}

impl UpsetLattice {
    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.sets.binary_search_by_key(&(mask.count_ones(), mask), |&m| (m.count_ones(), m)).ok()
    }
}

/// Up-closed subsets ordered by inclusion; meet is intersection, join union.
pub fn upset_lattice(p: &Poset) -> Result<UpsetLattice> {
    let sets = p.upsets()?;
    let n = sets.len();
    let idx: HashMap<u64, usize> = sets.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = idx[&(sets[a] & sets[b])];
            join[a * n + b] = idx[&(sets[a] | sets[b])];
        }
    }
    let lattice = DLattice::from_tables_unchecked(n, meet, join);
    Ok(UpsetLattice { lattice, sets })
}

/// An arrow of a [`PosetDiagram`], given by its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramArrow {
    pub source: usize,
    pub target: usize,
    pub table: Vec<usize>,
}

/// A finite diagram of posets and monotone maps.
#[derive(Clone, Debug, Default)]
pub struct PosetDiagram {
    pub objects: Vec<Poset>,
    pub arrows: Vec<DiagramArrow>,
}

impl PosetDiagram {
    pub fn new(objects: Vec<Poset>, arrows: Vec<DiagramArrow>) -> Result<Self> {
        for a in &arrows {
            let (Some(s), Some(t)) = (objects.get(a.source), objects.get(a.target)) else {
                return Err(LatspecError::invalid("arrow refers to a missing object"));
            };
            MonotoneMap::new(s.clone(), t.clone(), a.table.clone())?;
        }
        Ok(PosetDiagram { objects, arrows })
    }

    /// Discrete diagram: its limit is the product, its colimit the coproduct.
    pub fn discrete(objects: Vec<Poset>) -> Self {
        PosetDiagram { objects, arrows: Vec::new() }
    }

    /// `a -f-> c <-g- b`; objects are `[a, b, c]`.
    pub fn cospan(f: &MonotoneMap, g: &MonotoneMap) -> Result<Self> {
        if f.cod != g.cod {
            return Err(LatspecError::invalid("cospan legs must share a codomain"));
        }
        Self::new(
            vec![f.dom.clone(), g.dom.clone(), f.cod.clone()],
            vec![
                DiagramArrow { source: 0, target: 2, table: f.table.clone() },
                DiagramArrow { source: 1, target: 2, table: g.table.clone() },
            ],
        )
    }

    /// `b <-f- a -g-> c`; objects are `[a, b, c]`.
    pub fn span(f: &MonotoneMap, g: &MonotoneMap) -> Result<Self> {
        if f.dom != g.dom {
            return Err(LatspecError::invalid("span legs must share a domain"));
        }
        Self::new(
            vec![f.dom.clone(), f.cod.clone(), g.cod.clone()],
            vec![
                DiagramArrow { source: 0, target: 1, table: f.table.clone() },
                DiagramArrow { source: 0, target: 2, table: g.table.clone() },
            ],
        )
    }

    /// Parallel pair `f, g: a => b`; objects are `[a, b]`.
    pub fn parallel(f: &MonotoneMap, g: &MonotoneMap) -> Result<Self> {
        if f.dom != g.dom || f.cod != g.cod {
            return Err(LatspecError::invalid("parallel arrows must share domain and codomain"));
        }
        Self::new(
            vec![f.dom.clone(), f.cod.clone()],
            vec![
                DiagramArrow { source: 0, target: 1, table: f.table.clone() },
                DiagramArrow { source: 0, target: 1, table: g.table.clone() },
            ],
        )
    }
}

/// A cone (or cocone) over a diagram: an apex and one leg per object.
/// For a limit `legs[k]` maps the apex to object `k`; for a colimit it maps
/// object `k` into the apex.
#[derive(Clone, Debug)]
pub struct Cone {
    pub apex: Poset,
    pub legs: Vec<Vec<usize>>,
}

impl Cone {
    pub fn leg_map(&self, d: &PosetDiagram, k: usize, colimit: bool) -> MonotoneMap {
        if colimit {
            MonotoneMap { dom: d.objects[k].clone(), cod: self.apex.clone(), table: self.legs[k].clone() }
        } else {
            MonotoneMap { dom: self.apex.clone(), cod: d.objects[k].clone(), table: self.legs[k].clone() }
        }
    }
}

/// Limit of a finite diagram: compatible tuples with the componentwise order.
pub fn poset_limit(d: &PosetDiagram, budget: Budget) -> Result<Cone> {
    let sizes: Vec<usize> = d.objects.iter().map(Poset::size).collect();
    let arrows: Vec<(usize, usize, &[usize])> = d.arrows.iter().map(|a| (a.source, a.target, a.table.as_slice())).collect();
    let tuples = compatible_tuples(&sizes, &arrows, &mut Meter::new(budget, "computing a poset limit"))?;
    let n = tuples.len();
    let mut leq = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            leq[a * n + b] = (0..d.objects.len()).all(|k| d.objects[k].leq(tuples[a][k], tuples[b][k]));
        }
    }
    let raw = Poset::from_relation_unchecked(n, leq);
    let (apex, perm) = raw.normalized();
    let mut legs = vec![vec![0; n]; d.objects.len()];
    for (old, t) in tuples.iter().enumerate() {
        for k in 0..d.objects.len() {
            legs[k][perm[old]] = t[k];
        }
    }
    Ok(Cone { apex, legs })
}

/// Colimit of a finite diagram: disjoint union, quotient by the equivalence
/// generated by the arrows, preorder closure, then posetal reflection.
pub fn poset_colimit(d: &PosetDiagram) -> Cone {
    let mut offsets = Vec::with_capacity(d.objects.len());
    let mut total = 0;
    for o in &d.objects {
        offsets.push(total);
        total += o.size();
    }
    let mut uf = UnionFind::new(total);
    for a in &d.arrows {
        for (x, &y) in a.table.iter().enumerate() {
            uf.union(offsets[a.source] + x, offsets[a.target] + y);
        }
    }
    // Equivalence classes, numbered by least member.
    let mut class_of = vec![usize::MAX; total];
    let mut nclasses = 0;
    for x in 0..total {
        let r = uf.find(x);
        if class_of[r] == usize::MAX {
            class_of[r] = nclasses;
            nclasses += 1;
        }
        class_of[x] = class_of[r];
    }
    let mut pre = vec![false; nclasses * nclasses];
    for c in 0..nclasses {
        pre[c * nclasses + c] = true;
    }
    for (k, o) in d.objects.iter().enumerate() {
        for i in 0..o.size() {
            for j in 0..o.size() {
                if o.leq(i, j) {
                    pre[class_of[offsets[k] + i] * nclasses + class_of[offsets[k] + j]] = true;
                }
            }
        }
    }
    for m in 0..nclasses {
        for i in 0..nclasses {
            if pre[i * nclasses + m] {
                for j in 0..nclasses {
                    if pre[m * nclasses + j] {
                        pre[i * nclasses + j] = true;
                    }
                }
            }
        }
    }
    // Collapse strongly connected components of the preorder.
    let mut comp = vec![usize::MAX; nclasses];
    let mut ncomp = 0;
    for c in 0..nclasses {
        if comp[c] != usize::MAX {
            continue;
        }
        for e in c..nclasses {
            if pre[c * nclasses + e] && pre[e * nclasses + c] {
                comp[e] = ncomp;
            }
        }
        ncomp += 1;
    }
    let mut leq = vec![false; ncomp * ncomp];
    for i in 0..nclasses {
        for j in 0..nclasses {
            if pre[i * nclasses + j] {
                leq[comp[i] * ncomp + comp[j]] = true;
            }
        }
    }
    let raw = Poset::from_relation_unchecked(ncomp, leq);
    let (apex, perm) = raw.normalized();
    let legs = d
        .objects
        .iter()
        .enumerate()
        .map(|(k, o)| (0..o.size()).map(|i| perm[comp[class_of[offsets[k] + i]]]).collect())
        .collect();
    Cone { apex, legs }
}

/// Checks that `cocone` commutes with the arrows of `d`.
pub fn is_cocone(d: &PosetDiagram, cocone: &Cone) -> bool {
    cocone.legs.len() == d.objects.len()
        && d.arrows
            .iter()
            .all(|a| (0..d.objects[a.source].size()).all(|x| cocone.legs[a.target][a.table[x]] == cocone.legs[a.source][x]))
        && (0..d.objects.len())
            .all(|k| MonotoneMap::new(d.objects[k].clone(), cocone.apex.clone(), cocone.legs[k].clone()).is_ok())
}

/// The unique map from a colimit cocone to a competing cocone, if it exists.
/// Returns `None` when the competitor does not factor (or is not a cocone).
pub fn mediating_map(d: &PosetDiagram, colimit: &Cone, competing: &Cone) -> Option<MonotoneMap> {
    if !is_cocone(d, competing) {
        return None;
    }
    let mut table = vec![usize::MAX; colimit.apex.size()];
    for k in 0..d.objects.len() {
        for x in 0..d.objects[k].size() {
            let c = colimit.legs[k][x];
            let v = competing.legs[k][x];
            if table[c] == usize::MAX {
                table[c] = v;
            } else if table[c] != v {
                return None;
            }
        }
    }
    if table.iter().any(|&t| t == usize::MAX) {
        return None;
    }
    MonotoneMap::new(colimit.apex.clone(), competing.apex.clone(), table).ok()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Merges the classes of `a` and `b`, keeping the smaller root. Returns
    /// `true` when they were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}
