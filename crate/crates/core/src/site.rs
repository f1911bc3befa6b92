//! Coverages on finite posets and the sheaf condition for tabulated
//! presheaves.
//!
//! A presheaf sends a poset `P` to a finite set `F(P)` and a monotone map
//! `f: V -> U` to a restriction `F(U) -> F(V)`. Sections are encoded as
//! vectors of indices so that restriction along `f` is usually
//! precomposition.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::budget::{Budget, Meter};
use crate::diagram::compatible_tuples;
use crate::error::{LatspecError, Result};
use crate::poset::{
    monotone_tables, parse_usize, poset_colimit, poset_limit, upset_lattice, Cone, DiagramArrow, MonotoneMap, Poset, PosetDiagram,
};

/// A generating cover: a family of maps into a common target, optionally
/// with a diagram whose colimit is the target.
#[derive(Clone, Debug)]
pub struct Cover {
    pub target: Poset,
    pub family: Vec<MonotoneMap>,
    /// A diagram and, for each family member, the object whose colimit leg
    /// the member should be.
    pub presentation: Option<(PosetDiagram, Vec<usize>)>,
}

impl Cover {
    pub fn new(target: Poset, family: Vec<MonotoneMap>) -> Result<Self> {
        if family.iter().any(|f| f.cod != target) {
            return Err(LatspecError::invalid("cover member does not land in the cover's target"));
        }
        Ok(Cover { target, family, presentation: None })
    }

    fn presented(mut self, diagram: PosetDiagram, member_legs: Vec<usize>) -> Self {
        self.presentation = Some((diagram, member_legs));
        self
    }

    /// Whether the colimit of the presenting diagram is the target with the
    /// members as legs, up to a unique relabelling. `None` without a
    /// presentation.
    pub fn presentation_holds(&self) -> Option<bool> {
        let (diagram, member_legs) = self.presentation.as_ref()?;
        let cone = poset_colimit(diagram);
        if member_legs.len() != self.family.len() || member_legs.iter().any(|&k| k >= cone.legs.len()) {
            return Some(false);
        }
        let mut found = false;
        cone.apex.for_each_isomorphism(&self.target, |phi| {
            found = member_legs
                .iter()
                .zip(&self.family)
                .all(|(&k, f)| diagram.objects[k] == f.dom && cone.legs[k].iter().map(|&x| phi[x]).eq(f.table.iter().copied()));
            !found
        });
        Some(found)
    }
}

/// A named set of generating covers.
#[derive(Clone, Debug)]
pub struct Coverage {
    pub name: String,
    pub covers: Vec<Cover>,
}

/// Names accepted by [`builtin_coverage`].
pub const BUILTIN_COVERAGES: [&str; 4] = ["NT", "L", "SL", "OneCS"];

fn map(dom: &Poset, cod: &Poset, table: &[usize]) -> MonotoneMap {
    MonotoneMap::new(dom.clone(), cod.clone(), table.to_vec()).expect("builtin map is monotone")
}

fn arrow(source: usize, target: usize, table: &[usize]) -> DiagramArrow {
    DiagramArrow { source, target, table: table.to_vec() }
}

/// Three points `a, b, t` with `a, b < t`.
pub fn inner_horn() -> Poset {
    Poset::from_generating(3, &[(0, 2), (1, 2)]).expect("valid order")
}

fn empty_cover() -> Cover {
    Cover::new(Poset::empty(), Vec::new()).expect("empty family").presented(PosetDiagram::default(), Vec::new())
}

fn horn_cover() -> Cover {
    let s = Poset::sierpinski();
    let h = inner_horn();
    let diagram = PosetDiagram::new(vec![Poset::point(), s.clone(), s.clone()], vec![arrow(0, 1, &[1]), arrow(0, 2, &[1])])
        .expect("valid diagram");
    Cover::new(h.clone(), vec![map(&s, &h, &[0, 2]), map(&s, &h, &[1, 2])]).expect("valid cover").presented(diagram, vec![1, 2])
}

fn square_cover() -> Cover {
    let s = Poset::sierpinski();
    let c = Poset::chain(3);
    let q = Poset::square();
    let diagram = PosetDiagram::new(vec![s, c.clone(), c.clone()], vec![arrow(0, 1, &[0, 2]), arrow(0, 2, &[0, 2])])
        .expect("valid diagram");
    Cover::new(q.clone(), vec![map(&c, &q, &[0, 1, 3]), map(&c, &q, &[0, 2, 3])])
        .expect("valid cover")
        .presented(diagram, vec![1, 2])
}

fn face_cover() -> Cover {
    let s = Poset::sierpinski();
    let c = Poset::chain(3);
    let faces = [[1, 2], [0, 2], [0, 1]];
    // Points 0..3 glue the faces at the vertices 0, 1, 2; faces are objects 3..6.
    let mut objects = vec![Poset::point(); 3];
    objects.extend([s.clone(), s.clone(), s.clone()]);
    let mut arrows = Vec::new();
    for v in 0..3 {
        for (k, face) in faces.iter().enumerate() {
            if let Some(x) = face.iter().position(|&y| y == v) {
                arrows.push(arrow(v, 3 + k, &[x]));
            }
        }
    }
    let diagram = PosetDiagram::new(objects, arrows).expect("valid diagram");
    let family = faces.iter().map(|f| map(&s, &c, f)).collect();
    Cover::new(c, family).expect("valid cover").presented(diagram, vec![3, 4, 5])
}

/// The builtin coverages. Each contains the empty cover of the empty poset;
/// `L` adds the two legs into the inner horn, `SL` the two maximal chains of
/// the square, and `OneCS` the chains of `SL` and the three faces of the
/// 3-chain.
pub fn builtin_coverage(name: &str) -> Result<Coverage> {
    let covers = match name {
        "NT" => vec![empty_cover()],
        "L" => vec![empty_cover(), horn_cover()],
        "SL" => vec![empty_cover(), square_cover()],
        "OneCS" | "1cS" => vec![empty_cover(), square_cover(), face_cover()],
        _ => {
            return Err(LatspecError::invalid(format!(
                "unknown coverage `{name}` (expected one of {})",
                BUILTIN_COVERAGES.join(", ")
            )))
        }
    };
    Ok(Coverage { name: name.to_string(), covers })
}

/// Parses a map file: `from <poset-file>`, an optional `to <poset-file>`
/// (required when no codomain is implied), and `table <j0> <j1> ...` giving
/// the image of each element of the domain.
pub fn parse_map(text: &str, resolve: &mut dyn FnMut(&str) -> Result<Poset>, to: Option<&Poset>) -> Result<MonotoneMap> {
    let (mut dom, mut cod, mut table) = (None, to.cloned(), None);
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match (toks[0], toks.len()) {
            ("from", 2) => dom = Some(resolve(toks[1])?),
            ("to", 2) => cod = Some(resolve(toks[1])?),
            ("table", _) => table = Some(toks[1..].iter().map(|t| parse_usize(t, line_no)).collect::<Result<Vec<_>>>()?),
            (other, _) => return Err(LatspecError::parse(line_no, format!("unexpected `{other}` line in map file"))),
        }
    }
    let dom = dom.ok_or_else(|| LatspecError::parse(0, "map file has no `from` line"))?;
    let cod = cod.ok_or_else(|| LatspecError::parse(0, "map file has no `to` line"))?;
    let table = table.unwrap_or_default();
    MonotoneMap::new(dom, cod, table).map_err(|e| LatspecError::parse(0, e.to_string()))
}

/// Parses a coverage file: `coverage <name>` then one
/// `cover <target-file> <map-file>...` line per generating cover. `load`
/// reads a referenced file.
pub fn parse_coverage(text: &str, load: &mut dyn FnMut(&str) -> Result<String>) -> Result<Coverage> {
    let mut name = None;
    let mut covers = Vec::new();
    fn poset(load: &mut dyn FnMut(&str) -> Result<String>, path: &str) -> Result<Poset> {
        Poset::parse(&load(path)?)
    }
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "coverage" if toks.len() == 2 && name.is_none() => name = Some(toks[1].to_string()),
            "cover" if toks.len() >= 2 => {
                let target = poset(load, toks[1])?;
                let mut family = Vec::new();
                for path in &toks[2..] {
                    let text = load(path)?;
                    family.push(parse_map(&text, &mut |p| poset(load, p), Some(&target))?);
                }
                covers.push(Cover::new(target, family).map_err(|e| LatspecError::parse(line_no, e.to_string()))?);
            }
            other => return Err(LatspecError::parse(line_no, format!("unexpected `{other}` line in coverage file"))),
        }
    }
    let name = name.ok_or_else(|| LatspecError::parse(1, "missing `coverage <name>` header"))?;
    Ok(Coverage { name, covers })
}

/// The pullback `V ×_U W` of `f: V -> U` and `g: W -> U` with its two
/// projections.
pub fn pullback(f: &MonotoneMap, g: &MonotoneMap, budget: Budget) -> Result<(MonotoneMap, MonotoneMap)> {
    let d = PosetDiagram::cospan(f, g)?;
    let cone = poset_limit(&d, budget)?;
    Ok((cone.leg_map(&d, 0, false), cone.leg_map(&d, 1, false)))
}

/// Pulls a cover family on `U` back along `f: V -> U`, giving a family on
/// `V`.
pub fn cover_pullback(family: &[MonotoneMap], f: &MonotoneMap, budget: Budget) -> Result<Vec<MonotoneMap>> {
    family.iter().map(|g| pullback(f, g, budget).map(|(p, _)| p)).collect()
}

/// How a presheaf acts on objects and maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresheafRule {
    /// Up-sets of `P`, encoded as indicator vectors; restriction is preimage.
    Generic,
    /// The same `n`-element set everywhere; restriction is the identity.
    Constant(usize),
    /// Monotone maps `P -> X`; restriction is precomposition.
    Representable(Poset),
}

impl fmt::Display for PresheafRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresheafRule::Generic => write!(f, "generic"),
            PresheafRule::Constant(n) => write!(f, "constant({n})"),
            PresheafRule::Representable(x) => write!(f, "representable({}-element poset)", x.size()),
        }
    }
}

impl PresheafRule {
    fn sections(&self, p: &Poset, budget: Budget) -> Result<Vec<Vec<usize>>> {
        match self {
            PresheafRule::Generic => {
                Ok(upset_lattice(p)?.sets.iter().map(|&m| (0..p.size()).map(|i| (m >> i & 1) as usize).collect()).collect())
            }
            PresheafRule::Constant(n) => Ok((0..*n).map(|k| vec![k]).collect()),
            PresheafRule::Representable(x) => monotone_tables(p, x, budget),
        }
    }

    fn restrict(&self, f: &MonotoneMap, s: &[usize]) -> Vec<usize> {
        match self {
            PresheafRule::Constant(_) => s.to_vec(),
            _ => f.table.iter().map(|&x| s[x]).collect(),
        }
    }
}

/// Objects and maps a presheaf is tabulated on.
#[derive(Clone, Debug, Default)]
pub struct Fragment {
    pub objects: Vec<Poset>,
    pub maps: Vec<MonotoneMap>,
}

impl Fragment {
    /// `extra` together with everything the coverage's sheaf check reads:
    /// targets, members, pairwise pullbacks with their projections, the
    /// composites of projections with members, and identities.
    pub fn for_coverage(cov: &Coverage, extra: &[Poset], budget: Budget) -> Result<Fragment> {
        let mut frag = Fragment::default();
        for p in extra {
            frag.add_object(p);
        }
        for c in &cov.covers {
            frag.add_object(&c.target);
            for f in &c.family {
                frag.add_map(f);
            }
            for f in &c.family {
                for g in &c.family {
                    let (p, q) = pullback(f, g, budget)?;
                    frag.add_map(&p);
                    frag.add_map(&q);
                    frag.add_map(&p.then(f));
                }
            }
        }
        for p in frag.objects.clone() {
            frag.add_map(&MonotoneMap::identity(&p));
        }
        Ok(frag)
    }

    pub fn add_object(&mut self, p: &Poset) {
        if !self.objects.contains(p) {
            self.objects.push(p.clone());
        }
    }

    pub fn add_map(&mut self, f: &MonotoneMap) {
        self.add_object(&f.dom);
        self.add_object(&f.cod);
        if !self.maps.contains(f) {
            self.maps.push(f.clone());
        }
    }
}

/// A presheaf tabulated on a fragment.
#[derive(Clone, Debug)]
pub struct TabulatedPresheaf {
    pub name: String,
    pub objects: Vec<Poset>,
    /// Encoded sections over each object.
    pub values: Vec<Vec<Vec<usize>>>,
    /// For each tabulated map `f: V -> U`, the table of `F(U) -> F(V)`.
    pub restrictions: HashMap<MonotoneMap, Vec<usize>>,
}

impl TabulatedPresheaf {
    /// Tabulates `rule` on `fragment` and checks functoriality.
    pub fn tabulate(rule: &PresheafRule, fragment: &Fragment, budget: Budget) -> Result<Self> {
        let values = fragment.objects.iter().map(|p| rule.sections(p, budget)).collect::<Result<Vec<_>>>()?;
        let mut f =
            TabulatedPresheaf { name: rule.to_string(), objects: fragment.objects.clone(), values, restrictions: HashMap::new() };
        for m in &fragment.maps {
            let (src, dst) = (f.object_index(&m.cod)?, f.object_index(&m.dom)?);
            let index: HashMap<&[usize], usize> = f.values[dst].iter().enumerate().map(|(k, s)| (s.as_slice(), k)).collect();
            let table = f.values[src]
                .iter()
                .map(|s| index.get(rule.restrict(m, s).as_slice()).copied())
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| LatspecError::internal(format!("restriction of {} leaves its value set", f.name)))?;
            f.restrictions.insert(m.clone(), table);
        }
        f.check_functorial()?;
        Ok(f)
    }

    fn object_index(&self, p: &Poset) -> Result<usize> {
        self.objects.iter().position(|o| o == p).ok_or_else(|| LatspecError::FragmentIncomplete(describe(p)))
    }

    fn restriction(&self, m: &MonotoneMap, what: &str) -> Result<&[usize]> {
        self.restrictions
            .get(m)
            .map(Vec::as_slice)
            .ok_or_else(|| LatspecError::FragmentIncomplete(format!("{what} ({})", describe(&m.dom))))
    }

    /// Identities restrict to identities, and restriction along a tabulated
    /// composite is the composite of restrictions.
    pub fn check_functorial(&self) -> Result<()> {
        for (m, table) in &self.restrictions {
            if m.dom == m.cod
                && m.table.iter().enumerate().all(|(i, &x)| i == x)
                && table.iter().enumerate().any(|(i, &x)| i != x)
            {
                return Err(LatspecError::invalid(format!("{}: identity does not restrict to the identity", self.name)));
            }
        }
        for (f, tf) in &self.restrictions {
            for (g, tg) in &self.restrictions {
                if f.cod != g.dom {
                    continue;
                }
                if let Some(tc) = self.restrictions.get(&f.then(g)) {
                    if tc.iter().zip(tg).any(|(&c, &x)| c != tf[x]) {
                        return Err(LatspecError::invalid(format!("{}: restriction is not functorial", self.name)));
                    }
                }
            }
        }
        Ok(())
    }
}

fn describe(p: &Poset) -> String {
    let rel: Vec<String> = p.covers().iter().map(|(a, b)| format!("{a}<{b}")).collect();
    format!("{}-element poset [{}]", p.size(), rel.join(" "))
}

/// Sheaf condition on one cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub target_size: usize,
    pub members: usize,
    pub sections: usize,
    pub matching_families: usize,
    pub injective: bool,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafReport {
    pub presheaf: String,
    pub coverage: String,
    pub covers: Vec<CoverReport>,
    pub pass: bool,
}

/// Checks, for each generating cover `{f_i: U_i -> U}`, that restricting a
/// section over `U` to the family is a bijection onto the matching families,
/// those tuples of sections that agree on every pairwise pullback.
pub fn sheaf_check(f: &TabulatedPresheaf, cov: &Coverage, budget: Budget) -> Result<SheafReport> {
    let mut covers = Vec::new();
    for c in &cov.covers {
        let u = f.object_index(&c.target)?;
        let members: Vec<usize> = c.family.iter().map(|m| f.object_index(&m.dom)).collect::<Result<_>>()?;
        let k = members.len();
        // Objects 0..k are the members' value sets; pullbacks follow.
        let mut sizes: Vec<usize> = members.iter().map(|&i| f.values[i].len()).collect();
        let mut tables: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let (p, q) = pullback(&c.family[i], &c.family[j], budget)?;
                let what = format!("pullback of members {i} and {j}");
                let obj = f
                    .objects
                    .iter()
                    .position(|o| *o == p.dom)
                    .ok_or_else(|| LatspecError::FragmentIncomplete(format!("{what}: {}", describe(&p.dom))))?;
                let node = sizes.len();
                sizes.push(f.values[obj].len());
                tables.push((i, node, f.restriction(&p, &what)?.to_vec()));
                tables.push((j, node, f.restriction(&q, &what)?.to_vec()));
            }
        }
        let arrows: Vec<(usize, usize, &[usize])> = tables.iter().map(|(s, t, tb)| (*s, *t, tb.as_slice())).collect();
        let mut meter = Meter::new(budget, "enumerating matching families");
        let matching: BTreeSet<Vec<usize>> = if k == 0 {
            BTreeSet::from([Vec::new()])
        } else {
            compatible_tuples(&sizes, &arrows, &mut meter)?.into_iter().map(|t| t[..k].to_vec()).collect()
        };
        let restr: Vec<&[usize]> = c.family.iter().map(|m| f.restriction(m, "cover member")).collect::<Result<_>>()?;
        let image: Vec<Vec<usize>> = (0..f.values[u].len()).map(|s| restr.iter().map(|r| r[s]).collect()).collect();
        let distinct: BTreeSet<Vec<usize>> = image.iter().cloned().collect();
        let injective = distinct.len() == image.len();
        let bijective = injective && distinct == matching;
        covers.push(CoverReport {
            target_size: c.target.size(),
            members: k,
            sections: image.len(),
            matching_families: matching.len(),
            injective,
            bijective,
        });
    }
    let pass = covers.iter().all(|c| c.bijective);
    Ok(SheafReport { presheaf: f.name.clone(), coverage: cov.name.clone(), covers, pass })
}

/// Tabulates `rule` on the coverage's minimal fragment and checks it.
pub fn sheaf_check_rule(rule: &PresheafRule, cov: &Coverage, budget: Budget) -> Result<SheafReport> {
    let frag = Fragment::for_coverage(cov, &[], budget)?;
    let f = TabulatedPresheaf::tabulate(rule, &frag, budget)?;
    sheaf_check(&f, cov, budget)
}

/// The generic model tabulated on `objects` (no maps besides identities).
pub fn generic_model_presheaf(objects: &[Poset], budget: Budget) -> Result<TabulatedPresheaf> {
    let mut frag = Fragment::default();
    for p in objects {
        frag.add_map(&MonotoneMap::identity(p));
    }
    TabulatedPresheaf::tabulate(&PresheafRule::Generic, &frag, budget)
}

/// Colimit of `1 <- Σ -> Δ² <- Σ -> Δ² <- Σ -> 1`, where `Δ²` is the
/// 3-chain `(0,0) < (1,0) < (1,1)` and the maps are `i -> (i,i)`,
/// `i -> (i,0)`, `i -> (1,i)`, `i -> (i,i)`.
pub fn equivalence_classifier_colimit() -> Cone {
    let s = Poset::sierpinski();
    let c = Poset::chain(3);
    let objects = vec![Poset::point(), s.clone(), c.clone(), s.clone(), c, s, Poset::point()];
    let arrows = vec![
        arrow(1, 0, &[0, 0]),
        arrow(1, 2, &[0, 2]),
        arrow(3, 2, &[0, 1]),
        arrow(3, 4, &[1, 2]),
        arrow(5, 4, &[0, 2]),
        arrow(5, 6, &[0, 0]),
    ];
    poset_colimit(&PosetDiagram::new(objects, arrows).expect("valid diagram"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn coverage_file_matches_builtin_horn() {
        let files: HashMap<&str, &str> = [
            ("horn.pos", "poset 3\nle 0 2\nle 1 2\n"),
            ("s.pos", "poset 2\nle 0 1\n"),
            ("empty.pos", "poset 0\n"),
            ("l.map", "from s.pos\ntable 0 2\n"),
            ("r.map", "from s.pos\ntable 1 2\n"),
        ]
        .into_iter()
        .collect();
        let mut load = |p: &str| files.get(p).map(|t| t.to_string()).ok_or_else(|| LatspecError::invalid(p.to_string()));
        let text = "coverage mine\ncover empty.pos\ncover horn.pos l.map r.map\n";
        let cov = parse_coverage(text, &mut load).unwrap();
        let builtin = builtin_coverage("L").unwrap();
        assert_eq!(cov.name, "mine");
        assert_eq!(cov.covers.len(), 2);
        for (a, b) in cov.covers.iter().zip(&builtin.covers) {
            assert_eq!(a.target, b.target);
            assert_eq!(a.family, b.family);
        }
        assert!(sheaf_check_rule(&PresheafRule::Generic, &cov, b()).unwrap().pass);
        let err = parse_coverage("coverage x\ncover horn.pos bogus.map\n", &mut load).unwrap_err();
        assert!(err.to_string().contains("bogus.map"));
        let err = parse_coverage("coverage x\nfrob\n", &mut load).unwrap_err();
        assert_eq!(err, LatspecError::parse(2, "unexpected `frob` line in coverage file"));
    }

    #[test]
    fn map_file_rejects_non_monotone_tables() {
        let mut load = |_: &str| Ok(Poset::sierpinski());
        assert!(parse_map("from s\nto s\ntable 1 0\n", &mut load, None).is_err());
        assert!(parse_map("from s\ntable 0 1\n", &mut load, None).is_err());
        let f = parse_map("from s\nto s\ntable 0 1\n", &mut load, None).unwrap();
        assert_eq!(f, MonotoneMap::identity(&Poset::sierpinski()));
    }

    #[test]
    fn builtin_presentations_hold() {
        for name in BUILTIN_COVERAGES {
            let cov = builtin_coverage(name).unwrap();
            for c in &cov.covers {
                assert_eq!(c.presentation_holds(), Some(true), "{name}");
            }
        }
        assert!(builtin_coverage("X").is_err());
    }

    #[test]
    fn builtin_shapes() {
        let nt = builtin_coverage("NT").unwrap();
        assert_eq!(nt.covers.len(), 1);
        assert_eq!(nt.covers[0].target.size(), 0);
        assert!(nt.covers[0].family.is_empty());
        let l = builtin_coverage("L").unwrap();
        assert_eq!(l.covers[1].target.size(), 3);
        let one = builtin_coverage("OneCS").unwrap();
        let faces = &one.covers[2];
        assert!(faces.target.is_isomorphic(&Poset::chain(3)));
        assert_eq!(faces.family.len(), 3);
    }

    #[test]
    fn pullback_examples() {
        let l = builtin_coverage("L").unwrap();
        let c = &l.covers[1];
        let id = MonotoneMap::identity(&c.target);
        let back = cover_pullback(&c.family, &id, b()).unwrap();
        for (p, f) in back.iter().zip(&c.family) {
            assert!(p.dom.is_isomorphic(&f.dom));
        }
        assert!(cover_pullback(&[], &id, b()).unwrap().is_empty());
        let sq = builtin_coverage("SL").unwrap().covers[1].clone();
        let diag = MonotoneMap::new(Poset::sierpinski(), Poset::square(), vec![0, 3]).unwrap();
        let back = cover_pullback(&sq.family, &diag, b()).unwrap();
        assert_eq!(back.len(), 2);
        for p in &back {
            assert_eq!(p.cod, Poset::sierpinski());
            assert!(p.dom.is_isomorphic(&Poset::sierpinski()));
        }
    }

    #[test]
    fn generic_model_values() {
        let g = generic_model_presheaf(&[Poset::empty(), Poset::point(), Poset::sierpinski()], b()).unwrap();
        let sizes: Vec<usize> = g.values.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
    }

    #[test]
    fn generic_model_is_a_sheaf() {
        for name in BUILTIN_COVERAGES {
            let r = sheaf_check_rule(&PresheafRule::Generic, &builtin_coverage(name).unwrap(), b()).unwrap();
            assert!(r.pass, "{name} {r:?}");
        }
    }

    #[test]
    fn constant_presheaf_fails_empty_cover() {
        let r = sheaf_check_rule(&PresheafRule::Constant(2), &builtin_coverage("NT").unwrap(), b()).unwrap();
        assert!(!r.pass);
        assert_eq!((r.covers[0].sections, r.covers[0].matching_families), (2, 1));
    }

    #[test]
    fn representables_are_sheaves() {
        let shapes =
            [Poset::point(), Poset::sierpinski(), Poset::antichain(2), Poset::chain(3), inner_horn(), Poset::antichain(3)];
        for x in shapes {
            for name in BUILTIN_COVERAGES {
                let r = sheaf_check_rule(&PresheafRule::Representable(x.clone()), &builtin_coverage(name).unwrap(), b()).unwrap();
                assert!(r.pass, "{name} {r:?}");
            }
        }
    }

    #[test]
    fn missing_pullback_is_reported() {
        let cov = builtin_coverage("L").unwrap();
        let mut frag = Fragment::for_coverage(&cov, &[], b()).unwrap();
        frag.objects.retain(|p| *p != Poset::point());
        frag.maps.retain(|m| m.dom != Poset::point() && m.cod != Poset::point());
        let f = TabulatedPresheaf::tabulate(&PresheafRule::Generic, &frag, b()).unwrap();
        let err = sheaf_check(&f, &cov, b()).unwrap_err();
        assert!(matches!(err, LatspecError::FragmentIncomplete(ref m) if m.contains("pullback")), "{err}");
    }

    #[test]
    fn broken_functoriality_is_caught() {
        let cov = builtin_coverage("L").unwrap();
        let frag = Fragment::for_coverage(&cov, &[], b()).unwrap();
        let mut f = TabulatedPresheaf::tabulate(&PresheafRule::Generic, &frag, b()).unwrap();
        let id = MonotoneMap::identity(&Poset::sierpinski());
        f.restrictions.insert(id, vec![1, 0, 2]);
        assert!(f.check_functorial().is_err());
    }

    #[test]
    fn equivalence_classifier_collapses() {
        assert_eq!(equivalence_classifier_colimit().apex.size(), 1);
    }
}
