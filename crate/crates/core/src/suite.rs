//! A fixed battery of verification checks over the built-in base lattices.

use std::fmt;
use std::str::FromStr;

use crate::algebra::oracle::{restrict_to_cube, term_closure};
use crate::algebra::{
    algebra_homs, counit_diagnostics, free_algebra, observation_triangle, opens, orders, spec, spec_triangle, stage_exponential,
    AlgebraHom, BaseLattice, DAlgebra,
};
use crate::budget::Budget;
use crate::corpus::{algebra_library, small_posets};
use crate::domain::{
    chain_completeness_check, colift_algebra, colift_spec, complement_classifier, complemented_elements, coskeletal_limit,
    inductivity_check, lift_algebra, lift_simplex_check, lift_spec, segal_pullback, simplicial_pullback, InclusionFormula, Side,
};
use crate::error::{LatspecError, Result};
use crate::polynomial::{chain_quotient_iso, nf1_bijection, phoa_functions, Direction};
use crate::poset::Poset;
use crate::site::{builtin_coverage, sheaf_check_rule, PresheafRule, BUILTIN_COVERAGES};

/// Which group of checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Selector {
    All,
    Duality,
    Phoa,
    Lift,
    Orders,
    Chain,
    Locality,
    Site,
}

impl Selector {
    pub const NAMES: [&'static str; 8] = ["all", "duality", "phoa", "lift", "orders", "chain", "locality", "site"];

    fn groups(self) -> Vec<Selector> {
        use Selector::*;
        match self {
            All => vec![Duality, Phoa, Lift, Orders, Chain, Locality, Site],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        use Selector::*;
        match self {
            All => "all",
            Duality => "duality",
            Phoa => "phoa",
            Lift => "lift",
            Orders => "orders",
            Chain => "chain",
            Locality => "locality",
            Site => "site",
        }
    }
}

impl FromStr for Selector {
    type Err = LatspecError;

    fn from_str(s: &str) -> Result<Self> {
        use Selector::*;
        Ok(match s {
            "all" => All,
            "duality" => Duality,
            "phoa" => Phoa,
            "lift" => Lift,
            "orders" => Orders,
            "chain" => Chain,
            "locality" => Locality,
            "site" => Site,
            _ => {
                return Err(LatspecError::invalid(format!(
                    "unknown selector {s:?}; expected one of {}",
                    Selector::NAMES.join(", ")
                )))
            }
        })
    }
}

/// One check: its group, what it was run on, the claim, and the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteLine {
    pub group: &'static str,
    pub subject: String,
    pub claim: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for SuiteLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {:<8} {:<8} {}", self.group, self.subject, self.claim)?;
        if !self.detail.is_empty() {
            write!(f, " [{}]", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub lines: Vec<SuiteLine>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    /// One line per check followed by a summary line.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            s.push_str(&l.to_string());
            s.push('\n');
        }
        let passed = self.lines.iter().filter(|l| l.pass).count();
        s.push_str(&format!("{} {passed}/{} checks passed\n", if self.pass() { "PASS" } else { "FAIL" }, self.lines.len()));
        s
    }
}

struct Lines {
    group: &'static str,
    lines: Vec<SuiteLine>,
}

impl Lines {
    fn check(&mut self, subject: &str, claim: &'static str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (pass, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.lines.push(SuiteLine { group: self.group, subject: subject.to_string(), claim, pass, detail });
    }
}

/// Runs the selected checks over the base lattices 2, 3-chain, 2x2 and
/// 4-chain. Lines are produced in a fixed order.
pub fn theorem_suite(selector: Selector, budget: Budget) -> SuiteReport {
    let bases = BaseLattice::library();
    let mut lines = Vec::new();
    for group in selector.groups() {
        let mut out = Lines { group: group.name(), lines: Vec::new() };
        match group {
            Selector::Duality => duality(&mut out, &bases, budget),
            Selector::Phoa => phoa(&mut out, &bases, budget),
            Selector::Lift => lift(&mut out, &bases, budget),
            Selector::Orders => order_checks(&mut out, &bases, budget),
            Selector::Chain => chain(&mut out, &bases, budget),
            Selector::Locality => locality(&mut out, &bases, budget),
            Selector::Site => site(&mut out, budget),
            Selector::All => unreachable!(),
        }
        lines.extend(out.lines);
    }
    SuiteReport { lines }
}

/// Elements of the free algebra on `n` generators as functions on
/// `{bot, top}^n`, read off through the evaluation homomorphisms.
fn free_cube_tables(a: &DAlgebra, n: usize) -> Result<Vec<Vec<usize>>> {
    let d = DAlgebra::initial(a.base());
    let (bot, top) = (d.lat().bot(), d.lat().top());
    let evals: Vec<AlgebraHom> = (0..1usize << n)
        .map(|mask| {
            let images: Vec<usize> = (0..n).map(|i| if mask >> i & 1 == 1 { top } else { bot }).collect();
            AlgebraHom::from_generator_images(a, &d, &images)
        })
        .collect::<Result<_>>()?;
    let mut tables: Vec<Vec<usize>> = (0..a.size()).map(|e| evals.iter().map(|h| h.apply(e)).collect()).collect();
    tables.sort();
    Ok(tables)
}

fn duality(out: &mut Lines, bases: &[BaseLattice], budget: Budget) {
    for b in bases {
        out.check(&b.name, "free algebras agree with the term-closure model, n <= 2", || {
            let mut sizes = Vec::new();
            for n in 0..=2 {
                let free = free_algebra(b, n, budget)?;
                let mut oracle: Vec<Vec<usize>> =
                    term_closure(&b.lattice, n, budget)?.iter().map(|f| restrict_to_cube(&b.lattice, n, f)).collect();
                oracle.sort();
                oracle.dedup();
                if free_cube_tables(&free, n)? != oracle {
                    return Ok((false, format!("n={n}")));
                }
                sizes.push(free.size().to_string());
            }
            Ok((true, format!("sizes {}", sizes.join(","))))
        });
        out.check(&b.name, "spectrum of the free algebra on two generators is D x D", || {
            let s = spec(&free_algebra(b, 2, budget)?, budget)?;
            let square = b.lattice.order().product(&b.lattice.order());
            Ok((s.poset.is_isomorphic(&square), format!("{} points", s.size())))
        });
        out.check(&b.name, "triangle identities on algebras of size <= 4 and sets of size <= 2", || {
            let lib = algebra_library(b, 4, budget)?;
            for a in &lib {
                if !spec_triangle(a, budget)? {
                    return Ok((false, format!("algebra of size {}", a.size())));
                }
            }
            for n in 0..=2 {
                if !observation_triangle(b, n, budget)? {
                    return Ok((false, format!("set of size {n}")));
                }
            }
            Ok((true, format!("{} algebras", lib.len())))
        });
        out.check(&b.name, "points separate the observations of a finite set, size <= 2", || {
            let mut iso = 0;
            for n in 0..=2 {
                let diag = counit_diagnostics(&opens(b, n, budget)?, budget)?;
                if !diag.injective {
                    return Ok((false, format!("set of size {n}")));
                }
                iso += diag.iso as usize;
            }
            Ok((true, format!("{iso}/3 counits onto")))
        });
        out.check(&b.name, "endomaps of the line at the terminal stage are polynomials", || {
            let line = free_algebra(b, 1, budget)?;
            let (_, homs) = stage_exponential(&line, &line, &DAlgebra::initial(b), budget)?;
            Ok((homs.len() == line.size(), format!("{} points", homs.len())))
        });
        out.check(&b.name, "points of the complement classifier are complemented elements of D", || {
            let s = spec(&complement_classifier(b, budget)?, budget)?;
            let comp = complemented_elements(&DAlgebra::initial(b))?;
            Ok((s.size() == comp.len() && s.poset.is_isomorphic(&Poset::antichain(comp.len())), format!("{} points", s.size())))
        });
    }
}

fn phoa(out: &mut Lines, bases: &[BaseLattice], budget: Budget) {
    for b in bases {
        out.check(&b.name, "one-variable polynomials are a0 or (a1 and x) with a0 <= a1, unique", || {
            let lib = algebra_library(b, 4, budget)?;
            for a in &lib {
                if !nf1_bijection(a, budget)?.pass {
                    return Ok((false, format!("algebra of size {}", a.size())));
                }
            }
            Ok((true, format!("{} algebras", lib.len())))
        });
        out.check(&b.name, "functions D -> A obeying the interpolation law are pairs a0 <= a1", || {
            let lib = algebra_library(b, 4, budget)?;
            for a in &lib {
                let l = a.lat();
                let pairs = (0..a.size()).flat_map(|x| (0..a.size()).map(move |y| (x, y))).filter(|&(x, y)| l.leq(x, y)).count();
                if phoa_functions(a, budget)?.len() != pairs {
                    return Ok((false, format!("algebra of size {}", a.size())));
                }
            }
            Ok((true, String::new()))
        });
        out.check(&b.name, "chain quotients of polynomial algebras are monotone tuples, n <= 3", || {
            let d = DAlgebra::initial(b);
            for n in 0..=3 {
                for dir in [Direction::Descending, Direction::Ascending] {
                    if !chain_quotient_iso(&d, n, dir, budget)?.pass {
                        return Ok((false, format!("n={n} {dir:?}")));
                    }
                }
            }
            Ok((true, String::new()))
        });
    }
}

fn lift(out: &mut Lines, bases: &[BaseLattice], budget: Budget) {
    for b in bases {
        let max = if b.size() == 2 { 3 } else { 1 };
        for (side, claim) in [
            (Side::Lift, "lift of the n-simplex is the (n+1)-simplex with a new bottom point"),
            (Side::Colift, "co-lift of the n-simplex is the (n+1)-simplex with a new top point"),
        ] {
            out.check(&b.name, claim, || {
                for n in 0..=max {
                    if !lift_simplex_check(b, n, side, budget)?.pass {
                        return Ok((false, format!("n={n}")));
                    }
                }
                Ok((true, format!("n <= {max}")))
            });
        }
        out.check(&b.name, "lift spectra agree with the relativised presentations", || {
            let lib = algebra_library(b, 3, budget)?;
            for a in &lib {
                let ls = lift_spec(a, budget)?;
                let cs = colift_spec(a, budget)?;
                if !ls.presentation_agrees || !cs.presentation_agrees {
                    return Ok((false, format!("algebra of size {}", a.size())));
                }
            }
            Ok((true, format!("{} algebras", lib.len())))
        });
        out.check(&b.name, "lift and co-lift algebras have one element per comparable pair", || {
            let d = DAlgebra::initial(b);
            let l = lift_algebra(&d)?;
            let c = colift_algebra(&d)?;
            let pairs =
                (0..d.size()).flat_map(|x| (0..d.size()).map(move |y| (x, y))).filter(|&(x, y)| d.lat().leq(x, y)).count();
            Ok((l.algebra.size() == pairs && c.algebra.size() == pairs, format!("{pairs} pairs")))
        });
    }
}

fn order_checks(out: &mut Lines, bases: &[BaseLattice], budget: Budget) {
    for b in bases {
        out.check(&b.name, "canonical and behavioural orders coincide on free algebras, n <= 2", || {
            for n in 0..=2 {
                if !orders(&free_algebra(b, n, budget)?, budget)?.coincide {
                    return Ok((false, format!("n={n}")));
                }
            }
            Ok((true, String::new()))
        });
        out.check(&b.name, "orders coincide whenever points separate elements, size <= 4", || {
            let lib = algebra_library(b, 4, budget)?;
            let mut separated = 0;
            for a in &lib {
                let diag = counit_diagnostics(a, budget)?;
                let o = orders(a, budget)?;
                if diag.injective {
                    separated += 1;
                    if !o.coincide {
                        return Ok((false, format!("algebra of size {}", a.size())));
                    }
                }
            }
            Ok((true, format!("{separated}/{} separated", lib.len())))
        });
        out.check(&b.name, "spectrum order is the pointwise order of homomorphisms", || {
            let a = free_algebra(b, 2, budget)?;
            let s = spec(&a, budget)?;
            let d = &b.lattice;
            let ok = (0..s.size()).all(|x| {
                (0..s.size()).all(|y| s.poset.leq(x, y) == (0..a.size()).all(|e| d.leq(s.homs[x].apply(e), s.homs[y].apply(e))))
            });
            Ok((ok && s.generator_order_agrees, String::new()))
        });
        out.check(&b.name, "homomorphisms D[x] -> D are the elements of D", || {
            let homs = algebra_homs(&free_algebra(b, 1, budget)?, &DAlgebra::initial(b), budget)?;
            Ok((homs.len() == b.size(), format!("{} homomorphisms", homs.len())))
        });
    }
}

const SUITE_DEPTH: usize = 6;
const INDUCTIVITY_DEPTH: usize = 4;

fn chain(out: &mut Lines, bases: &[BaseLattice], budget: Budget) {
    for b in bases {
        out.check(&b.name, "chain stages are monotone tuples with the universal property", || {
            let r = chain_completeness_check(b, SUITE_DEPTH, budget)?;
            let sizes: Vec<String> = r.stages.iter().map(|s| s.size.to_string()).collect();
            Ok((r.pass, format!("depth {SUITE_DEPTH}, sizes {}", sizes.join(","))))
        });
        let report = inductivity_check(b, INDUCTIVITY_DEPTH, budget);
        out.check(&b.name, "colimit inclusions repeat the last entry; colimit is eventually constant", || {
            let r = report.clone()?;
            let ok = r.inclusions_are_homs
                && r.inclusions_injective
                && r.formula == Some(InclusionFormula::RepeatLast)
                && r.colimit_verified
                && r.colimit_is_eventual;
            Ok((ok, format!("depth {INDUCTIVITY_DEPTH}, formula {:?}", r.formula)))
        });
        out.check(&b.name, "every colimit element reaches top and some monotone sequence is missing", || {
            let r = report.clone()?;
            let never: Vec<String> = r.outside_delta_omega.iter().take(2).map(|s| s.to_string()).collect();
            Ok((
                r.prediction_holds,
                format!(
                    "{} never reach top, e.g. {}; {} missing",
                    r.outside_delta_omega.len(),
                    never.join(" / "),
                    r.absent_from_colimit.len()
                ),
            ))
        });
    }
}

fn locality(out: &mut Lines, bases: &[BaseLattice], budget: Budget) {
    for b in bases {
        out.check(&b.name, "D[i,j] is the pullback of the two orderings over the diagonal", || {
            let r = simplicial_pullback(b, budget)?;
            Ok((r.pass, format!("limit size {}", r.limit_size)))
        });
        out.check(&b.name, "D[i<=j] is the limit of its edges over their endpoints", || {
            let r = coskeletal_limit(b, budget)?;
            Ok((r.pass, format!("limit size {}", r.limit_size)))
        });
        out.check(&b.name, "D[i<=j] is the pullback of D[i] and D[j] over D", || {
            let r = segal_pullback(b, budget)?;
            Ok((r.pass, format!("limit size {}", r.limit_size)))
        });
    }
}

fn site(out: &mut Lines, budget: Budget) {
    let small: Vec<Poset> = small_posets(8).map(|ps| ps.into_iter().filter(|p| p.size() <= 3).collect()).unwrap_or_default();
    for name in BUILTIN_COVERAGES {
        out.check(name, "presenting diagrams of the covers are colimits", || {
            let cov = builtin_coverage(name)?;
            let ok = cov.covers.iter().all(|c| c.presentation_holds() != Some(false));
            Ok((ok, format!("{} covers", cov.covers.len())))
        });
        out.check(name, "the generic model is a sheaf", || {
            let r = sheaf_check_rule(&PresheafRule::Generic, &builtin_coverage(name)?, budget)?;
            Ok((r.pass, String::new()))
        });
        out.check(name, "representables on posets of size <= 3 are sheaves", || {
            let cov = builtin_coverage(name)?;
            for x in &small {
                if !sheaf_check_rule(&PresheafRule::Representable(x.clone()), &cov, budget)?.pass {
                    return Ok((false, format!("{}-element poset", x.size())));
                }
            }
            Ok((true, format!("{} posets", small.len())))
        });
        out.check(name, "a two-valued constant presheaf is not a sheaf", || {
            let r = sheaf_check_rule(&PresheafRule::Constant(2), &builtin_coverage(name)?, budget)?;
            Ok((!r.pass, String::new()))
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors_round_trip() {
        for name in Selector::NAMES {
            assert_eq!(name.parse::<Selector>().unwrap().name(), name);
        }
        assert!("bogus".parse::<Selector>().is_err());
    }

    #[test]
    fn locality_group_passes() {
        let r = theorem_suite(Selector::Locality, Budget::default());
        assert_eq!(r.lines.len(), 12);
        assert!(r.pass(), "{}", r.render());
    }

    #[test]
    fn failing_check_is_reported() {
        let mut out = Lines { group: "x", lines: Vec::new() };
        out.check("s", "claim", || Err(LatspecError::internal("boom")));
        assert!(!out.lines[0].pass);
        assert!(out.lines[0].to_string().starts_with("FAIL x"));
    }
}
