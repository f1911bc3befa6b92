//! Acceptance criteria 1-12, one PASS/FAIL line each.
//!
//! Each criterion compares engine output against an oracle computed here by
//! brute force. Criterion 9 is a known failure: the chain colimit contains
//! sequences that never reach top (the all-bottom one for every base), and
//! every monotone sequence of the truncation is present, so the predicted
//! contrast does not occur. The process exits non-zero if the failing set
//! differs from [`KNOWN_FAILURES`].

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use latspec::algebra::{
    counit_diagnostics, free_algebra, observation_triangle, opens, spec, spec_triangle, unit_map, AlgebraHom, BaseLattice,
    DAlgebra,
};
use latspec::corpus::{algebra_library, distributive_lattices, small_posets};
use latspec::domain::{
    chain_completeness_check, colift_spec, complement_classifier, coskeletal_limit, inductivity_check, lift_simplex_check,
    lift_spec, segal_pullback, simplex_algebra, simplicial_pullback, Side,
};
use latspec::lattice::{birkhoff_check, DLattice};
use latspec::polynomial::{chain_quotient_iso, nf1_bijection, Direction};
use latspec::site::{builtin_coverage, sheaf_check_rule, PresheafRule, BUILTIN_COVERAGES};
use latspec::suite::{theorem_suite, Selector};
use latspec::{Budget, Poset};

const KNOWN_FAILURES: &[usize] = &[9];

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn b() -> Budget {
    Budget::default()
}

fn e(err: latspec::LatspecError) -> String {
    err.to_string()
}

/// Counts monotone maps `p -> q` by trying every function.
fn count_monotone(p: &Poset, q: &Poset) -> usize {
    let (n, m) = (p.size(), q.size());
    let mut count = 0;
    let mut f = vec![0usize; n];
    'outer: loop {
        if (0..n).all(|i| (0..n).all(|j| !p.leq(i, j) || q.leq(f[i], f[j]))) {
            count += 1;
        }
        for k in 0..n {
            f[k] += 1;
            if f[k] < m {
                continue 'outer;
            }
            f[k] = 0;
        }
        return count;
    }
}

/// Nondecreasing tuples of length `n` in `l`.
fn monotone_tuples(l: &DLattice, n: usize) -> usize {
    count_monotone(&Poset::chain(n), &l.order())
}

fn bases() -> Vec<BaseLattice> {
    BaseLattice::library()
}

fn criterion_1() -> Verdict {
    let lattices = distributive_lattices(8).map_err(e)?;
    let counts: Vec<usize> = (1..=8).map(|n| lattices.iter().filter(|l| l.size() == n).count()).collect();
    ensure(counts == [1, 1, 1, 2, 3, 5, 8, 15], || format!("corpus counts {counts:?}"))?;
    for l in &lattices {
        let n = l.size();
        let iso = birkhoff_check(l).map_err(e)?;
        // Join-irreducibles: not bottom, not a join of two strictly smaller elements.
        let ji: Vec<usize> = (0..n)
            .filter(|&a| a != l.bot() && !(0..n).any(|x| (0..n).any(|y| x != a && y != a && l.join(x, y) == a)))
            .collect();
        let engine: BTreeSet<usize> = iso.irreducibles.elements.iter().copied().collect();
        ensure(engine == ji.iter().copied().collect(), || format!("irreducibles differ on a {n}-element lattice"))?;
        let below = |a: usize| -> u64 { ji.iter().enumerate().filter(|&(_, &j)| l.leq(j, a)).fold(0, |m, (k, _)| m | 1 << k) };
        let downsets = (0u64..1 << ji.len())
            .filter(|&s| {
                (0..ji.len()).all(|k| s >> k & 1 == 0 || (0..ji.len()).all(|i| !l.leq(ji[i], ji[k]) || s >> i & 1 == 1))
            })
            .count();
        let images: BTreeSet<u64> = (0..n).map(below).collect();
        ensure(images.len() == n && downsets == n, || format!("{n} elements, {} images, {downsets} down-sets", images.len()))?;
        ensure((0..n).all(|x| (0..n).all(|y| l.leq(x, y) == (below(x) & !below(y) == 0))), || "order not reflected".into())?;
        ensure(iso.table.iter().collect::<BTreeSet<_>>().len() == n, || "engine table not bijective".into())?;
    }
    Ok(format!("{} lattices", lattices.len()))
}

/// Term functions `D^n -> D` restricted to `{bot, top}^n` (bit `i` of the
/// index sets coordinate `i` to top).
fn term_functions_on_cube(d: &DLattice, n: usize) -> BTreeSet<Vec<usize>> {
    let points: Vec<Vec<usize>> = (0..d.size().pow(n as u32))
        .map(|mut p| {
            let mut v = vec![0; n];
            for i in (0..n).rev() {
                v[i] = p % d.size();
                p /= d.size();
            }
            v
        })
        .collect();
    let mut known: Vec<Vec<usize>> = (0..d.size()).map(|c| vec![c; points.len()]).collect();
    known.extend((0..n).map(|i| points.iter().map(|p| p[i]).collect()));
    let mut seen: BTreeSet<Vec<usize>> = known.iter().cloned().collect();
    let mut i = 0;
    while i < known.len() {
        for j in 0..i {
            for op in [0, 1] {
                let f: Vec<usize> = known[i]
                    .iter()
                    .zip(&known[j])
                    .map(|(&x, &y)| if op == 0 { d.meet(x, y) } else { d.join(x, y) })
                    .collect();
                if seen.insert(f.clone()) {
                    known.push(f);
                }
            }
        }
        i += 1;
    }
    let cube_index = |mask: usize| -> usize {
        (0..n).fold(0, |acc, i| acc * d.size() + if mask >> i & 1 == 1 { d.top() } else { d.bot() })
    };
    seen.iter().map(|f| (0..1usize << n).map(|m| f[cube_index(m)]).collect()).collect()
}

fn criterion_2() -> Verdict {
    let mut sizes = Vec::new();
    for name in ["2", "3-chain", "2x2"] {
        let base = BaseLattice::builtin(name).unwrap();
        let d = DAlgebra::initial(&base);
        for n in 0..=3 {
            let free = free_algebra(&base, n, b()).map_err(e)?;
            let oracle = term_functions_on_cube(&base.lattice, n);
            let evals: Vec<AlgebraHom> = (0..1usize << n)
                .map(|mask| {
                    let imgs: Vec<usize> =
                        (0..n).map(|i| if mask >> i & 1 == 1 { d.lat().top() } else { d.lat().bot() }).collect();
                    AlgebraHom::from_generator_images(&free, &d, &imgs)
                })
                .collect::<Result<_, _>>()
                .map_err(e)?;
            let tables: BTreeSet<Vec<usize>> = (0..free.size()).map(|x| evals.iter().map(|h| h.apply(x)).collect()).collect();
            ensure(tables.len() == free.size() && tables == oracle, || {
                format!("{name} n={n}: free {} vs term closure {}", free.size(), oracle.len())
            })?;
            sizes.push(free.size());
        }
    }
    ensure(sizes[1] == 3 && sizes[2] == 6, || format!("sizes over 2: {:?}", &sizes[..4]))?;
    Ok(format!("sizes {sizes:?}"))
}

/// Every homomorphism `a -> D`, found by trying all functions.
fn brute_force_points(a: &DAlgebra) -> BTreeSet<Vec<usize>> {
    let (l, d) = (a.lat(), &a.base().lattice);
    let n = a.size();
    let mut out = BTreeSet::new();
    let mut f = vec![0usize; n];
    'outer: loop {
        let hom = (0..d.size()).all(|c| f[a.eta(c)] == c)
            && (0..n).all(|x| (0..n).all(|y| f[l.meet(x, y)] == d.meet(f[x], f[y]) && f[l.join(x, y)] == d.join(f[x], f[y])));
        if hom {
            out.insert(f.clone());
        }
        for k in 0..n {
            f[k] += 1;
            if f[k] < d.size() {
                continue 'outer;
            }
            f[k] = 0;
        }
        return out;
    }
}

fn criterion_3() -> Verdict {
    let mut algebras = 0;
    for base in bases() {
        let d = &base.lattice;
        for a in algebra_library(&base, 6, b()).map_err(e)? {
            let diag = counit_diagnostics(&a, b()).map_err(e)?;
            let points: BTreeSet<Vec<usize>> = diag.spec.homs.iter().map(|h| h.table.clone()).collect();
            ensure(points == brute_force_points(&a), || format!("points of an algebra of size {} over {}", a.size(), base.name))?;
            ensure(spec_triangle(&a, b()).map_err(e)?, || format!("spec triangle fails over {}", base.name))?;
            // Counit followed by the projection at point k is point k.
            let m = diag.spec.size();
            for (k, x) in diag.spec.homs.iter().enumerate() {
                for el in 0..a.size() {
                    let f = diag.map.apply(el);
                    let digit = f / d.size().pow((m - 1 - k) as u32) % d.size();
                    ensure(digit == x.apply(el), || format!("point {k} of an algebra of size {}", a.size()))?;
                }
            }
            algebras += 1;
        }
        for n in 0..=3 {
            ensure(observation_triangle(&base, n, b()).map_err(e)?, || format!("observation triangle n={n} over {}", base.name))?;
            let obs = opens(&base, n, b()).map_err(e)?;
            let (sos, unit) = unit_map(&base, n, b()).map_err(e)?;
            // The unit at x is the projection onto coordinate x.
            let ok = (0..obs.size()).all(|f| {
                (0..n).all(|x| sos.homs[unit[x]].apply(f) == f / d.size().pow((n - 1 - x) as u32) % d.size())
            });
            ensure(obs.size() == d.size().pow(n as u32) && ok, || format!("unit n={n} over {}", base.name))?;
        }
    }
    Ok(format!("{algebras} algebras, sets of size <= 3"))
}

fn criterion_4() -> Verdict {
    let mut count = 0;
    for base in bases() {
        for a in algebra_library(&base, 6, b()).map_err(e)? {
            let r = nf1_bijection(&a, b()).map_err(e)?;
            let l = a.lat();
            let pairs = (0..a.size()).flat_map(|x| (0..a.size()).map(move |y| (x, y))).filter(|&(x, y)| l.leq(x, y)).count();
            ensure(r.pass && r.pairs == pairs && r.extension_size == pairs, || {
                format!("{} size {}: {} vs {pairs}", base.name, a.size(), r.extension_size)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} algebras"))
}

fn criterion_5() -> Verdict {
    for base in bases() {
        let d = DAlgebra::initial(&base);
        for n in 0..=3 {
            for dir in [Direction::Descending, Direction::Ascending] {
                let r = chain_quotient_iso(&d, n, dir, b()).map_err(e)?;
                let expected = monotone_tuples(&base.lattice, n + 1);
                ensure(r.pass && r.quotient_size == expected, || {
                    format!("{} n={n} {dir:?}: {} vs {expected}", base.name, r.quotient_size)
                })?;
            }
        }
    }
    Ok("n <= 3, both directions".into())
}

fn criterion_6() -> Verdict {
    let base = BaseLattice::two();
    for n in 0..=4 {
        let simplex = simplex_algebra(&base, n, Direction::Descending, b()).map_err(e)?;
        let next = spec(&simplex_algebra(&base, n + 1, Direction::Descending, b()).map_err(e)?, b()).map_err(e)?;
        // Over 2 the n-simplex has n + 1 points in a chain.
        ensure(next.poset.is_isomorphic(&Poset::chain(n + 2)), || format!("simplex {} is not a chain", n + 1))?;
        let l = lift_spec(&simplex, b()).map_err(e)?;
        let c = colift_spec(&simplex, b()).map_err(e)?;
        ensure(l.poset.is_isomorphic(&next.poset) && c.poset.is_isomorphic(&next.poset), || format!("n={n}"))?;
        for side in [Side::Lift, Side::Colift] {
            ensure(lift_simplex_check(&base, n, side, b()).map_err(e)?.pass, || format!("n={n} {side:?}"))?;
        }
    }
    Ok("n <= 4".into())
}

fn criterion_7() -> Verdict {
    let mut sizes = Vec::new();
    for base in bases() {
        let order = base.lattice.order();
        let square = Poset::chain(2).product(&Poset::chain(2));
        // Elements of D[i,j] are monotone maps from the square; of D[i<=j],
        // monotone triples.
        let whole = count_monotone(&square, &order);
        let ordered = count_monotone(&Poset::chain(3), &order);
        let s = simplicial_pullback(&base, b()).map_err(e)?;
        let c = coskeletal_limit(&base, b()).map_err(e)?;
        let g = segal_pullback(&base, b()).map_err(e)?;
        ensure(s.pass && s.limit_size == whole, || format!("{} simplicial {} vs {whole}", base.name, s.limit_size))?;
        ensure(c.pass && c.limit_size == ordered, || format!("{} coskeletal {} vs {ordered}", base.name, c.limit_size))?;
        ensure(g.pass && g.limit_size == ordered, || format!("{} Segal {} vs {ordered}", base.name, g.limit_size))?;
        sizes.push(format!("{}:{whole}/{ordered}", base.name));
    }
    Ok(sizes.join(" "))
}

fn criterion_8() -> Verdict {
    for base in bases() {
        let r = chain_completeness_check(&base, 8, b()).map_err(e)?;
        ensure(r.pass, || format!("{} fails", base.name))?;
        for st in &r.stages {
            let expected = monotone_tuples(&base.lattice, st.stage);
            ensure(st.size == expected, || format!("{} stage {}: {} vs {expected}", base.name, st.stage, st.size))?;
        }
        ensure(!r.universal.is_empty() && r.universal.iter().all(|u| u.pass), || format!("{} universal", base.name))?;
    }
    Ok("depth 8, four bases".into())
}

fn criterion_9() -> Verdict {
    let mut notes = Vec::new();
    let mut holds = true;
    for base in bases() {
        let r = inductivity_check(&base, 4, b()).map_err(e)?;
        ensure(r.colimit_verified, || format!("{} colimit not verified", base.name))?;
        let every_reaches_top = r.outside_delta_omega.is_empty();
        let some_missing = !r.absent_from_colimit.is_empty();
        holds &= every_reaches_top && some_missing;
        let first = r.outside_delta_omega.first().map(|s| s.to_string()).unwrap_or_default();
        notes.push(format!(
            "{}: {} never reach top (e.g. {first}), {} missing",
            base.name,
            r.outside_delta_omega.len(),
            r.absent_from_colimit.len()
        ));
    }
    if holds {
        Ok(notes.join("; "))
    } else {
        Err(notes.join("; "))
    }
}

/// Up-sets of `p` as bitmasks.
fn upsets(p: &Poset) -> Vec<u64> {
    (0u64..1 << p.size())
        .filter(|&s| (0..p.size()).all(|i| s >> i & 1 == 0 || (0..p.size()).all(|j| !p.leq(i, j) || s >> j & 1 == 1)))
        .collect()
}

fn criterion_10() -> Verdict {
    for name in BUILTIN_COVERAGES {
        let cov = builtin_coverage(name).map_err(e)?;
        ensure(sheaf_check_rule(&PresheafRule::Generic, &cov, b()).map_err(e)?.pass, || format!("generic fails {name}"))?;
        // Brute force: up-sets of the target against tuples of up-sets of the
        // members that agree wherever two members hit the same point.
        for c in &cov.covers {
            let target = upsets(&c.target);
            let member_sets: Vec<Vec<u64>> = c.family.iter().map(|f| upsets(&f.dom)).collect();
            let mut matching = 0;
            let mut idx = vec![0usize; c.family.len()];
            'tuples: loop {
                let agrees = (0..c.family.len()).all(|a| {
                    (0..c.family.len()).all(|bi| {
                        let (f, g) = (&c.family[a], &c.family[bi]);
                        (0..f.dom.size()).all(|x| {
                            (0..g.dom.size()).all(|y| {
                                f.apply(x) != g.apply(y)
                                    || (member_sets[a][idx[a]] >> x & 1) == (member_sets[bi][idx[bi]] >> y & 1)
                            })
                        })
                    })
                });
                matching += agrees as usize;
                for k in 0..idx.len() {
                    idx[k] += 1;
                    if idx[k] < member_sets[k].len() {
                        continue 'tuples;
                    }
                    idx[k] = 0;
                }
                break;
            }
            let restrict = |u: u64| -> Vec<u64> {
                c.family.iter().map(|f| (0..f.dom.size()).fold(0, |m, x| m | ((u >> f.apply(x) & 1) << x))).collect()
            };
            let images: BTreeSet<Vec<u64>> = target.iter().map(|&u| restrict(u)).collect();
            ensure(matching == target.len() && images.len() == target.len(), || {
                format!("{name}: {} sections, {matching} matching families", target.len())
            })?;
        }
    }
    let small: Vec<Poset> = small_posets(8).map_err(e)?.into_iter().filter(|p| p.size() <= 3).collect();
    ensure(small.len() == 9, || format!("{} posets of size <= 3", small.len()))?;
    for name in BUILTIN_COVERAGES {
        let cov = builtin_coverage(name).map_err(e)?;
        for x in &small {
            let r = sheaf_check_rule(&PresheafRule::Representable(x.clone()), &cov, b()).map_err(e)?;
            ensure(r.pass, || format!("representable on a {}-element poset fails {name}", x.size()))?;
        }
    }
    Ok("generic and 9 representables, four coverages".into())
}

fn criterion_11() -> Verdict {
    let base = BaseLattice::two();
    let s = spec(&complement_classifier(&base, b()).map_err(e)?, b()).map_err(e)?;
    let d = &base.lattice;
    let oracle = (0..d.size())
        .flat_map(|x| (0..d.size()).map(move |y| (x, y)))
        .filter(|&(x, y)| d.meet(x, y) == d.bot() && d.join(x, y) == d.top())
        .count();
    ensure(s.size() == 2 && oracle == 2, || format!("{} points, {oracle} complemented pairs", s.size()))?;
    ensure(!s.poset.comparable(0, 1), || "points are comparable".into())?;
    Ok("2 incomparable points".into())
}

fn criterion_12() -> Verdict {
    let first = theorem_suite(Selector::All, b()).render();
    let second = theorem_suite(Selector::All, b()).render();
    ensure(first == second, || "reports differ".into())?;
    Ok(format!("{} lines, {} bytes", first.lines().count(), first.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("Birkhoff round trip on distributive lattices of size <= 8", criterion_1),
        ("free algebras agree with the term-closure oracle", criterion_2),
        ("triangle identities for spectrum and observations", criterion_3),
        ("one-variable polynomial normal form", criterion_4),
        ("chain quotients are monotone tuples", criterion_5),
        ("lifted simplices over 2", criterion_6),
        ("simplicial, 1-coskeletal and Segal limit diagrams", criterion_7),
        ("chain completeness at depth 8", criterion_8),
        ("colimit of chain stages reaches top, some sequence missing", criterion_9),
        ("generic model and representables are sheaves", criterion_10),
        ("complement classifier has two incomparable points", criterion_11),
        ("theorem suite report is deterministic", criterion_12),
    ];
    let start = Instant::now();
    let mut failures = Vec::new();
    for (k, (title, f)) in criteria.iter().enumerate() {
        let k = k + 1;
        let t = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let (tag, detail) = match &verdict {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        if verdict.is_err() {
            failures.push(k);
        }
        println!("criterion {k:>2} {tag} {title} [{detail}] ({:.2}s)", t.elapsed().as_secs_f64());
    }
    println!("{}/12 criteria passed in {:.2}s", 12 - failures.len(), start.elapsed().as_secs_f64());
    if failures == KNOWN_FAILURES {
        println!("failing criteria match the known failures {KNOWN_FAILURES:?}");
        ExitCode::SUCCESS
    } else {
        println!("failing criteria {failures:?} differ from the known failures {KNOWN_FAILURES:?}");
        ExitCode::FAILURE
    }
}
