//! Command-line front end: argument parsing, file loading and report
//! rendering. [`run`] is the whole program minus process I/O.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use latspec::algebra::{
    counit_diagnostics, free_algebra, opens, present, present_via_free, spec, BaseLattice, DAlgebra, Presentation, Term,
};
use latspec::domain::{
    chain_completeness_check, colift_algebra, colift_spec, inductivity_check, lift_algebra, lift_simplex_check, lift_spec,
    omega_enumerate, OmegaKind, Side,
};
use latspec::lattice::DLattice;
use latspec::polynomial::{chain_quotient_iso, poly_nf1, poly_nfn, Direction, Extension};
use latspec::site::{builtin_coverage, parse_coverage, sheaf_check_rule, Coverage, PresheafRule};
use latspec::suite::{theorem_suite, Selector};
use latspec::{Budget, LatspecError, Poset};

/// Exit status for a successful command or a passing check.
pub const EXIT_PASS: i32 = 0;
/// Exit status for a failed verification.
pub const EXIT_FAIL: i32 = 1;
/// Exit status for usage, parse, and budget errors.
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "latspec", version, about = "Finite distributive-lattice algebras, spectra and sites")]
struct Cli {
    /// Maximum candidates per enumeration (default: LATSPEC_BUDGET or 10000000).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct BaseArg {
    /// Base lattice: a lattice file or one of 2, 3-chain, 2x2, 4-chain.
    #[arg(long, default_value = "2")]
    base: String,
}

#[derive(Args, Debug, Clone)]
struct AlgebraArg {
    /// Presentation file; without it the base itself is used.
    #[arg(long)]
    pres: Option<PathBuf>,
    /// Base lattice, overriding the presentation's `base` line.
    #[arg(long)]
    base: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct DepthArg {
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    depth: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The free algebra on n generators.
    Free {
        #[command(flatten)]
        base: BaseArg,
        #[arg(short, long, default_value_t = 1)]
        n: usize,
    },
    /// The algebra presented by a presentation file, cross-checked against a
    /// quotient of the free algebra.
    Present {
        #[command(flatten)]
        alg: AlgebraArg,
    },
    /// Points of an algebra and their order.
    Spec {
        #[command(flatten)]
        alg: AlgebraArg,
    },
    /// The algebra of observations of an n-element set.
    Opens {
        #[command(flatten)]
        base: BaseArg,
        #[arg(short, long, default_value_t = 1)]
        n: usize,
    },
    /// Whether the evaluation map into observations of the points is an
    /// isomorphism.
    QcCheck {
        #[command(flatten)]
        alg: AlgebraArg,
    },
    /// Normal form of a polynomial over an algebra.
    Normalize {
        #[command(flatten)]
        alg: AlgebraArg,
        /// Term over the generators and the variables, e.g. `(join a (meet x top))`.
        #[arg(long)]
        term: String,
        /// Comma-separated variable names.
        #[arg(long, value_delimiter = ',', default_value = "x")]
        vars: Vec<String>,
    },
    /// Checks the monotone-tuple description of a chain quotient.
    DiagramCheck {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(short, long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Dir::Descending)]
        direction: Dir,
    },
    /// Lift or co-lift of an algebra, or of a simplex with --simplex.
    Lift {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long, value_enum, default_value_t = SideArg::Lift)]
        side: SideArg,
        /// Compare the lifted n-simplex with the (n+1)-simplex instead.
        #[arg(long)]
        simplex: Option<usize>,
    },
    /// Eventually constant monotone sequences.
    Omega {
        #[command(flatten)]
        base: BaseArg,
        #[command(flatten)]
        depth: DepthArg,
        #[arg(long, value_enum, default_value_t = Kind::Omega)]
        kind: Kind,
    },
    /// Chain stages as monotone tuples, their limit and universal property.
    LimitCheck {
        #[command(flatten)]
        base: BaseArg,
        #[command(flatten)]
        depth: DepthArg,
    },
    /// The colimit of the chain stages against the eventually-top sequences.
    ColimitCheck {
        #[command(flatten)]
        base: BaseArg,
        #[command(flatten)]
        depth: DepthArg,
    },
    /// Sheaf condition of a presheaf for a coverage.
    SheafCheck {
        /// generic, constant:<n>, or representable:<poset-file>.
        #[arg(long)]
        presheaf: String,
        /// NT, L, SL, OneCS, or a coverage file.
        #[arg(long)]
        coverage: String,
    },
    /// DOT Hasse diagram of a poset, a lattice, or the points of an algebra.
    Dot {
        #[arg(long, conflicts_with_all = ["lattice", "pres"])]
        poset: Option<PathBuf>,
        #[arg(long, conflicts_with = "pres")]
        lattice: Option<String>,
        #[arg(long)]
        pres: Option<PathBuf>,
        #[arg(long)]
        base: Option<String>,
    },
    /// The verification battery over the built-in base lattices.
    Suite {
        #[arg(default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(Selector::NAMES))]
        selector: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Dir {
    Descending,
    Ascending,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SideArg {
    Lift,
    Colift,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Omega,
    Omegabar,
}

/// A command's report and whether its checks passed.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn info(text: String) -> Self {
        Outcome { text, pass: true }
    }

    fn verdict(mut text: String, pass: bool) -> Self {
        text.push_str(if pass { "PASS\n" } else { "FAIL\n" });
        Outcome { text, pass }
    }
}

/// Failure to produce a report at all.
#[derive(Debug)]
enum CliError {
    Engine(LatspecError),
    /// A file-level error, reported with its path.
    File(PathBuf, LatspecError),
    Io(String),
}

impl From<LatspecError> for CliError {
    fn from(e: LatspecError) -> Self {
        CliError::Engine(e)
    }
}

impl CliError {
    fn message(&self) -> String {
        match self {
            CliError::Engine(e) => format!("error: {e}"),
            CliError::File(p, e) => format!("error: {}: {e}", p.display()),
            CliError::Io(m) => format!("error: {m}"),
        }
    }

    /// Failed internal consistency checks are verification failures; all
    /// other errors are usage errors.
    fn code(&self) -> i32 {
        match self {
            CliError::Engine(LatspecError::Internal(_)) | CliError::File(_, LatspecError::Internal(_)) => EXIT_FAIL,
            _ => EXIT_ERROR,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Runs one command line (including the program name) and returns the exit
/// status with the text to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
            return (code, e.render().to_string());
        }
    };
    let budget = cli.budget.map(Budget).unwrap_or_else(Budget::from_env);
    let (code, text) = match execute(&cli.command, budget) {
        Ok(o) => (if o.pass { EXIT_PASS } else { EXIT_FAIL }, o.text),
        Err(e) => (e.code(), format!("{}\n", e.message())),
    };
    match &cli.out {
        Some(path) => match fs::write(path, &text) {
            Ok(()) => (code, format!("wrote {}\n", path.display())),
            Err(e) => (EXIT_ERROR, format!("error: cannot write {}: {e}\n", path.display())),
        },
        None => (code, text),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

/// A lattice file, or a built-in base name when no such file exists.
fn load_base(arg: &str, relative_to: Option<&Path>) -> CliResult<BaseLattice> {
    let path = match relative_to {
        Some(dir) if Path::new(arg).is_relative() => dir.join(arg),
        _ => PathBuf::from(arg),
    };
    if path.is_file() {
        let text = read(&path)?;
        let lattice = DLattice::parse(&text).map_err(|e| CliError::File(path.clone(), e))?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| arg.to_string());
        return Ok(BaseLattice::new(name, lattice));
    }
    BaseLattice::builtin(arg).ok_or_else(|| {
        CliError::Io(format!("no lattice file `{}` and no built-in base of that name (2, 3-chain, 2x2, 4-chain)", path.display()))
    })
}

fn load_poset(path: &Path) -> CliResult<Poset> {
    Poset::parse(&read(path)?).map_err(|e| CliError::File(path.to_path_buf(), e))
}

fn load_presentation(path: &Path, base: Option<&str>) -> CliResult<Presentation> {
    let text = read(path)?;
    let dir = path.parent().map(Path::to_path_buf);
    let override_base = match base {
        Some(b) => Some(load_base(b, None)?),
        None => None,
    };
    let mut inner: Option<CliError> = None;
    let mut resolve = |name: &str| -> latspec::Result<BaseLattice> {
        if let Some(b) = &override_base {
            return Ok(b.clone());
        }
        load_base(name, dir.as_deref()).map_err(|e| {
            let msg = e.message();
            inner = Some(e);
            LatspecError::invalid(msg)
        })
    };
    let parsed = Presentation::parse(&text, &mut resolve);
    match parsed {
        Ok(p) => Ok(p),
        Err(_) if inner.is_some() => Err(inner.take().expect("checked")),
        Err(e) => Err(CliError::File(path.to_path_buf(), e)),
    }
}

/// The presented algebra, or the base itself when no presentation is given.
fn load_algebra(arg: &AlgebraArg, budget: Budget) -> CliResult<(DAlgebra, Vec<String>)> {
    match &arg.pres {
        Some(path) => {
            let pres = load_presentation(path, arg.base.as_deref())?;
            let gens = pres.gens.clone();
            Ok((present(&pres, budget)?, gens))
        }
        None => {
            let base = load_base(arg.base.as_deref().unwrap_or("2"), None)?;
            Ok((DAlgebra::initial(&base), Vec::new()))
        }
    }
}

fn execute(cmd: &Command, budget: Budget) -> CliResult<Outcome> {
    match cmd {
        Command::Free { base, n } => {
            let base = load_base(&base.base, None)?;
            let a = free_algebra(&base, *n, budget)?;
            let mut s = format!("free algebra over {} on {n} generators\n", base.name);
            describe_algebra(&mut s, &a)?;
            Ok(Outcome::info(s))
        }
        Command::Present { alg } => {
            let path = alg.pres.as_ref().ok_or_else(|| CliError::Io("present needs --pres".into()))?;
            let pres = load_presentation(path, alg.base.as_deref())?;
            let a = present(&pres, budget)?;
            let b = present_via_free(&pres, budget)?;
            let mut s = format!("algebra presented over {} by {} generators and {} relations\n", pres.base.name, pres.gens.len(), pres.rels.len());
            describe_algebra(&mut s, &a)?;
            let agree = a.is_isomorphic(&b);
            writeln!(s, "quotient of the free algebra agrees: {}", yes(agree)).ok();
            Ok(Outcome::verdict(s, agree))
        }
        Command::Spec { alg } => {
            let (a, names) = load_algebra(alg, budget)?;
            let sp = spec(&a, budget)?;
            let gens = a.presented()?.gen_elems.clone();
            let mut s = format!("spectrum: {} points\n", sp.size());
            for (k, h) in sp.homs.iter().enumerate() {
                let images: Vec<String> =
                    gens.iter().enumerate().map(|(g, &e)| format!("{}={}", gen_name(&names, g), h.apply(e))).collect();
                writeln!(s, "point {k}: {}", if images.is_empty() { "-".to_string() } else { images.join(" ") }).ok();
            }
            s.push_str(&sp.poset.to_text());
            writeln!(s, "order agrees with generator values: {}", yes(sp.generator_order_agrees)).ok();
            Ok(Outcome::info(s))
        }
        Command::Opens { base, n } => {
            let base = load_base(&base.base, None)?;
            let a = opens(&base, *n, budget)?;
            let mut s = format!("observations of a {n}-element set over {}\n", base.name);
            describe_algebra(&mut s, &a)?;
            Ok(Outcome::info(s))
        }
        Command::QcCheck { alg } => {
            let (a, _) = load_algebra(alg, budget)?;
            let d = counit_diagnostics(&a, budget)?;
            let mut s = String::new();
            writeln!(s, "algebra size {}", a.size()).ok();
            writeln!(s, "points {}", d.spec.size()).ok();
            writeln!(s, "observations of the points {}", d.observations.size()).ok();
            writeln!(s, "evaluation injective: {}", yes(d.injective)).ok();
            writeln!(s, "evaluation bijective: {}", yes(d.iso)).ok();
            Ok(Outcome::verdict(s, d.iso))
        }
        Command::Normalize { alg, term, vars } => normalize(alg, term, vars, budget),
        Command::DiagramCheck { alg, n, direction } => {
            let (a, _) = load_algebra(alg, budget)?;
            let dir = match direction {
                Dir::Descending => Direction::Descending,
                Dir::Ascending => Direction::Ascending,
            };
            let r = chain_quotient_iso(&a, *n, dir, budget)?;
            let mut s = format!("chain quotient of A[x1..x{n}], {dir:?} tuples\n");
            writeln!(s, "tuples {}", r.tuples).ok();
            writeln!(s, "quotient size {}", r.quotient_size).ok();
            writeln!(s, "bijective: {}", yes(r.bijective)).ok();
            writeln!(s, "preserves operations: {}", yes(r.preserves_operations)).ok();
            writeln!(s, "nestings agree: {}", yes(r.nestings_agree)).ok();
            writeln!(s, "faces commute: {}", yes(r.faces_commute)).ok();
            Ok(Outcome::verdict(s, r.pass))
        }
        Command::Lift { alg, side, simplex } => {
            let side = match side {
                SideArg::Lift => Side::Lift,
                SideArg::Colift => Side::Colift,
            };
            match simplex {
                Some(n) => {
                    let base = match &alg.base {
                        Some(b) => load_base(b, None)?,
                        None => load_algebra(alg, budget)?.0.base().clone(),
                    };
                    let r = lift_simplex_check(&base, *n, side, budget)?;
                    let mut s = format!("{side:?} of the {n}-simplex over {}\n", base.name);
                    writeln!(s, "lifted points {}", r.lift_size).ok();
                    writeln!(s, "{}-simplex points {}", n + 1, r.simplex_size).ok();
                    writeln!(s, "isomorphic: {}", yes(r.iso)).ok();
                    writeln!(s, "unit is the expected embedding: {}", yes(r.unit_embedding)).ok();
                    writeln!(s, "relativised presentation agrees: {}", yes(r.presentation_agrees)).ok();
                    Ok(Outcome::verdict(s, r.pass))
                }
                None => {
                    let (a, _) = load_algebra(alg, budget)?;
                    let (la, ls) = match side {
                        Side::Lift => (lift_algebra(&a)?, lift_spec(&a, budget)?),
                        Side::Colift => (colift_algebra(&a)?, colift_spec(&a, budget)?),
                    };
                    let mut s = format!("{side:?} of an algebra of size {}\n", a.size());
                    writeln!(s, "algebra size {}", la.algebra.size()).ok();
                    writeln!(s, "points {}", ls.size()).ok();
                    for (k, (i, h)) in ls.points.iter().enumerate() {
                        writeln!(s, "point {k}: i={i} h={h:?}").ok();
                    }
                    s.push_str(&ls.poset.to_text());
                    writeln!(s, "relativised presentation agrees: {}", yes(ls.presentation_agrees)).ok();
                    Ok(Outcome::verdict(s, ls.presentation_agrees))
                }
            }
        }
        Command::Omega { base, depth, kind } => {
            let base = load_base(&base.base, None)?;
            let which = match kind {
                Kind::Omega => OmegaKind::Omega,
                Kind::Omegabar => OmegaKind::OmegaBar,
            };
            let seqs = omega_enumerate(&base.lattice, depth.depth as usize, which);
            let mut s = format!("{which:?} sequences over {} with prefix length at most {}: {}\n", base.name, depth.depth, seqs.len());
            for q in &seqs {
                writeln!(s, "{q}").ok();
            }
            Ok(Outcome::info(s))
        }
        Command::LimitCheck { base, depth } => {
            let base = load_base(&base.base, None)?;
            let r = chain_completeness_check(&base, depth.depth as usize, budget)?;
            let mut s = format!("chain stages over {} up to depth {}\n", base.name, r.depth);
            for st in &r.stages {
                writeln!(
                    s,
                    "stage {}: size {} tuples {} bijective {} operations {} forgets-last {} limit {}",
                    st.stage,
                    st.size,
                    st.sequences,
                    yes(st.bijective),
                    yes(st.preserves_operations),
                    yes(st.transition_forgets_last),
                    yes(st.limit_verified)
                )
                .ok();
            }
            writeln!(s, "decomposition holds: {}", yes(r.decomposition_holds)).ok();
            for u in &r.universal {
                writeln!(
                    s,
                    "universal property into {}: tuples {} formula {} sequences {} generators {} factors {}",
                    u.algebra,
                    yes(u.homs_are_tuples),
                    yes(u.homs_follow_formula),
                    u.sequences,
                    yes(u.generators_hit),
                    yes(u.factors_through_stage)
                )
                .ok();
            }
            Ok(Outcome::verdict(s, r.pass))
        }
        Command::ColimitCheck { base, depth } => {
            let base = load_base(&base.base, None)?;
            let r = inductivity_check(&base, depth.depth as usize, budget)?;
            let sizes: Vec<String> = r.sizes.iter().map(|x| x.to_string()).collect();
            let mut s = format!("colimit of chain stages over {} up to depth {}\n", base.name, r.depth);
            writeln!(s, "stage sizes {}", sizes.join(" ")).ok();
            writeln!(s, "inclusions are homomorphisms: {}", yes(r.inclusions_are_homs)).ok();
            writeln!(s, "inclusions injective: {}", yes(r.inclusions_injective)).ok();
            writeln!(s, "inclusion formula: {:?}", r.formula).ok();
            writeln!(s, "colimit verified: {}", yes(r.colimit_verified)).ok();
            writeln!(s, "colimit elements are eventually constant: {}", yes(r.colimit_is_eventual)).ok();
            writeln!(s, "colimit elements never reaching top: {}", r.outside_delta_omega.len()).ok();
            for q in &r.outside_delta_omega {
                writeln!(s, "  {q}").ok();
            }
            writeln!(s, "monotone sequences missing from the colimit: {}", r.absent_from_colimit.len()).ok();
            for q in &r.absent_from_colimit {
                writeln!(s, "  {q}").ok();
            }
            writeln!(s, "every element reaches top and some sequence is missing: {}", yes(r.prediction_holds)).ok();
            Ok(Outcome::verdict(s, r.prediction_holds))
        }
        Command::SheafCheck { presheaf, coverage } => {
            let rule = parse_presheaf(presheaf)?;
            let cov = load_coverage(coverage)?;
            let r = sheaf_check_rule(&rule, &cov, budget)?;
            let mut s = format!("presheaf {} on coverage {}\n", r.presheaf, r.coverage);
            for (k, c) in r.covers.iter().enumerate() {
                writeln!(
                    s,
                    "cover {k}: target {} members {} sections {} matching families {} injective {} bijective {}",
                    c.target_size,
                    c.members,
                    c.sections,
                    c.matching_families,
                    yes(c.injective),
                    yes(c.bijective)
                )
                .ok();
            }
            Ok(Outcome::verdict(s, r.pass))
        }
        Command::Dot { poset, lattice, pres, base } => {
            let p = match (poset, lattice, pres) {
                (Some(path), _, _) => load_poset(path)?,
                (_, Some(l), _) => load_base(l, None)?.lattice.order(),
                (_, _, Some(_)) => {
                    let arg = AlgebraArg { pres: pres.clone(), base: base.clone() };
                    spec(&load_algebra(&arg, budget)?.0, budget)?.poset
                }
                _ => return Err(CliError::Io("dot needs one of --poset, --lattice, --pres".into())),
            };
            Ok(Outcome::info(p.hasse_dot()))
        }
        Command::Suite { selector } => {
            let sel: Selector = selector.parse()?;
            let r = theorem_suite(sel, budget);
            Ok(Outcome { text: r.render(), pass: r.pass() })
        }
    }
}

fn normalize(alg: &AlgebraArg, term: &str, var_names: &[String], budget: Budget) -> CliResult<Outcome> {
    let (a, gens) = load_algebra(alg, budget)?;
    if let Some(clash) = var_names.iter().find(|v| gens.contains(v)) {
        return Err(CliError::Io(format!("variable `{clash}` is also a generator; pick another name with --vars")));
    }
    let vars = var_names.len();
    let names: Vec<String> = gens.iter().chain(var_names).cloned().collect();
    let t = Term::parse(term, &names, 1)?;
    let ext = Extension::new(&a, vars, budget)?;
    let render = |e: usize| -> CliResult<String> { Ok(a.element_term(e)?.render(&gens)) };
    let mut s = format!("polynomial {} over an algebra of size {}\n", t.render(&names), a.size());
    if vars == 1 {
        let nf = poly_nf1(&a, &ext, &t)?;
        writeln!(s, "a0 = {} (element {})", render(nf.a0)?, nf.a0).ok();
        writeln!(s, "a1 = {} (element {})", render(nf.a1)?, nf.a1).ok();
        writeln!(s, "normal form: (join a0 (meet {} a1))", var_names[0]).ok();
    } else {
        let nf = poly_nfn(&a, &ext, vars, &t)?;
        for (mask, &e) in nf.table.iter().enumerate() {
            let at: Vec<String> =
                (0..vars).map(|i| format!("{}={}", var_names[i], if mask >> i & 1 == 1 { "top" } else { "bot" })).collect();
            writeln!(s, "at {}: {} (element {e})", at.join(" "), render(e)?).ok();
        }
    }
    Ok(Outcome::info(s))
}

fn parse_presheaf(spec: &str) -> CliResult<PresheafRule> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    match (kind, arg) {
        ("generic", "") => Ok(PresheafRule::Generic),
        ("constant", n) => n
            .parse::<usize>()
            .map(PresheafRule::Constant)
            .map_err(|_| CliError::Io(format!("bad presheaf `{spec}`: expected constant:<n>"))),
        ("representable", path) if !path.is_empty() => Ok(PresheafRule::Representable(load_poset(Path::new(path))?)),
        _ => Err(CliError::Io(format!("bad presheaf `{spec}`: expected generic, constant:<n> or representable:<poset-file>"))),
    }
}

/// A built-in coverage name, or a coverage file whose referenced files are
/// resolved relative to it.
fn load_coverage(arg: &str) -> CliResult<Coverage> {
    let path = Path::new(arg);
    if !path.is_file() {
        return Ok(builtin_coverage(arg)?);
    }
    let text = read(path)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut load = |name: &str| -> latspec::Result<String> {
        let p = dir.join(name);
        fs::read_to_string(&p).map_err(|e| LatspecError::invalid(format!("cannot read {}: {e}", p.display())))
    };
    parse_coverage(&text, &mut load).map_err(|e| CliError::File(path.to_path_buf(), e))
}

fn describe_algebra(s: &mut String, a: &DAlgebra) -> CliResult<()> {
    let p = a.presented()?;
    let names = &p.presentation.gens;
    writeln!(s, "size {}", a.size()).ok();
    let consts: Vec<String> = a.eta_table().iter().map(|e| e.to_string()).collect();
    writeln!(s, "constants {}", consts.join(" ")).ok();
    let gens: Vec<String> = p.gen_elems.iter().enumerate().map(|(g, e)| format!("{}={e}", gen_name(names, g))).collect();
    writeln!(s, "generators {}", if gens.is_empty() { "-".to_string() } else { gens.join(" ") }).ok();
    for e in 0..a.size() {
        writeln!(s, "element {e}: {}", a.element_term(e)?.render(names)).ok();
    }
    s.push_str(&a.lat().order().to_text());
    Ok(())
}

fn gen_name(names: &[String], g: usize) -> String {
    names.get(g).cloned().unwrap_or_else(|| format!("g{g}"))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
