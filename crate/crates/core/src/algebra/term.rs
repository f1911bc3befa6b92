//! Lattice terms over generators and base constants.

use std::fmt;

use crate::error::{LatspecError, Result};
use crate::lattice::DLattice;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Bot,
    Top,
    /// Image of a base element under the structure map.
    Const(usize),
    /// Generator by position in the presentation's generator list.
    Gen(usize),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

impl Term {
    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    /// Meet of all terms; `Top` when empty.
    pub fn meet_all(ts: impl IntoIterator<Item = Term>) -> Term {
        let mut it = ts.into_iter();
        match it.next() {
            None => Term::Top,
            Some(first) => it.fold(first, Term::meet),
        }
    }

    /// Join of all terms; `Bot` when empty.
    pub fn join_all(ts: impl IntoIterator<Item = Term>) -> Term {
        let mut it = ts.into_iter();
        match it.next() {
            None => Term::Bot,
            Some(first) => it.fold(first, Term::join),
        }
    }

    /// Evaluates in `lat`, reading constants through `consts` and generators
    /// through `gens`.
    pub fn eval(&self, lat: &DLattice, consts: &[usize], gens: &[usize]) -> usize {
        match self {
            Term::Bot => lat.bot(),
            Term::Top => lat.top(),
            Term::Const(d) => consts[*d],
            Term::Gen(i) => gens[*i],
            Term::Meet(a, b) => lat.meet(a.eval(lat, consts, gens), b.eval(lat, consts, gens)),
            Term::Join(a, b) => lat.join(a.eval(lat, consts, gens), b.eval(lat, consts, gens)),
        }
    }

    /// Largest generator index mentioned, if any.
    pub fn max_gen(&self) -> Option<usize> {
        match self {
            Term::Gen(i) => Some(*i),
            Term::Meet(a, b) | Term::Join(a, b) => a.max_gen().max(b.max_gen()),
            _ => None,
        }
    }

    pub fn max_const(&self) -> Option<usize> {
        match self {
            Term::Const(d) => Some(*d),
            Term::Meet(a, b) | Term::Join(a, b) => a.max_const().max(b.max_const()),
            _ => None,
        }
    }

    /// Replaces each generator `i` by `subst(i)`.
    pub fn substitute(&self, subst: &impl Fn(usize) -> Term) -> Term {
        match self {
            Term::Gen(i) => subst(*i),
            Term::Meet(a, b) => Term::meet(a.substitute(subst), b.substitute(subst)),
            Term::Join(a, b) => Term::join(a.substitute(subst), b.substitute(subst)),
            t => t.clone(),
        }
    }

    /// Renumbers generators by `f`.
    pub fn map_gens(&self, f: &impl Fn(usize) -> usize) -> Term {
        self.substitute(&|i| Term::Gen(f(i)))
    }

    /// Prefix rendering using generator names.
    pub fn render(&self, names: &[String]) -> String {
        match self {
            Term::Bot => "bot".into(),
            Term::Top => "top".into(),
            Term::Const(d) => format!("const:{d}"),
            Term::Gen(i) => names.get(*i).cloned().unwrap_or_else(|| format!("g{i}")),
            Term::Meet(a, b) => format!("(meet {} {})", a.render(names), b.render(names)),
            Term::Join(a, b) => format!("(join {} {})", a.render(names), b.render(names)),
        }
    }

    /// Parses a prefix term such as `(meet a (join b top))`. Generator names
    /// are resolved against `names`; `meet` and `join` accept one or more
    /// arguments.
    pub fn parse(src: &str, names: &[String], line: usize) -> Result<Term> {
        let tokens = tokenize(src);
        let mut pos = 0;
        let t = parse_tokens(&tokens, &mut pos, names, line)?;
        if pos != tokens.len() {
            return Err(LatspecError::parse(line, format!("unexpected `{}` after term", tokens[pos])));
        }
        Ok(t)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

fn tokenize(src: &str) -> Vec<String> {
    src.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

fn parse_tokens(tokens: &[String], pos: &mut usize, names: &[String], line: usize) -> Result<Term> {
    let tok = tokens.get(*pos).ok_or_else(|| LatspecError::parse(line, "unexpected end of term"))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let op = tokens.get(*pos).ok_or_else(|| LatspecError::parse(line, "unexpected end of term"))?.clone();
            *pos += 1;
            let mut args = Vec::new();
            while tokens.get(*pos).map(String::as_str) != Some(")") {
                if *pos >= tokens.len() {
                    return Err(LatspecError::parse(line, "missing `)`"));
                }
                args.push(parse_tokens(tokens, pos, names, line)?);
            }
            *pos += 1;
            if args.is_empty() {
                return Err(LatspecError::parse(line, format!("`{op}` needs at least one argument")));
            }
            match op.as_str() {
                "meet" => Ok(Term::meet_all(args)),
                "join" => Ok(Term::join_all(args)),
                other => Err(LatspecError::parse(line, format!("unknown operator `{other}`"))),
            }
        }
        ")" => Err(LatspecError::parse(line, "unexpected `)`")),
        "bot" => Ok(Term::Bot),
        "top" => Ok(Term::Top),
        t if t.starts_with("const:") => t["const:".len()..]
            .parse::<usize>()
            .map(Term::Const)
            .map_err(|_| LatspecError::parse(line, format!("bad constant `{t}`"))),
        name => names
            .iter()
            .position(|n| n == name)
            .map(Term::Gen)
            .ok_or_else(|| LatspecError::parse(line, format!("unknown generator `{name}`"))),
    }
}
