//! Command dispatch: resolves names against a workspace or the builtin
//! registry, runs the check and packages the result.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use clap::Subcommand;
use patcalc_core::day::{
    check_yoneda_monoidal, commutative_monoid, day_convolve, find_representing, grothendieck, monoid_algebra_bridge,
    unit_section, yoneda, yoneda_monoid, CatMonoid, MonoidFamily,
};
use patcalc_core::fincat::{check_equivalence, validate_category, FinCat, FinFunctor, MorId, ObjId};
use patcalc_core::freealg::{
    act_groupoid, check_extendable_morphism, check_extendable_pattern, check_unique_inert_lifting, free_algebra,
    lan_monoid,
};
use patcalc_core::kan::{check_cofinal, colimit, lan, limit, ran, SetFunctor};
use patcalc_core::morita::{check_morita, transport_free_algebra};
use patcalc_core::patterns::{
    check_cartesian_pattern, check_factorization_system, check_monoid, check_operad_fibration,
    check_pattern_morphism, fiber_product_with_gamma, find_cocartesian_lifts, monoid_gamma_roundtrip, PatternData,
    PatternMorphism,
};
use patcalc_core::stdlib::{build_morphism, build_pattern, morphism_in, BuilderSpec, MorphismFamily, MorphismSpec, PatternFamily};
use patcalc_core::Report;
use serde::Serialize;
use thiserror::Error;

use crate::dsl::lexer::{lex, Tok};
use crate::output::Output;
use crate::workspace::{Binding, Workspace};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("unknown name `{0}`")]
    Unknown(String),
    #[error("{name} is a {found}, expected a {expected}")]
    TypeMismatch {
        name: String,
        expected: &'static str,
        found: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] patcalc_core::Error),
}

type Result<T> = std::result::Result<T, CommandError>;

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Check the laws of any named value: a category, functor, presheaf,
    /// pattern, pattern morphism or monoid.
    Validate { name: String },
    /// Inert-active factorizations of every morphism, or of one.
    Factorize {
        pattern: String,
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Segal condition for a presheaf on a pattern.
    CheckMonoid { pattern: String, presheaf: String },
    /// Whether a functor into a pattern, or the unstraightening of a
    /// monoid, is an operad fibration.
    CheckOperad { name: String },
    /// The fiber product of a pattern with the inert maps of pointed sets.
    Gamma { pattern: String },
    /// Pulls a monoid back to the fiber product with the inert maps and checks it.
    Roundtrip { pattern: String, presheaf: String },
    /// The groupoid of active maps into an object.
    Act { pattern: String, object: String },
    /// Unique inert lifting and the product decomposition of every Act groupoid.
    Extendable { pattern: String },
    /// Extendability of a pattern morphism: lifting plus cofinal active slices.
    ExtendableMorphism { morphism: String },
    /// Unique lifting of inert maps along a pattern morphism.
    InertLifting { morphism: String },
    /// Degree sizes of the free algebra on trivial generators.
    Free {
        pattern: String,
        /// `N` generators at every elementary object, or `LABEL=N` at one.
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Left Kan extension of a monoid along a pattern morphism.
    LanMonoid { morphism: String, presheaf: String },
    /// Day convolution of representables along an active map.
    Day {
        monoid: String,
        #[arg(long)]
        phi: String,
        #[arg(long, value_delimiter = ',')]
        objects: Vec<String>,
        /// Pattern for a builtin monoid (default `f_star` at the level).
        #[arg(long)]
        on: Option<String>,
    },
    /// Representables convolve to representables, for every tuple of objects.
    Yoneda {
        monoid: String,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        on: Option<String>,
    },
    /// The Yoneda monoid of a unit section, read as a Day-convolution algebra.
    Bridge {
        monoid: String,
        #[arg(long)]
        unit: Option<String>,
        #[arg(long)]
        on: Option<String>,
    },
    /// Equivalence on elementary objects and on Act groupoids over them.
    Morita { morphism: String },
    /// Free algebras along a pattern morphism, degree by degree.
    Transport {
        morphism: String,
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Colimit of a Set-valued functor, as classes of its elements.
    Colimit { presheaf: String },
    /// Limit of a Set-valued functor.
    Limit { presheaf: String },
    /// Left Kan extension along a functor.
    Lan { functor: String, presheaf: String },
    /// Right Kan extension along a functor.
    Ran { functor: String, presheaf: String },
    /// Whether a functor is an equivalence of categories.
    Equivalence { functor: String },
    /// Nonempty connected comma categories under every object of the target.
    Cofinal { functor: String },
}

impl Command {
    pub fn name(&self) -> String {
        let v = serde_json::to_value(self).expect("commands serialize");
        v["command"].as_str().expect("tagged").to_string()
    }

    fn inputs(&self, level: usize) -> BTreeMap<String, String> {
        let v = serde_json::to_value(self).expect("commands serialize");
        let mut out: BTreeMap<String, String> = v
            .as_object()
            .expect("tagged")
            .iter()
            .filter(|(k, _)| *k != "command")
            .filter_map(|(k, v)| {
                let s = match v {
                    serde_json::Value::Null => return None,
                    serde_json::Value::String(s) => s.clone(),
                    serde_json::Value::Array(a) => a
                        .iter()
                        .map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string))
                        .collect::<Vec<_>>()
                        .join(","),
                    other => other.to_string(),
                };
                Some((k.clone(), s))
            })
            .collect();
        out.insert("level".into(), level.to_string());
        out
    }
}

/// Runs a command. Failures to resolve or compute become `error` reports.
pub fn execute(ws: &Workspace, cmd: &Command, level: usize) -> Output {
    let start = Instant::now();
    let name = cmd.name();
    let inputs = cmd.inputs(level);
    let r = Resolver { ws, level };
    let mut out = match r.run(cmd) {
        Ok((report, budget)) => Output::from_report(&name, inputs, budget, report),
        Err(e) => Output::error(&name, inputs, e.to_string()),
    };
    out.timings.total_ms = start.elapsed().as_secs_f64() * 1e3;
    out
}

/// A reference on the command line: a workspace name, a builtin family, or a
/// builtin applied to arguments such as `f_star(3)` or `int_inclusion(ass(2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Expr {
    Name(String),
    Call(String, Vec<ExprArg>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum ExprArg {
    Int(usize),
    Expr(Expr),
}

fn parse_expr(text: &str) -> Result<Expr> {
    let bad = || CommandError::Invalid(format!("cannot read `{text}` as a name or builtin"));
    let toks: Vec<Tok> = lex(text).map_err(|_| bad())?.into_iter().map(|(t, _)| t).collect();
    let mut pos = 0;
    let e = expr(&toks, &mut pos).ok_or_else(bad)?;
    if toks[pos] != Tok::Eof {
        return Err(bad());
    }
    Ok(e)
}

fn expr(toks: &[Tok], pos: &mut usize) -> Option<Expr> {
    let name = match &toks[*pos] {
        Tok::Ident(s) | Tok::Str(s) => s.clone(),
        _ => return None,
    };
    *pos += 1;
    if toks[*pos] != Tok::Punct("(") {
        return Some(Expr::Name(name));
    }
    *pos += 1;
    let mut args = Vec::new();
    if toks[*pos] != Tok::Punct(")") {
        loop {
            match &toks[*pos] {
                Tok::Int(n) => {
                    args.push(ExprArg::Int(usize::try_from(*n).ok()?));
                    *pos += 1;
                }
                _ => args.push(ExprArg::Expr(expr(toks, pos)?)),
            }
            match &toks[*pos] {
                Tok::Punct(",") => *pos += 1,
                Tok::Punct(")") => break,
                _ => return None,
            }
        }
    }
    *pos += 1;
    Some(Expr::Call(name, args))
}

struct Resolver<'a> {
    ws: &'a Workspace,
    level: usize,
}

fn ints(family: &str, args: &[ExprArg]) -> Result<Vec<usize>> {
    args.iter()
        .map(|a| match a {
            ExprArg::Int(n) => Ok(*n),
            ExprArg::Expr(_) => Err(CommandError::Invalid(format!("{family} takes numbers"))),
        })
        .collect()
}

fn mismatch(name: &str, expected: &'static str, b: &Binding) -> CommandError {
    CommandError::TypeMismatch {
        name: name.to_string(),
        expected,
        found: b.kind().to_string(),
    }
}

fn find_object(cat: &FinCat, label: &str) -> Result<ObjId> {
    cat.find_object(label)
        .ok_or_else(|| CommandError::Invalid(format!("no object `{label}`")))
}

fn find_morphism(cat: &FinCat, label: &str) -> Result<MorId> {
    cat.find_morphism(label)
        .ok_or_else(|| CommandError::Invalid(format!("no morphism `{label}`")))
}

/// One witness per object: the size of the set there.
fn sizes_report(check: String, f: &SetFunctor) -> Report {
    let mut r = Report::new(check);
    let cat = f.source();
    for o in cat.objects() {
        r.witness(format!("{}: {}", cat.obj_label(o), f.size(o)));
    }
    r
}

/// `N` generators everywhere, or `LABEL=N` at one elementary object, each
/// acted on trivially by the elementary groupoid.
fn generators(p: &PatternData, gens: &[String]) -> Result<SetFunctor> {
    let (el, _) = p.elementary_part()?;
    let cat = el.cat().clone();
    let mut sizes = vec![1; cat.num_objects()];
    for g in gens {
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| CommandError::Invalid(format!("`{g}` is not a generator count")))
        };
        match g.rsplit_once('=') {
            Some((label, n)) => sizes[find_object(&cat, label)?.idx()] = parse(n)?,
            None => sizes.fill(parse(g)?),
        }
    }
    for m in cat.morphisms() {
        let (a, b) = (cat.src(m), cat.tgt(m));
        if sizes[a.idx()] != sizes[b.idx()] {
            return Err(CommandError::Invalid(format!(
                "isomorphic objects {} and {} need the same number of generators",
                cat.obj_label(a),
                cat.obj_label(b)
            )));
        }
    }
    Ok(SetFunctor::from_fn(cat, sizes, |_, x| x)?)
}

impl Resolver<'_> {
    fn binding(&self, name: &str) -> Option<&Binding> {
        self.ws.get(name)
    }

    fn pattern(&self, text: &str) -> Result<Arc<PatternData>> {
        if let Some(b) = self.binding(text) {
            return match b {
                Binding::Pattern(p) => Ok(p.clone()),
                b => Err(mismatch(text, "pattern", b)),
            };
        }
        self.pattern_expr(&parse_expr(text)?)
    }

    fn pattern_expr(&self, e: &Expr) -> Result<Arc<PatternData>> {
        let (family, args) = match e {
            Expr::Name(n) => {
                if let Some(b) = self.binding(n) {
                    return match b {
                        Binding::Pattern(p) => Ok(p.clone()),
                        b => Err(mismatch(n, "pattern", b)),
                    };
                }
                (n, vec![self.level])
            }
            Expr::Call(f, args) => (f, ints(f, args)?),
        };
        let family: PatternFamily = family.parse().map_err(|_| CommandError::Unknown(family.clone()))?;
        let mut spec = BuilderSpec::new(family, *args.first().unwrap_or(&self.level));
        if let Some(&k) = args.get(1) {
            spec.k = k;
        }
        Ok(build_pattern(spec)?)
    }

    fn morphism(&self, text: &str) -> Result<PatternMorphism> {
        if let Some(b) = self.binding(text) {
            return match b {
                Binding::Morphism(m) => Ok(m.clone()),
                b => Err(mismatch(text, "pattern morphism", b)),
            };
        }
        let (family, args) = match parse_expr(text)? {
            Expr::Name(n) => (n, Vec::new()),
            Expr::Call(f, args) => (f, args),
        };
        let family: MorphismFamily = family.parse().map_err(|_| CommandError::Unknown(family.clone()))?;
        match (family.needs_pattern(), args.as_slice()) {
            (true, [ExprArg::Expr(p)]) => Ok(morphism_in(family, &self.pattern_expr(p)?)?),
            (true, _) => Err(CommandError::Invalid(format!("{family} needs a pattern, as in {family}(f_star(2))"))),
            (false, []) | (false, [ExprArg::Int(_)]) => {
                let level = match args.first() {
                    Some(ExprArg::Int(n)) => *n,
                    _ => self.level,
                };
                Ok(build_morphism(MorphismSpec { family, level, on: None })?)
            }
            (false, _) => Err(CommandError::Invalid(format!("{family} takes a truncation level"))),
        }
    }

    /// A functor with the pattern it lands in, if it lands in one.
    fn functor(&self, text: &str) -> Result<(FinFunctor, Option<Arc<PatternData>>)> {
        match self.binding(text) {
            Some(Binding::Functor { functor, target, .. }) => {
                let base = match self.binding(target) {
                    Some(Binding::Pattern(p)) => Some(p.clone()),
                    _ => None,
                };
                Ok((functor.clone(), base))
            }
            Some(Binding::Morphism(m)) => Ok((m.functor.clone(), Some(m.target.clone()))),
            Some(b) => Err(mismatch(text, "functor", b)),
            None => {
                let m = self.morphism(text)?;
                Ok((m.functor, Some(m.target)))
            }
        }
    }

    fn presheaf(&self, name: &str) -> Result<SetFunctor> {
        match self.binding(name) {
            Some(Binding::Presheaf(f)) => Ok(f.clone()),
            Some(b) => Err(mismatch(name, "presheaf", b)),
            None => Err(CommandError::Unknown(name.to_string())),
        }
    }

    fn monoid(&self, text: &str, on: Option<&str>) -> Result<CatMonoid> {
        if let Some(b) = self.binding(text) {
            return match b {
                Binding::Monoid(m) => Ok(m.clone()),
                b => Err(mismatch(text, "monoid", b)),
            };
        }
        let (family, args) = match parse_expr(text)? {
            Expr::Name(n) => (n, Vec::new()),
            Expr::Call(f, args) => {
                let a = ints(&f, &args)?;
                (f, a)
            }
        };
        let family: MonoidFamily = family.parse().map_err(|_| CommandError::Unknown(family.clone()))?;
        let p = match on {
            Some(p) => self.pattern(p)?,
            None => build_pattern(BuilderSpec::new(PatternFamily::FStar, self.level))?,
        };
        let m = commutative_monoid(&p, &family.build(*args.first().unwrap_or(&2))?)?;
        Ok(m)
    }

    /// Any named value, for `validate`.
    fn any(&self, text: &str) -> Result<Binding> {
        if let Some(b) = self.binding(text) {
            return Ok(b.clone());
        }
        let head = match parse_expr(text)? {
            Expr::Name(n) | Expr::Call(n, _) => n,
        };
        if head.parse::<PatternFamily>().is_ok() {
            Ok(Binding::Pattern(self.pattern(text)?))
        } else if head.parse::<MorphismFamily>().is_ok() {
            Ok(Binding::Morphism(self.morphism(text)?))
        } else if head.parse::<MonoidFamily>().is_ok() {
            Ok(Binding::Monoid(self.monoid(text, None)?))
        } else {
            Err(CommandError::Unknown(text.to_string()))
        }
    }

    fn run(&self, cmd: &Command) -> Result<(Report, usize)> {
        let level = self.level;
        Ok(match cmd {
            Command::Validate { name } => match self.any(name)? {
                Binding::Category(c) => (validate_category(&c), level),
                Binding::Pattern(p) => (check_cartesian_pattern(&p), p.level()),
                Binding::Morphism(m) => (check_pattern_morphism(&m), m.target.level()),
                Binding::Functor { functor, .. } => (functor.validate(), level),
                Binding::Presheaf(f) => (f.validate(), level),
                Binding::Monoid(m) => (m.validate(), m.pattern.level()),
            },
            Command::Factorize { pattern, morphism } => {
                let p = self.pattern(pattern)?;
                let cat = p.cat();
                let mut r = Report::new(format!("inert-active factorizations in {}", p.name()));
                let ms: Vec<MorId> = match morphism {
                    Some(l) => vec![find_morphism(cat, l)?],
                    None => {
                        r.push_child(check_factorization_system(cat, p.inert_classes(), p.active_classes()));
                        cat.morphisms().collect()
                    }
                };
                for m in ms {
                    match p.factorize(m) {
                        Ok((i, a)) => r.witness(format!(
                            "{} = {} . {}",
                            cat.mor_label(m),
                            cat.mor_label(a),
                            cat.mor_label(i)
                        )),
                        Err(e) => r.fail(format!("{}: {e}", cat.mor_label(m))),
                    }
                }
                (r, p.level())
            }
            Command::CheckMonoid { pattern, presheaf } => {
                let p = self.pattern(pattern)?;
                (check_monoid(&p, &self.presheaf(presheaf)?), p.level())
            }
            Command::CheckOperad { name } => {
                let (functor, base) = match self.binding(name) {
                    Some(Binding::Monoid(m)) => {
                        let fib = grothendieck(m)?;
                        (fib.projection.functor, m.pattern.clone())
                    }
                    _ => match self.functor(name)? {
                        (f, Some(base)) => (f, base),
                        (_, None) => {
                            return Err(CommandError::Invalid(format!("{name} does not land in a pattern")));
                        }
                    },
                };
                let (lifts, found) = find_cocartesian_lifts(&functor, &base);
                let r = Report::new(format!("{name} is an operad fibration over {}", base.name()))
                    .with_child(found)
                    .with_child(check_operad_fibration(&functor, &base, &lifts));
                (r, base.level())
            }
            Command::Gamma { pattern } => {
                let p = self.pattern(pattern)?;
                let g = fiber_product_with_gamma(&p)?;
                let cat = g.pattern.cat();
                let mut r = Report::new(format!("fiber product of {} with the inert maps", p.name()));
                r.witness(format!("{} objects, {} morphisms", cat.num_objects(), cat.num_morphisms()));
                r.push_child(check_cartesian_pattern(&g.pattern));
                r.push_child(check_pattern_morphism(&g.include));
                (r, p.level())
            }
            Command::Roundtrip { pattern, presheaf } => {
                let p = self.pattern(pattern)?;
                (monoid_gamma_roundtrip(&p, &self.presheaf(presheaf)?)?, p.level())
            }
            Command::Act { pattern, object } => {
                let p = self.pattern(pattern)?;
                let x = find_object(p.cat(), object)?;
                let act = act_groupoid(&p, x)?;
                let c = act.cat();
                let mut r = Report::new(format!("active maps into {object}"));
                r.witness(format!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms()));
                for comp in act.components() {
                    r.witness(format!(
                        "component of {}: {} objects, {} automorphisms",
                        c.obj_label(comp[0]),
                        comp.len(),
                        act.automorphisms(comp[0])
                    ));
                }
                if act.is_discrete() {
                    r.witness("discrete");
                }
                (r, p.level())
            }
            Command::Extendable { pattern } => {
                let p = self.pattern(pattern)?;
                (check_extendable_pattern(&p), p.level())
            }
            Command::ExtendableMorphism { morphism } => {
                let f = self.morphism(morphism)?;
                (check_extendable_morphism(&f), f.target.level())
            }
            Command::InertLifting { morphism } => {
                let f = self.morphism(morphism)?;
                (check_unique_inert_lifting(&f), f.target.level())
            }
            Command::Free { pattern, gens, bound } => {
                let p = self.pattern(pattern)?;
                let bound = bound.unwrap_or(p.level());
                let a = free_algebra(&p, &generators(&p, gens)?, bound)?;
                let mut r = Report::new(format!("free algebra on {} up to degree {bound}", p.name()));
                for &e in &a.elementary {
                    r.witness(format!(
                        "{}: degrees {:?}, total {}",
                        p.cat().obj_label(e),
                        a.degrees(e).unwrap_or(&[]),
                        a.total(e)
                    ));
                }
                (r, bound)
            }
            Command::LanMonoid { morphism, presheaf } => {
                let f = self.morphism(morphism)?;
                let l = lan_monoid(&f, &self.presheaf(presheaf)?)?;
                let r = sizes_report(format!("left Kan extension along {}", f.name), &l.functor).with_child(l.report);
                (r, f.target.level())
            }
            Command::Day { monoid, phi, objects, on } => {
                let m = self.monoid(monoid, on.as_deref())?;
                let cat = m.pattern.cat();
                let u = find_morphism(cat, phi)?;
                let rhos = m.pattern.rhos(cat.src(u))?;
                if objects.len() != rhos.len() {
                    return Err(CommandError::Invalid(format!(
                        "{phi} has {} inputs but {} objects were given",
                        rhos.len(),
                        objects.len()
                    )));
                }
                let presheaves = rhos
                    .iter()
                    .zip(objects)
                    .map(|(&r, l)| {
                        let fib = m.fiber(cat.tgt(r));
                        Ok(yoneda(fib, find_object(fib, l)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let f = day_convolve(&m, u, &presheaves)?;
                let names: Vec<String> = objects.iter().map(|o| format!("y({o})")).collect();
                let mut r = sizes_report(format!("{} along {phi}", names.join(" * ")), &f);
                if let Some((c, _)) = find_representing(&f) {
                    r.witness(format!("represented by {}", f.source().obj_label(c)));
                }
                (r, m.pattern.level())
            }
            Command::Yoneda { monoid, phi, on } => {
                let m = self.monoid(monoid, on.as_deref())?;
                let cat = m.pattern.cat();
                let u = find_morphism(cat, phi)?;
                let fibers: Vec<usize> = m
                    .pattern
                    .rhos(cat.src(u))?
                    .iter()
                    .map(|&r| m.fiber(cat.tgt(r)).num_objects())
                    .collect();
                let mut r = Report::new(format!("Day convolution along {phi} on representables"));
                let mut tuple = vec![0usize; fibers.len()];
                if fibers.iter().all(|&n| n > 0) {
                    loop {
                        let objs: Vec<ObjId> = tuple.iter().map(|&i| ObjId(i as u32)).collect();
                        r.push_child(check_yoneda_monoidal(&m, u, &objs)?);
                        let Some(k) = (0..tuple.len()).rev().find(|&k| tuple[k] + 1 < fibers[k]) else {
                            break;
                        };
                        tuple[k] += 1;
                        tuple[k + 1..].fill(0);
                    }
                }
                (r, m.pattern.level())
            }
            Command::Bridge { monoid, unit, on } => {
                let m = self.monoid(monoid, on.as_deref())?;
                let e = *m
                    .pattern
                    .elementary_objects()
                    .first()
                    .ok_or_else(|| CommandError::Invalid(format!("{} has no elementary objects", m.pattern.name())))?;
                let u = match unit {
                    Some(l) => find_object(m.fiber(e), l)?,
                    None => ObjId(0),
                };
                let s = unit_section(&m, u)?;
                let n = yoneda_monoid(&m, &s)?;
                let (family, mut r) = monoid_algebra_bridge(&m, &n)?;
                r.witness(format!(
                    "representable at every elementary object: {}",
                    family.all_representable()
                ));
                (r, m.pattern.level())
            }
            Command::Morita { morphism } => {
                let f = self.morphism(morphism)?;
                let mr = check_morita(&f)?;
                (mr.report(&f.name), mr.budget)
            }
            Command::Transport { morphism, gens, bound } => {
                let f = self.morphism(morphism)?;
                let bound = bound.unwrap_or(f.target.level());
                (transport_free_algebra(&f, &generators(&f.target, gens)?, bound)?, bound)
            }
            Command::Colimit { presheaf } => {
                let x = self.presheaf(presheaf)?;
                let c = colimit(&x);
                let cat = x.source();
                let mut r = Report::new(format!("colimit of {presheaf}"));
                r.witness(format!("{} elements", c.apex));
                let mut classes = vec![Vec::new(); c.apex];
                for o in cat.objects() {
                    for i in 0..x.size(o) as u32 {
                        classes[c.leg(o, i) as usize].push(format!("{}@{}", x.element_label(o, i), cat.obj_label(o)));
                    }
                }
                for (k, members) in classes.iter().enumerate() {
                    r.witness(format!("class {k}: {}", members.join(", ")));
                }
                (r, level)
            }
            Command::Limit { presheaf } => {
                let x = self.presheaf(presheaf)?;
                let l = limit(&x);
                let cat = x.source();
                let mut r = Report::new(format!("limit of {presheaf}"));
                r.witness(format!("{} elements", l.size()));
                for fam in &l.families {
                    let parts: Vec<String> = cat
                        .objects()
                        .map(|o| format!("{}: {}", cat.obj_label(o), x.element_label(o, fam[o.idx()])))
                        .collect();
                    r.witness(format!("({})", parts.join(", ")));
                }
                (r, level)
            }
            Command::Lan { functor, presheaf } => {
                let (g, _) = self.functor(functor)?;
                let k = lan(&g, &self.presheaf(presheaf)?)?;
                (sizes_report(format!("left Kan extension along {functor}"), &k.functor), level)
            }
            Command::Ran { functor, presheaf } => {
                let (g, _) = self.functor(functor)?;
                let k = ran(&g, &self.presheaf(presheaf)?)?;
                (sizes_report(format!("right Kan extension along {functor}"), &k.functor), level)
            }
            Command::Equivalence { functor } => (check_equivalence(&self.functor(functor)?.0), level),
            Command::Cofinal { functor } => (check_cofinal(&self.functor(functor)?.0), level),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::output::Status;

    fn run(ws: &Workspace, cmd: Command) -> Output {
        execute(ws, &cmd, 3)
    }

    #[test]
    fn expressions_nest() {
        assert_eq!(
            parse_expr("int_inclusion(delta_k_op(3, 2))").unwrap(),
            Expr::Call(
                "int_inclusion".into(),
                vec![ExprArg::Expr(Expr::Call(
                    "delta_k_op".into(),
                    vec![ExprArg::Int(3), ExprArg::Int(2)]
                ))]
            )
        );
        assert_eq!(parse_expr("cut").unwrap(), Expr::Name("cut".into()));
        assert!(parse_expr("cut(").is_err());
        assert!(parse_expr("cut 3").is_err());
    }

    #[test]
    fn builtin_patterns_validate() {
        let o = run(&Workspace::default(), Command::Validate { name: "f_star".into() });
        assert_eq!(o.status, Status::Pass, "{:?}", o.counterexamples);
        assert_eq!(o.inputs["level"], "3");
        assert_eq!(o.budget, 3);
    }

    #[test]
    fn free_commutative_algebra_on_two_generators() {
        let ws = Workspace::parse("pattern F = builtin f_star(3);").unwrap();
        let o = run(
            &ws,
            Command::Free {
                pattern: "F".into(),
                gens: vec!["<1>=2".into()],
                bound: Some(3),
            },
        );
        assert_eq!(o.status, Status::Pass);
        assert!(o.witnesses[0].ends_with("<1>: degrees [1, 2, 3, 4], total 10"), "{:?}", o.witnesses);
    }

    #[test]
    fn unknown_names_and_wrong_kinds_are_errors() {
        let ws = Workspace::parse("category C { objects: a; }").unwrap();
        let o = run(&ws, Command::Extendable { pattern: "C".into() });
        assert_eq!(o.status, Status::Error);
        assert_eq!(o.counterexamples, ["C is a category, expected a pattern"]);
        let o = run(&ws, Command::Colimit { presheaf: "nope".into() });
        assert_eq!(o.counterexamples, ["unknown name `nope`"]);
        assert_eq!(o.status.exit_code(), 2);
    }

    #[test]
    fn degenerate_inputs_do_not_crash() {
        let ws = Workspace::parse("category E { objects: ; }\npresheaf X on E { }").unwrap();
        assert_eq!(run(&ws, Command::Validate { name: "E".into() }).status, Status::Pass);
        let o = run(&ws, Command::Colimit { presheaf: "X".into() });
        assert_eq!(o.status, Status::Pass);
        assert_eq!(o.witnesses, ["colimit of X: 0 elements"]);
        let o = execute(&ws, &Command::Validate { name: "f_star".into() }, 0);
        assert_eq!(o.status, Status::Pass);
    }

    #[test]
    fn monoids_unstraighten_to_operad_fibrations() {
        let ws = Workspace::parse("pattern F = builtin f_star(2);\nmonoid M = builtin discrete_cyclic(2) on F;").unwrap();
        let o = run(&ws, Command::CheckOperad { name: "M".into() });
        assert_eq!(o.status, Status::Pass, "{:?}", o.counterexamples);
        let o = run(
            &ws,
            Command::Yoneda {
                monoid: "M".into(),
                phi: "<2>-[1,1]-><1>".into(),
                on: None,
            },
        );
        assert_eq!(o.status, Status::Pass, "{:?}", o.counterexamples);
    }
}
