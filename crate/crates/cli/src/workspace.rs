//! Named values built from a parsed document, each validated on load.

use std::collections::HashMap;
use std::sync::Arc;

use patcalc_core::day::{commutative_monoid, CatMonoid, MonoidFamily};
use patcalc_core::fincat::{validate_category, FinCat, FinFunctor, MorId, ObjId};
use patcalc_core::kan::SetFunctor;
use patcalc_core::patterns::{PatternData, PatternMorphism, PointedBase, PointedMap};
use patcalc_core::stdlib::{
    build_morphism, build_pattern, morphism_in, BuilderSpec, MorphismFamily, MorphismSpec, PatternFamily,
};
use thiserror::Error;

use crate::dsl::{self, identity_name, Arg, Body, BuiltinKind, Decl, Document, DslError, PresheafEntry, SizeValue};

#[derive(Clone, Debug)]
pub enum Binding {
    Category(Arc<FinCat>),
    Pattern(Arc<PatternData>),
    /// A functor between two patterns.
    Morphism(PatternMorphism),
    Functor {
        functor: FinFunctor,
        source: String,
        target: String,
    },
    Presheaf(SetFunctor),
    Monoid(CatMonoid),
}

impl Binding {
    pub fn kind(&self) -> &'static str {
        match self {
            Binding::Category(_) => "category",
            Binding::Pattern(_) => "pattern",
            Binding::Morphism(_) => "pattern morphism",
            Binding::Functor { .. } => "functor",
            Binding::Presheaf(_) => "presheaf",
            Binding::Monoid(_) => "monoid",
        }
    }

    /// The underlying category of a category or pattern.
    pub fn category(&self) -> Option<&Arc<FinCat>> {
        match self {
            Binding::Category(c) => Some(c),
            Binding::Pattern(p) => Some(p.cat()),
            _ => None,
        }
    }

    pub fn functor(&self) -> Option<&FinFunctor> {
        match self {
            Binding::Morphism(m) => Some(&m.functor),
            Binding::Functor { functor, .. } => Some(functor),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorkspaceError {
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error("{line}:{col}: {name}: {message}")]
    Invalid {
        line: usize,
        col: usize,
        name: String,
        message: String,
    },
    #[error("{name} is a {found}, expected a {expected}")]
    TypeMismatch {
        name: String,
        expected: String,
        found: String,
    },
    #[error("unknown name `{0}`")]
    Unknown(String),
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    order: Vec<String>,
    bindings: HashMap<String, Binding>,
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Workspace, WorkspaceError> {
        Workspace::load(&dsl::parse_dsl(text)?)
    }

    /// Builds and validates every declaration in order.
    pub fn load(doc: &Document) -> Result<Workspace, WorkspaceError> {
        let mut ws = Workspace::default();
        for d in &doc.decls {
            let b = ws.build(d).map_err(|message| WorkspaceError::Invalid {
                line: d.span.line,
                col: d.span.col,
                name: d.name.clone(),
                message,
            })?;
            ws.insert(d.name.clone(), b);
        }
        Ok(ws)
    }

    pub fn insert(&mut self, name: String, b: Binding) {
        if self.bindings.insert(name.clone(), b).is_none() {
            self.order.push(name);
        }
    }

    pub fn get(&self, name: &str) -> Option<&Binding> {
        self.bindings.get(name)
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    fn binding(&self, name: &str) -> Result<&Binding, String> {
        self.get(name).ok_or_else(|| format!("unknown name `{name}`"))
    }

    fn category_of(&self, name: &str) -> Result<Arc<FinCat>, String> {
        let b = self.binding(name)?;
        b.category()
            .cloned()
            .ok_or_else(|| format!("{name} is a {}, expected a category or pattern", b.kind()))
    }

    fn pattern_of(&self, name: &str) -> Result<Arc<PatternData>, String> {
        match self.binding(name)? {
            Binding::Pattern(p) => Ok(p.clone()),
            b => Err(format!("{name} is a {}, expected a pattern", b.kind())),
        }
    }

    fn build(&self, d: &Decl) -> Result<Binding, String> {
        match &d.body {
            Body::Category(c) => build_category(c).map(|c| Binding::Category(Arc::new(c))),
            Body::Pattern(p) => {
                let cat = self.category_of(&p.category)?;
                build_pattern_decl(&d.name, cat, p).map(|p| Binding::Pattern(Arc::new(p)))
            }
            Body::Builtin(b) => self.build_builtin(b),
            Body::Functor(f) => {
                let (s, t) = (self.category_of(&f.source)?, self.category_of(&f.target)?);
                let functor = build_functor(s, t, f)?;
                match (self.binding(&f.source)?, self.binding(&f.target)?) {
                    (Binding::Pattern(ps), Binding::Pattern(pt)) => {
                        PatternMorphism::new(d.name.clone(), ps.clone(), pt.clone(), functor)
                            .map(Binding::Morphism)
                            .map_err(|e| e.to_string())
                    }
                    _ => Ok(Binding::Functor {
                        functor,
                        source: f.source.clone(),
                        target: f.target.clone(),
                    }),
                }
            }
            Body::Presheaf(p) => {
                let cat = self.category_of(&p.category)?;
                build_presheaf(cat, &p.entries).map(Binding::Presheaf)
            }
        }
    }

    fn build_builtin(&self, b: &dsl::BuiltinDecl) -> Result<Binding, String> {
        let int = |i: usize| match b.args.get(i) {
            Some(Arg::Int(n)) => Ok(Some(*n)),
            Some(Arg::Name(s)) => Err(format!("argument {} of {} must be a number, not {s}", i + 1, b.family)),
            None => Ok(None),
        };
        let err = |e: patcalc_core::error::Error| e.to_string();
        match b.kind {
            BuiltinKind::Pattern => {
                let family: PatternFamily = b.family.parse().map_err(err)?;
                let level = int(0)?.ok_or_else(|| format!("{} needs a truncation level", b.family))?;
                let mut spec = BuilderSpec::new(family, level);
                if let Some(k) = int(1)? {
                    spec.k = k;
                }
                build_pattern(spec).map(Binding::Pattern).map_err(err)
            }
            BuiltinKind::Morphism => {
                let family: MorphismFamily = b.family.parse().map_err(err)?;
                if family.needs_pattern() {
                    let Some(Arg::Name(p)) = b.args.first() else {
                        return Err(format!("{} needs the pattern it is taken in", b.family));
                    };
                    morphism_in(family, &self.pattern_of(p)?).map(Binding::Morphism).map_err(err)
                } else {
                    let level = int(0)?.ok_or_else(|| format!("{} needs a truncation level", b.family))?;
                    build_morphism(MorphismSpec { family, level, on: None })
                        .map(Binding::Morphism)
                        .map_err(err)
                }
            }
            BuiltinKind::Monoid => {
                let family: MonoidFamily = b.family.parse().map_err(err)?;
                let k = int(0)?.unwrap_or(1);
                let on = b.on.as_deref().expect("monoids are parsed with a pattern");
                let m = commutative_monoid(&self.pattern_of(on)?, &family.build(k).map_err(err)?).map_err(err)?;
                let r = m.validate();
                match r.first_counterexample() {
                    None => Ok(Binding::Monoid(m)),
                    Some(c) => Err(c.to_string()),
                }
            }
        }
    }
}

fn build_category(c: &dsl::CategoryDecl) -> Result<FinCat, String> {
    let obj: HashMap<&str, ObjId> = c.objects.iter().enumerate().map(|(i, o)| (o.as_str(), ObjId(i as u32))).collect();
    let mut morphisms: Vec<(ObjId, ObjId, String)> = c
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| (ObjId(i as u32), ObjId(i as u32), identity_name(o)))
        .collect();
    for (f, a, b) in &c.morphisms {
        morphisms.push((obj[a.as_str()], obj[b.as_str()], f.clone()));
    }
    let mor: HashMap<&str, MorId> = morphisms.iter().enumerate().map(|(i, m)| (m.2.as_str(), MorId(i as u32))).collect();
    let identities = (0..c.objects.len()).map(|i| MorId(i as u32)).collect();
    let comps: Vec<(MorId, MorId, MorId)> = c
        .compositions
        .iter()
        .map(|(g, f, h)| (mor[g.as_str()], mor[f.as_str()], mor[h.as_str()]))
        .collect();
    let cat = FinCat::from_parts(c.objects.clone(), morphisms, identities, comps).map_err(|e| e.to_string())?;
    let r = validate_category(&cat);
    match r.first_counterexample() {
        None => Ok(cat),
        Some(e) => Err(e.to_string()),
    }
}

fn find_obj(c: &FinCat, name: &str) -> Result<ObjId, String> {
    c.find_object(name).ok_or_else(|| format!("no object `{name}`"))
}

fn find_mor(c: &FinCat, name: &str) -> Result<MorId, String> {
    c.find_morphism(name).ok_or_else(|| format!("no morphism `{name}`"))
}

fn build_pattern_decl(name: &str, cat: Arc<FinCat>, p: &dsl::PatternDecl) -> Result<PatternData, String> {
    let mut inert: Vec<bool> = cat.morphisms().map(|m| cat.is_identity(m)).collect();
    let mut active = inert.clone();
    for (names, class) in [(&p.inert, &mut inert), (&p.active, &mut active)] {
        for n in names {
            class[find_mor(&cat, n)?.idx()] = true;
        }
    }
    let mut elementary = vec![false; cat.num_objects()];
    for n in &p.elementary {
        elementary[find_obj(&cat, n)?.idx()] = true;
    }
    let mut obj_size: Vec<Option<usize>> = vec![None; cat.num_objects()];
    let mut maps: Vec<Option<&Vec<u8>>> = vec![None; cat.num_morphisms()];
    for (x, v) in &p.size {
        match v {
            SizeValue::Object(n) => obj_size[find_obj(&cat, x)?.idx()] = Some(*n),
            SizeValue::Map(m) => maps[find_mor(&cat, x)?.idx()] = Some(m),
        }
    }
    let obj_size: Vec<usize> = cat
        .objects()
        .map(|o| obj_size[o.idx()].ok_or_else(|| format!("no size for object `{}`", cat.obj_label(o))))
        .collect::<Result<_, _>>()?;
    let level = obj_size.iter().copied().max().unwrap_or(0);
    if level >= 16 {
        return Err(format!("size {level} is too large"));
    }
    let base = PointedBase::new(level);
    let mut mor_map = Vec::with_capacity(cat.num_morphisms());
    for m in cat.morphisms() {
        let (a, b) = (obj_size[cat.src(m).idx()], obj_size[cat.tgt(m).idx()]);
        let phi = match maps[m.idx()] {
            Some(images) => {
                if images.len() != a || images.iter().any(|&i| i as usize > b) {
                    return Err(format!("size of `{}` is not a map <{a}> -> <{b}>", cat.mor_label(m)));
                }
                PointedMap::new(images.clone(), b as u8)
            }
            None if cat.is_identity(m) => PointedMap::identity(a as u8),
            None => return Err(format!("no size for morphism `{}`", cat.mor_label(m))),
        };
        mor_map.push(base.id_of(&phi).expect("within the truncation"));
    }
    let obj_map = obj_size.iter().map(|&n| base.object(n)).collect();
    let size = FinFunctor::new_checked(cat.clone(), base.cat().clone(), obj_map, mor_map).map_err(|e| e.to_string())?;
    PatternData::new(name, cat, inert, active, elementary, size, base).map_err(|e| e.to_string())
}

fn build_functor(s: Arc<FinCat>, t: Arc<FinCat>, f: &dsl::FunctorDecl) -> Result<FinFunctor, String> {
    let mut obj: Vec<Option<ObjId>> = vec![None; s.num_objects()];
    for (a, b) in &f.objects {
        obj[find_obj(&s, a)?.idx()] = Some(find_obj(&t, b)?);
    }
    let obj: Vec<ObjId> = s
        .objects()
        .map(|o| obj[o.idx()].ok_or_else(|| format!("no image for object `{}`", s.obj_label(o))))
        .collect::<Result<_, _>>()?;
    let mut mor: Vec<Option<MorId>> = s
        .morphisms()
        .map(|m| s.is_identity(m).then(|| t.id(obj[s.src(m).idx()])))
        .collect();
    for (a, b) in &f.morphisms {
        mor[find_mor(&s, a)?.idx()] = Some(find_mor(&t, b)?);
    }
    let mor = s
        .morphisms()
        .map(|m| mor[m.idx()].ok_or_else(|| format!("no image for morphism `{}`", s.mor_label(m))))
        .collect::<Result<_, _>>()?;
    FinFunctor::new_checked(s, t, obj, mor).map_err(|e| e.to_string())
}

fn build_presheaf(cat: Arc<FinCat>, entries: &[PresheafEntry]) -> Result<SetFunctor, String> {
    let mut elems: Vec<Option<Vec<String>>> = vec![None; cat.num_objects()];
    let mut maps: Vec<Option<&Vec<(String, String)>>> = vec![None; cat.num_morphisms()];
    for e in entries {
        match e {
            PresheafEntry::Set(x, es) => elems[find_obj(&cat, x)?.idx()] = Some(es.clone()),
            PresheafEntry::Map(f, pairs) => maps[find_mor(&cat, f)?.idx()] = Some(pairs),
        }
    }
    let elems: Vec<Vec<String>> = cat
        .objects()
        .map(|o| elems[o.idx()].clone().ok_or_else(|| format!("no elements given at `{}`", cat.obj_label(o))))
        .collect::<Result<_, _>>()?;
    let index = |o: ObjId, e: &str| -> Result<u32, String> {
        elems[o.idx()]
            .iter()
            .position(|x| x == e)
            .map(|i| i as u32)
            .ok_or_else(|| format!("`{e}` is not an element at `{}`", cat.obj_label(o)))
    };
    let mut action = Vec::with_capacity(cat.num_morphisms());
    for m in cat.morphisms() {
        let (a, b) = (cat.src(m), cat.tgt(m));
        let row = match maps[m.idx()] {
            Some(pairs) => {
                let mut row: Vec<Option<u32>> = vec![None; elems[a.idx()].len()];
                for (x, y) in pairs {
                    row[index(a, x)? as usize] = Some(index(b, y)?);
                }
                row.into_iter()
                    .enumerate()
                    .map(|(i, y)| {
                        y.ok_or_else(|| format!("`{}` sends `{}` nowhere", cat.mor_label(m), elems[a.idx()][i]))
                    })
                    .collect::<Result<Vec<_>, _>>()?
            }
            None if cat.is_identity(m) => (0..elems[a.idx()].len() as u32).collect(),
            None => return Err(format!("no action given for `{}`", cat.mor_label(m))),
        };
        action.push(row);
    }
    let sizes = elems.iter().map(Vec::len).collect();
    let f = SetFunctor::new(cat, sizes, action)
        .and_then(|f| f.with_labels(elems))
        .map_err(|e| e.to_string())?;
    let r = f.validate();
    match r.first_counterexample() {
        None => Ok(f),
        Some(e) => Err(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_every_kind() {
        let ws = Workspace::parse(
            r#"
            category C { objects: a, b; mor f: a -> b; }
            pattern F = builtin f_star(2);
            morphism K = builtin cut(2);
            morphism I = builtin int_inclusion(F);
            monoid M = builtin chain(2) on F;
            functor G: C -> C { obj a => a; obj b => b; mor f => f; }
            presheaf X on C { a: {p, q}; b: {r}; f: p => r, q => r; }
            pattern F0 = builtin f_star(0);
            presheaf Y on F0 { "<0>": {u}; }
            "#,
        );
        let ws = match ws {
            Ok(ws) => ws,
            Err(e) => panic!("{e}"),
        };
        let kinds: Vec<&str> = ws.names().iter().map(|n| ws.get(n).unwrap().kind()).collect();
        assert_eq!(
            kinds,
            ["category", "pattern", "pattern morphism", "pattern morphism", "monoid", "functor", "presheaf", "pattern", "presheaf"]
        );
        let Binding::Presheaf(x) = ws.get("X").unwrap() else { panic!() };
        assert_eq!(x.sizes(), [2, 1]);
    }

    #[test]
    fn missing_composites_fail_on_load() {
        let e = Workspace::parse("category C { objects: a; mor f: a -> a; }").unwrap_err();
        assert!(matches!(e, WorkspaceError::Invalid { line: 1, ref name, .. } if name == "C"), "{e}");
    }

    #[test]
    fn broken_functors_fail_on_load() {
        let e = Workspace::parse(
            "category C { objects: a, b; mor f: a -> b; }\nfunctor G: C -> C { obj a => a; obj b => a; mor f => f; }",
        )
        .unwrap_err();
        assert!(matches!(e, WorkspaceError::Invalid { line: 2, .. }), "{e}");
    }

    #[test]
    fn presheaves_must_be_total_and_functorial() {
        let e = Workspace::parse("category C { objects: a, b; mor f: a -> b; }\npresheaf X on C { a: {p}; b: {q}; }")
            .unwrap_err();
        assert!(e.to_string().contains("no action given for `f`"), "{e}");
        let e = Workspace::parse("category C { objects: a, b; mor f: a -> b; }\npresheaf X on C { a: {p}; b: {}; f: p => q; }")
            .unwrap_err();
        assert!(e.to_string().contains("not an element"), "{e}");
    }

    #[test]
    fn user_patterns_get_their_size_functor() {
        let ws = Workspace::parse(
            r#"
            category C { objects: a, b; mor f: a -> b; }
            pattern P from C { inert: ; active: f; elementary: b; size: a => 0, b => 1, f => []; }
            "#,
        )
        .unwrap();
        let Binding::Pattern(p) = ws.get("P").unwrap() else { panic!() };
        assert_eq!(p.level(), 1);
        assert!(p.is_active(MorId(2)) && !p.is_inert(MorId(2)));
        assert!(Workspace::parse(
            "category C { objects: a, b; mor f: a -> b; }\npattern P from C { inert: ; active: ; elementary: ; size: a => 0, b => 1, f => [1]; }"
        )
        .is_err());
    }
}
