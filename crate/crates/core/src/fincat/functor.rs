use std::sync::Arc;

use super::{opposite, same_cat, FinCat, MorId, ObjId};
use crate::error::{Error, Result};
use crate::report::Report;

/// A functor between finite categories, given by its object and morphism tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

impl FinFunctor {
    /// Checks only the shape of the tables; use [`FinFunctor::validate`] for the laws.
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<Self> {
        if obj_map.len() != source.num_objects() || mor_map.len() != source.num_morphisms() {
            return Err(Error::InvalidFunctor("table sizes do not match the source".into()));
        }
        if obj_map.iter().any(|o| o.idx() >= target.num_objects())
            || mor_map.iter().any(|m| m.idx() >= target.num_morphisms())
        {
            return Err(Error::InvalidFunctor("image outside the target".into()));
        }
        Ok(FinFunctor {
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    /// Like [`FinFunctor::new`] but also rejects tables violating the functor laws.
    pub fn new_checked(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        obj_map: Vec<ObjId>,
        mor_map: Vec<MorId>,
    ) -> Result<Self> {
        let f = FinFunctor::new(source, target, obj_map, mor_map)?;
        let r = f.validate();
        match r.first_counterexample() {
            None => Ok(f),
            Some(c) => Err(Error::InvalidFunctor(c.to_string())),
        }
    }

    pub fn identity(cat: Arc<FinCat>) -> Self {
        FinFunctor {
            obj_map: cat.objects().collect(),
            mor_map: cat.morphisms().collect(),
            source: cat.clone(),
            target: cat,
        }
    }

    /// The functor sending everything to `obj` and its identity.
    pub fn constant(source: Arc<FinCat>, target: Arc<FinCat>, obj: ObjId) -> Self {
        let id = target.id(obj);
        FinFunctor {
            obj_map: vec![obj; source.num_objects()],
            mor_map: vec![id; source.num_morphisms()],
            source,
            target,
        }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    #[inline]
    pub fn obj(&self, o: ObjId) -> ObjId {
        self.obj_map[o.idx()]
    }

    #[inline]
    pub fn mor(&self, m: MorId) -> MorId {
        self.mor_map[m.idx()]
    }

    pub fn obj_map(&self) -> &[ObjId] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[MorId] {
        &self.mor_map
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &FinFunctor) -> Result<FinFunctor> {
        if !same_cat(&self.target, &then.source) {
            return Err(Error::TypeMismatch(
                "composing functors whose middle categories differ".into(),
            ));
        }
        Ok(FinFunctor {
            source: self.source.clone(),
            target: then.target.clone(),
            obj_map: self.obj_map.iter().map(|&o| then.obj(o)).collect(),
            mor_map: self.mor_map.iter().map(|&m| then.mor(m)).collect(),
        })
    }

    /// The same tables viewed between the opposite categories.
    pub fn opposite(&self) -> FinFunctor {
        FinFunctor {
            source: Arc::new(opposite(&self.source)),
            target: Arc::new(opposite(&self.target)),
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    /// Retargets the functor along an identical copy of its target.
    pub fn with_target(&self, target: Arc<FinCat>) -> Result<FinFunctor> {
        if !same_cat(&self.target, &target) {
            return Err(Error::TypeMismatch("retargeting to a different category".into()));
        }
        Ok(FinFunctor {
            target,
            ..self.clone()
        })
    }

    /// Checks typing, identities and composites.
    pub fn validate(&self) -> Report {
        let (s, t) = (&*self.source, &*self.target);
        let mut r = Report::new("functor laws");
        for m in s.morphisms() {
            let fm = self.mor(m);
            if t.src(fm) != self.obj(s.src(m)) || t.tgt(fm) != self.obj(s.tgt(m)) {
                r.fail(format!(
                    "{} is sent to {} which has the wrong endpoints",
                    s.mor_label(m),
                    t.mor_label(fm)
                ));
            }
        }
        if !r.passed {
            return r;
        }
        for o in s.objects() {
            if self.mor(s.id(o)) != t.id(self.obj(o)) {
                r.fail(format!("identity of {} is not preserved", s.obj_label(o)));
            }
        }
        for f in s.morphisms() {
            for &g in s.out(s.tgt(f)) {
                if let Some(gf) = s.compose(g, f) {
                    if self.mor(gf) != t.comp(self.mor(g), self.mor(f)) {
                        r.fail(format!(
                            "composite {} . {} is not preserved",
                            s.mor_label(g),
                            s.mor_label(f)
                        ));
                    }
                }
            }
        }
        r
    }
}
