//! Algebraic patterns: categories with an inert–active factorization system,
//! elementary objects and a size functor to `F*`.

mod cartesian;
mod factorization;
mod gamma;
mod monoid;
mod operad;
mod pointed;

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fincat::{same_cat, subcategory, FinCat, FinFunctor, MorId, ObjId};

pub use cartesian::{check_cartesian_pattern, check_pattern_morphism};
pub use factorization::check_factorization_system;
pub use gamma::{fiber_product_with_gamma, gamma_times, monoid_gamma_roundtrip, Gamma, GammaFiber};
pub use monoid::{check_monoid, check_monoid_within, segal_image};
pub(crate) use monoid::{tuple_at, tuple_index};
pub use operad::{
    check_operad_fibration, fibration_pattern, find_cocartesian_lifts, is_cocartesian,
    CocartesianLifts,
};
pub use pointed::{PointedBase, PointedMap};

/// A pattern truncated at some arity: a finite category with inert and
/// active morphism classes, elementary objects and a size functor into
/// `F*` truncated at the same level.
#[derive(Debug)]
pub struct PatternData {
    name: String,
    cat: Arc<FinCat>,
    inert: Vec<bool>,
    active: Vec<bool>,
    elementary: Vec<bool>,
    size: FinFunctor,
    base: Arc<PointedBase>,
    /// Canonical `(inert, active)` factorization of each morphism.
    factorization: Vec<Option<(MorId, MorId)>>,
    /// Canonical `ρ_i^O` for `i = 1..=|O|`.
    rho: Vec<Vec<Option<MorId>>>,
}

impl PatternData {
    /// Assembles a pattern. Only shapes are checked here; the pattern axioms
    /// are checked by [`check_cartesian_pattern`].
    pub fn new(
        name: impl Into<String>,
        cat: Arc<FinCat>,
        inert: Vec<bool>,
        active: Vec<bool>,
        elementary: Vec<bool>,
        size: FinFunctor,
        base: Arc<PointedBase>,
    ) -> Result<PatternData> {
        let m = cat.num_morphisms();
        if inert.len() != m || active.len() != m || elementary.len() != cat.num_objects() {
            return Err(Error::OutOfRange("class tables do not match the category".into()));
        }
        if !same_cat(size.source(), &cat) || !same_cat(size.target(), base.cat()) {
            return Err(Error::TypeMismatch("size functor must go from the pattern to F*".into()));
        }
        let size = size.with_target(base.cat().clone())?;
        let factorization = canonical_factorizations(&cat, &inert, &active);
        let mut p = PatternData {
            name: name.into(),
            cat,
            inert,
            active,
            elementary,
            size,
            base,
            factorization,
            rho: Vec::new(),
        };
        p.rho = p.cat.objects().map(|o| p.find_rhos(o)).collect();
        Ok(p)
    }

    fn find_rhos(&self, o: ObjId) -> Vec<Option<MorId>> {
        let n = self.size_of(o) as u8;
        (1..=n)
            .map(|i| {
                let target = PointedMap::rho(n, i);
                let id = self.cat.id(o);
                if self.is_elementary(o) && self.inert[id.idx()] && *self.size_map(id) == target {
                    return Some(id);
                }
                self.cat.out(o).iter().copied().find(|&u| {
                    self.inert[u.idx()]
                        && self.is_elementary(self.cat.tgt(u))
                        && *self.size_map(u) == target
                })
            })
            .collect()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn size(&self) -> &FinFunctor {
        &self.size
    }

    pub fn base(&self) -> &Arc<PointedBase> {
        &self.base
    }

    /// Truncation level `N`: every object has size at most `⟨N⟩`.
    pub fn level(&self) -> usize {
        self.base.level()
    }

    #[inline]
    pub fn is_inert(&self, m: MorId) -> bool {
        self.inert[m.idx()]
    }

    #[inline]
    pub fn is_active(&self, m: MorId) -> bool {
        self.active[m.idx()]
    }

    #[inline]
    pub fn is_elementary(&self, o: ObjId) -> bool {
        self.elementary[o.idx()]
    }

    pub fn inert_classes(&self) -> &[bool] {
        &self.inert
    }

    pub fn active_classes(&self) -> &[bool] {
        &self.active
    }

    pub fn elementary_flags(&self) -> &[bool] {
        &self.elementary
    }

    pub fn elementary_objects(&self) -> Vec<ObjId> {
        self.cat.objects().filter(|&o| self.is_elementary(o)).collect()
    }

    /// `n` such that `|o| = ⟨n⟩`.
    #[inline]
    pub fn size_of(&self, o: ObjId) -> usize {
        self.size.obj(o).idx()
    }

    #[inline]
    pub fn size_map(&self, m: MorId) -> &PointedMap {
        self.base.map(self.size.mor(m))
    }

    /// The canonical inert–active factorization `m = a ∘ i`, returned as `(i, a)`.
    ///
    /// Canonical means smallest middle object, then smallest inert id, then
    /// smallest active id.
    pub fn factorize(&self, m: MorId) -> Result<(MorId, MorId)> {
        self.factorization[m.idx()]
            .ok_or_else(|| Error::MissingFactorization(self.cat.mor_label(m).to_string()))
    }

    /// The canonical inert map `ρ_i^O: O → O_i` lying over `ρ_i`, for `1 ≤ i ≤ |O|`.
    pub fn rho(&self, o: ObjId, i: usize) -> Option<MorId> {
        self.rho[o.idx()].get(i.wrapping_sub(1)).copied().flatten()
    }

    /// All `ρ_i^O`, failing if one is missing.
    pub fn rhos(&self, o: ObjId) -> Result<Vec<MorId>> {
        self.rho[o.idx()]
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.ok_or_else(|| {
                    Error::Precondition(format!(
                        "no inert map from {} to an elementary object over rho_{}",
                        self.cat.obj_label(o),
                        i + 1
                    ))
                })
            })
            .collect()
    }

    /// The elementary components `O_i = target(ρ_i^O)`.
    pub fn components(&self, o: ObjId) -> Result<Vec<ObjId>> {
        Ok(self.rhos(o)?.into_iter().map(|r| self.cat.tgt(r)).collect())
    }

    /// Renames the pattern.
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// The wide subcategory of inert maps, as a pattern whose active maps are
    /// the isomorphisms, with its inclusion functor.
    pub fn inert_part(&self) -> Result<(PatternData, FinFunctor)> {
        let keep_obj = vec![true; self.cat.num_objects()];
        let sub = subcategory(&self.cat, &keep_obj, &self.inert)?;
        let cat = sub.cat.clone();
        let inert = vec![true; cat.num_morphisms()];
        let active = cat.morphisms().map(|m| cat.is_iso(m)).collect();
        let size = sub.inclusion.then(&self.size)?;
        let p = PatternData::new(
            format!("{}^int", self.name),
            cat,
            inert,
            active,
            self.elementary.clone(),
            size,
            self.base.clone(),
        )?;
        Ok((p, sub.inclusion))
    }

    /// The full subcategory of elementary objects with the inert maps between
    /// them, as a pattern, with its inclusion functor into `self.cat`.
    pub fn elementary_part(&self) -> Result<(PatternData, FinFunctor)> {
        let sub = subcategory(&self.cat, &self.elementary, &self.inert)?;
        let cat = sub.cat.clone();
        let all = vec![true; cat.num_morphisms()];
        let size = sub.inclusion.then(&self.size)?;
        let p = PatternData::new(
            format!("{}^el", self.name),
            cat.clone(),
            all.clone(),
            all,
            vec![true; cat.num_objects()],
            size,
            self.base.clone(),
        )?;
        Ok((p, sub.inclusion))
    }
}

fn canonical_factorizations(cat: &FinCat, inert: &[bool], active: &[bool]) -> Vec<Option<(MorId, MorId)>> {
    let found: Vec<Vec<(MorId, MorId, MorId)>> = cat
        .objects()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&a| {
            let mut seen = std::collections::HashSet::new();
            let mut out = Vec::new();
            for &i in cat.out(a) {
                if !inert[i.idx()] {
                    continue;
                }
                for &j in cat.out(cat.tgt(i)) {
                    if active[j.idx()] {
                        let h = cat.comp(j, i);
                        if seen.insert(h) {
                            out.push((h, i, j));
                        }
                    }
                }
            }
            out
        })
        .collect();
    let mut table = vec![None; cat.num_morphisms()];
    for (h, i, j) in found.into_iter().flatten() {
        table[h.idx()] = Some((i, j));
    }
    table
}

/// A functor between patterns that is meant to preserve all the structure.
#[derive(Debug, Clone)]
pub struct PatternMorphism {
    pub name: String,
    pub source: Arc<PatternData>,
    pub target: Arc<PatternData>,
    pub functor: FinFunctor,
}

impl PatternMorphism {
    pub fn new(
        name: impl Into<String>,
        source: Arc<PatternData>,
        target: Arc<PatternData>,
        functor: FinFunctor,
    ) -> Result<Self> {
        if !same_cat(functor.source(), source.cat()) || !same_cat(functor.target(), target.cat()) {
            return Err(Error::TypeMismatch(
                "functor does not go between the given patterns".into(),
            ));
        }
        Ok(PatternMorphism {
            name: name.into(),
            source,
            target,
            functor,
        })
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &PatternMorphism) -> Result<PatternMorphism> {
        if !same_cat(self.target.cat(), g.source.cat()) {
            return Err(Error::TypeMismatch(format!("{} and {} do not compose", self.name, g.name)));
        }
        let functor = self.functor.then(&g.functor)?;
        PatternMorphism::new(
            format!("{}.{}", g.name, self.name),
            self.source.clone(),
            g.target.clone(),
            functor,
        )
    }

    pub fn identity(p: Arc<PatternData>) -> Self {
        PatternMorphism {
            name: format!("id_{}", p.name()),
            functor: FinFunctor::identity(p.cat().clone()),
            source: p.clone(),
            target: p,
        }
    }
}

#[cfg(test)]
mod tests;
