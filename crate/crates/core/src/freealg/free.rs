use std::collections::HashMap;

use rayon::prelude::*;

use super::act_groupoid;
use crate::error::{Error, Result};
use crate::fincat::{full_subcategory, MorId, ObjId};
use crate::kan::{colimit, SetFunctor};
use crate::patterns::{tuple_at, tuple_index, PatternData};

/// Free algebra on generators at the elementary objects, graded by arity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeAlgebra {
    pub bound: usize,
    pub elementary: Vec<ObjId>,
    /// `sizes[e][d]` counts the orbits in degree `d` at the `e`-th elementary object.
    pub sizes: Vec<Vec<usize>>,
    /// `unit[e][x]` is the degree-1 orbit of the generator `x`.
    pub unit: Vec<Vec<u32>>,
}

impl GradedFreeAlgebra {
    pub fn degrees(&self, e: ObjId) -> Option<&[usize]> {
        let k = self.elementary.iter().position(|&x| x == e)?;
        Some(&self.sizes[k])
    }

    pub fn total(&self, e: ObjId) -> usize {
        self.degrees(e).map_or(0, |d| d.iter().sum())
    }
}

/// Translation between elementary objects of `p` and the objects and
/// morphisms of the groupoid `p^el`.
pub(crate) struct ElementaryIds {
    pub obj: HashMap<ObjId, ObjId>,
    pub mor: HashMap<MorId, MorId>,
    pub phi: SetFunctor,
}

impl ElementaryIds {
    pub fn new(p: &PatternData, phi: &SetFunctor) -> Result<ElementaryIds> {
        let (el, incl) = p.elementary_part()?;
        let phi = phi.with_source(el.cat().clone()).map_err(|_| {
            Error::TypeMismatch("generators must live on the elementary groupoid".into())
        })?;
        let obj = incl
            .obj_map()
            .iter()
            .enumerate()
            .map(|(k, &o)| (o, ObjId(k as u32)))
            .collect();
        let mor = incl
            .mor_map()
            .iter()
            .enumerate()
            .map(|(k, &m)| (m, MorId(k as u32)))
            .collect();
        Ok(ElementaryIds { obj, mor, phi })
    }

    pub fn size(&self, e: ObjId) -> usize {
        self.phi.size(self.obj[&e])
    }

    pub fn apply(&self, m: MorId, x: u32) -> u32 {
        self.phi.apply(self.mor[&m], x)
    }
}

/// The map `∏ Φ(X_k) → ∏ Φ(X'_k)` induced by an isomorphism `u: X → X'`.
///
/// The `k`-th component of the result comes from the component `k'` that
/// `|u|` sends to `k`, moved along the isomorphism `e: X_k' → X'_k` with
/// `e ∘ ρ_k' = ρ_k ∘ u`.
pub(crate) fn tuple_action(
    p: &PatternData,
    ids: &ElementaryIds,
    u: MorId,
) -> Result<impl Fn(&[u32]) -> Vec<u32>> {
    let cat = p.cat();
    let (x, y) = (cat.src(u), cat.tgt(u));
    let (rx, ry) = (p.rhos(x)?, p.rhos(y)?);
    let size = p.size_map(u);
    let mut moves = Vec::with_capacity(ry.len());
    for (k, &rk) in ry.iter().enumerate() {
        let from = (1..=size.source())
            .find(|&i| size.apply(i) as usize == k + 1)
            .ok_or_else(|| Error::Precondition(format!("{} is not a bijection", cat.mor_label(u))))?
            as usize
            - 1;
        let target = cat.comp(rk, u);
        let e = cat
            .hom(cat.tgt(rx[from]), cat.tgt(rk))
            .iter()
            .copied()
            .find(|&e| cat.comp(e, rx[from]) == target)
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "no comparison of components along {}",
                    cat.mor_label(u)
                ))
            })?;
        moves.push((from, e));
    }
    let table: Vec<(usize, Vec<u32>)> = moves
        .into_iter()
        .map(|(from, e)| {
            let n = ids.size(cat.src(e)) as u32;
            (from, (0..n).map(|v| ids.apply(e, v)).collect())
        })
        .collect();
    Ok(move |t: &[u32]| table.iter().map(|(from, act)| act[t[*from] as usize]).collect())
}

/// `F(Φ)(E)` in each degree `d ≤ bound`: the orbits of `∏_i Φ(X_i)` over the
/// part of `Act(E)` whose sources have size `⟨d⟩`.
///
/// Orbits are strict: the quotient by the automorphism action, as a colimit
/// of sets.
pub fn free_algebra(p: &PatternData, phi: &SetFunctor, bound: usize) -> Result<GradedFreeAlgebra> {
    let elementary = p.elementary_objects();
    if elementary.is_empty() {
        return Err(Error::Precondition(format!("{} has no elementary objects", p.name())));
    }
    if bound > p.level() {
        return Err(Error::TruncationEscape(format!(
            "degree {bound} exceeds the truncation level {}",
            p.level()
        )));
    }
    let ids = ElementaryIds::new(p, phi)?;
    let cat = p.cat();
    let per_elementary: Vec<Result<(Vec<usize>, Vec<u32>)>> = elementary
        .par_iter()
        .map(|&e| {
            let act = act_groupoid(p, e)?;
            let ac = act.cat();
            let mut sizes = Vec::with_capacity(bound + 1);
            let mut unit = Vec::new();
            for d in 0..=bound {
                let keep: Vec<bool> = act
                    .actives
                    .iter()
                    .map(|&a| p.size_of(cat.src(a)) == d)
                    .collect();
                let sub = full_subcategory(ac, &keep);
                let sc = &sub.cat;
                let dims: Vec<Vec<usize>> = sc
                    .objects()
                    .map(|o| {
                        let x = cat.src(act.actives[sub.obj_to_old(o).idx()]);
                        Ok(p.components(x)?.iter().map(|&c| ids.size(c)).collect())
                    })
                    .collect::<Result<_>>()?;
                let sizes_d: Vec<usize> = dims.iter().map(|d| d.iter().product()).collect();
                let mut action = Vec::with_capacity(sc.num_morphisms());
                for m in sc.morphisms() {
                    let u = act.isos[sub.mor_to_old(m).idx()];
                    let (s, t) = (sc.src(m).idx(), sc.tgt(m).idx());
                    let move_tuple = tuple_action(p, &ids, u)?;
                    action.push(
                        (0..sizes_d[s])
                            .map(|k| {
                                let moved = move_tuple(&tuple_at(&dims[s], k));
                                tuple_index(&dims[t], &moved) as u32
                            })
                            .collect(),
                    );
                }
                let values = SetFunctor::new(sc.clone(), sizes_d, action)?;
                let orbits = colimit(&values);
                if d == 1 {
                    let id = act
                        .object_of(cat.id(e))
                        .and_then(|o| sub.obj_to_new[o.idx()])
                        .expect("the identity is an active map of size one");
                    unit = (0..ids.size(e) as u32).map(|x| orbits.leg(id, x)).collect();
                }
                sizes.push(orbits.apex);
            }
            Ok((sizes, unit))
        })
        .collect();
    let mut sizes = Vec::with_capacity(elementary.len());
    let mut unit = Vec::with_capacity(elementary.len());
    for r in per_elementary {
        let (s, u) = r?;
        sizes.push(s);
        unit.push(u);
    }
    Ok(GradedFreeAlgebra {
        bound,
        elementary,
        sizes,
        unit,
    })
}
