use std::collections::HashMap;
use std::sync::Arc;

use super::CatMonoid;
use crate::error::Result;
use crate::fincat::{opposite, tabulate_out, FinCat, FinFunctor, MorId, ObjId, Tabulated};
use crate::patterns::{CocartesianLifts, PatternData, PatternMorphism};

/// The Grothendieck construction of a category-valued monoid, with its
/// projection back to the pattern.
#[derive(Clone, Debug)]
pub struct Fibration {
    pub total: Arc<PatternData>,
    pub projection: PatternMorphism,
    /// `(g, id)` for every object over the source of an inert `g`.
    pub lifts: CocartesianLifts,
    /// Objects are `(O, x)` with `x ∈ M(O)`; morphisms `(O, x) → (O', x')`
    /// are `(g, β)` with `β: M(g)(x) → x'` in `M(O')`.
    pub tab: Tabulated<(ObjId, ObjId), (MorId, MorId)>,
    first: Vec<u32>,
}

impl Fibration {
    pub fn object_of(&self, o: ObjId, x: ObjId) -> ObjId {
        ObjId(self.first[o.idx()] + x.0)
    }

    pub fn pair(&self, e: ObjId) -> (ObjId, ObjId) {
        self.tab.objects[e.idx()]
    }

    pub fn morphism_of(&self, from: ObjId, to: ObjId, g: MorId, beta: MorId) -> Option<MorId> {
        self.tab.lookup(from, to, &(g, beta))
    }
}

pub fn grothendieck(m: &CatMonoid) -> Result<Fibration> {
    let p = &m.pattern;
    let cat = p.cat();
    let mut objects = Vec::new();
    let mut first = Vec::with_capacity(cat.num_objects());
    for o in cat.objects() {
        first.push(objects.len() as u32);
        objects.extend(m.fiber(o).objects().map(|x| (o, x)));
    }
    let tab = tabulate_out(
        objects,
        |_, &(o, x)| {
            let mut out = Vec::new();
            for &g in cat.out(o) {
                let t = cat.tgt(g);
                let fib = m.fiber(t);
                let y = m.action(g).obj(x);
                for &b in fib.out(y) {
                    out.push(((first[t.idx()] + fib.tgt(b).0) as usize, (g, b)));
                }
            }
            out
        },
        |&(o, x)| (cat.id(o), m.fiber(o).id(x)),
        |&(g2, b2), &(g1, b1)| {
            let fib = m.fiber(cat.tgt(g2));
            (cat.comp(g2, g1), fib.comp(b2, m.action(g2).mor(b1)))
        },
        |&(o, x)| format!("({}, {})", cat.obj_label(o), m.fiber(o).obj_label(x)),
        |_, _, &(g, b)| format!("({}, {})", cat.mor_label(g), m.fiber(cat.tgt(g)).mor_label(b)),
    )?;
    let total_cat = Arc::new(tab.cat.clone());
    let projection = FinFunctor::new(
        total_cat.clone(),
        cat.clone(),
        tab.objects.iter().map(|&(o, _)| o).collect(),
        tab.morphisms.iter().map(|&(g, _)| g).collect(),
    )?;
    let inert = tab
        .morphisms
        .iter()
        .map(|&(g, b)| p.is_inert(g) && m.fiber(cat.tgt(g)).is_iso(b))
        .collect();
    let active = tab.morphisms.iter().map(|&(g, _)| p.is_active(g)).collect();
    let elementary = tab.objects.iter().map(|&(o, _)| p.is_elementary(o)).collect();
    let size = projection.then(p.size())?;
    let total = Arc::new(PatternData::new(
        format!("∫{}", m.name),
        total_cat,
        inert,
        active,
        elementary,
        size,
        p.base().clone(),
    )?);
    let projection = PatternMorphism::new("projection", total.clone(), p.clone(), projection)?;
    let mut lifts = HashMap::new();
    for (e, &(o, x)) in tab.objects.iter().enumerate() {
        let e = ObjId(e as u32);
        for &g in cat.out(o).iter().filter(|&&g| p.is_inert(g)) {
            let t = cat.tgt(g);
            let y = m.action(g).obj(x);
            let to = ObjId(first[t.idx()] + y.0);
            if let Some(l) = tab.lookup(e, to, &(g, m.fiber(t).id(y))) {
                lifts.insert((e, g), l);
            }
        }
    }
    Ok(Fibration {
        total,
        projection,
        lifts,
        tab,
        first,
    })
}

/// Replaces every fiber by its opposite. Fibers shared between objects stay shared.
pub fn fiberwise_op(m: &CatMonoid) -> Result<CatMonoid> {
    let mut ops: Vec<(Arc<FinCat>, Arc<FinCat>)> = Vec::new();
    let mut op_of = |c: &Arc<FinCat>| {
        if let Some((_, op)) = ops.iter().find(|(orig, _)| Arc::ptr_eq(orig, c)) {
            return op.clone();
        }
        let op = Arc::new(opposite(c));
        ops.push((c.clone(), op.clone()));
        op
    };
    let fibers: Vec<Arc<FinCat>> = m.fibers.iter().map(&mut op_of).collect();
    let actions = m
        .actions
        .iter()
        .map(|a| {
            FinFunctor::new(
                op_of(a.source()),
                op_of(a.target()),
                a.obj_map().to_vec(),
                a.mor_map().to_vec(),
            )
        })
        .collect::<Result<_>>()?;
    CatMonoid::new(format!("{}^op", m.name), m.pattern.clone(), fibers, actions)
}
