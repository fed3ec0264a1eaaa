use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::fincat::{tabulate_out, FinCat, FinFunctor, MorId, ObjId, Tabulated};
use crate::patterns::PatternMorphism;

/// The active slice `O^act_{/P}` of a pattern morphism `f: O → P`: pairs
/// `(O, φ: f(O) ⇝ P)` and active maps of `O` over `P`.
#[derive(Clone, Debug)]
pub struct ActiveSlice {
    pub target: ObjId,
    pub cat: Arc<FinCat>,
    pub tab: Tabulated<(ObjId, MorId), MorId>,
    /// Forgets the map to `P`.
    pub projection: FinFunctor,
    index: HashMap<(ObjId, MorId), ObjId>,
}

impl ActiveSlice {
    /// The slice object `(o, φ)`.
    pub fn object_of(&self, o: ObjId, phi: MorId) -> Option<ObjId> {
        self.index.get(&(o, phi)).copied()
    }

    pub fn pair(&self, s: ObjId) -> (ObjId, MorId) {
        self.tab.objects[s.idx()]
    }

    /// The slice morphism `s → t` given by `g`.
    pub fn morphism_of(&self, s: ObjId, t: ObjId, g: MorId) -> Option<MorId> {
        self.tab.lookup(s, t, &g)
    }
}

pub fn active_slice(f: &PatternMorphism, p: ObjId) -> Result<ActiveSlice> {
    let (src, tgt) = (&f.source, &f.target);
    let (sc, tc) = (src.cat(), tgt.cat());
    let mut objects = Vec::new();
    let mut first = vec![0usize; sc.num_objects() + 1];
    for o in sc.objects() {
        first[o.idx()] = objects.len();
        for &phi in tc.hom(f.functor.obj(o), p) {
            if tgt.is_active(phi) {
                objects.push((o, phi));
            }
        }
    }
    first[sc.num_objects()] = objects.len();
    let objs = &objects;
    let tab = tabulate_out(
        objects.clone(),
        |_, &(o, phi)| {
            let mut out = Vec::new();
            for &g in sc.out(o) {
                if !src.is_active(g) {
                    continue;
                }
                let o2 = sc.tgt(g);
                let fg = f.functor.mor(g);
                for t in first[o2.idx()]..first[o2.idx() + 1] {
                    if tc.comp(objs[t].1, fg) == phi {
                        out.push((t, g));
                    }
                }
            }
            out
        },
        |&(o, _)| sc.id(o),
        |&h, &g| sc.comp(h, g),
        |&(o, phi)| format!("({}, {})", sc.obj_label(o), tc.mor_label(phi)),
        |_, _, &g| sc.mor_label(g).to_string(),
    )?;
    let cat = Arc::new(tab.cat.clone());
    let projection = FinFunctor::new(
        cat.clone(),
        sc.clone(),
        tab.objects.iter().map(|&(o, _)| o).collect(),
        tab.morphisms.clone(),
    )?;
    let index = tab
        .objects
        .iter()
        .enumerate()
        .map(|(k, &pair)| (pair, ObjId(k as u32)))
        .collect();
    Ok(ActiveSlice {
        target: p,
        cat,
        tab,
        projection,
        index,
    })
}
