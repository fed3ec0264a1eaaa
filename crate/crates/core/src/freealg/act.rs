use std::collections::HashMap;
use std::sync::Arc;

use super::triangle_groupoid;
use crate::error::Result;
use crate::fincat::{iso_classes, FinCat, FinGroupoid, MorId, ObjId};
use crate::patterns::PatternData;

/// The groupoid `Act(X)` of active maps into `X`, with isomorphisms over
/// `X` as morphisms.
#[derive(Clone, Debug)]
pub struct ActGroupoid {
    pub target: ObjId,
    pub groupoid: FinGroupoid,
    /// The active map behind each object, in increasing id order.
    pub actives: Vec<MorId>,
    /// The isomorphism behind each morphism.
    pub isos: Vec<MorId>,
    index: HashMap<(ObjId, ObjId, MorId), MorId>,
}

impl ActGroupoid {
    pub fn cat(&self) -> &Arc<FinCat> {
        self.groupoid.cat()
    }

    pub fn object_of(&self, active: MorId) -> Option<ObjId> {
        self.actives
            .binary_search(&active)
            .ok()
            .map(|k| ObjId(k as u32))
    }

    /// The morphism `x → y` given by the isomorphism `u`.
    pub fn morphism_of(&self, x: ObjId, y: ObjId, u: MorId) -> Option<MorId> {
        self.index.get(&(x, y, u)).copied()
    }

    /// Connected components, each listed by its members.
    pub fn components(&self) -> Vec<Vec<ObjId>> {
        let classes = iso_classes(self.cat());
        let mut reps: Vec<usize> = classes.clone();
        reps.sort_unstable();
        reps.dedup();
        reps.iter()
            .map(|&r| {
                self.cat()
                    .objects()
                    .filter(|o| classes[o.idx()] == r)
                    .collect()
            })
            .collect()
    }

    pub fn automorphisms(&self, o: ObjId) -> usize {
        self.cat().hom(o, o).len()
    }

    /// Only identity morphisms.
    pub fn is_discrete(&self) -> bool {
        self.cat().num_morphisms() == self.cat().num_objects()
    }
}

pub fn act_groupoid(p: &PatternData, x: ObjId) -> Result<ActGroupoid> {
    let cat = p.cat();
    let arrows: Vec<MorId> = cat
        .incoming(x)
        .iter()
        .copied()
        .filter(|&m| p.is_active(m))
        .collect();
    let tab = triangle_groupoid(cat, arrows, false)?;
    let index = tab
        .cat
        .morphisms()
        .map(|m| ((tab.cat.src(m), tab.cat.tgt(m), tab.morphisms[m.idx()]), m))
        .collect();
    let groupoid = FinGroupoid::new(Arc::new(tab.cat))?;
    Ok(ActGroupoid {
        target: x,
        groupoid,
        actives: tab.objects,
        isos: tab.morphisms,
        index,
    })
}
