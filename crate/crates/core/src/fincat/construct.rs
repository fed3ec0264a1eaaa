use std::collections::HashMap;
use std::sync::Arc;

use super::{same_cat, tabulate_out, FinCat, FinFunctor, MorId, ObjId, UNDEFINED};
use crate::error::{Error, Result};
use crate::kan::SetFunctor;

/// The category with one object and one morphism.
pub fn terminal() -> FinCat {
    FinCat::from_parts(
        vec!["*".into()],
        vec![(ObjId(0), ObjId(0), "id_*".into())],
        vec![MorId(0)],
        [],
    )
    .expect("terminal category")
}

/// The opposite category. Ids and labels are kept, so `op(op(C)) == C`.
pub fn opposite(c: &FinCat) -> FinCat {
    let mut op = FinCat::skeleton(
        c.obj_labels.clone(),
        c.mor_labels.clone(),
        c.tgt.clone(),
        c.src.clone(),
        c.identities.clone(),
    );
    op.comp = vec![UNDEFINED; op.comp_len()];
    for f in op.morphisms() {
        for &g in op.out[op.tgt(f).idx()].iter() {
            let slot = op.slot(g, f);
            if let Some(h) = c.compose(f, g) {
                op.comp[slot] = h.0;
            }
        }
    }
    op.stray = c.stray.iter().map(|&(g, f, h)| (f, g, h)).collect();
    op
}

/// A product of finite categories, optionally restricted to a full
/// subcategory of tuples.
#[derive(Clone, Debug)]
pub struct ProductCat {
    pub cat: Arc<FinCat>,
    pub factors: Vec<Arc<FinCat>>,
    pub objects: Vec<Vec<ObjId>>,
    pub morphisms: Vec<Vec<MorId>>,
    obj_index: HashMap<Vec<ObjId>, ObjId>,
    mor_index: HashMap<Vec<MorId>, MorId>,
}

impl ProductCat {
    pub fn obj_of(&self, tuple: &[ObjId]) -> Option<ObjId> {
        self.obj_index.get(tuple).copied()
    }

    pub fn mor_of(&self, tuple: &[MorId]) -> Option<MorId> {
        self.mor_index.get(tuple).copied()
    }

    pub fn projection(&self, i: usize) -> FinFunctor {
        FinFunctor::new(
            self.cat.clone(),
            self.factors[i].clone(),
            self.objects.iter().map(|t| t[i]).collect(),
            self.morphisms.iter().map(|t| t[i]).collect(),
        )
        .expect("projection tables")
    }
}

/// Binary product.
pub fn product(c: &Arc<FinCat>, d: &Arc<FinCat>) -> ProductCat {
    product_of(&[c.clone(), d.clone()], |_| true).expect("binary product")
}

/// Product of any number of factors (the empty product is terminal),
/// restricted to the full subcategory of object tuples accepted by `keep`.
pub fn product_of(
    factors: &[Arc<FinCat>],
    keep: impl Fn(&[ObjId]) -> bool + Sync,
) -> Result<ProductCat> {
    let mut tuples: Vec<Vec<ObjId>> = vec![Vec::new()];
    for c in factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                c.objects().map(move |o| {
                    let mut t = t.clone();
                    t.push(o);
                    t
                })
            })
            .collect();
    }
    tuples.retain(|t| keep(t));
    let obj_index: HashMap<Vec<ObjId>, ObjId> = tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), ObjId(i as u32)))
        .collect();
    let tab = tabulate_out(
        tuples,
        |_, t| {
            let mut partial: Vec<Vec<MorId>> = vec![Vec::new()];
            for (i, c) in factors.iter().enumerate() {
                partial = partial
                    .into_iter()
                    .flat_map(|p| {
                        c.out(t[i]).iter().map(move |&m| {
                            let mut p = p.clone();
                            p.push(m);
                            p
                        })
                    })
                    .collect();
            }
            partial
                .into_iter()
                .filter_map(|ms| {
                    let tgt: Vec<ObjId> =
                        ms.iter().zip(factors).map(|(&m, c)| c.tgt(m)).collect();
                    obj_index.get(&tgt).map(|&o| (o.idx(), ms))
                })
                .collect()
        },
        |t| t.iter().zip(factors).map(|(&o, c)| c.id(o)).collect(),
        |g: &Vec<MorId>, f: &Vec<MorId>| {
            g.iter()
                .zip(f)
                .zip(factors)
                .map(|((&g, &f), c)| c.comp(g, f))
                .collect()
        },
        |t| {
            let parts: Vec<&str> = t.iter().zip(factors).map(|(&o, c)| c.obj_label(o)).collect();
            format!("({})", parts.join(", "))
        },
        |_, _, ms| {
            let parts: Vec<&str> = ms.iter().zip(factors).map(|(&m, c)| c.mor_label(m)).collect();
            format!("({})", parts.join(", "))
        },
    )?;
    let mor_index = tab
        .morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), MorId(i as u32)))
        .collect();
    Ok(ProductCat {
        cat: Arc::new(tab.cat),
        factors: factors.to_vec(),
        objects: tab.objects,
        morphisms: tab.morphisms,
        obj_index,
        mor_index,
    })
}

/// The comma category `F ↓ G` for `F: A → C`, `G: B → C`.
///
/// Objects are triples `(a, b, u: F a → G b)`; morphisms `(α, β)` are
/// commuting squares.
#[derive(Clone, Debug)]
pub struct Comma {
    pub cat: Arc<FinCat>,
    pub objects: Vec<(ObjId, ObjId, MorId)>,
    pub morphisms: Vec<(MorId, MorId)>,
    pub proj_a: FinFunctor,
    pub proj_b: FinFunctor,
}

pub fn comma(f: &FinFunctor, g: &FinFunctor) -> Result<Comma> {
    if !same_cat(f.target(), g.target()) {
        return Err(Error::TypeMismatch("comma of functors with different targets".into()));
    }
    let (a, b, c) = (f.source().clone(), g.source().clone(), f.target().clone());
    let mut objects = Vec::new();
    for x in a.objects() {
        for y in b.objects() {
            for &u in c.hom(f.obj(x), g.obj(y)) {
                objects.push((x, y, u));
            }
        }
    }
    let index: HashMap<(ObjId, ObjId, MorId), usize> = objects
        .iter()
        .enumerate()
        .map(|(i, &o)| (o, i))
        .collect();
    let tab = tabulate_out(
        objects,
        |_, &(x, y, u)| {
            let mut res = Vec::new();
            for &alpha in a.out(x) {
                for &beta in b.out(y) {
                    let (x2, y2) = (a.tgt(alpha), b.tgt(beta));
                    let lhs = c.comp(g.mor(beta), u);
                    for &u2 in c.hom(f.obj(x2), g.obj(y2)) {
                        if c.comp(u2, f.mor(alpha)) == lhs {
                            res.push((index[&(x2, y2, u2)], (alpha, beta)));
                        }
                    }
                }
            }
            res
        },
        |&(x, y, _)| (a.id(x), b.id(y)),
        |&(g2, h2), &(g1, h1)| (a.comp(g2, g1), b.comp(h2, h1)),
        |&(x, y, u)| format!("({}, {}, {})", a.obj_label(x), b.obj_label(y), c.mor_label(u)),
        |_, _, &(al, be)| format!("({}, {})", a.mor_label(al), b.mor_label(be)),
    )?;
    let cat = Arc::new(tab.cat);
    let proj_a = FinFunctor::new(
        cat.clone(),
        a.clone(),
        tab.objects.iter().map(|o| o.0).collect(),
        tab.morphisms.iter().map(|m| m.0).collect(),
    )?;
    let proj_b = FinFunctor::new(
        cat.clone(),
        b.clone(),
        tab.objects.iter().map(|o| o.1).collect(),
        tab.morphisms.iter().map(|m| m.1).collect(),
    )?;
    Ok(Comma {
        cat,
        objects: tab.objects,
        morphisms: tab.morphisms,
        proj_a,
        proj_b,
    })
}

/// The category of elements of a set-valued functor.
#[derive(Clone, Debug)]
pub struct Elements {
    pub cat: Arc<FinCat>,
    /// `(c, x)` with `x ∈ F(c)`.
    pub objects: Vec<(ObjId, u32)>,
    pub projection: FinFunctor,
}

pub fn elements(functor: &SetFunctor) -> Elements {
    let c = functor.source().clone();
    let mut objects = Vec::new();
    let mut offset = Vec::with_capacity(c.num_objects());
    for o in c.objects() {
        offset.push(objects.len());
        for x in 0..functor.size(o) as u32 {
            objects.push((o, x));
        }
    }
    let tab = tabulate_out(
        objects,
        |_, &(o, x)| {
            c.out(o)
                .iter()
                .map(|&m| (offset[c.tgt(m).idx()] + functor.apply(m, x) as usize, m))
                .collect()
        },
        |&(o, _)| c.id(o),
        |&g, &f| c.comp(g, f),
        |&(o, x)| format!("{}:{}", c.obj_label(o), functor.element_label(o, x)),
        |&(_, x), _, &m| format!("{}@{}", c.mor_label(m), x),
    )
    .expect("category of elements is closed");
    let cat = Arc::new(tab.cat);
    let projection = FinFunctor::new(
        cat.clone(),
        c.clone(),
        tab.objects.iter().map(|o| o.0).collect(),
        tab.morphisms.clone(),
    )
    .expect("projection tables");
    Elements {
        cat,
        objects: tab.objects,
        projection,
    }
}

/// A subcategory with its inclusion and the id translations both ways.
#[derive(Clone, Debug)]
pub struct Subcategory {
    pub cat: Arc<FinCat>,
    pub inclusion: FinFunctor,
    pub obj_to_new: Vec<Option<ObjId>>,
    pub mor_to_new: Vec<Option<MorId>>,
}

impl Subcategory {
    pub fn obj_to_old(&self, o: ObjId) -> ObjId {
        self.inclusion.obj(o)
    }

    pub fn mor_to_old(&self, m: MorId) -> MorId {
        self.inclusion.mor(m)
    }
}

/// The subcategory on the kept objects and the kept morphisms between them.
///
/// Identities of kept objects are always kept. Fails if the kept morphisms
/// are not closed under composition.
pub fn subcategory(c: &Arc<FinCat>, keep_obj: &[bool], keep_mor: &[bool]) -> Result<Subcategory> {
    let mut obj_to_new = vec![None; c.num_objects()];
    let mut objs = Vec::new();
    for o in c.objects() {
        if keep_obj[o.idx()] {
            obj_to_new[o.idx()] = Some(ObjId(objs.len() as u32));
            objs.push(o);
        }
    }
    let mut mor_to_new = vec![None; c.num_morphisms()];
    let mut mors = Vec::new();
    for m in c.morphisms() {
        let keep = keep_obj[c.src(m).idx()]
            && keep_obj[c.tgt(m).idx()]
            && (keep_mor[m.idx()] || c.is_identity(m));
        if keep {
            mor_to_new[m.idx()] = Some(MorId(mors.len() as u32));
            mors.push(m);
        }
    }
    let sub = FinCat::from_fn(
        objs.iter().map(|&o| c.obj_label(o).to_string()).collect(),
        mors.iter().map(|&m| c.mor_label(m).to_string()).collect(),
        mors.iter().map(|&m| obj_to_new[c.src(m).idx()].unwrap()).collect(),
        mors.iter().map(|&m| obj_to_new[c.tgt(m).idx()].unwrap()).collect(),
        objs.iter().map(|&o| mor_to_new[c.id(o).idx()].unwrap()).collect(),
        |g, f| mor_to_new[c.comp(mors[g.idx()], mors[f.idx()]).idx()],
    )?;
    let cat = Arc::new(sub);
    let inclusion = FinFunctor::new(cat.clone(), c.clone(), objs, mors)?;
    Ok(Subcategory {
        cat,
        inclusion,
        obj_to_new,
        mor_to_new,
    })
}

pub fn full_subcategory(c: &Arc<FinCat>, keep_obj: &[bool]) -> Subcategory {
    subcategory(c, keep_obj, &vec![true; c.num_morphisms()]).expect("full subcategories are closed")
}
