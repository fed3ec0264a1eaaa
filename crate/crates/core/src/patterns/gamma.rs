use std::sync::Arc;

use super::{check_monoid, PatternData, PatternMorphism, PointedMap};
use crate::error::{Error, Result};
use crate::fincat::{tabulate_out, FinFunctor, MorId, ObjId};
use crate::kan::{ran, SetFunctor};
use crate::report::Report;
use crate::stdlib::f_star;

/// `Γ^×` truncated at `N`, with its two evaluation functors and the
/// inclusion of `F*` as the identity maps.
#[derive(Debug, Clone)]
pub struct Gamma {
    pub pattern: Arc<PatternData>,
    /// Evaluation at the source, `(j: ⟨n⟩ ↣ ⟨m⟩) ↦ ⟨n⟩`.
    pub ev0: FinFunctor,
    /// `⟨n⟩ ↦ id_⟨n⟩`.
    pub include: PatternMorphism,
}

/// The completed square `bottom` with `j' ∘ top = bottom ∘ j`, if one exists.
///
/// `j` is inert, so every non-basepoint of its target has exactly one
/// preimage and `bottom` is determined by `top`.
fn complete_square(j: &PointedMap, top: &PointedMap, j2: &PointedMap) -> Option<PointedMap> {
    let mut bottom = vec![0u8; j.target as usize];
    for i in 1..=j.source() {
        let img = j2.apply(top.apply(i));
        match j.apply(i) {
            0 if img != 0 => return None,
            0 => {}
            k => bottom[k as usize - 1] = img,
        }
    }
    Some(PointedMap::new(bottom, j2.target))
}

fn inert_maps_from(n: u8) -> Vec<PointedMap> {
    (0..=n)
        .flat_map(|m| PointedMap::all(n, m).into_iter().filter(PointedMap::is_inert))
        .collect()
}

/// Objects are inert maps `⟨n⟩ ↣ ⟨m⟩` with `n ≤ N`, morphisms are commuting
/// squares, classes are decided by the horizontal maps, the only elementary
/// object is `id_⟨1⟩` and the size functor is evaluation at the target.
pub fn gamma_times(level: usize) -> Result<Gamma> {
    let fstar = Arc::new(f_star(level)?);
    let base = fstar.base().clone();
    let objects: Vec<PointedMap> = (0..=level as u8).flat_map(inert_maps_from).collect();
    let objs = &objects;
    let tab = tabulate_out(
        objects.clone(),
        |_, j| {
            let mut out = Vec::new();
            for (t, j2) in objs.iter().enumerate() {
                for top in PointedMap::all(j.source(), j2.source()) {
                    if let Some(bottom) = complete_square(j, &top, j2) {
                        out.push((t, (top, bottom)));
                    }
                }
            }
            out
        },
        |j| (PointedMap::identity(j.source()), PointedMap::identity(j.target)),
        |(t2, b2), (t1, b1)| (t1.then(t2), b1.then(b2)),
        |j| format!("{j:?}"),
        |_, _, (t, b)| format!("({:?}, {:?})", t, b),
    )?;
    let cat = Arc::new(tab.cat.clone());
    let inert = tab.morphisms.iter().map(|(t, b)| t.is_inert() && b.is_inert()).collect();
    let active = tab.morphisms.iter().map(|(t, b)| t.is_active() && b.is_active()).collect();
    let elementary = tab.objects.iter().map(|j| *j == PointedMap::identity(1)).collect();
    let size = FinFunctor::new(
        cat.clone(),
        base.cat().clone(),
        tab.objects.iter().map(|j| ObjId(j.target as u32)).collect(),
        tab.morphisms.iter().map(|(_, b)| base.id_of(b).unwrap()).collect(),
    )?;
    let ev0 = FinFunctor::new(
        cat.clone(),
        base.cat().clone(),
        tab.objects.iter().map(|j| ObjId(j.source() as u32)).collect(),
        tab.morphisms.iter().map(|(t, _)| base.id_of(t).unwrap()).collect(),
    )?;
    let pattern = Arc::new(PatternData::new(
        format!("gamma_times({level})"),
        cat.clone(),
        inert,
        active,
        elementary,
        size,
        base.clone(),
    )?);
    let obj_of = |n: u8| ObjId(tab.objects.iter().position(|j| *j == PointedMap::identity(n)).unwrap() as u32);
    let include = FinFunctor::new(
        fstar.cat().clone(),
        cat.clone(),
        (0..=level as u8).map(obj_of).collect(),
        fstar
            .cat()
            .morphisms()
            .map(|m| {
                let phi = base.map(m);
                tab.lookup(obj_of(phi.source()), obj_of(phi.target), &(phi.clone(), phi.clone()))
                    .unwrap()
            })
            .collect(),
    )?;
    let include = PatternMorphism::new("i", fstar, pattern.clone(), include)?;
    Ok(Gamma {
        pattern,
        ev0,
        include,
    })
}

/// The fiber product `O ×_{F*} Γ^×` over evaluation at the source, with the
/// projection to `O` and the inclusion `O ↦ (O, id_|O|)`.
#[derive(Debug, Clone)]
pub struct GammaFiber {
    pub pattern: Arc<PatternData>,
    pub proj: FinFunctor,
    pub include: PatternMorphism,
}

pub fn fiber_product_with_gamma(p: &Arc<PatternData>) -> Result<GammaFiber> {
    let pc = p.cat().clone();
    let base = p.base().clone();
    let mut objects: Vec<(ObjId, PointedMap)> = Vec::new();
    for o in pc.objects() {
        for j in inert_maps_from(p.size_of(o) as u8) {
            objects.push((o, j));
        }
    }
    let mut first = vec![0usize; pc.num_objects() + 1];
    for (k, (o, _)) in objects.iter().enumerate().rev() {
        first[o.idx()] = k;
    }
    first[pc.num_objects()] = objects.len();
    let objs = &objects;
    // A square is determined by its top edge because `j` is inert, so
    // morphisms are keyed by the underlying map of `O` alone.
    let tab = tabulate_out(
        objects.clone(),
        |_, (o, j)| {
            let mut out = Vec::new();
            for &g in pc.out(*o) {
                let o2 = pc.tgt(g);
                let top = p.size_map(g);
                for t in first[o2.idx()]..first[o2.idx() + 1] {
                    if complete_square(j, top, &objs[t].1).is_some() {
                        out.push((t, g));
                    }
                }
            }
            out
        },
        |(o, _)| pc.id(*o),
        |g2, g1| pc.comp(*g2, *g1),
        |(o, j)| format!("({}, {:?})", pc.obj_label(*o), j),
        |(_, j), (_, j2), g| {
            let b = complete_square(j, p.size_map(*g), j2).expect("square completes");
            format!("({}, {:?})", pc.mor_label(*g), b)
        },
    )?;
    let cat = Arc::new(tab.cat.clone());
    let squares: Vec<(MorId, PointedMap)> = cat
        .morphisms()
        .map(|m| {
            let g = tab.morphisms[m.idx()];
            let j = &tab.objects[cat.src(m).idx()].1;
            let j2 = &tab.objects[cat.tgt(m).idx()].1;
            (g, complete_square(j, p.size_map(g), j2).expect("square completes"))
        })
        .collect();
    let inert = squares
        .iter()
        .map(|(g, b)| p.is_inert(*g) && b.is_inert())
        .collect();
    let active = squares
        .iter()
        .map(|(g, b)| p.is_active(*g) && b.is_active())
        .collect();
    let elementary = tab
        .objects
        .iter()
        .map(|(o, j)| p.is_elementary(*o) && *j == PointedMap::identity(1))
        .collect();
    let size = FinFunctor::new(
        cat.clone(),
        base.cat().clone(),
        tab.objects.iter().map(|(_, j)| ObjId(j.target as u32)).collect(),
        squares
            .iter()
            .map(|(_, b)| base.id_of(b).ok_or_else(|| Error::TruncationEscape(format!("{b:?}"))))
            .collect::<Result<_>>()?,
    )?;
    let proj = FinFunctor::new(
        cat.clone(),
        pc.clone(),
        tab.objects.iter().map(|(o, _)| *o).collect(),
        tab.morphisms.clone(),
    )?;
    let pattern = Arc::new(PatternData::new(
        format!("{} x gamma", p.name()),
        cat.clone(),
        inert,
        active,
        elementary,
        size,
        base,
    )?);
    let obj_of = |o: ObjId| -> ObjId {
        let id = PointedMap::identity(p.size_of(o) as u8);
        let k = (first[o.idx()]..tab.objects.len())
            .find(|&k| tab.objects[k].1 == id)
            .unwrap();
        ObjId(k as u32)
    };
    let include = FinFunctor::new(
        pc.clone(),
        cat.clone(),
        pc.objects().map(obj_of).collect(),
        pc.morphisms()
            .map(|g| {
                tab.lookup(obj_of(pc.src(g)), obj_of(pc.tgt(g)), &g).unwrap()
            })
            .collect(),
    )?;
    let include = PatternMorphism::new("i", p.clone(), pattern.clone(), include)?;
    Ok(GammaFiber {
        pattern,
        proj,
        include,
    })
}

/// Right Kan extends a monoid along `O → O ×_{F*} Γ^×` and checks that the
/// result is again a monoid whose restriction recovers the input.
pub fn monoid_gamma_roundtrip(p: &Arc<PatternData>, m: &SetFunctor) -> Result<Report> {
    let fiber = fiber_product_with_gamma(p)?;
    let i = &fiber.include.functor;
    let mut r = Report::new(format!("gamma roundtrip on {}", p.name()));
    r.push_child(check_monoid(p, m).renamed("input is a monoid"));
    let ext = ran(i, m)?;
    r.push_child(check_monoid(&fiber.pattern, &ext.functor).renamed("extension is a monoid"));

    let mut back = Report::new("restriction recovers the input");
    let pc = p.cat();
    let project = |o: ObjId, k: u32| {
        let d = i.obj(o);
        ext.component(i, d, k, o, fiber.pattern.cat().id(d)).unwrap()
    };
    for o in pc.objects() {
        let d = i.obj(o);
        let n = ext.functor.size(d);
        let mut images: Vec<u32> = (0..n as u32).map(|k| project(o, k)).collect();
        images.sort_unstable();
        images.dedup();
        if n != m.size(o) || images.len() != n {
            back.fail(format!(
                "at {}: extension has {n} elements, input has {}",
                pc.obj_label(o),
                m.size(o)
            ));
        }
    }
    for g in pc.morphisms() {
        let (a, ig) = (pc.src(g), i.mor(g));
        for k in 0..ext.functor.size(i.obj(a)) as u32 {
            let moved = project(pc.tgt(g), ext.functor.apply(ig, k));
            if moved != m.apply(g, project(a, k)) {
                back.fail(format!("comparison is not natural along {}", pc.mor_label(g)));
                break;
            }
        }
    }
    r.push_child(back);
    let sizes: Vec<String> = fiber
        .pattern
        .cat()
        .objects()
        .map(|d| format!("{}={}", fiber.pattern.cat().obj_label(d), ext.functor.size(d)))
        .collect();
    r.witness(format!("extension sizes: {}", sizes.join(" ")));
    Ok(r)
}

