use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use super::assoc::{ass_tab, bimod_tab, AssMap};
use super::commutative::{cmod_tab, fstar_coslice_tab};
use super::simplicial::{delta_op_slice1_tab, delta_op_tab, DeltaMap};
use crate::error::{Error, Result};
use crate::fincat::{FinFunctor, MorId, ObjId, Tabulated};
use crate::patterns::{PatternData, PatternMorphism};

/// Builds a functor between tabulated categories from maps on payloads.
fn between<O1, M1, O2, M2>(
    name: &str,
    source: (PatternData, Tabulated<O1, M1>),
    target: (PatternData, Tabulated<O2, M2>),
    on_obj: impl Fn(&O1) -> O2,
    on_mor: impl Fn(&M1) -> M2,
) -> Result<PatternMorphism>
where
    O2: Eq + Hash,
    M2: Clone + Eq + Hash,
{
    let (sp, st) = source;
    let (tp, tt) = target;
    let index: HashMap<&O2, ObjId> =
        tt.objects.iter().enumerate().map(|(i, o)| (o, ObjId(i as u32))).collect();
    let obj_map: Vec<ObjId> = st
        .objects
        .iter()
        .map(|o| {
            index.get(&on_obj(o)).copied().ok_or_else(|| {
                Error::TruncationEscape(format!("{name}: object has no image"))
            })
        })
        .collect::<Result<_>>()?;
    let sc = sp.cat().clone();
    let mor_map = sc
        .morphisms()
        .map(|m| {
            let (a, b) = (obj_map[sc.src(m).idx()], obj_map[sc.tgt(m).idx()]);
            tt.lookup(a, b, &on_mor(&st.morphisms[m.idx()])).ok_or_else(|| {
                Error::InvalidFunctor(format!("{name}: no image for {}", sc.mor_label(m)))
            })
        })
        .collect::<Result<_>>()?;
    let source = Arc::new(sp);
    let target = Arc::new(tp);
    let functor = FinFunctor::new(source.cat().clone(), target.cat().clone(), obj_map, mor_map)?;
    PatternMorphism::new(name, source, target, functor)
}

/// `Δ^op → Ass`: `[n] ↦ ⟨n⟩`, fibers ordered naturally.
pub fn cut(level: usize) -> Result<PatternMorphism> {
    between(
        "cut",
        delta_op_tab(level)?,
        ass_tab(level)?,
        |&n| n,
        |f| AssMap::natural(f.size()),
    )
}

/// `Δ^op_{/[1]} → Bimod`: consecutive pairs of the sequence label the points.
pub fn cut_prime(level: usize) -> Result<PatternMorphism> {
    between(
        "cut_prime",
        delta_op_slice1_tab(level)?,
        bimod_tab(level)?,
        |s| s.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>(),
        |f| AssMap::natural(f.size()),
    )
}

/// `F*_{⟨1⟩/} → CMod`: the marked point carries the module.
pub fn mu(level: usize) -> Result<PatternMorphism> {
    between(
        "mu",
        fstar_coslice_tab(level)?,
        cmod_tab(level)?,
        |&(n, i)| (1..=n).map(|t| u8::from(t == i)).collect::<Vec<u8>>(),
        Clone::clone,
    )
}

/// `P^int → P`.
pub fn int_inclusion(p: &Arc<PatternData>) -> Result<PatternMorphism> {
    let (int, incl) = p.inert_part()?;
    PatternMorphism::new("int_inclusion", Arc::new(int), p.clone(), incl)
}

/// `P^el → P^int`.
pub fn el_inclusion(p: &Arc<PatternData>) -> Result<PatternMorphism> {
    let (int, int_incl) = p.inert_part()?;
    let (el, el_incl) = p.elementary_part()?;
    let back: HashMap<MorId, MorId> = int_incl
        .mor_map()
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, MorId(i as u32)))
        .collect();
    let int = Arc::new(int);
    let functor = FinFunctor::new(
        el.cat().clone(),
        int.cat().clone(),
        el_incl.obj_map().to_vec(),
        el_incl.mor_map().iter().map(|m| back[m]).collect(),
    )?;
    PatternMorphism::new("el_inclusion", Arc::new(el), int, functor)
}

/// The size functor `P → F*` as a pattern morphism.
pub fn size_morphism(p: &Arc<PatternData>) -> Result<PatternMorphism> {
    let f = Arc::new(super::f_star(p.level())?);
    let functor = p.size().with_target(f.cat().clone())?;
    PatternMorphism::new(format!("size_{}", p.name()), p.clone(), f, functor)
}

/// The automorphism of `Δ^op` reflecting every `[n]`.
pub fn reverse_delta(level: usize) -> Result<PatternMorphism> {
    between(
        "reverse_delta",
        delta_op_tab(level)?,
        delta_op_tab(level)?,
        |&n| n,
        |f| DeltaMap {
            values: f.values.iter().rev().map(|&v| f.codomain - v).collect(),
            codomain: f.codomain,
        },
    )
}

/// The automorphism of `Ass` reversing every fiber order.
pub fn reverse_ass(level: usize) -> Result<PatternMorphism> {
    between(
        "reverse_ass",
        ass_tab(level)?,
        ass_tab(level)?,
        |&n| n,
        |f| AssMap {
            map: f.map.clone(),
            orders: f.orders.iter().map(|o| o.iter().rev().copied().collect()).collect(),
        },
    )
}
