use std::sync::Arc;

use rayon::prelude::*;

use super::{arrow_object, triangle_groupoid};
use crate::error::{Error, Result};
use crate::fincat::{check_equivalence, FinFunctor, MorId, ObjId};
use crate::patterns::PatternMorphism;
use crate::report::Report;

/// Lifts an inert `ι: f(o) → Q` to an inert `j: o → o'` together with an
/// isomorphism `θ: f(o') → Q` such that `θ ∘ f(j) = ι`.
///
/// Picks the smallest `j`, then the smallest `θ`.
pub fn inert_lift(f: &PatternMorphism, o: ObjId, iota: MorId) -> Option<(MorId, MorId)> {
    let (sc, tc) = (f.source.cat(), f.target.cat());
    let q = tc.tgt(iota);
    let mut outs: Vec<MorId> = sc.out(o).to_vec();
    outs.sort_unstable();
    outs.into_iter()
        .filter(|&j| f.source.is_inert(j))
        .find_map(|j| {
            let fj = f.functor.mor(j);
            tc.hom(tc.tgt(fj), q)
                .iter()
                .copied()
                .find(|&theta| tc.is_iso(theta) && tc.comp(theta, fj) == iota)
                .map(|theta| (j, theta))
        })
}

fn coslice_comparison(f: &PatternMorphism, o: ObjId) -> Result<Report> {
    let (src, tgt) = (&f.source, &f.target);
    let (sc, tc) = (src.cat(), tgt.cat());
    let fo = f.functor.obj(o);
    let inert_out = |p: &crate::patterns::PatternData, x: ObjId| -> Vec<MorId> {
        p.cat().out(x).iter().copied().filter(|&m| p.is_inert(m)).collect()
    };
    let a = triangle_groupoid(sc, inert_out(src, o), true)?;
    let b = triangle_groupoid(tc, inert_out(tgt, fo), true)?;
    let obj_map: Vec<ObjId> = a
        .objects
        .iter()
        .map(|&j| arrow_object(&b, f.functor.mor(j)).expect("pattern morphisms preserve inert maps"))
        .collect();
    let mor_map = a
        .cat
        .morphisms()
        .map(|m| {
            let (s, t) = (obj_map[a.cat.src(m).idx()], obj_map[a.cat.tgt(m).idx()]);
            b.lookup(s, t, &f.functor.mor(a.morphisms[m.idx()]))
                .ok_or_else(|| Error::InvalidFunctor("isomorphism not preserved".into()))
        })
        .collect::<Result<_>>()?;
    let g = FinFunctor::new(Arc::new(a.cat), Arc::new(b.cat), obj_map, mor_map)?;
    Ok(check_equivalence(&g))
}

/// Checks that `f` induces, at every object `O`, an equivalence between the
/// groupoid cores of the inert coslices under `O` and under `f(O)`.
pub fn check_unique_inert_lifting(f: &PatternMorphism) -> Report {
    let sc = f.source.cat();
    let mut r = Report::new(format!("{} has unique lifting of inert maps", f.name));
    let results: Vec<(ObjId, Result<Report>)> = sc
        .objects()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|o| (o, coslice_comparison(f, o)))
        .collect();
    for (o, res) in results {
        match res {
            Ok(eq) if eq.passed => {}
            Ok(eq) => r.fail(format!(
                "under {}: {}",
                sc.obj_label(o),
                eq.first_counterexample().unwrap_or("not an equivalence")
            )),
            Err(e) => r.fail(format!("under {}: {e}", sc.obj_label(o))),
        }
    }
    r
}
