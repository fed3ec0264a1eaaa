use rayon::prelude::*;

use super::{act_groupoid, active_slice, check_unique_inert_lifting, inert_lift, ActGroupoid, ActiveSlice};
use crate::error::Result;
use crate::fincat::{check_equivalence, product_of, FinFunctor, MorId, ObjId, ProductCat};
use crate::kan::check_cofinal;
use crate::patterns::{PatternData, PatternMorphism};
use crate::report::Report;

type Comparison = std::result::Result<Report, String>;

/// The unique morphism among `candidates`, or a description of why there
/// is not exactly one.
fn unique(candidates: Vec<MorId>, what: impl FnOnce() -> String) -> std::result::Result<MorId, String> {
    match candidates.as_slice() {
        [m] => Ok(*m),
        [] => Err(format!("no {}", what())),
        _ => Err(format!("{} candidates for {}", candidates.len(), what())),
    }
}

/// `slice → ∏ parts`, sending `(O, φ)` to the lifted factorizations of the
/// `ρ_i ∘ φ`, then tested for cofinality.
fn slice_comparison(
    f: &PatternMorphism,
    p: ObjId,
    slice: &ActiveSlice,
    parts: &[&ActiveSlice],
    budget: usize,
) -> Comparison {
    let (src, tgt) = (&f.source, &f.target);
    let (sc, tc) = (src.cat(), tgt.cat());
    let rhos = tgt.rhos(p).map_err(|e| e.to_string())?;
    let cats: Vec<_> = parts.iter().map(|s| s.cat.clone()).collect();
    let product: ProductCat = product_of(&cats, |t| {
        t.iter()
            .zip(parts)
            .map(|(&x, s)| src.size_of(s.pair(x).0))
            .sum::<usize>()
            <= budget
    })
    .map_err(|e| e.to_string())?;

    // per slice object and component: the inert lift j and the object of the part
    let mut lifts: Vec<Vec<(MorId, ObjId)>> = Vec::with_capacity(slice.cat.num_objects());
    let mut obj_map = Vec::with_capacity(slice.cat.num_objects());
    for s in slice.cat.objects() {
        let (o, phi) = slice.pair(s);
        let mut row = Vec::with_capacity(rhos.len());
        for (i, &rho) in rhos.iter().enumerate() {
            let h = tc.comp(rho, phi);
            let (iota, alpha) = tgt.factorize(h).map_err(|e| e.to_string())?;
            let (j, theta) = inert_lift(f, o, iota).ok_or_else(|| {
                format!("{} has no inert lift from {}", tc.mor_label(iota), sc.obj_label(o))
            })?;
            let t = parts[i]
                .object_of(sc.tgt(j), tc.comp(alpha, theta))
                .expect("lifted factorization lies in the slice");
            row.push((j, t));
        }
        let tuple: Vec<ObjId> = row.iter().map(|&(_, t)| t).collect();
        let image = product.obj_of(&tuple).ok_or_else(|| {
            format!("image of {} escapes the budget", slice.cat.obj_label(s))
        })?;
        obj_map.push(image);
        lifts.push(row);
    }

    let mut mor_map = Vec::with_capacity(slice.cat.num_morphisms());
    for m in slice.cat.morphisms() {
        let (s, t) = (slice.cat.src(m), slice.cat.tgt(m));
        let g = slice.tab.morphisms[m.idx()];
        let mut tuple = Vec::with_capacity(rhos.len());
        for i in 0..rhos.len() {
            let ((j, a), (j2, b)) = (lifts[s.idx()][i], lifts[t.idx()][i]);
            let jg = sc.comp(j2, g);
            let candidates = sc
                .hom(sc.tgt(j), sc.tgt(j2))
                .iter()
                .copied()
                .filter(|&gi| sc.comp(gi, j) == jg && parts[i].morphism_of(a, b, gi).is_some())
                .collect();
            let gi = unique(candidates, || {
                format!("induced map for {} on component {}", slice.cat.mor_label(m), i + 1)
            })?;
            tuple.push(parts[i].morphism_of(a, b, gi).unwrap());
        }
        mor_map.push(product.mor_of(&tuple).expect("both ends lie in the product"));
    }
    let g = FinFunctor::new(slice.cat.clone(), product.cat.clone(), obj_map, mor_map)
        .map_err(|e| e.to_string())?;
    Ok(check_cofinal(&g))
}

/// Checks that `f` is extendable: unique lifting of inert maps, and for every
/// target object `P` the functor `O^act_{/P} → ∏ O^act_{/P_i}` is cofinal
/// onto the tuples whose total source size fits in the target's level.
pub fn check_extendable_morphism(f: &PatternMorphism) -> Report {
    let budget = f.target.level();
    let mut r = Report::new(format!("{} is extendable", f.name));
    let lifting = check_unique_inert_lifting(f);
    let lifting_ok = lifting.passed;
    r.push_child(lifting);
    if !lifting_ok {
        r.note("active slices were not compared: inert lifts are not unique");
        return r;
    }
    let tc = f.target.cat();
    let slices: Vec<std::result::Result<ActiveSlice, String>> = tc
        .objects()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|p| active_slice(f, p).map_err(|e| e.to_string()))
        .collect();
    let mut cof = Report::new(format!(
        "active slices are cofinal in their products (budget: total source size <= {budget})"
    ));
    let results: Vec<(ObjId, Comparison)> = tc
        .objects()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|p| {
            let res = (|| {
                let slice = slices[p.idx()].as_ref().map_err(Clone::clone)?;
                let comps = f.target.components(p).map_err(|e| e.to_string())?;
                let parts = comps
                    .iter()
                    .map(|c| slices[c.idx()].as_ref().map_err(Clone::clone))
                    .collect::<std::result::Result<Vec<_>, String>>()?;
                slice_comparison(f, p, slice, &parts, budget)
            })();
            (p, res)
        })
        .collect();
    for (p, res) in results {
        let label = tc.obj_label(p);
        match res {
            Ok(c) if c.passed => {}
            Ok(c) => cof.fail(format!(
                "at {label}: {}",
                c.first_counterexample().unwrap_or("not cofinal")
            )),
            Err(e) => cof.fail(format!("at {label}: {e}")),
        }
    }
    cof.witness(format!("{} target objects compared", tc.num_objects()));
    r.push_child(cof);
    r
}

/// `Act(O) → ∏ Act(O_i)` via the factorizations of `ρ_i ∘ a`.
fn act_comparison(p: &PatternData, o: ObjId, acts: &[ActGroupoid], budget: usize) -> Comparison {
    let cat = p.cat();
    let a = &acts[o.idx()];
    let rhos = p.rhos(o).map_err(|e| e.to_string())?;
    let comps = p.components(o).map_err(|e| e.to_string())?;
    let parts: Vec<&ActGroupoid> = comps.iter().map(|c| &acts[c.idx()]).collect();
    let cats: Vec<_> = parts.iter().map(|g| g.cat().clone()).collect();
    let product = product_of(&cats, |t| {
        t.iter()
            .zip(&parts)
            .map(|(&x, g)| p.size_of(cat.src(g.actives[x.idx()])))
            .sum::<usize>()
            <= budget
    })
    .map_err(|e| e.to_string())?;

    let mut factors: Vec<Vec<(MorId, ObjId)>> = Vec::with_capacity(a.actives.len());
    let mut obj_map = Vec::with_capacity(a.actives.len());
    for (k, &act) in a.actives.iter().enumerate() {
        let mut row = Vec::with_capacity(rhos.len());
        for (i, &rho) in rhos.iter().enumerate() {
            let (iota, alpha) = p.factorize(cat.comp(rho, act)).map_err(|e| e.to_string())?;
            let t = parts[i].object_of(alpha).expect("active part lies in Act");
            row.push((iota, t));
        }
        let tuple: Vec<ObjId> = row.iter().map(|&(_, t)| t).collect();
        obj_map.push(product.obj_of(&tuple).ok_or_else(|| {
            format!("image of {} escapes the budget", a.cat().obj_label(ObjId(k as u32)))
        })?);
        factors.push(row);
    }

    let ac = a.cat();
    let mut mor_map = Vec::with_capacity(ac.num_morphisms());
    for m in ac.morphisms() {
        let (s, t) = (ac.src(m), ac.tgt(m));
        let u = a.isos[m.idx()];
        let mut tuple = Vec::with_capacity(rhos.len());
        for i in 0..rhos.len() {
            let ((iota, x), (iota2, y)) = (factors[s.idx()][i], factors[t.idx()][i]);
            let (alpha, alpha2) = (parts[i].actives[x.idx()], parts[i].actives[y.idx()]);
            let target = cat.comp(iota2, u);
            let candidates = cat
                .hom(cat.tgt(iota), cat.tgt(iota2))
                .iter()
                .copied()
                .filter(|&ui| cat.comp(ui, iota) == target && cat.comp(alpha2, ui) == alpha)
                .collect();
            let ui = unique(candidates, || {
                format!("induced isomorphism for {} on component {}", ac.mor_label(m), i + 1)
            })?;
            tuple.push(parts[i].morphism_of(x, y, ui).expect("induced isomorphism lies over the target"));
        }
        mor_map.push(product.mor_of(&tuple).expect("both ends lie in the product"));
    }
    let g = FinFunctor::new(ac.clone(), product.cat.clone(), obj_map, mor_map)
        .map_err(|e| e.to_string())?;
    Ok(check_equivalence(&g))
}

/// Checks that every `Act(O) → ∏ Act(O_i)` is an equivalence onto the
/// tuples whose total source size fits in the pattern's level.
pub fn check_extendable_pattern(p: &PatternData) -> Report {
    let budget = p.level();
    let cat = p.cat();
    let mut r = Report::new(format!(
        "{} is extendable (budget: total source size <= {budget})",
        p.name()
    ));
    let acts: Result<Vec<ActGroupoid>> = cat
        .objects()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|o| act_groupoid(p, o))
        .collect();
    let acts = match acts {
        Ok(a) => a,
        Err(e) => {
            r.fail(e.to_string());
            return r;
        }
    };
    let results: Vec<(ObjId, Comparison)> = cat
        .objects()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|o| (o, act_comparison(p, o, &acts, budget)))
        .collect();
    for (o, res) in results {
        let label = cat.obj_label(o);
        match res {
            Ok(c) if c.passed => {}
            Ok(c) => r.fail(format!(
                "Act({label}) is not the product of its components: {}",
                c.first_counterexample().unwrap_or("not an equivalence")
            )),
            Err(e) => r.fail(format!("Act({label}): {e}")),
        }
    }
    if r.passed {
        r.witness(format!("{} objects compared", cat.num_objects()));
    }
    r
}
