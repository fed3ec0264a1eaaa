use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use super::PatternData;
use crate::error::Result;
use crate::fincat::{check_equivalence, product_of, same_cat, subcategory, FinFunctor, MorId, ObjId};
use crate::report::Report;

/// Chosen lifts: `(e, φ) ↦ ℓ` with `ℓ: e → e'` lying over the inert map `φ: p(e) → O'`.
pub type CocartesianLifts = HashMap<(ObjId, MorId), MorId>;

/// Whether `l: e → e'` is `p`-cocartesian: for every `e''`, precomposition
/// with `l` identifies `Hom(e', e'')` with the pairs `(k: e → e'', h: p(e') → p(e''))`
/// such that `p(k) = h ∘ p(l)`.
pub fn is_cocartesian(p: &FinFunctor, l: MorId) -> bool {
    let (e_cat, o_cat) = (&**p.source(), &**p.target());
    let (e, e1) = (e_cat.src(l), e_cat.tgt(l));
    let pl = p.mor(l);
    e_cat.objects().all(|e2| {
        let mut seen = HashSet::new();
        for &g in e_cat.hom(e1, e2) {
            if !seen.insert((e_cat.comp(g, l), p.mor(g))) {
                return false;
            }
        }
        let hom_o = o_cat.hom(p.obj(e1), p.obj(e2));
        let pairs: usize = e_cat
            .hom(e, e2)
            .iter()
            .map(|&k| {
                hom_o
                    .iter()
                    .filter(|&&h| o_cat.comp(h, pl) == p.mor(k))
                    .count()
            })
            .sum();
        pairs == seen.len()
    })
}

/// Picks, for every `e` and inert `φ` out of `p(e)`, the smallest cocartesian lift.
///
/// The report lists the pairs that have none.
pub fn find_cocartesian_lifts(p: &FinFunctor, base: &PatternData) -> (CocartesianLifts, Report) {
    let (e_cat, o_cat) = (&**p.source(), &**p.target());
    let mut r = Report::new("cocartesian lifts of inert maps exist");
    let found: Vec<Vec<((ObjId, MorId), Option<MorId>)>> = e_cat
        .objects()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&e| {
            o_cat
                .out(p.obj(e))
                .iter()
                .filter(|&&phi| base.is_inert(phi))
                .map(|&phi| {
                    let lift = e_cat
                        .out(e)
                        .iter()
                        .copied()
                        .find(|&l| p.mor(l) == phi && is_cocartesian(p, l));
                    ((e, phi), lift)
                })
                .collect()
        })
        .collect();
    let mut lifts = HashMap::new();
    for ((e, phi), lift) in found.into_iter().flatten() {
        match lift {
            Some(l) => {
                lifts.insert((e, phi), l);
            }
            None => r.fail(format!(
                "no cocartesian lift of {} at {}",
                o_cat.mor_label(phi),
                e_cat.obj_label(e)
            )),
        }
    }
    (lifts, r)
}

/// Checks that `p: E → O` exhibits `E` as a fibrous pattern over `O`:
/// cocartesian lifts of inert maps, Segal fibers, and the Segal condition on
/// mapping sets.
pub fn check_operad_fibration(p: &FinFunctor, base: &PatternData, lifts: &CocartesianLifts) -> Report {
    let mut r = Report::new("fibrous pattern over ".to_string() + base.name());
    if !same_cat(p.target(), base.cat()) {
        r.fail("functor does not land in the pattern");
        return r;
    }
    let (e_cat, o_cat) = (p.source().clone(), base.cat().clone());

    let mut lifting = Report::new("chosen lifts are cocartesian over every inert map");
    for e in e_cat.objects() {
        for &phi in o_cat.out(p.obj(e)) {
            if !base.is_inert(phi) {
                continue;
            }
            match lifts.get(&(e, phi)) {
                None => lifting.fail(format!(
                    "no lift of {} at {}",
                    o_cat.mor_label(phi),
                    e_cat.obj_label(e)
                )),
                Some(&l) if e_cat.src(l) != e || p.mor(l) != phi => lifting.fail(format!(
                    "lift {} does not start at {} over {}",
                    e_cat.mor_label(l),
                    e_cat.obj_label(e),
                    o_cat.mor_label(phi)
                )),
                Some(&l) if !is_cocartesian(p, l) => lifting.fail(format!(
                    "lift {} is not cocartesian",
                    e_cat.mor_label(l)
                )),
                Some(_) => {}
            }
        }
    }
    let lifting_ok = lifting.passed;
    r.push_child(lifting);
    if !lifting_ok {
        r.note("fiber and mapping-set conditions not checked without valid lifts");
        return r;
    }

    r.push_child(fiber_segal(p, base, lifts));
    r.push_child(mapping_segal(p, base, lifts));
    r
}

fn fiber_segal(p: &FinFunctor, base: &PatternData, lifts: &CocartesianLifts) -> Report {
    let (e_cat, o_cat) = (p.source().clone(), base.cat().clone());
    let mut r = Report::new("fiber Segal maps are equivalences");
    let fiber = |o: ObjId| {
        let keep_obj: Vec<bool> = e_cat.objects().map(|e| p.obj(e) == o).collect();
        let keep_mor: Vec<bool> = e_cat.morphisms().map(|m| p.mor(m) == o_cat.id(o)).collect();
        subcategory(&e_cat, &keep_obj, &keep_mor)
    };
    for o in o_cat.objects() {
        let res: Result<Report> = (|| {
            let rhos = base.rhos(o)?;
            let fo = fiber(o)?;
            let fibers: Vec<_> = rhos
                .iter()
                .map(|&rho| fiber(o_cat.tgt(rho)))
                .collect::<Result<_>>()?;
            let prod = product_of(
                &fibers.iter().map(|f| f.cat.clone()).collect::<Vec<_>>(),
                |_| true,
            )?;
            let push_obj = |e_old: ObjId, i: usize| e_cat.tgt(lifts[&(e_old, rhos[i])]);
            let obj_map: Vec<ObjId> = fo
                .cat
                .objects()
                .map(|x| {
                    let e = fo.obj_to_old(x);
                    let t: Vec<ObjId> = (0..rhos.len())
                        .map(|i| fibers[i].obj_to_new[push_obj(e, i).idx()].unwrap())
                        .collect();
                    prod.obj_of(&t).unwrap()
                })
                .collect();
            let mut mor_map = Vec::with_capacity(fo.cat.num_morphisms());
            for g_new in fo.cat.morphisms() {
                let g = fo.mor_to_old(g_new);
                let (e1, e2) = (e_cat.src(g), e_cat.tgt(g));
                let mut t = Vec::with_capacity(rhos.len());
                for (i, &rho) in rhos.iter().enumerate() {
                    let (l1, l2) = (lifts[&(e1, rho)], lifts[&(e2, rho)]);
                    let target = e_cat.comp(l2, g);
                    let oi = o_cat.tgt(rho);
                    let w = e_cat
                        .hom(e_cat.tgt(l1), e_cat.tgt(l2))
                        .iter()
                        .copied()
                        .find(|&w| p.mor(w) == o_cat.id(oi) && e_cat.comp(w, l1) == target);
                    match w {
                        Some(w) => t.push(fibers[i].mor_to_new[w.idx()].unwrap()),
                        None => {
                            return Err(crate::Error::Precondition(format!(
                                "no pushforward of {} along rho_{}",
                                e_cat.mor_label(g),
                                i + 1
                            )))
                        }
                    }
                }
                mor_map.push(prod.mor_of(&t).unwrap());
            }
            let segal = FinFunctor::new(fo.cat.clone(), prod.cat.clone(), obj_map, mor_map)?;
            Ok(check_equivalence(&segal).renamed(format!("fiber over {}", o_cat.obj_label(o))))
        })();
        match res {
            Ok(rep) => {
                if !rep.passed {
                    r.push_child(rep);
                }
            }
            Err(e) => r.fail(format!("over {}: {e}", o_cat.obj_label(o))),
        }
    }
    r
}

fn mapping_segal(p: &FinFunctor, base: &PatternData, lifts: &CocartesianLifts) -> Report {
    let (e_cat, o_cat) = (p.source().clone(), base.cat().clone());
    let mut r = Report::new("mapping sets decompose over the rho_i");
    let failures: Vec<String> = e_cat
        .objects()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|&e| {
            let o = p.obj(e);
            let Ok(rhos) = base.rhos(o) else {
                return vec![format!("{} has no rho maps", o_cat.obj_label(o))];
            };
            let ls: Vec<MorId> = rhos.iter().map(|&rho| lifts[&(e, rho)]).collect();
            let mut bad = Vec::new();
            for e1 in e_cat.objects() {
                let o1 = p.obj(e1);
                let mut expected = 0usize;
                for &h in o_cat.hom(o1, o) {
                    let mut ways = 1usize;
                    for (&rho, &l) in rhos.iter().zip(&ls) {
                        let over = o_cat.comp(rho, h);
                        ways *= e_cat
                            .hom(e1, e_cat.tgt(l))
                            .iter()
                            .filter(|&&g| p.mor(g) == over)
                            .count();
                    }
                    expected += ways;
                }
                let hom = e_cat.hom(e1, e);
                let images: HashSet<(MorId, Vec<MorId>)> = hom
                    .iter()
                    .map(|&k| (p.mor(k), ls.iter().map(|&l| e_cat.comp(l, k)).collect()))
                    .collect();
                if images.len() != hom.len() || hom.len() != expected {
                    bad.push(format!(
                        "Hom({}, {}) has {} elements but the fiber product has {expected} ({} distinct images)",
                        e_cat.obj_label(e1),
                        e_cat.obj_label(e),
                        hom.len(),
                        images.len()
                    ));
                }
            }
            bad
        })
        .collect();
    for f in failures {
        r.fail(f);
    }
    r
}

/// The pattern structure a fibrous pattern inherits from its base: inert maps
/// are the cocartesian lifts of inert maps, active maps lie over active maps,
/// elementary objects lie over elementary objects.
pub fn fibration_pattern(
    name: impl Into<String>,
    p: &FinFunctor,
    base: &Arc<PatternData>,
) -> Result<PatternData> {
    let e_cat = p.source().clone();
    let inert: Vec<bool> = e_cat
        .morphisms()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&m| base.is_inert(p.mor(m)) && is_cocartesian(p, m))
        .collect();
    let active = e_cat.morphisms().map(|m| base.is_active(p.mor(m))).collect();
    let elementary = e_cat.objects().map(|o| base.is_elementary(p.obj(o))).collect();
    let size = p.then(base.size())?;
    PatternData::new(name, e_cat, inert, active, elementary, size, base.base().clone())
}
