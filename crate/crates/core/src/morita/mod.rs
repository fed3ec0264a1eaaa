//! Morita equivalences of extendable patterns: a morphism inducing
//! equivalences on elementary groupoids and on the groupoids of active maps
//! into each elementary object.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fincat::{check_equivalence, full_subcategory, FinFunctor, MorId, ObjId};
use crate::freealg::{act_groupoid, check_extendable_pattern, free_algebra, ActGroupoid};
use crate::kan::SetFunctor;
use crate::patterns::{PatternData, PatternMorphism};
use crate::report::Report;

#[derive(Clone, Debug)]
pub struct MoritaReport {
    pub elementary: Report,
    /// One comparison per elementary object of the source.
    pub act: Vec<(ObjId, Report)>,
    pub passed: bool,
    /// Active maps are compared only from sources of size at most this.
    pub budget: usize,
    pub notes: Vec<String>,
}

impl MoritaReport {
    /// The whole verdict as one report tree.
    pub fn report(&self, name: &str) -> Report {
        let mut r = Report::new(format!("{name} is a Morita equivalence (budget: source size <= {})", self.budget));
        r.push_child(self.elementary.clone());
        let mut act = Report::new("active maps into elementary objects");
        for (_, c) in &self.act {
            act.push_child(c.clone());
        }
        r.push_child(act);
        for n in &self.notes {
            r.note(n.clone());
        }
        r
    }
}

/// `f^el: O^el → P^el`.
pub fn elementary_functor(f: &PatternMorphism) -> Result<FinFunctor> {
    let (sel, sincl) = f.source.elementary_part()?;
    let (tel, tincl) = f.target.elementary_part()?;
    let back_obj: HashMap<ObjId, ObjId> = tincl
        .obj_map()
        .iter()
        .enumerate()
        .map(|(k, &o)| (o, ObjId(k as u32)))
        .collect();
    let back_mor: HashMap<MorId, MorId> = tincl
        .mor_map()
        .iter()
        .enumerate()
        .map(|(k, &m)| (m, MorId(k as u32)))
        .collect();
    let sc = f.source.cat();
    let obj_map = sincl
        .obj_map()
        .iter()
        .map(|&o| {
            back_obj.get(&f.functor.obj(o)).copied().ok_or_else(|| {
                Error::Precondition(format!("{} is not sent to an elementary object", sc.obj_label(o)))
            })
        })
        .collect::<Result<_>>()?;
    let mor_map = sincl
        .mor_map()
        .iter()
        .map(|&m| {
            back_mor.get(&f.functor.mor(m)).copied().ok_or_else(|| {
                Error::Precondition(format!("{} is not sent to an elementary inert map", sc.mor_label(m)))
            })
        })
        .collect::<Result<_>>()?;
    FinFunctor::new(sel.cat().clone(), tel.cat().clone(), obj_map, mor_map)
}

/// The part of `Act(X)` on actives whose sources have size at most `budget`.
fn truncated(p: &PatternData, act: &ActGroupoid, budget: usize) -> crate::fincat::Subcategory {
    let keep: Vec<bool> = act
        .actives
        .iter()
        .map(|&m| p.size_of(p.cat().src(m)) <= budget)
        .collect();
    full_subcategory(act.cat(), &keep)
}

/// `Act_O(E) → Act_P(f(E))`, restricted to sources of size at most `budget`.
pub fn act_comparison(f: &PatternMorphism, e: ObjId, budget: usize) -> Result<FinFunctor> {
    let (sp, tp) = (&f.source, &f.target);
    let (sa, ta) = (act_groupoid(sp, e)?, act_groupoid(tp, f.functor.obj(e))?);
    let (ss, ts) = (truncated(sp, &sa, budget), truncated(tp, &ta, budget));
    let sc = sp.cat();
    let obj_map: Vec<ObjId> = ss
        .cat
        .objects()
        .map(|x| {
            let phi = sa.actives[ss.obj_to_old(x).idx()];
            ta.object_of(f.functor.mor(phi))
                .and_then(|y| ts.obj_to_new[y.idx()])
                .ok_or_else(|| Error::Precondition(format!("{} has no image among active maps", sc.mor_label(phi))))
        })
        .collect::<Result<_>>()?;
    let mor_map = ss
        .cat
        .morphisms()
        .map(|m| {
            let (x, y) = (ss.cat.src(m), ss.cat.tgt(m));
            let u = sa.isos[ss.mor_to_old(m).idx()];
            ta.morphism_of(ts.obj_to_old(obj_map[x.idx()]), ts.obj_to_old(obj_map[y.idx()]), f.functor.mor(u))
                .and_then(|k| ts.mor_to_new[k.idx()])
                .ok_or_else(|| Error::Precondition(format!("{} has no image over the target", sc.mor_label(u))))
        })
        .collect::<Result<_>>()?;
    FinFunctor::new(ss.cat.clone(), ts.cat.clone(), obj_map, mor_map)
}

/// Decides whether `f` is a Morita equivalence: it must induce equivalences
/// `O^el ≃ P^el` and `Act_O(E) ≃ Act_P(f(E))` for every elementary `E`.
///
/// Both patterns must be extendable.
pub fn check_morita(f: &PatternMorphism) -> Result<MoritaReport> {
    for p in [&f.source, &f.target] {
        let r = check_extendable_pattern(p);
        if !r.passed {
            return Err(Error::Precondition(format!(
                "{} is not extendable: {}",
                p.name(),
                r.first_counterexample().unwrap_or("")
            )));
        }
    }
    check_morita_unchecked(f)
}

/// [`check_morita`] without the extendability precondition.
pub fn check_morita_unchecked(f: &PatternMorphism) -> Result<MoritaReport> {
    let budget = f.source.level().min(f.target.level());
    let elementary = check_equivalence(&elementary_functor(f)?).renamed("equivalence of elementary groupoids");
    let sc = f.source.cat();
    let mut act = Vec::new();
    for e in f.source.elementary_objects() {
        let label = format!(
            "Act({}) -> Act({})",
            sc.obj_label(e),
            f.target.cat().obj_label(f.functor.obj(e))
        );
        let r = match act_comparison(f, e, budget) {
            Ok(g) => {
                let mut r = check_equivalence(&g).renamed(format!("{label} is an equivalence"));
                if r.passed {
                    r.witness(format!("{} active maps compared", g.source().num_objects()));
                }
                r
            }
            Err(err) => {
                let mut r = Report::new(format!("{label} is an equivalence"));
                r.fail(err.to_string());
                r
            }
        };
        act.push((e, r));
    }
    let act_ok = act.iter().all(|(_, r)| r.passed);
    let mut notes = Vec::new();
    if elementary.passed && !act_ok {
        notes.push("elementary objects match but active maps do not; the active-map condition is also necessary, so this is not a Morita equivalence".into());
    }
    Ok(MoritaReport {
        passed: elementary.passed && act_ok,
        elementary,
        act,
        budget,
        notes,
    })
}

/// Compares the free algebra on `Φ` over the target with the free algebra on
/// `f^el* Φ` over the source, degree by degree at each elementary object.
///
/// `phi` lives on the target's elementary groupoid.
pub fn transport_free_algebra(f: &PatternMorphism, phi: &SetFunctor, bound: usize) -> Result<Report> {
    let el = elementary_functor(f)?;
    let phi = phi
        .with_source(el.target().clone())
        .map_err(|_| Error::TypeMismatch("generators must live on the target's elementary groupoid".into()))?;
    let pulled = phi.restrict(&el)?;
    let source = free_algebra(&f.source, &pulled, bound)?;
    let target = free_algebra(&f.target, &phi, bound)?;
    let mut r = Report::new(format!("free algebras agree along {} (bound {bound})", f.name));
    let (sc, tc) = (f.source.cat(), f.target.cat());
    for e in f.source.elementary_objects() {
        let fe = f.functor.obj(e);
        let (a, b) = (source.degrees(e).unwrap_or(&[]), target.degrees(fe).unwrap_or(&[]));
        if a == b {
            r.witness(format!("{} and {}: {a:?}", sc.obj_label(e), tc.obj_label(fe)));
        } else {
            r.fail(format!("{}: {a:?} but {}: {b:?}", sc.obj_label(e), tc.obj_label(fe)));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests;
