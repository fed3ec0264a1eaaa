use rayon::prelude::*;

use super::{check_factorization_system, PatternData, PatternMorphism, PointedMap};
use crate::report::Report;

/// Checks every axiom of a cartesian pattern truncated at its level.
pub fn check_cartesian_pattern(p: &PatternData) -> Report {
    let cat = &**p.cat();
    let mut r = Report::new(format!("cartesian pattern {}", p.name()));
    r.push_child(check_factorization_system(cat, p.inert_classes(), p.active_classes()));

    let mut size = Report::new("size functor is a pattern morphism to F*");
    size.push_child(p.size().validate());
    for m in cat.morphisms() {
        let s = p.size_map(m);
        if p.is_inert(m) && !s.is_inert() {
            size.fail(format!("inert {} has non-inert size {s:?}", cat.mor_label(m)));
        }
        if p.is_active(m) && !s.is_active() {
            size.fail(format!("active {} has non-active size {s:?}", cat.mor_label(m)));
        }
    }
    for e in p.elementary_objects() {
        if p.size_of(e) != 1 {
            size.fail(format!(
                "elementary {} has size <{}>",
                cat.obj_label(e),
                p.size_of(e)
            ));
        }
    }
    r.push_child(size);

    let mut groupoid = Report::new("elementary objects and inert maps form a groupoid");
    for e in p.elementary_objects() {
        for &m in cat.out(e) {
            if p.is_inert(m) && p.is_elementary(cat.tgt(m)) && !cat.is_iso(m) {
                groupoid.fail(format!(
                    "inert {} between elementary objects is not invertible",
                    cat.mor_label(m)
                ));
            }
        }
    }
    r.push_child(groupoid);

    let mut segal = Report::new("inert maps to elementary objects are classified by the rho_i");
    let failures: Vec<String> = cat
        .objects()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|&o| {
            let n = p.size_of(o) as u8;
            let mut bad = Vec::new();
            let mut groups: Vec<Vec<_>> = vec![Vec::new(); n as usize + 1];
            for &u in cat.out(o) {
                if !p.is_inert(u) || !p.is_elementary(cat.tgt(u)) {
                    continue;
                }
                let s = p.size_map(u);
                match (1..=n).find(|&i| *s == PointedMap::rho(n, i)) {
                    Some(i) => groups[i as usize].push(u),
                    None => bad.push(format!(
                        "inert {} to an elementary object lies over {s:?}, not a rho_i",
                        cat.mor_label(u)
                    )),
                }
            }
            for i in 1..=n as usize {
                if groups[i].is_empty() {
                    bad.push(format!(
                        "{} has no inert map to an elementary object over rho_{i}",
                        cat.obj_label(o)
                    ));
                }
                for &u in &groups[i] {
                    for &v in &groups[i] {
                        let between = cat
                            .hom(cat.tgt(u), cat.tgt(v))
                            .iter()
                            .filter(|&&w| p.is_inert(w) && cat.comp(w, u) == v)
                            .count();
                        if between != 1 {
                            bad.push(format!(
                                "{between} inert maps relate {} and {} under {}",
                                cat.mor_label(u),
                                cat.mor_label(v),
                                cat.obj_label(o)
                            ));
                        }
                    }
                }
            }
            bad
        })
        .collect();
    for f in failures {
        segal.fail(f);
    }
    r.push_child(segal);
    r
}

/// Checks that a functor between patterns is a morphism of patterns: it
/// preserves inert and active maps and elementary objects, and commutes with
/// the size functors.
pub fn check_pattern_morphism(f: &PatternMorphism) -> Report {
    let (s, t) = (&*f.source, &*f.target);
    let (sc, tc) = (&**s.cat(), &**t.cat());
    let mut r = Report::new(format!("pattern morphism {}", f.name));
    r.push_child(f.functor.validate());
    for m in sc.morphisms() {
        let fm = f.functor.mor(m);
        if s.is_inert(m) && !t.is_inert(fm) {
            r.fail(format!("inert {} goes to non-inert {}", sc.mor_label(m), tc.mor_label(fm)));
        }
        if s.is_active(m) && !t.is_active(fm) {
            r.fail(format!("active {} goes to non-active {}", sc.mor_label(m), tc.mor_label(fm)));
        }
        if s.size_map(m) != t.size_map(fm) {
            r.fail(format!(
                "size of {} is {:?} but size of its image is {:?}",
                sc.mor_label(m),
                s.size_map(m),
                t.size_map(fm)
            ));
        }
    }
    for o in s.elementary_objects() {
        if !t.is_elementary(f.functor.obj(o)) {
            r.fail(format!("elementary {} goes to a non-elementary object", sc.obj_label(o)));
        }
    }
    r
}
