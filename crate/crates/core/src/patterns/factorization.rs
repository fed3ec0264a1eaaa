use std::collections::HashMap;

use rayon::prelude::*;

use crate::fincat::{FinCat, MorId};
use crate::report::Report;

/// Checks that `(inert, active)` is a factorization system: isomorphisms lie
/// in both classes, both classes compose, and every morphism factors as
/// active after inert, uniquely up to unique isomorphism.
pub fn check_factorization_system(cat: &FinCat, inert: &[bool], active: &[bool]) -> Report {
    let mut r = Report::new("inert-active factorization system");
    let iso: Vec<bool> = cat
        .morphisms()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&m| cat.is_iso(m))
        .collect();

    let mut isos = Report::new("isomorphisms are inert and active");
    for m in cat.morphisms() {
        if iso[m.idx()] && !(inert[m.idx()] && active[m.idx()]) {
            isos.fail(format!("isomorphism {} is not in both classes", cat.mor_label(m)));
        }
    }
    r.push_child(isos);

    for (name, class) in [("inert", inert), ("active", active)] {
        let mut closed = Report::new(format!("{name} maps compose"));
        for f in cat.morphisms().filter(|f| class[f.idx()]) {
            for &g in cat.out(cat.tgt(f)) {
                if class[g.idx()] && !class[cat.comp(g, f).idx()] {
                    closed.fail(format!(
                        "{} . {} is not {name}",
                        cat.mor_label(g),
                        cat.mor_label(f)
                    ));
                }
            }
        }
        r.push_child(closed);
    }

    let per_source: Vec<(Vec<String>, Vec<String>)> = cat
        .objects()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&a| {
            let mut by_composite: HashMap<MorId, Vec<(MorId, MorId)>> = HashMap::new();
            for &i in cat.out(a) {
                if !inert[i.idx()] {
                    continue;
                }
                for &j in cat.out(cat.tgt(i)) {
                    if active[j.idx()] {
                        by_composite.entry(cat.comp(j, i)).or_default().push((i, j));
                    }
                }
            }
            let mut missing = Vec::new();
            let mut non_unique = Vec::new();
            for &h in cat.out(a) {
                let Some(facts) = by_composite.get(&h) else {
                    missing.push(format!("{} has no factorization", cat.mor_label(h)));
                    continue;
                };
                let (i0, j0) = facts[0];
                let b0 = cat.tgt(i0);
                for &(i, j) in facts {
                    let comparisons = cat
                        .hom(b0, cat.tgt(i))
                        .iter()
                        .filter(|&&u| {
                            iso[u.idx()] && cat.comp(u, i0) == i && cat.comp(j, u) == j0
                        })
                        .count();
                    if comparisons != 1 {
                        non_unique.push(format!(
                            "factorizations ({} then {}) and ({} then {}) of {} are related by {} isomorphisms",
                            cat.mor_label(i0),
                            cat.mor_label(j0),
                            cat.mor_label(i),
                            cat.mor_label(j),
                            cat.mor_label(h),
                            comparisons
                        ));
                    }
                }
            }
            (missing, non_unique)
        })
        .collect();
    let mut exist = Report::new("every morphism factors as active after inert");
    let mut unique = Report::new("factorizations are unique up to unique isomorphism");
    for (missing, non_unique) in per_source {
        missing.into_iter().for_each(|m| exist.fail(m));
        non_unique.into_iter().for_each(|m| unique.fail(m));
    }
    r.push_child(exist);
    r.push_child(unique);
    r
}
