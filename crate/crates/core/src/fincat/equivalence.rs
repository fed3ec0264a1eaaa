use rayon::prelude::*;

use super::{FinCat, FinFunctor};
use crate::report::Report;
use crate::unionfind::UnionFind;

/// Isomorphism classes of objects, numbered by smallest member.
pub fn iso_classes(c: &FinCat) -> Vec<usize> {
    let mut uf = UnionFind::new(c.num_objects());
    for m in c.morphisms() {
        let (a, b) = (c.src(m), c.tgt(m));
        if a < b && uf.find(a.idx()) != uf.find(b.idx()) && c.is_iso(m) {
            uf.union(a.idx(), b.idx());
        }
    }
    uf.classes()
}

/// Decides whether a functor is an equivalence: fully faithful and
/// essentially surjective, both by exhaustive search.
pub fn check_equivalence(f: &FinFunctor) -> Report {
    let (s, t) = (&**f.source(), &**f.target());
    let mut report = Report::new("equivalence");
    let mut full = Report::new("fully faithful");
    let bad: Vec<String> = s
        .objects()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|&a| {
            let mut bad = Vec::new();
            for b in s.objects() {
                let src_hom = s.hom(a, b);
                let tgt_hom = t.hom(f.obj(a), f.obj(b));
                if src_hom.is_empty() && tgt_hom.is_empty() {
                    continue;
                }
                let mut image: Vec<_> = src_hom.iter().map(|&m| f.mor(m)).collect();
                image.sort_unstable();
                image.dedup();
                if image.len() < src_hom.len() {
                    bad.push(format!(
                        "not faithful on Hom({}, {})",
                        s.obj_label(a),
                        s.obj_label(b)
                    ));
                } else if image.len() < tgt_hom.len() {
                    let missing = tgt_hom.iter().find(|m| image.binary_search(m).is_err());
                    bad.push(format!(
                        "not full on Hom({}, {}): {} has no preimage",
                        s.obj_label(a),
                        s.obj_label(b),
                        t.mor_label(*missing.unwrap())
                    ));
                }
            }
            bad
        })
        .collect();
    for b in bad {
        full.fail(b);
    }
    let mut ess = Report::new("essentially surjective");
    let classes = iso_classes(t);
    let mut hit = vec![false; t.num_objects()];
    for a in s.objects() {
        hit[classes[f.obj(a).idx()]] = true;
    }
    for y in t.objects() {
        if !hit[classes[y.idx()]] {
            ess.fail(format!("{} is not in the essential image", t.obj_label(y)));
        }
    }
    report.push_child(full);
    report.push_child(ess);
    report
}
