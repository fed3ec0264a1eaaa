//! Finite categories stored as explicit tables.
//!
//! Objects and morphisms are opaque integer ids with a label on the side.
//! Composition is a dense table over composable pairs, so `g ∘ f` is a
//! single indexed load once the category is built.

mod build;
mod construct;
mod equivalence;
mod functor;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Report;

pub use build::{tabulate, tabulate_out, Tabulated};
pub use construct::{
    comma, elements, full_subcategory, opposite, product, product_of, subcategory, terminal, Comma,
    Elements, ProductCat, Subcategory,
};
pub use equivalence::{check_equivalence, iso_classes};
pub use functor::FinFunctor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MorId(pub u32);

impl ObjId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl MorId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

const UNDEFINED: u32 = u32::MAX;

/// A finite category.
///
/// Built either from raw parts (which may violate the axioms; see
/// [`validate_category`]) or by the table builders in this module, which
/// only produce lawful categories.
#[derive(Clone, PartialEq, Eq)]
pub struct FinCat {
    obj_labels: Vec<String>,
    mor_labels: Vec<String>,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    identities: Vec<MorId>,
    /// Morphisms out of each object, sorted by (target, id).
    out: Vec<Vec<MorId>>,
    /// Morphisms into each object, sorted by (source, id).
    inc: Vec<Vec<MorId>>,
    /// Position of each morphism inside `out[src]`.
    out_index: Vec<u32>,
    comp_offset: Vec<usize>,
    comp: Vec<u32>,
    /// Composition entries supplied for non-composable or already-defined pairs.
    stray: Vec<(MorId, MorId, MorId)>,
}

impl FinCat {
    /// Builds a category from explicit parts.
    ///
    /// Composites with identities that are not listed are filled in by the
    /// unit laws. Entries on non-composable pairs are kept aside and reported
    /// by [`validate_category`].
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<(ObjId, ObjId, String)>,
        identities: Vec<MorId>,
        compositions: impl IntoIterator<Item = (MorId, MorId, MorId)>,
    ) -> Result<FinCat> {
        let n = objects.len();
        let m = morphisms.len();
        for (i, (a, b, _)) in morphisms.iter().enumerate() {
            if a.idx() >= n || b.idx() >= n {
                return Err(Error::OutOfRange(format!("endpoint of morphism {i}")));
            }
        }
        if identities.len() != n {
            return Err(Error::OutOfRange(format!(
                "{} identities for {n} objects",
                identities.len()
            )));
        }
        if let Some(bad) = identities.iter().find(|i| i.idx() >= m) {
            return Err(Error::OutOfRange(format!("identity {}", bad.0)));
        }
        let (src, tgt, labels): (Vec<_>, Vec<_>, Vec<_>) = morphisms.into_iter().fold(
            (Vec::new(), Vec::new(), Vec::new()),
            |(mut s, mut t, mut l), (a, b, lab)| {
                s.push(a);
                t.push(b);
                l.push(lab);
                (s, t, l)
            },
        );
        let mut cat = FinCat::skeleton(objects, labels, src, tgt, identities);
        cat.comp = vec![UNDEFINED; cat.comp_len()];
        for (g, f, h) in compositions {
            if g.idx() >= m || f.idx() >= m || h.idx() >= m {
                return Err(Error::OutOfRange(format!(
                    "composition {}.{} = {}",
                    g.0, f.0, h.0
                )));
            }
            if cat.src[g.idx()] != cat.tgt[f.idx()] {
                cat.stray.push((g, f, h));
                continue;
            }
            let slot = cat.slot(g, f);
            if cat.comp[slot] == UNDEFINED {
                cat.comp[slot] = h.0;
            } else {
                cat.stray.push((g, f, h));
            }
        }
        for f in 0..m {
            let f = MorId(f as u32);
            let ia = cat.identities[cat.src(f).idx()];
            let ib = cat.identities[cat.tgt(f).idx()];
            if cat.src[ia.idx()] == cat.src(f) && cat.tgt[ia.idx()] == cat.src(f) {
                let s = cat.slot(f, ia);
                if cat.comp[s] == UNDEFINED {
                    cat.comp[s] = f.0;
                }
            }
            if cat.src[ib.idx()] == cat.tgt(f) && cat.tgt[ib.idx()] == cat.tgt(f) {
                let s = cat.slot(ib, f);
                if cat.comp[s] == UNDEFINED {
                    cat.comp[s] = f.0;
                }
            }
        }
        Ok(cat)
    }

    /// Builds a category whose composition is computed by `compose(g, f)`.
    ///
    /// Fails if `compose` returns `None` on some composable pair.
    pub(crate) fn from_fn(
        objects: Vec<String>,
        labels: Vec<String>,
        src: Vec<ObjId>,
        tgt: Vec<ObjId>,
        identities: Vec<MorId>,
        compose: impl Fn(MorId, MorId) -> Option<MorId> + Sync,
    ) -> Result<FinCat> {
        let mut cat = FinCat::skeleton(objects, labels, src, tgt, identities);
        let rows: Vec<std::result::Result<Vec<u32>, (MorId, MorId)>> = (0..cat.num_morphisms())
            .into_par_iter()
            .map(|f| {
                let f = MorId(f as u32);
                cat.out[cat.tgt(f).idx()]
                    .iter()
                    .map(|&g| compose(g, f).map(|h| h.0).ok_or((g, f)))
                    .collect()
            })
            .collect();
        let mut comp = Vec::with_capacity(cat.comp_len());
        for row in rows {
            match row {
                Ok(r) => comp.extend(r),
                Err((g, f)) => {
                    return Err(Error::NotClosed(format!(
                        "{} . {}",
                        cat.mor_label(g),
                        cat.mor_label(f)
                    )))
                }
            }
        }
        cat.comp = comp;
        Ok(cat)
    }

    fn skeleton(
        objects: Vec<String>,
        labels: Vec<String>,
        src: Vec<ObjId>,
        tgt: Vec<ObjId>,
        identities: Vec<MorId>,
    ) -> FinCat {
        let n = objects.len();
        let m = src.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for i in 0..m {
            out[src[i].idx()].push(MorId(i as u32));
            inc[tgt[i].idx()].push(MorId(i as u32));
        }
        for list in &mut out {
            list.sort_by_key(|f| (tgt[f.idx()], *f));
        }
        for list in &mut inc {
            list.sort_by_key(|f| (src[f.idx()], *f));
        }
        let mut out_index = vec![0u32; m];
        for list in &out {
            for (pos, f) in list.iter().enumerate() {
                out_index[f.idx()] = pos as u32;
            }
        }
        let mut comp_offset = Vec::with_capacity(m);
        let mut acc = 0usize;
        for t in &tgt {
            comp_offset.push(acc);
            acc += out[t.idx()].len();
        }
        FinCat {
            obj_labels: objects,
            mor_labels: labels,
            src,
            tgt,
            identities,
            out,
            inc,
            out_index,
            comp_offset,
            comp: Vec::new(),
            stray: Vec::new(),
        }
    }

    fn comp_len(&self) -> usize {
        self.tgt.iter().map(|t| self.out[t.idx()].len()).sum()
    }

    #[inline]
    fn slot(&self, g: MorId, f: MorId) -> usize {
        self.comp_offset[f.idx()] + self.out_index[g.idx()] as usize
    }

    pub fn num_objects(&self) -> usize {
        self.obj_labels.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + Clone {
        (0..self.num_objects() as u32).map(ObjId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + Clone {
        (0..self.num_morphisms() as u32).map(MorId)
    }

    pub fn obj_label(&self, o: ObjId) -> &str {
        &self.obj_labels[o.idx()]
    }

    pub fn mor_label(&self, m: MorId) -> &str {
        &self.mor_labels[m.idx()]
    }

    pub fn find_object(&self, label: &str) -> Option<ObjId> {
        self.obj_labels
            .iter()
            .position(|l| l == label)
            .map(|i| ObjId(i as u32))
    }

    pub fn find_morphism(&self, label: &str) -> Option<MorId> {
        self.mor_labels
            .iter()
            .position(|l| l == label)
            .map(|i| MorId(i as u32))
    }

    #[inline]
    pub fn src(&self, m: MorId) -> ObjId {
        self.src[m.idx()]
    }

    #[inline]
    pub fn tgt(&self, m: MorId) -> ObjId {
        self.tgt[m.idx()]
    }

    #[inline]
    pub fn id(&self, o: ObjId) -> MorId {
        self.identities[o.idx()]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities[self.src(m).idx()] == m
    }

    /// Morphisms `a → b`, in increasing id order.
    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        let list = &self.out[a.idx()];
        let lo = list.partition_point(|f| self.tgt[f.idx()] < b);
        let hi = list.partition_point(|f| self.tgt[f.idx()] <= b);
        &list[lo..hi]
    }

    /// All morphisms with source `a`.
    pub fn out(&self, a: ObjId) -> &[MorId] {
        &self.out[a.idx()]
    }

    /// All morphisms with target `b`.
    pub fn incoming(&self, b: ObjId) -> &[MorId] {
        &self.inc[b.idx()]
    }

    /// `g ∘ f`, or `None` when the pair is not composable or the table has a hole.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.src(g) != self.tgt(f) {
            return None;
        }
        match self.comp[self.slot(g, f)] {
            UNDEFINED => None,
            h => Some(MorId(h)),
        }
    }

    /// `g ∘ f` for a pair known to be composable in a lawful category.
    #[inline]
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        debug_assert_eq!(self.src(g), self.tgt(f), "composing non-composable pair");
        MorId(self.comp[self.slot(g, f)])
    }

    pub fn inverse(&self, m: MorId) -> Option<MorId> {
        let (a, b) = (self.src(m), self.tgt(m));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.comp(g, m) == self.id(a) && self.comp(m, g) == self.id(b))
    }

    pub fn is_iso(&self, m: MorId) -> bool {
        self.inverse(m).is_some()
    }

    pub fn is_groupoid(&self) -> bool {
        self.morphisms().all(|m| self.is_iso(m))
    }

    pub(crate) fn stray(&self) -> &[(MorId, MorId, MorId)] {
        &self.stray
    }
}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinCat({} objects, {} morphisms)",
            self.num_objects(),
            self.num_morphisms()
        )
    }
}

/// Whether two shared categories are the same table.
pub fn same_cat(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Checks typing, totality, unit and associativity laws exhaustively.
pub fn validate_category(c: &FinCat) -> Report {
    let mut r = Report::new("category axioms");
    for o in c.objects() {
        let i = c.id(o);
        if c.src(i) != o || c.tgt(i) != o {
            r.fail(format!(
                "identity of {} is {} which is not an endomorphism of it",
                c.obj_label(o),
                c.mor_label(i)
            ));
        }
    }
    for &(g, f, h) in c.stray() {
        if c.src(g) != c.tgt(f) {
            r.fail(format!(
                "composite {} . {} = {} given for a non-composable pair",
                c.mor_label(g),
                c.mor_label(f),
                c.mor_label(h)
            ));
        } else {
            r.fail(format!(
                "composite {} . {} given twice",
                c.mor_label(g),
                c.mor_label(f)
            ));
        }
    }
    for f in c.morphisms() {
        for &g in c.out(c.tgt(f)) {
            match c.compose(g, f) {
                None => r.fail(format!(
                    "composite {} . {} is undefined",
                    c.mor_label(g),
                    c.mor_label(f)
                )),
                Some(h) if c.src(h) != c.src(f) || c.tgt(h) != c.tgt(g) => r.fail(format!(
                    "composite {} . {} = {} has the wrong type",
                    c.mor_label(g),
                    c.mor_label(f),
                    c.mor_label(h)
                )),
                Some(_) => {}
            }
        }
    }
    if !r.passed {
        r.note("unit and associativity laws not checked on an ill-typed table");
        return r;
    }
    for f in c.morphisms() {
        if c.comp(f, c.id(c.src(f))) != f || c.comp(c.id(c.tgt(f)), f) != f {
            r.fail(format!("unit law fails for {}", c.mor_label(f)));
        }
    }
    let violations: Vec<(MorId, MorId, MorId)> = (0..c.num_morphisms())
        .into_par_iter()
        .flat_map_iter(|f| {
            let f = MorId(f as u32);
            let mut bad = Vec::new();
            for &g in c.out(c.tgt(f)) {
                let gf = c.comp(g, f);
                for &h in c.out(c.tgt(g)) {
                    if c.comp(h, gf) != c.comp(c.comp(h, g), f) {
                        bad.push((h, g, f));
                    }
                }
            }
            bad
        })
        .collect();
    for (h, g, f) in violations {
        r.fail(format!(
            "associativity fails for ({} , {} , {})",
            c.mor_label(h),
            c.mor_label(g),
            c.mor_label(f)
        ));
    }
    r
}

/// A finite category in which every morphism is invertible, with its inverse table.
#[derive(Clone, Debug)]
pub struct FinGroupoid {
    cat: Arc<FinCat>,
    inverse: Vec<MorId>,
}

impl FinGroupoid {
    pub fn new(cat: Arc<FinCat>) -> Result<Self> {
        let mut inverse = Vec::with_capacity(cat.num_morphisms());
        for m in cat.morphisms() {
            match cat.inverse(m) {
                Some(i) => inverse.push(i),
                None => return Err(Error::NotAGroupoid(cat.mor_label(m).to_string())),
            }
        }
        Ok(FinGroupoid { cat, inverse })
    }

    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn inv(&self, m: MorId) -> MorId {
        self.inverse[m.idx()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The walking arrow `a → b`.
    fn arrow() -> FinCat {
        FinCat::from_parts(
            vec!["a".into(), "b".into()],
            vec![
                (ObjId(0), ObjId(0), "id_a".into()),
                (ObjId(1), ObjId(1), "id_b".into()),
                (ObjId(0), ObjId(1), "f".into()),
            ],
            vec![MorId(0), MorId(1)],
            [],
        )
        .unwrap()
    }

    #[test]
    fn arrow_is_lawful() {
        let c = arrow();
        assert!(validate_category(&c).passed);
        assert_eq!(c.hom(ObjId(0), ObjId(1)), &[MorId(2)]);
        assert!(c.hom(ObjId(1), ObjId(0)).is_empty());
        assert_eq!(c.compose(MorId(2), MorId(0)), Some(MorId(2)));
        assert!(!c.is_groupoid());
    }

    #[test]
    fn missing_composite_is_reported() {
        // a two-element monoid {e, s} with s.s left undefined
        let c = FinCat::from_parts(
            vec!["x".into()],
            vec![
                (ObjId(0), ObjId(0), "e".into()),
                (ObjId(0), ObjId(0), "s".into()),
            ],
            vec![MorId(0)],
            [],
        )
        .unwrap();
        let r = validate_category(&c);
        assert!(!r.passed);
        assert!(r.first_counterexample().unwrap().contains("undefined"));
    }

    #[test]
    fn associativity_failure_is_reported() {
        // monoid {e, s, t} with s.s = t, s.t = s, t.s = t, t.t = t
        let (e, s, t) = (MorId(0), MorId(1), MorId(2));
        let c = FinCat::from_parts(
            vec!["x".into()],
            vec![
                (ObjId(0), ObjId(0), "e".into()),
                (ObjId(0), ObjId(0), "s".into()),
                (ObjId(0), ObjId(0), "t".into()),
            ],
            vec![e],
            [(s, s, t), (s, t, s), (t, s, t), (t, t, t)],
        )
        .unwrap();
        let r = validate_category(&c);
        assert!(!r.passed);
        assert!(r
            .counterexamples
            .iter()
            .any(|x| x.contains("associativity")));
    }

    #[test]
    fn stray_composite_is_reported() {
        let c = FinCat::from_parts(
            vec!["a".into(), "b".into()],
            vec![
                (ObjId(0), ObjId(0), "id_a".into()),
                (ObjId(1), ObjId(1), "id_b".into()),
                (ObjId(0), ObjId(1), "f".into()),
            ],
            vec![MorId(0), MorId(1)],
            [(MorId(2), MorId(2), MorId(2))],
        )
        .unwrap();
        assert!(!validate_category(&c).passed);
    }

    #[test]
    fn group_is_groupoid() {
        // Z/3
        let m: Vec<_> = (0..3)
            .map(|i| (ObjId(0), ObjId(0), format!("g{i}")))
            .collect();
        let comps = (0..3u32)
            .flat_map(|i| (0..3u32).map(move |j| (MorId(i), MorId(j), MorId((i + j) % 3))));
        let c = FinCat::from_parts(vec!["*".into()], m, vec![MorId(0)], comps).unwrap();
        assert!(validate_category(&c).passed);
        let g = FinGroupoid::new(Arc::new(c)).unwrap();
        assert_eq!(g.inv(MorId(1)), MorId(2));
    }
}
