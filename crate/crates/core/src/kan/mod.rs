//! Set-valued functors on finite categories, their (co)limits and Kan extensions.

mod solve;

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fincat::{same_cat, FinCat, FinFunctor, MorId, ObjId};
use crate::report::Report;
use crate::unionfind::UnionFind;

pub(crate) use solve::compatible_families;

/// A functor `C → FinSet`. The value at `c` is `{0, …, size(c) - 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunctor {
    source: Arc<FinCat>,
    sizes: Vec<usize>,
    action: Vec<Vec<u32>>,
    labels: Option<Vec<Vec<String>>>,
}

impl SetFunctor {
    /// Checks the shape of the tables; use [`SetFunctor::validate`] for functoriality.
    pub fn new(source: Arc<FinCat>, sizes: Vec<usize>, action: Vec<Vec<u32>>) -> Result<Self> {
        if sizes.len() != source.num_objects() || action.len() != source.num_morphisms() {
            return Err(Error::InvalidFunctor("table sizes do not match the source".into()));
        }
        for m in source.morphisms() {
            let row = &action[m.idx()];
            let (a, b) = (source.src(m), source.tgt(m));
            if row.len() != sizes[a.idx()] || row.iter().any(|&y| y as usize >= sizes[b.idx()]) {
                return Err(Error::InvalidFunctor(format!(
                    "action of {} is not a map F({}) -> F({})",
                    source.mor_label(m),
                    source.obj_label(a),
                    source.obj_label(b)
                )));
            }
        }
        Ok(SetFunctor {
            source,
            sizes,
            action,
            labels: None,
        })
    }

    /// Builds the action from a function `(m, x) ↦ F(m)(x)`.
    pub fn from_fn(
        source: Arc<FinCat>,
        sizes: Vec<usize>,
        act: impl Fn(MorId, u32) -> u32,
    ) -> Result<Self> {
        let action = source
            .morphisms()
            .map(|m| {
                (0..sizes[source.src(m).idx()] as u32)
                    .map(|x| act(m, x))
                    .collect()
            })
            .collect();
        SetFunctor::new(source, sizes, action)
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.sizes.len()
            || labels.iter().zip(&self.sizes).any(|(l, &s)| l.len() != s)
        {
            return Err(Error::InvalidFunctor("element labels do not match the sizes".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn constant(source: Arc<FinCat>, n: usize) -> Self {
        let sizes = vec![n; source.num_objects()];
        SetFunctor::from_fn(source, sizes, |_, x| x).expect("constant functor")
    }

    /// The covariant representable `Hom(c, -)`; elements are indexed by
    /// position in the hom-set.
    ///
    /// For the presheaf `Hom(-, c)` on `C`, call this on `op(C)`.
    pub fn representable(source: Arc<FinCat>, c: ObjId) -> Self {
        let sizes = source.objects().map(|a| source.hom(c, a).len()).collect();
        let labels = source
            .objects()
            .map(|a| {
                source
                    .hom(c, a)
                    .iter()
                    .map(|&h| source.mor_label(h).to_string())
                    .collect()
            })
            .collect();
        let cat = source.clone();
        SetFunctor::from_fn(source, sizes, |m, x| {
            let h = cat.hom(c, cat.src(m))[x as usize];
            let mh = cat.comp(m, h);
            cat.hom(c, cat.tgt(m)).binary_search(&mh).unwrap() as u32
        })
        .expect("representable functor")
        .with_labels(labels)
        .expect("representable labels")
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    #[inline]
    pub fn size(&self, o: ObjId) -> usize {
        self.sizes[o.idx()]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    #[inline]
    pub fn apply(&self, m: MorId, x: u32) -> u32 {
        self.action[m.idx()][x as usize]
    }

    pub fn action(&self, m: MorId) -> &[u32] {
        &self.action[m.idx()]
    }

    pub fn element_label(&self, o: ObjId, x: u32) -> String {
        match &self.labels {
            Some(l) => l[o.idx()][x as usize].clone(),
            None => x.to_string(),
        }
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    /// `F ∘ f`.
    pub fn restrict(&self, f: &FinFunctor) -> Result<SetFunctor> {
        if !same_cat(f.target(), &self.source) {
            return Err(Error::TypeMismatch(
                "restricting along a functor into a different category".into(),
            ));
        }
        let c = f.source().clone();
        let sizes = c.objects().map(|o| self.size(f.obj(o))).collect();
        let action = c
            .morphisms()
            .map(|m| self.action[f.mor(m).idx()].clone())
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| c.objects().map(|o| l[f.obj(o).idx()].clone()).collect());
        Ok(SetFunctor {
            source: c,
            sizes,
            action,
            labels,
        })
    }

    /// The same tables over an identical copy of the source category.
    pub fn with_source(&self, source: Arc<FinCat>) -> Result<SetFunctor> {
        if !same_cat(&self.source, &source) {
            return Err(Error::TypeMismatch("re-sourcing to a different category".into()));
        }
        Ok(SetFunctor {
            source,
            ..self.clone()
        })
    }

    /// Checks that identities act trivially and composites compose.
    pub fn validate(&self) -> Report {
        let c = &*self.source;
        let mut r = Report::new("set-valued functor laws");
        for o in c.objects() {
            let id = self.action(c.id(o));
            if id.iter().enumerate().any(|(x, &y)| x as u32 != y) {
                r.fail(format!("identity of {} acts non-trivially", c.obj_label(o)));
            }
        }
        for f in c.morphisms() {
            for &g in c.out(c.tgt(f)) {
                let gf = c.comp(g, f);
                let ok = (0..self.size(c.src(f)) as u32)
                    .all(|x| self.apply(gf, x) == self.apply(g, self.apply(f, x)));
                if !ok {
                    r.fail(format!(
                        "action of {} . {} is not the composite action",
                        c.mor_label(g),
                        c.mor_label(f)
                    ));
                }
            }
        }
        r
    }
}

/// A colimiting cocone: the apex `{0, …, apex - 1}` and one leg per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocone {
    pub apex: usize,
    pub legs: Vec<Vec<u32>>,
}

impl Cocone {
    #[inline]
    pub fn leg(&self, c: ObjId, x: u32) -> u32 {
        self.legs[c.idx()][x as usize]
    }
}

/// Colimit as the set of connected components of the category of elements.
///
/// Classes are numbered in order of their smallest element, where elements
/// of `⊔ F(c)` are ordered by object and then by index.
pub fn colimit(f: &SetFunctor) -> Cocone {
    let c = &**f.source();
    let mut offset = Vec::with_capacity(c.num_objects());
    let mut total = 0;
    for o in c.objects() {
        offset.push(total);
        total += f.size(o);
    }
    let mut uf = UnionFind::new(total);
    for m in c.morphisms() {
        let (a, b) = (c.src(m).idx(), c.tgt(m).idx());
        for (x, &y) in f.action(m).iter().enumerate() {
            uf.union(offset[a] + x, offset[b] + y as usize);
        }
    }
    let (class, apex) = uf.numbering();
    let legs = c
        .objects()
        .map(|o| class[offset[o.idx()]..offset[o.idx()] + f.size(o)].to_vec())
        .collect();
    Cocone { apex, legs }
}

/// A limiting cone, as the list of compatible families `(x_c)_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit {
    pub families: Vec<Vec<u32>>,
}

impl Limit {
    pub fn size(&self) -> usize {
        self.families.len()
    }

    pub fn projection(&self, k: usize, c: ObjId) -> u32 {
        self.families[k][c.idx()]
    }
}

/// Limit as the subset of `∏ F(c)` of families compatible with every morphism.
pub fn limit(f: &SetFunctor) -> Limit {
    let c = &**f.source();
    let domains: Vec<usize> = c.objects().map(|o| f.size(o)).collect();
    let edges: Vec<(usize, usize, &[u32])> = c
        .morphisms()
        .filter(|&m| !c.is_identity(m))
        .map(|m| (c.src(m).idx(), c.tgt(m).idx(), f.action(m)))
        .collect();
    Limit {
        families: compatible_families(&domains, &edges),
    }
}

/// Left Kan extension with enough bookkeeping to name the class of any element.
#[derive(Clone, Debug)]
pub struct LeftKan {
    pub functor: SetFunctor,
    fibers: Vec<LanFiber>,
    widths: Vec<usize>,
}

#[derive(Clone, Debug)]
struct LanFiber {
    /// Offset of `F(c)` slots for each `c`; slot of `(c, u, x)` is
    /// `base[c] + pos(u) * |F(c)| + x`.
    base: Vec<usize>,
    class: Vec<u32>,
    reps: Vec<(ObjId, MorId, u32)>,
}

impl LeftKan {
    /// Class in `Lan(d)` of the element `x ∈ F(c)` sitting over `u: f(c) → d`.
    pub fn class(&self, f: &FinFunctor, d: ObjId, c: ObjId, u: MorId, x: u32) -> Option<u32> {
        let dcat = f.target();
        let pos = dcat.hom(f.obj(c), d).binary_search(&u).ok()?;
        let fib = &self.fibers[d.idx()];
        let width = self.widths[c.idx()];
        if x as usize >= width {
            return None;
        }
        Some(fib.class[fib.base[c.idx()] + pos * width + x as usize])
    }

    /// The smallest element `(c, u, x)` of class `k` in `Lan(d)`.
    pub fn representative(&self, d: ObjId, k: u32) -> (ObjId, MorId, u32) {
        self.fibers[d.idx()].reps[k as usize]
    }
}

/// Left Kan extension of `F: C → Set` along `f: C → D`.
///
/// `Lan(d)` is the colimit of `F` over the comma category `f ↓ d`.
pub fn lan(f: &FinFunctor, functor: &SetFunctor) -> Result<LeftKan> {
    if !same_cat(f.source(), functor.source()) {
        return Err(Error::TypeMismatch("functor is not defined on the source of f".into()));
    }
    let (c, d) = (&**f.source(), f.target().clone());
    let fibers: Vec<LanFiber> = d
        .objects()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&t| {
            let mut base = Vec::with_capacity(c.num_objects());
            let mut reps_all = Vec::new();
            for o in c.objects() {
                base.push(reps_all.len());
                for &u in d.hom(f.obj(o), t) {
                    for x in 0..functor.size(o) as u32 {
                        reps_all.push((o, u, x));
                    }
                }
            }
            let mut uf = UnionFind::new(reps_all.len());
            for g in c.morphisms() {
                let (a, b) = (c.src(g), c.tgt(g));
                let (wa, wb) = (functor.size(a), functor.size(b));
                let fg = f.mor(g);
                let hom_a = d.hom(f.obj(a), t);
                for (pb, &u2) in d.hom(f.obj(b), t).iter().enumerate() {
                    let u = d.comp(u2, fg);
                    let pa = hom_a.binary_search(&u).expect("composite lands in hom-set");
                    for x in 0..wa {
                        let y = functor.apply(g, x as u32) as usize;
                        uf.union(base[a.idx()] + pa * wa + x, base[b.idx()] + pb * wb + y);
                    }
                }
            }
            let (class, k) = uf.numbering();
            let mut reps = vec![None; k];
            for (i, &cl) in class.iter().enumerate() {
                if reps[cl as usize].is_none() {
                    reps[cl as usize] = Some(reps_all[i]);
                }
            }
            LanFiber {
                base,
                class,
                reps: reps.into_iter().map(Option::unwrap).collect(),
            }
        })
        .collect();
    let widths: Vec<usize> = c.objects().map(|o| functor.size(o)).collect();
    let sizes = fibers.iter().map(|fib| fib.reps.len()).collect();
    let lookup = |t: ObjId, o: ObjId, u: MorId, x: u32| -> u32 {
        let pos = d.hom(f.obj(o), t).binary_search(&u).unwrap();
        let fib = &fibers[t.idx()];
        fib.class[fib.base[o.idx()] + pos * widths[o.idx()] + x as usize]
    };
    let action = d
        .morphisms()
        .map(|h| {
            let (s, t) = (d.src(h), d.tgt(h));
            fibers[s.idx()]
                .reps
                .iter()
                .map(|&(o, u, x)| lookup(t, o, d.comp(h, u), x))
                .collect()
        })
        .collect();
    let functor = SetFunctor::new(d.clone(), sizes, action)?;
    Ok(LeftKan {
        functor,
        fibers,
        widths,
    })
}

/// Right Kan extension with the compatible family behind each element.
#[derive(Clone, Debug)]
pub struct RightKan {
    pub functor: SetFunctor,
    fibers: Vec<RanFiber>,
}

#[derive(Clone, Debug)]
struct RanFiber {
    /// Node of `(c, u: d → f c)` is `base[c] + pos(u)`.
    base: Vec<usize>,
    families: Vec<Vec<u32>>,
}

impl RightKan {
    /// Component at `(c, u: d → f(c))` of the `k`-th element of `Ran(d)`.
    pub fn component(&self, f: &FinFunctor, d: ObjId, k: u32, c: ObjId, u: MorId) -> Option<u32> {
        let pos = f.target().hom(d, f.obj(c)).binary_search(&u).ok()?;
        let fib = &self.fibers[d.idx()];
        Some(fib.families[k as usize][fib.base[c.idx()] + pos])
    }
}

/// Right Kan extension of `F: C → Set` along `f: C → D`.
///
/// `Ran(d)` is the limit of `F` over the comma category `d ↓ f`.
pub fn ran(f: &FinFunctor, functor: &SetFunctor) -> Result<RightKan> {
    if !same_cat(f.source(), functor.source()) {
        return Err(Error::TypeMismatch("functor is not defined on the source of f".into()));
    }
    let (c, d) = (&**f.source(), f.target().clone());
    let fibers: Vec<RanFiber> = d
        .objects()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&s| {
            let mut base = Vec::with_capacity(c.num_objects());
            let mut domains = Vec::new();
            for o in c.objects() {
                base.push(domains.len());
                domains.extend(std::iter::repeat(functor.size(o)).take(d.hom(s, f.obj(o)).len()));
            }
            let mut edges = Vec::new();
            for g in c.morphisms() {
                if c.is_identity(g) {
                    continue;
                }
                let (a, b) = (c.src(g), c.tgt(g));
                let hom_b = d.hom(s, f.obj(b));
                for (pa, &u) in d.hom(s, f.obj(a)).iter().enumerate() {
                    let u2 = d.comp(f.mor(g), u);
                    let pb = hom_b.binary_search(&u2).expect("composite lands in hom-set");
                    edges.push((base[a.idx()] + pa, base[b.idx()] + pb, functor.action(g)));
                }
            }
            RanFiber {
                families: compatible_families(&domains, &edges),
                base,
            }
        })
        .collect();
    let index: Vec<HashMap<&[u32], u32>> = fibers
        .iter()
        .map(|fib| {
            fib.families
                .iter()
                .enumerate()
                .map(|(k, fam)| (fam.as_slice(), k as u32))
                .collect()
        })
        .collect();
    let sizes = fibers.iter().map(|fib| fib.families.len()).collect();
    let mut action = Vec::with_capacity(d.num_morphisms());
    for h in d.morphisms() {
        let (s, t) = (d.src(h), d.tgt(h));
        let (from, to) = (&fibers[s.idx()], &fibers[t.idx()]);
        let mut row = Vec::with_capacity(from.families.len());
        for fam in &from.families {
            let mut image = Vec::new();
            for o in c.objects() {
                let hom_s = d.hom(s, f.obj(o));
                for &u2 in d.hom(t, f.obj(o)) {
                    let pos = hom_s.binary_search(&d.comp(u2, h)).unwrap();
                    image.push(fam[from.base[o.idx()] + pos]);
                }
            }
            debug_assert_eq!(image.len(), to.families.first().map_or(image.len(), Vec::len));
            row.push(index[t.idx()][image.as_slice()]);
        }
        action.push(row);
    }
    let functor = SetFunctor::new(d.clone(), sizes, action)?;
    Ok(RightKan { functor, fibers })
}

/// Checks that `g: A → B` is cofinal: for every `b`, the comma category
/// `b ↓ g` is nonempty and connected.
pub fn check_cofinal(g: &FinFunctor) -> Report {
    let (a, b) = (&**g.source(), &**g.target());
    let mut r = Report::new("cofinal");
    let failures: Vec<String> = b
        .objects()
        .collect::<Vec<_>>()
        .par_iter()
        .filter_map(|&t| {
            let mut base = Vec::with_capacity(a.num_objects());
            let mut n = 0;
            for o in a.objects() {
                base.push(n);
                n += b.hom(t, g.obj(o)).len();
            }
            if n == 0 {
                return Some(format!("{} ↓ g is empty", b.obj_label(t)));
            }
            let mut uf = UnionFind::new(n);
            for m in a.morphisms() {
                let (x, y) = (a.src(m), a.tgt(m));
                let hom_y = b.hom(t, g.obj(y));
                for (px, &u) in b.hom(t, g.obj(x)).iter().enumerate() {
                    let py = hom_y.binary_search(&b.comp(g.mor(m), u)).unwrap();
                    uf.union(base[x.idx()] + px, base[y.idx()] + py);
                }
            }
            let (_, k) = uf.numbering();
            (k > 1).then(|| format!("{} ↓ g has {k} components", b.obj_label(t)))
        })
        .collect();
    for f in failures {
        r.fail(f);
    }
    r
}

#[cfg(test)]
mod tests;
