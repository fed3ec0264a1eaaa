use std::sync::Arc;

use super::CatMonoid;
use crate::error::{Error, Result};
use crate::fincat::{opposite, same_cat, FinCat, FinFunctor, MorId, ObjId};
use crate::kan::{lan, LeftKan, SetFunctor};
use crate::patterns::{tuple_at, tuple_index};
use crate::report::Report;

/// The pieces of a Day convolution along one active morphism.
#[derive(Clone, Debug)]
pub struct Convolution {
    /// `op(M(φ)): op(M(O)) → op(M(E))`.
    pub pushforward: FinFunctor,
    /// `x ↦ ∏ F_i(ρ_i x)` on `op(M(O))`.
    pub product: SetFunctor,
    pub kan: LeftKan,
    /// Sizes of the factors of `product` at each object.
    pub dims: Vec<Vec<usize>>,
}

impl Convolution {
    pub fn functor(&self) -> &SetFunctor {
        &self.kan.functor
    }

    /// Class of the element with components `t ∈ ∏ F_i(ρ_i x)` over `u: φ_!x → d`.
    pub fn class(&self, d: ObjId, x: ObjId, u: MorId, t: &[u32]) -> Option<u32> {
        let k = tuple_index(&self.dims[x.idx()], t) as u32;
        self.kan.class(&self.pushforward, d, x, u, k)
    }

    /// `(x, u, components)` for the smallest element of class `k` at `d`.
    pub fn representative(&self, d: ObjId, k: u32) -> (ObjId, MorId, Vec<u32>) {
        let (x, u, e) = self.kan.representative(d, k);
        (x, u, tuple_at(&self.dims[x.idx()], e as usize))
    }
}

pub(crate) fn check_active(m: &CatMonoid, phi: MorId) -> Result<(ObjId, ObjId)> {
    let p = &m.pattern;
    let cat = p.cat();
    if phi.idx() >= cat.num_morphisms() {
        return Err(Error::OutOfRange(format!("morphism {}", phi.0)));
    }
    if !p.is_active(phi) {
        return Err(Error::Precondition(format!("{} is not active", cat.mor_label(phi))));
    }
    let (o, e) = (cat.src(phi), cat.tgt(phi));
    if !p.is_elementary(e) {
        return Err(Error::Precondition(format!("{} is not elementary", cat.obj_label(e))));
    }
    Ok((o, e))
}

/// Day convolution of presheaves `F_i` on the fibers over the components of
/// the source of `φ`: the left Kan extension of `∏ F_i ∘ ρ_i` along `op(M(φ))`.
pub fn convolution(m: &CatMonoid, phi: MorId, presheaves: &[SetFunctor]) -> Result<Convolution> {
    let (o, e) = check_active(m, phi)?;
    let rhos = m.pattern.rhos(o)?;
    if presheaves.len() != rhos.len() {
        return Err(Error::Precondition(format!(
            "{} presheaves for {} components",
            presheaves.len(),
            rhos.len()
        )));
    }
    let cat = m.pattern.cat();
    for (i, (f, &r)) in presheaves.iter().zip(&rhos).enumerate() {
        if !same_cat(f.source(), &Arc::new(opposite(m.fiber(cat.tgt(r))))) {
            return Err(Error::TypeMismatch(format!(
                "presheaf {} is not on the opposite of its fiber",
                i + 1
            )));
        }
    }
    let src = Arc::new(opposite(m.fiber(o)));
    let tgt = Arc::new(opposite(m.fiber(e)));
    let act = m.action(phi);
    let pushforward = FinFunctor::new(src.clone(), tgt, act.obj_map().to_vec(), act.mor_map().to_vec())?;
    let dims: Vec<Vec<usize>> = src
        .objects()
        .map(|x| {
            rhos.iter()
                .zip(presheaves)
                .map(|(&r, f)| f.size(m.action(r).obj(x)))
                .collect()
        })
        .collect();
    let sizes = dims.iter().map(|d| d.iter().product()).collect();
    let product = SetFunctor::from_fn(src.clone(), sizes, |u, k| {
        let (from, to) = (src.src(u), src.tgt(u));
        let t = tuple_at(&dims[from.idx()], k as usize);
        let image: Vec<u32> = rhos
            .iter()
            .zip(presheaves)
            .zip(&t)
            .map(|((&r, f), &x)| f.apply(m.action(r).mor(u), x))
            .collect();
        tuple_index(&dims[to.idx()], &image) as u32
    })?;
    let kan = lan(&pushforward, &product)?;
    Ok(Convolution {
        pushforward,
        product,
        kan,
        dims,
    })
}

pub fn day_convolve(m: &CatMonoid, phi: MorId, presheaves: &[SetFunctor]) -> Result<SetFunctor> {
    Ok(convolution(m, phi, presheaves)?.kan.functor)
}

/// The presheaf `Hom(-, c)` on a fiber, as a functor on its opposite.
pub fn yoneda(fiber: &FinCat, c: ObjId) -> SetFunctor {
    SetFunctor::representable(Arc::new(opposite(fiber)), c)
}

/// Checks that `y(c_1) ⊛ … ⊛ y(c_n) ≅ y(φ_!(c_1, …, c_n))` through the class
/// of the identities, exhaustively on every object and for naturality.
pub fn check_yoneda_monoidal(m: &CatMonoid, phi: MorId, objects: &[ObjId]) -> Result<Report> {
    let (o, e) = check_active(m, phi)?;
    let cat = m.pattern.cat();
    let rhos = m.pattern.rhos(o)?;
    let x = m.segal_inverse(o, objects)?.ok_or_else(|| {
        Error::Precondition(format!(
            "({}) is not a tuple of objects over {}",
            objects.iter().map(|c| c.0.to_string()).collect::<Vec<_>>().join(", "),
            cat.obj_label(o)
        ))
    })?;
    let names: Vec<String> = rhos
        .iter()
        .zip(objects)
        .map(|(&r, &c)| format!("y({})", m.fiber(cat.tgt(r)).obj_label(c)))
        .collect();
    let mut r = Report::new(format!(
        "Day convolution along {} sends representables to representables",
        cat.mor_label(phi)
    ));
    let presheaves: Vec<SetFunctor> = rhos
        .iter()
        .zip(objects)
        .map(|(&r, &c)| yoneda(m.fiber(cat.tgt(r)), c))
        .collect();
    let conv = convolution(m, phi, &presheaves)?;
    let fe = m.fiber(e);
    let t = m.action(phi).obj(x);
    let op = conv.pushforward.target().clone();
    let ids: Vec<u32> = rhos
        .iter()
        .zip(objects)
        .map(|(&rr, &c)| {
            let fib = m.fiber(cat.tgt(rr));
            fib.hom(c, c).binary_search(&fib.id(c)).unwrap() as u32
        })
        .collect();
    let unit = conv
        .class(t, x, op.id(t), &ids)
        .expect("identity element lies in the convolution");
    let d_fun = conv.functor();
    // h: t → d in the opposite fiber is an element of y(t)(d)
    let image = |h: MorId| d_fun.apply(h, unit);
    for d in op.objects() {
        let hom = op.hom(t, d);
        if hom.len() != d_fun.size(d) {
            r.fail(format!(
                "at {}: {} elements but Hom has {}",
                fe.obj_label(d),
                d_fun.size(d),
                hom.len()
            ));
            continue;
        }
        let mut hit = vec![false; hom.len()];
        for &h in hom {
            hit[image(h) as usize] = true;
        }
        if hit.contains(&false) {
            r.fail(format!("at {}: comparison is not a bijection", fe.obj_label(d)));
        }
    }
    for v in op.morphisms() {
        for &h in op.hom(t, op.src(v)) {
            if d_fun.apply(v, image(h)) != image(op.comp(v, h)) {
                r.fail(format!("not natural along {}", fe.mor_label(v)));
            }
        }
    }
    if r.passed {
        let lhs = if names.is_empty() { "unit".to_string() } else { names.join(" ⊛ ") };
        r.witness(format!("{lhs} ≅ y({})", fe.obj_label(t)));
    }
    Ok(r)
}
