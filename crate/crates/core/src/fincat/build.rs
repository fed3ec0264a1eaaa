use rustc_hash::FxHashMap as HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use super::{FinCat, MorId, ObjId};
use crate::error::{Error, Result};

/// A category built from structured objects and morphisms, together with
/// the payloads behind each id.
#[derive(Clone, Debug)]
pub struct Tabulated<O, M> {
    pub cat: FinCat,
    pub objects: Vec<O>,
    pub morphisms: Vec<M>,
    index: HashMap<(u32, u32, M), MorId>,
}

impl<O, M: Eq + Hash + Clone> Tabulated<O, M> {
    /// Id of the morphism `a → b` with the given payload.
    pub fn lookup(&self, a: ObjId, b: ObjId, m: &M) -> Option<MorId> {
        self.index.get(&(a.0, b.0, m.clone())).copied()
    }
}

/// Tabulates a category given hom-set enumerations between every pair of objects.
///
/// `compose(g, f)` must return the payload of `g ∘ f`.
pub fn tabulate<O, M>(
    objects: Vec<O>,
    hom: impl Fn(&O, &O) -> Vec<M> + Sync,
    identity: impl Fn(&O) -> M,
    compose: impl Fn(&M, &M) -> M + Sync,
    obj_label: impl Fn(&O) -> String,
    mor_label: impl Fn(&O, &O, &M) -> String,
) -> Result<Tabulated<O, M>>
where
    O: Sync + Send,
    M: Clone + Eq + Hash + Send + Sync,
{
    let n = objects.len();
    let objs = &objects;
    let (cat, morphisms, index) = tabulate_out(
        objects.iter().collect::<Vec<_>>(),
        |_, a| {
            (0..n)
                .flat_map(|j| hom(*a, &objs[j]).into_iter().map(move |m| (j, m)))
                .collect()
        },
        |o| identity(*o),
        &compose,
        |o| obj_label(*o),
        |a, b, m| mor_label(*a, *b, m),
    )
    .map(|t| (t.cat, t.morphisms, t.index))?;
    Ok(Tabulated {
        cat,
        objects,
        morphisms,
        index,
    })
}

/// Tabulates a category given, for each object, its outgoing morphisms as
/// `(target index, payload)` pairs.
pub fn tabulate_out<O, M>(
    objects: Vec<O>,
    out: impl Fn(usize, &O) -> Vec<(usize, M)> + Sync,
    identity: impl Fn(&O) -> M,
    compose: impl Fn(&M, &M) -> M + Sync,
    obj_label: impl Fn(&O) -> String,
    mor_label: impl Fn(&O, &O, &M) -> String,
) -> Result<Tabulated<O, M>>
where
    O: Sync + Send,
    M: Clone + Eq + Hash + Send + Sync,
{
    let n = objects.len();
    let mut outs: Vec<Vec<(usize, M)>> = objects
        .par_iter()
        .enumerate()
        .map(|(i, o)| out(i, o))
        .collect();
    for list in &mut outs {
        list.sort_by_key(|(t, _)| *t);
    }
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    let mut labels = Vec::new();
    let mut payloads = Vec::new();
    let mut index = HashMap::default();
    for (a, list) in outs.into_iter().enumerate() {
        for (b, m) in list {
            if b >= n {
                return Err(Error::OutOfRange(format!("target index {b}")));
            }
            let id = MorId(payloads.len() as u32);
            if index.insert((a as u32, b as u32, m.clone()), id).is_some() {
                return Err(Error::OutOfRange(format!(
                    "duplicate morphism {}",
                    mor_label(&objects[a], &objects[b], &m)
                )));
            }
            src.push(ObjId(a as u32));
            tgt.push(ObjId(b as u32));
            labels.push(mor_label(&objects[a], &objects[b], &m));
            payloads.push(m);
        }
    }
    let mut identities = Vec::with_capacity(n);
    for (i, o) in objects.iter().enumerate() {
        let key = (i as u32, i as u32, identity(o));
        match index.get(&key) {
            Some(&id) => identities.push(id),
            None => {
                return Err(Error::OutOfRange(format!(
                    "identity of {} is not among its endomorphisms",
                    obj_label(o)
                )))
            }
        }
    }
    let obj_labels = objects.iter().map(&obj_label).collect();
    let cat = FinCat::from_fn(obj_labels, labels, src.clone(), tgt.clone(), identities, |g, f| {
        let h = compose(&payloads[g.idx()], &payloads[f.idx()]);
        index
            .get(&(src[f.idx()].0, tgt[g.idx()].0, h))
            .copied()
    })?;
    Ok(Tabulated {
        cat,
        objects,
        morphisms: payloads,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::validate_category;

    #[test]
    fn preorder_on_three_points() {
        let t = tabulate(
            vec![0u8, 1, 2],
            |a, b| if a <= b { vec![()] } else { vec![] },
            |_| (),
            |_, _| (),
            |o| o.to_string(),
            |a, b, _| format!("{a}<={b}"),
        )
        .unwrap();
        assert_eq!(t.cat.num_morphisms(), 6);
        assert!(validate_category(&t.cat).passed);
    }

    #[test]
    fn truncation_escape_is_an_error() {
        // endomaps of {0, 1} but with the constant maps missing
        let r = tabulate(
            vec![()],
            |_, _| vec![[0u8, 1], [1, 0], [1, 1]],
            |_| [0, 1],
            |g, f| [g[f[0] as usize], g[f[1] as usize]],
            |_| "x".into(),
            |_, _, m| format!("{m:?}"),
        );
        assert!(matches!(r, Err(Error::NotClosed(_))));
    }
}
