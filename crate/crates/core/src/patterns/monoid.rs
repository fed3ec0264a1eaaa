use std::collections::HashSet;

use rayon::prelude::*;

use super::PatternData;
use crate::error::Result;
use crate::fincat::{same_cat, ObjId};
use crate::kan::SetFunctor;
use crate::report::Report;

/// The Segal map `F(O) → ∏ F(O_i)` at `o`, as one tuple per element of `F(O)`.
pub fn segal_image(p: &PatternData, f: &SetFunctor, o: ObjId) -> Result<Vec<Vec<u32>>> {
    let rhos = p.rhos(o)?;
    Ok((0..f.size(o) as u32)
        .map(|x| rhos.iter().map(|&r| f.apply(r, x)).collect())
        .collect())
}

/// Checks the Segal condition: every `F(O) → ∏ F(O_i)` is a bijection.
pub fn check_monoid(p: &PatternData, f: &SetFunctor) -> Report {
    check_monoid_within(p, f, &|_, _| true).renamed("Segal condition")
}

/// Checks the Segal condition up to truncation: each Segal map must be
/// injective and hit every tuple accepted by `realizable`.
pub fn check_monoid_within(
    p: &PatternData,
    f: &SetFunctor,
    realizable: &(dyn Fn(ObjId, &[u32]) -> bool + Sync),
) -> Report {
    let mut r = Report::new("Segal condition within the truncation");
    if !same_cat(p.cat(), f.source()) {
        r.fail("functor is not defined on the pattern");
        return r;
    }
    let cat = &**p.cat();
    let failures: Vec<String> = cat
        .objects()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|&o| {
            let mut bad = Vec::new();
            let image = match segal_image(p, f, o) {
                Ok(i) => i,
                Err(e) => return vec![e.to_string()],
            };
            let comps = p.components(o).unwrap();
            let mut seen = HashSet::new();
            for (x, t) in image.iter().enumerate() {
                if !seen.insert(t.as_slice()) {
                    let y = image.iter().position(|s| s == t).unwrap();
                    bad.push(format!(
                        "Segal map at {} identifies {} and {}",
                        cat.obj_label(o),
                        f.element_label(o, y as u32),
                        f.element_label(o, x as u32)
                    ));
                    return bad;
                }
            }
            let dims: Vec<usize> = comps.iter().map(|&c| f.size(c)).collect();
            let mut missed = 0usize;
            let mut first = None;
            for_each_tuple(&dims, |t| {
                if !seen.contains(t) && realizable(o, t) {
                    missed += 1;
                    first.get_or_insert_with(|| t.to_vec());
                }
            });
            if let Some(t) = first {
                let parts: Vec<String> = t
                    .iter()
                    .zip(&comps)
                    .map(|(&x, &c)| f.element_label(c, x))
                    .collect();
                bad.push(format!(
                    "Segal map at {} misses {missed} tuples, e.g. ({}); |F| = {} vs product {}",
                    cat.obj_label(o),
                    parts.join(", "),
                    f.size(o),
                    dims.iter().product::<usize>()
                ));
            }
            bad
        })
        .collect();
    for b in failures {
        r.fail(b);
    }
    r
}

/// Calls `visit` on every tuple in `∏ 0..dims[i]`, in lexicographic order.
pub(crate) fn for_each_tuple(dims: &[usize], mut visit: impl FnMut(&[u32])) {
    if dims.contains(&0) {
        return;
    }
    let mut t = vec![0u32; dims.len()];
    loop {
        visit(&t);
        let mut k = dims.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            t[k] += 1;
            if (t[k] as usize) < dims[k] {
                break;
            }
            t[k] = 0;
        }
    }
}

/// Position of a tuple in the lexicographic order of `∏ 0..dims[i]`.
pub(crate) fn tuple_index(dims: &[usize], t: &[u32]) -> usize {
    t.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x as usize)
}

pub(crate) fn tuple_at(dims: &[usize], mut k: usize) -> Vec<u32> {
    let mut t = vec![0u32; dims.len()];
    for i in (0..dims.len()).rev() {
        t[i] = (k % dims[i]) as u32;
        k /= dims[i];
    }
    t
}
