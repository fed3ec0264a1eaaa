//! Seeded comparisons of the Kan extension engine against the brute-force
//! oracles. Each returns how many instances it compared, or the first
//! disagreement.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use rand::{Rng, SeedableRng};

use super::*;
use crate::fincat::{FinCat, FinFunctor};
use crate::kan::{check_cofinal, colimit, lan, limit, ran, SetFunctor};

pub type SuiteResult = Result<usize, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

/// Two labelings induce the same partition.
fn same_partition<K: Eq + Hash + Clone>(a: &HashMap<K, usize>, b: impl Fn(&K) -> usize) -> bool {
    let mut fwd = HashMap::new();
    let mut back = HashMap::new();
    a.iter().all(|(k, &x)| {
        let y = b(k);
        *fwd.entry(x).or_insert(y) == y && *back.entry(y).or_insert(x) == x
    })
}

/// A random pair (g: C → D, F: C → Set) with C the free category on a DAG.
pub fn kan_instance(rng: &mut TestRng) -> (FinFunctor, SetFunctor) {
    loop {
        let src = free_dag(rng, 4, 12);
        let tgt = random_category(rng);
        if let Some(g) = random_functor_from(rng, &src, &tgt) {
            let f = random_set_functor(rng, &src.cat, 3);
            return (g, f);
        }
    }
}

pub fn colimit_suite(seed: u64, count: usize) -> SuiteResult {
    let mut rng = TestRng::seed_from_u64(seed);
    for i in 0..count {
        let c = random_category(&mut rng);
        let f = random_set_functor(&mut rng, &c, 3);
        ensure!(f.validate().passed, "instance {i}: generated functor is invalid");
        let cocone = colimit(&f);
        let (n, classes) = brute_colimit(&f);
        ensure!(cocone.apex == n, "instance {i}: colimit has {} elements, expected {n}", cocone.apex);
        ensure!(
            same_partition(&classes, |&(o, x)| cocone.leg(o, x) as usize),
            "instance {i}: colimit legs identify the wrong elements"
        );
        let mut fams = limit(&f).families;
        fams.sort();
        ensure!(fams == brute_limit(&f), "instance {i}: limit families differ");
    }
    Ok(count)
}

pub fn lan_suite(seed: u64, count: usize) -> SuiteResult {
    let mut rng = TestRng::seed_from_u64(seed);
    for i in 0..count {
        let (g, f) = kan_instance(&mut rng);
        let k = lan(&g, &f).map_err(|e| format!("instance {i}: {e}"))?;
        ensure!(k.functor.validate().passed, "instance {i}: Lan is not a functor");
        let d = g.target();
        for t in d.objects() {
            let (n, classes) = brute_lan(&g, &f, t);
            ensure!(k.functor.size(t) == n, "instance {i}: Lan has {} elements at {t:?}, expected {n}", k.functor.size(t));
            ensure!(
                same_partition(&classes, |&(o, u, x)| k.class(&g, t, o, u, x).unwrap() as usize),
                "instance {i}: Lan identifies the wrong elements at {t:?}"
            );
            // the action is postcomposition
            for &h in d.out(t) {
                for &(o, u, x) in classes.keys() {
                    let here = k.class(&g, t, o, u, x).unwrap();
                    let there = k.class(&g, d.tgt(h), o, d.comp(h, u), x).unwrap();
                    ensure!(k.functor.apply(h, here) == there, "instance {i}: Lan acts wrongly along {h:?}");
                }
            }
        }
    }
    Ok(count)
}

/// Ran can be exponentially large, so only instances whose fibers the
/// oracle can enumerate within `cap` candidates are compared.
pub fn ran_suite(seed: u64, count: usize, cap: usize) -> SuiteResult {
    let mut rng = TestRng::seed_from_u64(seed);
    let mut compared = 0;
    while compared < count {
        let (g, f) = kan_instance(&mut rng);
        let Some(brutes) = g
            .target()
            .objects()
            .map(|t| brute_ran(&g, &f, t, cap))
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let i = compared;
        compared += 1;
        let k = ran(&g, &f).map_err(|e| format!("instance {i}: {e}"))?;
        ensure!(k.functor.validate().passed, "instance {i}: Ran is not a functor");
        for (t, brute) in g.target().objects().zip(brutes) {
            ensure!(
                k.functor.size(t) == brute.len(),
                "instance {i}: Ran has {} elements at {t:?}, expected {}",
                k.functor.size(t),
                brute.len()
            );
            let Some(slots) = brute.first() else { continue };
            let mut ours: Vec<_> = (0..k.functor.size(t) as u32)
                .map(|j| {
                    slots
                        .iter()
                        .map(|&(o, u, _)| (o, u, k.component(&g, t, j, o, u).unwrap()))
                        .collect::<Vec<_>>()
                })
                .collect();
            ours.sort();
            ensure!(ours == brute, "instance {i}: Ran families differ at {t:?}");
        }
    }
    Ok(compared)
}

/// Whether `colim (F ∘ g) → colim F`, `[a, x] ↦ [g a, x]`, is a bijection;
/// an error if it is not even well defined.
pub fn comparison_is_bijective(g: &FinFunctor, f: &SetFunctor) -> Result<bool, String> {
    let pulled = f.restrict(g).map_err(|e| e.to_string())?;
    let (small, big) = (colimit(&pulled), colimit(f));
    let mut image = vec![None; small.apex];
    for a in g.source().objects() {
        for x in 0..pulled.size(a) as u32 {
            let y = big.leg(g.obj(a), x);
            let slot = &mut image[small.leg(a, x) as usize];
            match *slot {
                None => *slot = Some(y),
                Some(z) => ensure!(z == y, "comparison is not well defined"),
            }
        }
    }
    let mut hit = vec![false; big.apex];
    for y in image.iter().flatten() {
        hit[*y as usize] = true;
    }
    Ok(small.apex == big.apex && hit.iter().all(|&h| h))
}

/// A target with a chance of a terminal-ish region, so cofinal maps occur.
fn cofinal_instance(rng: &mut TestRng) -> Option<(FinFunctor, Arc<FinCat>)> {
    let src = free_dag(rng, 4, 12);
    let tgt = if rng.gen_bool(0.5) { preorder(rng, 4) } else { random_category(rng) };
    random_functor_from(rng, &src, &tgt).map(|g| (g, tgt))
}

/// Cofinal functors preserve colimits of random functors; non-cofinal ones
/// fail to preserve the colimit of some corepresentable. Keeps going until
/// at least `min_cofinal` of the `count` instances are cofinal.
pub fn cofinal_suite(seed: u64, count: usize, min_cofinal: usize) -> SuiteResult {
    let mut rng = TestRng::seed_from_u64(seed);
    let (mut cofinal, mut not) = (0, 0);
    while cofinal + not < count || cofinal < min_cofinal {
        let Some((g, tgt)) = cofinal_instance(&mut rng) else { continue };
        if check_cofinal(&g).passed {
            cofinal += 1;
            for _ in 0..3 {
                let f = random_set_functor(&mut rng, &tgt, 3);
                ensure!(comparison_is_bijective(&g, &f)?, "a cofinal functor changed a colimit");
            }
        } else if cofinal + not < count {
            not += 1;
            let mut witnessed = false;
            for b in tgt.objects() {
                witnessed |= !comparison_is_bijective(&g, &SetFunctor::representable(tgt.clone(), b))?;
            }
            ensure!(witnessed, "a non-cofinal functor preserved every corepresentable colimit");
        }
    }
    Ok(cofinal + not)
}
