//! Random small categories and functors, and brute-force oracles for
//! colimits, limits and Kan extensions. Only built with the `testing` feature.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::fincat::{tabulate, FinCat, FinFunctor, MorId, ObjId, Tabulated};
use crate::kan::SetFunctor;

pub mod suite;

pub use rand_chacha::ChaCha8Rng as TestRng;

/// The free category on a DAG; morphisms are paths of edge indices.
#[derive(Clone, Debug)]
pub struct FreeDag {
    pub cat: Arc<FinCat>,
    pub edges: Vec<(u32, u32)>,
    pub tab: Tabulated<u32, Vec<u32>>,
}

impl FreeDag {
    /// The morphism given by a single edge.
    pub fn edge(&self, e: usize) -> MorId {
        let (a, b) = self.edges[e];
        self.tab.lookup(ObjId(a), ObjId(b), &vec![e as u32]).unwrap()
    }
}

fn paths(edges: &[(u32, u32)], a: u32, b: u32, limit: usize) -> Vec<Vec<u32>> {
    let mut done = Vec::new();
    let mut stack: Vec<(u32, Vec<u32>)> = vec![(a, Vec::new())];
    while let Some((at, p)) = stack.pop() {
        if done.len() > limit {
            break;
        }
        if at == b {
            done.push(p.clone());
        }
        for (i, &(s, t)) in edges.iter().enumerate() {
            if s == at {
                let mut q = p.clone();
                q.push(i as u32);
                stack.push((t, q));
            }
        }
    }
    done.sort();
    done
}

/// A free category on a random DAG with at most `max_objects` objects and
/// `max_morphisms` morphisms.
pub fn free_dag(rng: &mut impl Rng, max_objects: usize, max_morphisms: usize) -> FreeDag {
    loop {
        let n = rng.gen_range(1..=max_objects) as u32;
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for _ in 0..2 {
                    if rng.gen_bool(0.3) {
                        edges.push((a, b));
                    }
                }
            }
        }
        let total: usize = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| paths(&edges, a, b, max_morphisms).len())
            .sum();
        if total > max_morphisms {
            continue;
        }
        let e2 = edges.clone();
        let tab = tabulate(
            (0..n).collect(),
            |&a, &b| paths(&e2, a, b, max_morphisms),
            |_| Vec::new(),
            |g, f| f.iter().chain(g).copied().collect(),
            |a| format!("o{a}"),
            |a, b, p| {
                if p.is_empty() {
                    format!("id{a}")
                } else {
                    let _ = b;
                    p.iter().map(|e| format!("e{e}")).collect::<Vec<_>>().join(".")
                }
            },
        )
        .expect("paths compose");
        return FreeDag {
            cat: Arc::new(tab.cat.clone()),
            edges,
            tab,
        };
    }
}

/// A random preorder on at most `max_objects` points.
pub fn preorder(rng: &mut impl Rng, max_objects: usize) -> Arc<FinCat> {
    let n = rng.gen_range(1..=max_objects);
    let mut le = vec![vec![false; n]; n];
    for (a, row) in le.iter_mut().enumerate() {
        row[a] = true;
        for cell in row.iter_mut().skip(a + 1) {
            *cell = rng.gen_bool(0.4);
        }
    }
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if le[a][k] && le[k][b] {
                    le[a][b] = true;
                }
            }
        }
    }
    Arc::new(
        tabulate(
            (0..n).collect(),
            |&a, &b| if le[a][b] { vec![()] } else { vec![] },
            |_| (),
            |_, _| (),
            |a| format!("p{a}"),
            |a, b, _| format!("p{a}<=p{b}"),
        )
        .expect("preorder")
        .cat,
    )
}

/// The one-object category of maps of `{0, …, k-1}` generated by `gens`.
pub fn transformation_monoid(k: usize, gens: &[Vec<u8>]) -> Arc<FinCat> {
    let id: Vec<u8> = (0..k as u8).collect();
    let mut all = vec![id.clone()];
    let mut frontier = vec![id];
    while let Some(m) = frontier.pop() {
        for g in gens {
            let h: Vec<u8> = m.iter().map(|&x| g[x as usize]).collect();
            if !all.contains(&h) {
                all.push(h.clone());
                frontier.push(h);
            }
        }
    }
    all.sort();
    Arc::new(
        tabulate(
            vec![()],
            |_, _| all.clone(),
            |_| (0..k as u8).collect(),
            |g, f| f.iter().map(|&x| g[x as usize]).collect(),
            |_| "*".into(),
            |_, _, m| format!("{m:?}"),
        )
        .expect("closed under composition")
        .cat,
    )
}

/// A random transformation monoid on at most three points.
pub fn random_monoid(rng: &mut impl Rng) -> Arc<FinCat> {
    let k = rng.gen_range(1..=3);
    let gens: Vec<Vec<u8>> = (0..rng.gen_range(1..=2))
        .map(|_| (0..k).map(|_| rng.gen_range(0..k as u8)).collect())
        .collect();
    transformation_monoid(k, &gens)
}

/// `Z/n` as a one-object groupoid.
pub fn cyclic_group(n: usize) -> Arc<FinCat> {
    let gen: Vec<u8> = (0..n as u8).map(|x| (x + 1) % n as u8).collect();
    transformation_monoid(n, &[gen])
}

/// `S_3` as a one-object groupoid.
pub fn symmetric_group_3() -> Arc<FinCat> {
    transformation_monoid(3, &[vec![1, 0, 2], vec![1, 2, 0]])
}

/// One of the families above, chosen at random.
pub fn random_category(rng: &mut impl Rng) -> Arc<FinCat> {
    match rng.gen_range(0..5) {
        0 | 1 => free_dag(rng, 5, 20).cat,
        2 => preorder(rng, 5),
        3 => random_monoid(rng),
        _ => {
            if rng.gen_bool(0.5) {
                cyclic_group(rng.gen_range(1..=4))
            } else {
                symmetric_group_3()
            }
        }
    }
}

/// Pointwise disjoint union.
pub fn coproduct(f: &SetFunctor, g: &SetFunctor) -> SetFunctor {
    let c = f.source().clone();
    let sizes = c.objects().map(|o| f.size(o) + g.size(o)).collect();
    SetFunctor::from_fn(c.clone(), sizes, |m, x| {
        let n = f.size(c.src(m)) as u32;
        if x < n {
            f.apply(m, x)
        } else {
            f.size(c.tgt(m)) as u32 + g.apply(m, x - n)
        }
    })
    .expect("coproduct tables")
}

/// Morphisms that are not composites of two non-identity morphisms.
fn indecomposables(c: &FinCat) -> Vec<MorId> {
    let mut decomposable = vec![false; c.num_morphisms()];
    for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
        for &g in c.out(c.tgt(f)) {
            if !c.is_identity(g) {
                decomposable[c.comp(g, f).idx()] = true;
            }
        }
    }
    c.morphisms()
        .filter(|&m| !c.is_identity(m) && !decomposable[m.idx()])
        .collect()
}

/// Extends maps on generating morphisms to every morphism, if the category
/// is generated by them without loops. `None` on conflicts.
fn extend_from_generators(
    c: &Arc<FinCat>,
    sizes: &[usize],
    gens: &HashMap<MorId, Vec<u32>>,
) -> Option<SetFunctor> {
    let mut action: Vec<Option<Vec<u32>>> = vec![None; c.num_morphisms()];
    for o in c.objects() {
        action[c.id(o).idx()] = Some((0..sizes[o.idx()] as u32).collect());
    }
    for (m, a) in gens {
        action[m.idx()] = Some(a.clone());
    }
    let mut changed = true;
    while changed {
        changed = false;
        for f in c.morphisms() {
            let Some(af) = action[f.idx()].clone() else { continue };
            for &g in c.out(c.tgt(f)) {
                let Some(ag) = action[g.idx()].as_ref() else { continue };
                let h = c.comp(g, f);
                let ah: Vec<u32> = af.iter().map(|&x| ag[x as usize]).collect();
                match &action[h.idx()] {
                    None => {
                        action[h.idx()] = Some(ah);
                        changed = true;
                    }
                    Some(prev) if *prev != ah => return None,
                    _ => {}
                }
            }
        }
    }
    let action: Option<Vec<Vec<u32>>> = action.into_iter().collect();
    let f = SetFunctor::new(c.clone(), sizes.to_vec(), action?).ok()?;
    f.validate().passed.then_some(f)
}

/// A random functor `c → FinSet` with values of size at most `max`.
pub fn random_set_functor(rng: &mut impl Rng, c: &Arc<FinCat>, max: usize) -> SetFunctor {
    let gens = indecomposables(c);
    let generated = c.objects().count() > 0 && !c.morphisms().any(|m| !c.is_identity(m) && c.src(m) == c.tgt(m));
    if generated {
        for _ in 0..50 {
            let sizes: Vec<usize> = c.objects().map(|_| rng.gen_range(0..=max)).collect();
            let table: HashMap<MorId, Vec<u32>> = gens
                .iter()
                .map(|&g| {
                    let (a, b) = (c.src(g), c.tgt(g));
                    let row = (0..sizes[a.idx()])
                        .map(|_| {
                            if sizes[b.idx()] == 0 {
                                u32::MAX
                            } else {
                                rng.gen_range(0..sizes[b.idx()] as u32)
                            }
                        })
                        .collect();
                    (g, row)
                })
                .collect();
            if table.values().flatten().any(|&x| x == u32::MAX) {
                continue;
            }
            if let Some(f) = extend_from_generators(c, &sizes, &table) {
                return f;
            }
        }
    }
    // pieces that are always functors: constants and small representables
    let mut pieces: Vec<SetFunctor> = vec![SetFunctor::constant(c.clone(), 1)];
    for o in c.objects() {
        let r = SetFunctor::representable(c.clone(), o);
        if r.sizes().iter().all(|&s| s <= max) {
            pieces.push(r);
        }
    }
    let mut f = SetFunctor::constant(c.clone(), 0);
    for _ in 0..rng.gen_range(0..=2) {
        let p = pieces.choose(rng).unwrap();
        let g = coproduct(&f, p);
        if g.sizes().iter().all(|&s| s <= max) {
            f = g;
        }
    }
    f
}

/// A random functor out of a free category: a random object map with every
/// edge sent to a random morphism between the images. `None` if the object
/// map admits no such choice after a few tries.
pub fn random_functor_from(rng: &mut impl Rng, src: &FreeDag, tgt: &Arc<FinCat>) -> Option<FinFunctor> {
    let c = &src.cat;
    for _ in 0..20 {
        let objs: Vec<ObjId> = c.objects().map(|_| ObjId(rng.gen_range(0..tgt.num_objects() as u32))).collect();
        let mut edge_images = Vec::new();
        let mut ok = true;
        for &(a, b) in &src.edges {
            let hom = tgt.hom(objs[a as usize], objs[b as usize]);
            if hom.is_empty() {
                ok = false;
                break;
            }
            edge_images.push(*hom.choose(rng).unwrap());
        }
        if !ok {
            continue;
        }
        let mors = c
            .morphisms()
            .map(|m| {
                let path = &src.tab.morphisms[m.idx()];
                path.iter()
                    .fold(tgt.id(objs[c.src(m).idx()]), |acc, &e| tgt.comp(edge_images[e as usize], acc))
            })
            .collect();
        return FinFunctor::new(c.clone(), tgt.clone(), objs, mors).ok();
    }
    None
}

/// Connected-component labels by repeated relaxation to the smallest member.
fn components(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut label: Vec<usize> = (0..n).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in edges {
            let m = label[a].min(label[b]);
            if label[a] != m || label[b] != m {
                label[a] = m;
                label[b] = m;
                changed = true;
            }
        }
    }
    label
}

/// `⊔ F(c)` modulo `x ~ F(f)(x)`: the component label of each `(c, x)`.
pub fn brute_colimit(f: &SetFunctor) -> (usize, HashMap<(ObjId, u32), usize>) {
    let c = f.source();
    let mut index = HashMap::new();
    for o in c.objects() {
        for x in 0..f.size(o) as u32 {
            let k = index.len();
            index.insert((o, x), k);
        }
    }
    let mut edges = Vec::new();
    for m in c.morphisms() {
        for x in 0..f.size(c.src(m)) as u32 {
            edges.push((index[&(c.src(m), x)], index[&(c.tgt(m), f.apply(m, x))]));
        }
    }
    let label = components(index.len(), &edges);
    let mut distinct: Vec<usize> = label.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let classes = index.into_iter().map(|(k, i)| (k, label[i])).collect();
    (distinct.len(), classes)
}

/// Every compatible family in `∏ F(c)`, by enumeration.
pub fn brute_limit(f: &SetFunctor) -> Vec<Vec<u32>> {
    let c = f.source();
    let mut families = vec![Vec::new()];
    for o in c.objects() {
        families = families
            .into_iter()
            .flat_map(|t: Vec<u32>| {
                (0..f.size(o) as u32).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    families.retain(|t| {
        c.morphisms()
            .all(|m| f.apply(m, t[c.src(m).idx()]) == t[c.tgt(m).idx()])
    });
    families.sort();
    families
}

/// `Lan_g F(d)` as components of `{(c, u: g(c) → d, x ∈ F(c))}`.
pub fn brute_lan(g: &FinFunctor, f: &SetFunctor, d: ObjId) -> (usize, HashMap<(ObjId, MorId, u32), usize>) {
    let (c, dc) = (f.source(), g.target());
    let mut index = HashMap::new();
    for o in c.objects() {
        for &u in dc.hom(g.obj(o), d) {
            for x in 0..f.size(o) as u32 {
                let k = index.len();
                index.insert((o, u, x), k);
            }
        }
    }
    let mut edges = Vec::new();
    for m in c.morphisms() {
        let (a, b) = (c.src(m), c.tgt(m));
        for &u in dc.hom(g.obj(b), d) {
            for x in 0..f.size(a) as u32 {
                edges.push((index[&(a, dc.comp(u, g.mor(m)), x)], index[&(b, u, f.apply(m, x))]));
            }
        }
    }
    let label = components(index.len(), &edges);
    let mut distinct = label.clone();
    distinct.sort_unstable();
    distinct.dedup();
    (distinct.len(), index.into_iter().map(|(k, i)| (k, label[i])).collect())
}

/// `Ran_g F(d)` as the compatible families over `{(c, u: d → g(c))}`, or
/// `None` when there are more than `cap` candidate families.
pub fn brute_ran(g: &FinFunctor, f: &SetFunctor, d: ObjId, cap: usize) -> Option<Vec<Vec<(ObjId, MorId, u32)>>> {
    let (c, dc) = (f.source(), g.target());
    let slots: Vec<(ObjId, MorId)> = c
        .objects()
        .flat_map(|o| dc.hom(d, g.obj(o)).iter().map(move |&u| (o, u)))
        .collect();
    let count = slots.iter().fold(1usize, |n, (o, _)| n.saturating_mul(f.size(*o)));
    if count > cap {
        return None;
    }
    let pos: HashMap<(ObjId, MorId), usize> = slots.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut families = vec![Vec::new()];
    for &(o, _) in &slots {
        families = families
            .into_iter()
            .flat_map(|t: Vec<u32>| {
                (0..f.size(o) as u32).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    families.retain(|t| {
        slots.iter().enumerate().all(|(i, &(o, u))| {
            c.out(o).iter().all(|&m| {
                let j = pos[&(c.tgt(m), dc.comp(g.mor(m), u))];
                f.apply(m, t[i]) == t[j]
            })
        })
    });
    let mut out: Vec<Vec<(ObjId, MorId, u32)>> = families
        .into_iter()
        .map(|t| slots.iter().zip(t).map(|(&(o, u), x)| (o, u, x)).collect())
        .collect();
    out.sort();
    Some(out)
}
