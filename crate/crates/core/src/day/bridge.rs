use std::collections::HashMap;

use super::convolve::convolution;
use super::{fiberwise_op, grothendieck, CatMonoid};
use crate::error::{Error, Result};
use crate::fincat::{opposite, same_cat, MorId, ObjId};
use crate::kan::SetFunctor;
use crate::patterns::{check_monoid, tuple_index};
use crate::report::Report;

/// A choice of `a_O ∈ M(O)` for every object and `μ_g: M(g)(a_O) → a_{O'}`
/// for every morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub objects: Vec<ObjId>,
    pub structure: Vec<MorId>,
}

impl Section {
    /// Checks typing, `μ_id = id` and `μ_{hg} = μ_h ∘ M(h)(μ_g)`.
    pub fn validate(&self, m: &CatMonoid) -> Report {
        let cat = m.pattern.cat();
        let mut r = Report::new("lax section");
        for g in cat.morphisms() {
            let (o, o2) = (cat.src(g), cat.tgt(g));
            let fib = m.fiber(o2);
            let mu = self.structure[g.idx()];
            if fib.src(mu) != m.action(g).obj(self.objects[o.idx()]) || fib.tgt(mu) != self.objects[o2.idx()] {
                r.fail(format!("structure map of {} is mistyped", cat.mor_label(g)));
                return r;
            }
        }
        for o in cat.objects() {
            let id = cat.id(o);
            if self.structure[id.idx()] != m.fiber(o).id(self.objects[o.idx()]) {
                r.fail(format!("structure map of the identity of {} is not an identity", cat.obj_label(o)));
            }
        }
        for g in cat.morphisms() {
            for &h in cat.out(cat.tgt(g)) {
                let fib = m.fiber(cat.tgt(h));
                let lhs = self.structure[cat.comp(h, g).idx()];
                let rhs = fib.comp(self.structure[h.idx()], m.action(h).mor(self.structure[g.idx()]));
                if lhs != rhs {
                    r.fail(format!(
                        "structure maps of {} and {} do not compose",
                        cat.mor_label(h),
                        cat.mor_label(g)
                    ));
                }
            }
        }
        r
    }
}

/// `a_O = (u, …, u)` with identity structure maps, for a monoid whose
/// elementary fibers are copies of one category with `u` a strict unit.
pub fn unit_section(m: &CatMonoid, unit: ObjId) -> Result<Section> {
    let cat = m.pattern.cat();
    let objects = cat
        .objects()
        .map(|o| {
            let n = m.pattern.rhos(o)?.len();
            m.segal_inverse(o, &vec![unit; n])?
                .ok_or_else(|| Error::Precondition(format!("no unit object over {}", cat.obj_label(o))))
        })
        .collect::<Result<Vec<_>>>()?;
    let structure = cat
        .morphisms()
        .map(|g| {
            let a = objects[cat.tgt(g).idx()];
            if m.action(g).obj(objects[cat.src(g).idx()]) != a {
                return Err(Error::Precondition(format!("{} does not preserve the unit", cat.mor_label(g))));
            }
            Ok(m.fiber(cat.tgt(g)).id(a))
        })
        .collect::<Result<_>>()?;
    Ok(Section { objects, structure })
}

/// `N(O, x) = Hom(x, a_O)` on the total category of the fiberwise opposite,
/// with `(g, β)` acting by `h ↦ μ_g ∘ M(g)(h) ∘ β`.
pub fn yoneda_monoid(m: &CatMonoid, s: &Section) -> Result<SetFunctor> {
    let opfib = grothendieck(&fiberwise_op(m)?)?;
    let opfib = &opfib;
    let v = s.validate(m);
    if let Some(c) = v.first_counterexample() {
        return Err(Error::Precondition(c.to_string()));
    }
    let pcat = m.pattern.cat();
    let total = opfib.total.cat();
    let hom = |e: ObjId| {
        let (o, x) = opfib.pair(e);
        m.fiber(o).hom(x, s.objects[o.idx()])
    };
    let sizes = total.objects().map(|e| hom(e).len()).collect();
    SetFunctor::from_fn(total.clone(), sizes, |k, i| {
        let (g, beta) = opfib.tab.morphisms[k.idx()];
        let fib = m.fiber(pcat.tgt(g));
        let h = hom(total.src(k))[i as usize];
        let image = fib.comp(fib.comp(s.structure[g.idx()], m.action(g).mor(h)), beta);
        hom(total.tgt(k)).binary_search(&image).expect("typed composite") as u32
    })
}

/// The map from a Day convolution of restrictions to the restriction at the
/// target, induced by a monoid's action along one active morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureMap {
    pub phi: MorId,
    /// For each object `d` of the opposite target fiber, the image of every
    /// class of the convolution at `d`.
    pub maps: Vec<Vec<u32>>,
}

/// Presheaves on the elementary fibers with the structure maps of an algebra
/// for Day convolution.
#[derive(Clone, Debug)]
pub struct DayPresheafFamily {
    /// `(E, presheaf on op(M(E)))` for each elementary `E`.
    pub presheaves: Vec<(ObjId, SetFunctor)>,
    pub structure: Vec<StructureMap>,
    /// Whether each presheaf is representable.
    pub representable: Vec<bool>,
}

impl DayPresheafFamily {
    pub fn presheaf(&self, e: ObjId) -> Option<&SetFunctor> {
        self.presheaves.iter().find(|(o, _)| *o == e).map(|(_, f)| f)
    }

    pub fn all_representable(&self) -> bool {
        self.representable.iter().all(|&b| b)
    }
}

/// An element `e ∈ F(c)` such that `Hom(c, -) → F` sending `id` to `e` is
/// an isomorphism, if any.
pub fn find_representing(f: &SetFunctor) -> Option<(ObjId, u32)> {
    let c = f.source();
    c.objects().find_map(|a| {
        (0..f.size(a) as u32)
            .find(|&e| {
                c.objects().all(|d| {
                    let hom = c.hom(a, d);
                    if hom.len() != f.size(d) {
                        return false;
                    }
                    let mut hit = vec![false; hom.len()];
                    for &h in hom {
                        hit[f.apply(h, e) as usize] = true;
                    }
                    !hit.contains(&false)
                })
            })
            .map(|e| (a, e))
    })
}

/// Reads a monoid on the fiberwise-opposite fibration as presheaves on the
/// elementary fibers with Day-convolution structure maps.
pub fn monoid_algebra_bridge(m: &CatMonoid, n: &SetFunctor) -> Result<(DayPresheafFamily, Report)> {
    let opfib = grothendieck(&fiberwise_op(m)?)?;
    let opfib = &opfib;
    let total = opfib.total.cat();
    if !same_cat(n.source(), total) {
        return Err(Error::TypeMismatch("functor is not defined on the fibration".into()));
    }
    let pcat = m.pattern.cat();
    let mut report = Report::new(format!("{} is a Day-convolution algebra", m.name));
    let segal = check_monoid(&opfib.total, n).renamed("Segal condition on the fiberwise-opposite fibration");
    let segal_ok = segal.passed;
    report.push_child(segal);
    let mut family = DayPresheafFamily {
        presheaves: Vec::new(),
        structure: Vec::new(),
        representable: Vec::new(),
    };
    if !segal_ok {
        return Ok((family, report));
    }

    let mut restrictions: HashMap<ObjId, SetFunctor> = HashMap::new();
    for e in m.pattern.elementary_objects() {
        let fib = m.fiber(e);
        let op = std::sync::Arc::new(opposite(fib));
        let sizes = op.objects().map(|x| n.size(opfib.object_of(e, x))).collect();
        let r = SetFunctor::from_fn(op.clone(), sizes, |b, i| {
            let (x, y) = (op.src(b), op.tgt(b));
            let k = opfib
                .morphism_of(opfib.object_of(e, x), opfib.object_of(e, y), pcat.id(e), b)
                .expect("fiber morphisms lie over identities");
            n.apply(k, i)
        })?;
        family.representable.push(find_representing(&r).is_some());
        restrictions.insert(e, r.clone());
        family.presheaves.push((e, r));
    }

    let mut well_defined = Report::new("comparison maps are well defined");
    for phi in pcat.morphisms() {
        let (o, e) = (pcat.src(phi), pcat.tgt(phi));
        if !m.pattern.is_active(phi) || !m.pattern.is_elementary(e) {
            continue;
        }
        let rhos = m.pattern.rhos(o)?;
        let parts: Vec<SetFunctor> = rhos.iter().map(|&r| restrictions[&pcat.tgt(r)].clone()).collect();
        let conv = convolution(m, phi, &parts)?;
        let src = conv.pushforward.source().clone();
        let tgt = conv.pushforward.target().clone();
        let d_fun = conv.functor();
        let mut maps: Vec<Vec<Option<u32>>> = tgt.objects().map(|d| vec![None; d_fun.size(d)]).collect();
        for x in src.objects() {
            let ox = opfib.object_of(o, x);
            // element of N(O, x) with each component tuple
            let mut by_tuple = vec![None; conv.dims[x.idx()].iter().product()];
            let lifts: Vec<MorId> = rhos
                .iter()
                .map(|&r| {
                    let t = pcat.tgt(r);
                    let y = m.action(r).obj(x);
                    opfib
                        .morphism_of(ox, opfib.object_of(t, y), r, m.fiber(t).id(y))
                        .expect("canonical lift")
                })
                .collect();
            for i in 0..n.size(ox) as u32 {
                let t: Vec<u32> = lifts.iter().map(|&l| n.apply(l, i)).collect();
                by_tuple[tuple_index(&conv.dims[x.idx()], &t)] = Some(i);
            }
            for d in tgt.objects() {
                let od = opfib.object_of(e, d);
                for &u in tgt.hom(conv.pushforward.obj(x), d) {
                    let k = opfib.morphism_of(ox, od, phi, u).expect("morphism over the active map");
                    for (ti, elt) in by_tuple.iter().enumerate() {
                        let Some(elt) = *elt else {
                            well_defined.fail(format!(
                                "N({}) misses a component tuple",
                                total.obj_label(ox)
                            ));
                            continue;
                        };
                        let class = conv
                            .kan
                            .class(&conv.pushforward, d, x, u, ti as u32)
                            .expect("element of the convolution");
                        let image = n.apply(k, elt);
                        let slot = &mut maps[d.idx()][class as usize];
                        match *slot {
                            None => *slot = Some(image),
                            Some(prev) if prev != image => well_defined.fail(format!(
                                "along {}: class {class} at {} goes to {prev} and {image}",
                                pcat.mor_label(phi),
                                tgt.obj_label(d)
                            )),
                            _ => {}
                        }
                    }
                }
            }
        }
        family.structure.push(StructureMap {
            phi,
            maps: maps
                .into_iter()
                .map(|row| row.into_iter().map(|v| v.unwrap_or(u32::MAX)).collect())
                .collect(),
        });
    }
    report.push_child(well_defined);
    let count = family.representable.iter().filter(|&&b| b).count();
    report.note(format!(
        "{count} of {} elementary restrictions are representable",
        family.representable.len()
    ));
    Ok((family, report))
}
