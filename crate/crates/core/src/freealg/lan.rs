use rayon::prelude::*;

use super::{active_slice, inert_lift, ActiveSlice};
use crate::error::{Error, Result};
use crate::fincat::{same_cat, ObjId};
use crate::kan::{colimit, Cocone, SetFunctor};
use crate::patterns::{check_monoid_within, PatternMorphism};
use crate::report::Report;

/// A left Kan extension of a monoid along a pattern morphism.
#[derive(Clone, Debug)]
pub struct LanMonoid {
    pub functor: SetFunctor,
    /// Smallest source size among the elements of each class, per object.
    pub degrees: Vec<Vec<usize>>,
    pub report: Report,
}

struct Stage {
    slice: ActiveSlice,
    values: SetFunctor,
    cocone: Cocone,
}

/// `f_!M(P) = colim_{(O, φ) ∈ O^act_{/P}} M(O)`.
///
/// A map `h: P → P'` moves `x ∈ M(O)` over `φ` by factoring `h ∘ φ` as
/// `α ∘ ι`, lifting `ι` to an inert `j: O → O'` and sending `x` to `M(j)(x)`
/// over `α`. The report checks that this is independent of the chosen
/// element, functorial, and a monoid on the tuples realizable within the
/// target's level. `f` is expected to be extendable.
pub fn lan_monoid(f: &PatternMorphism, m: &SetFunctor) -> Result<LanMonoid> {
    let (src, tgt) = (&f.source, &f.target);
    let (sc, tc) = (src.cat(), tgt.cat());
    if !same_cat(m.source(), sc) {
        return Err(Error::TypeMismatch("monoid is not defined on the source pattern".into()));
    }
    let m = m.with_source(sc.clone())?;
    let stages: Vec<Stage> = tc
        .objects()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|p| {
            let slice = active_slice(f, p)?;
            let values = m.restrict(&slice.projection)?;
            let cocone = colimit(&values);
            Ok(Stage {
                slice,
                values,
                cocone,
            })
        })
        .collect::<Result<_>>()?;

    let mut well_defined = Report::new("transport is independent of representatives");
    let mut action = Vec::with_capacity(tc.num_morphisms());
    for h in tc.morphisms() {
        let (from, to) = (&stages[tc.src(h).idx()], &stages[tc.tgt(h).idx()]);
        let mut row: Vec<Option<u32>> = vec![None; from.cocone.apex];
        for s in from.slice.cat.objects() {
            let (o, phi) = from.slice.pair(s);
            let (iota, alpha) = tgt.factorize(tc.comp(h, phi))?;
            let (j, theta) = inert_lift(f, o, iota).ok_or_else(|| {
                Error::Precondition(format!(
                    "{} has no inert lift from {}",
                    tc.mor_label(iota),
                    sc.obj_label(o)
                ))
            })?;
            let s2 = to
                .slice
                .object_of(sc.tgt(j), tc.comp(alpha, theta))
                .expect("lifted factorization lies in the slice");
            for x in 0..from.values.size(s) as u32 {
                let k = from.cocone.leg(s, x) as usize;
                let image = to.cocone.leg(s2, m.apply(j, x));
                match row[k] {
                    None => row[k] = Some(image),
                    Some(prev) if prev != image => well_defined.fail(format!(
                        "{} sends class {k} to both {prev} and {image}",
                        tc.mor_label(h)
                    )),
                    Some(_) => {}
                }
            }
        }
        action.push(row.into_iter().map(|y| y.unwrap_or(0)).collect());
    }
    let sizes = stages.iter().map(|s| s.cocone.apex).collect();
    let functor = SetFunctor::new(tc.clone(), sizes, action)?;

    let degrees: Vec<Vec<usize>> = stages
        .iter()
        .map(|st| {
            let mut d = vec![usize::MAX; st.cocone.apex];
            for s in st.slice.cat.objects() {
                let size = src.size_of(st.slice.pair(s).0);
                for x in 0..st.values.size(s) as u32 {
                    let k = st.cocone.leg(s, x) as usize;
                    d[k] = d[k].min(size);
                }
            }
            d
        })
        .collect();

    let budget = tgt.level();
    let mut report = Report::new(format!("left Kan extension along {}", f.name));
    report.push_child(well_defined);
    report.push_child(functor.validate().renamed("functoriality"));
    let realizable = |o: ObjId, t: &[u32]| {
        let comps = tgt.components(o).unwrap_or_default();
        comps
            .iter()
            .zip(t)
            .map(|(c, &x)| degrees[c.idx()][x as usize])
            .sum::<usize>()
            <= budget
    };
    report.push_child(check_monoid_within(tgt, &functor, &realizable));
    report.note(format!("Segal maps compared on tuples of total degree <= {budget}"));
    Ok(LanMonoid {
        functor,
        degrees,
        report,
    })
}

