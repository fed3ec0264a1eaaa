//! Active slices, `Act` groupoids, extendability and free algebras.
//!
//! Every comparison against an infinite product is made inside the
//! truncation: only tuples whose total source size fits in the budget are
//! required to be hit.

mod act;
mod extendable;
mod free;
mod lan;
mod lifting;
mod slice;

use crate::error::Result;
use crate::fincat::{tabulate_out, FinCat, MorId, ObjId, Tabulated};

pub use act::{act_groupoid, ActGroupoid};
pub use extendable::{check_extendable_morphism, check_extendable_pattern};
pub use free::{free_algebra, GradedFreeAlgebra};
pub use lan::{lan_monoid, LanMonoid};
pub use lifting::{check_unique_inert_lifting, inert_lift};
pub use slice::{active_slice, ActiveSlice};

/// Groupoid whose objects are the given arrows, all sharing a target (or a
/// source, when `under` is set), and whose morphisms are the isomorphisms
/// between their free ends making the triangle commute.
pub(crate) fn triangle_groupoid(
    cat: &FinCat,
    arrows: Vec<MorId>,
    under: bool,
) -> Result<Tabulated<MorId, MorId>> {
    let mut arrows = arrows;
    arrows.sort_unstable();
    let end = |a: MorId| if under { cat.tgt(a) } else { cat.src(a) };
    let objs = &arrows;
    tabulate_out(
        arrows.clone(),
        |_, &a| {
            let mut out = Vec::new();
            for (t, &b) in objs.iter().enumerate() {
                for &u in cat.hom(end(a), end(b)) {
                    let commutes = if under {
                        cat.comp(u, a) == b
                    } else {
                        cat.comp(b, u) == a
                    };
                    if commutes && cat.is_iso(u) {
                        out.push((t, u));
                    }
                }
            }
            out
        },
        |&a| cat.id(end(a)),
        |&v, &u| cat.comp(v, u),
        |&a| cat.mor_label(a).to_string(),
        |_, _, &u| cat.mor_label(u).to_string(),
    )
}

/// The object of a triangle groupoid standing for `arrow`.
pub(crate) fn arrow_object(tab: &Tabulated<MorId, MorId>, arrow: MorId) -> Option<ObjId> {
    tab.objects
        .binary_search(&arrow)
        .ok()
        .map(|k| ObjId(k as u32))
}

#[cfg(test)]
mod tests;
