//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use patcalc_core::day::{commutative_monoid, yoneda, CatMonoid, StrictCommutative};
use patcalc_core::patterns::PatternData;
use patcalc_core::{MorId, Result, SetFunctor};

/// `n` generators on every elementary object, with the trivial action.
pub fn constant_generators(p: &PatternData, n: usize) -> Result<SetFunctor> {
    let (el, _) = p.elementary_part()?;
    let cat = el.cat().clone();
    SetFunctor::from_fn(cat.clone(), vec![n; cat.num_objects()], |_, x| x)
}

/// The discrete `Z/k` monoid on `p` with the first active map `<2> -> <1>`
/// and one representable per input.
pub fn day_inputs(p: &Arc<PatternData>, k: usize) -> Result<(CatMonoid, MorId, Vec<SetFunctor>)> {
    let m = commutative_monoid(p, &StrictCommutative::discrete_cyclic(k)?)?;
    let cat = p.cat();
    let u = cat
        .morphisms()
        .find(|&u| p.is_active(u) && p.size_of(cat.src(u)) == 2 && p.size_of(cat.tgt(u)) == 1)
        .expect("an active map <2> -> <1>");
    let inputs = p
        .rhos(cat.src(u))?
        .iter()
        .map(|&r| {
            let fib = m.fiber(cat.tgt(r));
            yoneda(fib, patcalc_core::ObjId(fib.num_objects() as u32 - 1))
        })
        .collect();
    Ok((m, u, inputs))
}
