use super::assemble;
use crate::error::Result;
use crate::fincat::{tabulate, FinFunctor, ObjId, Tabulated};
use crate::patterns::{PatternData, PointedBase, PointedMap};

/// `F*` itself, with elementary object `⟨1⟩`.
pub fn f_star(level: usize) -> Result<PatternData> {
    let base = PointedBase::new(level);
    let cat = base.cat().clone();
    let ids: Vec<_> = cat.morphisms().collect();
    PatternData::new(
        format!("f_star({level})"),
        cat.clone(),
        ids.iter().map(|&m| base.map(m).is_inert()).collect(),
        ids.iter().map(|&m| base.map(m).is_active()).collect(),
        cat.objects().map(|o| o == ObjId(1)).collect(),
        FinFunctor::identity(cat.clone()),
        base,
    )
}

/// Commutative monoids with a module: `⟨n⟩` decorated by which points carry
/// the module, maps preserving the count of module points over each target.
pub(crate) fn cmod_tab(level: usize) -> Result<(PatternData, Tabulated<Vec<u8>, PointedMap>)> {
    let base = PointedBase::new(level);
    let mut objects = Vec::new();
    for n in 0..=level as u8 {
        for mask in 0..(1u32 << n) {
            objects.push((0..n).map(|i| (mask >> i & 1) as u8).collect::<Vec<u8>>());
        }
    }
    let tab = tabulate(
        objects,
        |a, b| {
            PointedMap::all(a.len() as u8, b.len() as u8)
                .into_iter()
                .filter(|f| {
                    (1..=b.len() as u8).all(|s| {
                        let over: u8 = f.fiber(s).iter().map(|&t| a[t as usize - 1]).sum();
                        over == b[s as usize - 1]
                    })
                })
                .collect()
        },
        |a| PointedMap::identity(a.len() as u8),
        |g, f| f.then(g),
        |a| format!("{a:?}"),
        |_, _, f| f.label(),
    )?;
    let p = assemble(
        format!("cmod({level})"),
        &tab,
        &base,
        PointedMap::is_inert,
        PointedMap::is_active,
        |a| a.len() == 1,
        Vec::len,
        |_, _, f| f.clone(),
    )?;
    Ok((p, tab))
}

pub fn cmod(level: usize) -> Result<PatternData> {
    Ok(cmod_tab(level)?.0)
}

/// The coslice `F*_{⟨1⟩/}`: objects `(⟨n⟩, i)` with `0 ≤ i ≤ n`, maps
/// `φ` with `φ(i) = j`.
pub(crate) fn fstar_coslice_tab(
    level: usize,
) -> Result<(PatternData, Tabulated<(u8, u8), PointedMap>)> {
    let base = PointedBase::new(level);
    let objects: Vec<(u8, u8)> = (0..=level as u8)
        .flat_map(|n| (0..=n).map(move |i| (n, i)))
        .collect();
    let tab = tabulate(
        objects,
        |&(n, i), &(m, j)| {
            PointedMap::all(n, m)
                .into_iter()
                .filter(|f| f.apply(i) == j)
                .collect()
        },
        |&(n, _)| PointedMap::identity(n),
        |g, f| f.then(g),
        |&(n, i)| format!("(<{n}>,{i})"),
        |_, _, f| f.label(),
    )?;
    let p = assemble(
        format!("fstar_coslice({level})"),
        &tab,
        &base,
        PointedMap::is_inert,
        PointedMap::is_active,
        |&(n, _)| n == 1,
        |&(n, _)| n as usize,
        |_, _, f| f.clone(),
    )?;
    Ok((p, tab))
}

pub fn fstar_coslice(level: usize) -> Result<PatternData> {
    Ok(fstar_coslice_tab(level)?.0)
}
