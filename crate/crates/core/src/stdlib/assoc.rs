use super::{assemble, permutations};
use crate::error::Result;
use crate::fincat::{tabulate, Tabulated};
use crate::patterns::{PatternData, PointedBase, PointedMap};

/// A morphism of `Ass`: a pointed map with a total order on each fiber over
/// a non-basepoint.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AssMap {
    pub map: PointedMap,
    /// `orders[j-1]` lists the fiber over `j` in order.
    pub orders: Vec<Vec<u8>>,
}

impl AssMap {
    pub fn identity(n: u8) -> Self {
        AssMap {
            map: PointedMap::identity(n),
            orders: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    /// Fibers in their natural order.
    pub fn natural(map: PointedMap) -> Self {
        let orders = (1..=map.target).map(|j| map.fiber(j)).collect();
        AssMap { map, orders }
    }

    /// All ordered maps `⟨n⟩ → ⟨m⟩`.
    pub fn all(n: u8, m: u8) -> Vec<AssMap> {
        let mut out = Vec::new();
        for map in PointedMap::all(n, m) {
            let mut orders: Vec<Vec<Vec<u8>>> = vec![Vec::new()];
            for j in 1..=m {
                let perms = permutations(&map.fiber(j));
                orders = orders
                    .into_iter()
                    .flat_map(|v| {
                        perms.iter().map(move |p| {
                            let mut v = v.clone();
                            v.push(p.clone());
                            v
                        })
                    })
                    .collect();
            }
            out.extend(orders.into_iter().map(|orders| AssMap {
                map: map.clone(),
                orders,
            }));
        }
        out
    }

    /// `g ∘ self`: the fiber of the composite over `k` runs through the
    /// fibers of `self` in the order `g` puts them.
    pub fn then(&self, g: &AssMap) -> AssMap {
        AssMap {
            map: self.map.then(&g.map),
            orders: g
                .orders
                .iter()
                .map(|mid| {
                    mid.iter()
                        .flat_map(|&j| self.orders[j as usize - 1].iter().copied())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn label(&self) -> String {
        let fibers: Vec<String> = self
            .orders
            .iter()
            .map(|o| o.iter().map(u8::to_string).collect::<Vec<_>>().join(""))
            .collect();
        format!("<{}>-[{}]-><{}>", self.map.source(), fibers.join("|"), self.map.target)
    }
}

pub(crate) fn ass_tab(level: usize) -> Result<(PatternData, Tabulated<u8, AssMap>)> {
    let base = PointedBase::new(level);
    let tab = tabulate(
        (0..=level as u8).collect(),
        |&n, &m| AssMap::all(n, m),
        |&n| AssMap::identity(n),
        |g, f| f.then(g),
        |n| format!("<{n}>"),
        |_, _, f| f.label(),
    )?;
    let p = assemble(
        format!("ass({level})"),
        &tab,
        &base,
        |f| f.map.is_inert(),
        |f| f.map.is_active(),
        |&n| n == 1,
        |&n| n as usize,
        |_, _, f| f.map.clone(),
    )?;
    Ok((p, tab))
}

/// The associative operad as a pattern.
pub fn ass(level: usize) -> Result<PatternData> {
    Ok(ass_tab(level)?.0)
}

/// Each point of `⟨n⟩` is labelled `(0,0)`, `(0,1)` or `(1,1)`.
pub(crate) type Decorated = Vec<(u8, u8)>;

const LABELS: [(u8, u8); 3] = [(0, 0), (0, 1), (1, 1)];

/// An ordered map respects the labels when each ordered fiber forms a chain
/// from the start to the end of its target's label; an empty fiber needs a
/// target label of the form `(a, a)`.
fn respects(src: &Decorated, tgt: &Decorated, f: &AssMap) -> bool {
    f.orders.iter().zip(tgt).all(|(order, &(a, b))| match order.as_slice() {
        [] => a == b,
        [first, ..] => {
            let lab = |i: u8| src[i as usize - 1];
            lab(*first).0 == a
                && order.windows(2).all(|w| lab(w[0]).1 == lab(w[1]).0)
                && lab(*order.last().unwrap()).1 == b
        }
    })
}

pub(crate) fn bimod_tab(level: usize) -> Result<(PatternData, Tabulated<Decorated, AssMap>)> {
    let base = PointedBase::new(level);
    let mut objects: Vec<Decorated> = vec![Vec::new()];
    let mut layer: Vec<Decorated> = vec![Vec::new()];
    for _ in 0..level {
        layer = layer
            .into_iter()
            .flat_map(|v| {
                LABELS.iter().map(move |&l| {
                    let mut v = v.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        objects.extend(layer.iter().cloned());
    }
    let tab = tabulate(
        objects,
        |a, b| {
            AssMap::all(a.len() as u8, b.len() as u8)
                .into_iter()
                .filter(|f| respects(a, b, f))
                .collect()
        },
        |a| AssMap::identity(a.len() as u8),
        |g, f| f.then(g),
        |a| {
            let parts: Vec<String> = a.iter().map(|(x, y)| format!("{x}{y}")).collect();
            format!("<{}>", parts.join(","))
        },
        |_, _, f| f.label(),
    )?;
    let p = assemble(
        format!("bimod({level})"),
        &tab,
        &base,
        |f| f.map.is_inert(),
        |f| f.map.is_active(),
        |a| a.len() == 1,
        Vec::len,
        |_, _, f| f.map.clone(),
    )?;
    Ok((p, tab))
}

/// Two associative algebras and a bimodule between them.
pub fn bimod(level: usize) -> Result<PatternData> {
    Ok(bimod_tab(level)?.0)
}
