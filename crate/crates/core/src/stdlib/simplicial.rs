use super::assemble;
use crate::error::{Error, Result};
use crate::fincat::{tabulate, Tabulated};
use crate::patterns::{PatternData, PointedBase, PointedMap};

/// A monotone map `φ: [b] → [a]`, stored as `φ(0), …, φ(b)`, viewed as a
/// morphism `[a] → [b]` of `Δ^op`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DeltaMap {
    pub values: Vec<u8>,
    /// `a`.
    pub codomain: u8,
}

impl DeltaMap {
    pub fn identity(a: u8) -> Self {
        DeltaMap {
            values: (0..=a).collect(),
            codomain: a,
        }
    }

    /// `b`.
    pub fn domain(&self) -> u8 {
        self.values.len() as u8 - 1
    }

    /// All monotone maps `[b] → [a]`.
    pub fn all(b: u8, a: u8) -> Vec<DeltaMap> {
        let mut out = vec![Vec::new()];
        for _ in 0..=b {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u8>| {
                    let lo = v.last().copied().unwrap_or(0);
                    (lo..=a).map(move |x| {
                        let mut v = v.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|values| DeltaMap { values, codomain: a })
            .collect()
    }

    /// Composite in `Δ^op`: `self: [a] → [b]` then `g: [b] → [c]`.
    pub fn then(&self, g: &DeltaMap) -> DeltaMap {
        DeltaMap {
            values: g.values.iter().map(|&i| self.values[i as usize]).collect(),
            codomain: self.codomain,
        }
    }

    /// Inclusion of a subinterval.
    pub fn is_inert(&self) -> bool {
        self.values.windows(2).all(|w| w[1] == w[0] + 1)
    }

    /// Endpoint preserving.
    pub fn is_active(&self) -> bool {
        self.values[0] == 0 && *self.values.last().unwrap() == self.codomain
    }

    /// The pointed map `⟨a⟩ → ⟨b⟩` sending `i` to the `j` with
    /// `φ(j-1) < i ≤ φ(j)`, or to the basepoint.
    pub fn size(&self) -> PointedMap {
        let b = self.domain();
        let images = (1..=self.codomain)
            .map(|i| {
                (1..=b)
                    .find(|&j| self.values[j as usize - 1] < i && i <= self.values[j as usize])
                    .unwrap_or(0)
            })
            .collect();
        PointedMap::new(images, b)
    }

    pub fn label(&self) -> String {
        let v: Vec<String> = self.values.iter().map(u8::to_string).collect();
        format!("[{}]-({})->[{}]", self.codomain, v.join(","), self.domain())
    }
}

pub(crate) fn delta_op_tab(level: usize) -> Result<(PatternData, Tabulated<u8, DeltaMap>)> {
    let base = PointedBase::new(level);
    let tab = tabulate(
        (0..=level as u8).collect(),
        |&a, &b| DeltaMap::all(b, a),
        |&a| DeltaMap::identity(a),
        |g, f| f.then(g),
        |a| format!("[{a}]"),
        |_, _, f| f.label(),
    )?;
    let p = assemble(
        format!("delta_op({level})"),
        &tab,
        &base,
        DeltaMap::is_inert,
        DeltaMap::is_active,
        |&a| a == 1,
        |&a| a as usize,
        |_, _, f| f.size(),
    )?;
    Ok((p, tab))
}

/// `Δ^op` truncated at `[N]`.
pub fn delta_op(level: usize) -> Result<PatternData> {
    Ok(delta_op_tab(level)?.0)
}

/// 1-based position of `(x_1, …, x_k)` in the lexicographic order on
/// `⟨b_1⟩^∘ × ⋯ × ⟨b_k⟩^∘`.
fn lex_index(xs: &[u8], dims: &[u8]) -> u8 {
    xs.iter()
        .zip(dims)
        .fold(0u32, |acc, (&x, &d)| acc * d as u32 + (x as u32 - 1)) as u8
        + 1
}

fn smash(maps: &[DeltaMap]) -> PointedMap {
    let sizes: Vec<PointedMap> = maps.iter().map(DeltaMap::size).collect();
    let src: Vec<u8> = maps.iter().map(|m| m.codomain).collect();
    let tgt: Vec<u8> = maps.iter().map(DeltaMap::domain).collect();
    let total: u32 = src.iter().map(|&x| x as u32).product();
    let mut images = Vec::with_capacity(total as usize);
    let mut xs = vec![1u8; src.len()];
    for _ in 0..total {
        let ys: Vec<u8> = xs.iter().zip(&sizes).map(|(&x, s)| s.apply(x)).collect();
        images.push(if ys.contains(&0) { 0 } else { lex_index(&ys, &tgt) });
        // advance in lexicographic order
        for i in (0..xs.len()).rev() {
            if xs[i] < src[i] {
                xs[i] += 1;
                break;
            }
            xs[i] = 1;
        }
    }
    PointedMap::new(images, tgt.iter().map(|&x| x as u32).product::<u32>() as u8)
}

/// `(Δ^op)^{×k}` with componentwise classes and the smash product of sizes.
///
/// Truncation keeps tuples with every entry and the product of entries at
/// most `N`.
pub fn delta_k_op(level: usize, k: usize) -> Result<PatternData> {
    if k == 0 {
        return Err(Error::Precondition("delta_k_op needs k >= 1".into()));
    }
    let base = PointedBase::new(level);
    let mut objects: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..k {
        objects = objects
            .into_iter()
            .flat_map(|v| {
                (0..=level as u8).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    objects.retain(|v| v.iter().map(|&x| x as usize).product::<usize>() <= level);
    objects.sort_by_key(|v| (v.iter().map(|&x| x as usize).sum::<usize>(), v.clone()));
    let tab = tabulate(
        objects,
        |a, b| {
            let mut out: Vec<Vec<DeltaMap>> = vec![Vec::new()];
            for (&ai, &bi) in a.iter().zip(b) {
                let maps = DeltaMap::all(bi, ai);
                out = out
                    .into_iter()
                    .flat_map(|v| {
                        maps.iter().map(move |m| {
                            let mut v = v.clone();
                            v.push(m.clone());
                            v
                        })
                    })
                    .collect();
            }
            out
        },
        |a| a.iter().map(|&x| DeltaMap::identity(x)).collect(),
        |g, f| f.iter().zip(g).map(|(f, g)| f.then(g)).collect(),
        |a| {
            let parts: Vec<String> = a.iter().map(|x| format!("[{x}]")).collect();
            format!("({})", parts.join(","))
        },
        |_, _, f| {
            let parts: Vec<String> = f.iter().map(DeltaMap::label).collect();
            format!("({})", parts.join(","))
        },
    )?;
    assemble(
        format!("delta_k_op({level},{k})"),
        &tab,
        &base,
        |f| f.iter().all(DeltaMap::is_inert),
        |f| f.iter().all(DeltaMap::is_active),
        |a| a.iter().all(|&x| x == 1),
        |a| a.iter().map(|&x| x as usize).product(),
        |_, _, f| smash(f),
    )
}

/// A 0/1 sequence `i_0 ≤ ⋯ ≤ i_n`, an object of `Δ^op_{/[1]}`.
pub(crate) fn slice_objects(level: usize) -> Vec<Vec<u8>> {
    (0..=level)
        .flat_map(|n| (0..=n + 1).map(move |zeros| (0..=n).map(|t| u8::from(t >= zeros)).collect()))
        .collect()
}

pub(crate) fn delta_op_slice1_tab(level: usize) -> Result<(PatternData, Tabulated<Vec<u8>, DeltaMap>)> {
    let base = PointedBase::new(level);
    let tab = tabulate(
        slice_objects(level),
        |s, t| {
            DeltaMap::all(t.len() as u8 - 1, s.len() as u8 - 1)
                .into_iter()
                .filter(|f| f.values.iter().zip(t).all(|(&v, &x)| s[v as usize] == x))
                .collect()
        },
        |s| DeltaMap::identity(s.len() as u8 - 1),
        |g, f| f.then(g),
        |s| {
            let v: Vec<String> = s.iter().map(u8::to_string).collect();
            format!("({})", v.join(""))
        },
        |_, _, f| f.label(),
    )?;
    let p = assemble(
        format!("delta_op_slice1({level})"),
        &tab,
        &base,
        DeltaMap::is_inert,
        DeltaMap::is_active,
        |s| s.len() == 2,
        |s| s.len() - 1,
        |_, _, f| f.size(),
    )?;
    Ok((p, tab))
}

/// `Δ^op_{/[1]}`: simplices of `Δ^1` up to dimension `N`.
pub fn delta_op_slice1(level: usize) -> Result<PatternData> {
    Ok(delta_op_slice1_tab(level)?.0)
}
