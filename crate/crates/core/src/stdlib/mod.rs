//! Standard patterns and pattern morphisms, truncated at a chosen arity.

mod assoc;
mod commutative;
mod morphisms;
mod simplicial;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinFunctor, ObjId, Tabulated};
use crate::patterns::{gamma_times, PatternData, PatternMorphism, PointedBase, PointedMap};

pub use assoc::{ass, bimod, AssMap};
pub use commutative::{cmod, f_star, fstar_coslice};
pub use morphisms::{
    cut, cut_prime, el_inclusion, int_inclusion, mu, reverse_ass, reverse_delta, size_morphism,
};
pub use simplicial::{delta_k_op, delta_op, delta_op_slice1, DeltaMap};

/// Families of patterns the library can build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternFamily {
    FStar,
    DeltaOp,
    DeltaKOp,
    Ass,
    Bimod,
    CMod,
    FStarCoslice,
    DeltaOpSlice1,
    GammaTimes,
}

impl PatternFamily {
    pub const ALL: [PatternFamily; 9] = [
        PatternFamily::FStar,
        PatternFamily::DeltaOp,
        PatternFamily::DeltaKOp,
        PatternFamily::Ass,
        PatternFamily::Bimod,
        PatternFamily::CMod,
        PatternFamily::FStarCoslice,
        PatternFamily::DeltaOpSlice1,
        PatternFamily::GammaTimes,
    ];

    pub fn id(self) -> &'static str {
        match self {
            PatternFamily::FStar => "f_star",
            PatternFamily::DeltaOp => "delta_op",
            PatternFamily::DeltaKOp => "delta_k_op",
            PatternFamily::Ass => "ass",
            PatternFamily::Bimod => "bimod",
            PatternFamily::CMod => "cmod",
            PatternFamily::FStarCoslice => "fstar_coslice",
            PatternFamily::DeltaOpSlice1 => "delta_op_slice1",
            PatternFamily::GammaTimes => "gamma_times",
        }
    }
}

impl fmt::Display for PatternFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for PatternFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PatternFamily::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown pattern family {s}")))
    }
}

/// A pattern family with its truncation level (and `k` for `delta_k_op`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BuilderSpec {
    pub family: PatternFamily,
    pub level: usize,
    pub k: usize,
}

impl BuilderSpec {
    pub fn new(family: PatternFamily, level: usize) -> Self {
        BuilderSpec { family, level, k: 2 }
    }
}

impl fmt::Display for BuilderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            PatternFamily::DeltaKOp => write!(f, "{}({}, {})", self.family, self.level, self.k),
            _ => write!(f, "{}({})", self.family, self.level),
        }
    }
}

pub fn build_pattern(spec: BuilderSpec) -> Result<Arc<PatternData>> {
    let n = spec.level;
    let p = match spec.family {
        PatternFamily::FStar => f_star(n),
        PatternFamily::DeltaOp => delta_op(n),
        PatternFamily::DeltaKOp => delta_k_op(n, spec.k),
        PatternFamily::Ass => ass(n),
        PatternFamily::Bimod => bimod(n),
        PatternFamily::CMod => cmod(n),
        PatternFamily::FStarCoslice => fstar_coslice(n),
        PatternFamily::DeltaOpSlice1 => delta_op_slice1(n),
        PatternFamily::GammaTimes => return Ok(gamma_times(n)?.pattern),
    };
    p.map(Arc::new)
}

/// Families of pattern morphisms the library can build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MorphismFamily {
    Cut,
    CutPrime,
    Mu,
    IntInclusion,
    ElInclusion,
    ReverseDelta,
    ReverseAss,
    Size,
}

impl MorphismFamily {
    pub const ALL: [MorphismFamily; 8] = [
        MorphismFamily::Cut,
        MorphismFamily::CutPrime,
        MorphismFamily::Mu,
        MorphismFamily::IntInclusion,
        MorphismFamily::ElInclusion,
        MorphismFamily::ReverseDelta,
        MorphismFamily::ReverseAss,
        MorphismFamily::Size,
    ];

    /// Whether the family is taken in a given pattern rather than built at a level.
    pub fn needs_pattern(self) -> bool {
        matches!(self, MorphismFamily::IntInclusion | MorphismFamily::ElInclusion | MorphismFamily::Size)
    }

    pub fn id(self) -> &'static str {
        match self {
            MorphismFamily::Cut => "cut",
            MorphismFamily::CutPrime => "cut_prime",
            MorphismFamily::Mu => "mu",
            MorphismFamily::IntInclusion => "int_inclusion",
            MorphismFamily::ElInclusion => "el_inclusion",
            MorphismFamily::ReverseDelta => "reverse_delta",
            MorphismFamily::ReverseAss => "reverse_ass",
            MorphismFamily::Size => "size",
        }
    }
}

impl fmt::Display for MorphismFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for MorphismFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MorphismFamily::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown morphism family {s}")))
    }
}

/// A morphism family with its level; the inclusions also need the pattern
/// they are taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MorphismSpec {
    pub family: MorphismFamily,
    pub level: usize,
    pub on: Option<BuilderSpec>,
}

pub fn build_morphism(spec: MorphismSpec) -> Result<PatternMorphism> {
    let on = || {
        spec.on.ok_or_else(|| {
            Error::Precondition(format!("{} needs the pattern it is taken in", spec.family))
        })
    };
    match spec.family {
        MorphismFamily::Cut => cut(spec.level),
        MorphismFamily::CutPrime => cut_prime(spec.level),
        MorphismFamily::Mu => mu(spec.level),
        MorphismFamily::IntInclusion => int_inclusion(&build_pattern(on()?)?),
        MorphismFamily::ElInclusion => el_inclusion(&build_pattern(on()?)?),
        MorphismFamily::ReverseDelta => reverse_delta(spec.level),
        MorphismFamily::ReverseAss => reverse_ass(spec.level),
        MorphismFamily::Size => size_morphism(&build_pattern(on()?)?),
    }
}

/// A morphism family taken in an already built pattern.
pub fn morphism_in(family: MorphismFamily, p: &Arc<PatternData>) -> Result<PatternMorphism> {
    match family {
        MorphismFamily::IntInclusion => int_inclusion(p),
        MorphismFamily::ElInclusion => el_inclusion(p),
        MorphismFamily::Size => size_morphism(p),
        _ => Err(Error::Precondition(format!("{family} is built at a level, not in a pattern"))),
    }
}

/// Turns a tabulated category into a pattern.
#[allow(clippy::too_many_arguments)]
pub(crate) fn assemble<O, M>(
    name: String,
    tab: &Tabulated<O, M>,
    base: &Arc<PointedBase>,
    inert: impl Fn(&M) -> bool,
    active: impl Fn(&M) -> bool,
    elementary: impl Fn(&O) -> bool,
    size_obj: impl Fn(&O) -> usize,
    size_mor: impl Fn(&O, &O, &M) -> PointedMap,
) -> Result<PatternData>
where
    M: Clone + Eq + Hash,
{
    let cat = Arc::new(tab.cat.clone());
    let size = FinFunctor::new(
        cat.clone(),
        base.cat().clone(),
        tab.objects.iter().map(|o| ObjId(size_obj(o) as u32)).collect(),
        cat.morphisms()
            .map(|m| {
                let s = &tab.objects[cat.src(m).idx()];
                let t = &tab.objects[cat.tgt(m).idx()];
                let p = size_mor(s, t, &tab.morphisms[m.idx()]);
                base.id_of(&p)
                    .ok_or_else(|| Error::TruncationEscape(format!("size {p:?} of {}", cat.mor_label(m))))
            })
            .collect::<Result<_>>()?,
    )?;
    PatternData::new(
        name,
        cat,
        tab.morphisms.iter().map(&inert).collect(),
        tab.morphisms.iter().map(&active).collect(),
        tab.objects.iter().map(&elementary).collect(),
        size,
        base.clone(),
    )
}

/// All orderings of a list.
pub(crate) fn permutations(items: &[u8]) -> Vec<Vec<u8>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{check_cartesian_pattern, check_pattern_morphism};

    fn hom_count(p: &PatternData, a: &str, b: &str) -> usize {
        let c = p.cat();
        c.hom(c.find_object(a).unwrap(), c.find_object(b).unwrap()).len()
    }

    #[test]
    fn small_hom_sets() {
        let f = f_star(2).unwrap();
        let c = f.cat();
        let h = c.hom(ObjId(2), ObjId(1));
        assert_eq!(h.len(), 4);
        assert_eq!(h.iter().filter(|&&m| f.is_inert(m)).count(), 2);
        assert_eq!(h.iter().filter(|&&m| f.is_active(m)).count(), 1);
        assert_eq!(hom_count(&ass(2).unwrap(), "<2>", "<1>"), 5);
    }

    #[test]
    fn delta_size_formula() {
        let phi = DeltaMap {
            values: vec![0, 2],
            codomain: 2,
        };
        assert_eq!(phi.size(), PointedMap::new(vec![1, 1], 1));
        let psi = DeltaMap {
            values: vec![1, 3],
            codomain: 3,
        };
        assert_eq!(psi.size(), PointedMap::new(vec![0, 1, 1], 1));
        assert!(!psi.is_inert() && !psi.is_active());
    }

    #[test]
    fn bimod_elementary_objects() {
        let b = bimod(2).unwrap();
        let labels: Vec<&str> = b
            .elementary_objects()
            .into_iter()
            .map(|o| b.cat().obj_label(o))
            .collect();
        assert_eq!(labels, ["<00>", "<01>", "<11>"]);
    }

    #[test]
    fn builders_are_cartesian() {
        for family in PatternFamily::ALL {
            let p = build_pattern(BuilderSpec::new(family, 2)).unwrap();
            let r = check_cartesian_pattern(&p);
            assert!(r.passed, "{family}: {r}");
        }
    }

    #[test]
    fn object_images() {
        let c = cut(2).unwrap();
        let img = |m: &PatternMorphism, a: &str| {
            let o = m.source.cat().find_object(a).unwrap();
            m.target.cat().obj_label(m.functor.obj(o)).to_string()
        };
        assert_eq!(img(&c, "[2]"), "<2>");
        assert_eq!(img(&mu(2).unwrap(), "(<2>,1)"), "[1, 0]");
        assert_eq!(img(&cut_prime(2).unwrap(), "(011)"), "<01,11>");
        for m in [c, mu(2).unwrap(), cut_prime(2).unwrap()] {
            assert!(check_pattern_morphism(&m).passed, "{}", m.name);
        }
    }

    #[test]
    fn inclusions() {
        let p = Arc::new(f_star(3).unwrap());
        let i = int_inclusion(&p).unwrap();
        assert!(i.source.inert_classes().iter().all(|&x| x));
        assert!(check_pattern_morphism(&i).passed);
        let e = el_inclusion(&p).unwrap();
        assert_eq!(e.source.cat().num_objects(), 1);
        assert!(check_pattern_morphism(&e).passed);
    }
}
