use std::fmt;
use std::sync::Arc;

use crate::fincat::{tabulate, FinCat, MorId, ObjId, Tabulated};

/// A map of pointed finite sets `⟨n⟩ → ⟨m⟩`, stored as the images of `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointedMap {
    pub images: Vec<u8>,
    pub target: u8,
}

impl PointedMap {
    pub fn new(images: Vec<u8>, target: u8) -> Self {
        debug_assert!(images.iter().all(|&x| x <= target));
        PointedMap { images, target }
    }

    pub fn identity(n: u8) -> Self {
        PointedMap::new((1..=n).collect(), n)
    }

    /// The inert map `ρ_i: ⟨n⟩ → ⟨1⟩` picking out `i`.
    pub fn rho(n: u8, i: u8) -> Self {
        PointedMap::new((1..=n).map(|j| u8::from(j == i)).collect(), 1)
    }

    pub fn source(&self) -> u8 {
        self.images.len() as u8
    }

    #[inline]
    pub fn apply(&self, i: u8) -> u8 {
        if i == 0 {
            0
        } else {
            self.images[i as usize - 1]
        }
    }

    /// `g ∘ f`.
    pub fn then(&self, g: &PointedMap) -> PointedMap {
        PointedMap::new(self.images.iter().map(|&x| g.apply(x)).collect(), g.target)
    }

    /// Non-basepoint elements sent to `j`, in increasing order.
    pub fn fiber(&self, j: u8) -> Vec<u8> {
        (1..=self.source()).filter(|&i| self.apply(i) == j).collect()
    }

    /// Every `j ≠ 0` has exactly one preimage.
    pub fn is_inert(&self) -> bool {
        let mut count = vec![0u8; self.target as usize + 1];
        for &x in &self.images {
            count[x as usize] += 1;
        }
        count[1..].iter().all(|&c| c == 1)
    }

    /// Only the basepoint goes to the basepoint.
    pub fn is_active(&self) -> bool {
        self.images.iter().all(|&x| x != 0)
    }

    pub fn is_iso(&self) -> bool {
        self.is_inert() && self.is_active()
    }

    /// All pointed maps `⟨n⟩ → ⟨m⟩` in lexicographic order of images.
    pub fn all(n: u8, m: u8) -> Vec<PointedMap> {
        let mut out = vec![Vec::with_capacity(n as usize)];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=m).map(move |x| {
                        let mut v = v.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|v| PointedMap::new(v, m)).collect()
    }

    pub fn label(&self) -> String {
        let imgs: Vec<String> = self.images.iter().map(u8::to_string).collect();
        format!("<{}>-[{}]-><{}>", self.source(), imgs.join(","), self.target)
    }
}

impl fmt::Debug for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The category `F*` truncated at `⟨N⟩`, with the pointed map behind each id.
///
/// Object `ObjId(n)` is `⟨n⟩`.
#[derive(Debug)]
pub struct PointedBase {
    level: usize,
    cat: Arc<FinCat>,
    tab: Tabulated<u8, PointedMap>,
}

impl PointedBase {
    pub fn new(level: usize) -> Arc<PointedBase> {
        assert!(level < 16, "truncation level too large for F*");
        let tab = tabulate(
            (0..=level as u8).collect(),
            |&n, &m| PointedMap::all(n, m),
            |&n| PointedMap::identity(n),
            |g, f| f.then(g),
            |&n| format!("<{n}>"),
            |_, _, m| m.label(),
        )
        .expect("F* is closed under composition");
        Arc::new(PointedBase {
            level,
            cat: Arc::new(tab.cat.clone()),
            tab,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    pub fn map(&self, m: MorId) -> &PointedMap {
        &self.tab.morphisms[m.idx()]
    }

    pub fn object(&self, n: usize) -> ObjId {
        ObjId(n as u32)
    }

    /// Id of a pointed map, if both ends are within the truncation.
    pub fn id_of(&self, m: &PointedMap) -> Option<MorId> {
        if m.source() as usize > self.level || m.target as usize > self.level {
            return None;
        }
        self.tab
            .lookup(ObjId(m.source() as u32), ObjId(m.target as u32), m)
    }
}
