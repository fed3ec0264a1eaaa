use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{product_of, same_cat, tabulate, FinCat, FinFunctor, MorId, ObjId, ProductCat};
use crate::patterns::{PatternData, PatternMorphism};
use crate::report::Report;

/// A functor from a pattern to finite categories whose Segal comparisons
/// `M(O) → ∏ M(O_i)` are isomorphisms of categories.
#[derive(Clone, Debug)]
pub struct CatMonoid {
    pub name: String,
    pub pattern: Arc<PatternData>,
    pub fibers: Vec<Arc<FinCat>>,
    pub actions: Vec<FinFunctor>,
}

impl CatMonoid {
    /// Checks shapes only; see [`CatMonoid::validate`].
    pub fn new(
        name: impl Into<String>,
        pattern: Arc<PatternData>,
        fibers: Vec<Arc<FinCat>>,
        actions: Vec<FinFunctor>,
    ) -> Result<Self> {
        let cat = pattern.cat();
        if fibers.len() != cat.num_objects() || actions.len() != cat.num_morphisms() {
            return Err(Error::OutOfRange("one fiber per object and one functor per morphism".into()));
        }
        for m in cat.morphisms() {
            let a = &actions[m.idx()];
            if !same_cat(a.source(), &fibers[cat.src(m).idx()])
                || !same_cat(a.target(), &fibers[cat.tgt(m).idx()])
            {
                return Err(Error::TypeMismatch(format!(
                    "action of {} does not go between the fibers",
                    cat.mor_label(m)
                )));
            }
        }
        Ok(CatMonoid {
            name: name.into(),
            pattern,
            fibers,
            actions,
        })
    }

    pub fn fiber(&self, o: ObjId) -> &Arc<FinCat> {
        &self.fibers[o.idx()]
    }

    pub fn action(&self, m: MorId) -> &FinFunctor {
        &self.actions[m.idx()]
    }

    /// `(ρ_i)_! x` for each component.
    pub fn segal_tuple(&self, o: ObjId, x: ObjId) -> Result<Vec<ObjId>> {
        Ok(self
            .pattern
            .rhos(o)?
            .iter()
            .map(|&r| self.action(r).obj(x))
            .collect())
    }

    /// The object of `M(O)` with the given components.
    pub fn segal_inverse(&self, o: ObjId, tuple: &[ObjId]) -> Result<Option<ObjId>> {
        let rhos = self.pattern.rhos(o)?;
        Ok(self.fiber(o).objects().find(|&x| {
            rhos.len() == tuple.len()
                && rhos
                    .iter()
                    .zip(tuple)
                    .all(|(&r, &t)| self.action(r).obj(x) == t)
        }))
    }

    /// Checks functoriality and the Segal isomorphisms.
    pub fn validate(&self) -> Report {
        let cat = self.pattern.cat();
        let mut r = Report::new(format!("category-valued monoid {}", self.name));
        let mut functorial = Report::new("functoriality");
        for m in cat.morphisms() {
            let a = self.action(m);
            let v = a.validate();
            if !v.passed {
                functorial.fail(format!(
                    "action of {} is not a functor: {}",
                    cat.mor_label(m),
                    v.first_counterexample().unwrap_or("")
                ));
            }
        }
        for o in cat.objects() {
            let a = self.action(cat.id(o));
            let fib = self.fiber(o);
            if fib.objects().any(|x| a.obj(x) != x) || fib.morphisms().any(|u| a.mor(u) != u) {
                functorial.fail(format!("identity of {} acts non-trivially", cat.obj_label(o)));
            }
        }
        for f in cat.morphisms() {
            for &g in cat.out(cat.tgt(f)) {
                let (af, ag, agf) = (self.action(f), self.action(g), self.action(cat.comp(g, f)));
                let fib = self.fiber(cat.src(f));
                let same = fib.objects().all(|x| agf.obj(x) == ag.obj(af.obj(x)))
                    && fib.morphisms().all(|u| agf.mor(u) == ag.mor(af.mor(u)));
                if !same {
                    functorial.fail(format!(
                        "action of {} . {} is not the composite",
                        cat.mor_label(g),
                        cat.mor_label(f)
                    ));
                }
            }
        }
        r.push_child(functorial);

        let mut segal = Report::new("Segal comparisons are isomorphisms");
        for o in cat.objects() {
            if let Err(e) = self.segal_isomorphism(o) {
                segal.fail(format!("at {}: {e}", cat.obj_label(o)));
            }
        }
        r.push_child(segal);
        r
    }

    fn segal_isomorphism(&self, o: ObjId) -> std::result::Result<(), String> {
        let rhos = self.pattern.rhos(o).map_err(|e| e.to_string())?;
        let comps: Vec<Arc<FinCat>> = rhos
            .iter()
            .map(|&r| self.fiber(self.pattern.cat().tgt(r)).clone())
            .collect();
        let fib = self.fiber(o);
        let mut seen = HashMap::new();
        for x in fib.objects() {
            let t: Vec<ObjId> = rhos.iter().map(|&r| self.action(r).obj(x)).collect();
            if let Some(y) = seen.insert(t, x) {
                return Err(format!("{} and {} have the same components", fib.obj_label(y), fib.obj_label(x)));
            }
        }
        let expected: usize = comps.iter().map(|c| c.num_objects()).product();
        if seen.len() != expected {
            return Err(format!("{} objects but {expected} tuples", seen.len()));
        }
        for x in fib.objects() {
            for y in fib.objects() {
                let mut images = std::collections::HashSet::new();
                for &u in fib.hom(x, y) {
                    let t: Vec<MorId> = rhos.iter().map(|&r| self.action(r).mor(u)).collect();
                    if !images.insert(t) {
                        return Err(format!("not faithful on Hom({}, {})", fib.obj_label(x), fib.obj_label(y)));
                    }
                }
                let expected: usize = rhos
                    .iter()
                    .zip(&comps)
                    .map(|(&r, c)| {
                        let a = self.action(r);
                        c.hom(a.obj(x), a.obj(y)).len()
                    })
                    .product();
                if images.len() != expected {
                    return Err(format!("not full on Hom({}, {})", fib.obj_label(x), fib.obj_label(y)));
                }
            }
        }
        Ok(())
    }

    /// `f^*M = M ∘ f`.
    pub fn restrict(&self, f: &PatternMorphism) -> Result<CatMonoid> {
        if !same_cat(f.target.cat(), self.pattern.cat()) {
            return Err(Error::TypeMismatch("restricting along a morphism into another pattern".into()));
        }
        let sc = f.source.cat();
        CatMonoid::new(
            format!("{}^*{}", f.name, self.name),
            f.source.clone(),
            sc.objects().map(|o| self.fiber(f.functor.obj(o)).clone()).collect(),
            sc.morphisms().map(|m| self.action(f.functor.mor(m)).clone()).collect(),
        )
    }
}

/// A finite category with a strictly associative, unital and commutative
/// tensor product.
#[derive(Clone, Debug)]
pub struct StrictCommutative {
    pub name: String,
    pub cat: Arc<FinCat>,
    pub unit: ObjId,
    obj_mul: Vec<Vec<ObjId>>,
    mor_mul: HashMap<(MorId, MorId), MorId>,
}

impl StrictCommutative {
    pub fn new(
        name: impl Into<String>,
        cat: Arc<FinCat>,
        unit: ObjId,
        obj_mul: impl Fn(ObjId, ObjId) -> ObjId,
        mor_mul: impl Fn(MorId, MorId) -> MorId,
    ) -> StrictCommutative {
        let obj_table = cat
            .objects()
            .map(|a| cat.objects().map(|b| obj_mul(a, b)).collect())
            .collect();
        let mut mor_table = HashMap::new();
        for u in cat.morphisms() {
            for v in cat.morphisms() {
                mor_table.insert((u, v), mor_mul(u, v));
            }
        }
        StrictCommutative {
            name: name.into(),
            cat,
            unit,
            obj_mul: obj_table,
            mor_mul: mor_table,
        }
    }

    pub fn tensor(&self, a: ObjId, b: ObjId) -> ObjId {
        self.obj_mul[a.idx()][b.idx()]
    }

    pub fn tensor_mor(&self, u: MorId, v: MorId) -> MorId {
        self.mor_mul[&(u, v)]
    }

    /// Checks that the tensor product is a bifunctor and strictly
    /// associative, unital and commutative.
    pub fn validate(&self) -> Report {
        let c = &*self.cat;
        let mut r = Report::new(format!("strict commutative structure on {}", self.name));
        for u in c.morphisms() {
            for v in c.morphisms() {
                let w = self.tensor_mor(u, v);
                if c.src(w) != self.tensor(c.src(u), c.src(v)) || c.tgt(w) != self.tensor(c.tgt(u), c.tgt(v)) {
                    r.fail(format!("{} * {} is mistyped", c.mor_label(u), c.mor_label(v)));
                }
                if w != self.tensor_mor(v, u) {
                    r.fail(format!("{} * {} is not commutative", c.mor_label(u), c.mor_label(v)));
                }
                if self.tensor_mor(u, c.id(self.unit)) != u {
                    r.fail(format!("unit does not act trivially on {}", c.mor_label(u)));
                }
                for &u2 in c.out(c.tgt(u)) {
                    for &v2 in c.out(c.tgt(v)) {
                        let lhs = self.tensor_mor(c.comp(u2, u), c.comp(v2, v));
                        let rhs = c.comp(self.tensor_mor(u2, v2), w);
                        if lhs != rhs {
                            r.fail(format!("tensor does not preserve composites at {}", c.mor_label(u)));
                        }
                    }
                }
                for x in c.morphisms() {
                    if self.tensor_mor(self.tensor_mor(u, v), x) != self.tensor_mor(u, self.tensor_mor(v, x)) {
                        r.fail("tensor is not associative".to_string());
                    }
                }
            }
        }
        for a in c.objects() {
            for b in c.objects() {
                if self.tensor_mor(c.id(a), c.id(b)) != c.id(self.tensor(a, b)) {
                    r.fail(format!("tensor does not preserve identities at {}", c.obj_label(a)));
                }
            }
        }
        r
    }

    /// The discrete category on `Z/k` under addition.
    pub fn discrete_cyclic(k: usize) -> Result<StrictCommutative> {
        let t = tabulate(
            (0..k as u32).collect(),
            |a, b| if a == b { vec![()] } else { vec![] },
            |_| (),
            |_, _| (),
            |a| a.to_string(),
            |a, _, _| format!("id{a}"),
        )?;
        let cat = Arc::new(t.cat);
        let c = cat.clone();
        Ok(StrictCommutative::new(
            format!("discrete Z/{k}"),
            cat,
            ObjId(0),
            |a, b| ObjId((a.0 + b.0) % k as u32),
            move |u, v| c.id(ObjId((c.src(u).0 + c.src(v).0) % k as u32)),
        ))
    }

    /// One object with `Z/k` as its automorphisms.
    pub fn cyclic_group(k: usize) -> Result<StrictCommutative> {
        let t = tabulate(
            vec![()],
            |_, _| (0..k as u32).collect(),
            |_| 0,
            |g, f| (g + f) % k as u32,
            |_| "*".into(),
            |_, _, g| format!("g{g}"),
        )?;
        let ids: Vec<MorId> = (0..k as u32)
            .map(|g| t.lookup(ObjId(0), ObjId(0), &g).unwrap())
            .collect();
        let of: Vec<u32> = {
            let mut of = vec![0; k];
            for (g, m) in ids.iter().enumerate() {
                of[m.idx()] = g as u32;
            }
            of
        };
        Ok(StrictCommutative::new(
            format!("B(Z/{k})"),
            Arc::new(t.cat),
            ObjId(0),
            |_, _| ObjId(0),
            move |u, v| ids[((of[u.idx()] + of[v.idx()]) % k as u32) as usize],
        ))
    }

    /// The chain `0 < 1 < … < k-1` under `max`.
    pub fn chain(k: usize) -> Result<StrictCommutative> {
        let t = tabulate(
            (0..k as u32).collect(),
            |a, b| if a <= b { vec![()] } else { vec![] },
            |_| (),
            |_, _| (),
            |a| a.to_string(),
            |a, b, _| format!("{a}<={b}"),
        )?;
        let cat = Arc::new(t.cat);
        let c = cat.clone();
        Ok(StrictCommutative::new(
            format!("chain {k}"),
            cat,
            ObjId(0),
            |a, b| a.max(b),
            move |u, v| {
                let (s, t) = (c.src(u).max(c.src(v)), c.tgt(u).max(c.tgt(v)));
                c.hom(s, t)[0]
            },
        ))
    }
}

/// Families of strict commutative fibers the library can build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonoidFamily {
    Terminal,
    DiscreteCyclic,
    CyclicGroup,
    Chain,
}

impl MonoidFamily {
    pub const ALL: [MonoidFamily; 4] = [
        MonoidFamily::Terminal,
        MonoidFamily::DiscreteCyclic,
        MonoidFamily::CyclicGroup,
        MonoidFamily::Chain,
    ];

    pub fn id(self) -> &'static str {
        match self {
            MonoidFamily::Terminal => "terminal",
            MonoidFamily::DiscreteCyclic => "discrete_cyclic",
            MonoidFamily::CyclicGroup => "cyclic_group",
            MonoidFamily::Chain => "chain",
        }
    }

    pub fn build(self, k: usize) -> Result<StrictCommutative> {
        match self {
            MonoidFamily::Terminal => StrictCommutative::discrete_cyclic(1),
            MonoidFamily::DiscreteCyclic => StrictCommutative::discrete_cyclic(k),
            MonoidFamily::CyclicGroup => StrictCommutative::cyclic_group(k),
            MonoidFamily::Chain => StrictCommutative::chain(k),
        }
    }
}

impl fmt::Display for MonoidFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for MonoidFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MonoidFamily::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown monoid family {s}")))
    }
}

/// `M(O) = C^{|O|}`, a map acting through its size by tensoring each fiber.
pub fn commutative_monoid(pattern: &Arc<PatternData>, c: &StrictCommutative) -> Result<CatMonoid> {
    let level = pattern.level();
    let powers: Vec<ProductCat> = (0..=level)
        .map(|n| product_of(&vec![c.cat.clone(); n], |_| true))
        .collect::<Result<_>>()?;
    let cat = pattern.cat();
    let fibers = cat
        .objects()
        .map(|o| powers[pattern.size_of(o)].cat.clone())
        .collect();
    let actions = cat
        .morphisms()
        .map(|m| {
            let phi = pattern.size_map(m);
            let (from, to) = (&powers[phi.source() as usize], &powers[phi.target as usize]);
            let obj_map = from
                .objects
                .iter()
                .map(|t| {
                    let image: Vec<ObjId> = (1..=phi.target)
                        .map(|j| {
                            phi.fiber(j)
                                .iter()
                                .fold(c.unit, |acc, &i| c.tensor(acc, t[i as usize - 1]))
                        })
                        .collect();
                    to.obj_of(&image).unwrap()
                })
                .collect();
            let mor_map = from
                .morphisms
                .iter()
                .map(|t| {
                    let image: Vec<MorId> = (1..=phi.target)
                        .map(|j| {
                            phi.fiber(j).iter().fold(c.cat.id(c.unit), |acc, &i| {
                                c.tensor_mor(acc, t[i as usize - 1])
                            })
                        })
                        .collect();
                    to.mor_of(&image).unwrap()
                })
                .collect();
            FinFunctor::new(from.cat.clone(), to.cat.clone(), obj_map, mor_map)
        })
        .collect::<Result<_>>()?;
    CatMonoid::new(
        format!("{} on {}", c.name, pattern.name()),
        pattern.clone(),
        fibers,
        actions,
    )
}
