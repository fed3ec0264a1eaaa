use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fincat::{opposite, MorId, ObjId};
use crate::kan::SetFunctor;
use crate::patterns::{
    check_cartesian_pattern, check_operad_fibration, fibration_pattern, PatternData,
};
use crate::stdlib::{delta_op, f_star, size_morphism};

fn fstar(level: usize) -> Arc<PatternData> {
    Arc::new(f_star(level).unwrap())
}

fn monoid(level: usize, c: &StrictCommutative) -> CatMonoid {
    commutative_monoid(&fstar(level), c).unwrap()
}

fn mor(p: &PatternData, label: &str) -> MorId {
    p.cat().find_morphism(label).unwrap()
}

const FOLD: &str = "<2>-[1,1]-><1>";
const UNIT: &str = "<0>-[]-><1>";

#[test]
fn strict_structures_validate() {
    for c in [
        StrictCommutative::discrete_cyclic(3).unwrap(),
        StrictCommutative::cyclic_group(3).unwrap(),
        StrictCommutative::chain(3).unwrap(),
    ] {
        let r = c.validate();
        assert!(r.passed, "{r}");
    }
}

#[test]
fn commutative_monoids_are_segal() {
    for family in MonoidFamily::ALL {
        let m = monoid(3, &family.build(2).unwrap());
        let r = m.validate();
        assert!(r.passed, "{family}: {r}");
    }
}

#[test]
fn restriction_along_size_matches_direct_build() {
    let c = StrictCommutative::chain(2).unwrap();
    let d = Arc::new(delta_op(3).unwrap());
    let direct = commutative_monoid(&d, &c).unwrap();
    let pulled = monoid(3, &c).restrict(&size_morphism(&d).unwrap()).unwrap();
    assert!(pulled.validate().passed);
    for o in d.cat().objects() {
        assert_eq!(**direct.fiber(o), **pulled.fiber(o));
    }
    for g in d.cat().morphisms() {
        assert_eq!(direct.action(g).obj_map(), pulled.action(g).obj_map());
        assert_eq!(direct.action(g).mor_map(), pulled.action(g).mor_map());
    }
}

#[test]
fn terminal_total_is_the_base() {
    let p = fstar(3);
    let fib = grothendieck(&monoid(3, &MonoidFamily::Terminal.build(1).unwrap())).unwrap();
    assert_eq!(fib.total.cat().num_objects(), p.cat().num_objects());
    assert_eq!(fib.total.cat().num_morphisms(), p.cat().num_morphisms());
    assert_eq!(fib.total.inert_classes(), p.inert_classes());
}

#[test]
fn discrete_total_object_count() {
    let fib = grothendieck(&monoid(2, &StrictCommutative::discrete_cyclic(2).unwrap())).unwrap();
    assert_eq!(fib.total.cat().num_objects(), 1 + 2 + 4);
}

#[test]
fn segal_fiber_is_the_product() {
    let m = monoid(2, &StrictCommutative::chain(3).unwrap());
    let two = ObjId(2);
    let one = m.fiber(ObjId(1));
    assert_eq!(m.fiber(two).num_objects(), one.num_objects().pow(2));
    assert_eq!(m.fiber(two).num_morphisms(), one.num_morphisms().pow(2));
}

#[test]
fn totals_are_operad_fibrations() {
    for c in [
        StrictCommutative::discrete_cyclic(2).unwrap(),
        StrictCommutative::cyclic_group(2).unwrap(),
        StrictCommutative::chain(2).unwrap(),
    ] {
        let m = monoid(2, &c);
        for m in [m.clone(), fiberwise_op(&m).unwrap()] {
            let fib = grothendieck(&m).unwrap();
            let r = check_operad_fibration(&fib.projection.functor, &m.pattern, &fib.lifts);
            assert!(r.passed, "{}: {r}", m.name);
            let r = check_cartesian_pattern(&fib.total);
            assert!(r.passed, "{}: {r}", m.name);
            // inert maps are exactly the cocartesian lifts of inert maps
            let again = fibration_pattern("again", &fib.projection.functor, &m.pattern).unwrap();
            assert_eq!(again.inert_classes(), fib.total.inert_classes());
        }
    }
}

#[test]
fn fiberwise_op_is_an_involution() {
    let m = monoid(2, &StrictCommutative::chain(3).unwrap());
    let twice = fiberwise_op(&fiberwise_op(&m).unwrap()).unwrap();
    for (a, b) in m.fibers.iter().zip(&twice.fibers) {
        assert_eq!(**a, **b);
    }
    assert_eq!(m.actions, twice.actions);

    let d = monoid(2, &StrictCommutative::discrete_cyclic(3).unwrap());
    let op = fiberwise_op(&d).unwrap();
    for (a, b) in d.fibers.iter().zip(&op.fibers) {
        assert_eq!(**a, **b);
    }
}

#[test]
fn opposite_total_morphism_count() {
    // Over g, the fiberwise-opposite total has Hom(x', g_!x) in the original
    // fiber for each pair; for a chain that is 1 when x' <= g_!x componentwise.
    let c = StrictCommutative::chain(3).unwrap();
    let m = monoid(2, &c);
    let p = &m.pattern;
    let mut expected = 0;
    for g in p.cat().morphisms() {
        let tgt = m.fiber(p.cat().tgt(g));
        for x in m.fiber(p.cat().src(g)).objects() {
            let y = m.action(g).obj(x);
            expected += tgt.objects().filter(|&x2| !tgt.hom(x2, y).is_empty()).count();
        }
    }
    let fib = grothendieck(&fiberwise_op(&m).unwrap()).unwrap();
    assert_eq!(fib.total.cat().num_morphisms(), expected);
    // and by the product formula over each fiber: prod_j (y_j + 1)
    let mut by_formula = 0;
    for g in p.cat().morphisms() {
        let (src, tgt) = (p.cat().src(g), p.cat().tgt(g));
        for x in m.fiber(src).objects() {
            let y = m.action(g).obj(x);
            by_formula += m
                .segal_tuple(tgt, y)
                .unwrap()
                .iter()
                .map(|t| t.0 as usize + 1)
                .product::<usize>();
        }
    }
    assert_eq!(by_formula, expected);
}

fn discrete_presheaf(m: &CatMonoid, e: ObjId, sizes: Vec<usize>) -> SetFunctor {
    let op = Arc::new(opposite(m.fiber(e)));
    SetFunctor::from_fn(op, sizes, |_, x| x).unwrap()
}

#[test]
fn discrete_convolution_is_the_double_sum() {
    let k = 3;
    let m = monoid(2, &StrictCommutative::discrete_cyclic(k).unwrap());
    let fold = mor(&m.pattern, FOLD);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let f: Vec<usize> = (0..k).map(|_| rng.gen_range(0..4)).collect();
        let g: Vec<usize> = (0..k).map(|_| rng.gen_range(0..4)).collect();
        let conv = day_convolve(
            &m,
            fold,
            &[
                discrete_presheaf(&m, ObjId(1), f.clone()),
                discrete_presheaf(&m, ObjId(1), g.clone()),
            ],
        )
        .unwrap();
        for c in 0..k {
            let expected: usize = (0..k)
                .flat_map(|a| (0..k).map(move |b| (a, b)))
                .filter(|(a, b)| (a + b) % k == c)
                .map(|(a, b)| f[a] * g[b])
                .sum();
            assert_eq!(conv.size(ObjId(c as u32)), expected);
        }
    }
}

#[test]
fn empty_factor_gives_empty_convolution() {
    let m = monoid(2, &StrictCommutative::chain(2).unwrap());
    let fold = mor(&m.pattern, FOLD);
    let y = yoneda(m.fiber(ObjId(1)), ObjId(1));
    let empty = SetFunctor::constant(y.source().clone(), 0);
    let conv = day_convolve(&m, fold, &[y, empty]).unwrap();
    assert!(conv.sizes().iter().all(|&s| s == 0));
}

#[test]
fn yoneda_is_monoidal() {
    for c in [
        StrictCommutative::discrete_cyclic(3).unwrap(),
        StrictCommutative::cyclic_group(3).unwrap(),
        StrictCommutative::chain(3).unwrap(),
    ] {
        let m = monoid(2, &c);
        let fold = mor(&m.pattern, FOLD);
        for a in c.cat.objects() {
            for b in c.cat.objects() {
                let r = check_yoneda_monoidal(&m, fold, &[a, b]).unwrap();
                assert!(r.passed, "{}: {r}", c.name);
            }
        }
        let r = check_yoneda_monoidal(&m, mor(&m.pattern, UNIT), &[]).unwrap();
        assert!(r.passed, "{}: {r}", c.name);
        let unit = m.fiber(ObjId(1)).obj_label(c.unit);
        assert_eq!(r.witnesses, [format!("unit ≅ y({unit})")]);
    }
}

#[test]
fn convolution_rejects_inactive_maps() {
    let m = monoid(2, &StrictCommutative::chain(2).unwrap());
    let rho = mor(&m.pattern, "<2>-[1,0]-><1>");
    assert!(day_convolve(&m, rho, &[]).is_err());
}

#[test]
fn yoneda_monoid_bridges_to_representables() {
    for c in [
        StrictCommutative::discrete_cyclic(2).unwrap(),
        StrictCommutative::cyclic_group(2).unwrap(),
        StrictCommutative::chain(2).unwrap(),
    ] {
        let m = monoid(2, &c);
        let s = unit_section(&m, c.unit).unwrap();
        let n = yoneda_monoid(&m, &s).unwrap();
        assert!(n.validate().passed);
        let (family, r) = monoid_algebra_bridge(&m, &n).unwrap();
        assert!(r.passed, "{}: {r}", c.name);
        assert!(family.all_representable());
        assert!(!family.structure.is_empty());
    }
}

#[test]
fn doubled_monoid_fails_the_bridge() {
    let c = StrictCommutative::chain(2).unwrap();
    let m = monoid(2, &c);
    let n = yoneda_monoid(&m, &unit_section(&m, c.unit).unwrap()).unwrap();
    let doubled = SetFunctor::from_fn(
        n.source().clone(),
        n.sizes().iter().map(|s| 2 * s).collect(),
        |k, i| {
            let s = n.size(n.source().src(k)) as u32;
            let t = n.size(n.source().tgt(k)) as u32;
            (i / s) * t + n.apply(k, i % s)
        },
    )
    .unwrap();
    let (family, r) = monoid_algebra_bridge(&m, &doubled).unwrap();
    assert!(!r.passed);
    assert!(r.first_counterexample().is_some());
    assert!(family.presheaves.is_empty());
}

#[test]
fn submonoid_indicator_bridge() {
    // {0, 2} inside Z/4
    let k = 4;
    let c = StrictCommutative::discrete_cyclic(k).unwrap();
    let m = monoid(2, &c);
    let opfib = grothendieck(&fiberwise_op(&m).unwrap()).unwrap();
    let inside = |e: ObjId| {
        let (o, x) = opfib.pair(e);
        m.segal_tuple(o, x).unwrap().iter().all(|t| t.0 % 2 == 0)
    };
    let total = opfib.total.cat().clone();
    let sizes = total.objects().map(|e| usize::from(inside(e))).collect();
    let n = SetFunctor::from_fn(total, sizes, |_, _| 0).unwrap();
    let (family, r) = monoid_algebra_bridge(&m, &n).unwrap();
    assert!(r.passed, "{r}");
    let fold = mor(&m.pattern, FOLD);
    let s = family.structure.iter().find(|s| s.phi == fold).unwrap();
    for (d, row) in s.maps.iter().enumerate() {
        // pairs (a, b) in the submonoid with a + b = d, all sent to the one element
        let pairs = [0, 2].iter().flat_map(|&a| [0, 2].map(|b| (a + b) % k)).filter(|&x| x == d).count();
        assert_eq!(row.len(), pairs);
        assert!(row.iter().all(|&v| v == 0));
    }
    assert!(!family.all_representable());
}

#[test]
fn convolution_commutes_with_pullback() {
    let c = StrictCommutative::chain(2).unwrap();
    let d = Arc::new(delta_op(2).unwrap());
    let f = size_morphism(&d).unwrap();
    let m = monoid(2, &c);
    let pulled = m.restrict(&f).unwrap();
    let y = |c: ObjId| yoneda(m.fiber(ObjId(1)), c);
    for phi in d.cat().morphisms() {
        if !d.is_active(phi) || !d.is_elementary(d.cat().tgt(phi)) {
            continue;
        }
        let n = d.size_of(d.cat().src(phi));
        for a in c.cat.objects() {
            let inputs = vec![y(a); n];
            let lhs = day_convolve(&pulled, phi, &inputs).unwrap();
            let rhs = day_convolve(&m, f.functor.mor(phi), &inputs).unwrap();
            assert_eq!(lhs.sizes(), rhs.sizes());
        }
    }
}
