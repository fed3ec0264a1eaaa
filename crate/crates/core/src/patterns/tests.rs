use std::sync::Arc;

use super::*;
use crate::kan::SetFunctor;
use crate::stdlib::{ass, build_pattern, delta_op, f_star, size_morphism, BuilderSpec, PatternFamily};

/// `⟨n⟩ ↦ (Z/2)^n`, adding coordinates along each pointed map.
fn parity(p: &PatternData) -> SetFunctor {
    let c = p.cat().clone();
    let sizes = c.objects().map(|o| 1 << p.size_of(o)).collect();
    SetFunctor::from_fn(c, sizes, |m, x| {
        let phi = p.size_map(m);
        (1..=phi.source()).fold(0, |y, i| match phi.apply(i) {
            0 => y,
            j if x >> (i - 1) & 1 == 1 => y ^ (1 << (j - 1)),
            _ => y,
        })
    })
    .unwrap()
}

fn small_patterns() -> Vec<Arc<PatternData>> {
    PatternFamily::ALL
        .into_iter()
        .map(|f| build_pattern(BuilderSpec::new(f, 2)).unwrap())
        .collect()
}

#[test]
fn factorizations_recompose() {
    for p in small_patterns() {
        let c = p.cat();
        let r = check_factorization_system(c, p.inert_classes(), p.active_classes());
        assert!(r.passed, "{}: {r}", p.name());
        for m in c.morphisms() {
            let (i, a) = p.factorize(m).unwrap();
            assert!(p.is_inert(i) && p.is_active(a));
            assert_eq!(c.comp(a, i), m);
        }
    }
}

#[test]
fn everything_inert_and_active_is_not_a_factorization_system() {
    let p = f_star(2).unwrap();
    let all = vec![true; p.cat().num_morphisms()];
    assert!(!check_factorization_system(p.cat(), &all, &all).passed);
}

#[test]
fn one_rho_per_component() {
    for p in small_patterns() {
        for o in p.cat().objects() {
            let comps = p.components(o).unwrap();
            assert_eq!(comps.len(), p.size_of(o));
            assert!(comps.iter().all(|&e| p.is_elementary(e)));
        }
    }
}

#[test]
fn inert_and_elementary_parts() {
    let p = f_star(2).unwrap();
    let (int, _) = p.inert_part().unwrap();
    assert!(int.inert_classes().iter().all(|&x| x));
    // inert maps ⟨n⟩ → ⟨m⟩ are partial bijections onto ⟨m⟩: n!/(n-m)! of them
    assert_eq!(int.cat().num_morphisms(), 1 + (1 + 1) + (1 + 2 + 2));
    let (el, _) = p.elementary_part().unwrap();
    assert_eq!((el.cat().num_objects(), el.cat().num_morphisms()), (1, 1));
}

#[test]
fn parity_is_a_commutative_monoid() {
    let p = f_star(3).unwrap();
    let m = parity(&p);
    assert!(m.validate().passed);
    assert!(check_monoid(&p, &m).passed);
    assert!(check_monoid(&p, &SetFunctor::constant(p.cat().clone(), 1)).passed);
    let r = check_monoid(&p, &SetFunctor::constant(p.cat().clone(), 2));
    assert!(!r.passed);
    assert!(r.first_counterexample().is_some());
    let two = p.cat().find_object("<2>").unwrap();
    assert_eq!(segal_image(&p, &m, two).unwrap(), [[0, 0], [1, 0], [0, 1], [1, 1]]);
}

#[test]
fn monoids_pull_back_along_pattern_morphisms() {
    let d = Arc::new(delta_op(3).unwrap());
    let s = size_morphism(&d).unwrap();
    assert!(check_pattern_morphism(&s).passed);
    let m = parity(&s.target).restrict(&s.functor).unwrap();
    assert!(check_monoid(&d, &m).passed);
}

#[test]
fn constant_functor_is_not_a_pattern_morphism() {
    let d = Arc::new(delta_op(2).unwrap());
    let f = Arc::new(f_star(2).unwrap());
    let one = f.cat().find_object("<1>").unwrap();
    let k = FinFunctor::constant(d.cat().clone(), f.cat().clone(), one);
    let r = check_pattern_morphism(&PatternMorphism::new("const", d, f, k).unwrap());
    assert!(!r.passed);
}

#[test]
fn gamma_objects_are_inert_maps() {
    // inert ⟨n⟩ ↣ ⟨m⟩ number n!/(n-m)!
    let count = |n: usize| -> usize { (0..=n).map(|m| (n - m + 1..=n).product::<usize>()).sum() };
    for level in 1..=3 {
        let g = gamma_times(level).unwrap();
        let expected: usize = (0..=level).map(count).sum();
        assert_eq!(g.pattern.cat().num_objects(), expected);
        assert!(check_pattern_morphism(&g.include).passed);
    }
    assert_eq!(gamma_times(1).unwrap().pattern.cat().num_objects(), 3);
}

#[test]
fn gamma_roundtrip_of_parity() {
    let p = Arc::new(f_star(2).unwrap());
    let m = parity(&p);
    let r = monoid_gamma_roundtrip(&p, &m).unwrap();
    assert!(r.passed, "{r}");
}

#[test]
fn associative_over_commutative_is_fibrous() {
    let a = ass(3).unwrap();
    let f = f_star(3).unwrap();
    let size = a.size().with_target(f.cat().clone()).unwrap();
    let (lifts, found) = find_cocartesian_lifts(&size, &f);
    assert!(found.passed, "{found}");
    let r = check_operad_fibration(&size, &f, &lifts);
    assert!(r.passed, "{r}");
    for o in a.cat().objects() {
        assert!(is_cocartesian(&size, a.cat().id(o)));
    }
}

#[test]
fn fibration_pattern_recovers_the_inert_maps() {
    let a = ass(2).unwrap();
    let f = Arc::new(f_star(2).unwrap());
    let size = a.size().with_target(f.cat().clone()).unwrap();
    let q = fibration_pattern("q", &size, &f).unwrap();
    assert_eq!(q.inert_classes(), a.inert_classes());
    assert_eq!(q.active_classes(), a.active_classes());
}
