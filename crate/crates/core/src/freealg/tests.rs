use std::sync::Arc;

use super::*;
use crate::error::Error;
use crate::kan::{ran, SetFunctor};
use crate::patterns::{PatternData, PatternMorphism};
use crate::stdlib::{ass, cut, delta_k_op, delta_op, el_inclusion, f_star, int_inclusion, mu};

fn generators(p: &PatternData, k: usize) -> SetFunctor {
    let (el, _) = p.elementary_part().unwrap();
    let n = el.cat().num_objects();
    SetFunctor::from_fn(el.cat().clone(), vec![k; n], |_, x| x).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn free_commutative_monoids_count_multisets() {
    let p = f_star(3).unwrap();
    for k in 0..=3 {
        let a = free_algebra(&p, &generators(&p, k), 3).unwrap();
        let expected: Vec<usize> = (0..=3).map(|d| if k == 0 { usize::from(d == 0) } else { binomial(d + k - 1, d) }).collect();
        assert_eq!(a.sizes, [expected]);
    }
}

#[test]
fn free_associative_monoids_count_words() {
    for p in [delta_op(3).unwrap(), ass(3).unwrap()] {
        for k in 1..=3 {
            let a = free_algebra(&p, &generators(&p, k), 3).unwrap();
            let expected: Vec<usize> = (0..=3).map(|d| k.pow(d as u32)).collect();
            assert_eq!(a.sizes, [expected], "{}", p.name());
        }
    }
}

#[test]
fn units_are_distinct_generators() {
    let p = f_star(2).unwrap();
    let a = free_algebra(&p, &generators(&p, 3), 2).unwrap();
    assert_eq!(a.unit, [[0, 1, 2]]);
}

#[test]
fn degrees_beyond_the_level_are_rejected() {
    let p = f_star(2).unwrap();
    let r = free_algebra(&p, &generators(&p, 1), 3);
    assert!(matches!(r, Err(Error::TruncationEscape(_))));
}

#[test]
fn act_groupoids() {
    let p = f_star(3).unwrap();
    let one = p.cat().find_object("<1>").unwrap();
    let act = act_groupoid(&p, one).unwrap();
    // one active map from each ⟨n⟩, with the symmetric group acting
    let mut orders: Vec<usize> = act.cat().objects().map(|o| act.automorphisms(o)).collect();
    orders.sort_unstable();
    assert_eq!(orders, [1, 1, 2, 6]);
    assert_eq!(act.components().len(), 4);

    let d = delta_op(3).unwrap();
    let act = act_groupoid(&d, d.cat().find_object("[1]").unwrap()).unwrap();
    assert!(act.is_discrete());
    assert_eq!(act.cat().num_objects(), 4);
}

/// The free algebra is the left Kan extension along `O^int → O` of the
/// right Kan extension of the generators along `O^el → O^int`.
fn free_by_kan_extensions(p: &Arc<PatternData>, k: usize) {
    let int = int_inclusion(p).unwrap();
    let el = el_inclusion(p).unwrap();
    let phi = generators(p, k).with_source(el.source.cat().clone()).unwrap();
    let segal = ran(&el.functor, &phi).unwrap().functor.with_source(int.source.cat().clone()).unwrap();
    let lm = lan_monoid(&int, &segal).unwrap();
    let free = free_algebra(p, &generators(p, k), p.level()).unwrap();
    for (i, &e) in free.elementary.iter().enumerate() {
        assert_eq!(lm.functor.size(e), free.total(e), "{}", p.name());
        let mut histogram = vec![0; p.level() + 1];
        for &d in &lm.degrees[e.idx()] {
            histogram[d] += 1;
        }
        assert_eq!(histogram, free.sizes[i], "{}", p.name());
    }
}

#[test]
fn free_algebra_agrees_with_kan_extensions() {
    for p in [f_star(3).unwrap(), delta_op(3).unwrap(), ass(2).unwrap()] {
        free_by_kan_extensions(&Arc::new(p), 2);
    }
}

#[test]
fn extendable_patterns() {
    for p in [f_star(3).unwrap(), delta_op(3).unwrap(), ass(3).unwrap()] {
        let r = check_extendable_pattern(&p);
        assert!(r.passed, "{}: {r}", p.name());
    }
    let r = check_extendable_pattern(&delta_k_op(3, 2).unwrap());
    assert!(!r.passed);
    let g = crate::patterns::gamma_times(2).unwrap().pattern;
    assert!(!check_extendable_pattern(&g).passed);
}

#[test]
fn identities_are_extendable() {
    let p = Arc::new(delta_op(3).unwrap());
    assert!(check_extendable_morphism(&PatternMorphism::identity(p)).passed);
}

#[test]
fn inert_lifting_along_worked_examples() {
    assert!(check_unique_inert_lifting(&mu(3).unwrap()).passed);
    // the two inert maps [n] → [0] both lie over ⟨n⟩ → ⟨0⟩ but have no map between them
    let r = check_unique_inert_lifting(&cut(3).unwrap());
    assert!(!r.passed);
    assert!(r.first_counterexample().is_some());
}
