//! The Kan extension engine against brute-force enumeration on random small
//! categories and functors.

use std::sync::Arc;

use patcalc_core::fincat::{terminal, FinFunctor, ObjId};
use patcalc_core::kan::{lan, ran};
use patcalc_core::testing::suite::*;
use patcalc_core::testing::*;
use rand::SeedableRng;

#[test]
fn colimits_and_limits_match_enumeration() {
    assert_eq!(colimit_suite(1, 200), Ok(200));
}

#[test]
fn left_kan_extensions_match_enumeration() {
    assert_eq!(lan_suite(2, 200), Ok(200));
}

#[test]
fn right_kan_extensions_match_enumeration() {
    assert_eq!(ran_suite(3, 200, 20_000), Ok(200));
}

#[test]
fn kan_extensions_along_identities_and_to_a_point() {
    let mut rng = TestRng::seed_from_u64(4);
    let point = Arc::new(terminal());
    for _ in 0..100 {
        let c = random_category(&mut rng);
        let f = random_set_functor(&mut rng, &c, 3);
        let id = FinFunctor::identity(c.clone());
        assert_eq!(lan(&id, &f).unwrap().functor.sizes(), f.sizes());
        assert_eq!(ran(&id, &f).unwrap().functor.sizes(), f.sizes());
        let bang = FinFunctor::constant(c.clone(), point.clone(), ObjId(0));
        assert_eq!(lan(&bang, &f).unwrap().functor.size(ObjId(0)), brute_colimit(&f).0);
        assert_eq!(ran(&bang, &f).unwrap().functor.size(ObjId(0)), brute_limit(&f).len());
    }
}

#[test]
fn cofinal_functors_preserve_colimits() {
    assert!(cofinal_suite(5, 100, 20).unwrap() >= 100);
}
