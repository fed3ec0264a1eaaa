use std::sync::Arc;

use super::*;
use crate::kan::SetFunctor;
use crate::patterns::PatternMorphism;
use crate::stdlib::{cut, cut_prime, f_star, int_inclusion, mu, reverse_ass, reverse_delta};

fn generators(f: &PatternMorphism, sizes: &[usize]) -> SetFunctor {
    let (el, _) = f.target.elementary_part().unwrap();
    assert_eq!(el.cat().num_objects(), sizes.len());
    SetFunctor::from_fn(el.cat().clone(), sizes.to_vec(), |_, x| x).unwrap()
}

#[test]
fn identity_is_morita() {
    let p = Arc::new(f_star(3).unwrap());
    let r = check_morita(&PatternMorphism::identity(p)).unwrap();
    assert!(r.passed, "{}", r.report("id"));
}

#[test]
fn worked_examples_are_morita() {
    for f in [cut(3).unwrap(), cut_prime(3).unwrap(), mu(3).unwrap()] {
        let r = check_morita(&f).unwrap();
        assert!(r.passed, "{}", r.report(&f.name));
        assert_eq!(r.budget, 3);
        assert!(r.notes.is_empty());
    }
}

#[test]
fn inert_part_is_not_morita() {
    let p = Arc::new(f_star(2).unwrap());
    let r = check_morita(&int_inclusion(&p).unwrap()).unwrap();
    assert!(r.elementary.passed);
    assert!(!r.passed);
    assert_eq!(r.notes.len(), 1);
    let failed = r.act.iter().find(|(_, c)| !c.passed).unwrap();
    assert!(failed.1.first_counterexample().is_some());
}

#[test]
fn non_extendable_source_is_rejected() {
    let g = crate::patterns::gamma_times(2).unwrap().pattern;
    let r = check_morita(&PatternMorphism::identity(g));
    assert!(matches!(r, Err(Error::Precondition(_))));
}

#[test]
fn free_algebras_transport_along_cut() {
    let f = cut(3).unwrap();
    let r = transport_free_algebra(&f, &generators(&f, &[2]), 3).unwrap();
    assert!(r.passed, "{r}");
    assert_eq!(r.witnesses, ["[1] and <1>: [1, 2, 4, 8]"]);
}

#[test]
fn free_algebras_transport_along_mu() {
    let f = mu(2).unwrap();
    let r = transport_free_algebra(&f, &generators(&f, &[1, 1]), 2).unwrap();
    assert!(r.passed, "{r}");
    assert_eq!(r.witnesses.len(), 2);
}

#[test]
fn empty_generators_only_have_units() {
    for f in [cut(2).unwrap(), cut_prime(2).unwrap(), mu(2).unwrap()] {
        let n = f.target.elementary_objects().len();
        let r = transport_free_algebra(&f, &generators(&f, &vec![0; n]), 2).unwrap();
        assert!(r.passed, "{r}");
    }
}

#[test]
fn composites_of_morita_equivalences() {
    let (rd, c, ra) = (reverse_delta(3).unwrap(), cut(3).unwrap(), reverse_ass(3).unwrap());
    for f in [&rd, &c, &ra] {
        assert!(check_morita(f).unwrap().passed, "{}", f.name);
    }
    for f in [rd.then(&c).unwrap(), c.then(&ra).unwrap(), rd.then(&c).unwrap().then(&ra).unwrap()] {
        let r = check_morita(&f).unwrap();
        assert!(r.passed, "{}", r.report(&f.name));
    }
}
