use std::sync::Arc;

use super::*;
use crate::fincat::{tabulate, terminal};

/// The total order `0 < 1 < … < n-1`.
fn chain(n: usize) -> Arc<FinCat> {
    Arc::new(
        tabulate(
            (0..n).collect(),
            |&a, &b| if a <= b { vec![()] } else { vec![] },
            |_| (),
            |_, _| (),
            |a| a.to_string(),
            |a, b, _| format!("{a}<={b}"),
        )
        .unwrap()
        .cat,
    )
}

/// Two objects and two parallel arrows `s, t: 0 → 1`.
fn parallel_pair() -> Arc<FinCat> {
    Arc::new(
        tabulate(
            vec![0u8, 1],
            |&a, &b| match (a, b) {
                (0, 1) => vec![1u8, 2],
                _ if a == b => vec![0],
                _ => vec![],
            },
            |_| 0,
            |g, f| g.max(f).to_owned(),
            |a| a.to_string(),
            |_, _, m| ["id", "s", "t"][*m as usize].into(),
        )
        .unwrap()
        .cat,
    )
}

fn point_at(c: &Arc<FinCat>, o: ObjId) -> FinFunctor {
    FinFunctor::constant(Arc::new(terminal()), c.clone(), o)
}

#[test]
fn representables_count_arrows() {
    let c = chain(4);
    for o in c.objects() {
        let h = SetFunctor::representable(c.clone(), o);
        assert!(h.validate().passed);
        let expected: Vec<usize> = (0..4).map(|b| usize::from(b >= o.idx())).collect();
        assert_eq!(h.sizes(), expected);
        assert_eq!(colimit(&h).apex, 1);
    }
}

#[test]
fn coequalizer_and_equalizer() {
    let c = parallel_pair();
    let (s, t) = (c.find_morphism("s").unwrap(), c.find_morphism("t").unwrap());
    let mut action = vec![Vec::new(); c.num_morphisms()];
    action[c.id(ObjId(0)).idx()] = vec![0, 1, 2, 3];
    action[c.id(ObjId(1)).idx()] = vec![0, 1, 2];
    action[s.idx()] = vec![0, 1, 2, 2];
    action[t.idx()] = vec![1, 1, 2, 0];
    let f = SetFunctor::new(c.clone(), vec![4, 3], action).unwrap();
    assert!(f.validate().passed);
    // 0~1 and 2~0 merge everything in the target
    assert_eq!(colimit(&f).apex, 1);
    // s(x) = t(x) only at x = 1, 2
    let l = limit(&f);
    assert_eq!(l.families, vec![vec![1, 1], vec![2, 2]]);
}

#[test]
fn discrete_diagrams() {
    let c = Arc::new(
        tabulate(
            vec![0, 1, 2],
            |a, b| if a == b { vec![()] } else { vec![] },
            |_| (),
            |_, _| (),
            |a| a.to_string(),
            |a, _, _| format!("id{a}"),
        )
        .unwrap()
        .cat,
    );
    let f = SetFunctor::from_fn(c, vec![2, 3, 4], |_, x| x).unwrap();
    assert_eq!(colimit(&f).apex, 9);
    assert_eq!(limit(&f).size(), 24);
}

#[test]
fn lan_of_a_point_is_representable() {
    let c = parallel_pair();
    for o in c.objects() {
        let g = point_at(&c, o);
        let one = SetFunctor::constant(g.source().clone(), 1);
        let k = lan(&g, &one).unwrap();
        assert_eq!(k.functor.sizes(), SetFunctor::representable(c.clone(), o).sizes());
    }
}

#[test]
fn ran_of_a_point_is_a_power() {
    // Ran(d) = X^Hom(d, o)
    let c = parallel_pair();
    for o in c.objects() {
        let g = point_at(&c, o);
        let x = SetFunctor::constant(g.source().clone(), 3);
        let k = ran(&g, &x).unwrap();
        for d in c.objects() {
            assert_eq!(k.functor.size(d), 3usize.pow(c.hom(d, o).len() as u32));
        }
        assert!(k.functor.validate().passed);
    }
}

#[test]
fn kan_extensions_along_the_identity() {
    let c = chain(3);
    let f = SetFunctor::from_fn(c.clone(), vec![1, 2, 2], |_, x| x.min(1)).unwrap();
    let id = FinFunctor::identity(c.clone());
    let l = lan(&id, &f).unwrap();
    assert_eq!(l.functor.sizes(), f.sizes());
    let class = |d: ObjId, x: u32| l.class(&id, d, d, c.id(d), x).unwrap();
    for d in c.objects() {
        let mut seen: Vec<u32> = (0..f.size(d) as u32).map(|x| class(d, x)).collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), f.size(d));
    }
    for m in c.morphisms() {
        for x in 0..f.size(c.src(m)) as u32 {
            assert_eq!(l.functor.apply(m, class(c.src(m), x)), class(c.tgt(m), f.apply(m, x)));
        }
    }
    let r = ran(&id, &f).unwrap();
    for m in c.morphisms() {
        let (a, b) = (c.src(m), c.tgt(m));
        for k in 0..r.functor.size(a) as u32 {
            let here = r.component(&id, a, k, a, c.id(a)).unwrap();
            let there = r.component(&id, b, r.functor.apply(m, k), b, c.id(b)).unwrap();
            assert_eq!(f.apply(m, here), there);
        }
    }
    assert_eq!(r.functor.sizes(), f.sizes());
}

#[test]
fn mismatched_sources_are_rejected() {
    let c = chain(2);
    let f = SetFunctor::constant(chain(3), 1);
    let id = FinFunctor::identity(c);
    assert!(matches!(lan(&id, &f), Err(Error::TypeMismatch(_))));
    assert!(matches!(ran(&id, &f), Err(Error::TypeMismatch(_))));
}

#[test]
fn top_element_is_cofinal_and_bottom_is_not() {
    let c = chain(3);
    assert!(check_cofinal(&point_at(&c, ObjId(2))).passed);
    let r = check_cofinal(&point_at(&c, ObjId(0)));
    assert!(!r.passed);
    assert_eq!(r.failure_count(), 2);
    // 0 ↓ g is the two parallel arrows with nothing joining them
    let p = parallel_pair();
    let r = check_cofinal(&point_at(&p, ObjId(1)));
    assert_eq!(r.failure_count(), 1);
}
