//! Printing a document and parsing it back is the identity, for random
//! well-scoped documents with arbitrary (quoted where needed) names.

use std::collections::HashSet;

use patcalc::dsl::*;
use patcalc_core::day::MonoidFamily;
use patcalc_core::stdlib::{MorphismFamily, PatternFamily};
use proptest::prelude::*;

fn raw_name() -> impl Strategy<Value = String> {
    prop_oneof![
        3 => "[a-z_][a-z0-9_']{0,5}",
        1 => "[0-9]{1,3}",
        1 => "[ -~]{0,5}",
        1 => "(objects|mor|compose|obj|on|builtin|inert|size|category)",
    ]
}

/// Appends a counter until `name` is not in `taken`, then claims it.
fn fresh(taken: &mut HashSet<String>, name: String) -> String {
    let mut candidate = name.clone();
    let mut k = 0;
    while taken.contains(&candidate) {
        k += 1;
        candidate = format!("{name}{k}");
    }
    taken.insert(candidate.clone());
    candidate
}

fn pick<T: Clone>(xs: &[T], k: usize) -> T {
    xs[k % xs.len()].clone()
}

#[derive(Clone, Debug)]
enum Seed {
    Category {
        objects: Vec<String>,
        morphisms: Vec<(String, usize, usize)>,
        compositions: Vec<(usize, usize, usize)>,
    },
    Pattern {
        category: usize,
        lists: [Vec<String>; 3],
        size: Vec<(String, Option<usize>, Vec<u8>)>,
    },
    Builtin {
        kind: usize,
        family: usize,
        args: Vec<Result<usize, usize>>,
        on: usize,
    },
    Functor {
        source: usize,
        target: usize,
        objects: Vec<(String, String)>,
        morphisms: Vec<(String, String)>,
    },
    Presheaf {
        category: usize,
        entries: Vec<(String, Result<Vec<String>, Vec<(String, String)>>)>,
    },
}

fn seed() -> impl Strategy<Value = Seed> {
    let names = || prop::collection::vec(raw_name(), 0..4);
    let pairs = || prop::collection::vec((raw_name(), raw_name()), 0..4);
    prop_oneof![
        (
            prop::collection::vec(raw_name(), 1..4),
            prop::collection::vec((raw_name(), any::<usize>(), any::<usize>()), 0..4),
            prop::collection::vec(any::<(usize, usize, usize)>(), 0..3),
        )
            .prop_map(|(objects, morphisms, compositions)| Seed::Category {
                objects,
                morphisms,
                compositions
            }),
        (
            any::<usize>(),
            [names(), names(), names()],
            prop::collection::vec(
                (raw_name(), prop::option::of(0usize..100), prop::collection::vec(any::<u8>(), 0..4)),
                0..4
            ),
        )
            .prop_map(|(category, lists, size)| Seed::Pattern { category, lists, size }),
        (
            0usize..3,
            any::<usize>(),
            prop::collection::vec(prop_oneof![(0usize..10).prop_map(Ok), any::<usize>().prop_map(Err)], 0..3),
            any::<usize>(),
        )
            .prop_map(|(kind, family, args, on)| Seed::Builtin { kind, family, args, on }),
        (any::<usize>(), any::<usize>(), pairs(), pairs()).prop_map(|(source, target, objects, morphisms)| {
            Seed::Functor {
                source,
                target,
                objects,
                morphisms,
            }
        }),
        (
            any::<usize>(),
            prop::collection::vec(
                (raw_name(), prop_oneof![names().prop_map(Ok), pairs().prop_map(Err)]),
                0..4
            ),
        )
            .prop_map(|(category, entries)| Seed::Presheaf { category, entries }),
    ]
}

/// Turns seeds into a document the parser accepts: top-level and
/// per-category names are made unique and references point backwards.
fn document(first: (String, Vec<String>), rest: Vec<(String, Seed)>) -> Document {
    let mut top = HashSet::new();
    let mut declared: Vec<String> = Vec::new();
    let mut decls = Vec::new();
    let seeds = std::iter::once((
        first.0,
        Seed::Category {
            objects: if first.1.is_empty() { vec!["a".into()] } else { first.1 },
            morphisms: vec![],
            compositions: vec![],
        },
    ))
    .chain(rest);
    for (name, seed) in seeds {
        let name = fresh(&mut top, name);
        let body = match seed {
            Seed::Category {
                objects,
                morphisms,
                compositions,
            } => {
                let mut objs = HashSet::new();
                let mut names = HashSet::new();
                let mut c = CategoryDecl::default();
                for o in objects {
                    let mut o = fresh(&mut objs, o);
                    while names.contains(&identity_name(&o)) {
                        objs.remove(&o);
                        o = fresh(&mut objs, format!("{o}_"));
                    }
                    names.insert(identity_name(&o));
                    c.objects.push(o);
                }
                let mut mors: Vec<String> = c.objects.iter().map(|o| identity_name(o)).collect();
                for (f, a, b) in morphisms {
                    let f = fresh(&mut names, f);
                    c.morphisms.push((f.clone(), pick(&c.objects, a), pick(&c.objects, b)));
                    mors.push(f);
                }
                c.compositions = compositions
                    .into_iter()
                    .map(|(g, f, h)| (pick(&mors, g), pick(&mors, f), pick(&mors, h)))
                    .collect();
                Body::Category(c)
            }
            Seed::Pattern { category, lists, size } => {
                let [inert, active, elementary] = lists;
                Body::Pattern(PatternDecl {
                    category: pick(&declared, category),
                    inert,
                    active,
                    elementary,
                    size: size
                        .into_iter()
                        .map(|(x, n, m)| (x, n.map_or(SizeValue::Map(m), SizeValue::Object)))
                        .collect(),
                })
            }
            Seed::Builtin { kind, family, args, on } => {
                let (kind, family) = match kind {
                    0 => (BuiltinKind::Pattern, pick(&PatternFamily::ALL, family).id()),
                    1 => (BuiltinKind::Morphism, pick(&MorphismFamily::ALL, family).id()),
                    _ => (BuiltinKind::Monoid, pick(&MonoidFamily::ALL, family).id()),
                };
                Body::Builtin(BuiltinDecl {
                    kind,
                    family: family.to_string(),
                    args: args
                        .into_iter()
                        .map(|a| match a {
                            Ok(n) => Arg::Int(n),
                            Err(k) => Arg::Name(pick(&declared, k)),
                        })
                        .collect(),
                    on: (kind == BuiltinKind::Monoid).then(|| pick(&declared, on)),
                })
            }
            Seed::Functor {
                source,
                target,
                objects,
                morphisms,
            } => Body::Functor(FunctorDecl {
                source: pick(&declared, source),
                target: pick(&declared, target),
                objects,
                morphisms,
            }),
            Seed::Presheaf { category, entries } => Body::Presheaf(PresheafDecl {
                category: pick(&declared, category),
                entries: entries
                    .into_iter()
                    .map(|(x, e)| match e {
                        Ok(elems) => PresheafEntry::Set(x, elems),
                        Err(pairs) => PresheafEntry::Map(x, pairs),
                    })
                    .collect(),
            }),
        };
        declared.push(name.clone());
        decls.push(Decl {
            name,
            span: Span::default(),
            body,
        });
    }
    Document { decls }
}

fn documents() -> impl Strategy<Value = Document> {
    (
        (raw_name(), prop::collection::vec(raw_name(), 0..3)),
        prop::collection::vec((raw_name(), seed()), 0..6),
    )
        .prop_map(|(first, rest)| document(first, rest))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printing_then_parsing_is_the_identity(doc in documents()) {
        let text = print_dsl(&doc);
        let parsed = parse_dsl(&text);
        prop_assert!(parsed.is_ok(), "{:?}\n{text}", parsed);
        let parsed = parsed.unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(print_dsl(&parsed), text);
    }

    #[test]
    fn quoted_names_lex_back_to_themselves(name in "[ -~]{0,8}") {
        let doc = document((name.clone(), vec![name.clone()]), vec![]);
        prop_assert_eq!(&doc.decls[0].name, &name);
        prop_assert_eq!(parse_dsl(&print_dsl(&doc)).unwrap(), doc);
    }
}
