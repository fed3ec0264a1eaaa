use std::fmt::Write;

use super::lexer::{is_ident_char, is_ident_start};
use super::*;

/// A name as it must be written: bare if it lexes as an identifier,
/// otherwise quoted.
pub fn quote_name(s: &str) -> String {
    let mut chars = s.chars();
    let bare = chars.next().is_some_and(is_ident_start) && chars.all(is_ident_char);
    if bare {
        s.to_string()
    } else {
        format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

fn list(names: &[String]) -> String {
    names.iter().map(|n| quote_name(n)).collect::<Vec<_>>().join(", ")
}

/// Canonical text of a document; parsing it gives the document back.
pub fn print_dsl(doc: &Document) -> String {
    let mut out = String::new();
    for (i, d) in doc.decls.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        print_decl(&mut out, d);
    }
    out
}

fn print_decl(out: &mut String, d: &Decl) {
    let name = quote_name(&d.name);
    match &d.body {
        Body::Category(c) => {
            writeln!(out, "category {name} {{").unwrap();
            writeln!(out, "  objects: {};", list(&c.objects)).unwrap();
            for (f, a, b) in &c.morphisms {
                writeln!(out, "  mor {}: {} -> {};", quote_name(f), quote_name(a), quote_name(b)).unwrap();
            }
            for (g, f, h) in &c.compositions {
                writeln!(out, "  compose {}.{} = {};", quote_name(g), quote_name(f), quote_name(h)).unwrap();
            }
            out.push_str("}\n");
        }
        Body::Pattern(p) => {
            writeln!(out, "pattern {name} from {} {{", quote_name(&p.category)).unwrap();
            writeln!(out, "  inert: {};", list(&p.inert)).unwrap();
            writeln!(out, "  active: {};", list(&p.active)).unwrap();
            writeln!(out, "  elementary: {};", list(&p.elementary)).unwrap();
            let size: Vec<String> = p
                .size
                .iter()
                .map(|(x, v)| match v {
                    SizeValue::Object(n) => format!("{} => {n}", quote_name(x)),
                    SizeValue::Map(m) => format!(
                        "{} => [{}]",
                        quote_name(x),
                        m.iter().map(u8::to_string).collect::<Vec<_>>().join(", ")
                    ),
                })
                .collect();
            writeln!(out, "  size: {};", size.join(", ")).unwrap();
            out.push_str("}\n");
        }
        Body::Builtin(b) => {
            let args: Vec<String> = b
                .args
                .iter()
                .map(|a| match a {
                    Arg::Int(n) => n.to_string(),
                    Arg::Name(s) => quote_name(s),
                })
                .collect();
            write!(out, "{} {name} = builtin {}({})", b.kind.keyword(), quote_name(&b.family), args.join(", ")).unwrap();
            if let Some(on) = &b.on {
                write!(out, " on {}", quote_name(on)).unwrap();
            }
            out.push_str(";\n");
        }
        Body::Functor(f) => {
            writeln!(out, "functor {name}: {} -> {} {{", quote_name(&f.source), quote_name(&f.target)).unwrap();
            for (a, b) in &f.objects {
                writeln!(out, "  obj {} => {};", quote_name(a), quote_name(b)).unwrap();
            }
            for (a, b) in &f.morphisms {
                writeln!(out, "  mor {} => {};", quote_name(a), quote_name(b)).unwrap();
            }
            out.push_str("}\n");
        }
        Body::Presheaf(p) => {
            writeln!(out, "presheaf {name} on {} {{", quote_name(&p.category)).unwrap();
            for e in &p.entries {
                match e {
                    PresheafEntry::Set(x, elems) => writeln!(out, "  {}: {{{}}};", quote_name(x), list(elems)).unwrap(),
                    PresheafEntry::Map(f, pairs) => {
                        let pairs: Vec<String> = pairs
                            .iter()
                            .map(|(a, b)| format!("{} => {}", quote_name(a), quote_name(b)))
                            .collect();
                        writeln!(out, "  {}: {};", quote_name(f), pairs.join(", ")).unwrap()
                    }
                }
            }
            out.push_str("}\n");
        }
    }
}
