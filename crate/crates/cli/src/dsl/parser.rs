use std::collections::HashSet;

use patcalc_core::day::MonoidFamily;
use patcalc_core::stdlib::{MorphismFamily, PatternFamily};

use super::lexer::{lex, Tok};
use super::*;

/// Parses a whole document, stopping at the first error.
pub fn parse_dsl(text: &str) -> Result<Document, DslError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let mut doc = Document::default();
    let mut names = HashSet::new();
    while p.peek() != &Tok::Eof {
        let decl = p.decl()?;
        if !names.insert(decl.name.clone()) {
            return Err(DslError::DuplicateName {
                line: decl.span.line,
                col: decl.span.col,
                name: decl.name,
            });
        }
        check_references(&doc, &decl)?;
        doc.decls.push(decl);
    }
    Ok(doc)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

type PResult<T> = Result<T, DslError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn advance(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        let span = self.span();
        Err(DslError::Syntax {
            line: span.line,
            col: span.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        })
    }

    fn at_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(q) if *q == p)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.at_punct(p) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn punct(&mut self, p: &'static str) -> PResult<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            self.error(&[&format!("`{p}`")])
        }
    }

    fn at_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == k)
    }

    fn keyword(&mut self, k: &str) -> PResult<()> {
        if self.at_keyword(k) {
            self.advance();
            Ok(())
        } else {
            self.error(&[&format!("`{k}`")])
        }
    }

    fn name(&mut self) -> PResult<(String, Span)> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Ident(s) | Tok::Str(s) => {
                self.advance();
                Ok((s, span))
            }
            Tok::Int(n) => {
                self.advance();
                Ok((n.to_string(), span))
            }
            _ => self.error(&["a name"]),
        }
    }

    fn number(&mut self) -> PResult<u64> {
        match *self.peek() {
            Tok::Int(n) => {
                self.advance();
                Ok(n)
            }
            _ => self.error(&["a number"]),
        }
    }

    /// `x, y, z` up to (not including) `;`; may be empty.
    fn name_list(&mut self) -> PResult<Vec<String>> {
        let mut out = Vec::new();
        if self.at_punct(";") {
            return Ok(out);
        }
        loop {
            out.push(self.name()?.0);
            if !self.eat_punct(",") {
                return Ok(out);
            }
        }
    }

    fn decl(&mut self) -> PResult<Decl> {
        let span = self.span();
        let kw = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return self.error(&["`category`", "`pattern`", "`functor`", "`presheaf`", "`morphism`", "`monoid`"]),
        };
        let (name, body) = match kw.as_str() {
            "category" => {
                self.advance();
                let (name, _) = self.name()?;
                (name, Body::Category(self.category_body()?))
            }
            "pattern" => {
                self.advance();
                let (name, _) = self.name()?;
                if self.at_punct("=") {
                    (name, Body::Builtin(self.builtin(BuiltinKind::Pattern)?))
                } else if self.at_keyword("from") {
                    self.advance();
                    let (category, _) = self.name()?;
                    (name, Body::Pattern(self.pattern_body(category)?))
                } else {
                    return self.error(&["`=`", "`from`"]);
                }
            }
            "morphism" | "monoid" => {
                self.advance();
                let (name, _) = self.name()?;
                let kind = if kw == "morphism" { BuiltinKind::Morphism } else { BuiltinKind::Monoid };
                (name, Body::Builtin(self.builtin(kind)?))
            }
            "functor" => {
                self.advance();
                let (name, _) = self.name()?;
                self.punct(":")?;
                let (source, _) = self.name()?;
                self.punct("->")?;
                let (target, _) = self.name()?;
                (name, Body::Functor(self.functor_body(source, target)?))
            }
            "presheaf" => {
                self.advance();
                let (name, _) = self.name()?;
                self.keyword("on")?;
                let (category, _) = self.name()?;
                (name, Body::Presheaf(self.presheaf_body(category)?))
            }
            _ => return self.error(&["`category`", "`pattern`", "`functor`", "`presheaf`", "`morphism`", "`monoid`"]),
        };
        Ok(Decl { name, span, body })
    }

    fn category_body(&mut self) -> PResult<CategoryDecl> {
        let mut c = CategoryDecl::default();
        let mut names: HashSet<String> = HashSet::new();
        let mut objects: HashSet<String> = HashSet::new();
        self.punct("{")?;
        while !self.eat_punct("}") {
            if self.at_keyword("objects") {
                self.advance();
                self.punct(":")?;
                if !self.at_punct(";") {
                    loop {
                        let (o, span) = self.name()?;
                        if !objects.insert(o.clone()) || !names.insert(identity_name(&o)) {
                            return Err(duplicate(span, o));
                        }
                        c.objects.push(o);
                        if !self.eat_punct(",") {
                            break;
                        }
                    }
                }
            } else if self.at_keyword("mor") {
                self.advance();
                let (f, span) = self.name()?;
                self.punct(":")?;
                let a = self.object_ref(&objects)?;
                self.punct("->")?;
                let b = self.object_ref(&objects)?;
                if !names.insert(f.clone()) {
                    return Err(duplicate(span, f));
                }
                c.morphisms.push((f, a, b));
            } else if self.at_keyword("compose") {
                self.advance();
                let g = self.morphism_ref(&names)?;
                self.punct(".")?;
                let f = self.morphism_ref(&names)?;
                self.punct("=")?;
                let h = self.morphism_ref(&names)?;
                c.compositions.push((g, f, h));
            } else {
                return self.error(&["`objects`", "`mor`", "`compose`", "`}`"]);
            }
            self.punct(";")?;
        }
        Ok(c)
    }

    fn object_ref(&mut self, objects: &HashSet<String>) -> PResult<String> {
        let (o, span) = self.name()?;
        if objects.contains(&o) {
            Ok(o)
        } else {
            Err(unknown(span, "object", o))
        }
    }

    fn morphism_ref(&mut self, names: &HashSet<String>) -> PResult<String> {
        let (m, span) = self.name()?;
        if names.contains(&m) {
            Ok(m)
        } else {
            Err(unknown(span, "morphism", m))
        }
    }

    fn pattern_body(&mut self, category: String) -> PResult<PatternDecl> {
        let mut p = PatternDecl {
            category,
            ..PatternDecl::default()
        };
        self.punct("{")?;
        while !self.eat_punct("}") {
            let section = match self.peek() {
                Tok::Ident(s) if ["inert", "active", "elementary", "size"].contains(&s.as_str()) => s.clone(),
                _ => return self.error(&["`inert`", "`active`", "`elementary`", "`size`", "`}`"]),
            };
            self.advance();
            self.punct(":")?;
            match section.as_str() {
                "inert" => p.inert.extend(self.name_list()?),
                "active" => p.active.extend(self.name_list()?),
                "elementary" => p.elementary.extend(self.name_list()?),
                _ => {
                    if !self.at_punct(";") {
                        loop {
                            let (x, _) = self.name()?;
                            self.punct("=>")?;
                            let v = if self.eat_punct("[") {
                                let mut images = Vec::new();
                                if !self.at_punct("]") {
                                    loop {
                                        let n = self.number()?;
                                        let n = u8::try_from(n).or_else(|_| self.error(&["a point below 256"]))?;
                                        images.push(n);
                                        if !self.eat_punct(",") {
                                            break;
                                        }
                                    }
                                }
                                self.punct("]")?;
                                SizeValue::Map(images)
                            } else if matches!(self.peek(), Tok::Int(_)) {
                                SizeValue::Object(self.number()? as usize)
                            } else {
                                return self.error(&["a size", "`[`"]);
                            };
                            p.size.push((x, v));
                            if !self.eat_punct(",") {
                                break;
                            }
                        }
                    }
                }
            }
            self.punct(";")?;
        }
        Ok(p)
    }

    fn builtin(&mut self, kind: BuiltinKind) -> PResult<BuiltinDecl> {
        self.punct("=")?;
        self.keyword("builtin")?;
        let (family, span) = self.name()?;
        let known = match kind {
            BuiltinKind::Pattern => family.parse::<PatternFamily>().is_ok(),
            BuiltinKind::Morphism => family.parse::<MorphismFamily>().is_ok(),
            BuiltinKind::Monoid => family.parse::<MonoidFamily>().is_ok(),
        };
        if !known {
            return Err(unknown(span, &format!("{} family", kind.keyword()), family));
        }
        let mut args = Vec::new();
        self.punct("(")?;
        if !self.at_punct(")") {
            loop {
                match self.peek() {
                    Tok::Int(n) => {
                        args.push(Arg::Int(*n as usize));
                        self.advance();
                    }
                    _ => args.push(Arg::Name(self.name()?.0)),
                }
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        self.punct(")")?;
        let on = if kind == BuiltinKind::Monoid {
            self.keyword("on")?;
            Some(self.name()?.0)
        } else {
            None
        };
        self.punct(";")?;
        Ok(BuiltinDecl { kind, family, args, on })
    }

    fn functor_body(&mut self, source: String, target: String) -> PResult<FunctorDecl> {
        let mut f = FunctorDecl {
            source,
            target,
            ..FunctorDecl::default()
        };
        self.punct("{")?;
        while !self.eat_punct("}") {
            let is_obj = if self.at_keyword("obj") {
                true
            } else if self.at_keyword("mor") {
                false
            } else {
                return self.error(&["`obj`", "`mor`", "`}`"]);
            };
            self.advance();
            let (a, _) = self.name()?;
            self.punct("=>")?;
            let (b, _) = self.name()?;
            if is_obj {
                f.objects.push((a, b));
            } else {
                f.morphisms.push((a, b));
            }
            self.punct(";")?;
        }
        Ok(f)
    }

    fn presheaf_body(&mut self, category: String) -> PResult<PresheafDecl> {
        let mut p = PresheafDecl {
            category,
            entries: Vec::new(),
        };
        self.punct("{")?;
        while !self.eat_punct("}") {
            let (x, _) = self.name()?;
            self.punct(":")?;
            if self.eat_punct("{") {
                let mut elems = Vec::new();
                if !self.at_punct("}") {
                    loop {
                        elems.push(self.name()?.0);
                        if !self.eat_punct(",") {
                            break;
                        }
                    }
                }
                self.punct("}")?;
                p.entries.push(PresheafEntry::Set(x, elems));
            } else {
                let mut pairs = Vec::new();
                if !self.at_punct(";") {
                    loop {
                        let (a, _) = self.name()?;
                        self.punct("=>")?;
                        let (b, _) = self.name()?;
                        pairs.push((a, b));
                        if !self.eat_punct(",") {
                            break;
                        }
                    }
                }
                p.entries.push(PresheafEntry::Map(x, pairs));
            }
            self.punct(";")?;
        }
        Ok(p)
    }
}

fn duplicate(span: Span, name: String) -> DslError {
    DslError::DuplicateName {
        line: span.line,
        col: span.col,
        name,
    }
}

fn unknown(span: Span, what: &str, name: String) -> DslError {
    DslError::UnknownReference {
        line: span.line,
        col: span.col,
        what: what.into(),
        name,
    }
}

/// Top-level names must be declared before they are used.
fn check_references(doc: &Document, decl: &Decl) -> Result<(), DslError> {
    let refs: Vec<&String> = match &decl.body {
        Body::Category(_) => vec![],
        Body::Pattern(p) => vec![&p.category],
        Body::Builtin(b) => b
            .args
            .iter()
            .filter_map(|a| match a {
                Arg::Name(n) => Some(n),
                Arg::Int(_) => None,
            })
            .chain(&b.on)
            .collect(),
        Body::Functor(f) => vec![&f.source, &f.target],
        Body::Presheaf(p) => vec![&p.category],
    };
    match refs.into_iter().find(|r| doc.get(r).is_none()) {
        Some(r) => Err(unknown(decl.span, "declaration", r.clone())),
        None => Ok(()),
    }
}
