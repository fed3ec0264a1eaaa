//! The workspace description language.
//!
//! ```text
//! # a two-object poset
//! category C { objects: a, b; mor f: a -> b; }
//! pattern F = builtin f_star(3);
//! pattern P from C { inert: ; active: f; elementary: b; size: a => 0, b => 1, f => []; }
//! functor G: C -> C { obj a => a; obj b => b; mor f => f; }
//! presheaf X on C { a: {p, q}; b: {r}; f: p => r, q => r; }
//! morphism K = builtin cut(3);
//! monoid M = builtin chain(2) on F;
//! ```
//!
//! Identities are implicit and named `id_<object>`. Names that are not plain
//! identifiers are written in double quotes, as in `"<1>"`.

pub(crate) mod lexer;
mod parser;
mod print;

use thiserror::Error;

pub use parser::parse_dsl;
pub use print::{print_dsl, quote_name};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at {line}:{col}: expected {} but found {found}", .expected.join(" or "))]
    Syntax {
        line: usize,
        col: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("{line}:{col}: `{name}` is already defined")]
    DuplicateName { line: usize, col: usize, name: String },
    #[error("{line}:{col}: unknown {what} `{name}`")]
    UnknownReference {
        line: usize,
        col: usize,
        what: String,
        name: String,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub decls: Vec<Decl>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.name == name)
    }
}

/// A top-level declaration. Equality ignores the source position.
#[derive(Clone, Debug, Eq)]
pub struct Decl {
    pub name: String,
    pub span: Span,
    pub body: Body,
}

impl PartialEq for Decl {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.body == other.body
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Category(CategoryDecl),
    Pattern(PatternDecl),
    Builtin(BuiltinDecl),
    Functor(FunctorDecl),
    Presheaf(PresheafDecl),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategoryDecl {
    pub objects: Vec<String>,
    /// `(name, source, target)`.
    pub morphisms: Vec<(String, String, String)>,
    /// `(g, f, h)` for `g.f = h`.
    pub compositions: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PatternDecl {
    pub category: String,
    pub inert: Vec<String>,
    pub active: Vec<String>,
    pub elementary: Vec<String>,
    pub size: Vec<(String, SizeValue)>,
}

/// `a => 2` for objects, `f => [1, 0]` for morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SizeValue {
    Object(usize),
    Map(Vec<u8>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinKind {
    Pattern,
    Morphism,
    Monoid,
}

impl BuiltinKind {
    pub fn keyword(self) -> &'static str {
        match self {
            BuiltinKind::Pattern => "pattern",
            BuiltinKind::Morphism => "morphism",
            BuiltinKind::Monoid => "monoid",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Int(usize),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltinDecl {
    pub kind: BuiltinKind,
    pub family: String,
    pub args: Vec<Arg>,
    /// The pattern a monoid lives on.
    pub on: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctorDecl {
    pub source: String,
    pub target: String,
    pub objects: Vec<(String, String)>,
    pub morphisms: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresheafEntry {
    /// An object and its elements.
    Set(String, Vec<String>),
    /// A morphism and its action on elements.
    Map(String, Vec<(String, String)>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PresheafDecl {
    pub category: String,
    pub entries: Vec<PresheafEntry>,
}

/// The name `id_<o>` given to identities.
pub fn identity_name(o: &str) -> String {
    format!("id_{o}")
}
