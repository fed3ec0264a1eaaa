//! Finite-category engine for cartesian patterns.
//!
//! Categories are materialised as tables ([`fincat`]); set-valued functors,
//! colimits and Kan extensions live in [`kan`]. On top of that sit algebraic
//! patterns and their Segal monoids ([`patterns`]), a library of standard
//! patterns truncated at a chosen arity ([`stdlib`]), free algebras and
//! extendability ([`freealg`]), Day convolution ([`day`]) and Morita
//! equivalences ([`morita`]).

pub mod day;
pub mod error;
pub mod fincat;
pub mod freealg;
pub mod kan;
pub mod morita;
pub mod patterns;
pub mod report;
pub mod stdlib;
#[cfg(feature = "testing")]
pub mod testing;
mod unionfind;

pub use error::{Error, Result};
pub use fincat::{FinCat, FinFunctor, FinGroupoid, MorId, ObjId};
pub use kan::SetFunctor;
pub use report::Report;
pub use unionfind::UnionFind;
