//! Category-valued monoids, their Grothendieck constructions, and Day
//! convolution of presheaves on their fibers.

mod bridge;
mod convolve;
mod groth;
mod monoid;

pub use bridge::{
    find_representing, monoid_algebra_bridge, unit_section, yoneda_monoid, DayPresheafFamily, Section,
    StructureMap,
};
pub use convolve::{check_yoneda_monoidal, convolution, day_convolve, yoneda, Convolution};
pub use groth::{fiberwise_op, grothendieck, Fibration};
pub use monoid::{commutative_monoid, CatMonoid, MonoidFamily, StrictCommutative};

#[cfg(test)]
mod tests;
