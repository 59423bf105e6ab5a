//! Quotients by the support, fraction fields, and value groups.

mod fraction;
mod monoid;
mod quotient;

pub use fraction::{fraction_extension, Fraction, FractionExtension};
pub use monoid::{
    build_value_monoid, grothendieck_group, Difference, FormalDifferenceGroup, RankOne, ValueMonoid,
};
pub(crate) use quotient::quotient_of_checked;
pub use quotient::{lift_order, lift_valuation, quotient_quasiorder, QuotientRingView};
