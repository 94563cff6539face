//! Exact number types shared by every other module.

mod contfrac;
mod dyadic;
mod fraction;
mod isqrt;
mod surd;

pub use contfrac::ContinuedFraction;
pub use dyadic::DyadicRational;
pub use fraction::{cross_determinant, farey_mediant, Fraction};
pub use isqrt::{exact_sqrt, isqrt};
pub use surd::QuadraticSurd;

pub(crate) use surd::decimal_digits;
