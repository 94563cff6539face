//! Markov fractions: the Springborn mediant tree, its agreement with the
//! Drezet-Le Potier description of exceptional slopes on the projective
//! plane, and the Diophantine quantities attached to it.
//!
//! Every value that the theory pins down exactly is computed exactly:
//! fractions are arbitrary precision rationals, interval endpoints are
//! quadratic surds compared by integer sign analysis, and sums of surds are
//! returned as rational enclosures. Only the Lyapunov estimator uses floats.

pub mod analysis;
pub mod error;
pub mod exact;
pub mod farey;
pub mod markov;
pub mod slopes;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{ContinuedFraction, DyadicRational, Fraction, QuadraticSurd};
pub use farey::{Turn, TurnWord};
pub use markov::{MarkovFraction, MarkovTree, MarkovTriple};
