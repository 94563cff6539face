//! Diophantine analysis of Markov fractions.

mod approx;
mod interval;
mod lyapunov;
mod mcshane;

use std::fmt;

use crate::exact::Fraction;

pub use approx::{approx_constant, ApproxConstant};
pub use interval::{
    first_overlap, interval_freeness, length_surd, markov_fractions_between, markov_interval,
    markov_irrationality, MarkovInterval, MarkovIrrationality,
};
pub use lyapunov::{lyapunov_estimate, WordRule, LYAPUNOV_MAX_STEPS};
pub use mcshane::{
    mcshane_partial_sum, mcshane_partial_sums, saltus_limits, saltus_mu, MCSHANE_MAX_DEPTH,
};

/// Guaranteed rational bounds `lo <= value <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Fraction,
    pub hi: Fraction,
}

impl Enclosure {
    pub fn width(&self) -> Fraction {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Fraction {
        (&self.lo + &self.hi) * Fraction::half()
    }

    pub fn contains(&self, x: &Fraction) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
