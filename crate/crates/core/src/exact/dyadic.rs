use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Fraction;
use crate::error::{Error, Result};

/// `m / 2^n` in lowest terms: `m` is odd unless `n == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    m: BigInt,
    n: u32,
}

impl DyadicRational {
    pub fn new(m: impl Into<BigInt>, n: u32) -> Self {
        let mut m = m.into();
        let mut n = n;
        if m.is_zero() {
            return Self { m, n: 0 };
        }
        while n > 0 && m.is_even() {
            m >>= 1;
            n -= 1;
        }
        Self { m, n }
    }

    pub fn from_integer(m: impl Into<BigInt>) -> Self {
        Self { m: m.into(), n: 0 }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> u32 {
        self.n
    }

    /// Exact conversion; fails only if the denominator is not a power of two.
    pub fn try_from_fraction(x: &Fraction) -> Result<Self> {
        let den = x.den();
        let bits = den.bits();
        if bits == 0 || (den - BigInt::one()) & den != BigInt::zero() {
            return Err(Error::Parse {
                kind: "dyadic rational",
                token: x.to_string(),
            });
        }
        Ok(Self::new(x.num().clone(), (bits - 1) as u32))
    }

    pub fn to_fraction(&self) -> Fraction {
        Fraction::new(self.m.clone(), BigInt::one() << self.n).expect("power of two is nonzero")
    }

    /// `(x + y) / 2`.
    pub fn midpoint(&self, other: &Self) -> Self {
        let n = self.n.max(other.n);
        let a = &self.m << (n - self.n);
        let b = &other.m << (n - other.n);
        Self::new(a + b, n + 1)
    }

    /// Binary digits after the point, most significant first, for values in `[0, 1)`.
    pub fn fractional_bits(&self) -> Vec<bool> {
        let (_, r) = self.m.div_mod_floor(&(BigInt::one() << self.n));
        (0..self.n).rev().map(|i| r.bit(i as u64)).collect()
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.n.max(other.n);
        (&self.m << (n - self.n)).cmp(&(&other.m << (n - other.n)))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.m, self.n)
    }
}

impl fmt::Debug for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for DyadicRational {
    type Err = Error;

    /// Accepts `m/2^n`, `m` or a plain fraction whose denominator is a power of two.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            kind: "dyadic rational",
            token: s.to_string(),
        };
        let t = s.trim();
        if let Some((m, e)) = t.split_once("/2^") {
            let m: BigInt = m.trim().parse().map_err(|_| bad())?;
            let n: u32 = e.trim().parse().map_err(|_| bad())?;
            return Ok(Self::new(m, n));
        }
        let x: Fraction = t.parse().map_err(|_| bad())?;
        Self::try_from_fraction(&x).map_err(|_| bad())
    }
}
