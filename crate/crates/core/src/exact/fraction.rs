use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A reduced arbitrary-precision rational `num/den` with `den >= 1`.
///
/// The sign lives on the numerator and zero is stored as `0/1`. Every
/// constructor reduces, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction(BigRational);

impl Fraction {
    /// Reduce `num/den` to lowest terms with a positive denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self(BigRational::new(num.into(), den)))
    }

    /// Build from parts the caller has already proven coprime with `den > 0`.
    pub(crate) fn from_coprime(num: BigInt, den: BigInt) -> Self {
        debug_assert!(den.is_positive());
        debug_assert!(num.gcd(&den).is_one());
        Self(BigRational::new_raw(num, den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn half() -> Self {
        Self::from_coprime(BigInt::one(), BigInt::from(2))
    }

    pub fn num(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn den(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self(self.0.recip()))
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    /// Lossy conversion for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for Fraction {
    fn from(r: BigRational) -> Self {
        Self(r)
    }
}

impl From<i64> for Fraction {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`; surrounding whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            kind: "fraction",
            token: s.to_string(),
        };
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        Fraction::new(n, d).map_err(|_| bad())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Fraction> for &Fraction {
            type Output = Fraction;
            fn $method(self, rhs: &Fraction) -> Fraction {
                Fraction((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Fraction> for Fraction {
            type Output = Fraction;
            fn $method(self, rhs: Fraction) -> Fraction {
                Fraction(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Fraction> for Fraction {
            type Output = Fraction;
            fn $method(self, rhs: &Fraction) -> Fraction {
                Fraction(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Division by zero panics, matching `BigRational`; use `recip` for a checked path.
forward_binop!(Div, div);

impl Neg for Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction(-self.0)
    }
}

impl Neg for &Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction(-&self.0)
    }
}

/// `|a*d - b*c|` for `a/b` and `c/d`.
pub fn cross_determinant(x: &Fraction, y: &Fraction) -> BigInt {
    (x.num() * y.den() - x.den() * y.num()).abs()
}

/// Farey mediant `(a+c)/(b+d)`, reduced.
pub fn farey_mediant(x: &Fraction, y: &Fraction) -> Fraction {
    let num = x.num() + y.num();
    let den = x.den() + y.den();
    Fraction(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let a = f(10, 26);
        assert_eq!((a.num().clone(), a.den().clone()), (5.into(), 13.into()));
        let z = f(0, 7);
        assert_eq!(z.to_string(), "0/1");
        assert_eq!(f(-4, -6).to_string(), "2/3");
        assert_eq!(f(4, -6).to_string(), "-2/3");
        assert_eq!(Fraction::new(1, 0), Err(Error::ZeroDenominator));
    }

    #[test]
    fn mediant_examples() {
        assert_eq!(farey_mediant(&f(0, 1), &f(1, 1)), f(1, 2));
        assert_eq!(farey_mediant(&f(1, 2), &f(1, 1)), f(2, 3));
        assert_eq!(farey_mediant(&f(1, 3), &f(1, 2)), f(2, 5));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("12/29".parse::<Fraction>().unwrap(), f(12, 29));
        assert_eq!(" -7/5 ".parse::<Fraction>().unwrap(), f(-7, 5));
        assert_eq!("3".parse::<Fraction>().unwrap().to_string(), "3/1");
        assert!("3/0".parse::<Fraction>().is_err());
        assert!("x/2".parse::<Fraction>().is_err());
        assert!("1/2/3".parse::<Fraction>().is_err());
    }

    #[test]
    fn floor_ceil_negative() {
        assert_eq!(f(-7, 5).floor(), BigInt::from(-2));
        assert_eq!(f(-7, 5).ceil(), BigInt::from(-1));
        assert_eq!(f(8, 5).floor(), BigInt::from(1));
    }
}
