use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Fraction;
use crate::error::{Error, Result};

/// Finite simple continued fraction `[a0; a1, ..., ak]` in canonical form:
/// `a0 >= 0`, `ai >= 1`, and `ak >= 2` whenever `k >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    quotients: Vec<BigInt>,
}

impl ContinuedFraction {
    /// Validates the canonical form.
    pub fn new(quotients: Vec<BigInt>) -> Result<Self> {
        let err = |msg: &str| Err(Error::InvalidContinuedFraction(msg.to_string()));
        let Some(first) = quotients.first() else {
            return err("empty quotient list");
        };
        if first.is_negative() {
            return err("leading quotient must be nonnegative");
        }
        if quotients[1..].iter().any(|a| !a.is_positive()) {
            return err("partial quotients must be positive");
        }
        if quotients.len() > 1 && quotients.last().is_some_and(|a| a.is_one()) {
            return err("last quotient must be at least 2");
        }
        Ok(Self { quotients })
    }

    pub fn quotients(&self) -> &[BigInt] {
        &self.quotients
    }

    /// Euclidean algorithm on a nonnegative fraction.
    pub fn from_fraction(x: &Fraction) -> Result<Self> {
        if x.is_negative() {
            return Err(Error::NegativeInput(x.clone()));
        }
        let mut quotients = Vec::new();
        let (mut a, mut b) = (x.num().clone(), x.den().clone());
        while !b.is_zero() {
            let (q, r) = a.div_rem(&b);
            quotients.push(q);
            a = b;
            b = r;
        }
        // The Euclidean algorithm already ends in a quotient >= 2 unless the
        // expansion has a single term.
        Ok(Self { quotients })
    }

    pub fn to_fraction(&self) -> Fraction {
        let mut num = BigInt::one();
        let mut den = BigInt::zero();
        for a in self.quotients.iter().rev() {
            let next = a * &num + &den;
            den = num;
            num = next;
        }
        Fraction::new(num, den).expect("convergent denominators are positive")
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.quotients[0])?;
        for (i, a) in self.quotients[1..].iter().enumerate() {
            write!(f, "{}{}", if i == 0 { "; " } else { ", " }, a)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cf(q: &[i64]) -> ContinuedFraction {
        ContinuedFraction::new(q.iter().map(|&a| BigInt::from(a)).collect()).unwrap()
    }

    fn f(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            ContinuedFraction::from_fraction(&f(2, 5)).unwrap(),
            cf(&[0, 2, 2])
        );
        assert_eq!(
            ContinuedFraction::from_fraction(&f(1, 3)).unwrap(),
            cf(&[0, 3])
        );
        assert_eq!(cf(&[0, 2, 2]).to_fraction(), f(2, 5));
        assert_eq!(
            ContinuedFraction::from_fraction(&f(1, 1)).unwrap(),
            cf(&[1])
        );
        assert_eq!(
            ContinuedFraction::from_fraction(&f(0, 1)).unwrap(),
            cf(&[0])
        );
        assert_eq!(cf(&[0, 2, 2]).to_string(), "[0; 2, 2]");
    }

    #[test]
    fn rejects_noncanonical() {
        let raw = |q: &[i64]| ContinuedFraction::new(q.iter().map(|&a| BigInt::from(a)).collect());
        assert!(raw(&[0, 2, 1]).is_err());
        assert!(raw(&[-1, 2]).is_err());
        assert!(raw(&[0, 0, 2]).is_err());
        assert!(raw(&[]).is_err());
        assert!(raw(&[1]).is_ok());
        assert!(ContinuedFraction::from_fraction(&f(-1, 2)).is_err());
    }

    proptest! {
        #[test]
        fn fraction_round_trip(n in 0i64..100_000, d in 1i64..100_000) {
            let x = f(n, d);
            let c = ContinuedFraction::from_fraction(&x).unwrap();
            prop_assert!(ContinuedFraction::new(c.quotients().to_vec()).is_ok());
            prop_assert_eq!(c.to_fraction(), x);
        }

        #[test]
        fn quotient_round_trip(a0 in 0i64..5, rest in prop::collection::vec(1i64..9, 0..8), last in 2i64..9) {
            let mut q = vec![a0];
            q.extend(rest);
            q.push(last);
            let c = cf(&q);
            prop_assert_eq!(ContinuedFraction::from_fraction(&c.to_fraction()).unwrap(), c);
        }
    }
}
