use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exact::Fraction;

/// `inf b^2 |p/q - a/b|` over `a/b != p/q`, with the first `a/b` attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxConstant {
    pub value: Fraction,
    pub witness: Fraction,
}

/// Exact approximation constant of `p/q`.
///
/// For fixed `b` the best value is `b * m / q` with `m = min |pb - aq|` over
/// `a` with `a/b != p/q`, and `m >= 1`. So `b/q` bounds every later candidate
/// from below and the scan stops once `b/q` reaches the best value. Ties keep
/// the smallest `b`, then the smallest `a`.
pub fn approx_constant(f: &Fraction) -> ApproxConstant {
    let (p, q) = (f.num(), f.den());
    let mut best: Option<(Fraction, BigInt, BigInt)> = None;
    let mut b = BigInt::one();
    loop {
        if let Some((v, _, _)) = &best {
            if Fraction::new(b.clone(), q.clone()).expect("q > 0") >= *v {
                break;
            }
        }
        let pb = p * &b;
        let r = pb.mod_floor(q);
        let (m, a) = if r.is_zero() {
            // a/b = p/q is excluded; step one either way, keep the lower
            (q.clone(), &pb / q - 1)
        } else if &r + &r <= *q {
            (r.clone(), (&pb - &r) / q)
        } else {
            (q - &r, (&pb - &r) / q + 1)
        };
        let value = Fraction::new(&b * m, q.clone()).expect("q > 0");
        if best.as_ref().is_none_or(|(v, _, _)| value < *v) {
            best = Some((value, a, b.clone()));
        }
        b += 1;
    }
    let (value, a, b) = best.expect("b = 1 always yields a candidate");
    ApproxConstant {
        value,
        witness: Fraction::new(a, b).expect("b > 0"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    /// Minimum of `b^2 |x - a/b|` over `b <= 3q` and every `a` near `xb`.
    fn exhaustive(x: &Fraction) -> Fraction {
        let q = x.den().clone();
        let bmax: i64 = (&q * 3u32).try_into().unwrap();
        let mut best: Option<Fraction> = None;
        for b in 1..=bmax {
            let centre = (x * &Fraction::from_integer(b)).floor();
            for da in -2..=2 {
                let a = &centre + da;
                let y = Fraction::new(a, b).unwrap();
                if &y == x {
                    continue;
                }
                let v = (x - &y).abs() * Fraction::from_integer(b * b);
                if best.as_ref().is_none_or(|w| v < *w) {
                    best = Some(v);
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(approx_constant(&f(0, 1)).value, f(1, 1));
        assert_eq!(approx_constant(&f(1, 2)).value, f(1, 2));
        assert_eq!(approx_constant(&f(1, 2)).witness, f(0, 1));
        let c = approx_constant(&f(2, 5));
        assert_eq!(c.value, f(2, 5));
        assert!(c.value >= f(1, 3));
    }

    #[test]
    fn witness_attains_value() {
        for x in [f(5, 13), f(12, 29), f(7, 19), f(-3, 7), f(4, 1)] {
            let c = approx_constant(&x);
            let b = c.witness.den().clone();
            let v = (&x - &c.witness).abs() * Fraction::from_integer(&b * &b);
            assert_eq!(v, c.value);
            assert_ne!(c.witness, x);
        }
    }

    proptest! {
        #[test]
        fn matches_exhaustive_search(p in -60i64..60, q in 1i64..60) {
            let x = f(p, q);
            prop_assert_eq!(approx_constant(&x).value, exhaustive(&x));
        }
    }
}
