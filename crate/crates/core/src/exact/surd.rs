use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::isqrt::{exact_sqrt, isqrt};
use super::Fraction;
use crate::error::{Error, Result};

/// Trial division for square factors covers primes below this bound. Radicands
/// below its cube are canonicalized completely.
const SQUARE_FACTOR_PRIME_BOUND: u32 = 1 << 16;

/// The quadratic irrational `(a + b*sqrt(d)) / c`.
///
/// Canonical form: `c > 0`, `gcd(a, b, c) = 1`, and square factors of `d`
/// are moved into `b` (completely for `d < 2^48`, for primes below `2^16`
/// otherwise; a perfect-square cofactor is always detected). A value with
/// `b = 0` is rational; its radicand is kept as given, or set to 0 when the
/// input radicand was a perfect square.
///
/// Equality and ordering are numeric and exact for any pair of radicands.
#[derive(Clone)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigUint,
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SQUARE_FACTOR_PRIME_BOUND as usize;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i < n {
            if sieve[i] {
                (i * i..n).step_by(i).for_each(|j| sieve[j] = false);
            }
            i += 1;
        }
        (0..n).filter(|&i| sieve[i]).map(|i| i as u32).collect()
    })
}

/// Split `d` as `s^2 * r`, returning `(s, r)`.
fn extract_square_part(d: &BigUint) -> (BigUint, BigUint) {
    let mut s = BigUint::one();
    let mut r = d.clone();
    if r.is_zero() {
        return (s, r);
    }
    for &p in small_primes() {
        let pp = u64::from(p) * u64::from(p);
        if BigUint::from(pp) > r {
            break;
        }
        while (&r % pp).is_zero() {
            r /= pp;
            s *= p;
        }
    }
    if let Some(t) = exact_sqrt(&r) {
        s *= t;
        r = BigUint::one();
    }
    (s, r)
}

/// Sign of `x + y*sqrt(d)`.
fn sign_with_root(x: &BigInt, y: &BigInt, d: &BigUint) -> Ordering {
    let sx = x.sign_ord();
    let sy = if d.is_zero() {
        Ordering::Equal
    } else {
        y.sign_ord()
    };
    if sy == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal || sx == sy {
        return sy;
    }
    let lhs = x * x;
    let rhs = y * y * BigInt::from(d.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `x + y*sqrt(d1) + z*sqrt(d2)`.
fn sign_with_two_roots(x: &BigInt, y: &BigInt, d1: &BigUint, z: &BigInt, d2: &BigUint) -> Ordering {
    let su = sign_with_root(x, y, d1);
    let sv = if d2.is_zero() {
        Ordering::Equal
    } else {
        z.sign_ord()
    };
    if sv == Ordering::Equal {
        return su;
    }
    if su == Ordering::Equal || su == sv {
        return sv;
    }
    // |x + y sqrt(d1)|^2 - z^2 d2 = (x^2 + y^2 d1 - z^2 d2) + 2xy sqrt(d1)
    let d1i = BigInt::from(d1.clone());
    let d2i = BigInt::from(d2.clone());
    let rational = x * x + y * y * &d1i - z * z * &d2i;
    let irrational = BigInt::from(2) * x * y;
    match sign_with_root(&rational, &irrational, d1) {
        Ordering::Greater => su,
        Ordering::Less => sv,
        Ordering::Equal => Ordering::Equal,
    }
}

trait SignOrd {
    fn sign_ord(&self) -> Ordering;
}

impl SignOrd for BigInt {
    fn sign_ord(&self) -> Ordering {
        match self.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}

impl QuadraticSurd {
    /// Canonicalizing constructor for `(a + b*sqrt(d)) / c`.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigUint>,
    ) -> Result<Self> {
        let (mut a, mut b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (s, r) = extract_square_part(&d);
        let d = if r.is_one() || r.is_zero() {
            // Perfect square: fold the root into the rational part.
            a += &b * BigInt::from(s) * BigInt::from(r.clone());
            b = BigInt::zero();
            BigUint::zero()
        } else {
            b *= BigInt::from(s);
            r
        };
        Ok(Self::with_radicand(a, b, c, d))
    }

    /// Normalizes sign and content for a radicand that is already square-free
    /// in the canonical sense.
    fn with_radicand(mut a: BigInt, mut b: BigInt, mut c: BigInt, d: BigUint) -> Self {
        debug_assert!(!c.is_zero());
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        Self { a, b, c, d }
    }

    pub fn from_fraction(x: &Fraction) -> Self {
        Self {
            a: x.num().clone(),
            b: BigInt::zero(),
            c: x.den().clone(),
            d: BigUint::zero(),
        }
    }

    pub fn rational_part(&self) -> &BigInt {
        &self.a
    }

    pub fn root_coefficient(&self) -> &BigInt {
        &self.b
    }

    pub fn denominator(&self) -> &BigInt {
        &self.c
    }

    pub fn radicand(&self) -> &BigUint {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_fraction(&self) -> Option<Fraction> {
        self.is_rational()
            .then(|| Fraction::new(self.a.clone(), self.c.clone()).expect("c > 0"))
    }

    pub fn neg(&self) -> Self {
        Self {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    pub fn add_fraction(&self, x: &Fraction) -> Self {
        // (a + b r)/c + p/q = (aq + pc + bq r) / (cq)
        let (p, q) = (x.num(), x.den());
        Self::with_radicand(
            &self.a * q + p * &self.c,
            &self.b * q,
            &self.c * q,
            self.d.clone(),
        )
    }

    pub fn mul_fraction(&self, x: &Fraction) -> Self {
        let (p, q) = (x.num(), x.den());
        Self::with_radicand(&self.a * p, &self.b * p, &self.c * q, self.d.clone())
    }

    fn compatible_radicand(&self, other: &Self) -> Result<BigUint> {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, true) => Ok(BigUint::zero()),
            (true, false) => Ok(other.d.clone()),
            (false, true) => Ok(self.d.clone()),
            (false, false) if self.d == other.d => Ok(self.d.clone()),
            _ => Err(Error::RadicandMismatch(
                self.d.to_string(),
                other.d.to_string(),
            )),
        }
    }

    /// Exact sum; defined only when both radicands agree (or one side is rational).
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.compatible_radicand(other)?;
        Ok(Self::with_radicand(
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    /// Exact comparison with a rational.
    pub fn cmp_fraction(&self, x: &Fraction) -> Ordering {
        let (r, s) = (x.num(), x.den());
        let lhs = &self.a * s - r * &self.c;
        sign_with_root(&lhs, &(&self.b * s), &self.d)
    }

    /// Rational bounds `lo <= self <= hi` with `hi - lo < 10^-digits`.
    pub fn enclose(&self, digits: u32) -> (Fraction, Fraction) {
        enclose_parts(&self.a, &self.b, &self.c, &self.d, digits)
    }

    /// Lossy value for display and plotting.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclose(18);
        (lo.to_f64() + hi.to_f64()) / 2.0
    }
}

/// Enclosure of `(a + b*sqrt(d)) / c` for `c > 0` without requiring canonical form.
///
/// With `n = 2|b|*10^digits`, `s = isqrt(d n^2)` brackets `sqrt(d)` in
/// `[s/n, (s+1)/n]`, so the width is `1 / (2c * 10^digits)`. Scaling `n` by
/// powers of ten nests the intervals.
pub(crate) fn enclose_parts(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    d: &BigUint,
    digits: u32,
) -> (Fraction, Fraction) {
    debug_assert!(c.is_positive());
    if b.is_zero() || d.is_zero() {
        let x = Fraction::new(a.clone(), c.clone()).expect("c > 0");
        return (x.clone(), x);
    }
    let n = BigUint::from(2u32) * b.magnitude() * BigUint::from(10u32).pow(digits);
    let s = isqrt(&(d * &n * &n));
    let n = BigInt::from(n);
    let s = BigInt::from(s);
    let den = c * &n;
    let base = a * &n;
    let lo_root = b * &s;
    let hi_root = b * (&s + 1);
    let (lo, hi) = if b.is_positive() {
        (base.clone() + lo_root, base + hi_root)
    } else {
        (base.clone() + hi_root, base + lo_root)
    };
    (
        Fraction::new(lo, den.clone()).expect("den > 0"),
        Fraction::new(hi, den).expect("den > 0"),
    )
}

impl PartialEq for QuadraticSurd {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QuadraticSurd {}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        // (a1 + b1 r1)/c1 - (a2 + b2 r2)/c2, scaled by c1 c2 > 0
        let x = &self.a * &other.c - &other.a * &self.c;
        let y = &self.b * &other.c;
        let z = -(&other.b * &self.c);
        if other.b.is_zero() {
            sign_with_root(&x, &y, &self.d)
        } else if self.b.is_zero() {
            sign_with_root(&x, &z, &other.d)
        } else if self.d == other.d {
            sign_with_root(&x, &(y + z), &self.d)
        } else {
            sign_with_two_roots(&x, &y, &self.d, &z, &other.d)
        }
    }
}

impl PartialEq<Fraction> for QuadraticSurd {
    fn eq(&self, other: &Fraction) -> bool {
        self.cmp_fraction(other) == Ordering::Equal
    }
}

impl PartialOrd<Fraction> for QuadraticSurd {
    fn partial_cmp(&self, other: &Fraction) -> Option<Ordering> {
        Some(self.cmp_fraction(other))
    }
}

impl fmt::Display for QuadraticSurd {
    /// `(a+b*sqrt(D))/c`, with the sign of `b` written as the operator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}*sqrt({}))/{}",
            self.a,
            op,
            self.b.magnitude(),
            self.d,
            self.c
        )
    }
}

impl fmt::Debug for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuadraticSurd {
    type Err = Error;

    /// Parses the `Display` form `(a+b*sqrt(D))/c` (also `(a-b*sqrt(D))/c`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            kind: "quadratic surd",
            token: s.to_string(),
        };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t.strip_prefix('(').ok_or_else(bad)?;
        let (body, c) = inner.split_once(")/").ok_or_else(bad)?;
        let c: BigInt = c.parse().map_err(|_| bad())?;
        let (head, d) = body.split_once("*sqrt(").ok_or_else(bad)?;
        let d: BigUint = d
            .strip_suffix(')')
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        // split `head` into a and a signed b at the last +/- that is not leading
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, ch)| ch == '+' || ch == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let a: BigInt = head[..split].parse().map_err(|_| bad())?;
        let b: BigInt = head[split..]
            .trim_start_matches('+')
            .parse()
            .map_err(|_| bad())?;
        Self::new(a, b, c, d)
    }
}

/// `log10` magnitude estimate, used to size guard digits.
pub(crate) fn decimal_digits(n: &BigUint) -> u32 {
    ((n.bits() as f64) * std::f64::consts::LOG10_2)
        .ceil()
        .to_u32()
        .unwrap_or(u32::MAX)
}
