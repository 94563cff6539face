use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};

use crate::error::Result;
use crate::exact::{Fraction, QuadraticSurd};
use crate::markov::{mu, MarkovFraction, MarkovTree};

fn discriminant(q: &BigInt) -> BigUint {
    (BigInt::from(9) * q * q - 4u32)
        .to_biguint()
        .expect("9q^2 - 4 > 0 for q >= 1")
}

/// `l(q) = 3 - sqrt(9q^2 - 4) / q`, the jump of the Springborn function at a
/// fraction with denominator `q`.
pub fn length_surd(q: &BigInt) -> QuadraticSurd {
    QuadraticSurd::new(
        BigInt::from(3) * q,
        BigInt::from(-1),
        q.clone(),
        discriminant(q),
    )
    .expect("q >= 1")
}

/// The maximal interval around a Markov fraction containing no other one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovInterval {
    pub center: Fraction,
    pub lo: QuadraticSurd,
    pub hi: QuadraticSurd,
    pub length: QuadraticSurd,
}

impl MarkovInterval {
    /// `center -+ factor * l(q) / 2`.
    pub fn scaled(&self, factor: &Fraction) -> (QuadraticSurd, QuadraticSurd) {
        let half = self.length.mul_fraction(&(factor * &Fraction::half()));
        (
            half.neg().add_fraction(&self.center),
            half.add_fraction(&self.center),
        )
    }

    /// Strictly inside, compared exactly.
    pub fn contains_interior(&self, x: &Fraction) -> bool {
        self.lo.cmp_fraction(x) == Ordering::Less && self.hi.cmp_fraction(x) == Ordering::Greater
    }
}

fn interval_around(center: &Fraction) -> MarkovInterval {
    let (p, q) = (center.num(), center.den());
    let d = discriminant(q);
    let two_p = BigInt::from(2) * p;
    let three_q = BigInt::from(3) * q;
    let two_q = BigInt::from(2) * q;
    MarkovInterval {
        center: center.clone(),
        lo: QuadraticSurd::new(&two_p - &three_q, BigInt::from(1), two_q.clone(), d.clone())
            .expect("q >= 1"),
        hi: QuadraticSurd::new(&two_p + &three_q, BigInt::from(-1), two_q, d).expect("q >= 1"),
        length: length_surd(q),
    }
}

pub fn markov_interval(f: &MarkovFraction) -> MarkovInterval {
    interval_around(&f.value)
}

/// Markov fractions `n +- r` (with `r` in the reduced tree and `q <= bound`)
/// lying strictly between `lo` and `hi`, ascending.
pub fn markov_fractions_between(
    lo: &QuadraticSurd,
    hi: &QuadraticSurd,
    bound: &BigInt,
) -> Vec<Fraction> {
    let reduced = MarkovTree::reduced().fractions_with_denominator_at_most(bound);
    let (lo_f, hi_f) = (lo.enclose(0).0.floor(), hi.enclose(0).1.ceil());
    let mut out = Vec::new();
    let mut n = lo_f;
    while n <= hi_f {
        let shift = Fraction::from_integer(n.clone());
        for r in &reduced {
            for x in [&shift + r, &shift - r] {
                if lo.cmp_fraction(&x) == Ordering::Less && hi.cmp_fraction(&x) == Ordering::Greater
                {
                    out.push(x);
                }
            }
        }
        n += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// No Markov fraction with denominator at most `bound`, other than the
/// center, lies strictly inside the interval.
pub fn interval_freeness(f: &MarkovFraction, bound: &BigInt) -> bool {
    let iv = markov_interval(f);
    markov_fractions_between(&iv.lo, &iv.hi, bound)
        .iter()
        .all(|x| x == &f.value)
}

/// First pair of centers whose intervals share interior points, if any.
/// Sorts by center and compares neighbours.
pub fn first_overlap(intervals: &[MarkovInterval]) -> Option<(Fraction, Fraction)> {
    let mut sorted: Vec<&MarkovInterval> = intervals.iter().collect();
    sorted.sort_by(|a, b| a.center.cmp(&b.center));
    for w in sorted.windows(2) {
        if w[0].center == w[1].center || w[0].hi > w[1].lo {
            return Some((w[0].center.clone(), w[1].center.clone()));
        }
    }
    None
}

/// The two Markov irrationalities bounding the plateau of the Springborn
/// function at `x`, and their Lagrange number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovIrrationality {
    pub minus: QuadraticSurd,
    pub plus: QuadraticSurd,
    pub lagrange: QuadraticSurd,
}

impl MarkovIrrationality {
    pub fn lagrange_below_three(&self) -> bool {
        self.lagrange.cmp_fraction(&Fraction::from_integer(3)) == Ordering::Less
    }
}

pub fn markov_irrationality(x: &Fraction) -> Result<MarkovIrrationality> {
    let m = mu(x)?;
    let iv = markov_interval(&m);
    let q = m.value.den();
    let lagrange =
        QuadraticSurd::new(BigInt::from(0), BigInt::from(1), q.clone(), discriminant(q))?;
    Ok(MarkovIrrationality {
        minus: iv.lo,
        plus: iv.hi,
        lagrange,
    })
}
