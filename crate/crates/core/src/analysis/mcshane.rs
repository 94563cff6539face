use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::Enclosure;
use crate::error::{Error, Result};
use crate::exact::{decimal_digits, isqrt, Fraction};
use crate::farey::farey_node_at;
use crate::markov::MarkovTree;

/// Largest tree depth accepted by the McShane and saltus sums.
pub const MCSHANE_MAX_DEPTH: u32 = 15;

/// Integers `lo <= G * l(q) <= hi` for the grid `1/G`.
fn length_on_grid(q: &BigInt, g: &BigInt) -> (BigInt, BigInt) {
    // l(q) < 1/q^2, so below one grid step once q^2 > G
    if &(q * q) > g {
        return (BigInt::zero(), BigInt::one());
    }
    let d: BigInt = BigInt::from(9) * q * q - 4u32;
    let s = BigInt::from(isqrt(&(d * g * g).to_biguint().expect("positive")));
    let three_g = BigInt::from(3) * g;
    let lo = &three_g - (&s + 1u32).div_ceil(q);
    let hi = three_g - s.div_floor(q);
    (lo, hi)
}

/// Grid `10^-(precision + guard)` fine enough that `terms` outward roundings
/// together stay below `10^-precision`.
fn grid(precision: u32, terms: usize) -> BigInt {
    let guard = decimal_digits(&BigUint::from(terms)) + 1;
    BigInt::from(10u32).pow(precision + guard)
}

fn check_depth(depth: u32) -> Result<()> {
    if depth > MCSHANE_MAX_DEPTH {
        return Err(Error::DepthLimit {
            depth,
            max: MCSHANE_MAX_DEPTH,
        });
    }
    Ok(())
}

fn level_sum(terms: impl ParallelIterator<Item = (BigInt, BigInt)>) -> (BigInt, BigInt) {
    // integer sums, so the reduction order cannot change the result
    terms.reduce(
        || (BigInt::zero(), BigInt::zero()),
        |(a, b), (c, d)| (a + c, b + d),
    )
}

fn enclosure(lo2: BigInt, hi2: BigInt, g: &BigInt) -> Enclosure {
    let den = BigInt::from(2) * g;
    Enclosure {
        lo: Fraction::new(lo2, den.clone()).expect("den > 0"),
        hi: Fraction::new(hi2, den).expect("den > 0"),
    }
}

/// Enclosures of `(l(1) + l(2))/2 + sum l(q)` over the vertices of depth at
/// most `d`, for every `d` in `0..=max_depth`, all on one rational grid.
pub fn mcshane_partial_sums(max_depth: u32, precision: u32) -> Result<Vec<Enclosure>> {
    check_depth(max_depth)?;
    let g = grid(precision, (1usize << (max_depth + 1)) + 1);
    let (l1_lo, l1_hi) = length_on_grid(&BigInt::one(), &g);
    let (l2_lo, l2_hi) = length_on_grid(&BigInt::from(2), &g);
    // twice the sum, so the seed halves stay integral
    let mut lo2 = l1_lo + l2_lo;
    let mut hi2 = l1_hi + l2_hi;
    let mut out = Vec::with_capacity(max_depth as usize + 1);
    MarkovTree::reduced().for_each_level(max_depth, |_, level| {
        let (lo, hi) = level_sum(
            level
                .par_iter()
                .map(|v| length_on_grid(v.triple.f3.den(), &g)),
        );
        lo2 += lo * 2;
        hi2 += hi * 2;
        out.push(enclosure(lo2.clone(), hi2.clone(), &g));
    });
    Ok(out)
}

pub fn mcshane_partial_sum(depth: u32, precision: u32) -> Result<Enclosure> {
    Ok(mcshane_partial_sums(depth, precision)?
        .pop()
        .expect("depth + 1 entries"))
}

/// Twice the Heaviside weight: `2 H(x - a)` with `2 H(0) = h0`.
fn weight(x: &Fraction, a: &Fraction, h0: u32) -> u32 {
    match x.cmp(a) {
        std::cmp::Ordering::Greater => 2,
        std::cmp::Ordering::Equal => h0,
        std::cmp::Ordering::Less => 0,
    }
}

/// `-l(1)/2 + sum l(q(a/b)) H(x - a/b)` over `0/1`, `1/1` and the Farey
/// vertices of depth at most `depth`; `q(a/b)` is the denominator of the
/// Markov fraction carried by `a/b`.
fn saltus(x: &Fraction, depth: u32, precision: u32, h0: u32) -> Result<Enclosure> {
    check_depth(depth)?;
    if x.is_negative() || x > &Fraction::one() {
        return Err(Error::OutOfRange {
            value: x.clone(),
            range: "[0, 1]",
        });
    }
    let g = grid(precision, 2 * ((1usize << (depth + 1)) + 2));
    let scaled = |w: u32, (lo, hi): (BigInt, BigInt)| (lo * w, hi * w);
    let (l1_lo, l1_hi) = length_on_grid(&BigInt::one(), &g);
    let (a_lo, a_hi) = scaled(
        weight(x, &Fraction::zero(), h0),
        (l1_lo.clone(), l1_hi.clone()),
    );
    let (b_lo, b_hi) = scaled(
        weight(x, &Fraction::one(), h0),
        length_on_grid(&BigInt::from(2), &g),
    );
    let mut lo2 = a_lo + b_lo - l1_hi;
    let mut hi2 = a_hi + b_hi - l1_lo;
    MarkovTree::reduced().for_each_level(depth, |_, level| {
        let (lo, hi) = level_sum(level.par_iter().map(|v| {
            let a = farey_node_at(&v.word).value;
            match weight(x, &a, h0) {
                0 => (BigInt::zero(), BigInt::zero()),
                w => scaled(w, length_on_grid(v.triple.f3.den(), &g)),
            }
        }));
        lo2 += lo;
        hi2 += hi;
    });
    Ok(enclosure(lo2, hi2, &g))
}

/// Truncated saltus representation of the Springborn function, with
/// `H(0) = 1/2`, so jump points get the mean of the one-sided limits.
pub fn saltus_mu(x: &Fraction, depth: u32, precision: u32) -> Result<Enclosure> {
    saltus(x, depth, precision, 1)
}

/// Left and right limits of the truncated saltus sum at `x`.
pub fn saltus_limits(x: &Fraction, depth: u32, precision: u32) -> Result<(Enclosure, Enclosure)> {
    Ok((
        saltus(x, depth, precision, 0)?,
        saltus(x, depth, precision, 2)?,
    ))
}
