//! Exceptional slopes on the projective plane: the Drezet-Le Potier function
//! on dyadic rationals, its agreement with the Springborn mediant, and the
//! numerical invariants of the bundle attached to a slope.

use std::collections::{BTreeSet, HashMap};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{DyadicRational, Fraction};
use crate::farey::question_mark_of_word;
use crate::markov::{MarkovTree, TreePosition};

/// Value at the dyadic midpoint from the values `x1 = p1/q1`, `x2 = p2/q2`
/// at its two neighbours:
/// `(x1 + x2 + (q1^-2 - q2^-2) / (x1 - x2 + 3)) / 2`.
pub fn dlp_midpoint(x1: &Fraction, x2: &Fraction) -> Result<Fraction> {
    let q1sq = x1.den() * x1.den();
    let q2sq = x2.den() * x2.den();
    let inv_diff = Fraction::new(&q2sq - &q1sq, &q1sq * &q2sq)?;
    let shift = x1 - x2 + Fraction::from_integer(3);
    if shift.is_zero() {
        return Err(Error::DegenerateIdentity);
    }
    let sum = x1 + x2 + inv_diff / shift;
    Ok(sum * Fraction::half())
}

/// Split `x` as `n + r` with `r` in `[0, 1)`.
fn split_integer_part(x: &DyadicRational) -> (BigInt, DyadicRational) {
    let scale = BigInt::one() << x.exponent();
    let (n, r) = x.numerator().div_mod_floor(&scale);
    (n, DyadicRational::new(r, x.exponent()))
}

/// `epsilon(x)` on the whole dyadic line, using `epsilon(x + n) = epsilon(x) + n`
/// and descending the dyadic tree of `[0, 1]` from `epsilon(0) = 0`, `epsilon(1) = 1`.
pub fn epsilon(x: &DyadicRational) -> Fraction {
    let (n, r) = split_integer_part(x);
    let bits = r.fractional_bits();
    let mut lo = Fraction::zero();
    let mut hi = Fraction::one();
    let mut value = Fraction::zero();
    for (i, bit) in bits.iter().enumerate() {
        let mid = dlp_midpoint(&lo, &hi).expect("neighbouring slopes differ by less than 3");
        if i + 1 == bits.len() {
            value = mid;
            break;
        }
        if *bit {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    value + Fraction::from_integer(n)
}

/// Memoized `epsilon` over the dyadic tree of `[0, 1]`; safe to share across threads.
#[derive(Debug, Default)]
pub struct EpsilonTable {
    memo: RwLock<HashMap<DyadicRational, Fraction>>,
}

impl EpsilonTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, x: &DyadicRational) -> Fraction {
        let (n, r) = split_integer_part(x);
        let shift = Fraction::from_integer(n);
        if r.exponent() == 0 {
            return shift;
        }
        if let Some(v) = self.memo.read().expect("poisoned").get(&r) {
            return v + &shift;
        }
        // Neighbours at the same level: (m-1)/2^k and (m+1)/2^k, both coarser.
        let m = r.numerator();
        let k = r.exponent();
        let left = self.get(&DyadicRational::new(m - 1, k));
        let right = self.get(&DyadicRational::new(m + 1, k));
        let v = dlp_midpoint(&left, &right).expect("neighbouring slopes differ by less than 3");
        self.memo.write().expect("poisoned").insert(r, v.clone());
        v + &shift
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Both sides of the identity between the dyadic recursion and the Springborn
/// mediant, for neighbouring slopes `f1 < f2`.
pub fn identity_sides(f1: &Fraction, f2: &Fraction) -> Result<(Fraction, Fraction)> {
    let lhs = dlp_midpoint(f1, f2)?;
    let (p1, q1, p2, q2) = (f1.num(), f1.den(), f2.num(), f2.den());
    let rhs = Fraction::new(p1 * q1 + p2 * q2, q1 * q1 + q2 * q2)?;
    Ok((lhs, rhs))
}

pub fn identity_check(f1: &Fraction, f2: &Fraction) -> Result<bool> {
    let (lhs, rhs) = identity_sides(f1, f2)?;
    Ok(lhs == rhs)
}

/// Largest depth accepted by [`set_equivalence`].
pub const SET_EQUIVALENCE_MAX_DEPTH: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub depth: u32,
    /// `{epsilon(m / 2^n) : n <= depth}`.
    pub epsilon_values: BTreeSet<Fraction>,
    /// Seeds `0/1`, `1/1` and the unit Springborn tree down to `depth - 1`.
    pub tree_values: BTreeSet<Fraction>,
    /// Vertices whose value differs from epsilon at the matching dyadic point.
    pub vertex_mismatches: Vec<String>,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.epsilon_values == self.tree_values && self.vertex_mismatches.is_empty()
    }
}

/// Compare the image of epsilon on dyadics of level at most `depth` with the
/// unit Springborn tree of the same size, as sets and vertex by vertex
/// (word `w` against the dyadic point `?(w)`).
pub fn set_equivalence(depth: u32) -> Result<EquivalenceReport> {
    if depth > SET_EQUIVALENCE_MAX_DEPTH {
        return Err(Error::DepthLimit {
            depth,
            max: SET_EQUIVALENCE_MAX_DEPTH,
        });
    }
    let table = EpsilonTable::new();
    let epsilon_values: BTreeSet<Fraction> = (0..=(1u64 << depth))
        .map(|m| table.get(&DyadicRational::new(m, depth)))
        .collect();

    let tree = MarkovTree::unit();
    let (lo, hi) = tree.seeds();
    let mut tree_values = BTreeSet::from([lo.clone(), hi.clone()]);
    let mut vertex_mismatches = Vec::new();
    if depth > 0 {
        for v in tree.enumerate(depth - 1) {
            let eps = table.get(&question_mark_of_word(&v.word));
            if eps != v.triple.f3 {
                vertex_mismatches.push(format!(
                    "{}: tree {} vs epsilon {}",
                    v.word, v.triple.f3, eps
                ));
            }
            tree_values.insert(v.triple.f3);
        }
    }
    Ok(EquivalenceReport {
        depth,
        epsilon_values,
        tree_values,
        vertex_mismatches,
    })
}

/// `x = n + sign * reduced` with `reduced` in `[0, 1/2]`; the sign is `+1`
/// when `reduced` is `0` or `1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeNormalization {
    pub n: BigInt,
    pub sign: i8,
    pub reduced: Fraction,
}

impl SlopeNormalization {
    pub fn reconstruct(&self) -> Fraction {
        let r = if self.sign < 0 {
            -&self.reduced
        } else {
            self.reduced.clone()
        };
        Fraction::from_integer(self.n.clone()) + r
    }
}

impl std::fmt::Display for SlopeNormalization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let op = if self.sign < 0 { '-' } else { '+' };
        write!(f, "{} {} {}", self.n, op, self.reduced)
    }
}

pub fn normalize_slope(x: &Fraction) -> SlopeNormalization {
    let n = x.floor();
    let frac = x - &Fraction::from_integer(n.clone());
    if frac <= Fraction::half() {
        SlopeNormalization {
            n,
            sign: 1,
            reduced: frac,
        }
    } else {
        SlopeNormalization {
            n: n + 1,
            sign: -1,
            reduced: Fraction::one() - frac,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeDecision {
    pub slope: Fraction,
    pub normalization: SlopeNormalization,
    /// Address of the normalized slope in the reduced Markov tree, when it is one.
    pub witness: Option<TreePosition>,
}

impl SlopeDecision {
    pub fn is_exceptional(&self) -> bool {
        self.witness.is_some()
    }
}

/// Membership in the set of Markov fractions, which is the set of exceptional slopes.
pub fn is_exceptional_slope(x: &Fraction) -> SlopeDecision {
    let normalization = normalize_slope(x);
    let witness = MarkovTree::reduced().locate(&normalization.reduced);
    SlopeDecision {
        slope: x.clone(),
        normalization,
        witness,
    }
}

/// Rank, Chern classes and Markov form of the exceptional bundle with
/// reduced slope `p/q` in `[0, 1/2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleInvariants {
    pub rank: BigInt,
    pub c1: BigInt,
    /// `(p^2 + 1) / q`
    pub s: BigInt,
    /// `(q - 1)(s + 1) / 2`
    pub c2: BigInt,
    /// Coefficients of `q x^2 + (3q - 2p) xy + (s - 3p) y^2`.
    pub form: [BigInt; 3],
}

impl BundleInvariants {
    pub fn discriminant(&self) -> BigInt {
        let [a, b, c] = &self.form;
        b * b - BigInt::from(4) * a * c
    }

    /// `gcd(A, B, C)`; not always 1 (rank 2 gives content 2).
    pub fn form_content(&self) -> BigInt {
        let [a, b, c] = &self.form;
        a.gcd(b).gcd(c)
    }
}

/// Invariants of the exceptional bundle with slope `x`. The slope is first
/// normalized into `[0, 1/2]`; the normalization is returned alongside.
pub fn bundle_invariants(x: &Fraction) -> Result<(SlopeNormalization, BundleInvariants)> {
    let decision = is_exceptional_slope(x);
    if !decision.is_exceptional() {
        return Err(Error::NotExceptional(x.clone()));
    }
    let r = &decision.normalization.reduced;
    let (p, q) = (r.num().clone(), r.den().clone());
    let (s, rem) = (&p * &p + 1u32).div_rem(&q);
    debug_assert!(rem.is_zero());
    let c2 = (&q - 1) * (&s + 1) / 2;
    let three = BigInt::from(3);
    let form = [
        q.clone(),
        &three * &q - BigInt::from(2) * &p,
        &s - &three * &p,
    ];
    Ok((
        decision.normalization,
        BundleInvariants {
            rank: q,
            c1: p,
            s,
            c2,
            form,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    fn dy(m: i64, n: u32) -> DyadicRational {
        DyadicRational::new(m, n)
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&dy(0, 0)), f(0, 1));
        assert_eq!(epsilon(&dy(1, 0)), f(1, 1));
        assert_eq!(epsilon(&dy(1, 1)), f(1, 2));
        assert_eq!(epsilon(&dy(1, 2)), f(2, 5));
        assert_eq!(epsilon(&dy(3, 2)), f(3, 5));
    }

    #[test]
    fn epsilon_symmetries() {
        let table = EpsilonTable::new();
        for k in 0..7u32 {
            for m in -(3i64 << k)..=(3i64 << k) {
                let x = dy(m, k);
                let e = epsilon(&x);
                assert_eq!(table.get(&x), e);
                assert_eq!(epsilon(&dy(-m, k)), -&e, "oddness at {x}");
                assert_eq!(
                    epsilon(&dy(m + (5 << k), k)),
                    &e + &f(5, 1),
                    "translation at {x}"
                );
            }
        }
        assert!(!table.is_empty());
    }

    #[test]
    fn identity_examples() {
        assert_eq!(
            identity_sides(&f(0, 1), &f(1, 2)).unwrap(),
            (f(2, 5), f(2, 5))
        );
        assert_eq!(
            identity_sides(&f(2, 5), &f(1, 2)).unwrap(),
            (f(12, 29), f(12, 29))
        );
        assert_eq!(
            identity_sides(&f(0, 1), &f(1, 1)).unwrap(),
            (f(1, 2), f(1, 2))
        );
        // not neighbours: the two sides differ
        assert!(!identity_check(&f(0, 1), &f(1, 3)).unwrap());
        assert_eq!(
            identity_check(&f(0, 1), &f(3, 1)),
            Err(Error::DegenerateIdentity)
        );
    }

    #[test]
    fn set_equivalence_small() {
        let r = set_equivalence(1).unwrap();
        assert_eq!(
            r.epsilon_values,
            BTreeSet::from([f(0, 1), f(1, 2), f(1, 1)])
        );
        assert!(r.holds());
        let r = set_equivalence(2).unwrap();
        assert_eq!(
            r.epsilon_values,
            BTreeSet::from([f(0, 1), f(2, 5), f(1, 2), f(3, 5), f(1, 1)])
        );
        assert!(r.holds());
        let r = set_equivalence(8).unwrap();
        assert_eq!(r.epsilon_values.len(), 257);
        assert!(r.holds());
        assert!(set_equivalence(13).is_err());
    }

    #[test]
    fn normalization_examples() {
        let n = normalize_slope(&f(2, 5));
        assert_eq!(
            (n.n.clone(), n.sign, n.reduced.clone()),
            (BigInt::zero(), 1, f(2, 5))
        );
        let n = normalize_slope(&f(3, 5));
        assert_eq!(
            (n.n.clone(), n.sign, n.reduced.clone()),
            (BigInt::one(), -1, f(2, 5))
        );
        let n = normalize_slope(&f(-7, 5));
        assert_eq!(
            (n.n.clone(), n.sign, n.reduced.clone()),
            (BigInt::from(-1), -1, f(2, 5))
        );
        assert_eq!(n.reconstruct(), f(-7, 5));
        assert_eq!(normalize_slope(&f(5, 2)).sign, 1);
        assert_eq!(normalize_slope(&f(-3, 1)).reduced, f(0, 1));
    }

    #[test]
    fn membership_examples() {
        let d = is_exceptional_slope(&f(13, 34));
        assert!(d.is_exceptional());
        assert_eq!(d.witness.unwrap().to_string(), "LL");
        assert!(!is_exceptional_slope(&f(1, 3)).is_exceptional());
        assert!(is_exceptional_slope(&f(8, 5)).is_exceptional());
        assert!(is_exceptional_slope(&f(-4, 1)).is_exceptional());
        assert!(is_exceptional_slope(&f(7, 2)).is_exceptional());
        assert!(is_exceptional_slope(&f(15571, 37666)).is_exceptional());
    }

    #[test]
    fn invariant_examples() {
        let (_, b) = bundle_invariants(&f(0, 1)).unwrap();
        assert_eq!(
            (b.rank.clone(), b.c1.clone(), b.s.clone(), b.c2.clone()),
            (1.into(), 0.into(), 1.into(), 0.into())
        );
        assert_eq!(b.form, [1.into(), 3.into(), 1.into()]);
        assert_eq!(b.discriminant(), BigInt::from(5));
        let (_, b) = bundle_invariants(&f(2, 5)).unwrap();
        assert_eq!((b.s.clone(), b.c2.clone()), (1.into(), 4.into()));
        assert_eq!(b.form, [5.into(), 11.into(), (-5).into()]);
        assert_eq!(b.discriminant(), BigInt::from(221));
        let (_, b) = bundle_invariants(&f(1, 2)).unwrap();
        assert_eq!(b.form, [2.into(), 4.into(), (-2).into()]);
        assert_eq!(b.discriminant(), BigInt::from(32));
        assert_eq!(b.form_content(), BigInt::from(2));
        let (_, b) = bundle_invariants(&f(13, 34)).unwrap();
        assert_eq!((b.s.clone(), b.c2.clone()), (5.into(), 99.into()));
        assert_eq!(b.form, [34.into(), 76.into(), (-34).into()]);
        let (norm, b) = bundle_invariants(&f(3, 5)).unwrap();
        assert_eq!(norm.sign, -1);
        assert_eq!(b.rank, BigInt::from(5));
        assert_eq!(
            bundle_invariants(&f(1, 3)),
            Err(Error::NotExceptional(f(1, 3)))
        );
    }
}
