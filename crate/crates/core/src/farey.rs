//! The Farey tree of rationals in `[0, 1]`, turn-word addresses, and
//! Minkowski's question mark function.
//!
//! The root is `1/2` with parents `0/1` and `1/1`. A left turn keeps the
//! left parent and moves toward smaller values; a right turn moves toward
//! larger ones.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{cross_determinant, farey_mediant, ContinuedFraction, DyadicRational, Fraction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Turn {
    /// Toward smaller values.
    L,
    /// Toward larger values.
    R,
}

/// A finite path from the root of a binary mediant tree.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TurnWord(Vec<Turn>);

impl TurnWord {
    pub fn new(turns: Vec<Turn>) -> Self {
        Self(turns)
    }

    pub fn root() -> Self {
        Self(Vec::new())
    }

    pub fn turns(&self) -> &[Turn] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, turn: Turn) -> Self {
        let mut turns = self.0.clone();
        turns.push(turn);
        Self(turns)
    }

    pub fn constant(turn: Turn, len: usize) -> Self {
        Self(vec![turn; len])
    }

    /// `LRLR...` of the given length.
    pub fn alternating(len: usize) -> Self {
        Self(
            (0..len)
                .map(|i| if i % 2 == 0 { Turn::L } else { Turn::R })
                .collect(),
        )
    }

    /// Every word of length `len`, in lexicographic order with `L < R`.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = TurnWord> {
        assert!(len < 64, "word length {len} too large to enumerate");
        (0u64..1 << len).map(move |bits| {
            Self(
                (0..len)
                    .map(|i| {
                        if bits >> (len - 1 - i) & 1 == 1 {
                            Turn::R
                        } else {
                            Turn::L
                        }
                    })
                    .collect(),
            )
        })
    }
}

impl fmt::Display for TurnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        for t in &self.0 {
            write!(f, "{t:?}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TurnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TurnWord {
    type Err = Error;

    /// `"-"` or `""` is the root; otherwise a string over `{L, R}`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-" {
            return Ok(Self::root());
        }
        s.chars()
            .map(|c| match c {
                'L' | 'l' => Ok(Turn::L),
                'R' | 'r' => Ok(Turn::R),
                _ => Err(Error::Parse {
                    kind: "turn word",
                    token: s.to_string(),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// A vertex of the Farey tree: `value` is the mediant of its two parents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareyNode {
    pub value: Fraction,
    pub left_parent: Fraction,
    pub right_parent: Fraction,
}

impl FareyNode {
    pub fn root() -> Self {
        Self {
            value: Fraction::half(),
            left_parent: Fraction::zero(),
            right_parent: Fraction::one(),
        }
    }

    pub fn step(&self, turn: Turn) -> Self {
        let (left, right) = match turn {
            Turn::L => (self.left_parent.clone(), self.value.clone()),
            Turn::R => (self.value.clone(), self.right_parent.clone()),
        };
        Self {
            value: farey_mediant(&left, &right),
            left_parent: left,
            right_parent: right,
        }
    }

    /// Parents are Farey neighbours and straddle the value.
    pub fn is_unimodular(&self) -> bool {
        cross_determinant(&self.left_parent, &self.right_parent).is_one()
            && self.left_parent < self.value
            && self.value < self.right_parent
            && self.value == farey_mediant(&self.left_parent, &self.right_parent)
    }
}

pub fn farey_node_at(word: &TurnWord) -> FareyNode {
    word.turns()
        .iter()
        .fold(FareyNode::root(), |node, &t| node.step(t))
}

/// The unique word addressing `x` in the open interval `(0, 1)`.
pub fn farey_path_to(x: &Fraction) -> Result<TurnWord> {
    if x <= &Fraction::zero() || x >= &Fraction::one() {
        return Err(Error::OutOfRange {
            value: x.clone(),
            range: "(0, 1)",
        });
    }
    let mut node = FareyNode::root();
    let mut turns = Vec::new();
    loop {
        let turn = match x.cmp(&node.value) {
            Ordering::Equal => return Ok(TurnWord(turns)),
            Ordering::Less => Turn::L,
            Ordering::Greater => Turn::R,
        };
        turns.push(turn);
        node = node.step(turn);
    }
}

fn check_unit_interval(x: &Fraction) -> Result<()> {
    if x.is_negative() || x > &Fraction::one() {
        return Err(Error::OutOfRange {
            value: x.clone(),
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// `?(x)` from `?(0) = 0`, `?(1) = 1` and the mean rule at Farey mediants.
pub fn question_mark_farey(x: &Fraction) -> Result<DyadicRational> {
    check_unit_interval(x)?;
    if x.is_zero() {
        return Ok(DyadicRational::zero());
    }
    if x == &Fraction::one() {
        return Ok(DyadicRational::one());
    }
    let mut node = FareyNode::root();
    let (mut lo, mut hi) = (DyadicRational::zero(), DyadicRational::one());
    loop {
        let mid = lo.midpoint(&hi);
        match x.cmp(&node.value) {
            Ordering::Equal => return Ok(mid),
            Ordering::Less => {
                hi = mid;
                node = node.step(Turn::L);
            }
            Ordering::Greater => {
                lo = mid;
                node = node.step(Turn::R);
            }
        }
    }
}

/// `?(x) = 2^(1-a1) - 2^(1-a1-a2) + ...` over the canonical expansion `[0; a1, ..., ak]`.
pub fn question_mark_salem(x: &Fraction) -> Result<DyadicRational> {
    check_unit_interval(x)?;
    if x == &Fraction::one() {
        return Ok(DyadicRational::one());
    }
    let cf = ContinuedFraction::from_fraction(x)?;
    // Accumulate over the common denominator 2^(a1 + ... + ak - 1).
    let partial: Vec<u32> = cf.quotients()[1..]
        .iter()
        .scan(0u32, |acc, a| {
            *acc += a.to_u32().expect("partial quotient fits in u32");
            Some(*acc)
        })
        .collect();
    let Some(&total) = partial.last() else {
        return Ok(DyadicRational::zero());
    };
    let exponent = total - 1;
    let mut m = BigInt::zero();
    for (j, s) in partial.iter().enumerate() {
        let term = BigInt::one() << (total - s);
        if j % 2 == 0 {
            m += term;
        } else {
            m -= term;
        }
    }
    Ok(DyadicRational::new(m, exponent))
}

/// Binary number `0.w1 w2 ... wk 1` with `L -> 0`, `R -> 1`.
pub fn question_mark_of_word(word: &TurnWord) -> DyadicRational {
    let mut m = BigInt::zero();
    for t in word.turns() {
        m <<= 1;
        if *t == Turn::R {
            m += 1;
        }
    }
    m = (m << 1) + 1;
    DyadicRational::new(m, word.len() as u32 + 1)
}

/// All reduced fractions in `[0, 1]` with denominator at most `max_den`, ascending.
pub fn rationals_up_to(max_den: u64) -> Vec<Fraction> {
    let mut out: Vec<Fraction> = (1..=max_den)
        .flat_map(|b| (0..=b).map(move |a| (a, b)))
        .filter(|&(a, b)| num_integer::gcd(a, b) == 1)
        .map(|(a, b)| Fraction::new(a, b).expect("b >= 1"))
        .collect();
    out.sort();
    out
}
