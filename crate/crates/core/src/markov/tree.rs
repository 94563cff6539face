use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::Fraction;
use crate::farey::{farey_path_to, Turn, TurnWord};

/// `(p1 q1 + p2 q2) / (q1^2 + q2^2)` in lowest terms, for `f1 < f2`.
///
/// Reduction uses a full gcd, so this is valid for any ordered pair. Tree
/// descent uses [`springborn_child`], which divides by `p2 q1 - p1 q2`
/// directly.
pub fn springborn_mediant(f1: &Fraction, f2: &Fraction) -> Result<Fraction> {
    if f1 >= f2 {
        return Err(Error::Ordering {
            left: Box::new(f1.clone()),
            right: Box::new(f2.clone()),
        });
    }
    let (p1, q1, p2, q2) = (f1.num(), f1.den(), f2.num(), f2.den());
    Fraction::new(p1 * q1 + p2 * q2, q1 * q1 + q2 * q2)
}

/// Springborn mediant of tree neighbours `f1 < f2`, reduced by the
/// cross determinant `p2 q1 - p1 q2`.
pub(crate) fn springborn_child(f1: &Fraction, f2: &Fraction) -> Fraction {
    let (p1, q1, p2, q2) = (f1.num(), f1.den(), f2.num(), f2.den());
    let k = p2 * q1 - p1 * q2;
    debug_assert!(k.is_positive());
    let (p, pr) = (p1 * q1 + p2 * q2).div_rem(&k);
    let (q, qr) = (q1 * q1 + q2 * q2).div_rem(&k);
    debug_assert!(
        pr.is_zero() && qr.is_zero(),
        "{f1} and {f2} are not tree neighbours"
    );
    Fraction::from_coprime(p, q)
}

/// Two neighbouring fractions and the Springborn mediant between them:
/// `f1 < f3 < f2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionTriple {
    pub f1: Fraction,
    pub f2: Fraction,
    pub f3: Fraction,
}

impl FractionTriple {
    pub fn denominators(&self) -> [&BigInt; 3] {
        [self.f1.den(), self.f2.den(), self.f3.den()]
    }

    pub fn left_child(&self) -> Self {
        Self {
            f3: springborn_child(&self.f1, &self.f3),
            f1: self.f1.clone(),
            f2: self.f3.clone(),
        }
    }

    pub fn right_child(&self) -> Self {
        Self {
            f3: springborn_child(&self.f3, &self.f2),
            f1: self.f3.clone(),
            f2: self.f2.clone(),
        }
    }

    pub fn child(&self, turn: Turn) -> Self {
        match turn {
            Turn::L => self.left_child(),
            Turn::R => self.right_child(),
        }
    }
}

/// A binary tree generated by the Springborn mediant from two seeds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovTree {
    lower: Fraction,
    upper: Fraction,
}

impl MarkovTree {
    /// Seeds `0/1` and `1/2`: the Markov fractions in `[0, 1/2]`.
    pub fn reduced() -> Self {
        Self {
            lower: Fraction::zero(),
            upper: Fraction::half(),
        }
    }

    /// Seeds `0/1` and `1/1`: the `[0, 1]` tree whose left half is [`MarkovTree::reduced`].
    pub fn unit() -> Self {
        Self {
            lower: Fraction::zero(),
            upper: Fraction::one(),
        }
    }

    pub fn seeds(&self) -> (&Fraction, &Fraction) {
        (&self.lower, &self.upper)
    }

    pub fn root(&self) -> FractionTriple {
        FractionTriple {
            f3: springborn_child(&self.lower, &self.upper),
            f1: self.lower.clone(),
            f2: self.upper.clone(),
        }
    }

    pub fn vertex_at(&self, word: &TurnWord) -> FractionTriple {
        word.turns()
            .iter()
            .fold(self.root(), |t, &turn| t.child(turn))
    }

    /// All `2^(depth+1) - 1` vertices, breadth first, left child before right.
    pub fn enumerate(&self, depth: u32) -> Vec<TreeVertex> {
        let mut out = Vec::with_capacity((1usize << (depth + 1)) - 1);
        let mut level = vec![TreeVertex {
            word: TurnWord::root(),
            triple: self.root(),
        }];
        for d in 0..=depth {
            let next: Vec<TreeVertex> = if d < depth {
                level
                    .par_iter()
                    .flat_map_iter(TreeVertex::children)
                    .collect()
            } else {
                Vec::new()
            };
            out.append(&mut level);
            level = next;
        }
        out
    }

    /// Visit levels `0..=depth` one at a time without keeping earlier levels.
    pub fn for_each_level(&self, depth: u32, mut visit: impl FnMut(u32, &[TreeVertex])) {
        let mut level = vec![TreeVertex {
            word: TurnWord::root(),
            triple: self.root(),
        }];
        for d in 0..=depth {
            visit(d, &level);
            if d < depth {
                level = level
                    .par_iter()
                    .flat_map_iter(TreeVertex::children)
                    .collect();
            }
        }
    }

    /// Locate `target` by descending toward it. Children lie strictly between
    /// their parents and denominators strictly increase along every branch,
    /// so the search stops once the current denominator exceeds the target's.
    pub fn locate(&self, target: &Fraction) -> Option<TreePosition> {
        if target == &self.lower {
            return Some(TreePosition::LowerSeed);
        }
        if target == &self.upper {
            return Some(TreePosition::UpperSeed);
        }
        if target < &self.lower || target > &self.upper {
            return None;
        }
        let mut t = self.root();
        let mut word = Vec::new();
        loop {
            if t.f3.den() > target.den() {
                return None;
            }
            let turn = match target.cmp(&t.f3) {
                std::cmp::Ordering::Equal => {
                    return Some(TreePosition::Vertex(TurnWord::new(word)))
                }
                std::cmp::Ordering::Less => Turn::L,
                std::cmp::Ordering::Greater => Turn::R,
            };
            word.push(turn);
            t = t.child(turn);
        }
    }

    /// Every vertex with denominator at most `bound`, together with both seeds.
    /// Subtrees are pruned as soon as the denominator exceeds the bound.
    pub fn fractions_with_denominator_at_most(&self, bound: &BigInt) -> Vec<Fraction> {
        let mut out: Vec<Fraction> = [&self.lower, &self.upper]
            .into_iter()
            .filter(|s| s.den() <= bound)
            .cloned()
            .collect();
        let mut stack = vec![self.root()];
        while let Some(t) = stack.pop() {
            if t.f3.den() > bound {
                continue;
            }
            stack.push(t.right_child());
            stack.push(t.left_child());
            out.push(t.f3);
        }
        out.sort();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeVertex {
    pub word: TurnWord,
    pub triple: FractionTriple,
}

impl TreeVertex {
    pub fn children(&self) -> [TreeVertex; 2] {
        [
            TreeVertex {
                word: self.word.child(Turn::L),
                triple: self.triple.left_child(),
            },
            TreeVertex {
                word: self.word.child(Turn::R),
                triple: self.triple.right_child(),
            },
        ]
    }
}

/// Where a fraction sits in a [`MarkovTree`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TreePosition {
    LowerSeed,
    UpperSeed,
    Vertex(TurnWord),
}

impl TreePosition {
    pub fn word(&self) -> Option<&TurnWord> {
        match self {
            TreePosition::Vertex(w) => Some(w),
            _ => None,
        }
    }

    /// Seeds have depth 0 alongside the root vertex.
    pub fn depth(&self) -> usize {
        self.word().map_or(0, TurnWord::len)
    }
}

impl std::fmt::Display for TreePosition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TreePosition::LowerSeed => write!(f, "seed:lower"),
            TreePosition::UpperSeed => write!(f, "seed:upper"),
            TreePosition::Vertex(w) => write!(f, "{w}"),
        }
    }
}

/// A Markov fraction in `[0, 1/2]` with its address in the reduced tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovFraction {
    pub value: Fraction,
    pub position: TreePosition,
}

impl MarkovFraction {
    pub fn depth(&self) -> usize {
        self.position.depth()
    }

    pub fn word(&self) -> Option<&TurnWord> {
        self.position.word()
    }

    /// The Markov number `q`.
    pub fn markov_number(&self) -> &BigInt {
        self.value.den()
    }
}

/// Springborn's parametrization: carry the Farey word of `x` into the reduced tree.
pub fn mu(x: &Fraction) -> Result<MarkovFraction> {
    mu_in(&MarkovTree::reduced(), x)
}

/// Transport of `x in [0, 1]` into an arbitrary Markov tree, seeds mapping to seeds.
pub fn mu_in(tree: &MarkovTree, x: &Fraction) -> Result<MarkovFraction> {
    if x.is_negative() || x > &Fraction::one() {
        return Err(Error::OutOfRange {
            value: x.clone(),
            range: "[0, 1]",
        });
    }
    let (lower, upper) = tree.seeds();
    if x.is_zero() {
        return Ok(MarkovFraction {
            value: lower.clone(),
            position: TreePosition::LowerSeed,
        });
    }
    if x == &Fraction::one() {
        return Ok(MarkovFraction {
            value: upper.clone(),
            position: TreePosition::UpperSeed,
        });
    }
    let word = farey_path_to(x)?;
    Ok(MarkovFraction {
        value: tree.vertex_at(&word).f3,
        position: TreePosition::Vertex(word),
    })
}

/// The Markov fraction equal to `x`, which must lie in `[0, 1/2]`.
pub fn markov_fraction(x: &Fraction) -> Result<MarkovFraction> {
    MarkovTree::reduced()
        .locate(x)
        .map(|position| MarkovFraction {
            value: x.clone(),
            position,
        })
        .ok_or_else(|| Error::NotExceptional(x.clone()))
}

/// Truth of each relation between the three fractions around a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RelationReport {
    /// `p2 q3 - p3 q2 = q1`
    pub rel12_first: bool,
    /// `p3 q1 - p1 q3 = q2`
    pub rel12_second: bool,
    /// `p2 q1 - p1 q2 = (q1^2 + q2^2) / q3`, with exact division
    pub rel3_quotient: bool,
    /// `p2 q1 - p1 q2 = 3 q1 q2 - q3`
    pub rel3_vieta: bool,
    /// Child opposite `f1`: `((p2 q2 + p3 q3) / q1, (q2^2 + q3^2) / q1)` is integral,
    /// equals the reduced Springborn mediant of `f3, f2`, and `q1' = 3 q2 q3 - q1`.
    pub rel1_prime: bool,
    /// Child opposite `f2`, symmetric to `rel1_prime`.
    pub rel2_prime: bool,
    /// `q1^2 + q2^2 + q3^2 = 3 q1 q2 q3`
    pub markov_equation: bool,
    pub pairwise_coprime: bool,
    /// `gcd(p3, q3) = 1` recomputed from scratch.
    pub reduced: bool,
    /// `p3^2 + 1 = 0 (mod q3)`
    pub congruence: bool,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.named().iter().all(|(_, ok)| *ok)
    }

    pub fn named(&self) -> [(&'static str, bool); 10] {
        [
            ("rel12_first", self.rel12_first),
            ("rel12_second", self.rel12_second),
            ("rel3_quotient", self.rel3_quotient),
            ("rel3_vieta", self.rel3_vieta),
            ("rel1_prime", self.rel1_prime),
            ("rel2_prime", self.rel2_prime),
            ("markov_equation", self.markov_equation),
            ("pairwise_coprime", self.pairwise_coprime),
            ("reduced", self.reduced),
            ("congruence", self.congruence),
        ]
    }
}

fn exact_div(n: &BigInt, d: &BigInt) -> Option<BigInt> {
    if d.is_zero() {
        return None;
    }
    let (q, r) = n.div_rem(d);
    r.is_zero().then_some(q)
}

/// Child across from `a` among the triple `(a, b, c)` with `b < c`, by the
/// closed formula `((pb qb + pc qc) / qa, (qb^2 + qc^2) / qa)`.
fn opposite_child_holds(a: &Fraction, lo: &Fraction, hi: &Fraction) -> bool {
    let qa = a.den();
    let num = lo.num() * lo.den() + hi.num() * hi.den();
    let den = lo.den() * lo.den() + hi.den() * hi.den();
    let (Some(p), Some(q)) = (exact_div(&num, qa), exact_div(&den, qa)) else {
        return false;
    };
    let Ok(expected) = springborn_mediant(lo, hi) else {
        return false;
    };
    let vieta = BigInt::from(3) * lo.den() * hi.den() - qa;
    &p == expected.num() && &q == expected.den() && q == vieta
}

pub fn check_relations(t: &FractionTriple) -> RelationReport {
    let (p1, q1) = (t.f1.num(), t.f1.den());
    let (p2, q2) = (t.f2.num(), t.f2.den());
    let (p3, q3) = (t.f3.num(), t.f3.den());
    let three = BigInt::from(3);
    let cross = p2 * q1 - p1 * q2;
    let sum_sq = q1 * q1 + q2 * q2;
    RelationReport {
        rel12_first: &(p2 * q3 - p3 * q2) == q1,
        rel12_second: &(p3 * q1 - p1 * q3) == q2,
        rel3_quotient: exact_div(&sum_sq, q3).is_some_and(|v| v == cross),
        rel3_vieta: cross == &three * q1 * q2 - q3,
        rel1_prime: t.f3 < t.f2 && opposite_child_holds(&t.f1, &t.f3, &t.f2),
        rel2_prime: t.f1 < t.f3 && opposite_child_holds(&t.f2, &t.f1, &t.f3),
        markov_equation: q1 * q1 + q2 * q2 + q3 * q3 == &three * q1 * q2 * q3,
        pairwise_coprime: q1.gcd(q2).is_one() && q1.gcd(q3).is_one() && q2.gcd(q3).is_one(),
        reduced: p3.gcd(q3).is_one(),
        congruence: ((p3 * p3 + 1u32) % q3).is_zero(),
    }
}

/// `F_n` with `F_1 = F_2 = 1`.
pub fn fibonacci(n: u32) -> BigInt {
    let (mut a, mut b) = (BigInt::from(0), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// Pell pairs `(x_n, y_n)` with `x_n^2 - 2 y_n^2 = (-1)^n`, for `n >= 1`.
pub fn pell_pair(n: u32) -> (BigInt, BigInt) {
    assert!(n >= 1, "Pell numbers are indexed from 1");
    let (mut x0, mut x1) = (BigInt::one(), BigInt::from(3));
    let (mut y0, mut y1) = (BigInt::one(), BigInt::from(2));
    for _ in 1..n {
        let x2 = BigInt::from(2) * &x1 + &x0;
        let y2 = BigInt::from(2) * &y1 + &y0;
        x0 = std::mem::replace(&mut x1, x2);
        y0 = std::mem::replace(&mut y1, y2);
    }
    (x0, y0)
}

fn branch_fraction(value: Fraction, turn: Turn, k: u32) -> MarkovFraction {
    MarkovFraction {
        value,
        position: TreePosition::Vertex(TurnWord::constant(turn, k as usize - 1)),
    }
}

fn check_branch_index(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::OutOfRange {
            value: Fraction::zero(),
            range: "k >= 1",
        });
    }
    Ok(())
}

/// `k`-th fraction on the branch hugging `0/1`: `F_{2k+1} / F_{2k+3}`
/// (`2/5, 5/13, 13/34, ...`), at word `L^(k-1)`.
pub fn fibonacci_branch(k: u32) -> Result<MarkovFraction> {
    check_branch_index(k)?;
    let value = Fraction::new(fibonacci(2 * k + 1), fibonacci(2 * k + 3))?;
    Ok(branch_fraction(value, Turn::L, k))
}

/// The same branch by `p_{k+1} = q_k`, `q_{k+1} = (q_k^2 + 1) / q_{k-1}` from `1/2`.
pub fn fibonacci_branch_recurrence(k: u32) -> Result<Fraction> {
    check_branch_index(k)?;
    let (mut q_prev, mut p, mut q) = (BigInt::one(), BigInt::one(), BigInt::from(2));
    for _ in 0..k {
        let q_next = (&q * &q + 1) / &q_prev;
        p = q.clone();
        q_prev = std::mem::replace(&mut q, q_next);
    }
    Fraction::new(p, q)
}

/// `k`-th fraction on the branch hugging `1/2`: `y_{2k} / y_{2k+1}` in Pell
/// numbers (`2/5, 12/29, 70/169, ...`), at word `R^(k-1)`.
pub fn pell_branch(k: u32) -> Result<MarkovFraction> {
    check_branch_index(k)?;
    let value = Fraction::new(pell_pair(2 * k).1, pell_pair(2 * k + 1).1)?;
    Ok(branch_fraction(value, Turn::R, k))
}

/// Maximum depth accepted by [`unicity_scan`] (`2^20 - 1` vertices).
pub const UNICITY_MAX_DEPTH: u32 = 19;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnicityReport {
    pub depth: u32,
    pub fractions_scanned: usize,
    /// Denominators carried by more than one numerator, with those numerators.
    pub duplicates: Vec<(BigInt, Vec<BigInt>)>,
}

/// Group the reduced tree (seeds included) by denominator and report any
/// denominator that appears with two different numerators.
pub fn unicity_scan(depth: u32) -> Result<UnicityReport> {
    if depth > UNICITY_MAX_DEPTH {
        return Err(Error::DepthLimit {
            depth,
            max: UNICITY_MAX_DEPTH,
        });
    }
    let tree = MarkovTree::reduced();
    let mut by_den: HashMap<BigInt, Vec<BigInt>> = HashMap::new();
    let (lo, hi) = tree.seeds();
    for s in [lo, hi] {
        by_den
            .entry(s.den().clone())
            .or_default()
            .push(s.num().clone());
    }
    let mut scanned = 2;
    tree.for_each_level(depth, |_, level| {
        scanned += level.len();
        for v in level {
            let nums = by_den.entry(v.triple.f3.den().clone()).or_default();
            if !nums.contains(v.triple.f3.num()) {
                nums.push(v.triple.f3.num().clone());
            }
        }
    });
    let mut duplicates: Vec<_> = by_den
        .into_iter()
        .filter(|(_, nums)| nums.len() > 1)
        .map(|(q, mut nums)| {
            nums.sort();
            (q, nums)
        })
        .collect();
    duplicates.sort();
    Ok(UnicityReport {
        depth,
        fractions_scanned: scanned,
        duplicates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    #[test]
    fn mediant_examples() {
        assert_eq!(springborn_mediant(&f(0, 1), &f(1, 2)).unwrap(), f(2, 5));
        assert_eq!(springborn_mediant(&f(0, 1), &f(2, 5)).unwrap(), f(5, 13));
        assert_eq!(springborn_mediant(&f(2, 5), &f(1, 2)).unwrap(), f(12, 29));
        assert!(springborn_mediant(&f(1, 2), &f(0, 1)).is_err());
        assert!(springborn_mediant(&f(1, 2), &f(1, 2)).is_err());
        assert_eq!(springborn_child(&f(2, 5), &f(1, 2)), f(12, 29));
    }

    #[test]
    fn enumerate_small_depths() {
        let tree = MarkovTree::reduced();
        let d0 = tree.enumerate(0);
        assert_eq!(d0.len(), 1);
        assert_eq!(
            d0[0].triple,
            FractionTriple {
                f1: f(0, 1),
                f2: f(1, 2),
                f3: f(2, 5)
            }
        );
        let d2: Vec<_> = tree.enumerate(2).into_iter().map(|v| v.triple.f3).collect();
        assert_eq!(
            d2,
            vec![
                f(2, 5),
                f(5, 13),
                f(12, 29),
                f(13, 34),
                f(75, 194),
                f(179, 433),
                f(70, 169)
            ]
        );
        assert_eq!(tree.enumerate(5).len(), 63);
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(&f(0, 1)).unwrap().value, f(0, 1));
        assert_eq!(mu(&f(1, 1)).unwrap().value, f(1, 2));
        assert_eq!(mu(&f(1, 2)).unwrap().value, f(2, 5));
        assert_eq!(mu(&f(1, 3)).unwrap().value, f(5, 13));
        assert_eq!(mu(&f(2, 3)).unwrap().value, f(12, 29));
        assert!(mu(&f(3, 2)).is_err());
        assert!(mu(&f(-1, 2)).is_err());
    }

    #[test]
    fn relation_examples() {
        let good = FractionTriple {
            f1: f(0, 1),
            f2: f(1, 2),
            f3: f(2, 5),
        };
        assert!(check_relations(&good).all_hold());
        let good = FractionTriple {
            f1: f(0, 1),
            f2: f(2, 5),
            f3: f(5, 13),
        };
        assert!(check_relations(&good).all_hold());
        let f3 = springborn_mediant(&f(0, 1), &f(1, 3)).unwrap();
        let bad = check_relations(&FractionTriple {
            f1: f(0, 1),
            f2: f(1, 3),
            f3,
        });
        assert!(!bad.rel3_vieta);
        assert!(!bad.markov_equation);
        assert!(!bad.all_hold());
    }

    #[test]
    fn branch_examples() {
        let fib: Vec<_> = (1..=3)
            .map(|k| fibonacci_branch(k).unwrap().value)
            .collect();
        assert_eq!(fib, vec![f(2, 5), f(5, 13), f(13, 34)]);
        let pell: Vec<_> = (1..=4).map(|k| pell_branch(k).unwrap().value).collect();
        assert_eq!(pell, vec![f(2, 5), f(12, 29), f(70, 169), f(408, 985)]);
        assert_eq!(pell_pair(8), (BigInt::from(577), BigInt::from(408)));
        assert_eq!(pell_pair(9), (BigInt::from(1393), BigInt::from(985)));
        assert!(fibonacci_branch(0).is_err());
        assert!(pell_branch(0).is_err());
    }

    #[test]
    fn locate_examples() {
        let tree = MarkovTree::reduced();
        assert_eq!(
            tree.locate(&f(13, 34)),
            Some(TreePosition::Vertex("LL".parse().unwrap()))
        );
        assert_eq!(tree.locate(&f(1, 3)), None);
        assert_eq!(tree.locate(&f(0, 1)), Some(TreePosition::LowerSeed));
        assert_eq!(tree.locate(&f(1, 2)), Some(TreePosition::UpperSeed));
        assert_eq!(tree.locate(&f(3, 5)), None);
    }

    #[test]
    fn bounded_listing() {
        let small = MarkovTree::reduced().fractions_with_denominator_at_most(&BigInt::from(200));
        assert_eq!(
            small,
            vec![
                f(0, 1),
                f(34, 89),
                f(13, 34),
                f(5, 13),
                f(75, 194),
                f(2, 5),
                f(12, 29),
                f(70, 169),
                f(1, 2)
            ]
        );
    }
}
