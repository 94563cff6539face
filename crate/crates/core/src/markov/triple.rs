use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Positive solution of `q1^2 + q2^2 + q3^2 = 3 q1 q2 q3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkovTriple([BigUint; 3]);

impl MarkovTriple {
    pub fn new(
        q1: impl Into<BigUint>,
        q2: impl Into<BigUint>,
        q3: impl Into<BigUint>,
    ) -> Result<Self> {
        let t = [q1.into(), q2.into(), q3.into()];
        if !GeneralizedEquation::MARKOV.is_solution(&t) {
            let [a, b, c] = t.map(|x| x.to_string());
            return Err(Error::InvalidTriple(a, b, c));
        }
        Ok(Self(t))
    }

    pub fn singular() -> Self {
        Self([BigUint::one(), BigUint::one(), BigUint::one()])
    }

    pub fn entries(&self) -> &[BigUint; 3] {
        &self.0
    }

    pub fn is_pairwise_coprime(&self) -> bool {
        let [a, b, c] = &self.0;
        a.gcd(b).is_one() && a.gcd(c).is_one() && b.gcd(c).is_one()
    }

    /// Vieta involution at position `index` (1, 2 or 3): `z -> 3xy - z`.
    pub fn mutate(&self, index: usize) -> Result<Self> {
        GeneralizedEquation::MARKOV
            .flip(&self.0, index)
            .map(Self)
            .ok_or(Error::OutOfRange {
                value: crate::exact::Fraction::from_integer(index as i64),
                range: "{1, 2, 3}",
            })
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.0;
        write!(f, "({a}, {b}, {c})")
    }
}

pub fn vieta_mutate(t: &MarkovTriple, index: usize) -> Result<MarkovTriple> {
    t.mutate(index)
}

/// `a x^2 + b y^2 + c z^2 = d x y z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneralizedEquation {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl GeneralizedEquation {
    /// Ranks of exceptional bundles on the projective plane.
    pub const MARKOV: Self = Self {
        a: 1,
        b: 1,
        c: 1,
        d: 3,
    };
    /// Exceptional collections on the quadric surface.
    pub const QUADRIC: Self = Self {
        a: 1,
        b: 1,
        c: 2,
        d: 4,
    };
    /// The plane blown up in three points.
    pub const X3: Self = Self {
        a: 1,
        b: 2,
        c: 3,
        d: 6,
    };

    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Result<Self> {
        let eq = Self { a, b, c, d };
        if [Self::MARKOV, Self::QUADRIC, Self::X3].contains(&eq) {
            Ok(eq)
        } else {
            Err(Error::UnsupportedEquation { a, b, c, d })
        }
    }

    fn coefficient(&self, index: usize) -> u32 {
        [self.a, self.b, self.c][index - 1]
    }

    pub fn is_solution(&self, t: &[BigUint; 3]) -> bool {
        let [x, y, z] = t;
        let lhs = x * x * self.a + y * y * self.b + z * z * self.c;
        lhs == x * y * z * self.d
    }

    /// Replace coordinate `index` (1-based) by `d * (product of the others) / coeff - value`.
    /// `None` for a bad index or a non-integral or nonpositive result.
    pub fn flip(&self, t: &[BigUint; 3], index: usize) -> Option<[BigUint; 3]> {
        if !(1..=3).contains(&index) {
            return None;
        }
        let i = index - 1;
        let others: BigUint = (0..3).filter(|&j| j != i).map(|j| &t[j]).product();
        let (q, r) = (others * self.d).div_rem(&BigUint::from(self.coefficient(index)));
        if !r.is_zero() || q <= t[i] {
            return None;
        }
        let mut out = t.clone();
        out[i] = q - &t[i];
        Some(out)
    }
}

impl fmt::Display for GeneralizedEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}x^2 + {}y^2 + {}z^2 = {}xyz",
            self.a, self.b, self.c, self.d
        )
    }
}

/// All triples reachable from `(1, 1, 1)` by at most `depth` flips.
pub fn generalized_enumerate(
    eq: &GeneralizedEquation,
    depth: u32,
) -> Result<BTreeSet<[BigUint; 3]>> {
    let eq = GeneralizedEquation::new(eq.a, eq.b, eq.c, eq.d)?;
    let seed = [BigUint::one(), BigUint::one(), BigUint::one()];
    let mut seen = BTreeSet::from([seed.clone()]);
    let mut frontier = vec![seed];
    for _ in 0..depth {
        let mut next = Vec::new();
        for t in &frontier {
            for index in 1..=3 {
                if let Some(u) = eq.flip(t, index) {
                    if seen.insert(u.clone()) {
                        next.push(u);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u32, b: u32, c: u32) -> [BigUint; 3] {
        [a.into(), b.into(), c.into()]
    }

    fn m(a: u32, b: u32, c: u32) -> MarkovTriple {
        MarkovTriple::new(a, b, c).unwrap()
    }

    #[test]
    fn vieta_examples() {
        assert_eq!(vieta_mutate(&m(1, 1, 1), 3).unwrap(), m(1, 1, 2));
        assert_eq!(vieta_mutate(&m(1, 1, 2), 2).unwrap(), m(1, 5, 2));
        assert_eq!(vieta_mutate(&m(1, 5, 2), 1).unwrap(), m(29, 5, 2));
        assert!(vieta_mutate(&m(1, 5, 2), 4).is_err());
        assert!(MarkovTriple::new(1u32, 2u32, 3u32).is_err());
    }

    #[test]
    fn involution() {
        let mut x = m(1, 1, 1);
        for i in [3, 2, 1, 3, 1, 2, 3] {
            let y = x.mutate(i).unwrap();
            assert!(y.is_pairwise_coprime());
            assert_eq!(y.mutate(i).unwrap(), x);
            x = y;
        }
    }

    #[test]
    fn generalized_examples() {
        let q = generalized_enumerate(&GeneralizedEquation::QUADRIC, 1).unwrap();
        assert!(q.contains(&t(3, 1, 1)));
        let x3 = generalized_enumerate(&GeneralizedEquation::X3, 1).unwrap();
        assert!(x3.contains(&t(5, 1, 1)));
        let mk = generalized_enumerate(&GeneralizedEquation::MARKOV, 2).unwrap();
        for want in [t(1, 1, 1), t(1, 1, 2), t(1, 2, 5), t(1, 5, 2), t(5, 1, 2)] {
            assert!(mk.contains(&want), "{want:?}");
        }
        assert!(GeneralizedEquation::new(1, 1, 1, 4).is_err());
        let bad = GeneralizedEquation {
            a: 2,
            b: 2,
            c: 2,
            d: 6,
        };
        assert!(generalized_enumerate(&bad, 1).is_err());
    }

    #[test]
    fn markov_closure_matches_vieta() {
        // Closure of (1,1,1) under vieta_mutate to depth 6.
        let mut seen = BTreeSet::from([m(1, 1, 1)]);
        let mut frontier = vec![m(1, 1, 1)];
        for _ in 0..6 {
            let mut next = Vec::new();
            for x in &frontier {
                for i in 1..=3 {
                    let y = x.mutate(i).unwrap();
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        let gen: BTreeSet<_> = generalized_enumerate(&GeneralizedEquation::MARKOV, 6)
            .unwrap()
            .into_iter()
            .map(|[a, b, c]| MarkovTriple::new(a, b, c).unwrap())
            .collect();
        assert_eq!(gen, seen);
        assert!(gen.iter().all(|x| x.is_pairwise_coprime()));
    }

    #[test]
    fn all_emitted_triples_solve_their_equation() {
        for eq in [
            GeneralizedEquation::MARKOV,
            GeneralizedEquation::QUADRIC,
            GeneralizedEquation::X3,
        ] {
            let set = generalized_enumerate(&eq, 8).unwrap();
            assert!(set.len() > 8);
            assert!(set.iter().all(|t| eq.is_solution(t)), "{eq}");
        }
    }
}
