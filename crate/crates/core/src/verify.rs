//! The invariant suite behind the `verify` command: every structural identity
//! of the theory, checked exactly over a bounded part of the tree.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::analysis::{
    approx_constant, first_overlap, length_surd, lyapunov_estimate, markov_interval, WordRule,
};
use crate::error::{Error, Result};
use crate::exact::Fraction;
use crate::farey::{question_mark_farey, question_mark_salem, rationals_up_to, Turn, TurnWord};
use crate::markov::{
    check_relations, fibonacci_branch, fibonacci_branch_recurrence, generalized_enumerate, mu_in,
    pell_branch, pell_pair, solve_by_factoring, unicity_scan, GeneralizedEquation, MarkovFraction,
    MarkovTree, TreePosition,
};
use crate::slopes::{bundle_invariants, identity_sides, set_equivalence, EpsilonTable};

/// Largest depth accepted by [`verify`].
pub const VERIFY_MAX_DEPTH: u32 = 15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantResult {
    pub name: String,
    pub checked: usize,
    pub passed: usize,
}

impl InvariantResult {
    pub fn holds(&self) -> bool {
        self.checked == self.passed
    }
}

impl fmt::Display for InvariantResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.holds() { "ok" } else { "FAIL" };
        write!(
            f,
            "{:<28} {:>8}/{:<8} {status}",
            self.name, self.passed, self.checked
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub depth: u32,
    pub results: Vec<InvariantResult>,
}

impl VerificationReport {
    pub fn all_hold(&self) -> bool {
        self.results.iter().all(InvariantResult::holds)
    }
}

fn tally(name: impl Into<String>, outcomes: impl IntoIterator<Item = bool>) -> InvariantResult {
    let (mut checked, mut passed) = (0, 0);
    for ok in outcomes {
        checked += 1;
        passed += usize::from(ok);
    }
    InvariantResult {
        name: name.into(),
        checked,
        passed,
    }
}

fn relations(depth: u32, out: &mut Vec<InvariantResult>) {
    let vertices = MarkovTree::reduced().enumerate(depth);
    let reports: Vec<_> = vertices
        .par_iter()
        .map(|v| check_relations(&v.triple).named())
        .collect();
    for i in 0..10 {
        let name = reports.first().map_or("relation", |r| r[i].0);
        out.push(tally(
            format!("relation:{name}"),
            reports.iter().map(|r| r[i].1),
        ));
    }
}

fn bundles(depth: u32) -> InvariantResult {
    let tree = MarkovTree::reduced();
    let (lo, hi) = tree.seeds();
    let mut fractions: Vec<Fraction> = vec![lo.clone(), hi.clone()];
    fractions.extend(tree.enumerate(depth).into_iter().map(|v| v.triple.f3));
    let outcomes: Vec<bool> = fractions
        .par_iter()
        .map(|x| {
            let Ok((_, b)) = bundle_invariants(x) else {
                return false;
            };
            let q = x.den();
            let s_integral = (x.num() * x.num() + 1u32).is_multiple_of(q);
            let c2_integral = ((q - 1u32) * (&b.s + 1u32)).is_even();
            s_integral && c2_integral && b.discriminant() == BigInt::from(9) * q * q - 4
        })
        .collect();
    tally("bundle:discriminant", outcomes)
}

fn dlp_identity(depth: u32) -> InvariantResult {
    let outcomes: Vec<bool> = [MarkovTree::unit(), MarkovTree::reduced()]
        .iter()
        .flat_map(|tree| tree.enumerate(depth))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|v| {
            let t = &v.triple;
            matches!(identity_sides(&t.f1, &t.f2), Ok((l, r)) if l == t.f3 && r == t.f3)
        })
        .collect();
    tally("dlp:identity", outcomes)
}

fn dlp_sets(depth: u32) -> InvariantResult {
    tally(
        "dlp:set-equivalence",
        (0..=depth).map(|d| {
            set_equivalence(d)
                .map(|r| r.holds() && r.epsilon_values.len() == (1usize << d) + 1)
                .unwrap_or(false)
        }),
    )
}

fn dlp_bridge(max_den: u64) -> InvariantResult {
    let table = EpsilonTable::new();
    let unit = MarkovTree::unit();
    tally(
        "dlp:bridge",
        rationals_up_to(max_den).iter().map(|x| {
            let (Ok(dy), Ok(m)) = (question_mark_farey(x), mu_in(&unit, x)) else {
                return false;
            };
            table.get(&dy) == m.value
        }),
    )
}

fn branches(max_k: u32) -> InvariantResult {
    let tree = MarkovTree::reduced();
    let mut outcomes = Vec::new();
    for k in 1..=max_k {
        let (Ok(fib), Ok(rec), Ok(pell)) = (
            fibonacci_branch(k),
            fibonacci_branch_recurrence(k),
            pell_branch(k),
        ) else {
            outcomes.push(false);
            continue;
        };
        let l = tree
            .vertex_at(&TurnWord::constant(Turn::L, k as usize - 1))
            .f3;
        let r = tree
            .vertex_at(&TurnWord::constant(Turn::R, k as usize - 1))
            .f3;
        outcomes.push(fib.value == l && rec == l);
        outcomes.push(pell.value == r);
    }
    for n in 1..=2 * max_k + 1 {
        let (x, y) = pell_pair(n);
        outcomes.push((&x * &x - BigInt::from(2) * &y * &y).abs().is_one());
    }
    tally("branches", outcomes)
}

fn approx(bound: u32) -> InvariantResult {
    let fractions = MarkovTree::reduced().fractions_with_denominator_at_most(&BigInt::from(bound));
    let third = Fraction::new(1, 3).expect("nonzero");
    let outcomes: Vec<bool> = fractions
        .par_iter()
        .map(|x| approx_constant(x).value >= third)
        .collect();
    tally("approx:at-least-one-third", outcomes)
}

fn question_mark(max_den: u64, out: &mut Vec<InvariantResult>) {
    let xs = rationals_up_to(max_den);
    let values: Vec<_> = xs.iter().map(|x| question_mark_farey(x).ok()).collect();
    out.push(tally(
        "qmark:farey=salem",
        xs.iter()
            .zip(&values)
            .map(|(x, v)| v.is_some() && question_mark_salem(x).ok() == *v),
    ));
    out.push(tally(
        "qmark:monotone",
        values.windows(2).map(|w| w[0] < w[1]),
    ));
    let one = Fraction::one();
    out.push(tally(
        "qmark:symmetry",
        xs.iter().zip(&values).map(|(x, v)| {
            let mirrored = question_mark_farey(&(&one - x))
                .ok()
                .map(|d| d.to_fraction());
            match (v, mirrored) {
                (Some(v), Some(m)) => m == &one - &v.to_fraction(),
                _ => false,
            }
        }),
    ));
}

fn intervals(depth: u32, out: &mut Vec<InvariantResult>) {
    let tree = MarkovTree::reduced();
    let (lo, hi) = tree.seeds();
    let mut fractions = vec![
        MarkovFraction {
            value: lo.clone(),
            position: TreePosition::LowerSeed,
        },
        MarkovFraction {
            value: hi.clone(),
            position: TreePosition::UpperSeed,
        },
    ];
    fractions.extend(tree.enumerate(depth).into_iter().map(|v| MarkovFraction {
        value: v.triple.f3,
        position: TreePosition::Vertex(v.word),
    }));
    let ivs: Vec<_> = fractions.iter().map(markov_interval).collect();
    out.push(tally(
        "interval:length",
        ivs.iter().map(|iv| {
            iv.hi.checked_sub(&iv.lo).ok().as_ref() == Some(&length_surd(iv.center.den()))
        }),
    ));
    out.push(tally("interval:disjoint", [first_overlap(&ivs).is_none()]));
}

fn unicity(depth: u32) -> InvariantResult {
    match unicity_scan(depth) {
        Ok(r) => InvariantResult {
            name: "unicity:no-duplicates".into(),
            checked: r.fractions_scanned,
            passed: r.fractions_scanned - r.duplicates.len(),
        },
        Err(_) => tally("unicity:no-duplicates", [false]),
    }
}

fn triples(depth: u32, out: &mut Vec<InvariantResult>) {
    for (name, eq) in [
        ("markov", GeneralizedEquation::MARKOV),
        ("quadric", GeneralizedEquation::QUADRIC),
        ("x3", GeneralizedEquation::X3),
    ] {
        let result = match generalized_enumerate(&eq, depth) {
            Ok(set) => tally(
                format!("triples:{name}"),
                set.iter().map(|t| eq.is_solution(t)),
            ),
            Err(_) => tally(format!("triples:{name}"), [false]),
        };
        out.push(result);
    }
}

/// `p` is among the square roots of `-1` mod `q`, for vertices small enough to factor.
fn congruence(depth: u32) -> InvariantResult {
    let limit = BigInt::from(10u64.pow(12));
    let vertices: Vec<Fraction> = MarkovTree::reduced()
        .fractions_with_denominator_at_most(&limit)
        .into_iter()
        .filter(|x| x.den() > &BigInt::one())
        .collect();
    let max = (1usize << (depth + 1)) + 1;
    let outcomes: Vec<bool> = vertices
        .par_iter()
        .take(max)
        .map(|x| {
            let q: BigUint = x.den().magnitude().clone();
            let p: BigUint = x.num().magnitude().clone();
            solve_by_factoring(&q).contains(&p)
        })
        .collect();
    tally("congruence:p-is-root", outcomes)
}

fn lyapunov() -> InvariantResult {
    let ln_phi = ((1.0 + 5f64.sqrt()) / 2.0).ln();
    let rules = [
        WordRule::Constant(Turn::L),
        WordRule::Constant(Turn::R),
        WordRule::Alternating,
    ];
    tally(
        "lyapunov:range",
        rules.iter().map(|&rule| {
            lyapunov_estimate(rule, 100).is_ok_and(|est| {
                let last = est[est.len() - 1];
                (0.0..=ln_phi + 0.05).contains(&last)
            })
        }),
    )
}

/// Run every invariant over the tree to `depth`. Expensive families are
/// capped: identities and set equivalence at 10, intervals at 8.
pub fn verify(depth: u32) -> Result<VerificationReport> {
    if depth > VERIFY_MAX_DEPTH {
        return Err(Error::DepthLimit {
            depth,
            max: VERIFY_MAX_DEPTH,
        });
    }
    let mut results = Vec::new();
    relations(depth, &mut results);
    results.push(bundles(depth));
    results.push(dlp_identity(depth.min(10)));
    results.push(dlp_sets(depth.min(10)));
    results.push(dlp_bridge(100));
    results.push(branches((depth + 1).min(15)));
    results.push(approx(1000));
    question_mark(50, &mut results);
    intervals(depth.min(8), &mut results);
    results.push(unicity(depth));
    triples(depth.min(10), &mut results);
    results.push(congruence(depth));
    results.push(lyapunov());
    Ok(VerificationReport { depth, results })
}
