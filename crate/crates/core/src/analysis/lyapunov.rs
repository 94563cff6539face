use crate::error::{Error, Result};
use crate::farey::Turn;

/// Largest step count accepted by [`lyapunov_estimate`].
pub const LYAPUNOV_MAX_STEPS: usize = 10_000;

/// An infinite path through the tree, given turn by turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordRule {
    Constant(Turn),
    /// `LRLR...`
    Alternating,
}

impl WordRule {
    pub fn turn(&self, i: usize) -> Turn {
        match self {
            WordRule::Constant(t) => *t,
            WordRule::Alternating if i.is_multiple_of(2) => Turn::L,
            WordRule::Alternating => Turn::R,
        }
    }
}

/// `ln(3ab - c)` from `ln a`, `ln b`, `ln c`, for `3ab > c`.
fn log_vieta(la: f64, lb: f64, lc: f64) -> f64 {
    let base = 3f64.ln() + la + lb;
    base + (-(lc - base).exp()).ln_1p()
}

/// `ln(ln q_k) / k` for `k = 1..=n`, where `q_1 = 5` is the root and `q_k`
/// is the denominator after `k - 1` turns. The denominators are tracked only
/// through their logarithms.
pub fn lyapunov_estimate(rule: WordRule, n: usize) -> Result<Vec<f64>> {
    if n == 0 || n > LYAPUNOV_MAX_STEPS {
        return Err(Error::DepthLimit {
            depth: n.min(u32::MAX as usize) as u32,
            max: LYAPUNOV_MAX_STEPS as u32,
        });
    }
    // (lower parent, upper parent, vertex) of the root triple 0/1, 1/2, 2/5
    let (mut l1, mut l2, mut l3) = (0f64, 2f64.ln(), 5f64.ln());
    let mut out = Vec::with_capacity(n);
    out.push(l3.ln());
    for k in 1..n {
        (l1, l2, l3) = match rule.turn(k - 1) {
            Turn::L => (l1, l3, log_vieta(l1, l3, l2)),
            Turn::R => (l3, l2, log_vieta(l3, l2, l1)),
        };
        out.push(l3.ln() / (k + 1) as f64);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::TurnWord;
    use crate::markov::MarkovTree;

    const LN_PHI: f64 = 0.481_211_825_059_603_4;

    #[test]
    fn matches_exact_denominators() {
        let tree = MarkovTree::reduced();
        for rule in [
            WordRule::Constant(Turn::L),
            WordRule::Constant(Turn::R),
            WordRule::Alternating,
        ] {
            let est = lyapunov_estimate(rule, 20).unwrap();
            for k in 1..=20 {
                let word = TurnWord::new((0..k - 1).map(|i| rule.turn(i)).collect());
                let q = tree.vertex_at(&word).f3.den().clone();
                let exact = q.to_string().len() as f64; // ~ log10 q
                let via_log = (est[k - 1] * k as f64).exp() / std::f64::consts::LN_10;
                assert!((exact - via_log).abs() <= 1.0, "{rule:?} k={k}");
            }
        }
    }

    #[test]
    fn examples() {
        let est = lyapunov_estimate(WordRule::Alternating, 1).unwrap();
        assert!((est[0] - 5f64.ln().ln()).abs() < 1e-12);
        let alt = lyapunov_estimate(WordRule::Alternating, 100).unwrap();
        assert!((alt[99] - LN_PHI).abs() < 0.02, "{}", alt[99]);
        let cst = lyapunov_estimate(WordRule::Constant(Turn::L), 100).unwrap();
        assert!(cst[99] < 0.05, "{}", cst[99]);
        assert!(cst[99] < cst[49] && cst[49] < cst[19]);
        // the first few steps overshoot before the running value settles
        for est in [
            alt,
            cst,
            lyapunov_estimate(WordRule::Constant(Turn::R), 100).unwrap(),
        ] {
            assert!(est[9..].iter().all(|&v| (0.0..=LN_PHI + 0.05).contains(&v)));
        }
        assert!(lyapunov_estimate(WordRule::Alternating, 0).is_err());
    }
}
