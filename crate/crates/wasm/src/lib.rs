//! Browser bindings: the Springborn step function, Minkowski's question mark
//! function, and a lookup for a single fraction. Values crossing into
//! JavaScript are flat `f64` arrays or plain text.

use markov_fractions::analysis::{approx_constant, length_surd, markov_interval};
use markov_fractions::farey::{farey_node_at, question_mark_farey, rationals_up_to};
use markov_fractions::markov::{markov_fraction, mu};
use markov_fractions::slopes::{bundle_invariants, is_exceptional_slope};
use markov_fractions::{Fraction, MarkovTree};
use wasm_bindgen::prelude::wasm_bindgen;

const MAX_DEPTH: u32 = 12;
const MAX_DENOMINATOR: u32 = 400;

/// Jumps of the Springborn function at every Farey point of depth at most
/// `depth`, as `[x, mu(x) - l/2, mu(x) + l/2]` triples sorted by `x`.
#[wasm_bindgen]
pub fn mu_jumps(depth: u32) -> Vec<f64> {
    let tree = MarkovTree::reduced();
    let (lo, hi) = tree.seeds();
    let mut points: Vec<(Fraction, Fraction)> = vec![
        (Fraction::zero(), lo.clone()),
        (Fraction::one(), hi.clone()),
    ];
    for v in tree.enumerate(depth.min(MAX_DEPTH)) {
        points.push((farey_node_at(&v.word).value, v.triple.f3));
    }
    points.sort();
    let mut out = Vec::with_capacity(3 * points.len());
    for (x, m) in &points {
        let half = length_surd(m.den()).to_f64() / 2.0;
        let centre = m.to_f64();
        out.extend([x.to_f64(), centre - half, centre + half]);
    }
    out
}

/// `[x, ?(x)]` pairs over all reduced `x` in `[0, 1]` with denominator at most `max_den`.
#[wasm_bindgen]
pub fn question_mark_points(max_den: u32) -> Vec<f64> {
    rationals_up_to(u64::from(max_den.clamp(1, MAX_DENOMINATOR)))
        .iter()
        .flat_map(|x| {
            let y = question_mark_farey(x).expect("x in [0, 1]").to_fraction();
            [x.to_f64(), y.to_f64()]
        })
        .collect()
}

/// Plain text description of a fraction `p/q`: its Markov fraction (for
/// `x` in `[0, 1]`), slope membership, and, for exceptional slopes, the
/// bundle invariants and the free interval.
#[wasm_bindgen]
pub fn describe(input: &str) -> String {
    let x: Fraction = match input.trim().parse() {
        Ok(x) => x,
        Err(e) => return format!("error: {e}"),
    };
    let mut lines = vec![format!("x = {x}")];
    if let Ok(m) = mu(&x) {
        lines.push(format!("mu(x) = {} at {}", m.value, m.position));
    }
    let decision = is_exceptional_slope(&x);
    lines.push(format!("normalized slope: {}", decision.normalization));
    match &decision.witness {
        Some(w) => lines.push(format!("exceptional slope, tree position {w}")),
        None => lines.push("not an exceptional slope".into()),
    }
    if let Ok((_, b)) = bundle_invariants(&x) {
        let [a, bb, c] = &b.form;
        lines.push(format!(
            "rank {}, c1 {}, s {}, c2 {}",
            b.rank, b.c1, b.s, b.c2
        ));
        lines.push(format!(
            "Markov form ({a}, {bb}, {c}), discriminant {}",
            b.discriminant()
        ));
        if let Ok(m) = markov_fraction(&decision.normalization.reduced) {
            let iv = markov_interval(&m);
            lines.push(format!(
                "free interval around {}: [{}, {}]",
                m.value, iv.lo, iv.hi
            ));
        }
    }
    lines.push(format!(
        "approximation constant {}",
        approx_constant(&x).value
    ));
    lines.join("\n")
}
