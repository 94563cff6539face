use std::process::ExitCode;

use markov_fractions::analysis::{
    approx_constant, interval_freeness, lyapunov_estimate, markov_interval, markov_irrationality,
    mcshane_partial_sum, saltus_mu, Enclosure, WordRule, MCSHANE_MAX_DEPTH,
};
use markov_fractions::farey::{
    farey_node_at, farey_path_to, question_mark_farey, question_mark_of_word, question_mark_salem,
};
use markov_fractions::markov::{
    generalized_enumerate, markov_fraction, mu, solve_congruence, unicity_scan, GeneralizedEquation,
};
use markov_fractions::slopes::{bundle_invariants, epsilon, is_exceptional_slope};
use markov_fractions::verify::verify;
use markov_fractions::{DyadicRational, Error, Fraction, MarkovTree, Turn};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::output::{emit_error, emit_ok, Format, Report, Table};
use crate::{Command, EquationKind, QmarkMethod, WordKind};

enum Failure {
    Domain(String),
    /// The command ran but a checked property failed.
    Check(Box<Report>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<Report, Failure>;

fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

fn enclosure_json(e: &Enclosure) -> Value {
    json!([e.lo.to_string(), e.hi.to_string()])
}

/// `x` rounded toward `-inf` (or `+inf` when `up`) to `digits` decimals.
fn decimal(x: &Fraction, digits: u32, up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = x * &Fraction::from_integer(scale.clone());
    let n = if up { scaled.ceil() } else { scaled.floor() };
    let negative = n < BigInt::from(0);
    let mag = n.magnitude().to_string();
    let mag = format!("{mag:0>width$}", width = digits as usize + 1);
    let (int, frac) = mag.split_at(mag.len() - digits as usize);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// `key: value` lines in output order.
fn text_of(outputs: &Value) -> String {
    let mut text = String::new();
    if let Value::Object(map) = outputs {
        for (k, v) in map {
            let v = match v {
                Value::String(s) => s.clone(),
                Value::Array(items) => items
                    .iter()
                    .map(|i| i.as_str().map_or_else(|| i.to_string(), str::to_string))
                    .collect::<Vec<_>>()
                    .join(" "),
                other => other.to_string(),
            };
            text.push_str(&format!("{k}: {v}\n"));
        }
    }
    text
}

fn plain(outputs: Value) -> Report {
    Report {
        text: text_of(&outputs),
        outputs,
        table: None,
    }
}

fn enumerate(depth: u32) -> Outcome {
    if depth > 20 {
        return Err(Error::DepthLimit { depth, max: 20 }.into());
    }
    let vertices = MarkovTree::reduced().enumerate(depth);
    let mut table = Table::new(vec!["depth", "word", "fraction"]);
    let mut text = String::new();
    let mut records = Vec::with_capacity(vertices.len());
    for v in &vertices {
        let (d, w, f) = (
            v.word.len().to_string(),
            v.word.to_string(),
            v.triple.f3.to_string(),
        );
        text.push_str(&format!("{d} {w} {f}\n"));
        records.push(json!({ "depth": d, "word": w, "fraction": f }));
        table.push(vec![d, w, f]);
    }
    Ok(Report {
        outputs: json!({ "count": vertices.len().to_string(), "vertices": records }),
        text,
        table: Some(table),
    })
}

fn mu_cmd(x: &Fraction) -> Outcome {
    let m = mu(x)?;
    Ok(plain(json!({
        "x": s(x),
        "mu": s(&m.value),
        "position": s(&m.position),
        "markov_number": s(m.markov_number()),
    })))
}

fn epsilon_cmd(x: &DyadicRational) -> Outcome {
    Ok(plain(json!({ "x": s(x), "epsilon": s(epsilon(x)) })))
}

fn slope(x: &Fraction) -> Outcome {
    let d = is_exceptional_slope(x);
    let n = &d.normalization;
    let mut out = Map::new();
    out.insert("slope".into(), s(x));
    out.insert(
        "exceptional".into(),
        s(if d.is_exceptional() { "yes" } else { "no" }),
    );
    out.insert("normalization".into(), s(n));
    if let Some(w) = &d.witness {
        out.insert("witness".into(), s(w));
    }
    if d.is_exceptional() {
        let (_, b) = bundle_invariants(x)?;
        out.insert("q".into(), s(&b.rank));
        out.insert("p".into(), s(&b.c1));
        out.insert("s".into(), s(&b.s));
        out.insert("c2".into(), s(&b.c2));
        out.insert(
            "form".into(),
            json!(b.form.iter().map(ToString::to_string).collect::<Vec<_>>()),
        );
        out.insert("discriminant".into(), s(b.discriminant()));
        out.insert("form_content".into(), s(b.form_content()));
    }
    Ok(plain(Value::Object(out)))
}

fn qmark(x: &Fraction, method: QmarkMethod) -> Outcome {
    let (name, value) = match method {
        QmarkMethod::Farey => ("farey", question_mark_farey(x)?),
        QmarkMethod::Salem => ("salem", question_mark_salem(x)?),
        QmarkMethod::Word => {
            let v = if x.is_zero() {
                DyadicRational::zero()
            } else if x == &Fraction::one() {
                DyadicRational::one()
            } else {
                question_mark_of_word(&farey_path_to(x)?)
            };
            ("word", v)
        }
    };
    Ok(plain(json!({
        "x": s(x),
        "method": name,
        "qmark": s(&value),
        "value": s(value.to_fraction()),
    })))
}

fn verify_cmd(depth: u32) -> Outcome {
    let report = verify(depth)?;
    let mut text = String::new();
    let mut table = Table::new(vec!["invariant", "passed", "checked", "status"]);
    let mut records = Vec::new();
    for r in &report.results {
        text.push_str(&format!("{r}\n"));
        let status = if r.holds() { "ok" } else { "fail" };
        records.push(json!({
            "name": r.name,
            "passed": r.passed.to_string(),
            "checked": r.checked.to_string(),
            "status": status,
        }));
        table.push(vec![
            r.name.clone(),
            r.passed.to_string(),
            r.checked.to_string(),
            status.into(),
        ]);
    }
    let all = report.all_hold();
    text.push_str(if all {
        "all invariants hold\n"
    } else {
        "some invariants FAILED\n"
    });
    let out = Report {
        outputs: json!({ "depth": depth.to_string(), "invariants": records, "all_hold": all }),
        text,
        table: Some(table),
    };
    if all {
        Ok(out)
    } else {
        Err(Failure::Check(Box::new(out)))
    }
}

fn approx(x: &Fraction) -> Outcome {
    let c = approx_constant(x);
    Ok(plain(
        json!({ "x": s(x), "constant": s(&c.value), "witness": s(&c.witness) }),
    ))
}

fn interval(x: &Fraction, bound: Option<&num_bigint::BigUint>) -> Outcome {
    let m = markov_fraction(x)?;
    let iv = markov_interval(&m);
    let mut out = Map::new();
    out.insert("center".into(), s(x));
    out.insert("position".into(), s(&m.position));
    out.insert("lo".into(), s(&iv.lo));
    out.insert("hi".into(), s(&iv.hi));
    out.insert("length".into(), s(&iv.length));
    out.insert("lagrange".into(), s(markov_irrationality_lagrange(x)?));
    if let Some(b) = bound {
        let b = BigInt::from(b.clone());
        if &b < x.den() {
            return Err(Error::OutOfRange {
                value: Fraction::from_integer(b),
                range: "freeness bound >= denominator",
            }
            .into());
        }
        out.insert("freeness_bound".into(), s(&b));
        out.insert(
            "free".into(),
            s(if interval_freeness(&m, &b) {
                "yes"
            } else {
                "no"
            }),
        );
    }
    Ok(plain(Value::Object(out)))
}

/// Lagrange number of the Markov fraction `x`, found through its preimage.
fn markov_irrationality_lagrange(x: &Fraction) -> Result<String, Error> {
    let m = markov_fraction(x)?;
    let pre = match m.word() {
        Some(w) => farey_node_at(w).value,
        None if x.is_zero() => Fraction::zero(),
        None => Fraction::one(),
    };
    Ok(markov_irrationality(&pre)?.lagrange.to_string())
}

fn enclosure_outputs(out: &mut Map<String, Value>, e: &Enclosure, precision: u32) {
    out.insert("enclosure".into(), enclosure_json(e));
    out.insert(
        "enclosure_decimal".into(),
        json!([
            decimal(&e.lo, precision, false),
            decimal(&e.hi, precision, true)
        ]),
    );
}

fn mcshane(depth: u32, precision: u32) -> Outcome {
    let e = mcshane_partial_sum(depth, precision)?;
    let mut out = Map::new();
    out.insert("depth".into(), s(depth));
    out.insert("precision".into(), s(precision));
    enclosure_outputs(&mut out, &e, precision);
    out.insert(
        "below_half".into(),
        s(if e.hi < Fraction::half() { "yes" } else { "no" }),
    );
    Ok(plain(Value::Object(out)))
}

fn saltus(x: &Fraction, depth: u32, precision: u32) -> Outcome {
    let e = saltus_mu(x, depth, precision)?;
    let mut out = Map::new();
    out.insert("x".into(), s(x));
    out.insert("depth".into(), s(depth));
    out.insert("precision".into(), s(precision));
    enclosure_outputs(&mut out, &e, precision);
    out.insert("mu".into(), s(&mu(x)?.value));
    Ok(plain(Value::Object(out)))
}

fn lyapunov(word: WordKind, steps: usize) -> Outcome {
    let rule = match word {
        WordKind::Const => WordRule::Constant(Turn::L),
        WordKind::Alternating => WordRule::Alternating,
    };
    let est = lyapunov_estimate(rule, steps)?;
    let fmt = |v: f64| format!("{v:.12}");
    let mut table = Table::new(vec!["step", "estimate"]);
    for (i, v) in est.iter().enumerate() {
        table.push(vec![(i + 1).to_string(), fmt(*v)]);
    }
    let name = match word {
        WordKind::Const => "const",
        WordKind::Alternating => "alternating",
    };
    let last = fmt(est[est.len() - 1]);
    Ok(Report {
        text: format!("word: {name}\nsteps: {steps}\nestimate: {last}\n"),
        outputs: json!({
            "word": name,
            "steps": steps.to_string(),
            "estimate": last,
            "trajectory": est.iter().map(|v| fmt(*v)).collect::<Vec<_>>(),
        }),
        table: Some(table),
    })
}

fn unicity(depth: u32) -> Outcome {
    let r = unicity_scan(depth)?;
    let dups: Vec<Value> = r
        .duplicates
        .iter()
        .map(|(q, ps)| json!({ "q": q.to_string(), "p": ps.iter().map(ToString::to_string).collect::<Vec<_>>() }))
        .collect();
    let out = json!({
        "depth": depth.to_string(),
        "fractions_scanned": r.fractions_scanned.to_string(),
        "duplicates": dups,
    });
    let mut text = format!(
        "depth: {depth}\nfractions scanned: {}\n",
        r.fractions_scanned
    );
    if r.duplicates.is_empty() {
        text.push_str("duplicate denominators: none\n");
    }
    for (q, ps) in &r.duplicates {
        let ps: Vec<String> = ps.iter().map(ToString::to_string).collect();
        text.push_str(&format!(
            "duplicate denominator {q}: numerators {}\n",
            ps.join(" ")
        ));
    }
    Ok(Report {
        outputs: out,
        text,
        table: None,
    })
}

fn triples(equation: EquationKind, depth: u32) -> Outcome {
    if depth > 24 {
        return Err(Error::DepthLimit { depth, max: 24 }.into());
    }
    let (name, eq) = match equation {
        EquationKind::Markov => ("markov", GeneralizedEquation::MARKOV),
        EquationKind::Quadric => ("quadric", GeneralizedEquation::QUADRIC),
        EquationKind::X3 => ("x3", GeneralizedEquation::X3),
    };
    let set = generalized_enumerate(&eq, depth)?;
    let mut table = Table::new(vec!["x", "y", "z"]);
    let mut text = String::new();
    for [x, y, z] in &set {
        text.push_str(&format!("({x}, {y}, {z})\n"));
        table.push(vec![x.to_string(), y.to_string(), z.to_string()]);
    }
    Ok(Report {
        outputs: json!({
            "equation": name,
            "depth": depth.to_string(),
            "count": set.len().to_string(),
            "triples": table.rows.clone(),
        }),
        text,
        table: Some(table),
    })
}

fn congruence(q: &num_bigint::BigUint) -> Outcome {
    let roots: Vec<String> = solve_congruence(q)
        .iter()
        .map(ToString::to_string)
        .collect();
    let mut table = Table::new(vec!["x"]);
    for r in &roots {
        table.push(vec![r.clone()]);
    }
    Ok(Report {
        text: format!("{}\n", roots.join(" ")),
        outputs: json!({ "q": q.to_string(), "solutions": roots }),
        table: Some(table),
    })
}

/// `l(q)` in floating point, for plot data only.
fn length_f64(q: &BigInt) -> f64 {
    let q = Fraction::from_integer(q.clone()).to_f64();
    if !q.is_finite() {
        return 0.0;
    }
    let inv = 1.0 / (q * q);
    4.0 * inv / (3.0 + (9.0 - 4.0 * inv).sqrt())
}

fn plot_mu(grid: u32, depth: u32) -> Outcome {
    if depth > MCSHANE_MAX_DEPTH {
        return Err(Error::DepthLimit {
            depth,
            max: MCSHANE_MAX_DEPTH,
        }
        .into());
    }
    if grid == 0 {
        return Err(Error::OutOfRange {
            value: Fraction::zero(),
            range: "grid >= 1",
        }
        .into());
    }
    // jumps of the truncated saltus sum, ordered by position
    let mut jumps: Vec<(Fraction, f64)> = vec![
        (Fraction::zero(), length_f64(&BigInt::from(1))),
        (Fraction::one(), length_f64(&BigInt::from(2))),
    ];
    for v in MarkovTree::reduced().enumerate(depth) {
        jumps.push((farey_node_at(&v.word).value, length_f64(v.triple.f3.den())));
    }
    jumps.sort_by(|a, b| a.0.cmp(&b.0));
    let mut prefix = vec![0.0];
    for (_, l) in &jumps {
        prefix.push(prefix[prefix.len() - 1] + l);
    }
    let base = -0.5 * jumps[0].1;
    let mut table = Table::new(vec!["x", "mu_step"]);
    for i in 0..=grid {
        let x = Fraction::new(i, grid)?;
        let below = jumps.partition_point(|(a, _)| a < &x);
        let at = jumps
            .get(below)
            .filter(|(a, _)| a == &x)
            .map_or(0.0, |(_, l)| 0.5 * l);
        table.push(vec![
            x.to_string(),
            format!("{:.15}", base + prefix[below] + at),
        ]);
    }
    let mut text = String::from("x,mu_step\n");
    for row in &table.rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    Ok(Report {
        outputs: json!({ "grid": grid.to_string(), "depth": depth.to_string(), "samples": table.rows.clone() }),
        text,
        table: Some(table),
    })
}

pub fn run(command: Command, format: Format) -> ExitCode {
    let (name, inputs, outcome): (&str, Value, Outcome) = match &command {
        Command::Enumerate { depth } => {
            ("enumerate", json!({ "depth": s(depth) }), enumerate(*depth))
        }
        Command::Mu { x } => ("mu", json!({ "x": s(x) }), mu_cmd(x)),
        Command::Epsilon { x } => ("epsilon", json!({ "x": s(x) }), epsilon_cmd(x)),
        Command::Slope { x } => ("slope", json!({ "x": s(x) }), slope(x)),
        Command::Qmark { x, method } => (
            "qmark",
            json!({ "x": s(x), "method": format!("{method:?}").to_lowercase() }),
            qmark(x, *method),
        ),
        Command::Verify { depth } => ("verify", json!({ "depth": s(depth) }), verify_cmd(*depth)),
        Command::ApproxConst { x } => ("approx-const", json!({ "x": s(x) }), approx(x)),
        Command::Interval { x, freeness_bound } => {
            let mut inputs = json!({ "x": s(x) });
            if let Some(b) = freeness_bound {
                inputs["freeness_bound"] = s(b);
            }
            ("interval", inputs, interval(x, freeness_bound.as_ref()))
        }
        Command::Mcshane { depth, precision } => (
            "mcshane",
            json!({ "depth": s(depth), "precision": s(precision) }),
            mcshane(*depth, *precision),
        ),
        Command::Saltus {
            x,
            depth,
            precision,
        } => (
            "saltus",
            json!({ "x": s(x), "depth": s(depth), "precision": s(precision) }),
            saltus(x, *depth, *precision),
        ),
        Command::Lyapunov { word, steps } => (
            "lyapunov",
            json!({ "word": format!("{word:?}").to_lowercase(), "steps": s(steps) }),
            lyapunov(*word, *steps),
        ),
        Command::Unicity { depth } => ("unicity", json!({ "depth": s(depth) }), unicity(*depth)),
        Command::Triples { equation, depth } => (
            "triples",
            json!({ "equation": format!("{equation:?}").to_lowercase(), "depth": s(depth) }),
            triples(*equation, *depth),
        ),
        Command::Congruence { q } => ("congruence", json!({ "q": s(q) }), congruence(q)),
        Command::PlotMu { grid, depth } => (
            "plot-mu",
            json!({ "grid": s(grid), "depth": s(depth) }),
            plot_mu(*grid, *depth),
        ),
    };
    let Value::Object(inputs) = inputs else {
        unreachable!("inputs are always an object")
    };
    let written = match outcome {
        Ok(report) => emit_ok(name, inputs, report, format).map(|_| ExitCode::SUCCESS),
        Err(Failure::Check(report)) => {
            emit_ok(name, inputs, *report, format).map(|_| ExitCode::from(1))
        }
        Err(Failure::Domain(detail)) => {
            emit_error(name, inputs, &detail, format).map(|_| ExitCode::from(1))
        }
    };
    written.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(1)
    })
}
