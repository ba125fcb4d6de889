//! Registered property suites and witness replay.
//!
//! Random laws draw from L with the branch of `f(1)` chosen by the case
//! index, so every combination of `f(1) = 1` and `f(1) < 1` across the
//! inputs recurs every `2^arity` cases.

use std::sync::Arc;

use rand::Rng;

use crate::conv::{self, join_conv, meet_conv, negation, order_join, order_meet_by_definition, order_meet_by_envelopes};
use crate::doc;
use crate::error::{AlgebraError, Result};
use crate::interval::{self, condition_laws, Degenerate, Interval, IntervalOp};
use crate::pwl::{merge_sorted, PiecewiseFn};
use crate::rational::{self, Rational};
use crate::report::{Expect, PropertyReport, Value};
use crate::tnorm::{self, axiom_laws, corner_law, ScalarTNorm};
use crate::verify::engine::{Cases, Law, Suite, Verdict};
use crate::verify::generator::{EndValue, Generator, GeneratorConfig};
use crate::verify::oracle::{aligned_grid, oracle_convolution};

pub const SUITES: [&str; 10] = [
    "star-axioms",
    "star-envelopes",
    "envelope-laws",
    "oracle-certification",
    "structure-of-M",
    "absorption-on-M",
    "circled-star",
    "interval-tnorms",
    "scalar-tnorms",
    "generator",
];

pub fn suite(name: &str) -> Result<Suite> {
    let (randomized, laws) = match name {
        "star-axioms" => (true, star_axioms()),
        "star-envelopes" => (true, star_envelopes()),
        "envelope-laws" => (true, envelope_laws()),
        "oracle-certification" => (true, oracle_certification()),
        "structure-of-M" => (true, structure_of_m()),
        "absorption-on-M" => (true, absorption_on_m()),
        "circled-star" => (false, circled_star()),
        "interval-tnorms" => (false, interval_tnorms()),
        "scalar-tnorms" => (false, scalar_tnorms()),
        "generator" => (true, generator_laws()),
        _ => return Err(AlgebraError::Unknown { kind: "suite", name: name.to_string() }),
    };
    Ok(Suite { name: name.to_string(), randomized, laws })
}

pub fn run_suite(name: &str, cfg: &GeneratorConfig, trials: usize) -> Result<PropertyReport> {
    cfg.validate()?;
    Ok(suite(name)?.run(cfg, trials))
}

/// Re-evaluates the law named in a witness document on its stored inputs.
pub fn replay(text: &str) -> Result<(String, String, Verdict)> {
    let parsed: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| AlgebraError::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
    let field = |k: &str| {
        parsed.get(k).and_then(|v| v.as_str()).ok_or_else(|| AlgebraError::Parse(format!("witness lacks `{k}`")))
    };
    let (suite_name, law_id) = (field("suite")?, field("law")?);
    let s = suite(suite_name)?;
    let law = s.law(law_id).ok_or_else(|| AlgebraError::Unknown { kind: "law", name: law_id.to_string() })?;
    let entries = parsed
        .get("inputs")
        .and_then(|v| v.as_array())
        .ok_or_else(|| AlgebraError::Parse("witness lacks `inputs`".into()))?;
    let mut inputs = Vec::with_capacity(entries.len());
    for (entry, expected_name) in entries.iter().zip(&law.names) {
        let (name, value) = doc::parse_witness_input(entry)?;
        if name != *expected_name {
            return Err(AlgebraError::Parse(format!("input `{name}` where `{expected_name}` was expected")));
        }
        inputs.push(value);
    }
    if inputs.len() != law.names.len() {
        return Err(AlgebraError::Parse(format!("law {law_id} takes {} inputs", law.names.len())));
    }
    Ok((suite_name.to_string(), law_id.to_string(), law.evaluate(&inputs)))
}

// ---- law builders ----

type Draw = fn(&mut Generator, usize) -> Vec<PiecewiseFn>;

fn fn_law(
    id: &str,
    expect: Expect,
    names: &[&'static str],
    draw: Draw,
    check: impl Fn(&[&PiecewiseFn]) -> Result<Verdict> + Send + Sync + 'static,
) -> Law {
    Law::new(
        id,
        expect,
        names,
        Cases::Random,
        move |gen, case| draw(gen, case).into_iter().map(Value::Function).collect(),
        move |v| check(&v.iter().map(Value::function).collect::<Vec<_>>()),
    )
}

fn holds(id: &str, names: &[&'static str], draw: Draw, check: impl Fn(&[&PiecewiseFn]) -> Result<Verdict> + Send + Sync + 'static) -> Law {
    fn_law(id, Expect::Holds, names, draw, check)
}

fn branch(case: usize, slot: usize) -> EndValue {
    if (case >> slot) & 1 == 0 {
        EndValue::One
    } else {
        EndValue::BelowOne
    }
}

fn l1(gen: &mut Generator, case: usize) -> Vec<PiecewiseFn> {
    vec![gen.normal_convex_with(branch(case, 0))]
}

fn l2(gen: &mut Generator, case: usize) -> Vec<PiecewiseFn> {
    (0..2).map(|s| gen.normal_convex_with(branch(case, s))).collect()
}

fn l3(gen: &mut Generator, case: usize) -> Vec<PiecewiseFn> {
    (0..3).map(|s| gen.normal_convex_with(branch(case, s))).collect()
}

/// `f ⊑ g` on even cases (via `f = g ⊓ k`), independent on odd cases.
fn l2_comparable(gen: &mut Generator, case: usize) -> Vec<PiecewiseFn> {
    let g = gen.normal_convex_with(branch(case / 2, 0));
    let k = gen.normal_convex_with(branch(case / 2, 1));
    if case % 2 == 0 {
        vec![meet_conv(&g, &k), g]
    } else {
        vec![k, g]
    }
}

/// `(f, g, h)` with `f ⊑ g` built as `f = g ⊓ k`.
fn l3_ordered(gen: &mut Generator, case: usize) -> Vec<PiecewiseFn> {
    let g = gen.normal_convex_with(branch(case, 0));
    let k = gen.normal_convex_with(branch(case, 1));
    let h = gen.normal_convex_with(branch(case, 2));
    vec![meet_conv(&g, &k), g, h]
}

fn m1(gen: &mut Generator, _: usize) -> Vec<PiecewiseFn> {
    vec![gen.arbitrary()]
}

fn m2(gen: &mut Generator, _: usize) -> Vec<PiecewiseFn> {
    vec![gen.arbitrary(), gen.arbitrary()]
}

/// M pairs; every third case is built to satisfy `f ⊑ g`.
fn m2_meet_comparable(gen: &mut Generator, case: usize) -> Vec<PiecewiseFn> {
    let (g, k) = (gen.arbitrary(), gen.arbitrary());
    if case % 3 == 0 {
        vec![meet_conv(&g, &k), g]
    } else {
        vec![k, g]
    }
}

/// M pairs; every third case is built to satisfy `f ⪯ g`.
fn m2_join_comparable(gen: &mut Generator, case: usize) -> Vec<PiecewiseFn> {
    let (f, k) = (gen.arbitrary(), gen.arbitrary());
    if case % 3 == 0 {
        let g = join_conv(&f, &k);
        vec![f, g]
    } else {
        vec![f, k]
    }
}

/// M on even cases, L on odd cases.
fn m_or_l(gen: &mut Generator, case: usize) -> Vec<PiecewiseFn> {
    if case % 2 == 0 {
        vec![gen.arbitrary()]
    } else {
        vec![gen.normal_convex()]
    }
}

fn n1(gen: &mut Generator, _: usize) -> Vec<PiecewiseFn> {
    vec![gen.normal()]
}

fn points2(gen: &mut Generator, _: usize) -> Vec<PiecewiseFn> {
    vec![gen.point_indicator(), gen.point_indicator()]
}

fn intervals2(gen: &mut Generator, _: usize) -> Vec<PiecewiseFn> {
    vec![gen.interval_indicator(), gen.interval_indicator()]
}

fn interval1(gen: &mut Generator, _: usize) -> Vec<PiecewiseFn> {
    vec![gen.interval_indicator()]
}

fn star(f: &PiecewiseFn, g: &PiecewiseFn) -> Result<PiecewiseFn> {
    conv::star(f, g)
}

fn at_one(f: &PiecewiseFn) -> Rational {
    f.value_at(&rational::one())
}

fn end_min(f: &PiecewiseFn, g: &PiecewiseFn) -> Rational {
    rational::min(&at_one(f), &at_one(g))
}

fn is_unit(f: &PiecewiseFn) -> bool {
    *f == PiecewiseFn::unit()
}

fn eq(expected: &PiecewiseFn, actual: &PiecewiseFn) -> Verdict {
    Verdict::eq(expected, actual)
}

fn req(expected: &Rational, actual: &Rational) -> Verdict {
    Verdict::eq(&rational::fmt(expected), &rational::fmt(actual))
}

/// Agreement of two functions on `(0, 1]`: every one-sided limit and point
/// value at their common breakpoints, except the point value at 0.
fn same_off_zero(a: &PiecewiseFn, b: &PiecewiseFn) -> Verdict {
    let grid = merge_sorted(a.breakpoints(), b.breakpoints());
    for x in &grid {
        let (la, lb) = (a.local(x), b.local(x));
        let ok = if x == &rational::zero() { la.right == lb.right } else { la == lb };
        if !ok {
            return Verdict::Mismatch {
                expected: format!("{a} at {}", rational::fmt(x)),
                actual: format!("{b} at {}", rational::fmt(x)),
            };
        }
    }
    Verdict::Holds
}

fn iff(lhs: bool, rhs: bool, what: &str) -> Verdict {
    if lhs == rhs {
        Verdict::Holds
    } else {
        Verdict::Mismatch { expected: format!("{what}: both sides {lhs}"), actual: format!("right side {rhs}") }
    }
}

// ---- star ----

fn star_axioms() -> Vec<Law> {
    vec![
        holds("O1", &["f", "g"], l2, |v| Ok(eq(&star(v[0], v[1])?, &star(v[1], v[0])?))),
        holds("O2", &["f", "g", "h"], l3, |v| {
            let lhs = star(&star(v[0], v[1])?, v[2])?;
            let rhs = star(v[0], &star(v[1], v[2])?)?;
            Ok(eq(&lhs, &rhs))
        }),
        holds("O3", &["f"], l1, |v| {
            let u = PiecewiseFn::unit();
            Ok(Verdict::all([eq(v[0], &star(v[0], &u)?), eq(v[0], &star(&u, v[0])?)]))
        }),
        holds("O4", &["f", "g", "h"], l3_ordered, |v| {
            if !order_meet_by_definition(v[0], v[1]) {
                return Ok(Verdict::Vacuous);
            }
            let (l, r) = (star(v[0], v[2])?, star(v[1], v[2])?);
            Ok(Verdict::truth(order_meet_by_definition(&l, &r), format!("{l} ⊑ {r}")))
        }),
        holds("O4'", &["f", "g", "h"], l3, |v| {
            let lhs = star(v[0], &join_conv(v[1], v[2]))?;
            let rhs = join_conv(&star(v[0], v[1])?, &star(v[0], v[2])?);
            Ok(eq(&rhs, &lhs))
        }),
        holds("O4''", &["f", "g", "h"], l3, |v| {
            let lhs = star(v[0], &meet_conv(v[1], v[2]))?;
            let rhs = meet_conv(&star(v[0], v[1])?, &star(v[0], v[2])?);
            Ok(eq(&rhs, &lhs))
        }),
        holds("O5", &["k"], interval1, |v| {
            let (_, b) = v[0].as_indicator().expect("drawn as an interval indicator");
            let top = PiecewiseFn::indicator(&rational::zero(), &rational::one())?;
            Ok(eq(&PiecewiseFn::indicator(&rational::zero(), &b)?, &star(&top, v[0])?))
        }),
        holds("O6", &["f", "g"], points2, |v| {
            let (x1, x2) = (v[0].as_point_indicator().expect("point"), v[1].as_point_indicator().expect("point"));
            Ok(eq(&PiecewiseFn::point_indicator(&rational::min(&x1, &x2))?, &star(v[0], v[1])?))
        }),
        holds("O7", &["f", "g"], intervals2, |v| {
            let (a1, b1) = v[0].as_indicator().expect("interval");
            let (a2, b2) = v[1].as_indicator().expect("interval");
            let expected = PiecewiseFn::indicator(&rational::min(&a1, &a2), &rational::min(&b1, &b2))?;
            Ok(eq(&expected, &star(v[0], v[1])?))
        }),
        holds("closure", &["f", "g"], l2, |v| {
            let h = star(v[0], v[1])?;
            Ok(Verdict::truth(h.is_normal_convex(), format!("{h} in L")))
        }),
        holds("R1-identity", &["f", "g"], l2, |v| {
            let h = star(v[0], v[1])?;
            let expected = rational::min(&v[0].balance_data()?.r1, &v[1].balance_data()?.r1);
            Ok(req(&expected, &h.balance_data()?.r1))
        }),
        holds("value-at-one", &["f", "g"], l2, |v| {
            if is_unit(v[0]) || is_unit(v[1]) {
                return Ok(Verdict::Vacuous);
            }
            let expected = if end_min(v[0], v[1]) == rational::one() { rational::one() } else { rational::zero() };
            Ok(req(&expected, &at_one(&star(v[0], v[1])?)))
        }),
        holds("case-overlap", &["f", "g"], l2, |v| {
            if end_min(v[0], v[1]) != rational::one() {
                return Ok(Verdict::Vacuous);
            }
            Ok(eq(&meet_conv(v[0], v[1]), &star(v[0], v[1])?))
        }),
    ]
}

fn star_envelopes() -> Vec<Law> {
    vec![
        holds("left-envelope", &["f", "g"], l2, |v| {
            Ok(eq(&meet_conv(v[0], v[1]).left_envelope(), &star(v[0], v[1])?.left_envelope()))
        }),
        holds("right-envelope-below-one", &["f", "g"], l2, |v| {
            if is_unit(v[0]) || is_unit(v[1]) || end_min(v[0], v[1]) == rational::one() {
                return Ok(Verdict::Vacuous);
            }
            let expected = meet_conv(v[0], v[1]).right_envelope().with_value_at_one(rational::zero());
            Ok(eq(&expected, &star(v[0], v[1])?.right_envelope()))
        }),
        holds("right-envelope-at-one", &["f", "g"], l2, |v| {
            if is_unit(v[0]) || is_unit(v[1]) || end_min(v[0], v[1]) != rational::one() {
                return Ok(Verdict::Vacuous);
            }
            Ok(eq(&meet_conv(v[0], v[1]).right_envelope(), &star(v[0], v[1])?.right_envelope()))
        }),
        holds("below-factors", &["f", "g"], l2, |v| {
            let h = star(v[0], v[1])?;
            Ok(Verdict::all([
                Verdict::truth(order_meet_by_definition(&h, v[0]), "f✶g ⊑ f"),
                Verdict::truth(order_meet_by_definition(&h, v[1]), "f✶g ⊑ g"),
            ]))
        }),
        holds("not-unit", &["f", "g"], l2, |v| {
            if is_unit(v[0]) || is_unit(v[1]) {
                return Ok(Verdict::Vacuous);
            }
            Ok(Verdict::truth(!is_unit(&star(v[0], v[1])?), "f✶g ≠ 1_{1}"))
        }),
    ]
}

// ---- envelopes ----

fn constant_sup(f: &PiecewiseFn) -> PiecewiseFn {
    PiecewiseFn::constant(f.sup())
}

fn is_increasing(f: &PiecewiseFn) -> bool {
    f.left_envelope() == *f
}

fn is_decreasing(f: &PiecewiseFn) -> bool {
    f.right_envelope() == *f
}

/// `f(y) >= f(x) ∧ f(z)` for all `x <= y <= z`, checked over every point
/// value and one-sided limit at the breakpoints and piece midpoints. Pieces
/// are linear, so these carry every infimum and supremum.
pub fn brute_force_convex(f: &PiecewiseFn) -> bool {
    let mut seq: Vec<Rational> = Vec::new();
    let pts = f.probe_points();
    let last = pts.len() - 1;
    for (i, x) in pts.iter().enumerate() {
        let l = f.local(x);
        if i > 0 {
            seq.push(l.left);
        }
        seq.push(l.value);
        if i < last {
            seq.push(l.right);
        }
    }
    let n = seq.len();
    let mut prefix = vec![rational::zero(); n];
    let mut suffix = vec![rational::zero(); n];
    for i in 1..n {
        prefix[i] = rational::max(&prefix[i - 1], &seq[i - 1]);
    }
    for i in (0..n - 1).rev() {
        suffix[i] = rational::max(&suffix[i + 1], &seq[i + 1]);
    }
    (1..n.saturating_sub(1)).all(|j| seq[j] >= rational::min(&prefix[j], &suffix[j]))
}

fn interior_probes(f: &PiecewiseFn, lo: &Rational, hi: &Rational) -> Vec<Rational> {
    let mut pts: Vec<Rational> = f.probe_points().into_iter().filter(|x| x > lo && x < hi).collect();
    pts.push(rational::midpoint(lo, hi));
    pts
}

fn envelope_laws() -> Vec<Law> {
    vec![
        holds("P1", &["f"], m1, |v| {
            let f = v[0];
            let env = f.left_envelope().min(&f.right_envelope());
            Ok(Verdict::truth(f.le(&env), format!("{f} <= {env}")))
        }),
        holds("P2", &["f"], m1, |v| {
            let (l, r) = (v[0].left_envelope(), v[0].right_envelope());
            Ok(Verdict::all([eq(&l, &l.left_envelope()), eq(&r, &r.right_envelope())]))
        }),
        holds("P3", &["f"], m1, |v| {
            let s = constant_sup(v[0]);
            Ok(Verdict::all([
                eq(&s, &v[0].left_envelope().right_envelope()),
                eq(&s, &v[0].right_envelope().left_envelope()),
            ]))
        }),
        holds("P4", &["f", "g"], m2_meet_comparable, |v| {
            let (f, g) = (v[0], v[1]);
            let rhs = f.right_envelope().min(g).le(f) && f.le(&g.right_envelope());
            Ok(iff(order_meet_by_definition(f, g), rhs, "f ⊑ g iff f^R ∧ g <= f <= g^R"))
        }),
        holds("P5", &["f", "g"], m2_join_comparable, |v| {
            let (f, g) = (v[0], v[1]);
            let rhs = f.min(&g.left_envelope()).le(g) && g.le(&f.left_envelope());
            Ok(iff(order_join(f, g), rhs, "f ⪯ g iff f ∧ g^L <= g <= f^L"))
        }),
        holds("P6", &["f"], m_or_l, |v| {
            Ok(iff(v[0].is_convex(), brute_force_convex(v[0]), "envelope criterion iff triple check"))
        }),
        holds("sup-split", &["f"], m1, |v| {
            let f = v[0];
            let s = constant_sup(f);
            Ok(Verdict::all([
                eq(&s, &f.left_envelope().max(&f.right_envelope())),
                eq(&s, &f.left_envelope().max(&f.weak_right_envelope())),
                eq(&s, &f.right_envelope().max(&f.weak_left_envelope())),
            ]))
        }),
        holds("monotone", &["f"], m1, |v| {
            let f = v[0];
            Ok(Verdict::all([
                Verdict::truth(is_increasing(&f.left_envelope()), "f^L increasing"),
                Verdict::truth(is_increasing(&f.weak_left_envelope()), "f^Lw increasing"),
                Verdict::truth(is_decreasing(&f.right_envelope()), "f^R decreasing"),
                Verdict::truth(is_decreasing(&f.weak_right_envelope()), "f^Rw decreasing"),
            ]))
        }),
        holds("meet-L", &["f", "g"], l2, |v| {
            Ok(eq(&v[0].left_envelope().max(&v[1].left_envelope()), &meet_conv(v[0], v[1]).left_envelope()))
        }),
        holds("meet-R", &["f", "g"], l2, |v| {
            Ok(eq(&v[0].right_envelope().min(&v[1].right_envelope()), &meet_conv(v[0], v[1]).right_envelope()))
        }),
        holds("join-L", &["f", "g"], l2, |v| {
            Ok(eq(&v[0].left_envelope().min(&v[1].left_envelope()), &join_conv(v[0], v[1]).left_envelope()))
        }),
        holds("join-R", &["f", "g"], l2, |v| {
            Ok(eq(&v[0].right_envelope().max(&v[1].right_envelope()), &join_conv(v[0], v[1]).right_envelope()))
        }),
        holds("values-at-one", &["f", "g"], l2, |v| {
            let (m, j) = (meet_conv(v[0], v[1]), join_conv(v[0], v[1]));
            let lo = end_min(v[0], v[1]);
            let hi = rational::max(&at_one(v[0]), &at_one(v[1]));
            Ok(Verdict::all([
                req(&lo, &at_one(&m)),
                req(&lo, &at_one(&m.right_envelope())),
                req(&hi, &at_one(&j)),
                req(&hi, &at_one(&j.right_envelope())),
            ]))
        }),
        holds("weak-left", &["f"], m1, |v| {
            let (f, env) = (v[0], v[0].left_envelope());
            let weak = f.weak_left_envelope();
            let zero = rational::zero();
            let mut checks = vec![req(&f.value_at(&zero), &weak.value_at(&zero))];
            for x in f.probe_points().iter().chain(env.probe_points().iter()).filter(|x| **x > zero) {
                let w = weak.value_at(x);
                checks.push(req(&env.sup_on(&zero, x, false, true)?.value, &w));
                checks.push(req(&env.left_limit(x)?, &w));
                checks.push(req(&f.sup_on(&zero, x, false, true)?.value, &w));
            }
            Ok(Verdict::all(checks))
        }),
        holds("weak-right", &["f"], m1, |v| {
            let (f, env) = (v[0], v[0].right_envelope());
            let weak = f.weak_right_envelope();
            let one = rational::one();
            let mut checks = vec![req(&f.value_at(&one), &weak.value_at(&one))];
            for x in f.probe_points().iter().chain(env.probe_points().iter()).filter(|x| **x < one) {
                let w = weak.value_at(x);
                checks.push(req(&env.sup_on(x, &one, true, false)?.value, &w));
                checks.push(req(&env.right_limit(x)?, &w));
                checks.push(req(&f.sup_on(x, &one, true, false)?.value, &w));
            }
            Ok(Verdict::all(checks))
        }),
        holds("weak-meet", &["f", "g"], l2, |v| {
            let lhs = meet_conv(v[0], v[1]).weak_left_envelope();
            Ok(same_off_zero(&v[0].weak_left_envelope().max(&v[1].weak_left_envelope()), &lhs))
        }),
        holds("weak-join", &["f", "g"], l2, |v| {
            let lhs = join_conv(v[0], v[1]).weak_left_envelope();
            Ok(same_off_zero(&v[0].weak_left_envelope().min(&v[1].weak_left_envelope()), &lhs))
        }),
        holds("L1-meet", &["f", "g"], l2, |v| {
            let (a, b) = (v[0].balance_data()?, v[1].balance_data()?);
            Ok(req(&rational::min(&a.l1, &b.l1), &meet_conv(v[0], v[1]).balance_data()?.l1))
        }),
        holds("R1-meet", &["f", "g"], l2, |v| {
            let (a, b) = (v[0].balance_data()?, v[1].balance_data()?);
            Ok(req(&rational::min(&a.r1, &b.r1), &meet_conv(v[0], v[1]).balance_data()?.r1))
        }),
        holds("L1-join", &["f", "g"], l2, |v| {
            let (a, b) = (v[0].balance_data()?, v[1].balance_data()?);
            Ok(req(&rational::max(&a.l1, &b.l1), &join_conv(v[0], v[1]).balance_data()?.l1))
        }),
        holds("R1-join", &["f", "g"], l2, |v| {
            let (a, b) = (v[0].balance_data()?, v[1].balance_data()?);
            Ok(req(&rational::max(&a.r1, &b.r1), &join_conv(v[0], v[1]).balance_data()?.r1))
        }),
        holds("five-branch", &["f"], l1, |v| Ok(eq(v[0], &v[0].convex_profile()?))),
        holds("L1-le-R1", &["f"], n1, |v| {
            let d = v[0].balance_data()?;
            Ok(Verdict::truth(d.l1 <= d.r1, format!("L1 = {} <= R1 = {}", d.l1, d.r1)))
        }),
        holds("balance-points", &["f"], l1, |v| {
            let d = v[0].balance_data()?;
            Ok(Verdict::all([req(&d.r1, &d.bf), req(&d.l1, &d.cf)]))
        }),
        holds("plateau", &["f"], n1, |v| {
            let f = v[0];
            let d = f.balance_data()?;
            let (one, zero) = (rational::one(), rational::zero());
            let (fl, fr) = (f.left_envelope(), f.right_envelope());
            let mut checks = Vec::new();
            if d.l1 < one {
                checks.push(req(&one, &fl.right_limit(&d.l1)?));
                checks.push(req(&one, &fl.value_at(&one)));
                for x in interior_probes(&fl, &d.l1, &one) {
                    checks.push(req(&one, &fl.value_at(&x)));
                }
            }
            if d.r1 > zero {
                checks.push(req(&one, &fr.left_limit(&d.r1)?));
                checks.push(req(&one, &fr.value_at(&zero)));
                for x in interior_probes(&fr, &zero, &d.r1) {
                    checks.push(req(&one, &fr.value_at(&x)));
                }
            }
            Ok(Verdict::all(checks))
        }),
        holds("right-envelope-open", &["f"], l1, |v| {
            let f = v[0];
            let one = rational::one();
            if f.balance_data()?.r1 == one {
                return Ok(Verdict::Vacuous);
            }
            let fr = f.right_envelope();
            let mut checks = Vec::new();
            for x in f.probe_points().iter().chain(fr.probe_points().iter()).filter(|x| **x < one) {
                checks.push(req(&fr.value_at(x), &f.sup_on(x, &one, false, true)?.value));
            }
            Ok(Verdict::all(checks))
        }),
    ]
}

// ---- oracle ----

fn l2_on_twentieths(gen: &mut Generator, case: usize) -> Vec<PiecewiseFn> {
    let cfg = GeneratorConfig { denominator_bound: 20, ..gen.config().clone() };
    let seed = gen.rng().gen();
    l2(&mut Generator::with_stream(cfg, seed), case)
}

fn oracle_law(id: &str, carrier: ScalarTNorm, closed: fn(&PiecewiseFn, &PiecewiseFn) -> PiecewiseFn) -> Law {
    holds(id, &["f", "g"], l2_on_twentieths, move |v| {
        let spec = conv::ConvolutionSpec::new(ScalarTNorm::MIN, carrier)?;
        let grid = aligned_grid(20, &[v[0], v[1]]);
        let h = closed(v[0], v[1]);
        let samples = oracle_convolution(&spec, v[0], v[1], &grid)?;
        Ok(Verdict::all(samples.iter().map(|(x, s)| {
            let c = h.value_at(x);
            if c == *s {
                Verdict::Holds
            } else {
                Verdict::Mismatch {
                    expected: format!("oracle {} at {}", rational::fmt(s), rational::fmt(x)),
                    actual: format!("closed form {}", rational::fmt(&c)),
                }
            }
        })))
    })
}

fn oracle_certification() -> Vec<Law> {
    vec![oracle_law("meet-vs-oracle", ScalarTNorm::MIN, meet_conv), oracle_law("join-vs-oracle", ScalarTNorm::MAX, join_conv)]
}

// ---- structure ----

fn structure_of_m() -> Vec<Law> {
    vec![
        holds("de-morgan-join", &["f", "g"], m2, |v| {
            Ok(eq(&meet_conv(&negation(v[0]), &negation(v[1])), &negation(&join_conv(v[0], v[1]))))
        }),
        holds("de-morgan-meet", &["f", "g"], m2, |v| {
            Ok(eq(&join_conv(&negation(v[0]), &negation(v[1])), &negation(&meet_conv(v[0], v[1]))))
        }),
        holds("orders-coincide-on-L", &["f", "g"], l2_comparable, |v| {
            Ok(iff(order_meet_by_definition(v[0], v[1]), order_join(v[0], v[1]), "f ⊑ g iff f ⪯ g"))
        }),
        holds("envelope-order-on-L", &["f", "g"], l2_comparable, |v| {
            Ok(iff(
                order_meet_by_definition(v[0], v[1]),
                order_meet_by_envelopes(v[0], v[1]),
                "f ⊑ g iff g^L <= f^L and f^R <= g^R",
            ))
        }),
        holds("bounds-of-L", &["f"], l1, |v| {
            let bottom = PiecewiseFn::point_indicator(&rational::zero())?;
            Ok(Verdict::all([
                Verdict::truth(conv::order_meet(v[0], &PiecewiseFn::unit()), "f ⊑ 1_{1}"),
                Verdict::truth(conv::order_meet(&bottom, v[0]), "1_{0} ⊑ f"),
            ]))
        }),
        holds("absorption-on-L", &["f", "g"], l2, |v| {
            Ok(Verdict::all([
                eq(v[0], &join_conv(v[0], &meet_conv(v[0], v[1]))),
                eq(v[0], &meet_conv(v[0], &join_conv(v[0], v[1]))),
            ]))
        }),
    ]
}

fn absorption_on_m() -> Vec<Law> {
    vec![
        fn_law("absorption-join", Expect::Violated, &["f", "g"], m2, |v| {
            Ok(eq(v[0], &join_conv(v[0], &meet_conv(v[0], v[1]))))
        }),
        fn_law("absorption-meet", Expect::Violated, &["f", "g"], m2, |v| {
            Ok(eq(v[0], &meet_conv(v[0], &join_conv(v[0], v[1]))))
        }),
    ]
}

// ---- intervals and scalars ----

fn circled_star_op() -> IntervalOp {
    Arc::new(|x: &Interval, y: &Interval| x.circled_star(y))
}

fn single_point_law(id: &str, probes: &[Interval], factor: fn(&Interval, &Interval) -> Result<Degenerate>, combine: fn(&Interval, &Interval) -> Interval) -> Law {
    let probes = probes.to_vec();
    let n = probes.len();
    Law::new(
        id,
        Expect::Holds,
        &["x", "y"],
        Cases::Exhaustive(n * n),
        move |_, case| vec![Value::Interval(probes[case / n].clone()), Value::Interval(probes[case % n].clone())],
        move |v| {
            let (x, y) = (v[0].interval(), v[1].interval());
            if !combine(x, y).is_degenerate() {
                return Ok(Verdict::Vacuous);
            }
            factor(x, y)?;
            Ok(Verdict::Holds)
        },
    )
}

fn circled_star() -> Vec<Law> {
    let probes = Interval::default_probes();
    let mut laws = condition_laws(circled_star_op(), &probes, "", |c| match c {
        "(5')" => Expect::Violated,
        "(1)" | "(6)" | "(4')" => Expect::Observed,
        _ => Expect::Holds,
    });
    laws.push(single_point_law("single-point-meet", &probes, interval::single_point_factor_meet, Interval::meet));
    laws.push(single_point_law("single-point-join", &probes, interval::single_point_factor_join, Interval::join));
    laws
}

fn interval_tnorms() -> Vec<Law> {
    let probes = Interval::default_probes();
    [ScalarTNorm::MIN, ScalarTNorm::PRODUCT, ScalarTNorm::LUKASIEWICZ]
        .into_iter()
        .flat_map(|op| {
            let f: IntervalOp = Arc::new(move |x: &Interval, y: &Interval| {
                interval::convolution_interval_tnorm(op, x, y).expect("registered t-norm")
            });
            condition_laws(f, &probes, &format!("{}:", op.name), |_| Expect::Holds)
        })
        .collect()
}

fn scalar_tnorms() -> Vec<Law> {
    let probes = tnorm::uniform_probes(21);
    ScalarTNorm::tnorms()
        .into_iter()
        .flat_map(|op| {
            let mut laws = axiom_laws(op, &probes, &format!("{}:", op.name));
            laws.push(corner_law(op, &probes, format!("{}:corner", op.name)));
            laws
        })
        .collect()
}

// ---- generator ----

fn generator_laws() -> Vec<Law> {
    vec![
        holds("in-L", &["f"], |gen, _| vec![gen.normal_convex()], |v| {
            Ok(Verdict::truth(v[0].is_normal_convex(), "generated function is normal and convex"))
        }),
        holds("profile", &["f"], |gen, _| vec![gen.normal_convex()], |v| Ok(eq(v[0], &v[0].convex_profile()?))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_registered_name_builds() {
        for name in SUITES {
            let s = suite(name).unwrap();
            assert!(!s.laws.is_empty(), "{name}");
            let mut ids: Vec<&str> = s.laws.iter().map(|l| l.id.as_str()).collect();
            ids.sort();
            ids.dedup();
            assert_eq!(ids.len(), s.laws.len(), "duplicate law id in {name}");
        }
        assert!(matches!(suite("nope"), Err(AlgebraError::Unknown { .. })));
    }

    #[test]
    fn brute_force_convexity_examples() {
        let tent = conv::tent();
        assert!(brute_force_convex(&tent));
        let gap = PiecewiseFn::indicator(&rational::zero(), &rational::q(2, 5))
            .unwrap()
            .max(&PiecewiseFn::indicator(&rational::q(3, 5), &rational::one()).unwrap());
        assert!(!brute_force_convex(&gap));
        // dip visible only as a limit: 1 on [0, 1/2), 1/2 at 1/2 from the left, 1 after
        let dip = PiecewiseFn::new(vec![
            crate::pwl::Knot { x: rational::zero(), left: None, value: rational::one(), right: Some(rational::one()) },
            crate::pwl::Knot {
                x: rational::half(),
                left: Some(rational::half()),
                value: rational::one(),
                right: Some(rational::one()),
            },
            crate::pwl::Knot { x: rational::one(), left: Some(rational::one()), value: rational::one(), right: None },
        ])
        .unwrap();
        assert!(!brute_force_convex(&dip));
        assert!(!dip.is_convex());
    }

    #[test]
    fn small_runs_pass() {
        let cfg = GeneratorConfig::with_seed(3);
        for name in ["star-axioms", "envelope-laws", "structure-of-M", "generator"] {
            let r = run_suite(name, &cfg, 40).unwrap();
            assert!(r.passed(), "{}", r.render_text(|_| None));
        }
    }
}
