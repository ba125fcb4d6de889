//! The lattice of closed subintervals of `[0, 1]` and operations on it.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::rational::{self, Rational};
use crate::report::{Expect, PropertyReport, Value};
use crate::tnorm::{Family, ScalarTNorm};
use crate::verify::engine::{tuple_index, Cases, Law, Suite, Verdict};
use crate::verify::generator::GeneratorConfig;

/// `[lo, hi]` with `0 <= lo <= hi <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if !rational::in_unit(&lo) {
            return Err(AlgebraError::domain(&lo));
        }
        if !rational::in_unit(&hi) {
            return Err(AlgebraError::domain(&hi));
        }
        if lo > hi {
            return Err(AlgebraError::EmptyInterval(format!("[{}, {}]", rational::fmt(&lo), rational::fmt(&hi))));
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `{a}`.
    pub fn point(a: Rational) -> Result<Self> {
        Self::new(a.clone(), a)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn meet(&self, other: &Self) -> Self {
        Interval { lo: rational::min(&self.lo, &other.lo), hi: rational::min(&self.hi, &other.hi) }
    }

    pub fn join(&self, other: &Self) -> Self {
        Interval { lo: rational::max(&self.lo, &other.lo), hi: rational::max(&self.hi, &other.hi) }
    }

    /// Componentwise order `x <= y`.
    pub fn leq(&self, other: &Self) -> bool {
        self.lo <= other.lo && self.hi <= other.hi
    }

    /// Inclusion `x ⊆ y`.
    pub fn subset(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `x ⊛ y`: the largest product over the box `x × y`, as a degenerate
    /// interval. Both factors are nonnegative, so the maximum sits at the
    /// upper corner.
    pub fn circled_star(&self, other: &Self) -> Self {
        let p = &self.hi * &other.hi;
        Interval { lo: p.clone(), hi: p }
    }

    /// Every probe interval with endpoints in `points`.
    pub fn all_with_endpoints(points: &[Rational]) -> Vec<Interval> {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let mut out = Vec::new();
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i..] {
                out.push(Interval { lo: a.clone(), hi: b.clone() });
            }
        }
        out
    }

    /// Intervals with endpoints in `{0, 1/4, 1/2, 3/4, 1}`.
    pub fn default_probes() -> Vec<Interval> {
        Self::all_with_endpoints(&crate::tnorm::uniform_probes(5))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", rational::fmt(&self.lo), rational::fmt(&self.hi))
    }
}

impl FromStr for Interval {
    type Err = AlgebraError;

    /// Parses `[a, b]`; endpoints are `p/q` or decimals.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| AlgebraError::Parse(format!("interval must look like [a, b]: `{s}`")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| AlgebraError::Parse(format!("interval needs two endpoints: `{s}`")))?;
        Interval::new(rational::parse(a)?, rational::parse(b)?)
    }
}

/// `[x.lo ▲ y.lo, x.hi ▲ y.hi]` for a t-norm `▲` on `[0, 1]`.
pub fn convolution_interval_tnorm(op: ScalarTNorm, x: &Interval, y: &Interval) -> Result<Interval> {
    if op.family != Family::TNorm {
        return Err(AlgebraError::Precondition(format!("{} is not declared a t-norm", op.name)));
    }
    Interval::new(op.apply(&x.lo, &y.lo), op.apply(&x.hi, &y.hi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degenerate {
    First,
    Second,
    Both,
}

fn which_degenerate(x: &Interval, y: &Interval) -> Option<Degenerate> {
    match (x.is_degenerate(), y.is_degenerate()) {
        (true, true) => Some(Degenerate::Both),
        (true, false) => Some(Degenerate::First),
        (false, true) => Some(Degenerate::Second),
        (false, false) => None,
    }
}

/// When `x ∧ y` is a single point, reports which input is one.
pub fn single_point_factor_meet(x: &Interval, y: &Interval) -> Result<Degenerate> {
    let m = x.meet(y);
    if !m.is_degenerate() {
        return Err(AlgebraError::Precondition(format!("meet {m} is not a single point")));
    }
    which_degenerate(x, y).ok_or_else(|| AlgebraError::Precondition(format!("no degenerate factor of {m}")))
}

/// When `x ∨ y` is a single point, reports which input is one.
pub fn single_point_factor_join(x: &Interval, y: &Interval) -> Result<Degenerate> {
    let j = x.join(y);
    if !j.is_degenerate() {
        return Err(AlgebraError::Precondition(format!("join {j} is not a single point")));
    }
    which_degenerate(x, y).ok_or_else(|| AlgebraError::Precondition(format!("no degenerate factor of {j}")))
}

pub type IntervalOp = Arc<dyn Fn(&Interval, &Interval) -> Interval + Send + Sync>;

pub const TNORM_CONDITIONS: [&str; 9] = ["(1)", "(2)", "(3)", "(4)", "(5)", "(6)", "(7)", "(4')", "(5')"];

fn interval_law(
    id: String,
    expect: Expect,
    names: &[&'static str],
    probes: &[Interval],
    check: impl Fn(&[Interval]) -> Verdict + Send + Sync + 'static,
) -> Law {
    let arity = names.len();
    let probes = probes.to_vec();
    Law::new(
        id,
        expect,
        names,
        Cases::Exhaustive(probes.len().pow(arity as u32)),
        move |_, case| {
            tuple_index(case, probes.len(), arity).into_iter().map(|i| Value::Interval(probes[i].clone())).collect()
        },
        move |v| Ok(check(&v.iter().map(|x| x.interval().clone()).collect::<Vec<_>>())),
    )
}

fn scalar_pair_law(
    id: String,
    expect: Expect,
    scalars: &[Rational],
    check: impl Fn(&Rational, &Rational) -> Verdict + Send + Sync + 'static,
) -> Law {
    let pts = scalars.to_vec();
    Law::new(
        id,
        expect,
        &["a", "b"],
        Cases::Exhaustive(pts.len() * pts.len()),
        move |_, case| tuple_index(case, pts.len(), 2).into_iter().map(|i| Value::Scalar(pts[i].clone())).collect(),
        move |v| {
            let (a, b) = (v[0].scalar(), v[1].scalar());
            Ok(check(a, b))
        },
    )
}

/// Laws for conditions (1) to (7), (4') and (5') of an interval t-norm.
/// `expect` assigns each condition label its expectation.
pub(crate) fn condition_laws(
    op: IntervalOp,
    probes: &[Interval],
    prefix: &str,
    expect: impl Fn(&str) -> Expect,
) -> Vec<Law> {
    let mut scalars: Vec<Rational> = probes.iter().flat_map(|x| [x.lo.clone(), x.hi.clone()]).collect();
    scalars.sort();
    scalars.dedup();
    let id = |c: &str| format!("{prefix}{c}");
    let top = Interval::point(rational::one()).expect("in range");
    let whole = Interval::new(rational::zero(), rational::one()).expect("in range");
    let o = |op: &IntervalOp| op.clone();
    vec![
        {
            let op = o(&op);
            interval_law(id("(1)"), expect("(1)"), &["x"], probes, move |v| Verdict::eq(&v[0], &op(&top, &v[0])))
        },
        {
            let op = o(&op);
            interval_law(id("(2)"), expect("(2)"), &["x", "y"], probes, move |v| {
                Verdict::eq(&op(&v[0], &v[1]), &op(&v[1], &v[0]))
            })
        },
        {
            let op = o(&op);
            interval_law(id("(3)"), expect("(3)"), &["x", "y", "z"], probes, move |v| {
                Verdict::eq(&op(&op(&v[0], &v[1]), &v[2]), &op(&v[0], &op(&v[1], &v[2])))
            })
        },
        {
            let op = o(&op);
            interval_law(id("(4)"), expect("(4)"), &["x", "y", "z"], probes, move |v| {
                Verdict::eq(&op(&v[0], &v[1]).join(&op(&v[0], &v[2])), &op(&v[0], &v[1].join(&v[2])))
            })
        },
        {
            let op = o(&op);
            interval_law(id("(5)"), expect("(5)"), &["x", "y", "z"], probes, move |v| {
                Verdict::eq(&op(&v[0], &v[1]).meet(&op(&v[0], &v[2])), &op(&v[0], &v[1].meet(&v[2])))
            })
        },
        {
            let op = o(&op);
            scalar_pair_law(id("(6)"), expect("(6)"), &scalars, move |a, b| {
                if a > b {
                    return Verdict::Vacuous;
                }
                let ab = Interval::new(a.clone(), b.clone()).expect("ordered probes");
                let expected = Interval::new(rational::zero(), b.clone()).expect("in range");
                Verdict::eq(&expected, &op(&whole, &ab))
            })
        },
        {
            let op = o(&op);
            scalar_pair_law(id("(7)"), expect("(7)"), &scalars, move |a, b| {
                let r = op(&Interval::point(a.clone()).expect("probe"), &Interval::point(b.clone()).expect("probe"));
                Verdict::truth(r.is_degenerate(), format!("degenerate result, got {r}"))
            })
        },
        {
            let op = o(&op);
            interval_law(id("(4')"), expect("(4')"), &["x", "y", "z"], probes, move |v| {
                if !v[0].leq(&v[1]) {
                    return Verdict::Vacuous;
                }
                let (l, r) = (op(&v[0], &v[2]), op(&v[1], &v[2]));
                Verdict::truth(l.leq(&r), format!("{l} <= {r}"))
            })
        },
        {
            let op = o(&op);
            interval_law(id("(5')"), expect("(5')"), &["x", "y", "z"], probes, move |v| {
                if !v[0].subset(&v[1]) {
                    return Verdict::Vacuous;
                }
                let (l, r) = (op(&v[0], &v[2]), op(&v[1], &v[2]));
                Verdict::truth(l.subset(&r), format!("{l} ⊆ {r}"))
            })
        },
    ]
}

/// Checks every condition exhaustively on the probe intervals (triples for
/// the three-argument conditions, endpoint pairs for (6) and (7)). Each law
/// is expected to hold; the report records a witness for each that does not.
pub fn check_tnorm_conditions(name: &str, op: IntervalOp, probes: &[Interval]) -> PropertyReport {
    Suite { name: format!("conditions:{name}"), randomized: false, laws: condition_laws(op, probes, "", |_| Expect::Holds) }
        .run(&GeneratorConfig::default(), 0)
}
