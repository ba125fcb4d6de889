//! Binary operations on `[0, 1]` and their axiom checks.

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{AlgebraError, Result};
use crate::rational::{self, Rational};
use crate::report::{Expect, PropertyReport, Value};
use crate::verify::engine::{tuple_index, Cases, Law, Suite, Verdict};
use crate::verify::generator::GeneratorConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Neutral element 1.
    TNorm,
    /// Neutral element 0.
    TConorm,
    Plain,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::TNorm => "t-norm",
            Family::TConorm => "t-conorm",
            Family::Plain => "plain",
        }
    }
}

pub type ScalarOp = fn(&Rational, &Rational) -> Rational;

#[derive(Clone, Copy)]
pub struct ScalarTNorm {
    pub name: &'static str,
    pub family: Family,
    op: ScalarOp,
}

impl fmt::Debug for ScalarTNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name, self.family.as_str())
    }
}

impl PartialEq for ScalarTNorm {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.family == other.family
    }
}

fn minimum(x: &Rational, y: &Rational) -> Rational {
    rational::min(x, y)
}

fn maximum(x: &Rational, y: &Rational) -> Rational {
    rational::max(x, y)
}

fn product(x: &Rational, y: &Rational) -> Rational {
    x * y
}

fn lukasiewicz(x: &Rational, y: &Rational) -> Rational {
    let s = x + y - rational::one();
    if s.is_negative() { rational::zero() } else { s }
}

fn drastic(x: &Rational, y: &Rational) -> Rational {
    if x.is_one() {
        y.clone()
    } else if y.is_one() {
        x.clone()
    } else {
        rational::zero()
    }
}

fn probabilistic_sum(x: &Rational, y: &Rational) -> Rational {
    x + y - x * y
}

impl ScalarTNorm {
    pub const MIN: ScalarTNorm = ScalarTNorm { name: "min", family: Family::TNorm, op: minimum };
    pub const PRODUCT: ScalarTNorm = ScalarTNorm { name: "product", family: Family::TNorm, op: product };
    pub const LUKASIEWICZ: ScalarTNorm = ScalarTNorm { name: "lukasiewicz", family: Family::TNorm, op: lukasiewicz };
    pub const DRASTIC: ScalarTNorm = ScalarTNorm { name: "drastic", family: Family::TNorm, op: drastic };
    pub const MAX: ScalarTNorm = ScalarTNorm { name: "max", family: Family::TConorm, op: maximum };
    pub const PROBSUM: ScalarTNorm = ScalarTNorm { name: "probsum", family: Family::TConorm, op: probabilistic_sum };

    pub fn new(name: &'static str, family: Family, op: ScalarOp) -> Self {
        ScalarTNorm { name, family, op }
    }

    /// The four built-in t-norms.
    pub fn tnorms() -> [ScalarTNorm; 4] {
        [Self::MIN, Self::PRODUCT, Self::LUKASIEWICZ, Self::DRASTIC]
    }

    pub fn registry() -> [ScalarTNorm; 6] {
        [Self::MIN, Self::PRODUCT, Self::LUKASIEWICZ, Self::DRASTIC, Self::MAX, Self::PROBSUM]
    }

    pub fn lookup(name: &str) -> Result<ScalarTNorm> {
        Self::registry()
            .into_iter()
            .find(|t| t.name == name)
            .ok_or_else(|| AlgebraError::Unknown { kind: "scalar operation", name: name.into() })
    }

    /// Same operation declared under another axiom family.
    pub fn with_family(self, family: Family) -> Self {
        ScalarTNorm { family, ..self }
    }

    pub fn apply(&self, x: &Rational, y: &Rational) -> Rational {
        (self.op)(x, y)
    }

    /// Sampled continuity heuristic: every step of `1/resolution` in one
    /// argument moves the output by at most that step (1-Lipschitz on the
    /// grid). A finite sample cannot prove continuity; a `false` is a
    /// definite jump on the grid, a `true` is evidence only.
    pub fn lipschitz_heuristic(&self, resolution: u32) -> bool {
        let n = i64::from(resolution.max(1));
        let h = rational::q(1, n);
        let grid: Vec<Rational> = (0..=n).map(|i| rational::q(i, n)).collect();
        grid.windows(2).all(|w| {
            grid.iter().all(|y| {
                (self.apply(&w[1], y) - self.apply(&w[0], y)).abs() <= h
                    && (self.apply(y, &w[1]) - self.apply(y, &w[0])).abs() <= h
            })
        })
    }
}

/// `0, 1/(n-1), ..., 1`.
pub fn uniform_probes(n: usize) -> Vec<Rational> {
    let d = (n.max(2) - 1) as i64;
    (0..=d).map(|i| rational::q(i, d)).collect()
}

fn probe_law(
    id: String,
    expect: Expect,
    names: &[&'static str],
    probes: &[Rational],
    check: impl Fn(&[Rational]) -> Verdict + Send + Sync + 'static,
) -> Law {
    let arity = names.len();
    let probes = probes.to_vec();
    let count = probes.len().pow(arity as u32);
    Law::new(
        id,
        expect,
        names,
        Cases::Exhaustive(count),
        move |_, case| {
            tuple_index(case, probes.len(), arity)
                .into_iter()
                .map(|i| Value::Scalar(probes[i].clone()))
                .collect()
        },
        move |v| {
            let xs: Vec<Rational> = v.iter().map(|x| x.scalar().clone()).collect();
            Ok(check(&xs))
        },
    )
}

fn show(x: &Rational) -> String {
    rational::fmt(x)
}

/// Laws T1 to T3 plus T4 (t-norms) or T4' (t-conorms), prefixed with `prefix`.
pub(crate) fn axiom_laws(op: ScalarTNorm, probes: &[Rational], prefix: &str) -> Vec<Law> {
    let mut laws = vec![
        probe_law(format!("{prefix}T1"), Expect::Holds, &["x", "y"], probes, move |v| {
            Verdict::eq(&show(&op.apply(&v[0], &v[1])), &show(&op.apply(&v[1], &v[0])))
        }),
        probe_law(format!("{prefix}T2"), Expect::Holds, &["x", "y", "z"], probes, move |v| {
            let lhs = op.apply(&op.apply(&v[0], &v[1]), &v[2]);
            let rhs = op.apply(&v[0], &op.apply(&v[1], &v[2]));
            Verdict::eq(&show(&lhs), &show(&rhs))
        }),
        probe_law(format!("{prefix}T3"), Expect::Holds, &["x", "x2", "y"], probes, move |v| {
            if v[0] > v[1] {
                return Verdict::Vacuous;
            }
            let first = op.apply(&v[0], &v[2]) <= op.apply(&v[1], &v[2]);
            let second = op.apply(&v[2], &v[0]) <= op.apply(&v[2], &v[1]);
            Verdict::truth(first && second, "x <= x2 implies x*y <= x2*y and y*x <= y*x2")
        }),
    ];
    let neutral = match op.family {
        Family::TNorm => Some(("T4", rational::one())),
        Family::TConorm => Some(("T4'", rational::zero())),
        Family::Plain => None,
    };
    if let Some((tag, e)) = neutral {
        laws.push(probe_law(format!("{prefix}{tag}"), Expect::Holds, &["x"], probes, move |v| {
            let x = &v[0];
            let (l, r) = (op.apply(&e, x), op.apply(x, &e));
            if l == *x && r == *x {
                Verdict::Holds
            } else {
                Verdict::Mismatch {
                    expected: show(x),
                    actual: format!("{} * x = {}, x * {} = {}", show(&e), show(&l), show(&e), show(&r)),
                }
            }
        }));
    }
    laws
}

pub(crate) fn corner_law(op: ScalarTNorm, probes: &[Rational], id: String) -> Law {
    probe_law(id, Expect::Holds, &["x", "y"], probes, move |v| {
        let one = rational::one();
        if !op.apply(&one, &one).is_one() {
            return Verdict::Mismatch { expected: "1 * 1 = 1".into(), actual: show(&op.apply(&one, &one)) };
        }
        let hit = op.apply(&v[0], &v[1]).is_one();
        Verdict::truth(!hit || (v[0].is_one() && v[1].is_one()), "x * y = 1 only at x = y = 1")
    })
}

fn run_once(name: String, laws: Vec<Law>) -> PropertyReport {
    Suite { name, randomized: false, laws }.run(&GeneratorConfig::default(), 0)
}

/// Checks T1, T2, T3 and the family's neutral-element axiom exactly on every
/// probe tuple.
pub fn check_tnorm_axioms(op: ScalarTNorm, probes: &[Rational]) -> Result<PropertyReport> {
    check_probes(probes)?;
    Ok(run_once(format!("axioms:{}", op.name), axiom_laws(op, probes, "")))
}

/// Checks that `x * y = 1` forces `x = y = 1` on all probe pairs.
pub fn unit_preimage_is_corner(op: ScalarTNorm, probes: &[Rational]) -> Result<PropertyReport> {
    check_probes(probes)?;
    Ok(run_once(format!("corner:{}", op.name), vec![corner_law(op, probes, "corner".into())]))
}

fn check_probes(probes: &[Rational]) -> Result<()> {
    if probes.is_empty() {
        return Err(AlgebraError::Precondition("probe list is empty".into()));
    }
    if let Some(p) = probes.iter().find(|p| !rational::in_unit(p)) {
        return Err(AlgebraError::domain(p));
    }
    Ok(())
}
