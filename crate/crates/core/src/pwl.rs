//! Piecewise-linear functions on `[0, 1]` with explicit jumps.
//!
//! A function is a strictly increasing list of knots from `0` to `1`. Each
//! knot stores its point value and the one-sided limits on either side; on
//! the open stretch between two knots the function is the straight line from
//! the right limit of the left knot to the left limit of the right knot.
//! Characteristic functions of points and intervals, and every output of the
//! operations in this crate, live in this class.
//!
//! Representations are canonical (no removable knot), so `==` is exact
//! equality of functions.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Knot {
    pub x: Rational,
    /// Limit from the left; absent exactly at `x = 0`.
    pub left: Option<Rational>,
    pub value: Rational,
    /// Limit from the right; absent exactly at `x = 1`.
    pub right: Option<Rational>,
}

/// Left limit, point value and right limit at a point. At `0` the left slot
/// and at `1` the right slot mirror the point value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Local {
    pub left: Rational,
    pub value: Rational,
    pub right: Rational,
}

impl Local {
    pub fn continuous(v: Rational) -> Self {
        Local { left: v.clone(), value: v.clone(), right: v }
    }

    fn zip(a: &Local, b: &Local, op: impl Fn(&Rational, &Rational) -> Rational) -> Local {
        Local {
            left: op(&a.left, &b.left),
            value: op(&a.value, &b.value),
            right: op(&a.right, &b.right),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Supremum {
    pub value: Rational,
    pub attained: bool,
}

/// The characteristic quantities of a normal function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceData {
    /// First point where the left envelope reaches 1.
    pub l1: Rational,
    /// Last point where the right envelope is still 1.
    pub r1: Rational,
    /// Left balance point: sup of `{x : f(x) = f^L(x)}`.
    pub bf: Rational,
    /// Right balance point: inf of `{x : f(x) = f^R(x)}`.
    pub cf: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseFn {
    knots: Vec<Knot>,
}

enum Loc {
    At(usize),
    Between(usize),
}

impl PiecewiseFn {
    /// Validates and canonicalizes a knot list. Interior knots with a
    /// missing limit are taken to be continuous on that side.
    pub fn new(knots: Vec<Knot>) -> Result<Self> {
        let invalid = |msg: String| Err(AlgebraError::InvalidFunction(msg));
        if knots.len() < 2 {
            return invalid("at least the knots 0 and 1 are required".into());
        }
        if !knots[0].x.is_zero() {
            return invalid(format!("first knot is at {}, not 0", rational::fmt(&knots[0].x)));
        }
        let last = knots.len() - 1;
        if !knots[last].x.is_one() {
            return invalid(format!("last knot is at {}, not 1", rational::fmt(&knots[last].x)));
        }
        let mut fixed = Vec::with_capacity(knots.len());
        for (i, k) in knots.into_iter().enumerate() {
            if i > 0 && k.x <= fixed.last().map(|p: &Knot| p.x.clone()).unwrap_or_default() {
                return invalid(format!("knot {i} at {} is not strictly increasing", rational::fmt(&k.x)));
            }
            if i == 0 && k.left.is_some() {
                return invalid("knot at 0 cannot carry a left limit".into());
            }
            if i == last && k.right.is_some() {
                return invalid("knot at 1 cannot carry a right limit".into());
            }
            let left = if i == 0 { None } else { Some(k.left.unwrap_or_else(|| k.value.clone())) };
            let right = if i == last { None } else { Some(k.right.unwrap_or_else(|| k.value.clone())) };
            for g in [Some(&k.value), left.as_ref(), right.as_ref()].into_iter().flatten() {
                if !rational::in_unit(g) {
                    return invalid(format!("grade {} at knot {i} is outside [0, 1]", rational::fmt(g)));
                }
            }
            fixed.push(Knot { x: k.x, left, value: k.value, right });
        }
        Ok(Self::canonical(fixed))
    }

    /// Builds a function from a sorted grid containing 0 and 1, sampling the
    /// local data at each grid point. The caller guarantees linearity between
    /// consecutive grid points.
    pub(crate) fn from_grid(grid: &[Rational], sample: impl Fn(&Rational) -> Local) -> Self {
        debug_assert!(grid.first().is_some_and(Zero::is_zero) && grid.last().is_some_and(One::is_one));
        let last = grid.len() - 1;
        let knots = grid
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let l = sample(x);
                Knot {
                    x: x.clone(),
                    left: (i > 0).then_some(l.left),
                    value: l.value,
                    right: (i < last).then_some(l.right),
                }
            })
            .collect();
        Self::canonical(knots)
    }

    fn canonical(knots: Vec<Knot>) -> Self {
        let mut out: Vec<Knot> = Vec::with_capacity(knots.len());
        for k in knots {
            while out.len() >= 2 && removable(&out[out.len() - 2], &out[out.len() - 1], &k) {
                out.pop();
            }
            out.push(k);
        }
        PiecewiseFn { knots: out }
    }

    pub fn constant(c: Rational) -> Self {
        let grid = [rational::zero(), rational::one()];
        Self::from_grid(&grid, |_| Local::continuous(c.clone()))
    }

    /// `1_{[a, b]}`.
    pub fn indicator(a: &Rational, b: &Rational) -> Result<Self> {
        if !rational::in_unit(a) || !rational::in_unit(b) {
            return Err(AlgebraError::domain(if rational::in_unit(a) { b } else { a }));
        }
        if a > b {
            return Err(AlgebraError::EmptyInterval(format!("[{}, {}]", rational::fmt(a), rational::fmt(b))));
        }
        let grid = sorted_grid([a.clone(), b.clone()]);
        let bit = |on: bool| if on { rational::one() } else { rational::zero() };
        Ok(Self::from_grid(&grid, |p| Local {
            left: bit(a < p && p <= b),
            value: bit(a <= p && p <= b),
            right: bit(a <= p && p < b),
        }))
    }

    /// `1_{{a}}`.
    pub fn point_indicator(a: &Rational) -> Result<Self> {
        Self::indicator(a, a)
    }

    /// `1_{{1}}`, the neutral element of the lattice-ordered t-norm.
    pub fn unit() -> Self {
        Self::point_indicator(&rational::one()).expect("1 is in range")
    }

    /// Continuous polyline through `(x, y)` vertices starting at 0 and ending at 1.
    pub fn polyline(vertices: &[(Rational, Rational)]) -> Result<Self> {
        Self::new(
            vertices
                .iter()
                .map(|(x, y)| Knot { x: x.clone(), left: None, value: y.clone(), right: None })
                .enumerate()
                .map(|(i, mut k)| {
                    if i > 0 && i + 1 < vertices.len() {
                        k.left = Some(k.value.clone());
                        k.right = Some(k.value.clone());
                    }
                    k
                })
                .collect(),
        )
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = &Rational> {
        self.knots.iter().map(|k| &k.x)
    }

    fn locate(&self, x: &Rational) -> Loc {
        match self.knots.binary_search_by(|k| k.x.cmp(x)) {
            Ok(i) => Loc::At(i),
            Err(i) => Loc::Between(i - 1),
        }
    }

    fn interpolate(&self, i: usize, x: &Rational) -> Rational {
        let a = &self.knots[i];
        let b = &self.knots[i + 1];
        let r = a.right.as_ref().expect("interior piece start");
        let l = b.left.as_ref().expect("interior piece end");
        r + (l - r) * (x - &a.x) / (&b.x - &a.x)
    }

    fn check_domain(x: &Rational) -> Result<()> {
        if rational::in_unit(x) { Ok(()) } else { Err(AlgebraError::domain(x)) }
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        Self::check_domain(x)?;
        Ok(self.value_at(x))
    }

    pub(crate) fn value_at(&self, x: &Rational) -> Rational {
        match self.locate(x) {
            Loc::At(i) => self.knots[i].value.clone(),
            Loc::Between(i) => self.interpolate(i, x),
        }
    }

    /// `lim_{t -> x-} f(t)` for `x` in `(0, 1]`.
    pub fn left_limit(&self, x: &Rational) -> Result<Rational> {
        Self::check_domain(x)?;
        if x.is_zero() {
            return Err(AlgebraError::Precondition("no left limit at 0".into()));
        }
        Ok(self.local(x).left)
    }

    /// `lim_{t -> x+} f(t)` for `x` in `[0, 1)`.
    pub fn right_limit(&self, x: &Rational) -> Result<Rational> {
        Self::check_domain(x)?;
        if x.is_one() {
            return Err(AlgebraError::Precondition("no right limit at 1".into()));
        }
        Ok(self.local(x).right)
    }

    pub(crate) fn local(&self, x: &Rational) -> Local {
        match self.locate(x) {
            Loc::At(i) => {
                let k = &self.knots[i];
                Local {
                    left: k.left.clone().unwrap_or_else(|| k.value.clone()),
                    value: k.value.clone(),
                    right: k.right.clone().unwrap_or_else(|| k.value.clone()),
                }
            }
            Loc::Between(i) => Local::continuous(self.interpolate(i, x)),
        }
    }

    /// Exact supremum over an interval with optionally open ends, plus
    /// whether some point of the interval attains it.
    pub fn sup_on(&self, lo: &Rational, hi: &Rational, lo_open: bool, hi_open: bool) -> Result<Supremum> {
        Self::check_domain(lo)?;
        Self::check_domain(hi)?;
        let describe = || {
            format!(
                "{}{}, {}{}",
                if lo_open { "(" } else { "[" },
                rational::fmt(lo),
                rational::fmt(hi),
                if hi_open { ")" } else { "]" }
            )
        };
        if lo > hi || (lo == hi && (lo_open || hi_open)) {
            return Err(AlgebraError::EmptyInterval(describe()));
        }
        if lo == hi {
            return Ok(Supremum { value: self.value_at(lo), attained: true });
        }
        let mut bounds = vec![lo.clone()];
        bounds.extend(self.knots.iter().map(|k| &k.x).filter(|x| lo < *x && *x < hi).cloned());
        bounds.push(hi.clone());

        // (candidate, attained)
        let mut cands: Vec<(Rational, bool)> = Vec::new();
        for (i, w) in bounds.windows(2).enumerate() {
            let start = self.local(&w[0]).right;
            let end = self.local(&w[1]).left;
            let flat = start == end;
            cands.push((start, flat));
            cands.push((end, flat));
            if i > 0 {
                cands.push((self.value_at(&w[0]), true));
            }
        }
        if !lo_open {
            cands.push((self.value_at(lo), true));
        }
        if !hi_open {
            cands.push((self.value_at(hi), true));
        }
        let value = cands.iter().map(|(v, _)| v).max().cloned().expect("non-empty");
        let attained = cands.iter().any(|(v, a)| *a && *v == value);
        Ok(Supremum { value, attained })
    }

    /// `sup f` over `[0, 1]`.
    pub fn sup(&self) -> Rational {
        self.sup_on(&rational::zero(), &rational::one(), false, false).expect("unit interval").value
    }

    /// `x -> f(1 - x)`.
    pub fn reflect(&self) -> Self {
        let one = rational::one();
        let knots = self
            .knots
            .iter()
            .rev()
            .map(|k| Knot { x: &one - &k.x, left: k.right.clone(), value: k.value.clone(), right: k.left.clone() })
            .collect();
        PiecewiseFn { knots }
    }

    /// `f^L(x) = sup { f(y) : y <= x }`.
    pub fn left_envelope(&self) -> Self {
        let n = self.knots.len();
        let mut out: Vec<Knot> = Vec::with_capacity(n + 4);
        // sup of f over [0, x_k)
        let mut run: Option<Rational> = None;
        for (k, kn) in self.knots.iter().enumerate() {
            let value = match &run {
                Some(r) => rational::max(r, &kn.value),
                None => kn.value.clone(),
            };
            if k == n - 1 {
                out.push(Knot { x: kn.x.clone(), left: run, value, right: None });
                break;
            }
            let start = kn.right.as_ref().expect("interior");
            let level = rational::max(&value, start);
            out.push(Knot { x: kn.x.clone(), left: run.clone(), value, right: Some(level.clone()) });

            let next = &self.knots[k + 1];
            let end = next.left.as_ref().expect("interior");
            if *end > level {
                if *start < level {
                    let t = &kn.x + (&next.x - &kn.x) * (&level - start) / (end - start);
                    out.push(Knot {
                        x: t,
                        left: Some(level.clone()),
                        value: level.clone(),
                        right: Some(level.clone()),
                    });
                }
                run = Some(end.clone());
            } else {
                run = Some(level);
            }
        }
        Self::canonical(out)
    }

    /// `f^R(x) = sup { f(y) : y >= x }`.
    pub fn right_envelope(&self) -> Self {
        self.reflect().left_envelope().reflect()
    }

    /// Supremum over `y < x`, with `f(0)` at 0.
    pub fn weak_left_envelope(&self) -> Self {
        let env = self.left_envelope();
        let knots = env
            .knots
            .into_iter()
            .enumerate()
            .map(|(i, k)| {
                if i == 0 {
                    k
                } else {
                    let left = k.left.clone().expect("interior");
                    Knot { value: left, ..k }
                }
            })
            .collect();
        Self::canonical(knots)
    }

    /// Supremum over `y > x`, with `f(1)` at 1.
    pub fn weak_right_envelope(&self) -> Self {
        self.reflect().weak_left_envelope().reflect()
    }

    fn combine(&self, other: &Self, pick: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let mut grid = merge_sorted(self.breakpoints(), other.breakpoints());
        let mut crossings = Vec::new();
        for w in grid.windows(2) {
            let d0 = self.local(&w[0]).right - other.local(&w[0]).right;
            let d1 = self.local(&w[1]).left - other.local(&w[1]).left;
            if (d0.is_positive() && d1.is_negative()) || (d0.is_negative() && d1.is_positive()) {
                crossings.push(&w[0] + (&w[1] - &w[0]) * &d0 / (&d0 - &d1));
            }
        }
        if !crossings.is_empty() {
            grid = merge_sorted(grid.iter(), crossings.iter());
        }
        Self::from_grid(&grid, |p| Local::zip(&self.local(p), &other.local(p), &pick))
    }

    /// Pointwise `f ∧ g`.
    pub fn min(&self, other: &Self) -> Self {
        self.combine(other, rational::min)
    }

    /// Pointwise `f ∨ g`.
    pub fn max(&self, other: &Self) -> Self {
        self.combine(other, rational::max)
    }

    /// Pointwise `f <= g`.
    pub fn le(&self, other: &Self) -> bool {
        self.min(other) == *self
    }

    pub fn is_normal(&self) -> bool {
        self.sup().is_one()
    }

    /// Convexity in the fuzzy sense, decided as `f = f^L ∧ f^R`.
    pub fn is_convex(&self) -> bool {
        *self == self.left_envelope().min(&self.right_envelope())
    }

    /// Membership in L, the normal convex functions.
    pub fn is_normal_convex(&self) -> bool {
        self.is_normal() && self.is_convex()
    }

    /// `Some(a)` when this is `1_{{a}}`.
    pub fn as_point_indicator(&self) -> Option<Rational> {
        self.as_indicator().filter(|(a, b)| a == b).map(|(a, _)| a)
    }

    /// `Some((a, b))` when this is `1_{[a, b]}`.
    pub fn as_indicator(&self) -> Option<(Rational, Rational)> {
        let b = self.balance_data().ok()?;
        let candidate = Self::indicator(&b.l1, &b.r1).ok()?;
        (candidate == *self).then_some((b.l1, b.r1))
    }

    pub fn balance_data(&self) -> Result<BalanceData> {
        if !self.is_normal() {
            return Err(AlgebraError::NotNormal(rational::fmt(&self.sup())));
        }
        let lenv = self.left_envelope();
        let renv = self.right_envelope();
        let l1 = lenv
            .knots
            .iter()
            .find(|k| k.value.is_one() || k.right.as_ref().is_some_and(One::is_one))
            .map(|k| k.x.clone())
            .expect("left envelope of a normal function ends at 1");
        let r1 = renv
            .knots
            .iter()
            .rev()
            .find(|k| k.value.is_one() || k.left.as_ref().is_some_and(One::is_one))
            .map(|k| k.x.clone())
            .expect("right envelope of a normal function starts at 1");
        let bf = agreement_sup(self, &lenv).expect("f(0) = f^L(0)");
        let cf = agreement_inf(self, &renv).expect("f(1) = f^R(1)");
        Ok(BalanceData { l1, r1, bf, cf })
    }

    /// Rebuilds a member of L from its five-branch description: `f^L` on
    /// `[0, l1)`, `f(l1)`, constant 1 on `(l1, r1)`, `f(r1)`, `f^R` on
    /// `(r1, 1]`. Fails if `f` is not in L or the rebuild differs.
    pub fn convex_profile(&self) -> Result<Self> {
        if !self.is_normal_convex() {
            return Err(AlgebraError::NotInL { role: "argument" });
        }
        let BalanceData { l1, r1, .. } = self.balance_data()?;
        let lenv = self.left_envelope();
        let renv = self.right_envelope();
        let grid = merge_sorted(
            merge_sorted(lenv.breakpoints(), renv.breakpoints()).iter(),
            [l1.clone(), r1.clone()].iter(),
        );
        let at_l1 = self.value_at(&l1);
        let at_r1 = self.value_at(&r1);
        let one = rational::one();
        let rebuilt = Self::from_grid(&grid, |p| {
            let left = if *p <= l1 {
                lenv.local(p).left
            } else if *p <= r1 {
                one.clone()
            } else {
                renv.local(p).left
            };
            let value = if *p < l1 {
                lenv.value_at(p)
            } else if *p == l1 {
                at_l1.clone()
            } else if *p < r1 {
                one.clone()
            } else if *p == r1 {
                at_r1.clone()
            } else {
                renv.value_at(p)
            };
            let right = if *p < l1 {
                lenv.local(p).right
            } else if *p < r1 {
                one.clone()
            } else {
                renv.local(p).right
            };
            Local { left, value, right }
        });
        if rebuilt != *self {
            return Err(AlgebraError::Precondition(format!(
                "five-branch rebuild {rebuilt} differs from {self}"
            )));
        }
        Ok(rebuilt)
    }

    /// Same function with the point value at 1 replaced.
    pub(crate) fn with_value_at_one(&self, v: Rational) -> Self {
        let mut knots = self.knots.clone();
        knots.last_mut().expect("non-empty").value = v;
        Self::canonical(knots)
    }

    /// Knots and the midpoints of every piece; enough to pin down a value
    /// check on this representation.
    pub fn probe_points(&self) -> Vec<Rational> {
        let mut pts = Vec::with_capacity(2 * self.knots.len());
        for w in self.knots.windows(2) {
            pts.push(w[0].x.clone());
            pts.push(rational::midpoint(&w[0].x, &w[1].x));
        }
        pts.push(rational::one());
        pts
    }
}

/// A knot is removable when it is continuous and both neighbouring pieces lie
/// on one line.
fn removable(prev: &Knot, k: &Knot, next: &Knot) -> bool {
    let (Some(l), Some(r)) = (&k.left, &k.right) else { return false };
    if *l != k.value || *r != k.value {
        return false;
    }
    let pr = prev.right.as_ref().expect("interior");
    let nl = next.left.as_ref().expect("interior");
    (&k.value - pr) * (&next.x - &k.x) == (nl - &k.value) * (&k.x - &prev.x)
}

fn sorted_grid(extra: impl IntoIterator<Item = Rational>) -> Vec<Rational> {
    let mut grid: Vec<Rational> = extra.into_iter().collect();
    grid.push(rational::zero());
    grid.push(rational::one());
    grid.sort();
    grid.dedup();
    grid
}

pub(crate) fn merge_sorted<'a>(
    a: impl Iterator<Item = &'a Rational>,
    b: impl Iterator<Item = &'a Rational>,
) -> Vec<Rational> {
    let mut out: Vec<Rational> = a.chain(b).cloned().collect();
    out.sort();
    out.dedup();
    out
}

/// Sup of `{x : f(x) = g(x)}`, exact on the representation.
pub fn agreement_sup(f: &PiecewiseFn, g: &PiecewiseFn) -> Option<Rational> {
    let grid = merge_sorted(f.breakpoints(), g.breakpoints());
    for i in (0..grid.len()).rev() {
        let p = &grid[i];
        if f.value_at(p) == g.value_at(p) {
            return Some(p.clone());
        }
        if i == 0 {
            break;
        }
        let a = &grid[i - 1];
        let d0 = f.local(a).right - g.local(a).right;
        let d1 = f.local(p).left - g.local(p).left;
        if d0.is_zero() && d1.is_zero() {
            return Some(p.clone());
        }
        if (d0.is_positive() && d1.is_negative()) || (d0.is_negative() && d1.is_positive()) {
            return Some(a + (p - a) * &d0 / (&d0 - &d1));
        }
    }
    None
}

/// Inf of `{x : f(x) = g(x)}`.
pub fn agreement_inf(f: &PiecewiseFn, g: &PiecewiseFn) -> Option<Rational> {
    agreement_sup(&f.reflect(), &g.reflect()).map(|s| rational::one() - s)
}

impl fmt::Display for PiecewiseFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, k) in self.knots.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}:", rational::fmt(&k.x))?;
            if let Some(l) = &k.left {
                write!(f, "<{}", rational::fmt(l))?;
            }
            write!(f, "[{}]", rational::fmt(&k.value))?;
            if let Some(r) = &k.right {
                write!(f, "{}>", rational::fmt(r))?;
            }
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{half, int, one, q, zero};

    fn tent() -> PiecewiseFn {
        PiecewiseFn::polyline(&[(zero(), zero()), (half(), one()), (one(), half())]).unwrap()
    }

    fn grid_points(n: i64) -> Vec<Rational> {
        (0..=n).map(|i| q(i, n)).collect()
    }

    #[test]
    fn eval_examples() {
        let ind = PiecewiseFn::indicator(&q(1, 5), &half()).unwrap();
        assert_eq!(ind.eval(&q(3, 10)).unwrap(), one());
        assert_eq!(ind.eval(&q(1, 5)).unwrap(), one());
        assert_eq!(ind.eval(&q(1, 10)).unwrap(), zero());
        let spike = PiecewiseFn::point_indicator(&half()).unwrap();
        assert_eq!(spike.eval(&q(2, 5)).unwrap(), zero());
        assert_eq!(spike.eval(&half()).unwrap(), one());
        assert_eq!(tent().eval(&q(1, 4)).unwrap(), half());
        assert_eq!(tent().eval(&one()).unwrap(), half());
        assert_eq!(tent().eval(&q(3, 4)).unwrap(), q(3, 4));
    }

    #[test]
    fn eval_rejects_out_of_domain() {
        assert!(matches!(tent().eval(&q(3, 2)), Err(AlgebraError::Domain(_))));
        assert!(matches!(tent().eval(&q(-1, 2)), Err(AlgebraError::Domain(_))));
    }

    #[test]
    fn construction_validates() {
        let k = |x: Rational, v: Rational| Knot { x, left: None, value: v, right: None };
        assert!(PiecewiseFn::new(vec![k(zero(), zero())]).is_err());
        assert!(PiecewiseFn::new(vec![k(q(1, 2), zero()), k(one(), zero())]).is_err());
        assert!(PiecewiseFn::new(vec![k(zero(), zero()), k(half(), one()), k(q(1, 4), zero()), k(one(), zero())]).is_err());
        assert!(PiecewiseFn::new(vec![k(zero(), q(3, 2)), k(one(), zero())]).is_err());
        let mut bad = vec![k(zero(), zero()), k(one(), zero())];
        bad[0].left = Some(zero());
        assert!(PiecewiseFn::new(bad).is_err());
    }

    #[test]
    fn canonical_form_drops_collinear_knots() {
        let f = PiecewiseFn::polyline(&[(zero(), zero()), (q(1, 4), q(1, 4)), (one(), one())]).unwrap();
        assert_eq!(f.knots().len(), 2);
        assert_eq!(f, PiecewiseFn::polyline(&[(zero(), zero()), (one(), one())]).unwrap());
        // a jump keeps its knot even when the pieces are collinear
        let jump = PiecewiseFn::new(vec![
            Knot { x: zero(), left: None, value: zero(), right: Some(zero()) },
            Knot { x: half(), left: Some(zero()), value: one(), right: Some(zero()) },
            Knot { x: one(), left: Some(zero()), value: zero(), right: None },
        ])
        .unwrap();
        assert_eq!(jump.knots().len(), 3);
        assert_eq!(jump, PiecewiseFn::point_indicator(&half()).unwrap());
    }

    #[test]
    fn sup_on_examples() {
        let spike1 = PiecewiseFn::unit();
        let s = spike1.sup_on(&zero(), &one(), false, true).unwrap();
        assert_eq!(s, Supremum { value: zero(), attained: true });
        let s = tent().sup_on(&zero(), &one(), false, false).unwrap();
        assert_eq!(s, Supremum { value: one(), attained: true });
        // tent on [0, 1/2) approaches 1 without reaching it
        let s = tent().sup_on(&zero(), &half(), false, true).unwrap();
        assert_eq!(s, Supremum { value: one(), attained: false });
        assert!(tent().sup_on(&half(), &half(), true, false).is_err());
        assert!(tent().sup_on(&one(), &half(), false, false).is_err());
    }

    #[test]
    fn sup_on_half_open_indicator_matches_brute_force() {
        // 1 on [1/5, 1/2), value 0 at 1/2 with left limit 1
        let f = PiecewiseFn::new(vec![
            Knot { x: zero(), left: None, value: zero(), right: Some(zero()) },
            Knot { x: q(1, 5), left: Some(zero()), value: one(), right: Some(one()) },
            Knot { x: half(), left: Some(one()), value: zero(), right: Some(zero()) },
            Knot { x: one(), left: Some(zero()), value: zero(), right: None },
        ])
        .unwrap();
        // brute force: the sup over a closed interval on this class is the max
        // over point values of the breakpoints inside it and the one-sided
        // limits pointing into it
        let brute = |lo: &Rational, hi: &Rational| {
            let mut best = f.eval(lo).unwrap().max(f.eval(hi).unwrap());
            for k in f.knots() {
                if lo <= &k.x && &k.x <= hi {
                    best = best.max(k.value.clone());
                    if &k.x > lo {
                        best = best.max(k.left.clone().unwrap());
                    }
                    if &k.x < hi {
                        best = best.max(k.right.clone().unwrap());
                    }
                }
            }
            best
        };
        let s = f.sup_on(&half(), &one(), false, false).unwrap();
        assert_eq!(s.value, brute(&half(), &one()));
        assert_eq!(s.value, zero());
        let s = f.sup_on(&zero(), &half(), false, false).unwrap();
        assert_eq!(s.value, brute(&zero(), &half()));
        assert!(s.attained);
    }

    #[test]
    fn attained_on_flat_open_piece() {
        // 1 on the open (1/4, 3/4), 0 elsewhere
        let f = PiecewiseFn::new(vec![
            Knot { x: zero(), left: None, value: zero(), right: Some(zero()) },
            Knot { x: q(1, 4), left: Some(zero()), value: zero(), right: Some(one()) },
            Knot { x: q(3, 4), left: Some(one()), value: zero(), right: Some(zero()) },
            Knot { x: one(), left: Some(zero()), value: zero(), right: None },
        ])
        .unwrap();
        assert_eq!(f.sup_on(&zero(), &one(), false, false).unwrap(), Supremum { value: one(), attained: true });
    }

    #[test]
    fn envelopes_of_examples() {
        let spike = PiecewiseFn::point_indicator(&q(3, 10)).unwrap();
        assert_eq!(spike.left_envelope(), PiecewiseFn::indicator(&q(3, 10), &one()).unwrap());
        let top = PiecewiseFn::indicator(&zero(), &one()).unwrap();
        assert_eq!(top.left_envelope(), top);
        let expected =
            PiecewiseFn::polyline(&[(zero(), one()), (half(), one()), (one(), half())]).unwrap();
        assert_eq!(tent().right_envelope(), expected);
        // grid oracle: running max from the right at 1/100 resolution
        let r = tent().right_envelope();
        let pts = grid_points(100);
        for (i, x) in pts.iter().enumerate() {
            let brute = pts[i..].iter().map(|y| tent().eval(y).unwrap()).max().unwrap();
            assert_eq!(r.eval(x).unwrap(), brute);
        }
    }

    #[test]
    fn left_envelope_inserts_crossing() {
        // 1/2 at 0, dips to 0, climbs to 1
        let f = PiecewiseFn::polyline(&[(zero(), half()), (q(1, 4), zero()), (one(), one())]).unwrap();
        let env = f.left_envelope();
        // line 0 -> 1 over [1/4, 1] hits 1/2 at 5/8
        let expected =
            PiecewiseFn::polyline(&[(zero(), half()), (q(5, 8), half()), (one(), one())]).unwrap();
        assert_eq!(env, expected);
    }

    #[test]
    fn weak_envelopes() {
        let spike1 = PiecewiseFn::unit();
        assert_eq!(spike1.weak_left_envelope().eval(&one()).unwrap(), zero());
        assert_eq!(tent().weak_left_envelope().eval(&half()).unwrap(), one());
        // dense-grid sup over [0, 1/2)
        let dense = grid_points(1000)
            .into_iter()
            .filter(|t| *t < half())
            .map(|t| tent().eval(&t).unwrap())
            .max()
            .unwrap();
        assert!(dense < one() && one() - dense <= q(1, 500));
        let f = PiecewiseFn::polyline(&[(zero(), q(1, 3)), (one(), zero())]).unwrap();
        assert_eq!(f.weak_left_envelope().eval(&zero()).unwrap(), q(1, 3));
        assert_eq!(spike1.weak_right_envelope().eval(&one()).unwrap(), one());
        assert_eq!(spike1.weak_right_envelope().eval(&half()).unwrap(), one());
        let spike = PiecewiseFn::point_indicator(&q(1, 4)).unwrap();
        assert_eq!(spike.weak_right_envelope().eval(&q(1, 4)).unwrap(), zero());
        assert_eq!(spike.weak_right_envelope().eval(&q(1, 8)).unwrap(), one());
        assert_eq!(spike.weak_left_envelope().eval(&q(1, 4)).unwrap(), zero());
        assert_eq!(spike.weak_left_envelope().eval(&q(1, 2)).unwrap(), one());
    }

    #[test]
    fn pointwise_min_max() {
        let top = PiecewiseFn::indicator(&zero(), &one()).unwrap();
        assert_eq!(top.min(&tent()), tent());
        assert_eq!(tent().min(&tent().right_envelope()), tent());
        let a = PiecewiseFn::indicator(&zero(), &q(2, 5)).unwrap();
        let b = PiecewiseFn::indicator(&q(3, 5), &one()).unwrap();
        let m = a.max(&b);
        for x in grid_points(20) {
            let expected = if x <= q(2, 5) || x >= q(3, 5) { one() } else { zero() };
            assert_eq!(m.eval(&x).unwrap(), expected, "x = {x}");
        }
        // crossing of 1-x and x at 1/2
        let up = PiecewiseFn::polyline(&[(zero(), zero()), (one(), one())]).unwrap();
        let down = up.reflect();
        let lo = up.min(&down);
        assert_eq!(lo, PiecewiseFn::polyline(&[(zero(), zero()), (half(), half()), (one(), zero())]).unwrap());
    }

    #[test]
    fn predicates() {
        let k = PiecewiseFn::indicator(&q(1, 5), &q(3, 5)).unwrap();
        assert!(k.is_normal() && k.is_convex());
        let a = PiecewiseFn::indicator(&zero(), &q(2, 5)).unwrap();
        let b = PiecewiseFn::indicator(&q(3, 5), &one()).unwrap();
        let gap = a.max(&b);
        assert!(gap.is_normal());
        assert!(!gap.is_convex());
        assert!(tent().is_normal_convex());
        assert!(!PiecewiseFn::constant(half()).is_normal());
    }

    #[test]
    fn balance_data_examples() {
        let a = q(1, 5);
        let b = q(7, 10);
        let k = PiecewiseFn::indicator(&a, &b).unwrap();
        let d = k.balance_data().unwrap();
        assert_eq!((d.l1.clone(), d.r1.clone()), (a.clone(), b.clone()));
        assert_eq!((d.bf, d.cf), (b, a));
        let d = tent().balance_data().unwrap();
        assert_eq!(d, BalanceData { l1: half(), r1: half(), bf: half(), cf: half() });
        assert!(matches!(PiecewiseFn::constant(half()).balance_data(), Err(AlgebraError::NotNormal(_))));
    }

    #[test]
    fn unattained_supremum_at_one() {
        // x on [0, 1) with value 1/2 at 1: normal, convex, R1 = 1
        let f = PiecewiseFn::new(vec![
            Knot { x: zero(), left: None, value: zero(), right: Some(zero()) },
            Knot { x: one(), left: Some(one()), value: half(), right: None },
        ])
        .unwrap();
        assert!(f.is_normal_convex());
        let d = f.balance_data().unwrap();
        assert_eq!((d.l1, d.r1), (one(), one()));
        assert_eq!(f.convex_profile().unwrap(), f);
    }

    #[test]
    fn convex_profile_examples() {
        assert_eq!(tent().convex_profile().unwrap(), tent());
        let k = PiecewiseFn::indicator(&q(1, 4), &q(3, 4)).unwrap();
        assert_eq!(k.convex_profile().unwrap(), k);
        let a = PiecewiseFn::indicator(&zero(), &q(2, 5)).unwrap();
        let b = PiecewiseFn::indicator(&q(3, 5), &one()).unwrap();
        assert!(matches!(a.max(&b).convex_profile(), Err(AlgebraError::NotInL { .. })));
    }

    #[test]
    fn indicators_recognised() {
        let k = PiecewiseFn::indicator(&q(1, 4), &q(3, 4)).unwrap();
        assert_eq!(k.as_indicator(), Some((q(1, 4), q(3, 4))));
        assert_eq!(k.as_point_indicator(), None);
        assert_eq!(PiecewiseFn::unit().as_point_indicator(), Some(one()));
        assert_eq!(tent().as_indicator(), None);
        assert!(PiecewiseFn::indicator(&half(), &q(1, 4)).is_err());
        assert!(PiecewiseFn::indicator(&half(), &int(2)).is_err());
    }

    #[test]
    fn reflection_is_involution() {
        assert_eq!(tent().reflect().reflect(), tent());
        let r = tent().reflect();
        assert_eq!(r.eval(&q(1, 4)).unwrap(), q(3, 4));
        assert_eq!(r.eval(&zero()).unwrap(), half());
    }
}
