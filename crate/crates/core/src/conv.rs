//! Operations on M and L: the convolutions ⊓ and ⊔, complementation, the
//! truncated meet ⍃, the lattice-ordered t-norm ✶, general sup-convolutions,
//! the two orders, and the two counterexample reports.

use std::fmt;

use num_traits::One;

use crate::error::{AlgebraError, Result};
use crate::interval::Interval;
use crate::pwl::PiecewiseFn;
use crate::rational::{self, Rational};
use crate::tnorm::{Family, ScalarTNorm};

/// `(f ⊓ g)(x) = sup { f(y) ∧ g(z) : y ∧ z = x }`.
///
/// Either `y = x <= z` or `z = x <= y`, so the supremum splits into
/// `(f ∧ g^R) ∨ (g ∧ f^R)`.
pub fn meet_conv(f: &PiecewiseFn, g: &PiecewiseFn) -> PiecewiseFn {
    f.min(&g.right_envelope()).max(&g.min(&f.right_envelope()))
}

/// `(f ⊔ g)(x) = sup { f(y) ∧ g(z) : y ∨ z = x }`, computed as
/// `(f ∧ g^L) ∨ (g ∧ f^L)`.
pub fn join_conv(f: &PiecewiseFn, g: &PiecewiseFn) -> PiecewiseFn {
    f.min(&g.left_envelope()).max(&g.min(&f.left_envelope()))
}

/// `(¬f)(x) = f(1 - x)`.
pub fn negation(f: &PiecewiseFn) -> PiecewiseFn {
    f.reflect()
}

/// `f ⊓ g` with the value at 1 forced to 0.
pub fn bar_meet(f: &PiecewiseFn, g: &PiecewiseFn) -> PiecewiseFn {
    meet_conv(f, g).with_value_at_one(rational::zero())
}

/// The lattice-ordered t-norm ✶ on L.
///
/// `1_{{1}}` is neutral; otherwise the result is `f ⊓ g` when
/// `f(1) ∧ g(1) = 1` and `f ⍃ g` when `f(1) ∧ g(1) < 1`.
pub fn star(f: &PiecewiseFn, g: &PiecewiseFn) -> Result<PiecewiseFn> {
    if !f.is_normal_convex() {
        return Err(AlgebraError::NotInL { role: "left operand" });
    }
    if !g.is_normal_convex() {
        return Err(AlgebraError::NotInL { role: "right operand" });
    }
    Ok(star_unchecked(f, g))
}

pub(crate) fn star_unchecked(f: &PiecewiseFn, g: &PiecewiseFn) -> PiecewiseFn {
    let unit = PiecewiseFn::unit();
    if *f == unit {
        return g.clone();
    }
    if *g == unit {
        return f.clone();
    }
    let one = rational::one();
    let at_one = rational::min(&f.value_at(&one), &g.value_at(&one));
    if at_one.is_one() {
        meet_conv(f, g)
    } else {
        bar_meet(f, g)
    }
}

/// `f ⊑ g`, decided by the envelope criterion `g^L <= f^L` and
/// `f^R <= g^R` when both inputs are in L, and by `f ⊓ g = f` otherwise.
pub fn order_meet(f: &PiecewiseFn, g: &PiecewiseFn) -> bool {
    if f.is_normal_convex() && g.is_normal_convex() {
        order_meet_by_envelopes(f, g)
    } else {
        order_meet_by_definition(f, g)
    }
}

pub fn order_meet_by_definition(f: &PiecewiseFn, g: &PiecewiseFn) -> bool {
    meet_conv(f, g) == *f
}

pub fn order_meet_by_envelopes(f: &PiecewiseFn, g: &PiecewiseFn) -> bool {
    g.left_envelope().le(&f.left_envelope()) && f.right_envelope().le(&g.right_envelope())
}

/// `f ⪯ g` iff `f ⊔ g = g`.
pub fn order_join(f: &PiecewiseFn, g: &PiecewiseFn) -> bool {
    join_conv(f, g) == *g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Carrier is a t-norm: `sup { f(y) * g(z) : y △ z = x }`.
    Norm,
    /// Carrier is a t-conorm: `sup { f(y) * g(z) : y ▽ z = x }`.
    Conorm,
}

/// The combiner `*` applied to grades and the carrier applied to points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvolutionSpec {
    pub combiner: ScalarTNorm,
    pub carrier: ScalarTNorm,
    pub direction: Direction,
}

impl ConvolutionSpec {
    pub fn new(combiner: ScalarTNorm, carrier: ScalarTNorm) -> Result<Self> {
        let direction = match carrier.family {
            Family::TNorm => Direction::Norm,
            Family::TConorm => Direction::Conorm,
            Family::Plain => {
                return Err(AlgebraError::Precondition(format!(
                    "carrier {} must be a t-norm or a t-conorm",
                    carrier.name
                )))
            }
        };
        Ok(ConvolutionSpec { combiner, carrier, direction })
    }

    fn exact_closed_form(&self) -> Option<fn(&PiecewiseFn, &PiecewiseFn) -> PiecewiseFn> {
        if self.combiner != ScalarTNorm::MIN {
            return None;
        }
        match self.carrier.name {
            "min" => Some(meet_conv),
            "max" => Some(join_conv),
            _ => None,
        }
    }
}

/// Sampled sup-convolution on the grid `i / resolution`.
///
/// With the min combiner and a min or max carrier the exact closed forms are
/// sampled. Otherwise every grid pair `(y, z)` contributes `f(y) * g(z)` to
/// the grid points within half a step of `y △ z`; a grid point nothing lands
/// near gets 0. This is an approximation: the constraint set is a curve that
/// the grid only brushes.
pub fn general_convolution(
    spec: &ConvolutionSpec,
    f: &PiecewiseFn,
    g: &PiecewiseFn,
    resolution: u32,
) -> Result<Vec<(Rational, Rational)>> {
    if resolution < 2 {
        return Err(AlgebraError::Precondition("resolution must be at least 2".into()));
    }
    let n = i64::from(resolution);
    let grid: Vec<Rational> = (0..=n).map(|i| rational::q(i, n)).collect();
    if let Some(exact) = spec.exact_closed_form() {
        let h = exact(f, g);
        return Ok(grid.into_iter().map(|x| (x.clone(), h.value_at(&x))).collect());
    }
    let fv: Vec<Rational> = grid.iter().map(|y| f.value_at(y)).collect();
    let gv: Vec<Rational> = grid.iter().map(|z| g.value_at(z)).collect();
    let half_step = rational::q(1, 2 * n);
    let mut best = vec![rational::zero(); grid.len()];
    let scale = rational::int(n);
    for (i, y) in grid.iter().enumerate() {
        for (j, z) in grid.iter().enumerate() {
            let at = spec.carrier.apply(y, z);
            let v = spec.combiner.apply(&fv[i], &gv[j]);
            let pos = &at * &scale;
            let lo = pos.floor().to_integer();
            for k in [lo.clone(), lo + 1] {
                let Ok(k) = i64::try_from(k) else { continue };
                if !(0..=n).contains(&k) {
                    continue;
                }
                let k = k as usize;
                if (&grid[k] - &at).abs_sub_le(&half_step) && v > best[k] {
                    best[k] = v.clone();
                }
            }
        }
    }
    Ok(grid.into_iter().zip(best).collect())
}

trait AbsLe {
    fn abs_sub_le(&self, bound: &Rational) -> bool;
}

impl AbsLe for Rational {
    fn abs_sub_le(&self, bound: &Rational) -> bool {
        num_traits::Signed::abs(self) <= *bound
    }
}

/// Exact value of the convolution at 1 when the carrier is a t-norm.
///
/// A t-norm only reaches 1 at `(1, 1)`, so the supremum at 1 ranges over
/// that single pair and equals `f(1) * g(1)`.
pub fn convolution_at_one(spec: &ConvolutionSpec, f: &PiecewiseFn, g: &PiecewiseFn) -> Result<Rational> {
    if spec.direction != Direction::Norm {
        return Err(AlgebraError::Precondition(format!("carrier {} is not a t-norm", spec.carrier.name)));
    }
    let one = rational::one();
    Ok(spec.combiner.apply(&f.value_at(&one), &g.value_at(&one)))
}

/// The inclusion-monotonicity counterexample for ⊛.
#[derive(Clone, Debug, PartialEq)]
pub struct InclusionCounterexample {
    pub x: Interval,
    pub y: Interval,
    pub z: Interval,
    pub premise: bool,
    pub zx: Interval,
    pub zy: Interval,
    pub conclusion: bool,
}

impl InclusionCounterexample {
    pub fn violated(&self) -> bool {
        self.premise && !self.conclusion
    }
}

pub fn counterexample_q1() -> InclusionCounterexample {
    let half = rational::half();
    let x = Interval::point(half.clone()).expect("in range");
    let y = Interval::new(half.clone(), rational::one()).expect("in range");
    let z = Interval::point(half).expect("in range");
    let zx = z.circled_star(&x);
    let zy = z.circled_star(&y);
    InclusionCounterexample {
        premise: x.subset(&y),
        conclusion: zx.subset(&zy),
        x,
        y,
        z,
        zx,
        zy,
    }
}

impl fmt::Display for InclusionCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "counterexample q1: x ⊛ y = {{max of x·y over the box}} satisfies (4) and (5)")?;
        writeln!(f, "x = {}", self.x)?;
        writeln!(f, "y = {}", self.y)?;
        writeln!(f, "z = {}", self.z)?;
        writeln!(f, "x ⊆ y: {}", self.premise)?;
        writeln!(f, "z ⊛ x = {}", self.zx)?;
        writeln!(f, "z ⊛ y = {}", self.zy)?;
        writeln!(f, "z ⊛ x ⊆ z ⊛ y: {}", self.conclusion)?;
        write!(f, "(5') {}", if self.violated() { "VIOLATED" } else { "HOLDS" })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvolutionRow {
    pub combiner: &'static str,
    pub carrier: &'static str,
    pub convolution_at_one: Rational,
    pub star_at_one: Rational,
}

impl ConvolutionRow {
    pub fn differs(&self) -> bool {
        self.convolution_at_one != self.star_at_one
    }
}

/// ✶ against every convolution built from registered t-norms, at `x = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvolutionCounterexample {
    pub f: PiecewiseFn,
    pub g: PiecewiseFn,
    pub rows: Vec<ConvolutionRow>,
}

impl ConvolutionCounterexample {
    pub fn all_differ(&self) -> bool {
        self.rows.iter().all(ConvolutionRow::differs)
    }
}

/// `2x` on `[0, 1/2]`, `3/2 - x` on `(1/2, 1]`.
pub fn tent() -> PiecewiseFn {
    PiecewiseFn::polyline(&[
        (rational::zero(), rational::zero()),
        (rational::half(), rational::one()),
        (rational::one(), rational::half()),
    ])
    .expect("valid polyline")
}

pub fn counterexample_q2() -> ConvolutionCounterexample {
    let f = PiecewiseFn::indicator(&rational::zero(), &rational::one()).expect("in range");
    let g = tent();
    let star_at_one = star(&f, &g).expect("both in L").value_at(&rational::one());
    let mut rows = Vec::new();
    for combiner in ScalarTNorm::tnorms() {
        for carrier in ScalarTNorm::tnorms() {
            let spec = ConvolutionSpec::new(combiner, carrier).expect("t-norm carrier");
            rows.push(ConvolutionRow {
                combiner: combiner.name,
                carrier: carrier.name,
                convolution_at_one: convolution_at_one(&spec, &f, &g).expect("t-norm carrier"),
                star_at_one: star_at_one.clone(),
            });
        }
    }
    ConvolutionCounterexample { f, g, rows }
}

impl fmt::Display for ConvolutionCounterexample {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "counterexample q2: ✶ is not a convolution of t-norms")?;
        writeln!(out, "f = {}", self.f)?;
        writeln!(out, "g = {}", self.g)?;
        writeln!(out, "f(1) = {}, g(1) = {}", rational::fmt(&self.f.value_at(&rational::one())), rational::fmt(&self.g.value_at(&rational::one())))?;
        for r in &self.rows {
            writeln!(
                out,
                "combiner={} carrier={} convolution(1)={} star(1)={} {}",
                r.combiner,
                r.carrier,
                rational::fmt(&r.convolution_at_one),
                rational::fmt(&r.star_at_one),
                if r.differs() { "DIFFER" } else { "EQUAL" }
            )?;
        }
        write!(out, "✶ ≠ convolution: {}", if self.all_differ() { "CONFIRMED" } else { "NOT CONFIRMED" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{half, one, q, zero};

    fn top() -> PiecewiseFn {
        PiecewiseFn::indicator(&zero(), &one()).unwrap()
    }

    fn ind(a: Rational, b: Rational) -> PiecewiseFn {
        PiecewiseFn::indicator(&a, &b).unwrap()
    }

    fn spike(a: Rational) -> PiecewiseFn {
        PiecewiseFn::point_indicator(&a).unwrap()
    }

    #[test]
    fn meet_examples() {
        let (a, b) = (q(1, 5), q(7, 10));
        assert_eq!(meet_conv(&top(), &ind(a, b.clone())), ind(zero(), b));
        assert_eq!(meet_conv(&tent(), &PiecewiseFn::unit()), tent());
        assert_eq!(meet_conv(&tent(), &top()), tent().right_envelope());
    }

    #[test]
    fn meet_with_top_matches_grid_oracle() {
        // sup over y ∧ z = x on the 1/100 grid
        let grid: Vec<Rational> = (0..=100).map(|i| q(i, 100)).collect();
        let h = meet_conv(&tent(), &top());
        for x in &grid {
            let mut best = zero();
            for y in &grid {
                for z in &grid {
                    if rational::min(y, z) == *x {
                        best = best.max(rational::min(&tent().value_at(y), &top().value_at(z)));
                    }
                }
            }
            assert_eq!(h.value_at(x), best, "x = {x}");
        }
    }

    #[test]
    fn join_examples() {
        assert_eq!(join_conv(&tent(), &spike(zero())), tent());
        let (a1, b1, a2, b2) = (q(1, 10), q(3, 10), q(1, 5), q(1, 4));
        assert_eq!(join_conv(&ind(a1, b1.clone()), &ind(a2.clone(), b2)), ind(a2, b1));
        assert_eq!(join_conv(&spike(q(1, 3)), &spike(q(2, 3))), spike(q(2, 3)));
    }

    #[test]
    fn join_of_indicators_matches_grid_oracle() {
        let grid: Vec<Rational> = (0..=20).map(|i| q(i, 20)).collect();
        let cases = [
            (q(1, 10), q(3, 10), q(1, 5), q(1, 4)),
            (q(0, 1), q(1, 2), q(3, 4), q(1, 1)),
            (q(1, 4), q(3, 4), q(1, 2), q(1, 2)),
        ];
        for (a1, b1, a2, b2) in cases {
            let f = ind(a1.clone(), b1.clone());
            let g = ind(a2.clone(), b2.clone());
            let h = join_conv(&f, &g);
            for x in &grid {
                let mut best = zero();
                for y in &grid {
                    for z in &grid {
                        if rational::max(y, z) == *x {
                            best = best.max(rational::min(&f.value_at(y), &g.value_at(z)));
                        }
                    }
                }
                assert_eq!(h.value_at(x), best);
            }
            assert_eq!(h, ind(rational::max(&a1, &a2), rational::max(&b1, &b2)));
        }
    }

    #[test]
    fn negation_examples() {
        let (a, b) = (q(1, 5), q(1, 2));
        assert_eq!(negation(&ind(a.clone(), b.clone())), ind(one() - b, one() - a));
        assert_eq!(negation(&negation(&tent())), tent());
        let n = negation(&tent());
        for i in 0..=20 {
            let x = q(i, 20);
            let expected = if x <= half() { &x + half() } else { rational::int(2) - rational::int(2) * &x };
            assert_eq!(n.value_at(&x), expected);
        }
    }

    #[test]
    fn bar_meet_examples() {
        let h = bar_meet(&top(), &tent());
        assert_eq!(h.value_at(&one()), zero());
        let m = meet_conv(&top(), &tent());
        for i in 0..20 {
            let x = q(i, 20);
            assert_eq!(h.value_at(&x), m.value_at(&x));
        }
        assert_eq!(h.left_limit(&one()).unwrap(), m.left_limit(&one()).unwrap());
        assert_eq!(bar_meet(&top(), &ind(q(1, 4), q(3, 4))), ind(zero(), q(3, 4)));
    }

    #[test]
    fn star_examples() {
        let (a, b) = (q(1, 4), q(3, 4));
        assert_eq!(star(&top(), &ind(a, b.clone())).unwrap(), ind(zero(), b));
        assert_eq!(star(&tent(), &PiecewiseFn::unit()).unwrap(), tent());
        assert_eq!(star(&PiecewiseFn::unit(), &tent()).unwrap(), tent());
        assert_eq!(star(&top(), &tent()).unwrap().value_at(&one()), zero());
        let gap = ind(zero(), q(2, 5)).max(&ind(q(3, 5), one()));
        assert!(matches!(star(&gap, &tent()), Err(AlgebraError::NotInL { role: "left operand" })));
        assert!(matches!(star(&tent(), &gap), Err(AlgebraError::NotInL { role: "right operand" })));
    }

    #[test]
    fn general_convolution_examples() {
        let min_min = ConvolutionSpec::new(ScalarTNorm::MIN, ScalarTNorm::MIN).unwrap();
        let g = ind(q(1, 5), q(7, 10));
        let samples = general_convolution(&min_min, &tent(), &g, 20).unwrap();
        let m = meet_conv(&tent(), &g);
        for (x, v) in &samples {
            assert_eq!(*v, m.value_at(x));
        }

        let prod = ConvolutionSpec::new(ScalarTNorm::PRODUCT, ScalarTNorm::PRODUCT).unwrap();
        let s = spike(half());
        let samples = general_convolution(&prod, &s, &s, 20).unwrap();
        for (x, v) in &samples {
            let expected = if *x == q(1, 4) { one() } else { zero() };
            assert_eq!(*v, expected, "x = {x}");
        }

        let prod_min = ConvolutionSpec::new(ScalarTNorm::PRODUCT, ScalarTNorm::MIN).unwrap();
        let samples = general_convolution(&prod_min, &top(), &tent(), 20).unwrap();
        assert_eq!(samples.last().unwrap(), &(one(), half()));
        assert!(general_convolution(&prod_min, &top(), &tent(), 1).is_err());
    }

    #[test]
    fn convolution_at_one_examples() {
        let prod = ConvolutionSpec::new(ScalarTNorm::PRODUCT, ScalarTNorm::PRODUCT).unwrap();
        assert_eq!(convolution_at_one(&prod, &top(), &tent()).unwrap(), half());
        for c in ScalarTNorm::tnorms() {
            let spec = ConvolutionSpec::new(c, ScalarTNorm::MIN).unwrap();
            assert_eq!(convolution_at_one(&spec, &top(), &ind(half(), one())).unwrap(), one());
        }
        let f = PiecewiseFn::polyline(&[(zero(), one()), (one(), q(7, 10))]).unwrap();
        let g = PiecewiseFn::polyline(&[(zero(), one()), (one(), half())]).unwrap();
        let luk = ConvolutionSpec::new(ScalarTNorm::LUKASIEWICZ, ScalarTNorm::MIN).unwrap();
        assert_eq!(convolution_at_one(&luk, &f, &g).unwrap(), q(1, 5));
        let conorm = ConvolutionSpec::new(ScalarTNorm::MIN, ScalarTNorm::MAX).unwrap();
        assert!(convolution_at_one(&conorm, &f, &g).is_err());
        assert!(ConvolutionSpec::new(ScalarTNorm::MIN, ScalarTNorm::MAX.with_family(Family::Plain)).is_err());
    }

    #[test]
    fn order_examples() {
        let unit = PiecewiseFn::unit();
        let bottom = spike(zero());
        for f in [tent(), top(), ind(q(1, 4), q(1, 2)), spike(q(1, 3))] {
            assert!(order_meet(&f, &unit));
            assert!(order_meet(&bottom, &f));
            assert!(order_meet_by_definition(&f, &unit));
            assert!(order_join(&f, &unit));
        }
        let (a, b) = (q(1, 4), q(3, 4));
        assert!(order_meet(&ind(zero(), b.clone()), &ind(a, b)));
    }

    #[test]
    fn counterexample_reports() {
        let q1 = counterexample_q1();
        assert!(q1.premise && !q1.conclusion && q1.violated());
        assert_eq!(q1.zx, Interval::point(q(1, 4)).unwrap());
        assert_eq!(q1.zy, Interval::point(half()).unwrap());
        assert!(q1.to_string().ends_with("(5') VIOLATED"));

        let q2 = counterexample_q2();
        assert_eq!(q2.rows.len(), 16);
        assert!(q2.all_differ());
        for r in &q2.rows {
            assert_eq!(r.convolution_at_one, half());
            assert_eq!(r.star_at_one, zero());
        }
    }
}
