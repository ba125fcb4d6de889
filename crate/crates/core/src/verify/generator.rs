//! Seeded random generation of functions in M and in L.
//!
//! Functions in L are produced by drawing an arbitrary normal function `g`
//! and taking `g^L ∧ g^R`, which is always convex and keeps `sup g = 1`.
//! The result therefore rises to 1 at `L1`, stays at 1 until `R1` and then
//! falls, with jumps allowed anywhere. Because `(g^L ∧ g^R)(1) = g(1)` for a
//! normal `g`, the branch `f(1) = 1` versus `f(1) < 1` is controlled through
//! the value of `g` at 1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::interval::Interval;
use crate::pwl::{Knot, PiecewiseFn};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Knot budget of the raw draw, counting the knots at 0 and 1.
    pub max_breakpoints: usize,
    /// Coordinates and grades are drawn on the grid `k / denominator_bound`.
    pub denominator_bound: u32,
    /// Probability of emitting `1_{{1}}` outright.
    pub unit_mass: f64,
    /// Probability of forcing `f(1) < 1` when no branch is requested.
    pub endpoint_jump_mass: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            max_breakpoints: 6,
            denominator_bound: 64,
            unit_mass: 0.05,
            endpoint_jump_mass: 0.35,
        }
    }
}

impl GeneratorConfig {
    pub fn with_seed(seed: u64) -> Self {
        GeneratorConfig { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(AlgebraError::Precondition(format!("generator config: {msg}")));
        if self.max_breakpoints < 2 {
            return bad("max_breakpoints must be at least 2");
        }
        if self.denominator_bound < 2 {
            return bad("denominator_bound must be at least 2");
        }
        for p in [self.unit_mass, self.endpoint_jump_mass] {
            if !(0.0..=1.0).contains(&p) {
                return bad("probabilities must lie in [0, 1]");
            }
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        format!(
            "max_breakpoints={} denominator_bound={} unit_mass={} endpoint_jump_mass={}",
            self.max_breakpoints, self.denominator_bound, self.unit_mass, self.endpoint_jump_mass
        )
    }
}

/// Requested value at 1 for a generated member of L.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndValue {
    Any,
    One,
    BelowOne,
}

pub struct Generator {
    rng: ChaCha8Rng,
    cfg: GeneratorConfig,
}

impl Generator {
    pub fn new(cfg: GeneratorConfig) -> Self {
        let seed = cfg.seed;
        Self::with_stream(cfg, seed)
    }

    pub fn with_stream(cfg: GeneratorConfig, seed: u64) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed), cfg }
    }

    pub fn config(&self) -> &GeneratorConfig {
        &self.cfg
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn den(&self) -> i64 {
        i64::from(self.cfg.denominator_bound)
    }

    /// Uniform on `{0, 1/D, ..., 1}`.
    pub fn coordinate(&mut self) -> Rational {
        let d = self.den();
        rational::q(self.rng.gen_range(0..=d), d)
    }

    /// Grade with extra mass on 0 and 1 so plateaus and indicators show up.
    pub fn grade(&mut self) -> Rational {
        match self.rng.gen_range(0..10) {
            0..=2 => rational::zero(),
            3 | 4 => rational::one(),
            _ => self.coordinate(),
        }
    }

    fn grade_below_one(&mut self) -> Rational {
        let d = self.den();
        rational::q(self.rng.gen_range(0..d), d)
    }

    /// A draw from M with no shape constraint.
    pub fn arbitrary(&mut self) -> PiecewiseFn {
        PiecewiseFn::new(self.raw_knots()).expect("generated knots are valid")
    }

    fn raw_knots(&mut self) -> Vec<Knot> {
        let n = self.rng.gen_range(2..=self.cfg.max_breakpoints.max(2));
        let d = self.den();
        let mut xs: Vec<Rational> = (0..n.saturating_sub(2))
            .map(|_| rational::q(self.rng.gen_range(1..d), d))
            .collect();
        xs.push(rational::zero());
        xs.push(rational::one());
        xs.sort();
        xs.dedup();
        let last = xs.len() - 1;
        xs.into_iter()
            .enumerate()
            .map(|(i, x)| {
                let value = self.grade();
                let side = |gen: &mut Self| {
                    if gen.rng.gen_bool(0.6) { value.clone() } else { gen.grade() }
                };
                let left = (i > 0).then(|| side(self));
                let right = (i < last).then(|| side(self));
                Knot { x, left, value, right }
            })
            .collect()
    }

    /// A draw from M whose supremum is 1.
    pub fn normal(&mut self) -> PiecewiseFn {
        PiecewiseFn::new(self.raw_normal(EndValue::Any)).expect("generated knots are valid")
    }

    fn raw_normal(&mut self, end: EndValue) -> Vec<Knot> {
        let mut knots = self.raw_knots();
        let last = knots.len() - 1;
        // slot kinds: 0 = value, 1 = left limit, 2 = right limit
        let mut slots: Vec<(usize, u8)> = Vec::new();
        for i in 0..=last {
            if !(i == last && end == EndValue::BelowOne) {
                slots.push((i, 0));
            }
            if i > 0 {
                slots.push((i, 1));
            }
            if i < last {
                slots.push((i, 2));
            }
        }
        let (i, kind) = slots[self.rng.gen_range(0..slots.len())];
        let one = rational::one();
        match kind {
            0 => knots[i].value = one.clone(),
            1 => knots[i].left = Some(one.clone()),
            _ => knots[i].right = Some(one.clone()),
        }
        match end {
            EndValue::One => knots[last].value = one,
            EndValue::BelowOne => {
                if knots[last].value == one {
                    knots[last].value = self.grade_below_one();
                }
            }
            EndValue::Any => {}
        }
        knots
    }

    /// A draw from L.
    pub fn normal_convex(&mut self) -> PiecewiseFn {
        self.normal_convex_with(EndValue::Any)
    }

    pub fn normal_convex_with(&mut self, end: EndValue) -> PiecewiseFn {
        if end != EndValue::BelowOne && self.rng.gen_bool(self.cfg.unit_mass) {
            return PiecewiseFn::unit();
        }
        let end = match end {
            EndValue::Any if self.rng.gen_bool(self.cfg.endpoint_jump_mass) => EndValue::BelowOne,
            other => other,
        };
        let mut knots = self.raw_normal(end);
        if end == EndValue::BelowOne {
            // push f(1) under the left limit at 1 when there is room
            let last = knots.len() - 1;
            let ll = knots[last].left.clone().expect("interior");
            if ll > rational::zero() && self.rng.gen_bool(0.5) {
                knots[last].value = &ll * self.grade_below_one();
            }
        }
        let g = PiecewiseFn::new(knots).expect("generated knots are valid");
        let f = g.left_envelope().min(&g.right_envelope());
        debug_assert!(f.is_normal_convex(), "generator left L: {f}");
        f
    }

    /// `1_{{x}}` with extra mass on `x = 1`.
    pub fn point_indicator(&mut self) -> PiecewiseFn {
        let x = if self.rng.gen_bool(0.25) { rational::one() } else { self.coordinate() };
        PiecewiseFn::point_indicator(&x).expect("in range")
    }

    /// An interval `[a, b]` with extra mass on `b = 1` and on degenerate intervals.
    pub fn interval(&mut self) -> Interval {
        let a = self.coordinate();
        let b = match self.rng.gen_range(0..6) {
            0 => rational::one(),
            1 => a.clone(),
            _ => self.coordinate(),
        };
        if a <= b { Interval::new(a, b) } else { Interval::new(b, a) }.expect("ordered")
    }

    pub fn interval_indicator(&mut self) -> PiecewiseFn {
        let x = self.interval();
        PiecewiseFn::indicator(x.lo(), x.hi()).expect("in range")
    }
}

/// Single draw from L seeded by `cfg.seed`.
pub fn gen_normal_convex(cfg: &GeneratorConfig) -> PiecewiseFn {
    Generator::new(cfg.clone()).normal_convex()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_mass_one_forces_unit() {
        let cfg = GeneratorConfig { unit_mass: 1.0, ..GeneratorConfig::with_seed(3) };
        let mut gen = Generator::new(cfg);
        for _ in 0..20 {
            assert_eq!(gen.normal_convex(), PiecewiseFn::unit());
        }
    }

    #[test]
    fn every_draw_is_in_l_and_profiles_exactly() {
        let mut gen = Generator::new(GeneratorConfig::with_seed(11));
        for _ in 0..300 {
            let f = gen.normal_convex();
            assert!(f.is_normal() && f.is_convex(), "{f}");
            assert_eq!(f.convex_profile().unwrap(), f);
        }
    }

    #[test]
    fn both_endpoint_branches_are_hit() {
        let mut gen = Generator::new(GeneratorConfig::with_seed(5));
        let (mut at_one, mut below) = (0, 0);
        for _ in 0..1000 {
            let f = gen.normal_convex();
            if f.eval(&rational::one()).unwrap() == rational::one() {
                at_one += 1;
            } else {
                below += 1;
            }
        }
        assert!(at_one > 100 && below > 100, "at_one={at_one} below={below}");
    }

    #[test]
    fn forced_branches_are_respected() {
        let mut gen = Generator::new(GeneratorConfig::with_seed(9));
        for _ in 0..200 {
            let f = gen.normal_convex_with(EndValue::One);
            assert_eq!(f.eval(&rational::one()).unwrap(), rational::one());
            let f = gen.normal_convex_with(EndValue::BelowOne);
            assert!(f.eval(&rational::one()).unwrap() < rational::one());
            assert!(f.is_normal_convex());
        }
    }

    #[test]
    fn same_seed_same_draws() {
        let a: Vec<_> = {
            let mut g = Generator::new(GeneratorConfig::with_seed(42));
            (0..20).map(|_| g.normal_convex()).collect()
        };
        let b: Vec<_> = {
            let mut g = Generator::new(GeneratorConfig::with_seed(42));
            (0..20).map(|_| g.normal_convex()).collect()
        };
        assert_eq!(a, b);
        assert_eq!(gen_normal_convex(&GeneratorConfig::with_seed(42)), a[0]);
    }

    #[test]
    fn config_validation() {
        assert!(GeneratorConfig::default().validate().is_ok());
        assert!(GeneratorConfig { max_breakpoints: 1, ..Default::default() }.validate().is_err());
        assert!(GeneratorConfig { unit_mass: 1.5, ..Default::default() }.validate().is_err());
    }
}
