//! Brute-force evaluation of sup-convolutions with a min or max carrier.
//!
//! Search runs over extended grid points: each grid point `w` together with
//! its one-sided approaches `w-` and `w+`, carrying the left and right
//! limits. Extended points are ordered lexicographically, so `min` and `max`
//! act on them exactly. A pair contributes to `x` only when the carrier
//! returns `x` itself, never an approach. Between grid points every input is
//! linear, so each piece's supremum is one of its end limits and the search
//! also captures suprema that are approached but not attained.

use std::cmp::Ordering;

use crate::conv::ConvolutionSpec;
use crate::error::{AlgebraError, Result};
use crate::pwl::PiecewiseFn;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    Below,
    At,
    Above,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Extended {
    index: usize,
    side: Side,
}

#[derive(Clone, Copy)]
enum Carrier {
    Min,
    Max,
}

pub fn oracle_convolution(
    spec: &ConvolutionSpec,
    f: &PiecewiseFn,
    g: &PiecewiseFn,
    grid: &[Rational],
) -> Result<Vec<(Rational, Rational)>> {
    let carrier = match spec.carrier.name {
        "min" => Carrier::Min,
        "max" => Carrier::Max,
        other => {
            return Err(AlgebraError::Precondition(format!(
                "the oracle is exact only for min and max carriers, not {other}"
            )))
        }
    };
    check_grid(grid, f, g)?;
    let points = extended_points(grid.len());
    let sample = |h: &PiecewiseFn| -> Vec<Rational> {
        points
            .iter()
            .map(|p| {
                let local = h.local(&grid[p.index]);
                match p.side {
                    Side::Below => local.left,
                    Side::At => local.value,
                    Side::Above => local.right,
                }
            })
            .collect()
    };
    let (fv, gv) = (sample(f), sample(g));
    let mut best = vec![rational::zero(); grid.len()];
    for (i, y) in points.iter().enumerate() {
        for (j, z) in points.iter().enumerate() {
            let at = match (carrier, y.cmp(z)) {
                (Carrier::Min, Ordering::Greater) | (Carrier::Max, Ordering::Less) => z,
                _ => y,
            };
            if at.side != Side::At {
                continue;
            }
            let v = spec.combiner.apply(&fv[i], &gv[j]);
            if v > best[at.index] {
                best[at.index] = v;
            }
        }
    }
    Ok(grid.iter().cloned().zip(best).collect())
}

fn extended_points(n: usize) -> Vec<Extended> {
    let mut out = Vec::with_capacity(3 * n);
    for index in 0..n {
        if index > 0 {
            out.push(Extended { index, side: Side::Below });
        }
        out.push(Extended { index, side: Side::At });
        if index + 1 < n {
            out.push(Extended { index, side: Side::Above });
        }
    }
    out
}

fn check_grid(grid: &[Rational], f: &PiecewiseFn, g: &PiecewiseFn) -> Result<()> {
    let bad = |msg: String| Err(AlgebraError::Precondition(msg));
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return bad("grid must be strictly increasing".into());
    }
    if grid.first() != Some(&rational::zero()) || grid.last() != Some(&rational::one()) {
        return bad("grid must start at 0 and end at 1".into());
    }
    for x in f.breakpoints().chain(g.breakpoints()) {
        if grid.binary_search(x).is_err() {
            return bad(format!("grid misses breakpoint {}", rational::fmt(x)));
        }
    }
    Ok(())
}

/// `i / n` for `i = 0..=n`, merged with the breakpoints of the inputs.
pub fn aligned_grid(n: i64, fs: &[&PiecewiseFn]) -> Vec<Rational> {
    let mut grid: Vec<Rational> = (0..=n).map(|i| rational::q(i, n)).collect();
    for f in fs {
        grid.extend(f.breakpoints().cloned());
    }
    grid.sort();
    grid.dedup();
    grid
}
