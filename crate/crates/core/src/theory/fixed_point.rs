//! Smallest fixed point of a probability generating function on `[0, 1]`,
//! and a bisection helper for monotone scalar equations.

use crate::error::{Error, Result};

pub const MAX_ITERATIONS: usize = 1_000_000;
const STEP_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    pub value: f64,
    /// `|f(value) - value|`.
    pub residual: f64,
    pub iterations: usize,
    /// The map is the identity (offspring is exactly one a.s.). Every point is
    /// a fixed point; `value` is then 0 by the smallest-root convention.
    pub degenerate: bool,
}

/// Smallest root of `f(t) = t` in `[0, 1]` for a pgf `f` with derivative
/// `slope` and offspring mean `mean`.
///
/// Starting from 0, each step takes the larger of the plain iterate `f(t)`
/// and the Newton iterate on `f(t) - t`. Both stay at or below the smallest
/// root because `f` is increasing and convex, so the sequence climbs
/// monotonically to it.
pub fn smallest_fixed_point(f: impl Fn(f64) -> f64, slope: impl Fn(f64) -> f64, mean: f64) -> Result<FixedPoint> {
    if f(0.0).abs() < 1e-15 && (f(0.5) - 0.5).abs() < 1e-15 {
        return Ok(FixedPoint {
            value: 0.0,
            residual: 0.0,
            iterations: 0,
            degenerate: true,
        });
    }
    if mean <= 1.0 {
        return Ok(FixedPoint {
            value: 1.0,
            residual: (f(1.0) - 1.0).abs(),
            iterations: 0,
            degenerate: false,
        });
    }

    let mut t = 0.0;
    for iteration in 1..=MAX_ITERATIONS {
        let ft = f(t);
        let mut next = ft;
        let gradient = slope(t) - 1.0;
        if gradient < 0.0 {
            let newton = t - (ft - t) / gradient;
            if newton.is_finite() && newton > next && newton < 1.0 {
                next = newton;
            }
        }
        let next = next.clamp(0.0, 1.0);
        if (next - t).abs() < STEP_TOL {
            return Ok(FixedPoint {
                value: next,
                residual: (f(next) - next).abs(),
                iterations: iteration,
                degenerate: false,
            });
        }
        t = next;
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
    })
}

/// Root of a monotone `g` on `[lo, hi]` where `g(lo)` and `g(hi)` straddle
/// zero, in either order. Stops once `|g| < tol` or the bracket stops
/// shrinking.
pub fn bisect(g: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let lo_sign = g(lo) > 0.0;
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        let gm = g(mid);
        if gm.abs() < tol {
            return mid;
        }
        if (gm > 0.0) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
