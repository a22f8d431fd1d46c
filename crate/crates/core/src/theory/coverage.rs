//! Critical coverage and the major-outbreak curve as a function of coverage.

use super::{acquaintance_alpha, acquaintance_r, bisect, edgewise_r, evaluate, r0, TheoryResult};
use crate::degrees::DegreeDistribution;
use crate::error::{check_closed, Error, Result};
use crate::vaccine::{Strategy, StrategyKind};

/// Upper end of the acquaintance parameter range searched for criticality.
pub const ACQUAINTANCE_C_MAX: f64 = 100.0;
const GRID_POINTS: usize = 64;
const R_TOL: f64 = 1e-10;
const COVERAGE_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalCoverage {
    pub kind: StrategyKind,
    /// Strategy parameter at which `R = 1`.
    pub param: f64,
    /// Coverage at that parameter.
    pub coverage: f64,
}

/// Limiting coverage for a strategy parameter.
pub fn coverage_for_param(dist: &DegreeDistribution, kind: StrategyKind, param: f64) -> Result<f64> {
    Strategy::with_param(kind, param).validate()?;
    Ok(match kind {
        StrategyKind::Uniform => param,
        StrategyKind::Acquaintance => (1.0 - dist.pgf_at(acquaintance_alpha(dist, param)?)).max(0.0),
        StrategyKind::E1 | StrategyKind::E2 => (1.0 - dist.pgf_at(param)).max(0.0),
    })
}

/// Strategy parameter giving coverage `v`. Acquaintance and edgewise
/// strategies never vaccinate isolated vertices, so coverage at or above
/// `1 - p_0` is unreachable.
pub fn param_for_coverage(dist: &DegreeDistribution, kind: StrategyKind, v: f64) -> Result<f64> {
    check_closed("v", v, 0.0, 1.0, "[0, 1)")?;
    if kind == StrategyKind::Uniform {
        Strategy::Uniform { v }.validate()?;
        return Ok(v);
    }
    let cap = 1.0 - dist.prob(0);
    if v >= cap {
        return Err(Error::CoverageUnreachable {
            strategy: kind.name(),
            target: v,
            max: cap,
        });
    }
    if v == 0.0 {
        return Ok(Strategy::identity(kind).param().unwrap_or(0.0));
    }
    let gap = |x: f64| coverage_for_param(dist, kind, x).map_or(f64::NAN, |cov| cov - v);
    match kind {
        StrategyKind::Acquaintance => {
            let mut hi = 1.0;
            while gap(hi) < 0.0 {
                hi *= 2.0;
                if hi > 1e12 {
                    return Err(Error::CoverageUnreachable {
                        strategy: kind.name(),
                        target: v,
                        max: cap,
                    });
                }
            }
            Ok(bisect(gap, 0.0, hi, COVERAGE_TOL))
        }
        _ => Ok(bisect(gap, f64::MIN_POSITIVE, 1.0, COVERAGE_TOL)),
    }
}

fn r_at(dist: &DegreeDistribution, p: f64, kind: StrategyKind, x: f64) -> Result<f64> {
    match kind {
        StrategyKind::Uniform => Ok(r0(dist, p)? * (1.0 - x)),
        StrategyKind::Acquaintance => acquaintance_r(dist, p, x),
        StrategyKind::E1 => edgewise_r(dist, p, x, false),
        StrategyKind::E2 => edgewise_r(dist, p, x, true),
    }
}

/// Smallest coverage that brings the reproduction number down to 1.
///
/// Acquaintance is searched over `c` in `[0, ACQUAINTANCE_C_MAX]` and the
/// edgewise strategies over `alpha` in `(0, 1]`, after checking on a grid
/// that `R` is monotone in the parameter.
pub fn critical_coverage(dist: &DegreeDistribution, p: f64, kind: StrategyKind) -> Result<CriticalCoverage> {
    let base = r0(dist, p)?;
    let identity = Strategy::identity(kind).param().unwrap_or(0.0);
    if base <= 1.0 {
        return Ok(CriticalCoverage {
            kind,
            param: identity,
            coverage: 0.0,
        });
    }
    let param = match kind {
        StrategyKind::Uniform => 1.0 - 1.0 / base,
        StrategyKind::Acquaintance | StrategyKind::E1 | StrategyKind::E2 => {
            // Parameter ordered from "no vaccination" to "most vaccination".
            let (start, end) = if kind == StrategyKind::Acquaintance {
                (0.0, ACQUAINTANCE_C_MAX)
            } else {
                (1.0, 0.0)
            };
            let at = |i: usize| start + (end - start) * i as f64 / (GRID_POINTS - 1) as f64;
            let mut grid = Vec::with_capacity(GRID_POINTS);
            for i in 0..GRID_POINTS {
                grid.push(r_at(dist, p, kind, at(i).max(f64::MIN_POSITIVE))?);
            }
            for i in 1..GRID_POINTS {
                if grid[i] > grid[i - 1] + 1e-12 * grid[i - 1].max(1.0) {
                    return Err(Error::NotMonotone {
                        parameter: kind.name(),
                        at: at(i),
                    });
                }
            }
            let last = grid[GRID_POINTS - 1];
            if last > 1.0 {
                return Err(Error::CriticalityOutOfRange {
                    strategy: kind.name(),
                    limit: end,
                    r_at_limit: last,
                });
            }
            let first_below = grid.iter().position(|&r| r <= 1.0).expect("last grid point is at most 1");
            let (lo, hi) = (at(first_below - 1), at(first_below).max(f64::MIN_POSITIVE));
            bisect(
                |x| r_at(dist, p, kind, x).map_or(f64::NAN, |r| r - 1.0),
                lo,
                hi,
                R_TOL,
            )
        }
    };
    Ok(CriticalCoverage {
        kind,
        param,
        coverage: coverage_for_param(dist, kind, param)?,
    })
}

#[derive(Debug)]
pub struct CurvePoint {
    /// Requested coverage.
    pub v: f64,
    pub outcome: Result<TheoryResult>,
}

/// `tau` against coverage: each requested coverage is inverted to a strategy
/// parameter, then the theory is evaluated there. Unreachable coverages are
/// reported per point.
pub fn tau_curve(dist: &DegreeDistribution, p: f64, kind: StrategyKind, coverages: &[f64]) -> Vec<CurvePoint> {
    coverages
        .iter()
        .map(|&v| CurvePoint {
            v,
            outcome: param_for_coverage(dist, kind, v)
                .and_then(|param| evaluate(dist, p, Strategy::with_param(kind, param))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degrees::poisson;

    #[test]
    fn poisson_critical_coverages() {
        let d = poisson(6.0, 1e-12).unwrap();
        let uni = critical_coverage(&d, 0.5, StrategyKind::Uniform).unwrap();
        assert!((uni.coverage - 2.0 / 3.0).abs() < 1e-9);
        for kind in StrategyKind::ALL {
            let cc = critical_coverage(&d, 0.5, kind).unwrap();
            let r = r_at(&d, 0.5, kind, cc.param).unwrap();
            assert!((r - 1.0).abs() < 1e-9, "{kind}: {r}");
        }
    }

    #[test]
    fn subcritical_needs_nothing() {
        let d = poisson(1.5, 1e-12).unwrap();
        let cc = critical_coverage(&d, 0.5, StrategyKind::E1).unwrap();
        assert_eq!(cc.coverage, 0.0);
        assert_eq!(cc.param, 1.0);
    }

    #[test]
    fn coverage_inversion_round_trips() {
        let d = poisson(6.0, 1e-12).unwrap();
        for kind in StrategyKind::ALL {
            for v in [0.0, 0.1, 0.5, 0.9] {
                let param = param_for_coverage(&d, kind, v).unwrap();
                let back = coverage_for_param(&d, kind, param).unwrap();
                assert!((back - v).abs() < 1e-10, "{kind} {v} {back}");
            }
        }
    }

    #[test]
    fn unreachable_coverage() {
        let d = poisson(2.0, 1e-12).unwrap();
        let cap = 1.0 - d.prob(0);
        match param_for_coverage(&d, StrategyKind::Acquaintance, 0.95) {
            Err(Error::CoverageUnreachable { max, .. }) => assert!((max - cap).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        let curve = tau_curve(&d, 0.5, StrategyKind::E2, &[0.1, 0.95]);
        assert!(curve[0].outcome.is_ok());
        assert!(curve[1].outcome.is_err());
    }

    #[test]
    fn tau_decreases_along_curve() {
        let d = poisson(6.0, 1e-12).unwrap();
        let grid: Vec<f64> = (0..20).map(|i| i as f64 * 0.04).collect();
        for kind in StrategyKind::ALL {
            let taus: Vec<f64> = tau_curve(&d, 0.5, kind, &grid)
                .into_iter()
                .map(|pt| pt.outcome.unwrap().tau)
                .collect();
            assert!(taus.windows(2).all(|w| w[1] <= w[0] + 1e-9), "{kind}: {taus:?}");
        }
    }
}
