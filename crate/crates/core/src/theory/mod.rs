//! Branching-process approximations for the epidemic on a configuration
//! model graph, with and without vaccination.
//!
//! Every strategy reduces to a single-type branching process whose offspring
//! law is explicit. `pi_tilde` is its extinction probability (smallest
//! fixed point of the offspring pgf), `pi` the probability that an epidemic
//! started by a uniformly chosen unvaccinated vertex stays minor, and
//! `tau = 1 - pi` the limiting probability and relative size of a major
//! outbreak.

mod acquaintance;
mod coverage;
mod edgewise;
mod fixed_point;
mod offspring;

use crate::degrees::DegreeDistribution;
use crate::error::{check_closed, Result};
use crate::vaccine::{Strategy, StrategyKind};

pub use acquaintance::{acquaintance_alpha, acquaintance_r, acquaintance_theory};
pub use coverage::{
    coverage_for_param, critical_coverage, param_for_coverage, tau_curve, CriticalCoverage, CurvePoint,
    ACQUAINTANCE_C_MAX,
};
pub use edgewise::{e1_theory, e2_theory, edgewise_r};
pub use fixed_point::{smallest_fixed_point, FixedPoint};
pub use offspring::{acquaintance_offspring, base_offspring, edgewise_offspring, OffspringLaw};

pub(crate) use fixed_point::bisect;

/// Tolerance on the fixed-point residual reported as converged.
pub const RESIDUAL_TOL: f64 = 1e-10;

pub const THEORY_CSV_HEADER: [&str; 8] = ["strategy", "param", "v", "R", "pi_tilde", "pi", "tau", "residual"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoryResult {
    pub strategy: Strategy,
    /// Mean offspring of the approximating branching process.
    pub r: f64,
    pub pi_tilde: f64,
    pub pi: f64,
    pub tau: f64,
    /// Limiting vaccination coverage.
    pub v: f64,
    pub residual: f64,
    /// Offspring is exactly one; `pi_tilde` is set to 0 by convention.
    pub degenerate: bool,
}

impl TheoryResult {
    /// Fields in [`THEORY_CSV_HEADER`] order.
    pub fn csv_record(&self) -> Vec<String> {
        let name = self.strategy.kind().map_or("none", StrategyKind::name);
        let param = self.strategy.param().map_or_else(|| "NA".to_string(), |x| x.to_string());
        vec![
            name.to_string(),
            param,
            self.v.to_string(),
            self.r.to_string(),
            self.pi_tilde.to_string(),
            self.pi.to_string(),
            self.tau.to_string(),
            format!("{:e}", self.residual),
        ]
    }

    /// Row for a strategy whose theory could not be evaluated.
    pub fn na_record(kind: StrategyKind, param: Option<f64>, v: f64) -> Vec<String> {
        let mut row = vec![kind.name().to_string(), param.map_or_else(|| "NA".into(), |x| x.to_string())];
        row.push(v.to_string());
        row.extend(std::iter::repeat_n("NA".to_string(), 5));
        row
    }
}

/// `R0 = p (E[D^2] / mu - 1)`, the mean of `MixBi(D~ - 1, p)`.
pub fn r0(dist: &DegreeDistribution, p: f64) -> Result<f64> {
    check_closed("p", p, 0.0, 1.0, "[0, 1]")?;
    let m = dist.moments();
    Ok(p * (m.second_moment / m.mean - 1.0))
}

fn base(dist: &DegreeDistribution, p: f64, strategy: Strategy, v: f64) -> Result<TheoryResult> {
    let r = r0(dist, p)?;
    let mu = dist.mean();
    let fp = smallest_fixed_point(
        |t| dist.pgf_prime_at(1.0 - p * (1.0 - t)) / mu,
        |t| p * dist.pgf_second_at(1.0 - p * (1.0 - t)) / mu,
        r,
    )?;
    let pi = dist.pgf_at(1.0 - p * (1.0 - fp.value)).clamp(0.0, 1.0);
    Ok(TheoryResult {
        strategy,
        r,
        pi_tilde: fp.value,
        pi,
        tau: 1.0 - pi,
        v,
        residual: fp.residual,
        degenerate: fp.degenerate,
    })
}

/// Unvaccinated population.
pub fn extinction_base(dist: &DegreeDistribution, p: f64) -> Result<TheoryResult> {
    base(dist, p, Strategy::None, 0.0)
}

/// Uniform vaccination only thins transmission: `p -> p (1 - v)`.
pub fn uniform_theory(dist: &DegreeDistribution, p: f64, v: f64) -> Result<TheoryResult> {
    check_closed("p", p, 0.0, 1.0, "[0, 1]")?;
    let strategy = Strategy::Uniform { v };
    strategy.validate()?;
    base(dist, p * (1.0 - v), strategy, v)
}

/// Theory for any strategy at a given parameter.
pub fn evaluate(dist: &DegreeDistribution, p: f64, strategy: Strategy) -> Result<TheoryResult> {
    match strategy {
        Strategy::None => extinction_base(dist, p),
        Strategy::Uniform { v } => uniform_theory(dist, p, v),
        Strategy::Acquaintance { c } => acquaintance_theory(dist, p, c),
        Strategy::E1 { alpha } => e1_theory(dist, p, alpha),
        Strategy::E2 { alpha } => e2_theory(dist, p, alpha),
    }
}
