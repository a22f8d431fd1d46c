use super::offspring::edgewise_offspring;
use super::{smallest_fixed_point, TheoryResult};
use crate::degrees::DegreeDistribution;
use crate::error::{check_closed, Result};
use crate::vaccine::Strategy;

/// Mean offspring under edgewise vaccination:
/// `p sum (k-1) p~_k alpha^k` when only one end of a sampled edge is
/// vaccinated, `p sum (k-1) p~_k alpha^(k-1)` when both are.
pub fn edgewise_r(dist: &DegreeDistribution, p: f64, alpha: f64, both_ends: bool) -> Result<f64> {
    check_closed("p", p, 0.0, 1.0, "[0, 1]")?;
    Strategy::E1 { alpha }.validate()?;
    let mu = dist.mean();
    let shift = if both_ends { 1 } else { 0 };
    Ok(p * dist
        .support()
        .filter(|&(k, _)| k >= 2)
        .map(|(k, pk)| (k as f64 - 1.0) * k as f64 * pk / mu * alpha.powi(k as i32 - shift))
        .sum::<f64>())
}

fn edgewise_theory(dist: &DegreeDistribution, p: f64, alpha: f64, both_ends: bool) -> Result<TheoryResult> {
    let r = edgewise_r(dist, p, alpha, both_ends)?;
    let law = edgewise_offspring(dist, p, alpha, both_ends);
    let fp = smallest_fixed_point(|t| law.pgf(t), |t| law.pgf_prime(t), r)?;
    let q = if both_ends { p } else { p * alpha };
    let unvaccinated = dist.pgf_at(alpha);
    let pi = (dist.pgf_at(alpha * (1.0 - q * (1.0 - fp.value))) / unvaccinated).clamp(0.0, 1.0);
    let strategy = if both_ends {
        Strategy::E2 { alpha }
    } else {
        Strategy::E1 { alpha }
    };
    Ok(TheoryResult {
        strategy,
        r,
        pi_tilde: fp.value,
        pi,
        tau: 1.0 - pi,
        v: (1.0 - unvaccinated).max(0.0),
        residual: fp.residual,
        degenerate: fp.degenerate,
    })
}

pub fn e1_theory(dist: &DegreeDistribution, p: f64, alpha: f64) -> Result<TheoryResult> {
    edgewise_theory(dist, p, alpha, false)
}

pub fn e2_theory(dist: &DegreeDistribution, p: f64, alpha: f64) -> Result<TheoryResult> {
    edgewise_theory(dist, p, alpha, true)
}
