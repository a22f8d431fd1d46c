use super::offspring::acquaintance_offspring;
use super::{smallest_fixed_point, TheoryResult};
use crate::degrees::DegreeDistribution;
use crate::error::{check_closed, Result};
use crate::vaccine::Strategy;

/// Probability that a given half-edge is never chosen by its owner's
/// acquaintance draws: `sum_k e^{-c/k} p~_k`. A vertex reached along an edge
/// is unvaccinated with probability `alpha^(k-1)` times the chance that it
/// was not named through this edge.
pub fn acquaintance_alpha(dist: &DegreeDistribution, c: f64) -> Result<f64> {
    Strategy::Acquaintance { c }.validate()?;
    let mu = dist.mean();
    let sum = |term: &dyn Fn(f64) -> f64| -> f64 {
        dist.support()
            .filter(|&(k, _)| k >= 1)
            .map(|(k, pk)| term(k as f64) * k as f64 * pk / mu)
            .sum()
    };
    // Near alpha = 1 the complement is accurate (and exactly 1 at c = 0);
    // near 0 the direct sum avoids cancellation.
    let named = sum(&|k| -(-c / k).exp_m1());
    if named < 0.5 {
        Ok(1.0 - named)
    } else {
        Ok(sum(&|k| (-c / k).exp()))
    }
}

/// Mean offspring under acquaintance vaccination,
/// `p sum_{k>=2} (k-1) alpha^(k-2) e^{-2c/k} p~_k`.
pub fn acquaintance_r(dist: &DegreeDistribution, p: f64, c: f64) -> Result<f64> {
    check_closed("p", p, 0.0, 1.0, "[0, 1]")?;
    let alpha = acquaintance_alpha(dist, c)?;
    let mu = dist.mean();
    Ok(p * dist
        .support()
        .filter(|&(k, _)| k >= 2)
        .map(|(k, pk)| {
            let kf = k as f64;
            (kf - 1.0) * alpha.powi(k as i32 - 2) * (-2.0 * c / kf).exp() * kf * pk / mu
        })
        .sum::<f64>())
}

pub fn acquaintance_theory(dist: &DegreeDistribution, p: f64, c: f64) -> Result<TheoryResult> {
    let r = acquaintance_r(dist, p, c)?;
    let alpha = acquaintance_alpha(dist, c)?;
    let law = acquaintance_offspring(dist, p, c, alpha);
    let fp = smallest_fixed_point(|t| law.pgf(t), |t| law.pgf_prime(t), r)?;

    // Initial case: unvaccinated with degree j in proportion to p_j alpha^j;
    // each of its edges leads to an unvaccinated, infected neighbour with
    // probability p e^{-c/j}.
    let unvaccinated = dist.pgf_at(alpha);
    let escaped: f64 = dist
        .support()
        .map(|(j, pj)| {
            let q = if j == 0 { 0.0 } else { p * (-c / j as f64).exp() };
            pj * alpha.powi(j as i32) * (1.0 - q * (1.0 - fp.value)).powi(j as i32)
        })
        .sum();
    let pi = (escaped / unvaccinated).clamp(0.0, 1.0);
    Ok(TheoryResult {
        strategy: Strategy::Acquaintance { c },
        r,
        pi_tilde: fp.value,
        pi,
        tau: 1.0 - pi,
        v: (1.0 - unvaccinated).max(0.0),
        residual: fp.residual,
        degenerate: fp.degenerate,
    })
}
