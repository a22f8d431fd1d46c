//! Offspring laws of the approximating branching processes, as explicit
//! probability mass functions.

use crate::degrees::DegreeDistribution;

/// `Bin(trials, q)` probabilities, computed in log space.
pub(crate) fn binomial_row(trials: usize, q: f64) -> Vec<f64> {
    let mut row = vec![0.0; trials + 1];
    if q <= 0.0 {
        row[0] = 1.0;
        return row;
    }
    if q >= 1.0 {
        row[trials] = 1.0;
        return row;
    }
    let (ln_q, ln_r) = (q.ln(), (-q).ln_1p());
    let mut ln_choose = 0.0;
    for (j, slot) in row.iter_mut().enumerate() {
        if j > 0 {
            ln_choose += ((trials - j + 1) as f64).ln() - (j as f64).ln();
        }
        *slot = (ln_choose + j as f64 * ln_q + (trials - j) as f64 * ln_r).exp();
    }
    row
}

#[derive(Debug, Clone, PartialEq)]
pub struct OffspringLaw {
    pmf: Vec<f64>,
}

impl OffspringLaw {
    pub fn probabilities(&self) -> &[f64] {
        &self.pmf
    }

    pub fn total_mass(&self) -> f64 {
        self.pmf.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.pmf.iter().enumerate().map(|(j, p)| j as f64 * p).sum()
    }

    pub fn pgf(&self, t: f64) -> f64 {
        self.pmf.iter().rev().fold(0.0, |acc, &p| acc * t + p)
    }

    pub fn pgf_prime(&self, t: f64) -> f64 {
        self.pmf
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (j, &p)| acc * t + j as f64 * p)
    }
}

/// Mixture over the size-biased degree `k` of: with probability
/// `survive(k)` the reached vertex contributes `Bin(k - 1, q(k))` offspring,
/// otherwise none. Each `k` is weighted by `weight(k)`.
fn mixed_binomial(
    dist: &DegreeDistribution,
    weight: impl Fn(usize) -> f64,
    survive: impl Fn(usize) -> f64,
    q: impl Fn(usize) -> f64,
) -> OffspringLaw {
    let max = dist.max_degree().max(1);
    let mut pmf = vec![0.0; max];
    for (k, _) in dist.support().filter(|&(k, _)| k >= 1) {
        let w = weight(k);
        let a = survive(k);
        let row = binomial_row(k - 1, q(k));
        pmf[0] += w * ((1.0 - a) + a * row[0]);
        for (j, b) in row.iter().enumerate().skip(1) {
            pmf[j] += w * a * b;
        }
    }
    OffspringLaw { pmf }
}

fn size_biased_weight(dist: &DegreeDistribution) -> impl Fn(usize) -> f64 + '_ {
    let mean = dist.mean();
    move |k| k as f64 * dist.prob(k) / mean
}

/// `MixBi(D~ - 1, p)`: no vaccination.
pub fn base_offspring(dist: &DegreeDistribution, p: f64) -> OffspringLaw {
    mixed_binomial(dist, size_biased_weight(dist), |_| 1.0, |_| p)
}

/// Acquaintance offspring: the reached vertex has degree `k` with
/// probability `p~_k e^{-c/k} / alpha`, escapes its other friends with
/// probability `alpha^(k-1)`, and each of its other edges is open with
/// probability `p e^{-c/k}`.
pub fn acquaintance_offspring(dist: &DegreeDistribution, p: f64, c: f64, alpha: f64) -> OffspringLaw {
    let sb = size_biased_weight(dist);
    mixed_binomial(
        dist,
        |k| sb(k) * (-c / k as f64).exp() / alpha,
        |k| alpha.powi(k as i32 - 1),
        |k| p * (-c / k as f64).exp(),
    )
}

/// Edgewise offspring: `Bin(k - 1, p alpha)` for E1, `Bin(k - 1, p)` for E2,
/// given survival with probability `alpha^(k-1)`.
pub fn edgewise_offspring(dist: &DegreeDistribution, p: f64, alpha: f64, both_ends: bool) -> OffspringLaw {
    let q = if both_ends { p } else { p * alpha };
    mixed_binomial(dist, size_biased_weight(dist), |k| alpha.powi(k as i32 - 1), |_| q)
}
