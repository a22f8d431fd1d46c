//! Rank-1 inhomogeneous random graphs `G(n, W)`.
//!
//! Vertices get i.i.d. weights and each pair `{i, j}` is joined
//! independently with a probability that is non-decreasing in `W_i W_j`.
//! Pairs are visited in weight order with geometric skipping plus thinning,
//! so the per-pair law is exact while the cost is `O(n log n + m)`.

use rand::distr::Distribution;
use rand::Rng;

use super::HalfEdgeGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRule {
    /// `W_i W_j / (n + W_i W_j)`.
    Saturating,
    /// `min(W_i W_j / n, 1)`.
    Capped,
}

impl EdgeRule {
    pub fn probability(self, wi: f64, wj: f64, n: usize) -> f64 {
        let x = wi * wj;
        match self {
            EdgeRule::Saturating => x / (n as f64 + x),
            EdgeRule::Capped => (x / n as f64).min(1.0),
        }
    }
}

pub fn gnw_graph<D, R>(n: usize, weights: &D, rule: EdgeRule, rng: &mut R) -> Result<HalfEdgeGraph>
where
    D: Distribution<f64>,
    R: Rng + ?Sized,
{
    let w: Vec<f64> = (0..n).map(|_| weights.sample(rng)).collect();
    gnw_graph_from_weights(&w, rule, rng)
}

pub fn gnw_graph_from_weights<R: Rng + ?Sized>(weights: &[f64], rule: EdgeRule, rng: &mut R) -> Result<HalfEdgeGraph> {
    if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
        return Err(Error::InvalidDistribution("weights must be finite and non-negative".into()));
    }
    let n = weights.len();
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.sort_by(|&a, &b| weights[b as usize].total_cmp(&weights[a as usize]).then(a.cmp(&b)));
    let sorted: Vec<f64> = order.iter().map(|&v| weights[v as usize]).collect();

    let mut edges = Vec::new();
    for i in 0..n {
        let wi = sorted[i];
        if wi == 0.0 {
            break;
        }
        let mut j = i + 1;
        if j >= n {
            break;
        }
        let mut bound = rule.probability(wi, sorted[j], n);
        while j < n && bound > 0.0 {
            if bound < 1.0 {
                let u = 1.0 - rng.random::<f64>();
                let skip = (u.ln() / (1.0 - bound).ln()).floor();
                j = j.saturating_add(skip as usize);
                if j >= n {
                    break;
                }
            }
            let q = rule.probability(wi, sorted[j], n);
            if rng.random::<f64>() * bound < q {
                edges.push((order[i], order[j]));
            }
            bound = q;
            j += 1;
        }
    }
    HalfEdgeGraph::from_edges(n, &edges)
}
