//! Theory and Monte Carlo side by side over a grid of coverages.

use std::io::Write;

use crate::degrees::DegreeDistribution;
use crate::epidemic::{run_replicates, GraphModel, ReplicateConfig, ThresholdPolicy};
use crate::error::{Error, Result};
use crate::rng::replicate_seed;
use crate::theory::{param_for_coverage, tau_curve, TheoryResult};
use crate::vaccine::{Strategy, StrategyKind};

pub const SWEEP_CSV_HEADER: [&str; 10] = [
    "strategy", "v", "param", "v_theory", "R", "tau", "replicates", "pmajor", "tauhat", "gap",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub n: usize,
    pub p: f64,
    /// Replicates per grid point; 0 skips the simulation.
    pub replicates: usize,
    pub base_seed: u64,
    pub policy: ThresholdPolicy,
    pub graph: GraphModel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarlo {
    pub replicates: usize,
    pub failures: usize,
    pub pmajor: Option<f64>,
    pub tau_hat: Option<f64>,
}

#[derive(Debug)]
pub struct SweepRow {
    pub kind: StrategyKind,
    /// Requested coverage.
    pub v: f64,
    pub theory: Result<TheoryResult>,
    pub mc: Option<MonteCarlo>,
}

impl SweepRow {
    /// `|tau - tauhat|`, when both exist.
    pub fn gap(&self) -> Option<f64> {
        let tau = self.theory.as_ref().ok()?.tau;
        Some((tau - self.mc?.tau_hat?).abs())
    }

    pub fn csv_record(&self) -> Vec<String> {
        let show = |x: Option<f64>| x.map_or_else(|| "NA".to_string(), |x| x.to_string());
        let th = self.theory.as_ref().ok();
        vec![
            self.kind.name().to_string(),
            self.v.to_string(),
            show(th.and_then(|t| t.strategy.param())),
            show(th.map(|t| t.v)),
            show(th.map(|t| t.r)),
            show(th.map(|t| t.tau)),
            self.mc.map_or(0, |m| m.replicates - m.failures).to_string(),
            show(self.mc.and_then(|m| m.pmajor)),
            show(self.mc.and_then(|m| m.tau_hat)),
            show(self.gap()),
        ]
    }
}

/// One row per `(strategy, coverage)`. Grid point `i` of strategy `s` draws
/// its replicates from base seed `replicate_seed(base_seed, s * len + i)`,
/// so rows are reproducible individually.
pub fn sweep(
    dist: &DegreeDistribution,
    settings: &SweepSettings,
    kinds: &[StrategyKind],
    grid: &[f64],
) -> Result<Vec<SweepRow>> {
    if kinds.is_empty() {
        return Err(Error::NoStrategies);
    }
    let mut rows = Vec::with_capacity(kinds.len() * grid.len());
    for (s, &kind) in kinds.iter().enumerate() {
        for (i, point) in tau_curve(dist, settings.p, kind, grid).into_iter().enumerate() {
            let mc = match (&point.outcome, settings.replicates) {
                (Ok(_), r) if r > 0 => {
                    let param = param_for_coverage(dist, kind, point.v)?;
                    let config = ReplicateConfig {
                        n: settings.n,
                        p: settings.p,
                        strategy: Strategy::with_param(kind, param),
                        replicates: r,
                        base_seed: replicate_seed(settings.base_seed, (s * grid.len() + i) as u64),
                        policy: settings.policy,
                        graph: settings.graph,
                    };
                    let summary = run_replicates(dist, &config)?;
                    Some(MonteCarlo {
                        replicates: r,
                        failures: summary.failures().count(),
                        pmajor: summary.major_probability(),
                        tau_hat: summary.tau_hat(),
                    })
                }
                _ => None,
            };
            rows.push(SweepRow {
                kind,
                v: point.v,
                theory: point.outcome,
                mc,
            });
        }
    }
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    writeln!(out, "{}", SWEEP_CSV_HEADER.join(","))?;
    for row in rows {
        writeln!(out, "{}", row.csv_record().join(","))?;
    }
    Ok(())
}
