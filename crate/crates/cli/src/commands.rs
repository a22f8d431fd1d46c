use std::fmt::Write as _;

use netvax_core::degrees::sample_degree_sequence;
use netvax_core::epidemic::{run_replicates, GraphModel, ReplicateConfig};
use netvax_core::graphgen::{configuration_multigraph, configuration_simple};
use netvax_core::rng::rng_from_seed;
use netvax_core::sweep::{sweep, write_sweep_csv, SweepSettings};
use netvax_core::theory::{critical_coverage, tau_curve, TheoryResult, THEORY_CSV_HEADER};
use netvax_core::{Error, Result};

use crate::config::{Command, RunConfig};

/// A command's file output plus notes meant for stderr.
#[derive(Debug, Default)]
pub struct Output {
    pub body: String,
    pub notes: Vec<String>,
}

pub fn execute(config: &RunConfig) -> Result<Output> {
    let mut out = match config.command {
        Command::Theory => theory(config)?,
        Command::Simulate => simulate(config)?,
        Command::Sweep => run_sweep(config)?,
        Command::Generate => generate(config)?,
    };
    writeln!(out.body, "{}", config.to_comment()).unwrap();
    Ok(out)
}

fn na(x: Option<f64>) -> String {
    x.map_or_else(|| "NA".to_string(), |x| x.to_string())
}

fn theory(config: &RunConfig) -> Result<Output> {
    let dist = config.dist_spec()?.build()?;
    let p = config.p()?;
    let kinds = config.strategies()?;
    if kinds.is_empty() {
        return Err(Error::NoStrategies);
    }
    let grid = config.grid()?;
    let mut out = Output::default();
    writeln!(out.body, "{}", THEORY_CSV_HEADER.join(",")).unwrap();
    for &kind in &kinds {
        let mut unreachable = 0;
        for point in tau_curve(&dist, p, kind, &grid) {
            let record = match point.outcome {
                Ok(res) => {
                    let mut record = res.csv_record();
                    record[2] = point.v.to_string();
                    record
                }
                Err(Error::CoverageUnreachable { max, .. }) => {
                    unreachable += 1;
                    if unreachable == 1 {
                        out.notes.push(format!(
                            "{kind}: coverage {} and above is unreachable (maximum {max}); rows marked NA",
                            point.v
                        ));
                    }
                    TheoryResult::na_record(kind, None, point.v)
                }
                Err(e) => return Err(e),
            };
            writeln!(out.body, "{}", record.join(",")).unwrap();
        }
    }
    for &kind in &kinds {
        let vc = match critical_coverage(&dist, p, kind) {
            Ok(cc) => Some(cc.coverage),
            Err(e) => {
                out.notes.push(format!("{kind}: no critical coverage: {e}"));
                None
            }
        };
        writeln!(out.body, "# vc,{kind},{}", na(vc)).unwrap();
    }
    Ok(out)
}

fn simulate(config: &RunConfig) -> Result<Output> {
    let dist = config.dist_spec()?.build()?;
    let replicate = ReplicateConfig {
        n: config.n()?,
        p: config.p()?,
        strategy: config.strategy()?,
        replicates: config.replicates(),
        base_seed: config.seed(),
        policy: config.policy()?,
        graph: config.graph()?,
    };
    let summary = run_replicates(&dist, &replicate)?;
    let mut out = Output::default();
    let mut buf = Vec::new();
    summary.write_csv(&mut buf)?;
    out.body = String::from_utf8(buf).expect("CSV is UTF-8");
    writeln!(
        out.body,
        "# pmajor,{},tauhat,{}",
        na(summary.major_probability()),
        na(summary.tau_hat())
    )
    .unwrap();
    let failed = summary.failures().count();
    if failed > 0 {
        out.notes.push(format!("{failed} of {} replicates failed", summary.replicate_count()));
    }
    Ok(out)
}

fn run_sweep(config: &RunConfig) -> Result<Output> {
    let dist = config.dist_spec()?.build()?;
    let replicates = config.replicates();
    let settings = SweepSettings {
        n: if replicates > 0 { config.n()? } else { config.n.unwrap_or(0) },
        p: config.p()?,
        replicates,
        base_seed: config.seed(),
        policy: config.policy()?,
        graph: config.graph()?,
    };
    let rows = sweep(&dist, &settings, &config.strategies()?, &config.grid()?)?;
    let mut out = Output::default();
    let mut buf = Vec::new();
    write_sweep_csv(&rows, &mut buf)?;
    out.body = String::from_utf8(buf).expect("CSV is UTF-8");
    let na_rows = rows.iter().filter(|r| r.theory.is_err()).count();
    if na_rows > 0 {
        out.notes.push(format!("{na_rows} grid points have unreachable coverage; rows marked NA"));
    }
    Ok(out)
}

fn generate(config: &RunConfig) -> Result<Output> {
    let dist = config.dist_spec()?.build()?;
    let mut rng = rng_from_seed(config.seed());
    let seq = sample_degree_sequence(&dist, config.n()?, &mut rng)?;
    let graph = match config.graph()? {
        GraphModel::Simple { max_attempts } => configuration_simple(&seq, &mut rng, max_attempts)?,
        GraphModel::Multigraph => configuration_multigraph(&seq, &mut rng),
    };
    let mut buf = Vec::new();
    graph.write_edge_list(&mut buf)?;
    Ok(Output {
        body: String::from_utf8(buf).expect("CSV is UTF-8"),
        notes: vec![format!("{} edges after {} attempt(s)", graph.edge_count(), graph.attempts())],
    })
}
