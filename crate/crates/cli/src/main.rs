use std::process::ExitCode;

use clap::{Parser, Subcommand};
use netvax_cli::{run, Command, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "netvax", version, about = "Epidemics and vaccination on configuration model graphs")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Theoretical outbreak size against coverage, with critical coverages.
    Theory {
        /// Degree distribution, e.g. `poisson:lambda=6` or `powerlaw:exp=3.5,dmax=200,mean=6`.
        #[arg(long)]
        dist: String,
        #[arg(long)]
        p: f64,
        /// `all` or a comma list of `acq`, `e1`, `e2`, `uniform`.
        #[arg(long, visible_alias = "strategy", default_value = "all")]
        strategies: String,
        /// Coverage grid `lo:hi:step`.
        #[arg(long, default_value = "0:0.95:0.01")]
        grid: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Independent epidemic replicates for one strategy.
    Simulate {
        #[arg(long)]
        dist: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        /// `none`, `uniform:v=..`, `acq:c=..`, `e1:alpha=..` or `e2:alpha=..`.
        #[arg(long, default_value = "none")]
        strategy: String,
        #[arg(long, default_value_t = 100)]
        replicates: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `pow:<e>`, `frac:<f>` or `abs:<k>`; defaults to `pow:2/3`.
        #[arg(long)]
        threshold_policy: Option<String>,
        /// `multi` or `simple[:max_attempts]`.
        #[arg(long, default_value = "multi")]
        graph: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Theory and simulation side by side over a coverage grid.
    Sweep {
        #[arg(long)]
        dist: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: f64,
        #[arg(long, visible_alias = "strategy", default_value = "all")]
        strategies: String,
        #[arg(long, default_value = "0:0.95:0.01")]
        grid: String,
        /// Replicates per grid point; 0 gives theory-only rows.
        #[arg(long, default_value_t = 0)]
        replicates: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        threshold_policy: Option<String>,
        #[arg(long, default_value = "multi")]
        graph: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Edge list of one configuration model graph.
    Generate {
        #[arg(long)]
        dist: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "simple")]
        graph: String,
        #[arg(long)]
        out: Option<String>,
    },
}

impl From<Cmd> for RunConfig {
    fn from(cmd: Cmd) -> Self {
        let blank = |command, dist| RunConfig {
            command,
            dist,
            n: None,
            p: None,
            strategy: None,
            replicates: None,
            seed: None,
            threshold_policy: None,
            graph: None,
            grid: None,
            out: None,
        };
        match cmd {
            Cmd::Theory { dist, p, strategies, grid, out } => RunConfig {
                p: Some(p),
                strategy: Some(strategies),
                grid: Some(grid),
                out,
                ..blank(Command::Theory, dist)
            },
            Cmd::Simulate { dist, n, p, strategy, replicates, seed, threshold_policy, graph, out } => RunConfig {
                n: Some(n),
                p: Some(p),
                strategy: Some(strategy),
                replicates: Some(replicates),
                seed: Some(seed),
                threshold_policy,
                graph: Some(graph),
                out,
                ..blank(Command::Simulate, dist)
            },
            Cmd::Sweep { dist, n, p, strategies, grid, replicates, seed, threshold_policy, graph, out } => RunConfig {
                n,
                p: Some(p),
                strategy: Some(strategies),
                grid: Some(grid),
                replicates: Some(replicates),
                seed: Some(seed),
                threshold_policy,
                graph: Some(graph),
                out,
                ..blank(Command::Sweep, dist)
            },
            Cmd::Generate { dist, n, seed, graph, out } => RunConfig {
                n: Some(n),
                seed: Some(seed),
                graph: Some(graph),
                out,
                ..blank(Command::Generate, dist)
            },
        }
    }
}

fn main() -> ExitCode {
    run(&Cli::parse().command.into())
}
