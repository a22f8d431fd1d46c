//! SIR final size on a vaccinated graph, and the replicate harness.
//!
//! The final size is the component of the initial case in the graph
//! percolated at the transmission probability and restricted to unvaccinated
//! vertices. The engine explores that component directly, drawing each
//! edge's transmission outcome the first time an infected endpoint tries it.

use std::collections::VecDeque;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;

use crate::degrees::{sample_degree_sequence, DegreeDistribution};
use crate::error::{check_closed, Error, Result};
use crate::graphgen::{configuration_multigraph, configuration_simple, HalfEdgeGraph, DEFAULT_MAX_ATTEMPTS};
use crate::rng::replicate_seed;
use crate::vaccine::{Strategy, VaccinationMask};

/// When a finite outbreak counts as "major".
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdPolicy {
    /// Major iff `final_size >= ceil(n_unvacc^e)`.
    Power(f64),
    /// Major iff `final_size >= ceil(f * n_unvacc)`.
    Fraction(f64),
    /// Major iff `final_size >= k`.
    Absolute(usize),
}

impl Default for ThresholdPolicy {
    fn default() -> Self {
        ThresholdPolicy::Power(2.0 / 3.0)
    }
}

/// `ceil(x)`, except that values within rounding of an integer snap to it,
/// so exact powers such as `1000^(2/3)` give 100 and not 101.
fn ceil_snapped(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r as usize
    } else {
        x.ceil() as usize
    }
}

impl ThresholdPolicy {
    pub fn threshold(&self, n_unvacc: usize) -> usize {
        let n = n_unvacc as f64;
        match *self {
            ThresholdPolicy::Power(e) => ceil_snapped(n.powf(e)),
            ThresholdPolicy::Fraction(f) => ceil_snapped(f * n),
            ThresholdPolicy::Absolute(k) => k,
        }
    }
}

impl fmt::Display for ThresholdPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ThresholdPolicy::Power(e) => write!(f, "pow:{e}"),
            ThresholdPolicy::Fraction(x) => write!(f, "frac:{x}"),
            ThresholdPolicy::Absolute(k) => write!(f, "abs:{k}"),
        }
    }
}

impl FromStr for ThresholdPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, value) = s
            .split_once(':')
            .ok_or_else(|| Error::parse("threshold policy", s, "expected pow:<e>, frac:<f> or abs:<k>"))?;
        let bad = |e: &dyn fmt::Display| Error::parse("threshold policy", s, e.to_string());
        match kind {
            "pow" => {
                let e: f64 = value.parse().map_err(|e| bad(&e))?;
                if !(e > 0.0 && e <= 1.0) {
                    return Err(bad(&"exponent must lie in (0, 1]"));
                }
                Ok(ThresholdPolicy::Power(e))
            }
            "frac" => {
                let x: f64 = value.parse().map_err(|e| bad(&e))?;
                if !(x > 0.0 && x <= 1.0) {
                    return Err(bad(&"fraction must lie in (0, 1]"));
                }
                Ok(ThresholdPolicy::Fraction(x))
            }
            "abs" => Ok(ThresholdPolicy::Absolute(value.parse().map_err(|e| bad(&e))?)),
            _ => Err(bad(&"expected pow, frac or abs")),
        }
    }
}

pub fn classify_outbreak(final_size: usize, n_unvacc: usize, policy: ThresholdPolicy) -> bool {
    final_size >= policy.threshold(n_unvacc)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutbreakResult {
    /// `Z_n`, including the initial case.
    pub final_size: usize,
    pub initial_vertex: usize,
    /// `n - V`.
    pub unvaccinated_count: usize,
    /// `V`.
    pub vaccinated_count: usize,
    /// `Z_n / (n - V)`.
    pub fraction: f64,
    pub major: bool,
}

/// One outbreak from a uniformly chosen unvaccinated initial case.
pub fn run_epidemic<R: Rng + ?Sized>(
    g: &HalfEdgeGraph,
    mask: &VaccinationMask,
    p: f64,
    policy: ThresholdPolicy,
    rng: &mut R,
) -> Result<OutbreakResult> {
    let n_unvacc = mask.unvaccinated_count();
    if n_unvacc == 0 {
        return Err(Error::AllVaccinated);
    }
    // The k-th unvaccinated vertex, found by a scan to avoid allocating.
    let k = rng.random_range(0..n_unvacc);
    let initial = (0..g.n())
        .filter(|&v| !mask.is_vaccinated(v))
        .nth(k)
        .expect("k < n_unvacc");
    run_epidemic_from(g, mask, p, initial, policy, rng)
}

/// One outbreak from a fixed unvaccinated initial case.
pub fn run_epidemic_from<R: Rng + ?Sized>(
    g: &HalfEdgeGraph,
    mask: &VaccinationMask,
    p: f64,
    initial: usize,
    policy: ThresholdPolicy,
    rng: &mut R,
) -> Result<OutbreakResult> {
    check_closed("p", p, 0.0, 1.0, "[0, 1]")?;
    if mask.is_vaccinated(initial) {
        return Err(Error::Domain {
            what: "initial vertex (vaccinated)",
            value: initial as f64,
            domain: "unvaccinated vertices",
        });
    }
    let mut infected = vec![false; g.n()];
    infected[initial] = true;
    let mut queue = VecDeque::from([initial]);
    let mut final_size = 1;
    while let Some(u) = queue.pop_front() {
        for h in g.half_edges(u) {
            if !g.is_live(h) {
                continue;
            }
            let w = g.owner(g.partner(h));
            // An edge is only ever tried once towards a susceptible vertex,
            // so one draw per attempt is the per-edge percolation law.
            if infected[w] || mask.is_vaccinated(w) {
                continue;
            }
            if rng.random::<f64>() < p {
                infected[w] = true;
                final_size += 1;
                queue.push_back(w);
            }
        }
    }
    let n_unvacc = mask.unvaccinated_count();
    Ok(OutbreakResult {
        final_size,
        initial_vertex: initial,
        unvaccinated_count: n_unvacc,
        vaccinated_count: mask.vaccinated_count(),
        fraction: final_size as f64 / n_unvacc as f64,
        major: classify_outbreak(final_size, n_unvacc, policy),
    })
}

/// How each replicate's contact graph is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphModel {
    /// Uniform simple graph by rejection from the configuration model.
    Simple { max_attempts: usize },
    /// The raw configuration multigraph.
    Multigraph,
}

impl GraphModel {
    pub fn simple() -> Self {
        GraphModel::Simple {
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }
}

impl fmt::Display for GraphModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphModel::Simple { max_attempts } if *max_attempts == DEFAULT_MAX_ATTEMPTS => write!(f, "simple"),
            GraphModel::Simple { max_attempts } => write!(f, "simple:{max_attempts}"),
            GraphModel::Multigraph => write!(f, "multi"),
        }
    }
}

impl FromStr for GraphModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            None if s == "simple" => Ok(GraphModel::simple()),
            None if s == "multi" => Ok(GraphModel::Multigraph),
            Some(("simple", k)) => Ok(GraphModel::Simple {
                max_attempts: k.parse().map_err(|e| Error::parse("graph model", s, e))?,
            }),
            _ => Err(Error::parse("graph model", s, "expected simple, simple:<attempts> or multi")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicateConfig {
    pub n: usize,
    pub p: f64,
    pub strategy: Strategy,
    pub replicates: usize,
    pub base_seed: u64,
    pub policy: ThresholdPolicy,
    pub graph: GraphModel,
}

impl ReplicateConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Domain { what: "n", value: 0.0, domain: "[1, inf)" });
        }
        if self.replicates == 0 {
            return Err(Error::Domain { what: "replicates", value: 0.0, domain: "[1, inf)" });
        }
        check_closed("p", self.p, 0.0, 1.0, "[0, 1]")?;
        self.strategy.validate()
    }
}

#[derive(Debug, Clone)]
pub struct ReplicateRecord {
    pub index: usize,
    pub seed: u64,
    /// Failure messages are kept as text so a batch never aborts.
    pub outcome: std::result::Result<OutbreakResult, String>,
}

#[derive(Debug, Clone)]
pub struct ReplicateSummary {
    pub n: usize,
    pub policy: ThresholdPolicy,
    pub records: Vec<ReplicateRecord>,
}

impl ReplicateSummary {
    pub fn replicate_count(&self) -> usize {
        self.records.len()
    }

    pub fn outcomes(&self) -> impl Iterator<Item = &OutbreakResult> {
        self.records.iter().filter_map(|r| r.outcome.as_ref().ok())
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReplicateRecord> {
        self.records.iter().filter(|r| r.outcome.is_err())
    }

    pub fn final_sizes(&self) -> Vec<usize> {
        self.outcomes().map(|o| o.final_size).collect()
    }

    pub fn seeds(&self) -> Vec<u64> {
        self.records.iter().map(|r| r.seed).collect()
    }

    /// Share of successful replicates that were major; `None` if none
    /// succeeded.
    pub fn major_probability(&self) -> Option<f64> {
        let total = self.outcomes().count();
        (total > 0).then(|| self.outcomes().filter(|o| o.major).count() as f64 / total as f64)
    }

    /// Mean attack fraction over major outbreaks; `None` without any.
    pub fn tau_hat(&self) -> Option<f64> {
        let majors: Vec<f64> = self.outcomes().filter(|o| o.major).map(|o| o.fraction).collect();
        (!majors.is_empty()).then(|| majors.iter().sum::<f64>() / majors.len() as f64)
    }

    /// Share of successful replicates with `lo <= final_size < hi`.
    pub fn share_with_final_size_in(&self, lo: f64, hi: f64) -> f64 {
        let total = self.outcomes().count().max(1);
        let inside = self
            .outcomes()
            .filter(|o| (o.final_size as f64) >= lo && (o.final_size as f64) < hi)
            .count();
        inside as f64 / total as f64
    }

    /// CSV with header `replicate,seed,n,n_unvacc,V,final_size,fraction,major`.
    /// Failed replicates carry `NA` and are listed in `# failed` comments.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "replicate,seed,n,n_unvacc,V,final_size,fraction,major")?;
        for r in &self.records {
            match &r.outcome {
                Ok(o) => writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.index, r.seed, self.n, o.unvaccinated_count, o.vaccinated_count, o.final_size, o.fraction, o.major
                )?,
                Err(_) => writeln!(out, "{},{},{},NA,NA,NA,NA,NA", r.index, r.seed, self.n)?,
            }
        }
        for r in self.failures() {
            if let Err(msg) = &r.outcome {
                writeln!(out, "# failed,{},{}", r.index, msg.replace('\n', " "))?;
            }
        }
        Ok(())
    }
}

/// One complete replicate: degrees, graph, mask, outbreak.
pub fn run_single_replicate(dist: &DegreeDistribution, config: &ReplicateConfig, seed: u64) -> Result<OutbreakResult> {
    let mut rng = crate::rng::rng_from_seed(seed);
    let seq = sample_degree_sequence(dist, config.n, &mut rng)?;
    let graph = match config.graph {
        GraphModel::Simple { max_attempts } => configuration_simple(&seq, &mut rng, max_attempts)?,
        GraphModel::Multigraph => configuration_multigraph(&seq, &mut rng),
    };
    let mask = config.strategy.mask(&graph, &mut rng)?;
    run_epidemic(&graph, &mask, config.p, config.policy, &mut rng)
}

/// Independent replicates with per-replicate seeds derived from the base
/// seed; output order is replicate order whatever the thread schedule.
pub fn run_replicates(dist: &DegreeDistribution, config: &ReplicateConfig) -> Result<ReplicateSummary> {
    config.validate()?;
    let records = (0..config.replicates)
        .into_par_iter()
        .map(|index| {
            let seed = replicate_seed(config.base_seed, index as u64);
            ReplicateRecord {
                index,
                seed,
                outcome: run_single_replicate(dist, config, seed).map_err(|e| e.to_string()),
            }
        })
        .collect();
    Ok(ReplicateSummary {
        n: config.n,
        policy: config.policy,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphgen::{components, percolate};
    use crate::rng::rng_from_seed;
    use crate::vaccine::surviving_subgraph;

    fn ring(n: u32) -> HalfEdgeGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        HalfEdgeGraph::from_edges(n as usize, &edges).unwrap()
    }

    #[test]
    fn threshold_boundaries() {
        let pol = ThresholdPolicy::default();
        assert_eq!(pol.threshold(100_000), 2155);
        assert!(!classify_outbreak(2154, 100_000, pol));
        assert!(classify_outbreak(2155, 100_000, pol));
        assert_eq!(pol.threshold(1000), 100);
        assert_eq!(pol.threshold(8), 4);
        for n in 2..200 {
            assert!(!classify_outbreak(1, n, pol), "{n}");
            assert!(classify_outbreak(n, n, pol), "{n}");
        }
    }

    #[test]
    fn threshold_strings_round_trip() {
        for s in ["pow:0.6666666666666666", "frac:0.05", "abs:100"] {
            assert_eq!(s.parse::<ThresholdPolicy>().unwrap().to_string(), s);
        }
        assert_eq!(ThresholdPolicy::default().to_string().parse::<ThresholdPolicy>().unwrap(), ThresholdPolicy::default());
        assert!("pow:2".parse::<ThresholdPolicy>().is_err());
        assert!("median".parse::<ThresholdPolicy>().is_err());
    }

    #[test]
    fn no_transmission_means_one_case() {
        let g = ring(20);
        let mut rng = rng_from_seed(1);
        for _ in 0..50 {
            let r = run_epidemic(&g, &VaccinationMask::empty(20), 0.0, ThresholdPolicy::default(), &mut rng).unwrap();
            assert_eq!(r.final_size, 1);
        }
    }

    #[test]
    fn full_transmission_fills_the_component() {
        let g = HalfEdgeGraph::from_edges(7, &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 3)]).unwrap();
        let report = components(&g, None);
        let mut rng = rng_from_seed(2);
        for v in 0..7 {
            let r = run_epidemic_from(&g, &VaccinationMask::empty(7), 1.0, v, ThresholdPolicy::default(), &mut rng).unwrap();
            assert_eq!(Some(r.final_size), report.size_of_component_containing(v));
        }
    }

    #[test]
    fn all_vaccinated_is_an_error() {
        let g = ring(3);
        let mask = VaccinationMask::from_flags(vec![true; 3], Strategy::None);
        let mut rng = rng_from_seed(3);
        assert!(matches!(
            run_epidemic(&g, &mask, 0.5, ThresholdPolicy::default(), &mut rng),
            Err(Error::AllVaccinated)
        ));
    }

    #[test]
    fn engine_equals_component_of_percolated_surviving_graph() {
        // Coupling: percolate first, then spread with p = 1 on the result.
        let mut rng = rng_from_seed(4);
        for _ in 0..200 {
            let degrees: Vec<u32> = (0..30).map(|_| rng.random_range(0..5)).collect();
            let mut degrees = degrees;
            if degrees.iter().sum::<u32>() % 2 == 1 {
                degrees[0] += 1;
            }
            let seq = crate::degrees::DegreeSequence::new(degrees).unwrap();
            let g = configuration_multigraph(&seq, &mut rng);
            let mask = crate::vaccine::uniform_mask(&g, 0.3, &mut rng).unwrap();
            if mask.unvaccinated_count() == 0 {
                continue;
            }
            let gp = percolate(&g, 0.5, &mut rng).unwrap();
            let surviving = surviving_subgraph(&gp, &mask);
            let report = components(&surviving.graph, Some(&surviving.alive));
            for v in (0..g.n()).filter(|&v| !mask.is_vaccinated(v)) {
                let r = run_epidemic_from(&gp, &mask, 1.0, v, ThresholdPolicy::default(), &mut rng).unwrap();
                assert_eq!(Some(r.final_size), report.size_of_component_containing(v));
            }
        }
    }

    #[test]
    fn single_deterministic_replicate() {
        let dist = DegreeDistribution::point_mass(2).unwrap();
        let config = ReplicateConfig {
            n: 10,
            p: 1.0,
            strategy: Strategy::None,
            replicates: 1,
            base_seed: 5,
            policy: ThresholdPolicy::Absolute(1),
            graph: GraphModel::Multigraph,
        };
        let summary = run_replicates(&dist, &config).unwrap();
        let single = run_single_replicate(&dist, &config, replicate_seed(5, 0)).unwrap();
        assert_eq!(summary.replicate_count(), 1);
        assert_eq!(summary.outcomes().next().unwrap(), &single);
        assert_eq!(summary.major_probability(), Some(1.0));
    }

    #[test]
    fn replicate_runs_are_bit_identical() {
        let dist = crate::degrees::poisson(3.0, 1e-12).unwrap();
        let config = ReplicateConfig {
            n: 2000,
            p: 0.6,
            strategy: "acq:c=0.3".parse().unwrap(),
            replicates: 16,
            base_seed: 11,
            policy: ThresholdPolicy::default(),
            graph: GraphModel::Multigraph,
        };
        let mut a = Vec::new();
        let mut b = Vec::new();
        run_replicates(&dist, &config).unwrap().write_csv(&mut a).unwrap();
        run_replicates(&dist, &config).unwrap().write_csv(&mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn failures_are_recorded_not_fatal() {
        let dist = DegreeDistribution::point_mass(2).unwrap();
        let config = ReplicateConfig {
            n: 1,
            p: 0.5,
            strategy: Strategy::None,
            replicates: 3,
            base_seed: 1,
            policy: ThresholdPolicy::default(),
            graph: GraphModel::Simple { max_attempts: 5 },
        };
        let summary = run_replicates(&dist, &config).unwrap();
        assert_eq!(summary.failures().count(), 3);
        assert_eq!(summary.major_probability(), None);
        let mut out = Vec::new();
        summary.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("0,") && text.contains("NA") && text.contains("# failed,2,"));
    }

    #[test]
    fn graph_model_strings() {
        assert_eq!("simple".parse::<GraphModel>().unwrap(), GraphModel::simple());
        assert_eq!("multi".parse::<GraphModel>().unwrap(), GraphModel::Multigraph);
        assert_eq!("simple:50".parse::<GraphModel>().unwrap().to_string(), "simple:50");
        assert!("erased".parse::<GraphModel>().is_err());
    }
}
