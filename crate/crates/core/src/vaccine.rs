//! Pre-outbreak vaccination strategies.
//!
//! All four strategies act on the unpercolated graph. Acquaintance
//! vaccination follows half-edges: a sampled vertex names the far end of a
//! uniformly chosen incident half-edge, so on multigraphs parallel edges are
//! proportionally likelier and a loop names the vertex itself.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::graphgen::HalfEdgeGraph;

/// A strategy together with its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    None,
    /// Each vertex independently with probability `v`.
    Uniform { v: f64 },
    /// Each vertex names `Po(c)` random friends, who are vaccinated.
    Acquaintance { c: f64 },
    /// Each edge end sampled with probability `1 - alpha`; that end's vertex
    /// is vaccinated.
    E1 { alpha: f64 },
    /// Each edge sampled with probability `1 - alpha`; both ends vaccinated.
    E2 { alpha: f64 },
}

/// Strategy family without its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrategyKind {
    Acquaintance,
    E1,
    E2,
    Uniform,
}

impl StrategyKind {
    /// Order used for "all": acquaintance, E1, E2, uniform.
    pub const ALL: [StrategyKind; 4] = [
        StrategyKind::Acquaintance,
        StrategyKind::E1,
        StrategyKind::E2,
        StrategyKind::Uniform,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::Uniform => "uniform",
            StrategyKind::Acquaintance => "acq",
            StrategyKind::E1 => "e1",
            StrategyKind::E2 => "e2",
        }
    }

    /// Parses `all` or a comma-separated list of kind names.
    pub fn parse_list(s: &str) -> Result<Vec<StrategyKind>> {
        if s.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(StrategyKind::Uniform),
            "acq" | "acquaintance" => Ok(StrategyKind::Acquaintance),
            "e1" => Ok(StrategyKind::E1),
            "e2" => Ok(StrategyKind::E2),
            other => Err(Error::parse("strategy kind", other, "expected uniform, acq, e1 or e2")),
        }
    }
}

impl Strategy {
    pub fn kind(&self) -> Option<StrategyKind> {
        match self {
            Strategy::None => None,
            Strategy::Uniform { .. } => Some(StrategyKind::Uniform),
            Strategy::Acquaintance { .. } => Some(StrategyKind::Acquaintance),
            Strategy::E1 { .. } => Some(StrategyKind::E1),
            Strategy::E2 { .. } => Some(StrategyKind::E2),
        }
    }

    /// The strategy parameter (`v`, `c` or `alpha`), or `None` for no
    /// vaccination.
    pub fn param(&self) -> Option<f64> {
        match *self {
            Strategy::None => None,
            Strategy::Uniform { v } => Some(v),
            Strategy::Acquaintance { c } => Some(c),
            Strategy::E1 { alpha } | Strategy::E2 { alpha } => Some(alpha),
        }
    }

    pub fn with_param(kind: StrategyKind, param: f64) -> Strategy {
        match kind {
            StrategyKind::Uniform => Strategy::Uniform { v: param },
            StrategyKind::Acquaintance => Strategy::Acquaintance { c: param },
            StrategyKind::E1 => Strategy::E1 { alpha: param },
            StrategyKind::E2 => Strategy::E2 { alpha: param },
        }
    }

    /// Strategy at its "do nothing" parameter.
    pub fn identity(kind: StrategyKind) -> Strategy {
        match kind {
            StrategyKind::Uniform => Strategy::Uniform { v: 0.0 },
            StrategyKind::Acquaintance => Strategy::Acquaintance { c: 0.0 },
            StrategyKind::E1 => Strategy::E1 { alpha: 1.0 },
            StrategyKind::E2 => Strategy::E2 { alpha: 1.0 },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what, value, domain| Err(Error::Domain { what, value, domain });
        match *self {
            Strategy::None => Ok(()),
            Strategy::Uniform { v } if !(0.0..1.0).contains(&v) => bad("v", v, "[0, 1)"),
            Strategy::Acquaintance { c } if !(c >= 0.0 && c.is_finite()) => bad("c", c, "[0, inf)"),
            Strategy::E1 { alpha } | Strategy::E2 { alpha } if !(alpha > 0.0 && alpha <= 1.0) => {
                bad("alpha", alpha, "(0, 1]")
            }
            _ => Ok(()),
        }
    }

    pub fn mask<R: Rng + ?Sized>(&self, g: &HalfEdgeGraph, rng: &mut R) -> Result<VaccinationMask> {
        match *self {
            Strategy::None => Ok(VaccinationMask::empty(g.n())),
            Strategy::Uniform { v } => uniform_mask(g, v, rng),
            Strategy::Acquaintance { c } => acquaintance_mask(g, c, rng),
            Strategy::E1 { alpha } => e1_mask(g, alpha, rng),
            Strategy::E2 { alpha } => e2_mask(g, alpha, rng),
        }
    }
}

/// `none`, `uniform:v=0.3`, `acq:c=0.8`, `e1:alpha=0.7`, `e2:alpha=0.7`.
impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Strategy::None => write!(f, "none"),
            Strategy::Uniform { v } => write!(f, "uniform:v={v}"),
            Strategy::Acquaintance { c } => write!(f, "acq:c={c}"),
            Strategy::E1 { alpha } => write!(f, "e1:alpha={alpha}"),
            Strategy::E2 { alpha } => write!(f, "e2:alpha={alpha}"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "none" {
            return Ok(Strategy::None);
        }
        let (kind, body) = s
            .split_once(':')
            .ok_or_else(|| Error::parse("strategy", s, "expected kind:key=value"))?;
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| Error::parse("strategy", s, "expected kind:key=value"))?;
        let value: f64 = value.trim().parse().map_err(|e| Error::parse("strategy", s, e))?;
        let kind: StrategyKind = kind.trim().parse()?;
        let expected = match kind {
            StrategyKind::Uniform => "v",
            StrategyKind::Acquaintance => "c",
            StrategyKind::E1 | StrategyKind::E2 => "alpha",
        };
        if key.trim() != expected {
            return Err(Error::parse("strategy", s, format!("{kind} takes `{expected}`")));
        }
        let strategy = Strategy::with_param(kind, value);
        strategy.validate()?;
        Ok(strategy)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VaccinationMask {
    vaccinated: Vec<bool>,
    count: usize,
    strategy: Strategy,
}

impl VaccinationMask {
    pub fn empty(n: usize) -> Self {
        VaccinationMask {
            vaccinated: vec![false; n],
            count: 0,
            strategy: Strategy::None,
        }
    }

    pub fn from_flags(vaccinated: Vec<bool>, strategy: Strategy) -> Self {
        let count = vaccinated.iter().filter(|&&x| x).count();
        VaccinationMask {
            vaccinated,
            count,
            strategy,
        }
    }

    pub fn is_vaccinated(&self, v: usize) -> bool {
        self.vaccinated[v]
    }

    pub fn flags(&self) -> &[bool] {
        &self.vaccinated
    }

    /// `V`.
    pub fn vaccinated_count(&self) -> usize {
        self.count
    }

    pub fn unvaccinated_count(&self) -> usize {
        self.vaccinated.len() - self.count
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }
}

pub fn uniform_mask<R: Rng + ?Sized>(g: &HalfEdgeGraph, v: f64, rng: &mut R) -> Result<VaccinationMask> {
    let strategy = Strategy::Uniform { v };
    strategy.validate()?;
    let flags = (0..g.n()).map(|_| rng.random::<f64>() < v).collect();
    Ok(VaccinationMask::from_flags(flags, strategy))
}

pub fn acquaintance_mask<R: Rng + ?Sized>(g: &HalfEdgeGraph, c: f64, rng: &mut R) -> Result<VaccinationMask> {
    let strategy = Strategy::Acquaintance { c };
    strategy.validate()?;
    let mut flags = vec![false; g.n()];
    if c > 0.0 {
        let times = Poisson::new(c).map_err(|e| Error::parse("acquaintance rate", &c.to_string(), e))?;
        for u in 0..g.n() {
            let slots = g.half_edges(u);
            if slots.is_empty() {
                continue;
            }
            let k = times.sample(rng) as u64;
            for _ in 0..k {
                let h = rng.random_range(slots.clone());
                flags[g.owner(g.partner(h))] = true;
            }
        }
    }
    Ok(VaccinationMask::from_flags(flags, strategy))
}

pub fn e1_mask<R: Rng + ?Sized>(g: &HalfEdgeGraph, alpha: f64, rng: &mut R) -> Result<VaccinationMask> {
    let strategy = Strategy::E1 { alpha };
    strategy.validate()?;
    let mut flags = vec![false; g.n()];
    let hit = 1.0 - alpha;
    for h in 0..g.half_edge_count() {
        if rng.random::<f64>() < hit {
            flags[g.owner(h)] = true;
        }
    }
    Ok(VaccinationMask::from_flags(flags, strategy))
}

pub fn e2_mask<R: Rng + ?Sized>(g: &HalfEdgeGraph, alpha: f64, rng: &mut R) -> Result<VaccinationMask> {
    let strategy = Strategy::E2 { alpha };
    strategy.validate()?;
    let mut flags = vec![false; g.n()];
    let hit = 1.0 - alpha;
    for h in 0..g.half_edge_count() {
        let mate = g.partner(h);
        if h < mate && rng.random::<f64>() < hit {
            flags[g.owner(h)] = true;
            flags[g.owner(mate)] = true;
        }
    }
    Ok(VaccinationMask::from_flags(flags, strategy))
}

/// The graph among unvaccinated vertices: edges touching a vaccinated
/// vertex are marked absent, and `alive` flags the unvaccinated.
#[derive(Debug, Clone)]
pub struct SurvivingGraph {
    pub graph: HalfEdgeGraph,
    pub alive: Vec<bool>,
}

pub fn surviving_subgraph(g: &HalfEdgeGraph, mask: &VaccinationMask) -> SurvivingGraph {
    let mut graph = g.clone();
    let alive: Vec<bool> = mask.flags().iter().map(|&x| !x).collect();
    let owners: Vec<usize> = (0..g.half_edge_count()).map(|h| g.owner(h)).collect();
    let partners: Vec<usize> = (0..g.half_edge_count()).map(|h| g.partner(h)).collect();
    let live = graph.live_mut();
    for h in 0..live.len() {
        if !alive[owners[h]] || !alive[owners[partners[h]]] {
            live[h] = false;
        }
    }
    SurvivingGraph { graph, alive }
}
