//! Degree distributions, their size-biased transforms and generating
//! functions, and i.i.d. degree sequences drawn from them.
//!
//! A [`DegreeDistribution`] is stored densely over `0..=max_degree`, so every
//! moment and generating-function value is an exact finite sum. Laws with
//! infinite support are truncated at a small tail mass and renormalized.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::error::{check_closed, Error, Result};

/// Tail mass below which infinite-support laws are cut off.
pub const DEFAULT_MASS_TOL: f64 = 1e-12;

const NORMALIZATION_TOL: f64 = 1e-12;

/// Where a distribution came from. Carried along for reporting only.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Poisson { lambda: f64 },
    PowerLaw(PowerLawParams),
    Explicit,
    Empirical { n: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    pmf: Vec<f64>,
    provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    pub second_moment: f64,
}

impl DegreeDistribution {
    /// Builds a distribution from non-negative weights indexed by degree.
    ///
    /// Weights are renormalized to sum to one. Trailing zeros are trimmed.
    pub fn from_weights(weights: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidDistribution(
                "weights must be finite and non-negative".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidDistribution("total mass is zero".into()));
        }
        let mut pmf: Vec<f64> = weights.into_iter().map(|w| w / total).collect();
        while pmf.len() > 1 && pmf[pmf.len() - 1] == 0.0 {
            pmf.pop();
        }
        let dist = DegreeDistribution { pmf, provenance };
        if dist.mean() <= 0.0 {
            return Err(Error::ZeroMean);
        }
        Ok(dist)
    }

    /// Builds from explicit `(degree, probability)` pairs. Repeated degrees
    /// accumulate.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, f64)>,
    {
        let mut weights = Vec::new();
        for (d, w) in pairs {
            let d = d as usize;
            if weights.len() <= d {
                weights.resize(d + 1, 0.0);
            }
            weights[d] += w;
        }
        Self::from_weights(weights, Provenance::Explicit)
    }

    pub fn point_mass(degree: u32) -> Result<Self> {
        Self::from_pairs([(degree, 1.0)])
    }

    /// Empirical law of an observed degree sequence: `n_j / n`.
    pub fn empirical(seq: &DegreeSequence) -> Result<Self> {
        let weights = seq.counts().into_iter().map(|c| c as f64).collect();
        Self::from_weights(weights, Provenance::Empirical { n: seq.len() })
    }

    /// Reads a CSV file with header `degree,probability`.
    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
        let headers = reader.headers()?.clone();
        if headers.len() != 2 || &headers[0] != "degree" || &headers[1] != "probability" {
            return Err(Error::parse(
                "explicit distribution",
                &path.display().to_string(),
                "expected header `degree,probability`",
            ));
        }
        let mut pairs = Vec::new();
        for record in reader.records() {
            let record = record?;
            let degree: u32 = record[0]
                .parse()
                .map_err(|e| Error::parse("degree", &record[0], e))?;
            let prob: f64 = record[1]
                .parse()
                .map_err(|e| Error::parse("probability", &record[1], e))?;
            pairs.push((degree, prob));
        }
        Self::from_pairs(pairs)
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Probabilities indexed by degree, `0..=max_degree`.
    pub fn probabilities(&self) -> &[f64] {
        &self.pmf
    }

    pub fn prob(&self, degree: usize) -> f64 {
        self.pmf.get(degree).copied().unwrap_or(0.0)
    }

    pub fn max_degree(&self) -> usize {
        self.pmf.len() - 1
    }

    /// `(degree, probability)` over degrees with positive mass.
    pub fn support(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.pmf.iter().copied().enumerate().filter(|&(_, p)| p > 0.0)
    }

    pub fn mean(&self) -> f64 {
        self.support().map(|(d, p)| d as f64 * p).sum()
    }

    pub fn moments(&self) -> Moments {
        let mean = self.mean();
        let second_moment: f64 = self.support().map(|(d, p)| (d * d) as f64 * p).sum();
        Moments {
            mean,
            variance: second_moment - mean * mean,
            second_moment,
        }
    }

    /// All mass on degree 2: the pgf fixed-point map degenerates to the
    /// identity and extinction probabilities lose their meaning.
    pub fn is_degenerate(&self) -> bool {
        self.prob(2) >= 1.0 - NORMALIZATION_TOL
    }

    /// Degree law of a vertex reached along a uniformly random half-edge,
    /// `j p_j / mu`.
    pub fn size_biased(&self) -> Result<DegreeDistribution> {
        let mean = self.mean();
        if mean <= 0.0 {
            return Err(Error::ZeroMean);
        }
        let weights = self
            .pmf
            .iter()
            .enumerate()
            .map(|(d, p)| d as f64 * p / mean)
            .collect();
        DegreeDistribution::from_weights(weights, self.provenance.clone())
    }

    pub fn pgf(&self, t: f64) -> Result<f64> {
        check_closed("t", t, 0.0, 1.0, "[0, 1]")?;
        Ok(self.pgf_at(t))
    }

    pub fn pgf_prime(&self, t: f64) -> Result<f64> {
        check_closed("t", t, 0.0, 1.0, "[0, 1]")?;
        Ok(self.pgf_prime_at(t))
    }

    pub(crate) fn pgf_at(&self, t: f64) -> f64 {
        self.pmf.iter().rev().fold(0.0, |acc, &p| acc * t + p)
    }

    pub(crate) fn pgf_prime_at(&self, t: f64) -> f64 {
        self.pmf
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (d, &p)| acc * t + d as f64 * p)
    }

    pub(crate) fn pgf_second_at(&self, t: f64) -> f64 {
        self.pmf
            .iter()
            .enumerate()
            .skip(2)
            .rev()
            .fold(0.0, |acc, (d, &p)| acc * t + (d * (d - 1)) as f64 * p)
    }
}

/// Poisson(`lambda`) cut at the smallest degree whose upper tail mass is
/// below `mass_tol`, then renormalized.
pub fn poisson(lambda: f64, mass_tol: f64) -> Result<DegreeDistribution> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain {
            what: "lambda",
            value: lambda,
            domain: "(0, inf)",
        });
    }
    if !(mass_tol > 0.0 && mass_tol < 1.0) {
        return Err(Error::Domain {
            what: "mass_tol",
            value: mass_tol,
            domain: "(0, 1)",
        });
    }
    let ln_lambda = lambda.ln();
    let mut ln_p = -lambda;
    let mut cumulative = 0.0;
    let mut weights = Vec::new();
    for k in 0usize.. {
        if k > 0 {
            ln_p += ln_lambda - (k as f64).ln();
        }
        let p = ln_p.exp();
        weights.push(p);
        cumulative += p;
        if k as f64 > lambda && 1.0 - cumulative < mass_tol {
            break;
        }
        // 1 - cumulative can stall at rounding level for huge lambda.
        if k as f64 > lambda && p < mass_tol * f64::EPSILON {
            break;
        }
    }
    DegreeDistribution::from_weights(weights, Provenance::Poisson { lambda })
}

/// How a low degree departs from the pure power law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Override {
    /// Replace the weight by this absolute (unnormalized) value; `0` removes
    /// the degree.
    Fixed(f64),
    /// Multiply the power-law weight by this factor and by the common scale
    /// chosen by the target-mean solver.
    Scaled(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawParams {
    pub exponent: f64,
    pub d_max: u32,
    pub overrides: BTreeMap<u32, Override>,
    pub target_mean: Option<f64>,
}

impl PowerLawParams {
    pub fn new(exponent: f64, d_max: u32) -> Self {
        PowerLawParams {
            exponent,
            d_max,
            overrides: BTreeMap::new(),
            target_mean: None,
        }
    }

    /// Low-degree reshaping used for the mean-6 heavy-tailed example:
    /// degrees 1-3 removed, degrees 4 and 5 kept in the scaled group with
    /// relative factors 1 and 2. With exponent 3.5 and `d_max = 200` this
    /// yields variance about 18.96 at mean 6.
    pub fn with_default_low_degree_overrides(mut self) -> Self {
        self.overrides = default_low_degree_overrides();
        self
    }
}

pub fn default_low_degree_overrides() -> BTreeMap<u32, Override> {
    BTreeMap::from([
        (1, Override::Fixed(0.0)),
        (2, Override::Fixed(0.0)),
        (3, Override::Fixed(0.0)),
        (4, Override::Scaled(1.0)),
        (5, Override::Scaled(2.0)),
    ])
}

/// `p_d ∝ d^-exponent` on `1..=d_max`, with optional low-degree overrides.
///
/// With a target mean, the common scale `s >= 0` on the scaled overrides is
/// found by bisection. The mean is a linear-fractional function of `s`, hence
/// monotone, and ranges between its values at `s = 0` and `s -> inf`.
pub fn power_law(params: &PowerLawParams) -> Result<DegreeDistribution> {
    if params.exponent.is_nan() || params.exponent <= 2.0 {
        return Err(Error::Domain {
            what: "exponent",
            value: params.exponent,
            domain: "(2, inf)",
        });
    }
    if params.d_max < 2 {
        return Err(Error::Domain {
            what: "d_max",
            value: params.d_max as f64,
            domain: "[2, inf)",
        });
    }
    if let Some(&d) = params.overrides.keys().find(|&&d| d > params.d_max) {
        return Err(Error::InvalidDistribution(format!(
            "override at degree {d} exceeds d_max {}",
            params.d_max
        )));
    }

    let d_max = params.d_max as usize;
    // Split into a fixed part and a part multiplied by the scale.
    let mut fixed = vec![0.0; d_max + 1];
    let mut scaled = vec![0.0; d_max + 1];
    for d in 1..=d_max {
        let base = (d as f64).powf(-params.exponent);
        match params.overrides.get(&(d as u32)) {
            None => fixed[d] = base,
            Some(Override::Fixed(w)) => fixed[d] = *w,
            Some(Override::Scaled(f)) => scaled[d] = base * f,
        }
    }
    if let Some(Override::Fixed(w)) = params.overrides.get(&0) {
        fixed[0] = *w;
    }
    if let Some(Override::Scaled(f)) = params.overrides.get(&0) {
        scaled[0] = *f;
    }

    let combine = |s: f64| -> Vec<f64> { fixed.iter().zip(&scaled).map(|(a, b)| a + s * b).collect() };
    let mean_at = |s: f64| -> f64 {
        let w = combine(s);
        let total: f64 = w.iter().sum();
        w.iter().enumerate().map(|(d, x)| d as f64 * x).sum::<f64>() / total
    };

    let scale = match params.target_mean {
        None => 1.0,
        Some(target) => solve_scale(target, &fixed, &scaled, mean_at)?,
    };
    DegreeDistribution::from_weights(combine(scale), Provenance::PowerLaw(params.clone()))
}

fn solve_scale(target: f64, fixed: &[f64], scaled: &[f64], mean_at: impl Fn(f64) -> f64) -> Result<f64> {
    let mass = |w: &[f64]| w.iter().sum::<f64>();
    let first = |w: &[f64]| w.iter().enumerate().map(|(d, x)| d as f64 * x).sum::<f64>();
    let (fixed_mass, scaled_mass) = (mass(fixed), mass(scaled));
    let at_zero = if fixed_mass > 0.0 { first(fixed) / fixed_mass } else { f64::NAN };
    let at_inf = if scaled_mass > 0.0 { first(scaled) / scaled_mass } else { f64::NAN };

    const TOL: f64 = 1e-12;
    if fixed_mass > 0.0 && (at_zero - target).abs() <= TOL {
        return Ok(0.0);
    }
    if scaled_mass <= 0.0 || fixed_mass <= 0.0 {
        let only = if scaled_mass > 0.0 { at_inf } else { at_zero };
        if (only - target).abs() <= TOL {
            return Ok(1.0);
        }
        return Err(Error::TargetMeanUnreachable { target, min: only, max: only });
    }
    let (min, max) = (at_zero.min(at_inf), at_zero.max(at_inf));
    if !(target > min && target < max) {
        return Err(Error::TargetMeanUnreachable { target, min, max });
    }

    let increasing = at_inf > at_zero;
    let below = |s: f64| (mean_at(s) < target) == increasing;
    let mut lo = 0.0;
    let mut hi = 1.0;
    while below(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::TargetMeanUnreachable { target, min, max });
        }
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (mean_at(mid) - target).abs() < TOL {
            return Ok(mid);
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Degrees `d_1..d_n` with an even sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    degrees: Vec<u32>,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidDistribution("degree sequence needs n >= 1".into()));
        }
        let total: u64 = degrees.iter().map(|&d| d as u64).sum();
        if total % 2 == 1 {
            return Err(Error::OddDegreeSum(total));
        }
        Ok(DegreeSequence { degrees })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `2m`.
    pub fn total_degree(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).sum()
    }

    /// `n_j`, indexed by degree.
    pub fn counts(&self) -> Vec<usize> {
        let max = self.degrees.iter().copied().max().unwrap_or(0) as usize;
        let mut counts = vec![0; max + 1];
        for &d in &self.degrees {
            counts[d as usize] += 1;
        }
        counts
    }
}

/// Draws `n` i.i.d. degrees. An odd total is repaired by bumping one
/// uniformly chosen vertex by one.
pub fn sample_degree_sequence<R: Rng + ?Sized>(
    dist: &DegreeDistribution,
    n: usize,
    rng: &mut R,
) -> Result<DegreeSequence> {
    if n == 0 {
        return Err(Error::InvalidDistribution("degree sequence needs n >= 1".into()));
    }
    let index = WeightedIndex::new(dist.probabilities())
        .map_err(|e| Error::InvalidDistribution(e.to_string()))?;
    let mut degrees: Vec<u32> = (0..n).map(|_| index.sample(rng) as u32).collect();
    let total: u64 = degrees.iter().map(|&d| d as u64).sum();
    if total % 2 == 1 {
        let i = rng.random_range(0..n);
        degrees[i] += 1;
    }
    DegreeSequence::new(degrees)
}

/// Textual distribution spec used by the CLI and configs:
/// `poisson:lambda=6`, `powerlaw:exp=3.5,dmax=200,mean=6`,
/// `point:d=3`, `explicit:path=<file>`.
///
/// `powerlaw` also accepts `drop=1/2/3` (degrees removed) and
/// `scale=4:1/5:2` (scaled overrides with relative factors). With `mean`
/// and neither key, [`default_low_degree_overrides`] applies.
#[derive(Debug, Clone, PartialEq)]
pub enum DistSpec {
    Poisson { lambda: f64, mass_tol: f64 },
    PowerLaw(PowerLawParams),
    Point { degree: u32 },
    Explicit { path: PathBuf },
}

impl DistSpec {
    pub fn build(&self) -> Result<DegreeDistribution> {
        match self {
            DistSpec::Poisson { lambda, mass_tol } => poisson(*lambda, *mass_tol),
            DistSpec::PowerLaw(params) => power_law(params),
            DistSpec::Point { degree } => DegreeDistribution::point_mass(*degree),
            DistSpec::Explicit { path } => DegreeDistribution::from_csv_path(path),
        }
    }
}

fn parse_kv(input: &str, body: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    if body.trim().is_empty() {
        return Ok(map);
    }
    for part in body.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::parse("distribution spec", input, format!("expected key=value, got {part:?}")))?;
        if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(Error::parse("distribution spec", input, format!("duplicate key {k:?}")));
        }
    }
    Ok(map)
}

fn take_num<T: FromStr>(map: &mut BTreeMap<String, String>, key: &str, input: &str) -> Result<Option<T>>
where
    T::Err: fmt::Display,
{
    map.remove(key)
        .map(|v| v.parse::<T>().map_err(|e| Error::parse("distribution spec", input, format!("{key}: {e}"))))
        .transpose()
}

impl FromStr for DistSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, body) = s.split_once(':').unwrap_or((s, ""));
        let mut kv = parse_kv(s, body)?;
        let missing = |key: &str| Error::parse("distribution spec", s, format!("missing {key}"));
        let spec = match kind.trim() {
            "poisson" => DistSpec::Poisson {
                lambda: take_num(&mut kv, "lambda", s)?.ok_or_else(|| missing("lambda"))?,
                mass_tol: take_num(&mut kv, "tol", s)?.unwrap_or(DEFAULT_MASS_TOL),
            },
            "powerlaw" => {
                let exponent = take_num(&mut kv, "exp", s)?.ok_or_else(|| missing("exp"))?;
                let d_max = take_num(&mut kv, "dmax", s)?.ok_or_else(|| missing("dmax"))?;
                let mut params = PowerLawParams::new(exponent, d_max);
                params.target_mean = take_num(&mut kv, "mean", s)?;
                let drop = kv.remove("drop");
                let scale = kv.remove("scale");
                if drop.is_none() && scale.is_none() && params.target_mean.is_some() {
                    params = params.with_default_low_degree_overrides();
                }
                for d in drop.iter().flat_map(|v| v.split('/')) {
                    let d: u32 = d.parse().map_err(|e| Error::parse("distribution spec", s, format!("drop: {e}")))?;
                    params.overrides.insert(d, Override::Fixed(0.0));
                }
                for item in scale.iter().flat_map(|v| v.split('/')) {
                    let (d, f) = item
                        .split_once(':')
                        .ok_or_else(|| Error::parse("distribution spec", s, "scale entries are degree:factor"))?;
                    let d: u32 = d.parse().map_err(|e| Error::parse("distribution spec", s, format!("scale: {e}")))?;
                    let f: f64 = f.parse().map_err(|e| Error::parse("distribution spec", s, format!("scale: {e}")))?;
                    params.overrides.insert(d, Override::Scaled(f));
                }
                DistSpec::PowerLaw(params)
            }
            "point" => DistSpec::Point {
                degree: take_num(&mut kv, "d", s)?.ok_or_else(|| missing("d"))?,
            },
            "explicit" => DistSpec::Explicit {
                path: kv.remove("path").map(PathBuf::from).ok_or_else(|| missing("path"))?,
            },
            other => {
                return Err(Error::parse(
                    "distribution spec",
                    s,
                    format!("unknown kind {other:?} (expected poisson, powerlaw, point, explicit)"),
                ))
            }
        };
        if let Some(key) = kv.keys().next() {
            return Err(Error::parse("distribution spec", s, format!("unknown key {key:?}")));
        }
        Ok(spec)
    }
}
