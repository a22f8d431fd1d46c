use serde::{Deserialize, Serialize};

use netvax_core::degrees::DistSpec;
use netvax_core::epidemic::{GraphModel, ThresholdPolicy};
use netvax_core::{Error, Result, Strategy, StrategyKind};

const COMMENT_PREFIX: &str = "# config,";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Theory,
    Simulate,
    Sweep,
    Generate,
}

/// Everything needed to reproduce one invocation. Strings are kept in their
/// command-line form so the embedded comment reads like the original flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub dist: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// A single strategy (`simulate`) or a strategy list (`theory`, `sweep`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replicates: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold_policy: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

fn missing(what: &'static str) -> Error {
    Error::Parse {
        what,
        input: String::new(),
        reason: "required for this command".into(),
    }
}

impl RunConfig {
    pub fn to_comment(&self) -> String {
        format!("{COMMENT_PREFIX}{}", serde_json::to_string(self).expect("config serializes"))
    }

    pub fn from_comment(line: &str) -> Result<Self> {
        let json = line
            .trim_end()
            .strip_prefix(COMMENT_PREFIX)
            .ok_or_else(|| Error::Parse {
                what: "config comment",
                input: line.into(),
                reason: format!("expected prefix {COMMENT_PREFIX:?}"),
            })?;
        serde_json::from_str(json).map_err(|e| Error::Parse {
            what: "config comment",
            input: line.into(),
            reason: e.to_string(),
        })
    }

    /// Finds and parses the config comment in an emitted file.
    pub fn from_output(text: &str) -> Result<Self> {
        let line = text
            .lines()
            .find(|l| l.starts_with(COMMENT_PREFIX))
            .ok_or_else(|| missing("config comment"))?;
        Self::from_comment(line)
    }

    pub fn dist_spec(&self) -> Result<DistSpec> {
        self.dist.parse()
    }

    pub fn n(&self) -> Result<usize> {
        self.n.ok_or_else(|| missing("n"))
    }

    pub fn p(&self) -> Result<f64> {
        let p = self.p.ok_or_else(|| missing("p"))?;
        if (0.0..=1.0).contains(&p) {
            Ok(p)
        } else {
            Err(Error::Domain {
                what: "p",
                value: p,
                domain: "[0, 1]",
            })
        }
    }

    pub fn strategy(&self) -> Result<Strategy> {
        let s = self.strategy.as_deref().unwrap_or("none");
        let strategy: Strategy = s.parse()?;
        strategy.validate()?;
        Ok(strategy)
    }

    pub fn strategies(&self) -> Result<Vec<StrategyKind>> {
        StrategyKind::parse_list(self.strategy.as_deref().unwrap_or("all"))
    }

    pub fn replicates(&self) -> usize {
        self.replicates.unwrap_or(0)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn policy(&self) -> Result<ThresholdPolicy> {
        self.threshold_policy.as_deref().map_or(Ok(ThresholdPolicy::default()), str::parse)
    }

    pub fn graph(&self) -> Result<GraphModel> {
        match self.graph.as_deref() {
            Some(s) => s.parse(),
            None if self.command == Command::Generate => Ok(GraphModel::simple()),
            None => Ok(GraphModel::Multigraph),
        }
    }

    pub fn grid(&self) -> Result<Vec<f64>> {
        parse_grid(self.grid.as_deref().unwrap_or("0:0.95:0.01"))
    }
}

/// `lo:hi:step`, inclusive of `hi` up to rounding. Points are rounded to 12
/// decimals so `0.1 * 3` prints as `0.3`.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let bad = |reason: &str| Error::Parse {
        what: "grid",
        input: s.into(),
        reason: reason.into(),
    };
    let parts: Vec<f64> = s
        .split(':')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| bad(&e.to_string()))?;
    let [lo, hi, step] = parts[..] else {
        return Err(bad("expected lo:hi:step"));
    };
    if !(step > 0.0 && lo <= hi && lo.is_finite() && hi.is_finite()) {
        return Err(bad("need lo <= hi and step > 0"));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| ((lo + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0:0.3:0.1").unwrap(), vec![0.0, 0.1, 0.2, 0.3]);
        assert_eq!(parse_grid("0:0.95:0.01").unwrap().len(), 96);
        assert_eq!(parse_grid("0.5:0.5:1").unwrap(), vec![0.5]);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("0:1:0").is_err());
    }

    #[test]
    fn comment_round_trip() {
        let config = RunConfig {
            command: Command::Simulate,
            dist: "poisson:lambda=6".into(),
            n: Some(1000),
            p: Some(0.1 + 0.2),
            strategy: Some("acq:c=0.8".into()),
            replicates: Some(5),
            seed: Some(u64::MAX),
            threshold_policy: Some("frac:0.05".into()),
            graph: None,
            grid: None,
            out: Some("x.csv".into()),
        };
        let line = config.to_comment();
        assert!(line.starts_with("# config,{"));
        assert_eq!(RunConfig::from_comment(&line).unwrap(), config);
        assert!(RunConfig::from_comment("# pmajor,1").is_err());
    }

    #[test]
    fn defaults() {
        let mut config: RunConfig = serde_json::from_str(r#"{"command":"generate","dist":"point:d=2"}"#).unwrap();
        assert_eq!(config.graph().unwrap(), GraphModel::simple());
        config.command = Command::Simulate;
        assert_eq!(config.graph().unwrap(), GraphModel::Multigraph);
        assert_eq!(config.strategy().unwrap(), Strategy::None);
        assert_eq!(config.strategies().unwrap(), StrategyKind::ALL);
        assert!(config.p().is_err());
    }
}
