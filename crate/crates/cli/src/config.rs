//! Run configuration shared by every subcommand.

use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use sun_casimir::casimir::RouteChoice;
use sun_casimir::reps::RepKind;
use sun_casimir::{Caps, Config};

use crate::CliError;

/// Verification depth. Each tier includes everything below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    /// su(3) and su(4).
    Core,
    /// Adds su(5), including the fifth-order single-component indices.
    Extended,
    /// Adds su(6), including the fifth and sixth orders.
    Heavy,
}

impl Tier {
    /// Largest n exercised by the tier.
    pub fn max_n(self) -> usize {
        match self {
            Tier::Core => 4,
            Tier::Extended => 5,
            Tier::Heavy => 6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Md,
    Csv,
    Json,
}

/// Caps raised for heavy runs: more trace work and longer alternations, same
/// tensor-entry ceiling so that no oversized tensor is ever materialized.
pub fn heavy_caps() -> Caps {
    let base = Caps::default();
    Caps {
        factorial_terms: base.factorial_terms * 100.0,
        trace_flops: base.trace_flops * 100.0,
        ..base
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n_range: RangeInclusive<usize>,
    pub m_range: Option<RangeInclusive<usize>>,
    pub reps: Vec<RepKind>,
    pub route: RouteChoice,
    pub core: Config,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    pub tier: Tier,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_range: 3..=6,
            m_range: None,
            reps: Vec::new(),
            route: RouteChoice::Auto,
            core: Config::default(),
            cache_dir: None,
            format: Format::Md,
            tier: Tier::Core,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_range.is_empty() || *self.n_range.start() < 2 {
            return Err(CliError::Config(format!("empty or invalid n range {:?}", self.n_range)));
        }
        if let Some(m) = &self.m_range {
            if m.is_empty() || *m.start() < 2 {
                return Err(CliError::Config(format!("empty or invalid m range {m:?}")));
            }
        }
        let caps = &self.core.caps;
        let positive = [caps.tensor_entries, caps.factorial_terms, caps.trace_flops]
            .iter()
            .all(|c| *c > 0.0 && c.is_finite())
            && caps.rep_dim > 0
            && caps.spinor_dim > 0;
        if !positive {
            return Err(CliError::Config("caps must be positive".into()));
        }
        let tol = &self.core.tolerance;
        if !(tol.abs > 0.0 && tol.rel > 0.0) {
            return Err(CliError::Config("tolerances must be positive".into()));
        }
        Ok(())
    }

    /// The order range for su(n): the configured one clipped to `2..=n`.
    pub fn orders(&self, n: usize) -> RangeInclusive<usize> {
        match &self.m_range {
            Some(m) => *m.start()..=(*m.end()).min(n),
            None => 2..=n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_ranges_and_bad_caps() {
        assert!(RunConfig::default().validate().is_ok());
        #[allow(clippy::reversed_empty_ranges)]
        let bad = RunConfig {
            n_range: 5..=4,
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
        let mut caps = RunConfig::default();
        caps.core.caps.trace_flops = 0.0;
        assert!(caps.validate().is_err());
    }

    #[test]
    fn orders_clip_to_rank() {
        let cfg = RunConfig {
            m_range: Some(3..=9),
            ..RunConfig::default()
        };
        assert_eq!(cfg.orders(5), 3..=5);
        assert_eq!(RunConfig::default().orders(4), 2..=4);
    }
}
