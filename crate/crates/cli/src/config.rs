use std::path::PathBuf;

use galcoh_core::cohomology::{ResourceGuard, DEFAULT_RESOURCE_BOUND};
use serde::Serialize;

use crate::CliError;

pub const DEFAULT_N_LIST: &[u64] = &[2, 3, 4, 6, 8, 12];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub max_group_order: usize,
    pub n_list: Vec<u64>,
    pub degree_cap: usize,
    pub resource_bound: u64,
    pub output_path: Option<PathBuf>,
    /// Worker threads; `0` lets rayon decide.
    pub jobs: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_group_order: 12,
            n_list: DEFAULT_N_LIST.to_vec(),
            degree_cap: 2,
            resource_bound: DEFAULT_RESOURCE_BOUND,
            output_path: None,
            jobs: 0,
            seed: 0,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_list.is_empty() {
            return Err(CliError::Usage("n list must not be empty".into()));
        }
        if let Some(n) = self.n_list.iter().find(|&&n| n == 0 || n >= galcoh_core::linalg::MAX_MODULUS) {
            return Err(CliError::Usage(format!("modulus {n} out of range")));
        }
        if self.degree_cap > 3 {
            return Err(CliError::Usage("degree cap above 3 is not supported".into()));
        }
        if self.max_group_order == 0 {
            return Err(CliError::Usage("max group order must be positive".into()));
        }
        Ok(())
    }

    pub fn guard(&self) -> ResourceGuard {
        ResourceGuard::new(self.resource_bound)
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }
}

/// Parses `2,3,4` or `2 3 4`.
pub fn parse_n_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Usage(format!("bad modulus '{t}'"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_list_parsing() {
        assert_eq!(parse_n_list("2,3, 4").unwrap(), vec![2, 3, 4]);
        assert!(parse_n_list("2,x").is_err());
    }

    #[test]
    fn validation() {
        assert!(SweepConfig::default().validate().is_ok());
        let c = SweepConfig { n_list: vec![], ..SweepConfig::default() };
        assert!(matches!(c.validate(), Err(CliError::Usage(_))));
        let c = SweepConfig { degree_cap: 4, ..SweepConfig::default() };
        assert!(c.validate().is_err());
    }
}
