use std::path::PathBuf;

use num_bigint::BigUint;
use regnum::regularity::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub random_budget: u64,
    pub exhaustive_ceiling: u64,
    pub index_ceiling: u64,
    pub workers: usize,
    pub ledger: Option<PathBuf>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        let c = Config::default();
        RunConfig {
            seed: c.seed,
            random_budget: c.random_budget,
            exhaustive_ceiling: u64::try_from(&c.exhaustive_ceiling).unwrap_or(u64::MAX),
            index_ceiling: c.index_ceiling,
            workers: 1,
            ledger: None,
            format: Format::Text,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.random_budget == 0 || self.exhaustive_ceiling == 0 || self.index_ceiling == 0 {
            return Err("budgets must be positive".into());
        }
        if self.workers == 0 {
            return Err("--workers must be positive".into());
        }
        Ok(())
    }

    pub fn engine(&self) -> Config {
        Config {
            seed: self.seed,
            random_budget: self.random_budget,
            exhaustive_ceiling: BigUint::from(self.exhaustive_ceiling),
            index_ceiling: self.index_ceiling,
        }
    }
}
