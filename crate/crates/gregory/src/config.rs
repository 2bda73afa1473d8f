use std::path::PathBuf;

use gregory_core::identity::{self, RunOptions};

use crate::error::{Error, Result};

pub const MIN_PRECISION: u32 = 20;
pub const MIN_TERMS: usize = 100;
/// Working precision above which the cost of the quadrature grows past
/// anything useful on a desktop.
pub const MAX_PRECISION: u32 = 1000;
pub const MAX_TERMS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    /// One JSON object per line.
    #[default]
    Jsonl,
    /// A single JSON array.
    Json,
    Csv,
    /// Aligned plain-text columns.
    Table,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Precision `P` in decimal digits.
    pub precision: u32,
    /// Term cap `N` of the slow series.
    pub terms: usize,
    /// Identity id prefix; empty selects everything.
    pub filter: String,
    pub format: Format,
    pub cache: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let o = RunOptions::default();
        RunConfig {
            precision: o.digits,
            terms: o.terms,
            filter: String::new(),
            format: Format::default(),
            cache: None,
            seed: o.seed,
        }
    }
}

impl RunConfig {
    /// Checks the ranges and that the filter selects at least one case.
    /// Nothing is computed here.
    pub fn validate(&self) -> Result<()> {
        if self.precision < MIN_PRECISION {
            return Err(Error::Config(format!("precision {} is below {MIN_PRECISION} digits", self.precision)));
        }
        if self.precision > MAX_PRECISION {
            return Err(Error::Config(format!("precision {} is above {MAX_PRECISION} digits", self.precision)));
        }
        if self.terms < MIN_TERMS {
            return Err(Error::Config(format!("terms {} is below {MIN_TERMS}", self.terms)));
        }
        if self.terms > MAX_TERMS {
            return Err(Error::Config(format!("terms {} is above {MAX_TERMS}", self.terms)));
        }
        identity::select(&self.filter).map_err(|_| Error::Config(format!("filter `{}` matches no identity", self.filter)))?;
        Ok(())
    }

    pub fn options(&self) -> RunOptions {
        RunOptions { digits: self.precision, terms: self.terms, seed: self.seed }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits() {
        let ok = RunConfig::default();
        assert!(ok.validate().is_ok());
        assert!(RunConfig { precision: 19, ..ok.clone() }.validate().is_err());
        assert!(RunConfig { terms: 99, ..ok.clone() }.validate().is_err());
        assert!(RunConfig { filter: "OLOA".into(), ..ok.clone() }.validate().is_ok());
        let e = RunConfig { filter: "nonexistent".into(), ..ok }.validate().unwrap_err();
        assert!(e.to_string().contains("nonexistent"));
    }
}
