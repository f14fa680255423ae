pub mod bounds;
pub mod fetch;
pub mod fujii;
pub mod odd_even;
pub mod paircorr;
pub mod sieve;
pub mod variance;

use std::path::PathBuf;

use goldbach_core::{LambdaTable, ZeroTable};

use crate::config::RunConfig;
use crate::CmdError;

/// Obtain a Λ table covering at least `needed`, from the configured cache
/// or by sieving. The configured n_max acts as a floor so one table can be
/// shared across commands.
pub fn acquire_lambda(cfg: &RunConfig, needed: usize) -> Result<LambdaTable, CmdError> {
    if let Some(path) = &cfg.lambda_cache {
        let table = LambdaTable::load_cache(path, cfg.hard_cap)
            .map_err(|e| CmdError::Data(format!("lambda cache {}: {e}", path.display())))?;
        if table.n_max() < needed {
            return Err(CmdError::Data(format!(
                "lambda cache covers n ≤ {}, command needs {needed}",
                table.n_max()
            )));
        }
        return Ok(table);
    }
    let n = needed.max(cfg.n_max.unwrap_or(0));
    LambdaTable::build_with_cap(n, cfg.hard_cap).map_err(|e| CmdError::Data(e.to_string()))
}

/// Load the configured zero table; absence is a data error.
pub fn acquire_zeros(cfg: &RunConfig) -> Result<ZeroTable, CmdError> {
    let path: &PathBuf = cfg
        .zero_file
        .as_ref()
        .ok_or_else(|| CmdError::Data("no zero file configured (--zero-file)".into()))?;
    ZeroTable::load(path).map_err(|e| CmdError::Data(format!("{}: {e}", path.display())))
}
