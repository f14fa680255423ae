use std::path::PathBuf;

use goldbach_core::LambdaTable;

use crate::config::RunConfig;
use crate::output::summary;
use crate::CmdError;

/// Build (or revalidate) a Λ table and optionally cache it. With `check`,
/// the cache at that path is loaded and revalidated instead of sieving.
pub fn run(cfg: &RunConfig, out: Option<PathBuf>, check: Option<PathBuf>) -> Result<(), CmdError> {
    if let Some(path) = check {
        let table = LambdaTable::load_cache(&path, cfg.hard_cap)
            .map_err(|e| CmdError::Data(format!("{}: {e}", path.display())))?;
        summary(&format!(
            "sieve check ok: {} n_max={} support={} psi(n_max)={}",
            path.display(),
            table.n_max(),
            table.support().len(),
            table.psi(table.n_max() as f64).unwrap()
        ));
        return Ok(());
    }
    let n_max = cfg
        .n_max
        .ok_or_else(|| CmdError::Usage("sieve needs --n-max".into()))?;
    let table = LambdaTable::build_with_cap(n_max, cfg.hard_cap)
        .map_err(|e| CmdError::Data(e.to_string()))?;
    let out = out.or_else(|| {
        std::env::var_os("GOLDBACH_CACHE_DIR")
            .map(|dir| PathBuf::from(dir).join(format!("lambda_{n_max}.bin")))
    });
    if let Some(path) = &out {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)
                    .map_err(|e| CmdError::Data(format!("{}: {e}", parent.display())))?;
            }
        }
        table
            .write_cache(path)
            .map_err(|e| CmdError::Data(format!("{}: {e}", path.display())))?;
    }
    summary(&format!(
        "sieve ok: n_max={} support={} psi(n_max)={}{}",
        table.n_max(),
        table.support().len(),
        table.psi(table.n_max() as f64).unwrap(),
        out.map(|p| format!(" cached={}", p.display()))
            .unwrap_or_default()
    ));
    Ok(())
}
