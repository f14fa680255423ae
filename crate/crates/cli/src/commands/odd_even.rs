use goldbach_core::goldbach::{psi2_all, ConvMethod};

use crate::commands::acquire_lambda;
use crate::config::RunConfig;
use crate::output::{emit, summary, Row, Value};
use crate::CmdError;

const DEFAULT_GRID: &[u64] = &[10_000, 100_000];

/// Odd/even split of the ψ₂ average: the odd part tracks 2N log N.
pub fn run(cfg: &RunConfig, n_grid: Vec<u64>, verify: bool) -> Result<(), CmdError> {
    let grid = if !n_grid.is_empty() {
        n_grid
    } else {
        cfg.grid_u64("odd_even_n")?
            .unwrap_or_else(|| DEFAULT_GRID.to_vec())
    };
    if grid.is_empty() {
        return Err(CmdError::Data("empty N grid".into()));
    }
    let n_top = *grid.iter().max().unwrap() as usize;
    let table = acquire_lambda(cfg, n_top)?;
    let series =
        psi2_all(&table, n_top, ConvMethod::Fft).map_err(|e| CmdError::Data(e.to_string()))?;

    let lo = cfg.tolerance("odd_even_lo", 0.8);
    let hi = cfg.tolerance("odd_even_hi", 1.2);
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &n in &grid {
        let (odd, even) = series
            .odd_even_split(n as usize)
            .map_err(|e| CmdError::Data(e.to_string()))?;
        let nf = n as f64;
        let ratio = odd / (2.0 * nf * nf.ln());
        let row = Row(vec![
            ("N", Value::Int(n)),
            ("odd_sum", Value::Float(odd)),
            ("even_sum", Value::Float(even)),
            ("cumulative", Value::Float(odd + even)),
            ("ratio_odd_over_2NlogN", Value::Float(ratio)),
        ]);
        if verify && !(ratio >= lo && ratio <= hi) {
            failures.push(row.csv_line());
        }
        rows.push(row);
    }
    emit(cfg, "odd_even", &rows)?;
    if !failures.is_empty() {
        return Err(CmdError::Verify(format!(
            "odd-even: {} rows outside [{lo}, {hi}]:\n{}",
            failures.len(),
            failures.join("\n")
        )));
    }
    summary(&format!(
        "odd-even ok: {} rows{}",
        rows.len(),
        if verify { ", verified" } else { "" }
    ));
    Ok(())
}
