use goldbach_core::goldbach::{fujii_breakdown, psi2_all, ConvMethod};

use crate::commands::{acquire_lambda, acquire_zeros};
use crate::config::RunConfig;
use crate::output::{emit, summary, Row, Value};
use crate::CmdError;

const DEFAULT_GRID: &[u64] = &[100, 1_000, 10_000];

/// Emit the identity breakdown over the N grid with the zero sum truncated
/// at `height` (defaults to the table top). With `verify`, any row whose
/// residual exceeds the tolerance multiplier times its tail bound fails.
pub fn run(
    cfg: &RunConfig,
    n_grid: Vec<u64>,
    height: Option<f64>,
    verify: bool,
) -> Result<(), CmdError> {
    let grid = if !n_grid.is_empty() {
        n_grid
    } else {
        cfg.grid_u64("fujii_n")?
            .unwrap_or_else(|| DEFAULT_GRID.to_vec())
    };
    if grid.is_empty() {
        return Err(CmdError::Data("empty N grid".into()));
    }
    let zeros = acquire_zeros(cfg)?;
    let t = height.unwrap_or_else(|| zeros.max_height());
    let n_top = *grid.iter().max().unwrap() as usize;
    let table = acquire_lambda(cfg, n_top)?;
    let series =
        psi2_all(&table, n_top, ConvMethod::Fft).map_err(|e| CmdError::Data(e.to_string()))?;

    let multiplier = cfg.tolerance("fujii_tail_multiplier", 10.0);
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &n in &grid {
        let b = fujii_breakdown(&series, &table, &zeros, n, t)
            .map_err(|e| CmdError::Data(e.to_string()))?;
        let row = Row(vec![
            ("N", Value::Int(b.n)),
            ("prime_side", Value::Float(b.prime_side)),
            ("main_quadratic", Value::Float(b.main_quadratic)),
            ("zero_sum", Value::Float(b.zero_sum)),
            ("linear_term", Value::Float(b.linear_term)),
            ("constant_term", Value::Float(b.constant_term)),
            ("trivial_zero_sum", Value::Float(b.trivial_zero_sum)),
            ("error_E", Value::Float(b.error_e)),
            ("tail_bound", Value::Float(b.tail_bound)),
            ("residual", Value::Float(b.residual)),
        ]);
        if verify && !(b.tail_bound.is_finite() && b.residual.abs() <= multiplier * b.tail_bound) {
            failures.push(row.csv_line());
        }
        rows.push(row);
    }
    emit(cfg, "fujii", &rows)?;
    if !failures.is_empty() {
        return Err(CmdError::Verify(format!(
            "fujii: {} of {} rows exceed {multiplier}×tail_bound:\n{}",
            failures.len(),
            rows.len(),
            failures.join("\n")
        )));
    }
    summary(&format!(
        "fujii ok: {} rows at T={t}{}",
        rows.len(),
        if verify { ", verified" } else { "" }
    ));
    Ok(())
}
