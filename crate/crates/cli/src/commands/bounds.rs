use goldbach_core::expsum::{curly_e, pnt_error_check};
use goldbach_core::goldbach::{fujii_error_e, psi2_all, ConvMethod};

use crate::commands::acquire_lambda;
use crate::config::RunConfig;
use crate::output::{emit, summary, Row, Value};
use crate::CmdError;

const DEFAULT_GRID: &[u64] = &[100, 1_000, 10_000];

/// ℰ(N) by DFT-grid quadrature against the exact E(N), with the
/// RH-regime ratio ℰ(N)/(N log³N) and the prime-counting error check.
pub fn run(cfg: &RunConfig, n_grid: Vec<u64>, verify: bool) -> Result<(), CmdError> {
    let grid = if !n_grid.is_empty() {
        n_grid
    } else {
        cfg.grid_u64("bounds_n")?
            .unwrap_or_else(|| DEFAULT_GRID.to_vec())
    };
    if grid.is_empty() {
        return Err(CmdError::Data("empty N grid".into()));
    }
    let n_top = *grid.iter().max().unwrap();
    // headroom past N·ln(1e10·N): the walk to the residue target needs
    // ~0.7N and the beyond-table bound must be negligible by then
    let trunc_need = {
        let nf = n_top as f64;
        (nf * (1e10 * nf).ln()).ceil() as usize + 6 * n_top as usize + 16
    };
    let table = acquire_lambda(cfg, trunc_need.max(n_top as usize))?;
    let series = psi2_all(&table, n_top as usize, ConvMethod::Fft)
        .map_err(|e| CmdError::Data(e.to_string()))?;

    let ratio_cap = cfg.tolerance("curly_ratio_max", 10.0);
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &n in &grid {
        let e = curly_e(&table, n, None).map_err(|e| CmdError::Data(e.to_string()))?;
        let e_exact = fujii_error_e(&series, &table, n as usize)
            .map_err(|e| CmdError::Data(e.to_string()))?;
        let pnt = pnt_error_check(&table, &e, n).map_err(|e| CmdError::Data(e.to_string()))?;
        let nf = n as f64;
        let ratio = e.value / (nf * nf.ln().powi(3));
        let row = Row(vec![
            ("N", Value::Int(n)),
            ("M", Value::Int(e.m as u64)),
            ("n_trunc", Value::Int(e.n_trunc as u64)),
            ("curlyE", Value::Float(e.value)),
            ("quad_uncertainty", Value::Float(e.uncertainty)),
            ("E_exact", Value::Float(e_exact)),
            ("ratio_E_over_NlogcubeN", Value::Float(ratio)),
        ]);
        if verify {
            let majorant_ok = e_exact.abs() <= e.value + e.uncertainty;
            let ratio_ok = ratio <= ratio_cap;
            if !(majorant_ok && ratio_ok && pnt.holds) {
                failures.push(format!(
                    "{} (majorant {majorant_ok}, ratio {ratio_ok}, pnt {})",
                    row.csv_line(),
                    pnt.holds
                ));
            }
        }
        rows.push(row);
    }
    emit(cfg, "bounds", &rows)?;
    if !failures.is_empty() {
        return Err(CmdError::Verify(format!(
            "bounds: {} rows failed:\n{}",
            failures.len(),
            failures.join("\n")
        )));
    }
    summary(&format!(
        "bounds ok: {} rows{}",
        rows.len(),
        if verify { ", verified" } else { "" }
    ));
    Ok(())
}
