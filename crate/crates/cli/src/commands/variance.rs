use goldbach_core::variance::{bound_ratio_curve, saffari_vaughan_check, VarianceKind};

use crate::commands::acquire_lambda;
use crate::config::RunConfig;
use crate::output::{emit, summary, Row, Value};
use crate::CmdError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum KindArg {
    H,
    J,
    #[value(alias = "calJ")]
    CalJ,
    /// Saffari-Vaughan inequality rows over all grid pairs with 1 ≤ h ≤ x/4.
    Sv,
}

pub fn run(
    cfg: &RunConfig,
    kind: KindArg,
    x_grid: Vec<f64>,
    h_grid: Vec<f64>,
    delta_grid: Vec<f64>,
    verify: bool,
) -> Result<(), CmdError> {
    let xs = if !x_grid.is_empty() {
        x_grid
    } else {
        cfg.grid_f64("variance_x")?
            .unwrap_or_else(|| vec![100.0, 1_000.0, 10_000.0, 100_000.0])
    };
    let hs = if !h_grid.is_empty() {
        h_grid
    } else {
        cfg.grid_f64("variance_h")?
            .unwrap_or_else(|| vec![10.0, 100.0, 1_000.0])
    };
    let deltas = if !delta_grid.is_empty() {
        delta_grid
    } else {
        cfg.grid_f64("variance_delta")?
            .unwrap_or_else(|| vec![0.01, 0.1, 0.5, 1.0])
    };
    match kind {
        KindArg::Sv => run_sv(cfg, &xs, &hs, verify),
        _ => {
            let (vkind, params, tol_name, tol_default) = match kind {
                KindArg::H => (VarianceKind::H, vec![0.0], "h_ratio_max", 1.0),
                KindArg::J => (VarianceKind::J, hs, "j_ratio_max", 1.0),
                KindArg::CalJ => (VarianceKind::CalJ, deltas, "cal_j_ratio_max", 1.0),
                KindArg::Sv => unreachable!(),
            };
            let needed = needed_n(vkind, &xs, &params);
            let table = acquire_lambda(cfg, needed)?;
            let curve = bound_ratio_curve(&table, vkind, &xs, &params)
                .map_err(|e| CmdError::Data(e.to_string()))?;
            let rows: Vec<Row> = curve
                .rows
                .iter()
                .map(|r| {
                    Row(vec![
                        ("kind", Value::Str(vkind.label().to_string())),
                        ("x", Value::Float(r.x)),
                        ("param", Value::Float(r.param)),
                        ("value", Value::Float(r.value)),
                        ("normalizer", Value::Float(r.normalizer)),
                        ("ratio", Value::Float(r.ratio)),
                    ])
                })
                .collect();
            emit(cfg, "variance", &rows)?;
            let max_ratio = curve.max_ratio();
            if verify {
                let cap = cfg.tolerance(tol_name, tol_default);
                if max_ratio > cap {
                    let worst = curve
                        .rows
                        .iter()
                        .max_by(|a, b| a.ratio.total_cmp(&b.ratio))
                        .unwrap();
                    return Err(CmdError::Verify(format!(
                        "variance {}: max ratio {max_ratio} > {cap} at x={}, param={}",
                        vkind.label(),
                        worst.x,
                        worst.param
                    )));
                }
            }
            summary(&format!(
                "variance {} ok: {} rows, max ratio {max_ratio}{}",
                vkind.label(),
                curve.rows.len(),
                if verify { ", verified" } else { "" }
            ));
            Ok(())
        }
    }
}

fn needed_n(kind: VarianceKind, xs: &[f64], params: &[f64]) -> usize {
    let max_x = xs.iter().cloned().fold(0.0, f64::max);
    let max_p = params.iter().cloned().fold(0.0, f64::max);
    let needed = match kind {
        VarianceKind::H => max_x,
        VarianceKind::J => max_x + max_p,
        VarianceKind::CalJ => (1.0 + max_p) * max_x,
    };
    needed.ceil() as usize + 1
}

fn run_sv(cfg: &RunConfig, xs: &[f64], hs: &[f64], verify: bool) -> Result<(), CmdError> {
    let max_x = xs.iter().cloned().fold(0.0, f64::max);
    let max_h = hs.iter().cloned().fold(0.0, f64::max);
    let table = acquire_lambda(cfg, (max_x + 8.0 * max_h).ceil() as usize + 1)?;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &x in xs {
        for &h in hs {
            if !(h >= 1.0 && h <= x / 4.0) {
                continue;
            }
            let c =
                saffari_vaughan_check(&table, x, h).map_err(|e| CmdError::Data(e.to_string()))?;
            let row = Row(vec![
                ("kind", Value::Str("sv".into())),
                ("x", Value::Float(x)),
                ("param", Value::Float(h)),
                ("value", Value::Float(c.lhs)),
                ("normalizer", Value::Float(c.rhs)),
                ("ratio", Value::Float(c.lhs / c.rhs)),
            ]);
            if verify && !c.holds {
                failures.push(row.csv_line());
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Err(CmdError::Data(
            "sv grid has no pairs with 1 ≤ h ≤ x/4".into(),
        ));
    }
    emit(cfg, "variance", &rows)?;
    if !failures.is_empty() {
        return Err(CmdError::Verify(format!(
            "saffari-vaughan failed on {} rows:\n{}",
            failures.len(),
            failures.join("\n")
        )));
    }
    summary(&format!(
        "variance sv ok: {} rows{}",
        rows.len(),
        if verify { ", inequality verified" } else { "" }
    ));
    Ok(())
}
