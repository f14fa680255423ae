use goldbach_core::paircorr::{
    f_exact, f_windowed, montgomery_ratio, CorrelationResult, DEFAULT_WINDOW, EXACT_MODE_CAP,
};

use crate::commands::acquire_zeros;
use crate::config::RunConfig;
use crate::output::{emit, summary, Row, Value};
use crate::CmdError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum XMode {
    /// x = T^p for each requested power.
    Powers,
    /// x = √T only.
    #[value(alias = "sqrtT")]
    SqrtT,
    /// x = 1 only.
    Unit,
}

#[allow(clippy::too_many_arguments)]
pub fn run(
    cfg: &RunConfig,
    x_mode: XMode,
    x_powers: Vec<f64>,
    x_values: Vec<f64>,
    height: Option<f64>,
    window: Option<f64>,
    exact: bool,
    exact_cap: Option<usize>,
    verify: bool,
) -> Result<(), CmdError> {
    let zeros = acquire_zeros(cfg)?;
    let t = height.unwrap_or_else(|| zeros.max_height());
    let mut xs: Vec<f64> = match x_mode {
        XMode::SqrtT => vec![t.sqrt()],
        XMode::Unit => vec![1.0],
        XMode::Powers => {
            let powers = if x_powers.is_empty() {
                vec![0.3, 0.5, 0.8, 1.0]
            } else {
                x_powers
            };
            powers.iter().map(|p| t.powf(*p)).collect()
        }
    };
    xs.extend(x_values);
    let window = window.unwrap_or(DEFAULT_WINDOW);

    let lo = cfg.tolerance("montgomery_lo", 0.5);
    let hi = cfg.tolerance("montgomery_hi", 2.0);
    let f1_constant = cfg.tolerance("f1_constant", 2.4);

    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &x in &xs {
        let r: CorrelationResult = if exact {
            f_exact(&zeros, x, t, exact_cap.unwrap_or(EXACT_MODE_CAP))
                .map_err(|e| CmdError::Data(e.to_string()))?
        } else {
            f_windowed(&zeros, x, t, window).map_err(|e| CmdError::Data(e.to_string()))?
        };
        let row = Row(vec![
            ("x", Value::Float(r.x)),
            ("T", Value::Float(r.t)),
            ("F", Value::Float(r.f_value)),
            ("main_term", Value::Float(r.main_term)),
            ("ratio", Value::Float(r.ratio)),
            (
                "mode",
                Value::Str(if exact {
                    "exact".into()
                } else {
                    "windowed".into()
                }),
            ),
            ("window", Value::Float(r.window.unwrap_or(0.0))),
            ("truncation_bound", Value::Float(r.truncation_bound)),
        ]);
        if verify {
            let mut ok = r.f_value >= 0.0;
            if x == 1.0 {
                let trivial_cap = f1_constant * montgomery_unit_main(t);
                ok &= r.f_value <= trivial_cap;
            } else if x >= 1.0 && x <= t {
                let ratio = montgomery_ratio(&r).map_err(|e| CmdError::Data(e.to_string()))?;
                ok &= ratio >= lo && ratio <= hi;
            }
            if !ok {
                failures.push(row.csv_line());
            }
        }
        rows.push(row);
    }
    emit(cfg, "paircorr", &rows)?;
    if !failures.is_empty() {
        return Err(CmdError::Verify(format!(
            "paircorr: {} rows out of bracket [{lo}, {hi}]:\n{}",
            failures.len(),
            failures.join("\n")
        )));
    }
    summary(&format!(
        "paircorr ok: {} rows at T={t}{}",
        rows.len(),
        if verify { ", verified" } else { "" }
    ));
    Ok(())
}

fn montgomery_unit_main(t: f64) -> f64 {
    t / std::f64::consts::TAU * t.ln().powi(2)
}
