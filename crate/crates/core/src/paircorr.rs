//! Montgomery's pair-correlation form factor F(x,T) and the G(x,δ) integral.
//!
//! F(x,T) = Σ_{0<γ,γ'≤T} x^{i(γ−γ')} w(γ−γ') with w(u) = 4/(4+u²). The
//! double sum is folded over unordered pairs: the diagonal contributes
//! N(T), each off-diagonal pair 2·cos((γ−γ')·log x)·w(γ−γ'), which makes
//! the value exactly real. Exact mode is O(M²) and capped; windowed mode
//! drops pairs separated by more than the window and reports a truncation
//! bound from w(u) ≤ 4/u² against zero density ≤ 2 log T per unit height.

use crate::error::{Error, Result};
use crate::sieve::LambdaTable;
use crate::util::KahanSum;
use crate::variance::cal_j_exact;
use crate::zeros::ZeroTable;

/// Default cap on zeros in exact mode (25·10⁶ pair evaluations).
pub const EXACT_MODE_CAP: usize = 5000;

/// Default window for windowed mode.
pub const DEFAULT_WINDOW: f64 = 200.0;

/// Montgomery's weight w(u) = 4/(4+u²).
#[inline]
pub fn weight_w(u: f64) -> f64 {
    4.0 / (4.0 + u * u)
}

/// Montgomery-theorem main term (T/2π)(x^{−2} log²T + log x).
pub fn montgomery_main_term(x: f64, t: f64) -> f64 {
    t / std::f64::consts::TAU * (t.ln().powi(2) / (x * x) + x.ln())
}

/// One F(x,T) evaluation.
#[derive(Debug, Clone, Copy)]
pub struct CorrelationResult {
    pub x: f64,
    pub t: f64,
    pub f_value: f64,
    pub main_term: f64,
    /// f_value / main_term.
    pub ratio: f64,
    /// Bound on the mass dropped by the window; 0 in exact mode.
    pub truncation_bound: f64,
    /// The window used, if windowed.
    pub window: Option<f64>,
}

/// F(x,T) / main term, defined on Montgomery's range 1 ≤ x ≤ T.
pub fn montgomery_ratio(result: &CorrelationResult) -> Result<f64> {
    if result.x < 1.0 || result.x > result.t {
        return Err(Error::Domain(format!(
            "Montgomery main term applies for 1 ≤ x ≤ T, got x = {}, T = {}",
            result.x, result.t
        )));
    }
    Ok(result.ratio)
}

fn check_f_args(table: &ZeroTable, x: f64, t: f64) -> Result<()> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("x = {x} must be positive")));
    }
    if t > table.max_height() {
        return Err(Error::Coverage {
            needed: t,
            max_height: table.max_height(),
        });
    }
    Ok(())
}

/// Exact F(x,T) by the direct pair sum, O(M²), M = N(T) ≤ cap.
pub fn f_exact(table: &ZeroTable, x: f64, t: f64, cap: usize) -> Result<CorrelationResult> {
    check_f_args(table, x, t)?;
    let m = table.count(t)?;
    if m > cap {
        return Err(Error::Domain(format!(
            "{m} zeros exceed the exact-mode cap {cap}; use windowed mode"
        )));
    }
    let gammas = &table.gammas()[..m];
    let ln_x = x.ln();
    let mut acc = KahanSum::new();
    for (i, &gi) in gammas.iter().enumerate() {
        for &gj in &gammas[i + 1..] {
            let d = gj - gi;
            acc.add(2.0 * weight_w(d) * (d * ln_x).cos());
        }
    }
    let f_value = m as f64 + acc.value();
    let main_term = montgomery_main_term(x, t);
    Ok(CorrelationResult {
        x,
        t,
        f_value,
        main_term,
        ratio: f_value / main_term,
        truncation_bound: 0.0,
        window: None,
    })
}

/// Windowed F(x,T): only pairs with |γ−γ'| ≤ window are summed. Cost
/// O(M · window · density).
pub fn f_windowed(table: &ZeroTable, x: f64, t: f64, window: f64) -> Result<CorrelationResult> {
    check_f_args(table, x, t)?;
    if window < 10.0 {
        return Err(Error::Domain(format!(
            "window = {window} must be at least 10"
        )));
    }
    let m = table.count(t)?;
    let gammas = &table.gammas()[..m];
    let ln_x = x.ln();
    let mut acc = KahanSum::new();
    for (i, &gi) in gammas.iter().enumerate() {
        for &gj in &gammas[i + 1..] {
            let d = gj - gi;
            if d > window {
                break;
            }
            acc.add(2.0 * weight_w(d) * (d * ln_x).cos());
        }
    }
    let f_value = m as f64 + acc.value();
    // each zero excludes mass ≤ 2 · ∫_window^∞ 4/u² du · (2 log T) per side
    let truncation_bound = if window >= t {
        0.0
    } else {
        m as f64 * 16.0 * t.ln() / (window - 1.0)
    };
    let main_term = montgomery_main_term(x, t);
    Ok(CorrelationResult {
        x,
        t,
        f_value,
        main_term,
        ratio: f_value / main_term,
        truncation_bound,
        window: Some(window),
    })
}

/// G(x,δ) quadrature result with an additive error estimate.
#[derive(Debug, Clone, Copy)]
pub struct GNumeric {
    pub value: f64,
    /// Sum of the U-tail bound, the window-truncation term, and a generous
    /// trapezoid-resolution term.
    pub error_estimate: f64,
    /// Upper integration limit actually used.
    pub u_max: f64,
}

/// G(x,δ) = ∫₀^∞ (sin κt / t)² |Σ_γ x^{iγ}/(1+(t−γ)²)|² dt, κ = log(1+δ)/2,
/// by fixed-step trapezoid on [0, U] with the inner sum restricted to
/// |γ − t| ≤ window. Fixed step rather than adaptive: the integrand
/// oscillates on the zero-spacing scale and adaptivity thrashes.
pub fn g_numeric(
    table: &ZeroTable,
    x: f64,
    delta: f64,
    u_max: f64,
    window: f64,
    step: f64,
) -> Result<GNumeric> {
    if delta.is_nan() || delta <= 0.0 || delta > 1.0 {
        return Err(Error::Domain(format!("delta = {delta} must be in (0, 1]")));
    }
    if [step, window, u_max].iter().any(|v| v.is_nan())
        || step <= 0.0
        || window <= 0.0
        || u_max < 0.0
    {
        return Err(Error::Domain("step, window, u_max must be positive".into()));
    }
    if !table.is_empty() && u_max > table.max_height() - window {
        return Err(Error::Coverage {
            needed: u_max + window,
            max_height: table.max_height(),
        });
    }
    let kappa = 0.5 * delta.ln_1p();
    let gammas = table.gammas();
    let ln_x = x.ln();
    let phases: Vec<(f64, f64)> = gammas.iter().map(|&g| (g * ln_x).sin_cos()).collect();

    let n_pts = (u_max / step).floor() as usize;
    let mut acc = KahanSum::new();
    let mut lo = 0usize;
    let mut hi = 0usize;
    for j in 0..=n_pts {
        let t = j as f64 * step;
        while lo < gammas.len() && gammas[lo] < t - window {
            lo += 1;
        }
        while hi < gammas.len() && gammas[hi] <= t + window {
            hi += 1;
        }
        let mut re = 0.0;
        let mut im = 0.0;
        for k in lo..hi {
            let wgt = 1.0 / (1.0 + (t - gammas[k]) * (t - gammas[k]));
            let (s, c) = phases[k];
            re += c * wgt;
            im += s * wgt;
        }
        let kernel = if t == 0.0 {
            kappa * kappa
        } else {
            let s = (kappa * t).sin() / t;
            s * s
        };
        let weight = if j == 0 || j == n_pts { 0.5 } else { 1.0 };
        acc.add(weight * kernel * (re * re + im * im));
    }
    let value = acc.value() * step;

    let u_eff = (n_pts as f64) * step;
    let ln_t = table.max_height().max(20.0).ln();
    let tail_u = if u_eff > 2.0 {
        4.0 * (u_eff.ln().powi(2) + 2.0 * u_eff.ln() + 2.0) / u_eff
    } else {
        0.0
    };
    let eta = 4.0 * ln_t / (window - 1.0).max(1.0);
    let kernel_integral = std::f64::consts::FRAC_PI_2 * kappa;
    let err_window = eta * (2.0 * (value * kernel_integral).sqrt() + eta * kernel_integral);
    let err_quad = (step * ln_t).powi(2) * value;
    Ok(GNumeric {
        value,
        error_estimate: tail_u + err_window + err_quad,
        u_max: u_eff,
    })
}

/// Default integration limit for G(x,δ): U = 2 log²(2/δ)/δ.
pub fn g_default_u(delta: f64) -> f64 {
    2.0 * (2.0 / delta).ln().powi(2) / delta
}

/// Both sides of the variance-vs-pair-correlation inequality
/// 𝒥(x,δ) ≪ x²G(x,δ) + O(δx²) on its stated range 1/x ≤ δ ≤ 1.
#[derive(Debug, Clone, Copy)]
pub struct CalJPairBound {
    /// 𝒥(x,δ), exact.
    pub lhs: f64,
    pub x2_g: f64,
    pub delta_x2: f64,
    /// lhs ≤ 100·(x²G + δx²), a generous empirical sanity bound.
    pub holds: bool,
}

pub fn cal_j_pair_bound_check(
    table: &LambdaTable,
    zeros: &ZeroTable,
    x: f64,
    delta: f64,
) -> Result<CalJPairBound> {
    if !(delta >= 1.0 / x && delta <= 1.0) {
        return Err(Error::Domain(format!(
            "need 1/x ≤ delta ≤ 1, got x = {x}, delta = {delta}"
        )));
    }
    let lhs = cal_j_exact(table, x, delta)?;
    let u = g_default_u(delta).min((zeros.max_height() - DEFAULT_WINDOW).max(0.0));
    let g = g_numeric(zeros, x, delta, u, DEFAULT_WINDOW, 0.05)?;
    let x2_g = x * x * g.value;
    let delta_x2 = delta * x * x;
    Ok(CalJPairBound {
        lhs,
        x2_g,
        delta_x2,
        holds: lhs <= 100.0 * (x2_g + delta_x2),
    })
}
