//! Exact evaluation of the prime variances H(x), J(x,h), 𝒥(x,δ).
//!
//! Each integrand is (g(t) − offset − slope·t)² where g is a piecewise
//! constant combination of ψ evaluations, so every integral is a finite sum
//! of closed-form segment integrals between breakpoints. Breakpoints come
//! from the prime-power support of the Λ table: ψ(t) jumps at t = n,
//! ψ(t+h) at t = n − h, ψ((1+δ)t) at t = n/(1+δ). The sweep merges the
//! sorted events once per call; zero-length segments from colliding
//! breakpoints contribute nothing.

use crate::error::{Error, Result};
use crate::sieve::LambdaTable;
use crate::util::{adaptive_simpson, KahanSum};

/// Which variance a curve row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarianceKind {
    /// H(x) = ∫₀ˣ (ψ(t) − t)² dt, normalized by x².
    H,
    /// J(x,h) = ∫₀ˣ (ψ(t+h) − ψ(t) − h)² dt, normalized by h·x·log²(2x/h).
    J,
    /// 𝒥(x,δ) = ∫₀ˣ (ψ((1+δ)t) − ψ(t) − δt)² dt, normalized by δ·x²·log²(2/δ).
    CalJ,
}

impl VarianceKind {
    pub fn label(self) -> &'static str {
        match self {
            VarianceKind::H => "H",
            VarianceKind::J => "J",
            VarianceKind::CalJ => "calJ",
        }
    }
}

/// One evaluated grid point of a variance curve.
#[derive(Debug, Clone, Copy)]
pub struct VarianceRow {
    pub x: f64,
    /// h for J, δ for 𝒥, 0 for H.
    pub param: f64,
    pub value: f64,
    pub normalizer: f64,
    pub ratio: f64,
}

/// Grid of exact variance values against the conjectured normalizer.
#[derive(Debug, Clone)]
pub struct VarianceCurve {
    pub kind: VarianceKind,
    pub rows: Vec<VarianceRow>,
}

impl VarianceCurve {
    pub fn max_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio).fold(f64::MIN, f64::max)
    }
}

/// ∫_a^b (g(t) − offset − slope·t)² dt with g piecewise constant: g equals
/// `g_init` at t = a and jumps by `delta` at each event position. Events
/// must lie in (a, b) and be sorted ascending.
fn sweep_square_integral(
    events: &[(f64, f64)],
    g_init: f64,
    offset: f64,
    slope: f64,
    a: f64,
    b: f64,
) -> f64 {
    let mut acc = KahanSum::new();
    let mut g = KahanSum::new();
    g.add(g_init);
    let mut t = a;
    let mut segment = |p: f64, q: f64, gval: f64| {
        let len = q - p;
        if len <= 0.0 {
            return;
        }
        let d0 = gval - offset - slope * p;
        acc.add(len * (d0 * d0 - d0 * slope * len + slope * slope * len * len / 3.0));
    };
    for &(pos, delta) in events {
        // derived positions (n − h, n/(1+δ)) can round an ulp outside (a, b)
        let pos = pos.clamp(a, b);
        segment(t, pos, g.value());
        g.add(delta);
        t = pos;
    }
    segment(t, b, g.value());
    acc.value()
}

/// Events where ψ(t + shift) jumps inside (a, b), signed by `sign`.
fn psi_events(
    table: &LambdaTable,
    shift: f64,
    sign: f64,
    a: f64,
    b: f64,
    out: &mut Vec<(f64, f64)>,
) {
    let lo = a + shift;
    let hi = b + shift;
    let support = table.support();
    let start = support.partition_point(|&n| (n as f64) <= lo);
    for &n in &support[start..] {
        let n = n as f64;
        if n >= hi {
            break;
        }
        out.push((n - shift, sign * table.values()[n as usize]));
    }
}

/// Events where ψ((1+δ)t) jumps inside (a, b), signed by `sign`.
fn psi_scaled_events(
    table: &LambdaTable,
    scale: f64,
    sign: f64,
    a: f64,
    b: f64,
    out: &mut Vec<(f64, f64)>,
) {
    let support = table.support();
    let start = support.partition_point(|&n| (n as f64) <= a * scale);
    for &n in &support[start..] {
        let nf = n as f64;
        if nf >= b * scale {
            break;
        }
        out.push((nf / scale, sign * table.values()[n as usize]));
    }
}

fn sort_events(events: &mut [(f64, f64)]) {
    events.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
}

/// H(x) = ∫₀ˣ (ψ(t) − t)² dt, exactly.
pub fn h_exact(table: &LambdaTable, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("x = {x} must be non-negative")));
    }
    if x > table.n_max() as f64 {
        return Err(Error::Range(format!(
            "x = {x} exceeds table n_max = {}",
            table.n_max()
        )));
    }
    let mut events = Vec::new();
    psi_events(table, 0.0, 1.0, 0.0, x, &mut events);
    Ok(sweep_square_integral(&events, 0.0, 0.0, 1.0, 0.0, x))
}

/// J(x,h) = ∫₀ˣ (ψ(t+h) − ψ(t) − h)² dt, exactly.
pub fn j_exact(table: &LambdaTable, x: f64, h: f64) -> Result<f64> {
    if h.is_nan() || h <= 0.0 {
        return Err(Error::Domain(format!("h = {h} must be positive")));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("x = {x} must be non-negative")));
    }
    if x + h > table.n_max() as f64 {
        return Err(Error::Range(format!(
            "x + h = {} exceeds table n_max = {}",
            x + h,
            table.n_max()
        )));
    }
    window_j(table, 0.0, x, h)
}

/// ∫_a^b (ψ(t+h) − ψ(t) − h)² dt via the event sweep.
fn window_j(table: &LambdaTable, a: f64, b: f64, h: f64) -> Result<f64> {
    let g_init = table.psi(a + h)? - table.psi(a)?;
    let mut events = Vec::new();
    psi_events(table, h, 1.0, a, b, &mut events);
    psi_events(table, 0.0, -1.0, a, b, &mut events);
    sort_events(&mut events);
    Ok(sweep_square_integral(&events, g_init, h, 0.0, a, b))
}

/// 𝒥(x,δ) = ∫₀ˣ (ψ((1+δ)t) − ψ(t) − δt)² dt, exactly. The public range is
/// 0 < δ ≤ 1; the Saffari-Vaughan check integrates δ up to 2 internally.
pub fn cal_j_exact(table: &LambdaTable, x: f64, delta: f64) -> Result<f64> {
    if delta.is_nan() || delta <= 0.0 || delta > 1.0 {
        return Err(Error::Domain(format!("delta = {delta} must be in (0, 1]")));
    }
    cal_j_sweep(table, x, delta)
}

fn cal_j_sweep(table: &LambdaTable, x: f64, delta: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("x = {x} must be non-negative")));
    }
    if (1.0 + delta) * x > table.n_max() as f64 {
        return Err(Error::Range(format!(
            "(1+delta)·x = {} exceeds table n_max = {}",
            (1.0 + delta) * x,
            table.n_max()
        )));
    }
    let mut events = Vec::new();
    psi_scaled_events(table, 1.0 + delta, 1.0, 0.0, x, &mut events);
    psi_events(table, 0.0, -1.0, 0.0, x, &mut events);
    sort_events(&mut events);
    Ok(sweep_square_integral(&events, 0.0, 0.0, delta, 0.0, x))
}

/// Outcome of the Saffari-Vaughan inequality test.
#[derive(Debug, Clone, Copy)]
pub struct SaffariVaughanCheck {
    /// ∫_{x/2}^x (f(t+h) − f(t))² dt, f(t) = ψ(t) − t.
    pub lhs: f64,
    /// (2x/h)·∫₀^{8h/x} 𝒥(x,δ) dδ.
    pub rhs: f64,
    pub holds: bool,
}

/// Test the inequality ∫_{x/2}^x (f(t+h)−f(t))² dt ≤ (2x/h)∫₀^{8h/x} 𝒥(x,δ) dδ
/// for f(t) = ψ(t) − t. The outer δ integral uses adaptive Simpson at
/// relative tolerance 1e−6; the inner integral is exact, so the quadrature
/// rule alone controls the error.
pub fn saffari_vaughan_check(table: &LambdaTable, x: f64, h: f64) -> Result<SaffariVaughanCheck> {
    if h.is_nan() || x.is_nan() || h < 1.0 || h > x / 4.0 {
        return Err(Error::Domain(format!(
            "need 1 ≤ h ≤ x/4, got h = {h}, x = {x}"
        )));
    }
    if x + 8.0 * h > table.n_max() as f64 {
        return Err(Error::Range(format!(
            "x + 8h = {} exceeds table n_max = {}",
            x + 8.0 * h,
            table.n_max()
        )));
    }
    // f(t+h) − f(t) = ψ(t+h) − ψ(t) − h
    let lhs = window_j(table, x / 2.0, x, h)?;
    let delta_max = 8.0 * h / x;
    let inner = |delta: f64| {
        if delta <= 0.0 {
            0.0
        } else {
            cal_j_sweep(table, x, delta).expect("range was pre-checked")
        }
    };
    let rhs = 2.0 * x / h * adaptive_simpson(&inner, 0.0, delta_max, 1e-6);
    Ok(SaffariVaughanCheck {
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + 1e-6),
    })
}

/// Conjectured-bound normalizer for each variance kind.
pub fn normalizer(kind: VarianceKind, x: f64, param: f64) -> f64 {
    match kind {
        VarianceKind::H => x * x,
        VarianceKind::J => param * x * (2.0 * x / param).ln().powi(2),
        VarianceKind::CalJ => param * x * x * (2.0 / param).ln().powi(2),
    }
}

/// Evaluate value/normalizer rows over a grid. For H the params list is
/// ignored; for J and 𝒥 the grid is the cartesian product xs × params.
pub fn bound_ratio_curve(
    table: &LambdaTable,
    kind: VarianceKind,
    xs: &[f64],
    params: &[f64],
) -> Result<VarianceCurve> {
    if xs.is_empty() || (kind != VarianceKind::H && params.is_empty()) {
        return Err(Error::Domain("empty grid".into()));
    }
    let mut rows = Vec::new();
    for &x in xs {
        let plist: &[f64] = if kind == VarianceKind::H {
            &[0.0]
        } else {
            params
        };
        for &p in plist {
            let value = match kind {
                VarianceKind::H => h_exact(table, x)?,
                VarianceKind::J => j_exact(table, x, p)?,
                VarianceKind::CalJ => cal_j_exact(table, x, p)?,
            };
            let norm = normalizer(kind, x, p);
            rows.push(VarianceRow {
                x,
                param: p,
                value,
                normalizer: norm,
                ratio: value / norm,
            });
        }
    }
    Ok(VarianceCurve { kind, rows })
}
