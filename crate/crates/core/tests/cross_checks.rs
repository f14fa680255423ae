//! Cross-module checks against the real zero table: the sieve side and the
//! zero side of the explicit formulas must agree within their truncation
//! budgets, and the bound surrogates must track the exact quantities.

use std::path::Path;
use std::sync::OnceLock;

use goldbach_core::expsum::{breakup_dyadic_sum, build_grid, curly_e};
use goldbach_core::goldbach::{fujii_breakdown, psi2_all, ConvMethod};
use goldbach_core::paircorr::{cal_j_pair_bound_check, f_windowed, g_default_u, g_numeric};
use goldbach_core::sieve::LambdaTable;
use goldbach_core::util::KahanSum;
use goldbach_core::variance::cal_j_exact;
use goldbach_core::zeros::{self, ExplicitConstants, ZeroTable};

fn lambda() -> &'static LambdaTable {
    static TABLE: OnceLock<LambdaTable> = OnceLock::new();
    TABLE.get_or_init(|| LambdaTable::build(60_000).expect("sieve"))
}

fn zeros() -> &'static ZeroTable {
    static ZEROS: OnceLock<ZeroTable> = OnceLock::new();
    ZEROS.get_or_init(|| {
        let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_10000.txt");
        ZeroTable::load(&path).expect("zero table data/zeros_10000.txt")
    })
}

#[test]
fn zero_table_sanity() {
    let z = zeros();
    assert_eq!(z.len(), 10_000);
    assert!((z.gammas()[0] - 14.134725141734694).abs() < 1e-9);
    assert!((z.max_height() - 9877.7826540055).abs() < 1e-8);
    assert!(z.precision_digits() >= 9);
}

/// ψ₁ from the truncated explicit formula against the exact sieve value.
#[test]
fn psi1_explicit_matches_sieve() {
    let table = lambda();
    let ztable = zeros();
    let constants = ExplicitConstants::default();
    let t = ztable.max_height();
    for x in [100.0f64, 1_000.0, 10_000.0] {
        let from_zeros = zeros::psi1_explicit(&constants, ztable, x, t).unwrap();
        let from_sieve = table.psi1(x).unwrap();
        let budget = 2.0 * zeros::tail_estimate(x as u64, t);
        assert!(
            (from_zeros - from_sieve).abs() <= budget,
            "x = {x}: explicit {from_zeros} vs sieve {from_sieve}, budget {budget}"
        );
    }
}

/// The truncated Fujii zero sum is Cauchy in T with modulus tail_estimate.
#[test]
fn fujii_zero_sum_cauchy_in_t() {
    let ztable = zeros();
    let top = ztable.max_height();
    for n in [10u64, 1_000, 10_000] {
        for t1 in [100.0f64, 1_000.0, 5_000.0] {
            let s1 = zeros::fujii_zero_sum(ztable, n, t1).unwrap();
            for t2 in [2.0 * t1, top] {
                let t2 = t2.min(top);
                let s2 = zeros::fujii_zero_sum(ztable, n, t2).unwrap();
                let modulus = zeros::tail_estimate(n, t1);
                assert!(
                    (s2 - s1).abs() <= modulus,
                    "N = {n}: |S({t2}) − S({t1})| = {} > {modulus}",
                    (s2 - s1).abs()
                );
            }
        }
    }
}

/// Breakdown at a mid truncation height T = 10³ stays within 10·tail_bound.
#[test]
fn breakdown_at_mid_height() {
    let table = lambda();
    let series = psi2_all(table, 1_000, ConvMethod::Fft).unwrap();
    let b = fujii_breakdown(&series, table, zeros(), 1_000, 1_000.0).unwrap();
    assert!(b.tail_bound.is_finite());
    assert!(
        b.residual.abs() <= 10.0 * b.tail_bound,
        "residual {} vs tail bound {}",
        b.residual,
        b.tail_bound
    );
}

/// Truncated short-interval explicit formula against the sieve, pointwise
/// at half-integer t (integer t sits on the ‖t‖ singularity of the error
/// bound) and in mean square over a grid.
#[test]
fn short_interval_explicit_formula() {
    let table = lambda();
    let ztable = zeros();
    let z = ztable.max_height();
    let delta = 0.05;

    let sieve_value =
        |t: f64| table.psi((1.0 + delta) * t).unwrap() - table.psi(t).unwrap() - delta * t;

    let t = 1_000.5;
    let predicted = zeros::short_interval_zero_sum(ztable, t, delta, z).unwrap();
    let err_bound = zeros::short_interval_error_bound(t, delta, z);
    assert!(
        (predicted - sieve_value(t)).abs() <= 5.0 * err_bound,
        "t = {t}: predicted {predicted} vs sieve {} (bound {err_bound})",
        sieve_value(t)
    );

    let mut sq = KahanSum::new();
    let mut count = 0usize;
    let mut t = 100.5;
    while t <= 2_000.5 {
        let predicted = zeros::short_interval_zero_sum(ztable, t, delta, z).unwrap();
        let r = predicted - sieve_value(t);
        sq.add(r * r);
        count += 1;
        t += 40.0;
    }
    let mean_sq = sq.value() / count as f64;
    let x = 2_000.0f64;
    assert!(
        mean_sq <= 10.0 * x / x.ln(),
        "mean squared residual {mean_sq} over {count} points"
    );
}

/// G(x,δ) at the default U: smoke bracket for G/(δ·log x) and agreement of
/// step halving within the reported estimate on the real table.
#[test]
fn g_numeric_default_run() {
    let ztable = zeros();
    let (x, delta) = (1_000.0, 0.05);
    let u = g_default_u(delta);
    assert!(u < ztable.max_height() - 200.0);
    let g = g_numeric(ztable, x, delta, u, 200.0, 0.05).unwrap();
    let normalized = g.value / (delta * x.ln());
    assert!(
        (0.01..=100.0).contains(&normalized),
        "G/(δ log x) = {normalized}"
    );
    let fine = g_numeric(ztable, x, delta, u, 200.0, 0.025).unwrap();
    assert!(
        (g.value - fine.value).abs() <= g.error_estimate,
        "halving moved {} > estimate {}",
        (g.value - fine.value).abs(),
        g.error_estimate
    );
}

/// 𝒥(x,δ) ≤ 100·(x²G + δx²) on the stated range (variance against pair
/// correlation), at two scales.
#[test]
fn cal_j_pair_bound_full_runs() {
    let table = lambda();
    let ztable = zeros();
    for (x, delta) in [(1_000.0, 0.1), (1_000.0, 0.001), (10_000.0, 0.01)] {
        let c = cal_j_pair_bound_check(table, ztable, x, delta).unwrap();
        assert!(
            c.holds,
            "(x,δ) = ({x},{delta}): lhs {} vs x²G {} + δx² {}",
            c.lhs, c.x2_g, c.delta_x2
        );
    }
}

/// Small-δ regime of 𝒥: for δ < 1/x at most one integer falls in any
/// interval (t, t+δt], so 𝒥 ≤ δx²·(log x + δx) up to a modest constant.
#[test]
fn cal_j_small_delta_regime() {
    let table = lambda();
    let x = 1_000.0f64;
    for delta in [1e-4, 5e-4] {
        let v = cal_j_exact(table, x, delta).unwrap();
        let bound = delta * x * x * (x.ln() + delta * x);
        assert!(v <= bound, "𝒥({x},{delta}) = {v} > {bound}");
    }
}

/// Unconditional trivial bound: F(1,T) stays below 2.4·(T/2π)log²T across
/// heights (exact mode on prefixes).
#[test]
fn f_at_unit_x_respects_trivial_bound() {
    let ztable = zeros();
    for t in [100.0, 1_000.0, ztable.gammas()[4_999]] {
        let r = goldbach_core::paircorr::f_exact(ztable, 1.0, t, 5_000).unwrap();
        let cap = 2.4 * t / std::f64::consts::TAU * t.ln().powi(2);
        assert!(r.f_value <= cap, "F(1,{t}) = {} > {cap}", r.f_value);
        assert!(r.f_value >= ztable.count(t).unwrap() as f64); // diagonal alone
    }
}

/// Windowed F against exact F on a doubling window schedule. At x = 1
/// every pair term is positive, so the gap shrinks monotonically; for
/// oscillatory x the gap wiggles at sub-bound scale, so there we assert
/// containment within the (monotone decreasing) truncation bound.
#[test]
fn f_windowed_converges_with_window() {
    let ztable = zeros();
    let t = ztable.gammas()[2_999];
    let exact_unit = goldbach_core::paircorr::f_exact(ztable, 1.0, t, 5_000)
        .unwrap()
        .f_value;
    let mut prev_gap = f64::INFINITY;
    for window in [25.0, 50.0, 100.0, 200.0, 400.0] {
        let w = f_windowed(ztable, 1.0, t, window).unwrap();
        let gap = (w.f_value - exact_unit).abs();
        assert!(
            gap <= prev_gap + 1e-9,
            "x=1 window {window}: gap {gap} grew from {prev_gap}"
        );
        prev_gap = gap;
    }

    let x = t.sqrt();
    let exact = goldbach_core::paircorr::f_exact(ztable, x, t, 5_000)
        .unwrap()
        .f_value;
    let mut prev_bound = f64::INFINITY;
    for window in [25.0, 50.0, 100.0, 200.0, 400.0] {
        let w = f_windowed(ztable, x, t, window).unwrap();
        let gap = (w.f_value - exact).abs();
        assert!(
            gap <= w.truncation_bound,
            "window {window}: gap {gap} beyond bound {}",
            w.truncation_bound
        );
        assert!(w.truncation_bound <= prev_bound);
        prev_bound = w.truncation_bound;
    }
}

/// Dyadic 𝒲 sum against ℰ(N): the breakup bound surrogate at N = 10³
/// dominates ℰ(N)/100, and ℰ moves by less than 50% when N doubles.
#[test]
fn breakup_sum_and_curly_e_smoothness() {
    let table = lambda();
    let grid = build_grid(table, 1_000, None).unwrap();
    let dyadic = breakup_dyadic_sum(&grid).unwrap();
    let e1000 = curly_e(table, 1_000, None).unwrap();
    assert!(
        dyadic >= e1000.value / 100.0,
        "dyadic sum {dyadic} vs ℰ/100 = {}",
        e1000.value / 100.0
    );
    // smoothness under doubling: ℰ itself scales like N·log³N (≈ 2.4× per
    // doubling), so the stable quantity is the normalized ratio
    let e500 = curly_e(table, 500, None).unwrap();
    let norm = |n: f64, v: f64| v / (n * n.ln().powi(3));
    let r1 = norm(500.0, e500.value);
    let r2 = norm(1_000.0, e1000.value);
    let change = (r2 - r1).abs() / r2;
    assert!(change < 0.5, "normalized ℰ ratio jumped by {change}");
}
