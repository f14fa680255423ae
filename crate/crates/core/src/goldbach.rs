//! Weighted Goldbach representation counts ψ₂(n) and the exact error term.
//!
//! ψ₂(n) = Σ_{m+m'=n} Λ(m)Λ(m') is the additive self-convolution of Λ.
//! Two construction methods are provided: `Direct` iterates over pairs of
//! prime-power support points and is the oracle below 10⁴; `Fft` computes
//! the self-convolution on a zero-padded power-of-two grid in
//! O(n_max log n_max). The exact error term
//!
//!   E(N) = Σ_{n≤N} ψ₂(n) − 2ψ₁(N) + N(N−1)/2
//!
//! is computed from this closed identity, never from the oscillatory
//! integral that defines it (the DFT-grid majorant of that integral lives
//! in [`crate::expsum`]).

use crate::error::{Error, Result};
use crate::sieve::LambdaTable;
use crate::util::KahanSum;
use crate::zeros::{self, ExplicitConstants, ZeroTable};

/// Construction method for [`Psi2Series`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvMethod {
    /// Pairwise iteration over prime-power support points, O(P²).
    Direct,
    /// FFT self-convolution on a grid of length ≥ 2·n_max.
    Fft,
}

/// ψ₂(n) for 1 ≤ n ≤ n_max with cumulative sums.
#[derive(Debug, Clone)]
pub struct Psi2Series {
    n_max: usize,
    /// psi2[n]; index 0 unused.
    psi2: Vec<f64>,
    /// cumulative[n] = Σ_{m≤n} ψ₂(m).
    cumulative: Vec<f64>,
    method: ConvMethod,
}

/// Compute ψ₂(n) for all n ≤ n_max.
pub fn psi2_all(table: &LambdaTable, n_max: usize, method: ConvMethod) -> Result<Psi2Series> {
    if n_max == 0 {
        return Err(Error::Domain("n_max must be positive".into()));
    }
    if n_max > table.n_max() {
        return Err(Error::Range(format!(
            "n_max = {n_max} exceeds lambda table n_max = {}",
            table.n_max()
        )));
    }
    let psi2 = match method {
        ConvMethod::Direct => convolve_direct(table, n_max),
        ConvMethod::Fft => convolve_fft(table, n_max),
    };
    let mut cumulative = Vec::with_capacity(n_max + 1);
    cumulative.push(0.0);
    let mut acc = KahanSum::new();
    for &v in &psi2[1..] {
        acc.add(v);
        cumulative.push(acc.value());
    }
    Ok(Psi2Series {
        n_max,
        psi2,
        cumulative,
        method,
    })
}

/// Ordered-pair convolution via unordered support pairs with weight 2 off
/// the diagonal; identical to visiting (m, m') and (m', m) separately.
fn convolve_direct(table: &LambdaTable, n_max: usize) -> Vec<f64> {
    let mut psi2 = vec![0.0f64; n_max + 1];
    let support = table.support();
    let values = table.values();
    for (i, &a) in support.iter().enumerate() {
        let a = a as usize;
        if 2 * a > n_max {
            break;
        }
        let la = values[a];
        for &b in &support[i..] {
            let b = b as usize;
            let n = a + b;
            if n > n_max {
                break;
            }
            if a == b {
                psi2[n] += la * la;
            } else {
                psi2[n] += 2.0 * la * values[b];
            }
        }
    }
    psi2
}

fn convolve_fft(table: &LambdaTable, n_max: usize) -> Vec<f64> {
    use rustfft::num_complex::Complex;
    let m = (2 * n_max + 1).next_power_of_two();
    let mut buf = vec![Complex::new(0.0f64, 0.0); m];
    for &n in table.support() {
        let n = n as usize;
        if n > n_max {
            break;
        }
        buf[n].re = table.values()[n];
    }
    let mut planner = rustfft::FftPlanner::new();
    planner.plan_fft_forward(m).process(&mut buf);
    for v in buf.iter_mut() {
        *v = *v * *v;
    }
    planner.plan_fft_inverse(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    let mut psi2 = vec![0.0f64; n_max + 1];
    for (n, slot) in psi2.iter_mut().enumerate().skip(2) {
        // tiny negative round-off on structurally-zero entries is clamped
        *slot = (buf[n].re * scale).max(0.0);
    }
    psi2
}

impl Psi2Series {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn method(&self) -> ConvMethod {
        self.method
    }

    /// ψ₂(n); zero for n < 4.
    #[inline]
    pub fn psi2(&self, n: usize) -> f64 {
        if n == 0 || n > self.n_max {
            0.0
        } else {
            self.psi2[n]
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.psi2
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(Error::Range(format!(
                "N = {n} exceeds series n_max = {}",
                self.n_max
            )));
        }
        Ok(())
    }

    /// Σ_{n≤N} ψ₂(n).
    pub fn cumulative(&self, n: usize) -> Result<f64> {
        self.check_n(n)?;
        Ok(self.cumulative[n])
    }

    /// Split Σ_{n≤N} ψ₂(n) by the parity of n; returns (odd_sum, even_sum).
    pub fn odd_even_split(&self, n: usize) -> Result<(f64, f64)> {
        self.check_n(n)?;
        let mut odd = KahanSum::new();
        let mut even = KahanSum::new();
        for m in 1..=n {
            if m % 2 == 1 {
                odd.add(self.psi2[m]);
            } else {
                even.add(self.psi2[m]);
            }
        }
        Ok((odd.value(), even.value()))
    }
}

/// The exact error term E(N) = Σ_{n≤N} ψ₂(n) − 2ψ₁(N) + N(N−1)/2.
pub fn fujii_error_e(series: &Psi2Series, table: &LambdaTable, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("N must be positive".into()));
    }
    series.check_n(n)?;
    let nf = n as f64;
    Ok(series.cumulative(n)? - 2.0 * table.psi1(nf)? + 0.5 * nf * (nf - 1.0))
}

/// All additive terms of the average-Goldbach identity for one N, with the
/// zero sum truncated at height T.
#[derive(Debug, Clone, Copy)]
pub struct FujiiBreakdown {
    pub n: u64,
    /// Σ_{n≤N} ψ₂(n).
    pub prime_side: f64,
    /// N²/2.
    pub main_quadratic: f64,
    /// Truncated 2Σ_ρ N^{ρ+1}/(ρ(ρ+1)) (entering the identity with a minus).
    pub zero_sum: f64,
    /// −(2 log 2π − 1/2)·N.
    pub linear_term: f64,
    /// 2·ζ'/ζ(−1).
    pub constant_term: f64,
    /// −Σ_k N^{1−2k}/(k(2k−1)).
    pub trivial_zero_sum: f64,
    /// Exact E(N) from the closed identity.
    pub error_e: f64,
    /// Bound on |residual| from the zero-sum truncation; ∞ when the table
    /// cannot support a tail estimate (degenerate smoke runs).
    pub tail_bound: f64,
    /// prime_side − (main_quadratic − zero_sum + linear_term + constant_term
    /// + trivial_zero_sum + error_e): the truncation defect.
    pub residual: f64,
}

/// Assemble every term of the identity at truncation height T.
pub fn fujii_breakdown(
    series: &Psi2Series,
    table: &LambdaTable,
    zeros: &ZeroTable,
    n: u64,
    t: f64,
) -> Result<FujiiBreakdown> {
    if n < 2 {
        return Err(Error::Domain(format!("N = {n} must be at least 2")));
    }
    let constants = ExplicitConstants::default();
    let nf = n as f64;
    let prime_side = series.cumulative(n as usize)?;
    let main_quadratic = nf * nf / 2.0;
    let zero_sum = 2.0 * zeros::fujii_zero_sum(zeros, n, t)?;
    let linear_term = -constants.two_log2pi_minus_half * nf;
    let constant_term = 2.0 * constants.zeta_prime_over_zeta_at_minus1;
    let trivial_zero_sum = -2.0 * zeros::trivial_zero_series(nf);
    let error_e = fujii_error_e(series, table, n as usize)?;
    let tail_bound = if t >= 20.0 && !zeros.is_empty() {
        2.0 * zeros::tail_estimate(n, t)
    } else {
        f64::INFINITY
    };
    let residual = prime_side
        - (main_quadratic - zero_sum + linear_term + constant_term + trivial_zero_sum + error_e);
    Ok(FujiiBreakdown {
        n,
        prime_side,
        main_quadratic,
        zero_sum,
        linear_term,
        constant_term,
        trivial_zero_sum,
        error_e,
        tail_bound,
        residual,
    })
}
