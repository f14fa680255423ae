//! Sieved von Mangoldt function Λ(n) with its prefix sums.
//!
//! [`LambdaTable`] holds Λ(n) = log p for prime powers n = p^k (natural log,
//! double precision) together with ψ(n) prefix sums and the sorted list of
//! prime-power support points. The table is immutable after construction;
//! everything downstream (convolutions, variance sweeps, exponential sums)
//! reads from it concurrently without locks.

use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::util::KahanSum;

/// Default hard cap on table size, guarding against accidental memory
/// exhaustion (a table costs ~17 bytes per entry).
pub const DEFAULT_HARD_CAP: usize = 100_000_000;

/// Magic bytes of the binary cache format.
const CACHE_MAGIC: &[u8; 5] = b"LAMB1";

/// Λ(n), ψ(n) and the prime-power support for 1 ≤ n ≤ n_max.
#[derive(Debug, Clone)]
pub struct LambdaTable {
    n_max: usize,
    /// values[n] = Λ(n); index 0 unused.
    values: Vec<f64>,
    /// Sorted prime-power indices n with Λ(n) > 0.
    support: Vec<u32>,
    /// psi_prefix[n] = ψ(n) = Σ_{m≤n} Λ(m); index 0 is 0.
    psi_prefix: Vec<f64>,
}

impl LambdaTable {
    /// Sieve Λ up to `n_max` with the default hard cap.
    pub fn build(n_max: usize) -> Result<Self> {
        Self::build_with_cap(n_max, DEFAULT_HARD_CAP)
    }

    /// Sieve Λ up to `n_max`, enforcing a caller-chosen hard cap.
    pub fn build_with_cap(n_max: usize, cap: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::Domain("n_max must be positive".into()));
        }
        if n_max > cap {
            return Err(Error::SizeCap {
                requested: n_max,
                cap,
            });
        }
        let mut values = vec![0.0f64; n_max + 1];
        let mut composite = vec![false; n_max + 1];
        for p in 2..=n_max {
            if composite[p] {
                continue;
            }
            let log_p = (p as f64).ln();
            let mut q = p;
            loop {
                values[q] = log_p;
                if q > n_max / p {
                    break;
                }
                q *= p;
            }
            if p <= n_max / p {
                let mut m = p * p;
                while m <= n_max {
                    composite[m] = true;
                    m += p;
                }
            }
        }
        Ok(Self::from_values(n_max, values))
    }

    fn from_values(n_max: usize, values: Vec<f64>) -> Self {
        let mut support = Vec::new();
        let mut psi_prefix = Vec::with_capacity(n_max + 1);
        psi_prefix.push(0.0);
        let mut acc = KahanSum::new();
        for (n, &v) in values.iter().enumerate().skip(1) {
            if v > 0.0 {
                support.push(n as u32);
            }
            acc.add(v);
            psi_prefix.push(acc.value());
        }
        Self {
            n_max,
            values,
            support,
            psi_prefix,
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Λ(n); zero outside [1, n_max].
    #[inline]
    pub fn lambda(&self, n: usize) -> f64 {
        if n == 0 || n > self.n_max {
            0.0
        } else {
            self.values[n]
        }
    }

    /// Λ₀(n) = Λ(n) − 1 for n ≥ 1.
    #[inline]
    pub fn lambda0(&self, n: usize) -> f64 {
        debug_assert!(n >= 1 && n <= self.n_max);
        self.values[n] - 1.0
    }

    /// values[1..=n_max] as a slice (values[0] of the backing store is 0).
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Sorted prime-power support points.
    pub fn support(&self) -> &[u32] {
        &self.support
    }

    fn check_range(&self, x: f64, what: &str) -> Result<()> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::Domain(format!("{what} must be a non-negative real")));
        }
        if x > self.n_max as f64 {
            return Err(Error::Range(format!(
                "{what} = {x} exceeds table n_max = {}",
                self.n_max
            )));
        }
        Ok(())
    }

    /// ψ(x) = Σ_{n≤x} Λ(n). Step function, right-continuous; ψ(x) = 0 for x < 2.
    pub fn psi(&self, x: f64) -> Result<f64> {
        self.check_range(x, "x")?;
        Ok(self.psi_prefix[x.floor() as usize])
    }

    /// ψ₁(x) = ∫₀ˣ ψ(t) dt = Σ_{n≤x} Λ(n)(x − n), exactly.
    pub fn psi1(&self, x: f64) -> Result<f64> {
        self.check_range(x, "x")?;
        let mut acc = KahanSum::new();
        for &n in &self.support {
            let n = n as f64;
            if n > x {
                break;
            }
            acc.add(self.values[n as usize] * (x - n));
        }
        Ok(acc.value())
    }

    /// R(u) = Σ_{n≤u} Λ₀(n) = ψ(u) − ⌊u⌋.
    pub fn remainder(&self, u: f64) -> Result<f64> {
        Ok(self.psi(u)? - u.floor())
    }

    /// Write the binary cache: magic "LAMB1", little-endian u64 n_max, then
    /// n_max little-endian doubles values[1..=n_max].
    pub fn write_cache(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(std::fs::File::create(path)?);
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&(self.n_max as u64).to_le_bytes())?;
        for &v in &self.values[1..] {
            w.write_all(&v.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    /// Load a cache file, rebuilding prefix sums and revalidating invariants:
    /// entries up to 10⁵ are compared against a fresh sieve, and the
    /// ψ(n_max) ≈ n_max sanity bound is enforced for n_max ≥ 10³.
    pub fn load_cache(path: &Path, cap: usize) -> Result<Self> {
        let mut f = std::fs::File::open(path)?;
        let mut magic = [0u8; 5];
        f.read_exact(&mut magic)
            .map_err(|_| Error::Cache("file truncated before magic".into()))?;
        if &magic != CACHE_MAGIC {
            return Err(Error::Cache("bad magic bytes".into()));
        }
        let mut len_buf = [0u8; 8];
        f.read_exact(&mut len_buf)
            .map_err(|_| Error::Cache("file truncated before n_max".into()))?;
        let n_max = u64::from_le_bytes(len_buf) as usize;
        if n_max == 0 {
            return Err(Error::Cache("n_max must be positive".into()));
        }
        if n_max > cap {
            return Err(Error::SizeCap {
                requested: n_max,
                cap,
            });
        }
        let mut raw = Vec::new();
        f.read_to_end(&mut raw)?;
        if raw.len() != 8 * n_max {
            return Err(Error::Cache(format!(
                "expected {} value bytes, found {}",
                8 * n_max,
                raw.len()
            )));
        }
        let mut values = Vec::with_capacity(n_max + 1);
        values.push(0.0);
        for chunk in raw.chunks_exact(8) {
            let v = f64::from_le_bytes(chunk.try_into().unwrap());
            if !v.is_finite() || v < 0.0 {
                return Err(Error::Cache("non-finite or negative value".into()));
            }
            values.push(v);
        }
        let table = Self::from_values(n_max, values);
        table.validate().map_err(|e| match e {
            Error::Cache(m) => Error::Cache(m),
            other => Error::Cache(other.to_string()),
        })?;
        Ok(table)
    }

    /// Invariant checks used by the cache loader.
    fn validate(&self) -> Result<()> {
        let check_to = self.n_max.min(100_000);
        let fresh = Self::build_with_cap(check_to, check_to)?;
        for n in 1..=check_to {
            let (a, b) = (self.values[n], fresh.values[n]);
            // prime-power support must match exactly; log p to 1e-12 relative
            if (a == 0.0) != (b == 0.0) || (a - b).abs() > 1e-12 * b {
                return Err(Error::Cache(format!(
                    "value mismatch at n = {n}: {a} vs sieved {b}"
                )));
            }
        }
        if self.n_max >= 1000 {
            let x = self.n_max as f64;
            let bound = x.sqrt() * x.ln().powi(2);
            let defect = (self.psi_prefix[self.n_max] - x).abs();
            if defect > bound {
                return Err(Error::Cache(format!(
                    "psi({x}) deviates from {x} by {defect}, beyond {bound}"
                )));
            }
        }
        Ok(())
    }
}
