//! Sums of `χ^(8d)` over `n` and over the family `d`: Jutila moments, their
//! smoothed variants, and the smoothed `d`-sums with Euler-product main terms.

pub mod smoothing;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{squarefree_odd_real_range, weight_a_range, PrimeTable, QuadChar};
use crate::error::{QdlError, Result};
use crate::special::exp_integral_e1;
use crate::sum::{det_sum, Neumaier};
pub use smoothing::{mellin_hat, SmoothingFunction, SmoothingKind};

/// Direct scans refuse more than this many `(d, n)` pairs unless forced.
pub const DEFAULT_WORK_BUDGET: f64 = 1e10;

/// Threshold on the estimated residual of the corrected Euler product.
pub const EULER_TRUNCATION_TOLERANCE: f64 = 1e-9;

/// `Σ*_{(d,2)=1} A(d)^{−k} χ^(8d)(n) f(d/X)`.
pub fn smoothed_d_sum(n: u64, big_x: f64, f: &SmoothingFunction, k_exp: f64) -> Result<f64> {
    if n == 0 {
        return Err(QdlError::InvalidArgument("n must be positive".into()));
    }
    if !(big_x > 0.0) || !(k_exp >= 0.0) {
        return Err(QdlError::InvalidArgument(format!(
            "need X > 0 and k >= 0, got X = {big_x}, k = {k_exp}"
        )));
    }
    if n % 2 == 0 {
        return Ok(0.0);
    }
    let lo = f.support.0 * big_x;
    let hi = f.support.1 * big_x;
    let ds = squarefree_odd_real_range(lo, hi);
    if ds.is_empty() {
        return Ok(0.0);
    }
    let weights = (k_exp > 0.0).then(|| {
        let base = ds[0];
        let w = weight_a_range(base, *ds.last().unwrap());
        (base, w)
    });
    let eighth = 8 % n;
    Ok(det_sum(&ds, |&d| {
        let c = crate::arith::jacobi_unchecked(eighth * (d % n) % n, n);
        if c == 0 {
            return 0.0;
        }
        let mut v = c as f64 * f.eval(d as f64 / big_x);
        if let Some((base, w)) = &weights {
            v *= w[(d - base) as usize].powf(-k_exp);
        }
        v
    }))
}

/// Main term of [`smoothed_d_sum`] assembled from its Euler products.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MainTermData {
    /// `f̂(1)`
    pub archimedean: f64,
    /// `Π_{p odd} (1 − 1/p)(1 + A(p)^{−k}/p)`, truncated at the table limit and tail-corrected.
    pub euler_global: f64,
    /// `Π_{p | n} (1 + A(p)^{−k}/p)^{−1}`
    pub euler_local_n: f64,
    pub delta_square: u8,
    /// Bound `c/P` on the log of the omitted tail before correction.
    pub tail_bound: f64,
    /// Log-correction `c_k Σ_{p > P} p^{−2} ≈ c_k E₁(log P)` already applied.
    pub tail_correction: f64,
    /// Estimated residual after correction; flagged when above tolerance.
    pub residual_estimate: f64,
    pub truncation_flagged: bool,
    /// `δ f̂(1) (X/2) euler_global euler_local_n`
    pub value: f64,
}

fn is_square(n: u64) -> bool {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).any(|k| k * k == n)
}

/// `1 + A(p)^{−k}/p` with `A(p) = 1 − 1/(2p)`.
fn local_factor(p: f64, k_exp: f64) -> f64 {
    1.0 + (1.0 - 0.5 / p).powf(-k_exp) / p
}

pub fn main_term_d_sum(
    n: u64,
    big_x: f64,
    f: &SmoothingFunction,
    k_exp: f64,
    table: &PrimeTable,
) -> Result<MainTermData> {
    if n == 0 || n % 2 == 0 {
        return Err(QdlError::InvalidArgument(format!("main term needs odd n, got {n}")));
    }
    if !(k_exp >= 0.0) {
        return Err(QdlError::InvalidArgument(format!("k must be >= 0, got {k_exp}")));
    }
    let archimedean = f.mellin_hat(Complex64::new(1.0, 0.0))?.re;

    let mut log_prod = Neumaier::new();
    for &p in table.primes().iter().skip(1) {
        let pf = p as f64;
        log_prod.add((1.0 - 1.0 / pf).ln() + local_factor(pf, k_exp).ln());
    }
    // log of each factor is (k/2 − 1)/p² + O(p^{−3})
    let big_p = table.limit() as f64;
    let c_k = 0.5 * k_exp - 1.0;
    let c_bound = c_k.abs() + (k_exp + 1.0).powi(2);
    let tail_bound = c_bound / big_p;
    let tail_correction = c_k * exp_integral_e1(big_p.ln());
    log_prod.add(tail_correction);
    // PNT error in Σ_{p>P} p^{−2} is O(P^{−3/2} log P); the cubic remainder is O(P^{−2}).
    let residual_estimate = c_k.abs() * big_p.ln() * big_p.powf(-1.5) + c_bound / (big_p * big_p);
    let euler_global = log_prod.total().exp();

    let mut euler_local_n = 1.0;
    let mut m = n;
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            euler_local_n /= local_factor(p as f64, k_exp);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 2;
    }
    if m > 1 {
        euler_local_n /= local_factor(m as f64, k_exp);
    }

    let delta_square = is_square(n) as u8;
    let value = delta_square as f64 * archimedean * big_x / 2.0 * euler_global * euler_local_n;
    Ok(MainTermData {
        archimedean,
        euler_global,
        euler_local_n,
        delta_square,
        tail_bound,
        tail_correction,
        residual_estimate,
        truncation_flagged: residual_estimate > EULER_TRUNCATION_TOLERANCE,
        value,
    })
}

/// `Σ_{n ≤ Y} χ(n)`, reducing `Y` modulo the period first.
pub fn partial_char_sum(ch: QuadChar, y: f64) -> i64 {
    if !(y >= 1.0) {
        return 0;
    }
    let r = (y.floor() as u64) % ch.modulus();
    (1..=r).step_by(2).map(|n| ch.chi(n) as i64).sum()
}

fn check_moment_args(big_x: f64, y: f64, m: f64) -> Result<()> {
    if !(big_x >= 1.0 && y > 0.0 && big_x.is_finite() && y.is_finite()) {
        return Err(QdlError::InvalidArgument(format!(
            "need X >= 1 and Y > 0, got X = {big_x}, Y = {y}"
        )));
    }
    if !(m >= 0.5) {
        return Err(QdlError::InvalidArgument(format!("m must be >= 1/2, got {m}")));
    }
    Ok(())
}

fn check_budget(ops: f64, force: bool) -> Result<()> {
    if ops > DEFAULT_WORK_BUDGET && !force {
        return Err(QdlError::Budget {
            ops,
            limit: DEFAULT_WORK_BUDGET,
        });
    }
    Ok(())
}

/// `S_m(X, Y) = Σ*_{d ≤ X, (d,2)=1} |Σ_{n ≤ Y} χ^(8d)(n)|^{2m}`.
pub fn jutila_moment(big_x: f64, y: f64, m: f64, force: bool) -> Result<f64> {
    check_moment_args(big_x, y, m)?;
    check_budget(big_x * y, force)?;
    let ds = squarefree_odd_real_range(0.0, big_x);
    Ok(det_sum(&ds, |&d| {
        let s = partial_char_sum(QuadChar::from_sieved(d), y);
        (s.unsigned_abs() as f64).powf(2.0 * m)
    }))
}

/// `Σ*_{d ≤ X, (d,2)=1} |Σ_n χ^(8d)(n) f(n/Y)|^{2m}`.
pub fn smoothed_jutila_moment(big_x: f64, y: f64, m: f64, f: &SmoothingFunction, force: bool) -> Result<f64> {
    check_moment_args(big_x, y, m)?;
    let n_lo = (f.support.0 * y).floor() as u64 + 1;
    let n_hi = (f.support.1 * y).ceil() as u64;
    if n_hi < n_lo {
        return Ok(0.0);
    }
    check_budget(big_x * (n_hi - n_lo + 1) as f64, force)?;
    let ds = squarefree_odd_real_range(0.0, big_x);
    let weights: Vec<(u64, f64)> = (n_lo..=n_hi)
        .filter(|n| n % 2 == 1)
        .map(|n| (n, f.eval(n as f64 / y)))
        .filter(|(_, w)| *w != 0.0)
        .collect();
    Ok(det_sum(&ds, |&d| {
        let ch = QuadChar::from_sieved(d);
        let s = weights
            .iter()
            .map(|&(n, w)| ch.chi(n) as f64 * w)
            .collect::<Neumaier>()
            .total();
        s.abs().powf(2.0 * m)
    }))
}
