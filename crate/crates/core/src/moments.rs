//! Shifted moments over the family, their envelopes, and integral moments.

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{sieve_squarefree_odd, QuadChar};
use crate::error::{QdlError, Result};
use crate::lfunc::{LEvaluator, ShiftConfig};
use crate::sum::{det_map, det_sum};
use crate::zeta::ZetaEvaluator;

/// Relative disagreement between step `h` and `h/2` that flags an integral.
pub const RICHARDSON_TOLERANCE: f64 = 0.01;

pub const DEFAULT_QUAD_STEP: f64 = 0.05;

/// Piecewise `g(x)`; on the overlaps the earlier case wins:
/// `x < 1/log X → log X`, `1/log X ≤ x ≤ 10 → 1/x`, `10 < x < e^X → log log x`, else `log X`.
pub fn g_function(x: f64, big_x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(QdlError::InvalidArgument(format!("g needs x >= 0, got {x}")));
    }
    if !(big_x > std::f64::consts::E) {
        return Err(QdlError::InvalidArgument(format!("g needs X > e, got {big_x}")));
    }
    let log_x = big_x.ln();
    Ok(if x < 1.0 / log_x {
        log_x
    } else if x <= 10.0 {
        1.0 / x
    } else if x.ln() < big_x {
        x.ln().ln()
    } else {
        log_x
    })
}

/// The three candidates whose maximum is `E(m, k, ε)`.
pub fn exponent_e_branches(m: f64, k: u32, eps: f64) -> Result<[f64; 3]> {
    if k == 0 {
        return Err(QdlError::InvalidArgument("k must be a positive integer".into()));
    }
    if !(eps > 0.0) {
        return Err(QdlError::InvalidArgument(format!("eps must be > 0, got {eps}")));
    }
    let kf = k as f64;
    if !(2.0 * m >= kf + 1.0) {
        return Err(QdlError::InvalidArgument(format!(
            "need 2m >= k + 1, got m = {m}, k = {k}"
        )));
    }
    Ok([
        2.0 * m * m - m + 1.0,
        (2.0 * m - kf).powi(2) / 4.0 + 2.0 * m + 1.0 + eps,
        2.0 * m * m - 2.0 * m * kf + 3.0 * kf * kf / 4.0 + m - 3.0 * kf / 4.0 + eps,
    ])
}

pub fn exponent_e(m: f64, k: u32, eps: f64) -> Result<f64> {
    let b = exponent_e_branches(m, k, eps)?;
    Ok(b[0].max(b[1]).max(b[2]))
}

fn check_envelope_args(cfg: &ShiftConfig, big_x: f64) -> Result<f64> {
    if !(big_x > std::f64::consts::E) {
        return Err(QdlError::InvalidArgument(format!("envelopes need X > e, got {big_x}")));
    }
    cfg.check_shifts(big_x)?;
    Ok(big_x.ln())
}

/// `log` of `X (log X)^{Σa²/4} Π_{j<l} F(t_j−t_l)^{a_j a_l/2} F(t_j+t_l)^{a_j a_l/2} Π_j F(2t_j)^{a_j²/4+a_j/2}`
/// for a positive factor `F`.
fn log_envelope<F>(cfg: &ShiftConfig, big_x: f64, mut factor: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let log_x = big_x.ln();
    let (a, t) = (&cfg.a_vec, &cfg.t_vec);
    let sum_sq: f64 = a.iter().map(|x| x * x).sum();
    let mut acc = log_x + sum_sq / 4.0 * log_x.ln();
    for j in 0..a.len() {
        for l in j + 1..a.len() {
            let w = a[j] * a[l] / 2.0;
            if w != 0.0 {
                acc += w * (factor(t[j] - t[l])?.ln() + factor(t[j] + t[l])?.ln());
            }
        }
        let w = a[j] * a[j] / 4.0 + a[j] / 2.0;
        if w != 0.0 {
            acc += w * factor(2.0 * t[j])?.ln();
        }
    }
    Ok(acc)
}

/// The `g`-product envelope.
pub fn envelope_cor12(cfg: &ShiftConfig, big_x: f64) -> Result<f64> {
    check_envelope_args(cfg, big_x)?;
    Ok(log_envelope(cfg, big_x, |u| g_function(u.abs(), big_x))?.exp())
}

/// The envelope with `|ζ(1 + iu + 1/log X)|` in place of `g(|u|)`.
pub fn envelope_thm11(cfg: &ShiftConfig, big_x: f64, zeta: &ZetaEvaluator) -> Result<f64> {
    let log_x = check_envelope_args(cfg, big_x)?;
    let re = 1.0 + 1.0 / log_x;
    Ok(log_envelope(cfg, big_x, |u| Ok(zeta.riemann(Complex64::new(re, u))?.norm()))?.exp())
}

/// `X (log X)^{a(a+1)/2}`.
pub fn envelope_lemma26(cfg: &ShiftConfig, big_x: f64) -> Result<f64> {
    let log_x = check_envelope_args(cfg, big_x)?;
    let a = cfg.a_total();
    Ok(big_x * log_x.powf(a * (a + 1.0) / 2.0))
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentReport {
    #[serde(rename = "X")]
    pub big_x: f64,
    pub cfg: ShiftConfig,
    pub empirical: f64,
    pub envelope_thm11: f64,
    pub envelope_cor12: f64,
    pub envelope_lemma26: f64,
    /// `empirical / envelope_cor12`
    pub ratio: f64,
    pub family_size: usize,
}

/// Evaluates several shift configurations over one family, computing each
/// distinct `|L(σ + it)|` once per `d`.
pub fn shifted_moments(big_x: f64, cfgs: &[ShiftConfig], lev: &LEvaluator) -> Result<Vec<MomentReport>> {
    if !(big_x >= 1.0 && big_x.is_finite()) {
        return Err(QdlError::InvalidArgument(format!("X must be >= 1, got {big_x}")));
    }
    // (σ, t) columns, in first-seen order
    let mut columns: Vec<(f64, f64)> = Vec::new();
    let mut index: Vec<Vec<usize>> = Vec::with_capacity(cfgs.len());
    for cfg in cfgs {
        cfg.check_shifts(big_x)?;
        let mut idx = Vec::with_capacity(cfg.k());
        for &t in &cfg.t_vec {
            let key = (cfg.sigma, t);
            let pos = match columns.iter().position(|c| c.0.to_bits() == key.0.to_bits() && c.1.to_bits() == key.1.to_bits()) {
                Some(p) => p,
                None => {
                    columns.push(key);
                    columns.len() - 1
                }
            };
            idx.push(pos);
        }
        index.push(idx);
    }

    let ds = sieve_squarefree_odd(big_x.floor() as u64);
    let rows = det_map(&ds, |&d| -> Result<Vec<f64>> {
        let ch = QuadChar::new(d)?;
        columns
            .iter()
            .map(|&(sigma, t)| {
                lev.value(ch, Complex64::new(sigma, t))
                    .map(|v| v.value.norm())
                    .map_err(|e| QdlError::Numerical(format!("L-value failed at d = {d}, t = {t}: {e}")))
            })
            .collect()
    });
    let rows: Vec<Vec<f64>> = rows.into_iter().collect::<Result<_>>()?;

    cfgs.iter()
        .zip(&index)
        .map(|(cfg, idx)| {
            let empirical = det_sum(&rows, |row| {
                idx.iter()
                    .zip(&cfg.a_vec)
                    .map(|(&c, &a)| if a == 0.0 { 1.0 } else { row[c].powf(a) })
                    .product()
            });
            let (thm, cor, lem) = if big_x > std::f64::consts::E {
                (
                    envelope_thm11(cfg, big_x, &lev.zeta)?,
                    envelope_cor12(cfg, big_x)?,
                    envelope_lemma26(cfg, big_x)?,
                )
            } else {
                (f64::NAN, f64::NAN, f64::NAN)
            };
            Ok(MomentReport {
                big_x,
                cfg: cfg.clone(),
                empirical,
                envelope_thm11: thm,
                envelope_cor12: cor,
                envelope_lemma26: lem,
                ratio: empirical / cor,
                family_size: ds.len(),
            })
        })
        .collect()
}

/// `Σ*_{d ≤ X} Π_j |L(σ + it_j, χ^(8d))|^{a_j}` with envelopes attached.
/// Envelopes need `X > e` and are NaN below that.
pub fn shifted_moment_empirical(big_x: f64, cfg: &ShiftConfig) -> Result<MomentReport> {
    let mut v = shifted_moments(big_x, std::slice::from_ref(cfg), &LEvaluator::default())?;
    Ok(v.remove(0))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct IntegralMoment {
    /// Sum with Simpson at step `h`.
    pub value: f64,
    /// Same sum at step `h/2`.
    pub refined: f64,
    /// Largest per-`d` relative disagreement between the two steps.
    pub max_rel_disagreement: f64,
    pub step: f64,
}

/// Composite Simpson on `n` (even) intervals over samples `y_0..y_n`, taking every `stride`-th sample.
fn simpson(ys: &[f64], stride: usize, h: f64) -> f64 {
    let n = (ys.len() - 1) / stride;
    let mut s = ys[0] + ys[n * stride];
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * ys[i * stride];
    }
    s * h / 3.0
}

/// `Σ*_{d ≤ X} (∫_0^E |L(1/2 + it, χ^(8d))| dt)^{2m}` by composite Simpson.
///
/// The step is shrunk to divide `E` into an even number of intervals. Every
/// integral is recomputed at half the step; a relative disagreement above
/// [`RICHARDSON_TOLERANCE`] is an error.
pub fn integral_abs_moment(big_x: f64, e_lim: f64, m: f64, step: f64, lev: &LEvaluator) -> Result<IntegralMoment> {
    if !(big_x >= 1.0 && big_x.is_finite()) {
        return Err(QdlError::InvalidArgument(format!("X must be >= 1, got {big_x}")));
    }
    if !(e_lim >= 0.0 && e_lim.is_finite()) || !(step > 0.0) || !(m > 0.0) {
        return Err(QdlError::InvalidArgument(format!(
            "need E >= 0, step > 0, m > 0; got E = {e_lim}, step = {step}, m = {m}"
        )));
    }
    let ds = sieve_squarefree_odd(big_x.floor() as u64);
    if e_lim == 0.0 {
        return Ok(IntegralMoment {
            value: 0.0,
            refined: 0.0,
            max_rel_disagreement: 0.0,
            step,
        });
    }
    let mut n = ((e_lim / step).ceil() as usize).max(2);
    n += n % 2;
    let h = e_lim / n as f64;
    let per_d = det_map(&ds, |&d| -> Result<(f64, f64)> {
        let ch = QuadChar::new(d)?;
        let ys = (0..=2 * n)
            .map(|i| {
                let t = i as f64 * h / 2.0;
                lev.afe(ch, Complex64::new(0.5, t)).map(|v| v.value.norm())
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok((simpson(&ys, 2, h), simpson(&ys, 1, h / 2.0)))
    });
    let per_d: Vec<(f64, f64)> = per_d.into_iter().collect::<Result<_>>()?;
    let mut worst = 0.0f64;
    for (&d, &(coarse, fine)) in ds.iter().zip(&per_d) {
        let r = (coarse - fine).abs() / fine.abs().max(f64::MIN_POSITIVE);
        if r > RICHARDSON_TOLERANCE {
            return Err(QdlError::Quadrature(format!(
                "step {h} too coarse at d = {d}: {coarse} vs {fine} at half step"
            )));
        }
        worst = worst.max(r);
    }
    Ok(IntegralMoment {
        value: det_sum(&per_d, |p| p.0.powf(2.0 * m)),
        refined: det_sum(&per_d, |p| p.1.powf(2.0 * m)),
        max_rel_disagreement: worst,
        step: h,
    })
}
