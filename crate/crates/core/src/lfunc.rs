//! Values of `L(s, χ^(8d))` near the critical line and the conditional
//! upper bounds for `log |L|` built from prime sums.
//!
//! Two evaluation routes are provided. The Hurwitz route
//! `L(s) = q^{−s} Σ_{a ≤ q} χ(a) ζ(s, a/q)` is exact up to Euler–Maclaurin
//! truncation and costs O(q) zeta calls. The AFE route uses the completed
//! function of an even primitive real character with root number +1:
//!
//! ```text
//! Λ(s) = (q/π)^{s/2} Γ(s/2) L(s)
//!      = Σ_{n ≥ 1} χ(n) [ G(s/2, πn²/q) + G((1−s)/2, πn²/q) ],   G(a, x) = x^{−a} Γ(a, x)
//! ```
//!
//! whose terms decay like `exp(−πn²/q)`, so O(√q) terms suffice.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::arith::{weight_a, PrimeTable, QuadChar};
use crate::error::{QdlError, Result};
use crate::special::{gamma, scaled_upper_incomplete_gamma};
use crate::sum::{det_map, ComplexNeumaier, Neumaier};
use crate::zeta::ZetaEvaluator;

/// AFE terms with `πn²/q` above this are below `e^{−60}` and dropped.
const AFE_EXPONENT_CUTOFF: f64 = 60.0;

/// Moment exponents `a_j`, shifts `t_j` and the constants σ, Q, A.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftConfig {
    pub a_vec: Vec<f64>,
    pub t_vec: Vec<f64>,
    pub sigma: f64,
    pub cap_q: f64,
    pub cap_a: f64,
}

impl ShiftConfig {
    pub fn new(a_vec: Vec<f64>, t_vec: Vec<f64>) -> Result<Self> {
        Self::with_params(a_vec, t_vec, 0.5, 1.0, 1.0)
    }

    pub fn with_params(a_vec: Vec<f64>, t_vec: Vec<f64>, sigma: f64, cap_q: f64, cap_a: f64) -> Result<Self> {
        if a_vec.is_empty() {
            return Err(QdlError::InvalidArgument("need at least one exponent (k >= 1)".into()));
        }
        if a_vec.len() != t_vec.len() {
            return Err(QdlError::InvalidArgument(format!(
                "{} exponents but {} shifts",
                a_vec.len(),
                t_vec.len()
            )));
        }
        if a_vec.iter().any(|a| !(a.is_finite() && *a >= 0.0)) {
            return Err(QdlError::InvalidArgument("exponents must be finite and nonnegative".into()));
        }
        if t_vec.iter().any(|t| !t.is_finite()) {
            return Err(QdlError::InvalidArgument("shifts must be finite".into()));
        }
        if !(sigma >= 0.5) {
            return Err(QdlError::InvalidArgument(format!("sigma must be >= 1/2, got {sigma}")));
        }
        if !(cap_q > 0.0 && cap_a > 0.0) {
            return Err(QdlError::InvalidArgument("Q and A must be positive".into()));
        }
        Ok(Self {
            a_vec,
            t_vec,
            sigma,
            cap_q,
            cap_a,
        })
    }

    pub fn k(&self) -> usize {
        self.a_vec.len()
    }

    /// `a = a_1 + … + a_k`.
    pub fn a_total(&self) -> f64 {
        self.a_vec.iter().sum()
    }

    /// Checks `|t_j| ≤ X^A`.
    pub fn check_shifts(&self, big_x: f64) -> Result<()> {
        let bound = big_x.powf(self.cap_a);
        match self.t_vec.iter().find(|t| t.abs() > bound) {
            Some(t) => Err(QdlError::InvalidArgument(format!(
                "shift {t} exceeds X^A = {bound}"
            ))),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LMethod {
    Hurwitz,
    Afe,
}

#[derive(Debug, Clone, Copy)]
pub struct LValue {
    pub d: u64,
    pub s: Complex64,
    pub value: Complex64,
    pub method: LMethod,
    pub est_abs_error: f64,
}

/// Route selection and tuning for L-value evaluation.
#[derive(Debug, Clone, Copy)]
pub struct LEvaluator {
    pub zeta: ZetaEvaluator,
    /// Largest modulus the Hurwitz route accepts.
    pub exact_route_bound: u64,
    /// Moduli at or below this use the Hurwitz route in [`LEvaluator::value`].
    pub crossover_modulus: u64,
    /// AFE length constant `C` in `N = ⌈C √(q(|t|+1))⌉`.
    pub afe_length_const: f64,
}

impl Default for LEvaluator {
    fn default() -> Self {
        Self {
            zeta: ZetaEvaluator::default(),
            exact_route_bound: 200_000,
            crossover_modulus: 5000,
            afe_length_const: 3.0,
        }
    }
}

impl LEvaluator {
    /// `L(s, χ)` through Hurwitz zeta values.
    pub fn hurwitz(&self, ch: QuadChar, s: Complex64) -> Result<LValue> {
        let q = ch.modulus();
        if q > self.exact_route_bound {
            return Err(QdlError::ModulusTooLarge {
                modulus: q,
                bound: self.exact_route_bound,
            });
        }
        // Validate s once; the loop uses the unchecked kernel.
        self.zeta.hurwitz(s, 1.0)?;
        let qf = q as f64;
        let mut acc = ComplexNeumaier::new();
        let mut err = 0.0;
        let mut scale = 0.0f64;
        for a in (1..q).step_by(2) {
            let c = ch.chi(a);
            if c == 0 {
                continue;
            }
            let z = self.zeta.hurwitz_unchecked(s, a as f64 / qf);
            acc.add(z.value * c as f64);
            err += z.est_abs_error;
            scale = scale.max(z.value.norm());
        }
        let factor = (-s * qf.ln()).exp();
        let value = factor * acc.total();
        let rounding = f64::EPSILON * scale * (q as f64).sqrt();
        Ok(LValue {
            d: ch.d(),
            s,
            value,
            method: LMethod::Hurwitz,
            est_abs_error: factor.norm() * (err + rounding),
        })
    }

    /// Smoothed approximate functional equation at an arbitrary `s`.
    pub fn afe(&self, ch: QuadChar, s: Complex64) -> Result<LValue> {
        let q = ch.modulus() as f64;
        let len_n = (self.afe_length_const * (q * (s.im.abs() + 1.0)).sqrt()).ceil();
        let cutoff_n = (AFE_EXPONENT_CUTOFF * q / PI).sqrt().ceil();
        let n_max = len_n.min(cutoff_n).max(1.0) as u64;
        let a1 = s / 2.0;
        let a2 = (Complex64::new(1.0, 0.0) - s) / 2.0;
        let mut acc = ComplexNeumaier::new();
        let mut abs_mass = Neumaier::new();
        for n in 1..=n_max {
            let c = ch.chi(n);
            if c == 0 {
                continue;
            }
            let x = PI * (n * n) as f64 / q;
            let term = scaled_upper_incomplete_gamma(a1, x) + scaled_upper_incomplete_gamma(a2, x);
            acc.add(term * c as f64);
            abs_mass.add(term.norm());
        }
        let norm = ((s / 2.0) * (q / PI).ln()).exp() * gamma(a1);
        if norm.norm() == 0.0 || !norm.norm().is_finite() {
            return Err(QdlError::Numerical(format!("Γ(s/2) normaliser degenerate at s = {s}")));
        }
        let value = acc.total() / norm;
        let x_tail = PI * ((n_max + 1) * (n_max + 1)) as f64 / q;
        let tail = 2.0 * (-x_tail).exp() * (1.0 + 1.0 / x_tail);
        let est_abs_error = (tail + 64.0 * f64::EPSILON * abs_mass.total()) / norm.norm();
        Ok(LValue {
            d: ch.d(),
            s,
            value,
            method: LMethod::Afe,
            est_abs_error,
        })
    }

    /// Routed evaluation: Hurwitz up to the crossover modulus, AFE above.
    pub fn value(&self, ch: QuadChar, s: Complex64) -> Result<LValue> {
        if ch.modulus() <= self.crossover_modulus {
            self.hurwitz(ch, s)
        } else {
            self.afe(ch, s)
        }
    }

    /// `Λ(s) = (q/π)^{s/2} Γ(s/2) L(s)` via the Hurwitz route.
    pub fn completed_hurwitz(&self, ch: QuadChar, s: Complex64) -> Result<Complex64> {
        let q = ch.modulus() as f64;
        let l = self.hurwitz(ch, s)?.value;
        Ok(((s / 2.0) * (q / PI).ln()).exp() * gamma(s / 2.0) * l)
    }

    /// `|L(σ + it_j)|` for every `d` in `ds` and every shift; row-major by `d`.
    pub fn abs_values_family(&self, ds: &[u64], sigma: f64, shifts: &[f64]) -> Result<Vec<Vec<f64>>> {
        let rows = det_map(ds, |&d| -> Result<Vec<f64>> {
            let ch = QuadChar::new(d)?;
            shifts
                .iter()
                .map(|&t| self.value(ch, Complex64::new(sigma, t)).map(|v| v.value.norm()))
                .collect()
        });
        rows.into_iter().collect()
    }
}

pub fn l_value_hurwitz(ch: QuadChar, s: Complex64) -> Result<LValue> {
    LEvaluator::default().hurwitz(ch, s)
}

/// `L(1/2 + it, χ)` by the AFE route.
pub fn l_value_afe(ch: QuadChar, t: f64) -> Result<LValue> {
    LEvaluator::default().afe(ch, Complex64::new(0.5, t))
}

pub const FUNCTIONAL_EQUATION_FLOOR: f64 = 1e-300;

/// `|Λ(s) − Λ(1−s)| / max(|Λ(s)|, floor)`; both sides by the Hurwitz route.
pub fn functional_equation_residual(ch: QuadChar, s: Complex64) -> Result<f64> {
    let ev = LEvaluator::default();
    let lhs = ev.completed_hurwitz(ch, s)?;
    let rhs = ev.completed_hurwitz(ch, Complex64::new(1.0, 0.0) - s)?;
    Ok((lhs - rhs).norm() / lhs.norm().max(FUNCTIONAL_EQUATION_FLOOR))
}

/// `h(n) = (1/2) Re Σ_m a_m n^{−i t_m} = (1/2) Σ_m a_m cos(t_m log n)`.
pub fn h_of_n(n: u64, cfg: &ShiftConfig) -> f64 {
    h_of_log(( n as f64).ln(), cfg)
}

pub(crate) fn h_of_log(log_n: f64, cfg: &ShiftConfig) -> f64 {
    0.5 * cfg
        .a_vec
        .iter()
        .zip(&cfg.t_vec)
        .map(|(a, t)| a * (t * log_n).cos())
        .sum::<f64>()
}

/// `log⁺ t = max(0, log |t|)`, with `log⁺ 0 = 0`.
pub fn log_plus(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t.abs().ln().max(0.0)
    }
}

/// Exponent `max(σ − 1/2, 1/log x)` shared by the log-L bounds.
pub fn shift_exponent(sigma: f64, x: f64) -> f64 {
    (sigma - 0.5).max(1.0 / x.ln())
}

/// Explicit part of the conditional upper bound for `log |L(σ + it, χ)|`:
///
/// `Re Σ_{n ≤ x} χ(n) Λ(n) / (n^{1/2 + max(σ−1/2, 1/log x) + it} log n) · log(x/n)/log x
///   + (log q + log⁺ t)/log x`.
///
/// The `O(1/log x)` term is not included.
pub fn log_l_upper_bound(ch: QuadChar, sigma: f64, t: f64, x: f64, table: &PrimeTable) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(QdlError::InvalidArgument(format!("x must be >= 2, got {x}")));
    }
    if !(sigma >= 0.5) {
        return Err(QdlError::InvalidArgument(format!("sigma must be >= 1/2, got {sigma}")));
    }
    let log_x = x.ln();
    let expo = 0.5 + shift_exponent(sigma, x);
    let mut acc = Neumaier::new();
    for &p in table.primes_upto(x)? {
        let c = ch.chi(p as u64);
        if c == 0 {
            continue;
        }
        let log_p = (p as f64).ln();
        let mut k = 1u32;
        let mut log_n = log_p;
        let mut sign = c as f64;
        // Λ(p^k)/log(p^k) = 1/k
        while log_n <= log_x + 1e-12 {
            let term = sign / k as f64 * (-expo * log_n).exp() * (t * log_n).cos() * (log_x - log_n) / log_x;
            acc.add(term);
            k += 1;
            log_n += log_p;
            sign *= c as f64;
        }
    }
    let q = ch.modulus() as f64;
    Ok(acc.total() + (q.ln() + log_plus(t)) / log_x)
}

/// The pieces of the shifted log-L inequality for one character.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Prop25Terms {
    /// `Σ_m a_m log |A(d) L(σ + i t_m)|`
    pub lhs: f64,
    /// `2 Σ_{p ≤ x} h(p) χ(p) p^{−1/2−δ} log(x/p)/log x`
    pub prime_sum: f64,
    /// `Σ_{p ≤ √x} h(p²) p^{−1−2δ}`
    pub square_sum: f64,
    /// `(Q+1) a log X / log x`
    pub log_term: f64,
}

impl Prop25Terms {
    pub fn rhs(&self) -> f64 {
        self.prime_sum + self.square_sum + self.log_term
    }

    pub fn margin(&self) -> f64 {
        self.rhs() - self.lhs
    }
}

pub fn prop25_terms(
    ch: QuadChar,
    cfg: &ShiftConfig,
    x: f64,
    big_x: f64,
    table: &PrimeTable,
    lev: &LEvaluator,
) -> Result<Prop25Terms> {
    if !(x >= 2.0) {
        return Err(QdlError::InvalidArgument(format!("x must be >= 2, got {x}")));
    }
    if !(big_x > 1.0) {
        return Err(QdlError::InvalidArgument(format!("X must exceed 1, got {big_x}")));
    }
    cfg.check_shifts(big_x)?;
    let log_x = x.ln();
    let delta = shift_exponent(cfg.sigma, x);
    let a_d = weight_a(ch.d())?;

    let mut lhs = Neumaier::new();
    for (&a, &t) in cfg.a_vec.iter().zip(&cfg.t_vec) {
        if a == 0.0 {
            continue;
        }
        let l = lev.value(ch, Complex64::new(cfg.sigma, t))?.value.norm();
        lhs.add(a * (a_d * l).ln());
    }

    let mut prime_sum = Neumaier::new();
    let mut square_sum = Neumaier::new();
    let sqrt_x = x.sqrt();
    for &p in table.primes_upto(x)? {
        let pf = p as f64;
        let log_p = pf.ln();
        let c = ch.chi(p as u64);
        if c != 0 {
            prime_sum.add(
                2.0 * h_of_log(log_p, cfg) * c as f64 * (-(0.5 + delta) * log_p).exp() * (log_x - log_p) / log_x,
            );
        }
        if pf <= sqrt_x {
            square_sum.add(h_of_log(2.0 * log_p, cfg) * (-(1.0 + 2.0 * delta) * log_p).exp());
        }
    }
    Ok(Prop25Terms {
        lhs: lhs.total(),
        prime_sum: prime_sum.total(),
        square_sum: square_sum.total(),
        log_term: (cfg.cap_q + 1.0) * cfg.a_total() * big_x.ln() / log_x,
    })
}

/// RHS − LHS of the shifted log-L inequality, O(1) term excluded.
pub fn prop25_margin(ch: QuadChar, cfg: &ShiftConfig, x: f64, big_x: f64, table: &PrimeTable) -> Result<f64> {
    Ok(prop25_terms(ch, cfg, x, big_x, table, &LEvaluator::default())?.margin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve_squarefree_odd;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    /// Σ_{n ≤ N} χ(n)/n² with the tail bounded by Σ_{n>N} 1/n² < 1/N; the
    /// partial sum is averaged over a full period to kill the leading tail.
    fn direct_series_s2(ch: QuadChar, n: u64) -> f64 {
        let mut acc = Neumaier::new();
        for k in (1..=n).rev() {
            let v = ch.chi(k);
            if v != 0 {
                acc.add(v as f64 / (k as f64 * k as f64));
            }
        }
        acc.total()
    }

    #[test]
    fn hurwitz_route_matches_direct_series_at_two() {
        for d in [1u64, 3, 5] {
            let ch = QuadChar::new(d).unwrap();
            let q = ch.modulus();
            // stop at a multiple of q so the tail is O(q/N²)
            let n = (1_000_000 / q) * q;
            let direct = direct_series_s2(ch, n);
            let tail_bound = (q as f64) / (n as f64 * n as f64);
            let l = l_value_hurwitz(ch, c(2.0, 0.0)).unwrap();
            assert!((l.value.re - direct).abs() < 1e-10 + tail_bound, "d={d}");
            assert!(l.value.im.abs() < 1e-15);
        }
    }

    #[test]
    fn hurwitz_real_on_real_axis_and_reflects() {
        let l = l_value_hurwitz(QuadChar::new(1).unwrap(), c(0.5, 0.0)).unwrap();
        assert!(l.value.im.abs() <= 1e-12);
        let ch = QuadChar::new(3).unwrap();
        let up = l_value_hurwitz(ch, c(0.5, 5.0)).unwrap().value;
        let down = l_value_hurwitz(ch, c(0.5, -5.0)).unwrap().value;
        assert!((up - down.conj()).norm() < 1e-12);
    }

    #[test]
    fn hurwitz_route_refuses_large_modulus() {
        let ch = QuadChar::new(30_001).unwrap();
        assert!(matches!(
            l_value_hurwitz(ch, c(0.5, 0.0)),
            Err(QdlError::ModulusTooLarge { .. })
        ));
    }

    #[test]
    fn known_central_value_chi8() {
        // L(1/2, χ_8) = 0.37369171291254730738... (mpmath, 25 digits)
        let l = l_value_hurwitz(QuadChar::new(1).unwrap(), c(0.5, 0.0)).unwrap();
        assert!((l.value.re - 0.373_691_712_912_547_3).abs() < 1e-12, "{}", l.value.re);
    }

    #[test]
    fn afe_matches_hurwitz_examples() {
        let a = l_value_afe(QuadChar::new(1).unwrap(), 0.0).unwrap();
        let h = l_value_hurwitz(QuadChar::new(1).unwrap(), c(0.5, 0.0)).unwrap();
        assert!(rel(a.value, h.value) < 1e-6);
        assert!(a.value.im.abs() <= 1e-8);
        let a = l_value_afe(QuadChar::new(5).unwrap(), 1.0).unwrap();
        let h = l_value_hurwitz(QuadChar::new(5).unwrap(), c(0.5, 1.0)).unwrap();
        assert!(rel(a.value, h.value) < 1e-6);
    }

    #[test]
    fn afe_matches_hurwitz_off_line() {
        let lev = LEvaluator::default();
        for d in [7u64, 33, 105] {
            let ch = QuadChar::new(d).unwrap();
            for s in [c(1.0, 0.0 + 1e-3), c(0.8, 3.0), c(1.3, -7.0)] {
                let a = lev.afe(ch, s).unwrap().value;
                let h = lev.hurwitz(ch, s).unwrap().value;
                assert!(rel(a, h) < 1e-9, "d={d} s={s}");
            }
        }
    }

    #[test]
    fn routes_agree_on_sample_grid() {
        let lev = LEvaluator::default();
        for d in sieve_squarefree_odd(500).into_iter().step_by(7) {
            let ch = QuadChar::new(d).unwrap();
            for t in [0.0, 0.5, 3.0, 11.0, 20.0] {
                let s = c(0.5, t);
                let a = lev.afe(ch, s).unwrap();
                let h = lev.hurwitz(ch, s).unwrap();
                assert!(rel(a.value, h.value) <= 1e-6, "d={d} t={t}: {} vs {}", a.value, h.value);
                assert!((a.value - h.value).norm() <= 10.0 * (a.est_abs_error + h.est_abs_error) + 1e-12);
            }
        }
    }

    #[test]
    fn functional_equation_examples() {
        assert_eq!(functional_equation_residual(QuadChar::new(1).unwrap(), c(0.5, 0.0)).unwrap(), 0.0);
        assert!(functional_equation_residual(QuadChar::new(3).unwrap(), c(0.5, 2.0)).unwrap() <= 1e-8);
        assert!(functional_equation_residual(QuadChar::new(15).unwrap(), c(0.6, 1.0)).unwrap() <= 1e-8);
    }

    #[test]
    fn h_of_n_examples_and_bound() {
        let cfg = ShiftConfig::new(vec![0.7, 1.3], vec![2.0, -5.0]).unwrap();
        assert!((h_of_n(1, &cfg) - 1.0).abs() < 1e-15);
        let flat = ShiftConfig::new(vec![0.7, 1.3], vec![0.0, 0.0]).unwrap();
        for n in [2, 17, 1000] {
            assert!((h_of_n(n, &flat) - 1.0).abs() < 1e-15);
        }
        let one = ShiftConfig::new(vec![2.0], vec![PI / 2f64.ln()]).unwrap();
        assert!((h_of_n(2, &one) + 1.0).abs() < 1e-14);
        for n in 1..5000 {
            assert!(h_of_n(n, &cfg).abs() <= cfg.a_total() / 2.0 + 1e-15);
        }
    }

    #[test]
    fn shift_config_validation() {
        assert!(ShiftConfig::new(vec![1.0], vec![]).is_err());
        assert!(ShiftConfig::new(vec![], vec![]).is_err());
        assert!(ShiftConfig::new(vec![-1.0], vec![0.0]).is_err());
        assert!(ShiftConfig::with_params(vec![1.0], vec![0.0], 0.4, 1.0, 1.0).is_err());
        let cfg = ShiftConfig::new(vec![1.0, 2.5], vec![3.0, 200.0]).unwrap();
        assert_eq!(cfg.k(), 2);
        assert!((cfg.a_total() - 3.5).abs() < 1e-12);
        assert!(cfg.check_shifts(1000.0).is_ok());
        assert!(cfg.check_shifts(100.0).is_err());
    }

    #[test]
    fn log_plus_conventions() {
        assert_eq!(log_plus(0.0), 0.0);
        assert_eq!(log_plus(0.5), 0.0);
        assert_eq!(log_plus(-0.5), 0.0);
        assert!((log_plus(-std::f64::consts::E) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn log_l_bound_at_x_two_is_the_conductor_term() {
        let t = PrimeTable::new(100).unwrap();
        for d in [1u64, 3, 15] {
            let ch = QuadChar::new(d).unwrap();
            let v = log_l_upper_bound(ch, 0.5, 0.0, 2.0, &t).unwrap();
            assert!((v - (8.0 * d as f64).ln() / 2f64.ln()).abs() < 1e-14);
        }
    }

    #[test]
    fn log_l_bound_dominates_within_band() {
        let t = PrimeTable::new(10_000).unwrap();
        let ch = QuadChar::new(1).unwrap();
        let lhs = l_value_hurwitz(ch, c(0.5, 0.0)).unwrap().value.norm().ln();
        assert!(log_l_upper_bound(ch, 0.5, 0.0, 1e3, &t).unwrap() >= lhs - 5.0);
        let ch = QuadChar::new(3).unwrap();
        let lhs = l_value_hurwitz(ch, c(1.0 + 1e-9, 0.0)).unwrap().value.norm().ln();
        assert!(log_l_upper_bound(ch, 1.0, 0.0, 1e4, &t).unwrap() >= lhs - 5.0);
    }

    #[test]
    fn prop25_degenerate_exponents_vanish() {
        let t = PrimeTable::new(2000).unwrap();
        let ch = QuadChar::new(7).unwrap();
        let mut last = f64::INFINITY;
        for eps in [1e-2, 1e-4, 1e-6] {
            let cfg = ShiftConfig::new(vec![eps], vec![0.0]).unwrap();
            let m = prop25_margin(ch, &cfg, 1e3, 1e5, &t).unwrap();
            assert!(m.abs() < last);
            last = m.abs();
        }
        assert!(last < 1e-4);
    }

    #[test]
    fn prop25_second_moment_example_is_finite() {
        let t = PrimeTable::new(2000).unwrap();
        let cfg = ShiftConfig::new(vec![2.0], vec![0.0]).unwrap();
        let terms = prop25_terms(QuadChar::new(1).unwrap(), &cfg, 1e3, 1e5, &t, &LEvaluator::default()).unwrap();
        assert!(terms.margin().is_finite());
        assert!(terms.margin() > 0.0);
        assert!(QuadChar::new(105).is_ok());
        assert!(QuadChar::new(9).is_err());
    }
}
