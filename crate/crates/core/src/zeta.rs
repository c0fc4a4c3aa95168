//! Riemann and Hurwitz zeta functions by Euler–Maclaurin summation, and the
//! Mertens-type prime sums they are compared against.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::arith::PrimeTable;
use crate::error::{QdlError, Result};
use crate::special::gamma;
use crate::sum::{ComplexNeumaier, Neumaier};

/// Bernoulli numbers B_2, B_4, …, B_30.
const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

pub const POLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaEvaluator {
    /// Minimum number of directly summed terms before the Euler–Maclaurin tail.
    pub euler_maclaurin_terms: usize,
    /// Highest Bernoulli index in the correction (even, at most 30).
    pub bernoulli_order: usize,
    pub target_rel_error: f64,
}

impl Default for ZetaEvaluator {
    fn default() -> Self {
        Self {
            euler_maclaurin_terms: 64,
            bernoulli_order: 20,
            target_rel_error: 1e-12,
        }
    }
}

/// Value and a bound on the first omitted Euler–Maclaurin term.
#[derive(Debug, Clone, Copy)]
pub struct ZetaValue {
    pub value: Complex64,
    pub est_abs_error: f64,
}

impl ZetaEvaluator {
    pub fn new(euler_maclaurin_terms: usize, bernoulli_order: usize) -> Result<Self> {
        if bernoulli_order == 0 || bernoulli_order % 2 == 1 || bernoulli_order > 2 * BERNOULLI_EVEN.len() {
            return Err(QdlError::InvalidArgument(format!(
                "bernoulli_order must be even and in [2, 30], got {bernoulli_order}"
            )));
        }
        if euler_maclaurin_terms == 0 {
            return Err(QdlError::InvalidArgument("euler_maclaurin_terms must be positive".into()));
        }
        Ok(Self {
            euler_maclaurin_terms,
            bernoulli_order,
            ..Self::default()
        })
    }

    fn cutoff(&self, s: Complex64) -> usize {
        let needed = (s.norm() + self.bernoulli_order as f64).ceil() as usize;
        self.euler_maclaurin_terms.max(needed)
    }

    /// ζ(s, a) for 0 < a ≤ 1, Re(s) > −1, s ≠ 1.
    pub fn hurwitz(&self, s: Complex64, a: f64) -> Result<ZetaValue> {
        if !(a > 0.0 && a <= 1.0) {
            return Err(QdlError::InvalidArgument(format!("Hurwitz shift a = {a} not in (0, 1]")));
        }
        if !(s.re > -1.0) {
            return Err(QdlError::InvalidArgument(format!("Re(s) = {} must exceed -1", s.re)));
        }
        if (s - 1.0).norm() <= POLE_TOLERANCE {
            return Err(QdlError::Pole {
                re: s.re,
                im: s.im,
                tol: POLE_TOLERANCE,
            });
        }
        Ok(self.hurwitz_unchecked(s, a))
    }

    pub(crate) fn hurwitz_unchecked(&self, s: Complex64, a: f64) -> ZetaValue {
        let n_terms = self.cutoff(s);
        let mut acc = ComplexNeumaier::new();
        for n in 0..n_terms {
            acc.add((-s * (n as f64 + a).ln()).exp());
        }
        let big_n = n_terms as f64 + a;
        let ln_n = big_n.ln();
        let n_pow = (-s * ln_n).exp();
        acc.add(n_pow * big_n / (s - 1.0));
        acc.add(0.5 * n_pow);

        // Σ B_2k/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}
        let inv_n = 1.0 / big_n;
        let mut rising = s; // s(s+1)…(s+2k−2)
        let mut fact = 2.0; // (2k)!
        let mut npow = n_pow * inv_n; // N^{−s−2k+1}
        let mut last = 0.0;
        for k in 1..=self.bernoulli_order / 2 {
            let term = rising * npow * (BERNOULLI_EVEN[k - 1] / fact);
            acc.add(term);
            last = term.norm();
            rising *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
            fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
            npow *= inv_n * inv_n;
        }
        ZetaValue {
            value: acc.total(),
            est_abs_error: last,
        }
    }

    /// ζ(s) for Re(s) > 0, s ≠ 1.
    pub fn riemann(&self, s: Complex64) -> Result<Complex64> {
        if !(s.re > 0.0) {
            return Err(QdlError::InvalidArgument(format!(
                "riemann_zeta needs Re(s) > 0, got {}",
                s.re
            )));
        }
        Ok(self.hurwitz(s, 1.0)?.value)
    }
}

pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    ZetaEvaluator::default().riemann(s)
}

pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    Ok(ZetaEvaluator::default().hurwitz(s, a)?.value)
}

/// Relative residual of ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s).
pub fn riemann_functional_residual(zeta: &ZetaEvaluator, s: Complex64) -> Result<f64> {
    let lhs = zeta.riemann(s)?;
    let one_minus = Complex64::new(1.0, 0.0) - s;
    let rhs = (s * 2f64.ln()).exp()
        * ((s - 1.0) * PI.ln()).exp()
        * (PI * s / 2.0).sin()
        * gamma(one_minus)
        * zeta.riemann(one_minus)?;
    Ok((lhs - rhs).norm() / lhs.norm())
}

fn check_x(x: f64, table: &PrimeTable) -> Result<()> {
    if !(x >= 2.0) {
        return Err(QdlError::InvalidArgument(format!("prime sums need x >= 2, got {x}")));
    }
    table.check_real(x)
}

/// Σ_{p ≤ x} 1/p.
pub fn prime_sum_reciprocal(x: f64, table: &PrimeTable) -> Result<f64> {
    check_x(x, table)?;
    let mut acc = Neumaier::new();
    for &p in table.primes_upto(x)? {
        acc.add(1.0 / p as f64);
    }
    Ok(acc.total())
}

/// Σ_{p ≤ x} (log p)/p.
pub fn prime_sum_logp(x: f64, table: &PrimeTable) -> Result<f64> {
    check_x(x, table)?;
    let mut acc = Neumaier::new();
    for &p in table.primes_upto(x)? {
        let p = p as f64;
        acc.add(p.ln() / p);
    }
    Ok(acc.total())
}

/// Σ_{p ≤ x} cos(α log p)/p.
pub fn prime_sum_cos(x: f64, alpha: f64, table: &PrimeTable) -> Result<f64> {
    check_x(x, table)?;
    if !(alpha >= 0.0) {
        return Err(QdlError::InvalidArgument(format!("alpha must be >= 0, got {alpha}")));
    }
    let mut acc = Neumaier::new();
    for &p in table.primes_upto(x)? {
        let p = p as f64;
        acc.add((alpha * p.ln()).cos() / p);
    }
    Ok(acc.total())
}

/// log |ζ(1 + 1/log x + iα)|, the comparison value for [`prime_sum_cos`].
pub fn log_zeta_reference(x: f64, alpha: f64, zeta: &ZetaEvaluator) -> Result<f64> {
    if !(x > 1.0) {
        return Err(QdlError::InvalidArgument(format!("x must exceed 1, got {x}")));
    }
    Ok(zeta
        .riemann(Complex64::new(1.0 + 1.0 / x.ln(), alpha))?
        .norm()
        .ln())
}

/// Estimate of the Mertens constant: Σ_{p ≤ L} 1/p − log log L at the table limit.
pub fn mertens_b1_estimate(table: &PrimeTable) -> Result<f64> {
    let l = table.limit() as f64;
    Ok(prime_sum_reciprocal(l, table)? - l.ln().ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER_GAMMA_ORACLE_TERMS: usize = 2_000_000;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// γ from H_n − log n − 1/(2n) + 1/(12n²) − 1/(120 n⁴), independent of the zeta code.
    fn euler_gamma_oracle() -> f64 {
        let n = EULER_GAMMA_ORACLE_TERMS;
        let h: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
        let nf = n as f64;
        h - nf.ln() - 0.5 / nf + 1.0 / (12.0 * nf * nf) - 1.0 / (120.0 * nf.powi(4))
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let z = riemann_zeta(c(2.0, 0.0)).unwrap();
        assert!((z.re / (PI * PI / 6.0) - 1.0).abs() < 1e-12);
        assert_eq!(z.im, 0.0);
    }

    #[test]
    fn zeta_near_pole_matches_laurent() {
        let delta = 1e-3;
        let z = riemann_zeta(c(1.0 + delta, 0.0)).unwrap().re;
        let gamma_e = euler_gamma_oracle();
        assert!((z - (1.0 / delta + gamma_e)).abs() < 1e-3);
    }

    #[test]
    fn zeta_half_matches_fourfold_terms() {
        let base = riemann_zeta(c(0.5, 0.0)).unwrap();
        let fine = ZetaEvaluator::new(256, 20).unwrap().riemann(c(0.5, 0.0)).unwrap();
        assert!((base - fine).norm() < 1e-13);
        assert!((base.re + 1.460_354_508_809_586_8).abs() < 1e-13);
    }

    #[test]
    fn pole_and_domain_errors() {
        assert!(matches!(riemann_zeta(c(1.0, 0.0)), Err(QdlError::Pole { .. })));
        assert!(matches!(riemann_zeta(c(1.0 + 1e-13, 0.0)), Err(QdlError::Pole { .. })));
        assert!(riemann_zeta(c(1.0 + 1e-11, 0.0)).is_ok());
        assert!(matches!(hurwitz_zeta(c(2.0, 0.0), 0.0), Err(QdlError::InvalidArgument(_))));
        assert!(matches!(hurwitz_zeta(c(2.0, 0.0), 1.5), Err(QdlError::InvalidArgument(_))));
        assert!(ZetaEvaluator::new(64, 21).is_err());
    }

    #[test]
    fn hurwitz_reduces_and_scales() {
        let z = hurwitz_zeta(c(2.0, 0.0), 1.0).unwrap();
        assert!((z.re / (PI * PI / 6.0) - 1.0).abs() < 1e-12);
        let h = hurwitz_zeta(c(2.0, 0.0), 0.5).unwrap();
        assert!((h.re / (PI * PI / 2.0) - 1.0).abs() < 1e-12);
        for s in [c(2.0, 0.0), c(3.0, 0.0), c(0.5, 3.0)] {
            let lhs = hurwitz_zeta(s, 0.5).unwrap();
            let rhs = ((s * 2f64.ln()).exp() - 1.0) * riemann_zeta(s).unwrap();
            assert!((lhs - rhs).norm() / rhs.norm() < 1e-10, "s={s}");
        }
    }

    #[test]
    fn hurwitz_three_quarter_matches_brute_force() {
        // Σ_{n<N} (n+1/4)^{-3} + tail ∫_N^∞ (x+1/4)^{-3} dx with Euler–Maclaurin midpoint correction
        let n = 1_000_000usize;
        let mut acc = Neumaier::new();
        for k in (0..n).rev() {
            acc.add((k as f64 + 0.25).powi(-3));
        }
        let big = n as f64 + 0.25;
        let tail = 0.5 / (big * big) + 0.5 / big.powi(3);
        let brute = acc.total() + tail;
        let z = hurwitz_zeta(c(3.0, 0.0), 0.25).unwrap().re;
        assert!((z - brute).abs() < 1e-10, "{z} vs {brute}");
    }

    #[test]
    fn conjugate_symmetry_is_exact() {
        for s in [c(0.5, 14.1), c(0.3, 5.0), c(2.5, 100.0), c(1.0 + 1.0 / 9.0, 3.0)] {
            let a = riemann_zeta(s).unwrap();
            let b = riemann_zeta(s.conj()).unwrap();
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), (-b.im).to_bits());
        }
    }

    #[test]
    fn first_zero_is_a_zero() {
        let z = riemann_zeta(c(0.5, 14.134_725_141_734_694)).unwrap();
        assert!(z.norm() < 1e-12);
    }

    #[test]
    fn functional_equation_grid() {
        let zeta = ZetaEvaluator::default();
        for sigma in [0.3, 0.5, 0.7] {
            for t in [1.0, 5.0, 20.0] {
                let r = riemann_functional_residual(&zeta, c(sigma, t)).unwrap();
                assert!(r < 1e-8, "s={sigma}+{t}i residual {r}");
            }
        }
    }

    #[test]
    fn large_height_agrees_with_more_terms() {
        let s = c(0.5, 1000.0);
        let a = ZetaEvaluator::default().riemann(s).unwrap();
        let b = ZetaEvaluator::new(4000, 30).unwrap().riemann(s).unwrap();
        assert!((a - b).norm() / b.norm() < 1e-10);
    }

    #[test]
    fn prime_sum_small_examples() {
        let t = PrimeTable::new(1000).unwrap();
        assert_eq!(prime_sum_reciprocal(2.0, &t).unwrap(), 0.5);
        let v = prime_sum_reciprocal(10.0, &t).unwrap();
        assert!((v - (0.5 + 1.0 / 3.0 + 0.2 + 1.0 / 7.0)).abs() < 1e-15);
        assert!((prime_sum_logp(2.0, &t).unwrap() - 2f64.ln() / 2.0).abs() < 1e-16);
        let direct: f64 = [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
            .iter()
            .map(|&p| (p as f64).ln() / p as f64)
            .sum();
        assert!((prime_sum_logp(100.0, &t).unwrap() - direct).abs() < 1e-13);
        assert_eq!(prime_sum_cos(500.0, 0.0, &t).unwrap(), prime_sum_reciprocal(500.0, &t).unwrap());
        assert!(matches!(prime_sum_reciprocal(1001.0, &t), Err(QdlError::TableLimit { .. })));
        assert!(prime_sum_reciprocal(1.5, &t).is_err());
    }

    #[test]
    fn prime_sum_bands() {
        let t = PrimeTable::new(1_000_000).unwrap();
        let z = ZetaEvaluator::default();
        for x in [100.0, 1e3, 1e4, 1e5, 1e6] {
            assert!((prime_sum_logp(x, &t).unwrap() - f64::ln(x)).abs() <= 3.0);
        }
        let s = prime_sum_cos(1e3, 1.0, &t).unwrap();
        assert!((s - log_zeta_reference(1e3, 1.0, &z).unwrap()).abs() <= 3.0);
        let s = prime_sum_cos(1e5, 5.0, &t).unwrap();
        assert!((s - (1.0f64 / 5.0).ln()).abs() <= 4.0);
    }
}
