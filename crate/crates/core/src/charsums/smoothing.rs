//! Compactly supported smooth weights and their Mellin transforms.
//!
//! Each weight is 0 outside its support, 1 on its plateau, and joins the two
//! with the C∞ transition `S(t) = ψ(t) / (ψ(t) + ψ(1−t))`, `ψ(t) = e^{−1/t}`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QdlError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SmoothingKind {
    BumpPhi,
    EdgePhiU,
    CustomW,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmoothingFunction {
    pub kind: SmoothingKind,
    pub support: (f64, f64),
    pub plateau: (f64, f64),
    pub u_param: Option<f64>,
    pub quadrature_nodes: usize,
}

pub const DEFAULT_QUADRATURE_NODES: usize = 4096;

/// Successive Mellin refinements must agree to this.
pub const MELLIN_STABILITY: f64 = 1e-10;

fn psi(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// C∞ step from 0 at `t ≤ 0` to 1 at `t ≥ 1`.
pub fn smooth_step(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = psi(t);
        a / (a + psi(1.0 - t))
    }
}

impl SmoothingFunction {
    /// Support `[1/4, 3/2]`, identically 1 on `[1/2, 1]`.
    pub fn bump_phi() -> Self {
        Self {
            kind: SmoothingKind::BumpPhi,
            support: (0.25, 1.5),
            plateau: (0.5, 1.0),
            u_param: None,
            quadrature_nodes: DEFAULT_QUADRATURE_NODES,
        }
    }

    /// Support `(0, 1)`, identically 1 on `(1/U, 1 − 1/U)`.
    pub fn edge_phi_u(u: f64) -> Result<Self> {
        if !(u >= 2.0 && u.is_finite()) {
            return Err(QdlError::InvalidArgument(format!("U must be >= 2, got {u}")));
        }
        Ok(Self {
            kind: SmoothingKind::EdgePhiU,
            support: (0.0, 1.0),
            plateau: (1.0 / u, 1.0 - 1.0 / u),
            u_param: Some(u),
            quadrature_nodes: DEFAULT_QUADRATURE_NODES,
        })
    }

    /// A weight with the given support and plateau, `0 ≤ lo < p_lo ≤ p_hi < hi`.
    pub fn custom_w(support: (f64, f64), plateau: (f64, f64)) -> Result<Self> {
        let (lo, hi) = support;
        let (pl, ph) = plateau;
        if !(lo >= 0.0 && lo < pl && pl <= ph && ph < hi && hi.is_finite()) {
            return Err(QdlError::InvalidArgument(format!(
                "need 0 <= support.0 < plateau.0 <= plateau.1 < support.1, got support {support:?} plateau {plateau:?}"
            )));
        }
        Ok(Self {
            kind: SmoothingKind::CustomW,
            support,
            plateau,
            u_param: None,
            quadrature_nodes: DEFAULT_QUADRATURE_NODES,
        })
    }

    pub fn with_quadrature_nodes(mut self, nodes: usize) -> Self {
        self.quadrature_nodes = nodes.max(8);
        self
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        let (lo, hi) = self.support;
        let (pl, ph) = self.plateau;
        if x <= lo || x >= hi {
            0.0
        } else if x < pl {
            smooth_step((x - lo) / (pl - lo))
        } else if x <= ph {
            1.0
        } else {
            smooth_step((hi - x) / (hi - ph))
        }
    }

    pub fn label(&self) -> String {
        match self.kind {
            SmoothingKind::BumpPhi => "bump_phi[1/4,3/2]".to_string(),
            SmoothingKind::EdgePhiU => format!("edge_phi_u(U={})", self.u_param.unwrap_or(f64::NAN)),
            SmoothingKind::CustomW => format!(
                "custom_w[{},{}|{},{}]",
                self.support.0, self.plateau.0, self.plateau.1, self.support.1
            ),
        }
    }

    fn edge_integral(&self, s: Complex64, a: f64, b: f64, tol: f64) -> Result<Complex64> {
        if b <= a {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let f = |x: f64| -> Complex64 {
            if x <= 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                self.eval(x) * ((s - 1.0) * x.ln()).exp()
            }
        };
        let panels = (self.quadrature_nodes / 64).max(1);
        let h = (b - a) / panels as f64;
        let mut total = Complex64::new(0.0, 0.0);
        for i in 0..panels {
            let lo = a + i as f64 * h;
            let hi = if i + 1 == panels { b } else { lo + h };
            total += adaptive_simpson(&f, lo, hi, tol / panels as f64, 48)?;
        }
        Ok(total)
    }

    fn mellin_at_tol(&self, s: Complex64, tol: f64) -> Result<Complex64> {
        let (lo, hi) = self.support;
        let (pl, ph) = self.plateau;
        let plateau = if s.norm() < 1e-14 {
            Complex64::new((ph / pl).ln(), 0.0)
        } else {
            ((s * ph.ln()).exp() - (s * pl.ln()).exp()) / s
        };
        Ok(plateau + self.edge_integral(s, lo, pl, tol)? + self.edge_integral(s, ph, hi, tol)?)
    }

    /// `f̂(s) = ∫_0^∞ f(x) x^{s−1} dx`.
    pub fn mellin_hat(&self, s: Complex64) -> Result<Complex64> {
        if !(s.re >= 0.5) {
            return Err(QdlError::InvalidArgument(format!(
                "Mellin transform evaluated only for Re(s) >= 1/2, got {}",
                s.re
            )));
        }
        let coarse = self.mellin_at_tol(s, 1e-11)?;
        let fine = self.mellin_at_tol(s, 1e-13)?;
        let diff = (coarse - fine).norm();
        if diff > MELLIN_STABILITY {
            return Err(QdlError::Quadrature(format!(
                "Mellin transform at s = {s} unstable: refinements differ by {diff:e}"
            )));
        }
        Ok(fine)
    }
}

pub fn mellin_hat(f: &SmoothingFunction, s: Complex64) -> Result<Complex64> {
    f.mellin_hat(s)
}

fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
    (fa + 4.0 * fm + fb) * (h / 6.0)
}

/// Adaptive Simpson quadrature of a complex integrand on `[a, b]`.
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(fa, fm, fb, b - a);
    recurse(f, a, b, fa, fm, fb, whole, tol, max_depth)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if delta.norm() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(QdlError::Quadrature(format!(
            "adaptive Simpson hit depth limit on [{a}, {b}] (|delta| = {:e})",
            delta.norm()
        )));
    }
    Ok(recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)?
        + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn smooth_step_shape() {
        assert_eq!(smooth_step(0.0), 0.0);
        assert_eq!(smooth_step(1.0), 1.0);
        assert!((smooth_step(0.5) - 0.5).abs() < 1e-15);
        for i in 1..100 {
            let t = i as f64 / 100.0;
            assert!((smooth_step(t) + smooth_step(1.0 - t) - 1.0).abs() < 1e-15);
            assert!(smooth_step(t) >= smooth_step(t - 0.01));
        }
    }

    #[test]
    fn weights_respect_support_and_plateau() {
        let fs = [
            SmoothingFunction::bump_phi(),
            SmoothingFunction::edge_phi_u(10.0).unwrap(),
            SmoothingFunction::custom_w((1.0, 3.0), (1.5, 2.0)).unwrap(),
        ];
        for f in fs {
            for i in 0..=4000 {
                let x = i as f64 / 1000.0;
                let v = f.eval(x);
                assert!((0.0..=1.0).contains(&v));
                if x <= f.support.0 || x >= f.support.1 {
                    assert_eq!(v, 0.0);
                }
                if x >= f.plateau.0 && x <= f.plateau.1 {
                    assert_eq!(v, 1.0);
                }
            }
        }
        assert!(SmoothingFunction::edge_phi_u(1.5).is_err());
        assert!(SmoothingFunction::custom_w((1.0, 2.0), (0.5, 1.5)).is_err());
    }

    #[test]
    fn mellin_examples() {
        let eps = 1e-3;
        let w = SmoothingFunction::custom_w((1.0 - eps, 2.0 + eps), (1.0, 2.0)).unwrap();
        let v = w.mellin_hat(c(1.0, 0.0)).unwrap();
        assert!((v.re - 1.0).abs() <= 2.0 * eps && v.im.abs() < 1e-15);

        let phi = SmoothingFunction::bump_phi();
        let v = phi.mellin_hat(c(1.0, 0.0)).unwrap();
        assert!(v.re >= 0.5 && v.re <= 1.25);
        // symmetric transitions: each edge contributes half its width
        assert!((v.re - 0.875).abs() < 1e-10, "{}", v.re);

        let hi = phi.mellin_hat(c(0.5, 100.0)).unwrap();
        assert!(hi.norm() <= 1e-4, "{}", hi.norm());
    }

    #[test]
    fn mellin_matches_brute_midpoint_rule() {
        let phi = SmoothingFunction::bump_phi();
        for s in [c(1.0, 0.0), c(0.5, 3.0), c(2.0, -7.0)] {
            let n = 400_000;
            let (a, b) = phi.support;
            let h = (b - a) / n as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                let x = a + (i as f64 + 0.5) * h;
                acc += phi.eval(x) * ((s - 1.0) * x.ln()).exp() * h;
            }
            let v = phi.mellin_hat(s).unwrap();
            assert!((v - acc).norm() < 1e-9, "s={s}");
        }
    }

    #[test]
    fn mellin_rejects_left_half_plane() {
        assert!(SmoothingFunction::bump_phi().mellin_hat(c(0.25, 0.0)).is_err());
    }

    #[test]
    fn edge_phi_u_mass() {
        let f = SmoothingFunction::edge_phi_u(50.0).unwrap();
        let v = f.mellin_hat(c(1.0, 0.0)).unwrap();
        // plateau length 1 − 2/U plus half of each edge
        assert!((v.re - (1.0 - 1.0 / 50.0)).abs() < 1e-10);
    }
}
