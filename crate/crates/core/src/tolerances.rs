//! Frozen tolerance bands. Reports embed this table and the acceptance
//! suite reads its thresholds from here.

use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Band {
    pub name: &'static str,
    pub value: f64,
    pub meaning: &'static str,
}

pub const JACOBI_ORACLE_MAX_N: u64 = 3000;
pub const D_SUM_MAIN_TERM_REL: f64 = 0.05;
pub const D_SUM_NONSQUARE_EXPONENT: f64 = 0.75;
pub const PRIME_COS_BAND: f64 = 3.0;
pub const FUNCEQ_RESIDUAL: f64 = 1e-8;
pub const HURWITZ_VS_SERIES: f64 = 1e-10;
pub const ENVELOPE_WINDOW: f64 = 10.0;
pub const JUTILA_FLAT_REL: f64 = 0.20;
pub const HARPER_S0_FRACTION: f64 = 0.5;

pub const BANDS: &[Band] = &[
    Band {
        name: "jacobi_oracle_max_n",
        value: JACOBI_ORACLE_MAX_N as f64,
        meaning: "exact Jacobi agreement for odd n up to this bound",
    },
    Band {
        name: "d_sum_main_term_rel",
        value: D_SUM_MAIN_TERM_REL,
        meaning: "|direct/main - 1| for square n",
    },
    Band {
        name: "d_sum_nonsquare_exponent",
        value: D_SUM_NONSQUARE_EXPONENT,
        meaning: "|direct| <= X^value for non-square n",
    },
    Band {
        name: "prime_cos_band",
        value: PRIME_COS_BAND,
        meaning: "|prime cosine sum - log|zeta|| bound",
    },
    Band {
        name: "funceq_residual",
        value: FUNCEQ_RESIDUAL,
        meaning: "relative functional-equation residual",
    },
    Band {
        name: "hurwitz_vs_series",
        value: HURWITZ_VS_SERIES,
        meaning: "L(2) Hurwitz route vs direct series",
    },
    Band {
        name: "envelope_window",
        value: ENVELOPE_WINDOW,
        meaning: "max/min of empirical/envelope across a scan",
    },
    Band {
        name: "jutila_flat_rel",
        value: JUTILA_FLAT_REL,
        meaning: "allowed relative rise of the normalised Jutila ratio per step",
    },
    Band {
        name: "harper_s0_fraction",
        value: HARPER_S0_FRACTION,
        meaning: "upper bound on the S(0) fraction",
    },
    Band {
        name: "richardson",
        value: crate::moments::RICHARDSON_TOLERANCE,
        meaning: "step vs half-step disagreement for integral moments",
    },
    Band {
        name: "euler_truncation",
        value: crate::charsums::EULER_TRUNCATION_TOLERANCE,
        meaning: "flag level for the corrected Euler-product residual",
    },
    Band {
        name: "mellin_stability",
        value: crate::charsums::smoothing::MELLIN_STABILITY,
        meaning: "quadrature disagreement that fails a Mellin transform",
    },
];
