//! Harper-style decomposition of the family: the `α_j` schedule, truncated
//! exponentials, the Dirichlet polynomials `M_{l,j}(d)` and the exceptional
//! sets `S(0), …, S(J)`.

use serde::Serialize;

use crate::arith::{sieve_squarefree_odd, PrimeTable, QuadChar};
use crate::error::{QdlError, Result};
use crate::lfunc::{h_of_log, shift_exponent, ShiftConfig};
use crate::sum::{det_map, Neumaier};

/// Thresholds are `ℓ_m / SET_THRESHOLD_DIVISOR`.
pub const SET_THRESHOLD_DIVISOR: f64 = 1e3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarperSchedule {
    #[serde(rename = "X")]
    pub big_x: f64,
    pub const_m: u32,
    pub const_b: f64,
    /// `α_0 = 0, α_1, …, α_J`
    pub alphas: Vec<f64>,
    pub cap_j: usize,
    /// `ℓ_1, …, ℓ_J` (index `j − 1`)
    pub ells: Vec<u64>,
    /// `P_j = (X^{α_{j−1}}, X^{α_j}]` (index `j − 1`)
    pub ranges: Vec<(f64, f64)>,
}

/// `α_0 = 0`, `α_j = 20^{j−1}/(log log X)²`, `J = 1 + max{j ≥ 0 : α_j ≤ 10^{−M}}`,
/// `ℓ_j = 2⌈e^B α_j^{−3/4}⌉`.
pub fn build_schedule(big_x: f64, const_m: u32, const_b: f64) -> Result<HarperSchedule> {
    if !(big_x.is_finite() && big_x > 1.0) {
        return Err(QdlError::InvalidArgument(format!("X must be finite and > 1, got {big_x}")));
    }
    if const_m == 0 || !(const_b >= 0.0 && const_b.is_finite()) {
        return Err(QdlError::InvalidArgument(format!(
            "need M >= 1 and B >= 0, got M = {const_m}, B = {const_b}"
        )));
    }
    let lnln = big_x.ln().ln();
    if !(lnln > 1.0) {
        return Err(QdlError::DegenerateSchedule(format!(
            "log log X = {lnln} must exceed 1 (X = {big_x})"
        )));
    }
    let alpha = |j: usize| 20f64.powi(j as i32 - 1) / (lnln * lnln);
    let threshold = 10f64.powi(-(const_m as i32));
    let mut max_j = 0;
    while alpha(max_j + 1) <= threshold {
        max_j += 1;
    }
    let cap_j = max_j + 1;
    let alphas: Vec<f64> = std::iter::once(0.0).chain((1..=cap_j).map(alpha)).collect();
    let eb = const_b.exp();
    let ells: Vec<u64> = alphas[1..].iter().map(|a| 2 * (eb * a.powf(-0.75)).ceil() as u64).collect();
    let ranges: Vec<(f64, f64)> = alphas.windows(2).map(|w| (big_x.powf(w[0]), big_x.powf(w[1]))).collect();

    let sched = HarperSchedule {
        big_x,
        const_m,
        const_b,
        alphas,
        cap_j,
        ells,
        ranges,
    };
    sched.verify()?;
    Ok(sched)
}

impl HarperSchedule {
    fn verify(&self) -> Result<()> {
        let bad = |what: &str| Err(QdlError::DegenerateSchedule(format!("{what} (schedule {self:?})")));
        if self.alphas[1..].windows(2).any(|w| !(w[0] < w[1])) {
            return bad("alphas not strictly increasing");
        }
        if self.ells.iter().any(|&l| l < 2 || l % 2 != 0) {
            return bad("ell not even and >= 2");
        }
        if self.ells.windows(2).any(|w| !(w[0] > w[1])) {
            return bad("ells not strictly decreasing");
        }
        if self.ranges.windows(2).any(|w| w[0].1 != w[1].0) {
            return bad("prime ranges do not tile");
        }
        Ok(())
    }

    /// `X^{α_j}`
    pub fn x_alpha(&self, j: usize) -> f64 {
        self.big_x.powf(self.alphas[j])
    }

    /// Largest prime the schedule touches, `X^{α_J}`.
    pub fn prime_reach(&self) -> f64 {
        self.x_alpha(self.cap_j)
    }

    pub fn threshold(&self, m: usize) -> f64 {
        self.ells[m - 1] as f64 / SET_THRESHOLD_DIVISOR
    }
}

/// `E_ℓ(x) = Σ_{j ≤ ℓ} x^j / j!`, Horner form.
pub fn truncated_exp(ell: u32, x: f64) -> f64 {
    let mut acc = 1.0;
    for j in (1..=ell).rev() {
        acc = 1.0 + acc * x / j as f64;
    }
    acc
}

fn check_indices(l: usize, j: usize, sched: &HarperSchedule) -> Result<()> {
    if !(1 <= l && l <= j && j <= sched.cap_j) {
        return Err(QdlError::InvalidArgument(format!(
            "need 1 <= l <= j <= J = {}, got l = {l}, j = {j}",
            sched.cap_j
        )));
    }
    Ok(())
}

fn check_a(cfg: &ShiftConfig) -> Result<f64> {
    let a = cfg.a_total();
    if !(a > 0.0) {
        return Err(QdlError::InvalidArgument("total exponent a must be positive".into()));
    }
    Ok(a)
}

/// `(p, h(p,σ,x) s(p,x)/√p)` for `p ∈ P_l`, `x = X^{α_j}`.
fn weights(l: usize, j: usize, cfg: &ShiftConfig, sched: &HarperSchedule, table: &PrimeTable) -> Result<Vec<(u64, f64)>> {
    check_indices(l, j, sched)?;
    let a = check_a(cfg)?;
    let (lo, hi) = sched.ranges[l - 1];
    let x = sched.x_alpha(j);
    let log_x = x.ln();
    let delta = shift_exponent(cfg.sigma, x);
    Ok(table
        .primes_in(lo, hi)?
        .iter()
        .map(|&p| {
            let log_p = (p as f64).ln();
            let h = 2.0 * h_of_log(log_p, cfg) / a * (-delta * log_p).exp();
            let s = (log_x - log_p) / log_x;
            (p as u64, h * s * (-0.5 * log_p).exp())
        })
        .collect())
}

/// `M_{l,j}(d) = Σ_{p ∈ P_l} h(p,σ,X^{α_j}) χ(p) p^{−1/2} s(p, X^{α_j})`.
pub fn m_lj(
    ch: QuadChar,
    l: usize,
    j: usize,
    cfg: &ShiftConfig,
    sched: &HarperSchedule,
    table: &PrimeTable,
) -> Result<f64> {
    Ok(weights(l, j, cfg, sched, table)?
        .iter()
        .map(|&(p, w)| ch.chi(p) as f64 * w)
        .collect::<Neumaier>()
        .total())
}

/// `h(p, σ, x) = 2h(p) / (a p^{max(σ−1/2, 1/log x)})`.
pub fn h_sigma(p: u64, cfg: &ShiftConfig, x: f64) -> Result<f64> {
    let a = check_a(cfg)?;
    let log_p = (p as f64).ln();
    Ok(2.0 * h_of_log(log_p, cfg) / a * (-shift_exponent(cfg.sigma, x) * log_p).exp())
}

/// `Σ_{p ≤ X^{α_j/2}} h₁(p, σ, X^{α_j}) / p` with `h₁(p,σ,x) = 4h(p²) / (a² p^{2max(σ−1/2, 1/log x)})`.
pub fn h1_companion_sum(j: usize, cfg: &ShiftConfig, sched: &HarperSchedule, table: &PrimeTable) -> Result<f64> {
    check_indices(1, j, sched)?;
    let a = check_a(cfg)?;
    let x = sched.x_alpha(j);
    let delta = shift_exponent(cfg.sigma, x);
    Ok(table
        .primes_upto(x.sqrt())?
        .iter()
        .map(|&p| {
            let log_p = (p as f64).ln();
            4.0 * h_of_log(2.0 * log_p, cfg) / (a * a) * (-(1.0 + 2.0 * delta) * log_p).exp()
        })
        .collect::<Neumaier>()
        .total())
}

/// Precomputed `M_{m,l}` weights for all `1 ≤ m ≤ l ≤ J`.
#[derive(Debug, Clone)]
pub struct HarperKernel {
    cap_j: usize,
    a: f64,
    thresholds: Vec<f64>,
    /// `w[m−1][l−m]`
    w: Vec<Vec<Vec<(u64, f64)>>>,
}

impl HarperKernel {
    pub fn new(cfg: &ShiftConfig, sched: &HarperSchedule, table: &PrimeTable) -> Result<Self> {
        let a = check_a(cfg)?;
        let cap_j = sched.cap_j;
        let mut w = Vec::with_capacity(cap_j);
        for m in 1..=cap_j {
            w.push((m..=cap_j).map(|l| weights(m, l, cfg, sched, table)).collect::<Result<Vec<_>>>()?);
        }
        Ok(Self {
            cap_j,
            a,
            thresholds: (1..=cap_j).map(|m| sched.threshold(m)).collect(),
            w,
        })
    }

    /// `|a M_{m,l}(d)|` for `1 ≤ m ≤ l ≤ J`.
    pub fn scaled(&self, ch: QuadChar, m: usize, l: usize) -> f64 {
        let s: Neumaier = self.w[m - 1][l - m].iter().map(|&(p, w)| ch.chi(p) as f64 * w).collect();
        (self.a * s.total()).abs()
    }

    fn exceeds(&self, ch: QuadChar, m: usize, l: usize) -> bool {
        self.scaled(ch, m, l) > self.thresholds[m - 1]
    }

    /// Literal membership of `d` in `S(0), …, S(J)`.
    pub fn memberships(&self, ch: QuadChar) -> Vec<bool> {
        let j_cap = self.cap_j;
        let mut out = Vec::with_capacity(j_cap + 1);
        out.push((1..=j_cap).any(|l| self.exceeds(ch, 1, l)));
        for j in 1..j_cap {
            let below = (1..=j).all(|m| (m..=j_cap).all(|l| !self.exceeds(ch, m, l)));
            let next = (j + 1..=j_cap).any(|l| self.exceeds(ch, j + 1, l));
            out.push(below && next);
        }
        out.push((1..=j_cap).all(|m| !self.exceeds(ch, m, j_cap)));
        out
    }

    /// First `j` with `|a M_{j+1,l}(d)| > ℓ_{j+1}/10³` for some `l ≥ j+1`, else `J`.
    pub fn classify(&self, ch: QuadChar) -> usize {
        (0..self.cap_j)
            .find(|&j| (j + 1..=self.cap_j).any(|l| self.exceeds(ch, j + 1, l)))
            .unwrap_or(self.cap_j)
    }
}

/// Class of `d` in `0..=J`. When the literal sets overlap the smallest index wins.
pub fn classify_d(ch: QuadChar, cfg: &ShiftConfig, sched: &HarperSchedule, table: &PrimeTable) -> Result<usize> {
    Ok(HarperKernel::new(cfg, sched, table)?.classify(ch))
}

#[derive(Debug, Clone, Serialize)]
pub struct HarperCensus {
    pub schedule: HarperSchedule,
    pub cfg: ShiftConfig,
    /// `counts[j]` = number of `d ≤ X` in class `j`
    pub counts: Vec<u64>,
    pub total: u64,
    /// `d` whose literal membership count is not exactly one
    pub partition_violations: u64,
}

impl HarperCensus {
    pub fn fraction(&self, j: usize) -> f64 {
        self.counts[j] as f64 / self.total as f64
    }
}

/// Classifies every odd square-free `d ≤ X`.
pub fn census(cfg: &ShiftConfig, sched: &HarperSchedule, table: &PrimeTable) -> Result<HarperCensus> {
    let kernel = HarperKernel::new(cfg, sched, table)?;
    let ds = sieve_squarefree_odd(sched.big_x.floor() as u64);
    let per_d = det_map(&ds, |&d| {
        let ch = QuadChar::new(d).expect("sieved d is odd square-free");
        let memberships = kernel.memberships(ch).iter().filter(|&&b| b).count();
        (kernel.classify(ch), memberships == 1)
    });
    let mut counts = vec![0u64; sched.cap_j + 1];
    let mut violations = 0;
    for (class, ok) in per_d {
        counts[class] += 1;
        violations += (!ok) as u64;
    }
    Ok(HarperCensus {
        schedule: sched.clone(),
        cfg: cfg.clone(),
        counts,
        total: ds.len() as u64,
        partition_violations: violations,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RangeSumCheck {
    /// `Σ_{p ∈ P_1} 1/p` against `log log X`
    pub first: f64,
    pub first_bound: f64,
    /// `Σ_{p ∈ P_{j+1}} 1/p` for `1 ≤ j ≤ J−1`, each against 10
    pub later: Vec<f64>,
    pub holds: bool,
}

pub fn range_sum_check(sched: &HarperSchedule, table: &PrimeTable) -> Result<RangeSumCheck> {
    let sum = |(lo, hi): (f64, f64)| -> Result<f64> {
        Ok(table.primes_in(lo, hi)?.iter().map(|&p| 1.0 / p as f64).collect::<Neumaier>().total())
    };
    let first = sum(sched.ranges[0])?;
    let first_bound = sched.big_x.ln().ln();
    let later = sched.ranges[1..].iter().map(|&r| sum(r)).collect::<Result<Vec<_>>>()?;
    let holds = first <= first_bound && later.iter().all(|&s| s <= 10.0);
    Ok(RangeSumCheck {
        first,
        first_bound,
        later,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn desk_cfg() -> ShiftConfig {
        ShiftConfig::new(vec![2.0], vec![0.0]).unwrap()
    }

    #[test]
    fn schedule_examples() {
        // log log X = 2
        let x = 2f64.exp().exp();
        let s = build_schedule(x, 1, 0.0).unwrap();
        assert_eq!(s.alphas, vec![0.0, 0.25]);
        assert_eq!(s.cap_j, 1);
        let s = build_schedule(1e300, 1, 0.0).unwrap();
        assert_eq!(s.cap_j, 2);
        assert!((s.alphas[1] - 0.0234).abs() < 1e-4 && (s.alphas[2] - 0.467).abs() < 1e-3);
        assert!(s.ells.iter().all(|l| l % 2 == 0));
        assert!(s.ells[0] > s.ells[1]);
        assert!(matches!(build_schedule(10.0, 1, 0.0), Err(QdlError::DegenerateSchedule(_))));
        assert!(build_schedule(1e4, 0, 0.0).is_err());
    }

    #[test]
    fn desk_schedule_at_ten_thousand() {
        let s = build_schedule(1e4, 1, 0.0).unwrap();
        assert_eq!(s.cap_j, 1);
        // α₁ = 1/(log log 10⁴)² ≈ 0.2030, ℓ₁ = 2⌈α₁^{−3/4}⌉ = 8
        assert!((s.alphas[1] - 0.20285).abs() < 1e-4);
        assert_eq!(s.ells, vec![8]);
        assert_eq!(s.ranges[0].0, 1.0);
    }

    #[test]
    fn truncated_exp_examples() {
        for x in [-3.0, 0.0, 1.0, 7.5] {
            assert_eq!(truncated_exp(0, x), 1.0);
        }
        assert_eq!(truncated_exp(2, 1.0), 2.5);
        let fact = |n: u32| (1..=n).map(|i| i as f64).product::<f64>();
        for x in [-2.0f64, 0.5, 3.0] {
            for ell in [4u32, 8] {
                let bound = x.abs().powi(ell as i32 + 1) / fact(ell + 1) * x.abs().exp();
                assert!((truncated_exp(ell, x) - x.exp()).abs() <= bound);
            }
        }
    }

    #[test]
    fn m_lj_matches_direct_loop() {
        let table = PrimeTable::primes_only(100_000).unwrap();
        let sched = build_schedule(1e300, 1, 0.0).unwrap();
        let cfg = ShiftConfig::new(vec![1.5], vec![0.0]).unwrap();
        // the first range is far beyond the table here; use a desk schedule instead
        assert!(m_lj(QuadChar::new(3).unwrap(), 1, 1, &cfg, &sched, &table).is_err());

        let sched = build_schedule(1e12, 1, 0.0).unwrap();
        let x = sched.x_alpha(1);
        let log_x = x.ln();
        let delta = (1.0 / log_x).max(0.0);
        for d in [1u64, 3, 7, 15, 101] {
            let ch = QuadChar::new(d).unwrap();
            let mut want = 0.0;
            for p in 3..=(x.floor() as u64) {
                if !(2..p).take_while(|q| q * q <= p).all(|q| p % q != 0) {
                    continue;
                }
                let pf = p as f64;
                want += crate::arith::jacobi_symbol(8 * d as i64, p).unwrap() as f64
                    * pf.powf(-0.5 - delta)
                    * (x / pf).ln()
                    / log_x;
            }
            let got = m_lj(ch, 1, 1, &cfg, &sched, &table).unwrap();
            assert!((got - want).abs() < 1e-12, "d={d}: {got} vs {want}");
            let bound: f64 = table.primes_upto(x).unwrap().iter().map(|&p| (p as f64).powf(-0.5)).sum();
            assert!(got.abs() <= bound);
        }
        assert!(m_lj(QuadChar::new(1).unwrap(), 2, 1, &cfg, &sched, &table).is_err());
    }

    #[test]
    fn empty_range_gives_zero() {
        let table = PrimeTable::primes_only(1000).unwrap();
        let mut sched = build_schedule(1e4, 1, 0.0).unwrap();
        // (7, 10] holds no primes
        sched.ranges[0] = (7.0, 10.0);
        for d in [1u64, 3, 5] {
            assert_eq!(m_lj(QuadChar::new(d).unwrap(), 1, 1, &desk_cfg(), &sched, &table).unwrap(), 0.0);
        }
    }

    #[test]
    fn census_partitions_desk_family() {
        let sched = build_schedule(1e4, 1, 0.0).unwrap();
        let table = PrimeTable::primes_only(1000).unwrap();
        let c = census(&desk_cfg(), &sched, &table).unwrap();
        assert_eq!(c.counts.iter().sum::<u64>(), c.total);
        assert_eq!(c.total as usize, sieve_squarefree_odd(10_000).len());
        assert_eq!(c.partition_violations, 0);
        // J = 1: S(0) is exactly the d with |a M_{1,1}(d)| > ℓ₁/10³
        let k = HarperKernel::new(&desk_cfg(), &sched, &table).unwrap();
        let direct = sieve_squarefree_odd(10_000)
            .into_iter()
            .filter(|&d| k.scaled(QuadChar::new(d).unwrap(), 1, 1) > 8e-3)
            .count() as u64;
        assert_eq!(c.counts[0], direct);
    }

    #[test]
    fn literal_sets_partition_multilevel_schedule() {
        let sched = build_schedule(1e300, 1, 0.0).unwrap();
        let mut s = sched.clone();
        // shrink the prime ranges into a sieved window, keeping α and ℓ
        s.big_x = 1e7;
        s.ranges = s.alphas.windows(2).map(|w| (1e7f64.powf(w[0]), 1e7f64.powf(w[1]))).collect();
        let table = PrimeTable::primes_only(10_000).unwrap();
        let cfg = ShiftConfig::new(vec![1.0, 1.0], vec![0.0, 3.0]).unwrap();
        let k = HarperKernel::new(&cfg, &s, &table).unwrap();
        for d in sieve_squarefree_odd(3000) {
            let ch = QuadChar::new(d).unwrap();
            let mem = k.memberships(ch);
            let class = k.classify(ch);
            assert!(mem[class], "d={d}");
            assert!(mem[..class].iter().all(|b| !b), "d={d}");
        }
    }

    #[test]
    fn range_sums_and_h1() {
        let table = PrimeTable::primes_only(100_000).unwrap();
        let sched = build_schedule(1e4, 1, 0.0).unwrap();
        let r = range_sum_check(&sched, &table).unwrap();
        assert!(r.holds && r.later.is_empty(), "{r:?}");
        let mut s = build_schedule(1e300, 1, 0.0).unwrap();
        s.big_x = 1e7;
        s.ranges = s.alphas.windows(2).map(|w| (1e7f64.powf(w[0]), 1e7f64.powf(w[1]))).collect();
        let r = range_sum_check(&s, &table).unwrap();
        assert_eq!(r.later.len(), 1);
        assert!(r.holds, "{r:?}");
        let cfg = desk_cfg();
        let h1 = h1_companion_sum(1, &cfg, &sched, &table).unwrap();
        assert!(h1 > 0.0);
    }

    proptest! {
        #[test]
        fn truncated_exp_monotone(x in 0.0f64..20.0, ell in 0u32..40) {
            let a = truncated_exp(ell, x);
            let b = truncated_exp(ell + 1, x);
            prop_assert!(a <= b);
            prop_assert!(b <= x.exp() * (1.0 + 1e-15));
        }

        #[test]
        fn h_sigma_bounded(p in 2u64..100_000, a1 in 0.0f64..4.0, a2 in 0.01f64..4.0,
                           t1 in -50.0f64..50.0, t2 in -50.0f64..50.0, sigma in 0.5f64..2.0, lx in 0.5f64..40.0) {
            let cfg = ShiftConfig::with_params(vec![a1, a2], vec![t1, t2], sigma, 1.0, 1.0).unwrap();
            prop_assert!(h_sigma(p, &cfg, lx.exp()).unwrap().abs() <= 1.0 + 1e-12);
        }

        #[test]
        fn schedule_invariants(lx in 8.0f64..700.0, m in 1u32..4, b in 0.0f64..3.0) {
            let s = build_schedule(lx.exp(), m, b).unwrap();
            prop_assert_eq!(s.alphas.len(), s.cap_j + 1);
            prop_assert_eq!(s.ranges[0].0, 1.0);
            prop_assert!(s.ells.iter().all(|l| *l >= 2 && l % 2 == 0));
            prop_assert!(s.ells.windows(2).all(|w| w[0] > w[1]));
            prop_assert!(s.alphas[s.cap_j - 1] <= 10f64.powi(-(m as i32)));
        }
    }
}
