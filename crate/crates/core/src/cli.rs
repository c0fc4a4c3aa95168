//! The `qdl` command-line workbench.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::arith::{sieve_squarefree_odd, PrimeTable, QuadChar};
use crate::charsums::{jutila_moment, main_term_d_sum, smoothed_d_sum, SmoothingFunction};
use crate::error::{QdlError, Result};
use crate::harper::{build_schedule, census};
use crate::lfunc::{functional_equation_residual, prop25_terms, LEvaluator, ShiftConfig};
use crate::moments::{integral_abs_moment, shifted_moments, DEFAULT_QUAD_STEP};
use crate::report::{emit_plot_script, join_list, merge, Format, Report};
use crate::rng::{sample_family, DEFAULT_SEED};
use crate::tolerances;
use crate::zeta::{log_zeta_reference, prime_sum_cos, riemann_functional_residual, ZetaEvaluator};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;
pub const EXIT_EMPTY_REPORT: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "qdl",
    version,
    about = "Experiments with quadratic Dirichlet L-functions L(s, χ^(8d))",
    args_override_self = true,
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, PartialEq)]
pub enum Command {
    /// Count odd square-free d ≤ X and primes ≤ X
    Sieve,
    /// ζ(σ + it) and the functional-equation residual on a list of t
    ZetaCheck,
    /// L(σ + it, χ^(8d)) for each d and t
    Lvalue,
    /// Jutila moment S_m(X, Y)
    Jutila,
    /// Shifted moment over the family, or the integral moment with --E
    Moment,
    /// Diagnostics checking the bounds and main terms
    Verify {
        #[command(subcommand)]
        which: Verify,
    },
    /// Merge CSV reports that share a header
    Report {
        /// Input CSV files or glob patterns
        #[arg(long = "in", num_args = 0.., action = ArgAction::Append)]
        inputs: Vec<String>,
    },
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verify {
    /// Prime cosine sums against log |ζ(1 + 1/log x + iα)|
    Lemma21,
    /// Smoothed d-sum against its main term
    Lemma22,
    /// Shifted log-L inequality on a seeded sample of d
    Prop25,
    /// Empirical moment over the envelope across a shift grid
    Envelope,
    /// Exceptional-set census
    HarperCensus,
    /// Functional-equation residuals
    Funceq,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone, Default, PartialEq)]
pub struct Opts {
    /// Family size X (comma list for a ladder)
    #[arg(long = "X", global = true, value_delimiter = ',', action = ArgAction::Set)]
    pub big_x: Option<Vec<f64>>,
    /// Character-sum length Y (default ⌊√X⌋)
    #[arg(long = "Y", global = true)]
    pub big_y: Option<f64>,
    #[arg(long, global = true)]
    pub m: Option<f64>,
    /// Shifts t_j (comma list)
    #[arg(long, global = true, value_delimiter = ',', action = ArgAction::Set)]
    pub shifts: Option<Vec<f64>>,
    /// Exponents a_j (comma list)
    #[arg(long, global = true, value_delimiter = ',', action = ArgAction::Set)]
    pub exponents: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    #[arg(long, global = true)]
    pub sigma: Option<f64>,
    /// Values of n (comma list)
    #[arg(long, global = true, value_delimiter = ',', action = ArgAction::Set)]
    pub n: Option<Vec<u64>>,
    /// Values of d (comma list)
    #[arg(long, global = true, value_delimiter = ',', action = ArgAction::Set)]
    pub d: Option<Vec<u64>>,
    /// Prime-sum lengths x (comma list)
    #[arg(long, global = true, value_delimiter = ',', action = ArgAction::Set)]
    pub x: Option<Vec<f64>>,
    /// Frequencies α (comma list)
    #[arg(long, global = true, value_delimiter = ',', action = ArgAction::Set)]
    pub alphas: Option<Vec<f64>>,
    /// Weight exponent k in A(d)^{-k}
    #[arg(long, global = true)]
    pub k: Option<f64>,
    /// Schedule constant M
    #[arg(long = "M", global = true)]
    pub const_m: Option<u32>,
    /// Schedule constant B
    #[arg(long = "B", global = true)]
    pub const_b: Option<f64>,
    /// Prime table limit
    #[arg(long, global = true)]
    pub table: Option<u64>,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Upper limit of the t-integral
    #[arg(long = "E", global = true)]
    pub e_lim: Option<f64>,
    /// Quadrature step for the t-integral
    #[arg(long, global = true)]
    pub step: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, env = "QDL_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// key=value file supplying defaults for the flags above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Run scans above the work budget
    #[arg(long, global = true)]
    pub force: bool,
    /// Also write a gnuplot script next to --out
    #[arg(long, global = true)]
    pub plot: bool,
}

fn list(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl Opts {
    /// Flags echoed into report headers. Thread count and output options are
    /// left out so reports do not depend on them.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        let mut v = Vec::new();
        let ints = |xs: &[u64]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        if let Some(x) = &self.big_x {
            v.push(("X", list(x)));
        }
        if let Some(x) = self.big_y {
            v.push(("Y", x.to_string()));
        }
        if let Some(x) = self.m {
            v.push(("m", x.to_string()));
        }
        if let Some(x) = &self.shifts {
            v.push(("shifts", list(x)));
        }
        if let Some(x) = &self.exponents {
            v.push(("exponents", list(x)));
        }
        if let Some(x) = self.eps {
            v.push(("eps", x.to_string()));
        }
        if let Some(x) = self.sigma {
            v.push(("sigma", x.to_string()));
        }
        if let Some(x) = &self.n {
            v.push(("n", ints(x)));
        }
        if let Some(x) = &self.d {
            v.push(("d", ints(x)));
        }
        if let Some(x) = &self.x {
            v.push(("x", list(x)));
        }
        if let Some(x) = &self.alphas {
            v.push(("alphas", list(x)));
        }
        if let Some(x) = self.k {
            v.push(("k", x.to_string()));
        }
        if let Some(x) = self.const_m {
            v.push(("M", x.to_string()));
        }
        if let Some(x) = self.const_b {
            v.push(("B", x.to_string()));
        }
        if let Some(x) = self.table {
            v.push(("table", x.to_string()));
        }
        if let Some(x) = self.samples {
            v.push(("samples", x.to_string()));
        }
        if let Some(x) = self.e_lim {
            v.push(("E", x.to_string()));
        }
        if let Some(x) = self.step {
            v.push(("step", x.to_string()));
        }
        if let Some(x) = self.seed {
            v.push(("seed", x.to_string()));
        }
        if self.force {
            v.push(("force", "true".into()));
        }
        v
    }

    fn xs(&self, default: &[f64]) -> Result<Vec<f64>> {
        let xs = self.big_x.clone().unwrap_or_else(|| default.to_vec());
        if xs.is_empty() || xs.iter().any(|x| !(x.is_finite() && *x >= 1.0)) {
            return Err(QdlError::InvalidArgument(format!("--X values must be finite and >= 1, got {xs:?}")));
        }
        Ok(xs)
    }

    fn shift_config(&self, default_a: &[f64], default_t: &[f64]) -> Result<ShiftConfig> {
        let a = self.exponents.clone().unwrap_or_else(|| default_a.to_vec());
        let t = self.shifts.clone().unwrap_or_else(|| default_t.to_vec());
        ShiftConfig::with_params(a, t, self.sigma.unwrap_or(0.5), 1.0, 1.0)
    }
}

/// The report for one command.
pub fn build_report(command: &Command, o: &Opts) -> Result<Report> {
    let mut r = match command {
        Command::Sieve => sieve(o)?,
        Command::ZetaCheck => zeta_check(o)?,
        Command::Lvalue => lvalue(o)?,
        Command::Jutila => jutila(o)?,
        Command::Moment => moment(o)?,
        Command::Verify { which } => match which {
            Verify::Lemma21 => lemma21(o)?,
            Verify::Lemma22 => lemma22(o)?,
            Verify::Prop25 => prop25(o)?,
            Verify::Envelope => envelope(o)?,
            Verify::HarperCensus => harper_census(o)?,
            Verify::Funceq => funceq(o)?,
        },
        Command::Report { .. } => {
            return Err(QdlError::InvalidArgument("report merges files; use run()".into()));
        }
    };
    let mut echo: Vec<(String, String)> = o.echo().into_iter().map(|(k, v)| (format!("config.{k}"), v)).collect();
    let tail = r.meta.split_off(2);
    r.meta.append(&mut echo);
    r.meta.extend(tail);
    Ok(r)
}

fn sieve(o: &Opts) -> Result<Report> {
    let mut r = Report::new("sieve", &["X", "squarefree_odd", "primes"]);
    for x in o.xs(&[1e6])? {
        let n = x.floor() as u64;
        let count = sieve_squarefree_odd(n).len();
        let primes = PrimeTable::primes_only(n.max(2))?.primes_upto(x)?.len();
        r.push(vec![x.into(), count.into(), primes.into()]);
    }
    Ok(r)
}

fn zeta_check(o: &Opts) -> Result<Report> {
    let zeta = ZetaEvaluator::default();
    let sigma = o.sigma.unwrap_or(0.5);
    let mut r = Report::new(
        "zeta-check",
        &["sigma", "t", "re", "im", "abs", "est_abs_error", "functional_residual"],
    );
    for t in o.shifts.clone().unwrap_or_else(|| vec![0.0, 1.0, 14.134725141734695, 100.0]) {
        let s = Complex64::new(sigma, t);
        if !(sigma > 0.0) {
            return Err(QdlError::InvalidArgument(format!("sigma must be > 0, got {sigma}")));
        }
        let z = zeta.hurwitz(s, 1.0)?;
        let res = riemann_functional_residual(&zeta, s)?;
        r.push(vec![
            sigma.into(),
            t.into(),
            z.value.re.into(),
            z.value.im.into(),
            z.value.norm().into(),
            z.est_abs_error.into(),
            res.into(),
        ]);
    }
    Ok(r)
}

fn lvalue(o: &Opts) -> Result<Report> {
    let lev = LEvaluator::default();
    let sigma = o.sigma.unwrap_or(0.5);
    let mut r = Report::new("lvalue", &["d", "sigma", "t", "re", "im", "abs", "method", "est_abs_error"]);
    for d in o.d.clone().unwrap_or_else(|| vec![1]) {
        let ch = QuadChar::new(d)?;
        for t in o.shifts.clone().unwrap_or_else(|| vec![0.0]) {
            let v = lev.value(ch, Complex64::new(sigma, t))?;
            let method = serde_json::to_value(v.method).expect("method serialises");
            r.push(vec![
                d.into(),
                sigma.into(),
                t.into(),
                v.value.re.into(),
                v.value.im.into(),
                v.value.norm().into(),
                method.as_str().unwrap_or_default().into(),
                v.est_abs_error.into(),
            ]);
        }
    }
    Ok(r)
}

fn jutila(o: &Opts) -> Result<Report> {
    let m = o.m.unwrap_or(1.0);
    let mut r = Report::new("jutila", &["X", "Y", "m", "S_m", "S_m/(X*Y^m)", "log_ratio", "ratio"]);
    r.meta("log_ratio", "log(S_m/(X*Y^m))/log(log X)");
    r.meta("ratio", "S_m/(X*Y^m*(log X)^(m(2m+1)))");
    for x in o.xs(&[4096.0])? {
        let y = o.big_y.unwrap_or_else(|| x.sqrt().floor());
        let s = jutila_moment(x, y, m, o.force)?;
        let norm = s / (x * y.powf(m));
        let lx = x.ln();
        r.push(vec![
            x.into(),
            y.into(),
            m.into(),
            s.into(),
            norm.into(),
            (norm.ln() / lx.ln()).into(),
            (norm / lx.powf(m * (2.0 * m + 1.0))).into(),
        ]);
    }
    Ok(r)
}

fn moment(o: &Opts) -> Result<Report> {
    let lev = LEvaluator::default();
    if let Some(e_lim) = o.e_lim {
        let m = o.m.unwrap_or(1.0);
        let step = o.step.unwrap_or(DEFAULT_QUAD_STEP);
        let mut r = Report::new("integral-moment", &["X", "E", "m", "step", "value", "refined", "max_rel_disagreement"]);
        for x in o.xs(&[50.0])? {
            let v = integral_abs_moment(x, e_lim, m, step, &lev)?;
            r.push(vec![
                x.into(),
                e_lim.into(),
                m.into(),
                v.step.into(),
                v.value.into(),
                v.refined.into(),
                v.max_rel_disagreement.into(),
            ]);
        }
        return Ok(r);
    }
    let cfg = o.shift_config(&[2.0], &[0.0])?;
    let mut r = Report::new(
        "moment",
        &[
            "X",
            "k",
            "exponents",
            "shifts",
            "sigma",
            "empirical",
            "envelope_thm11",
            "envelope_cor12",
            "envelope_lemma26",
            "ratio",
            "family_size",
        ],
    );
    for x in o.xs(&[1000.0])? {
        let rep = shifted_moments(x, std::slice::from_ref(&cfg), &lev)?.remove(0);
        r.push(vec![
            x.into(),
            cfg.k().into(),
            join_list(&cfg.a_vec).into(),
            join_list(&cfg.t_vec).into(),
            cfg.sigma.into(),
            rep.empirical.into(),
            rep.envelope_thm11.into(),
            rep.envelope_cor12.into(),
            rep.envelope_lemma26.into(),
            rep.ratio.into(),
            rep.family_size.into(),
        ]);
    }
    Ok(r)
}

fn lemma21(o: &Opts) -> Result<Report> {
    let xs = o.x.clone().unwrap_or_else(|| vec![1e3, 1e5, 1e7]);
    let alphas = o.alphas.clone().unwrap_or_else(|| vec![0.0, 0.5, 1.0, 2.0, 5.0, 10.0]);
    let limit = xs.iter().cloned().fold(2.0, f64::max).floor() as u64;
    let table = PrimeTable::primes_only(o.table.unwrap_or(limit).max(limit))?;
    let zeta = ZetaEvaluator::default();
    let band = tolerances::PRIME_COS_BAND;
    let mut r = Report::new("lemma21", &["x", "alpha", "prime_sum", "log_zeta", "diff", "within_band"]);
    r.meta("band", band);
    for &x in &xs {
        for &alpha in &alphas {
            let ps = prime_sum_cos(x, alpha, &table)?;
            let lz = log_zeta_reference(x, alpha, &zeta)?;
            let diff = ps - lz;
            r.push(vec![x.into(), alpha.into(), ps.into(), lz.into(), diff.into(), (diff.abs() <= band).into()]);
        }
    }
    Ok(r)
}

fn lemma22(o: &Opts) -> Result<Report> {
    let ns = o.n.clone().unwrap_or_else(|| vec![1, 9, 3]);
    let k = o.k.unwrap_or(0.0);
    let table = PrimeTable::primes_only(o.table.unwrap_or(10_000_000))?;
    let f = SmoothingFunction::bump_phi();
    let mut r = Report::new(
        "lemma22",
        &[
            "n",
            "X",
            "k",
            "direct",
            "main_term",
            "ratio",
            "square",
            "nonsquare_bound",
            "euler_residual",
            "truncation_flagged",
        ],
    );
    r.meta("smoothing", f.label());
    for x in o.xs(&[1e6])? {
        for &n in &ns {
            let direct = smoothed_d_sum(n, x, &f, k)?;
            let (main, sq, res, flag) = if n % 2 == 1 {
                let mt = main_term_d_sum(n, x, &f, k, &table)?;
                (mt.value, mt.delta_square == 1, mt.residual_estimate, mt.truncation_flagged)
            } else {
                (0.0, false, 0.0, false)
            };
            r.push(vec![
                n.into(),
                x.into(),
                k.into(),
                direct.into(),
                main.into(),
                (direct / main).into(),
                sq.into(),
                x.powf(tolerances::D_SUM_NONSQUARE_EXPONENT).into(),
                res.into(),
                flag.into(),
            ]);
        }
    }
    Ok(r)
}

fn prop25(o: &Opts) -> Result<Report> {
    let x_big = o.xs(&[1e4])?[0];
    let x = o.x.as_ref().and_then(|v| v.first().copied()).unwrap_or(100.0);
    let cfg = o.shift_config(&[1.0], &[0.0])?;
    let seed = o.seed.unwrap_or(DEFAULT_SEED);
    let ds = sample_family(x_big, o.samples.unwrap_or(200), seed)?;
    let table = PrimeTable::primes_only(x.floor().max(2.0) as u64)?;
    let lev = LEvaluator::default();
    let mut r = Report::new(
        "prop25",
        &["d", "lhs", "prime_sum", "square_sum", "log_term", "rhs", "margin"],
    );
    r.meta("sampler", format!("splitmix64 seed={seed}"));
    r.meta("note", "margin excludes the O(1) term");
    for d in ds {
        let t = prop25_terms(QuadChar::new(d)?, &cfg, x, x_big, &table, &lev)?;
        r.push(vec![
            d.into(),
            t.lhs.into(),
            t.prime_sum.into(),
            t.square_sum.into(),
            t.log_term.into(),
            t.rhs().into(),
            t.margin().into(),
        ]);
    }
    Ok(r)
}

/// All `k`-tuples over `grid`, lexicographic.
fn tuples(grid: &[f64], k: usize) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                grid.iter().map(move |&g| {
                    let mut q = p.clone();
                    q.push(g);
                    q
                })
            })
            .collect();
    }
    out
}

fn envelope(o: &Opts) -> Result<Report> {
    let a = o.exponents.clone().unwrap_or_else(|| vec![1.0, 1.0]);
    let grid = o.shifts.clone().unwrap_or_else(|| vec![0.0, 1.0, 2.0, 5.0]);
    let sigma = o.sigma.unwrap_or(0.5);
    let cfgs = tuples(&grid, a.len())
        .into_iter()
        .map(|t| ShiftConfig::with_params(a.clone(), t, sigma, 1.0, 1.0))
        .collect::<Result<Vec<_>>>()?;
    let lev = LEvaluator::default();
    let mut r = Report::new(
        "envelope",
        &["X", "shifts", "empirical", "envelope_cor12", "envelope_thm11", "ratio"],
    );
    r.meta("exponents", join_list(&a));
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for x in o.xs(&[1e4])? {
        for rep in shifted_moments(x, &cfgs, &lev)? {
            lo = lo.min(rep.ratio);
            hi = hi.max(rep.ratio);
            r.push(vec![
                x.into(),
                join_list(&rep.cfg.t_vec).into(),
                rep.empirical.into(),
                rep.envelope_cor12.into(),
                rep.envelope_thm11.into(),
                rep.ratio.into(),
            ]);
        }
    }
    r.meta("ratio_min", lo);
    r.meta("ratio_max", hi);
    r.meta("window", hi / lo);
    Ok(r)
}

fn harper_census(o: &Opts) -> Result<Report> {
    let x = o.xs(&[1e4])?[0];
    let (m, b) = (o.const_m.unwrap_or(1), o.const_b.unwrap_or(0.0));
    let cfg = o.shift_config(&[2.0], &[0.0])?;
    let sched = build_schedule(x, m, b)?;
    let reach = sched.prime_reach().floor() as u64;
    let table = PrimeTable::primes_only(reach.max(2))?;
    let c = census(&cfg, &sched, &table)?;
    let mut r = Report::new(
        "harper-census",
        &["class_j", "count", "fraction", "X", "M", "B", "sigma", "shifts"],
    );
    r.meta("constants", "desk-scale M and B; the asymptotic argument takes both large");
    r.meta("J", sched.cap_j);
    r.meta("alphas", join_list(&sched.alphas));
    r.meta(
        "ells",
        sched.ells.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(";"),
    );
    r.meta("exponents", join_list(&cfg.a_vec));
    r.meta("partition_violations", c.partition_violations);
    for (j, &count) in c.counts.iter().enumerate() {
        r.push(vec![
            j.into(),
            count.into(),
            c.fraction(j).into(),
            x.into(),
            (m as u64).into(),
            b.into(),
            cfg.sigma.into(),
            join_list(&cfg.t_vec).into(),
        ]);
    }
    Ok(r)
}

fn funceq(o: &Opts) -> Result<Report> {
    let ds = o.d.clone().unwrap_or_else(|| vec![1, 3, 5, 7, 11, 13, 15]);
    let ts = o.shifts.clone().unwrap_or_else(|| vec![0.0, 1.0, 2.0, 5.0, 10.0]);
    let sigma = o.sigma.unwrap_or(0.5);
    let tol = tolerances::FUNCEQ_RESIDUAL;
    let mut r = Report::new("funceq", &["d", "sigma", "t", "residual", "pass"]);
    for &d in &ds {
        let ch = QuadChar::new(d)?;
        for &t in &ts {
            let res = functional_equation_residual(ch, Complex64::new(sigma, t))?;
            r.push(vec![d.into(), sigma.into(), t.into(), res.into(), (res <= tol).into()]);
        }
    }
    Ok(r)
}

pub fn exit_code(e: &QdlError) -> i32 {
    match e {
        QdlError::InvalidArgument(_) | QdlError::NotOddSquarefree(_) | QdlError::Parse { .. } => EXIT_INVALID,
        QdlError::Budget { .. } => EXIT_BUDGET,
        _ => EXIT_NUMERICAL,
    }
}

/// Flags from a `key=value` file, as command-line arguments.
pub fn config_args(text: &str) -> Result<Vec<OsString>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(QdlError::Parse {
                line: i + 1,
                msg: format!("expected key=value, got {line:?}"),
            });
        };
        let (k, v) = (k.trim(), v.trim());
        if matches!(k, "force" | "plot") {
            match v {
                "true" => out.push(format!("--{k}").into()),
                "false" => {}
                _ => {
                    return Err(QdlError::Parse {
                        line: i + 1,
                        msg: format!("{k} must be true or false"),
                    })
                }
            }
        } else {
            out.push(format!("--{k}").into());
            out.push(v.into());
        }
    }
    Ok(out)
}

fn expand_inputs(inputs: &[String]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for pat in inputs {
        let paths = glob::glob(pat).map_err(|e| QdlError::InvalidArgument(format!("bad pattern {pat}: {e}")))?;
        for p in paths {
            out.push(p.map_err(|e| QdlError::Io(e.to_string()))?);
        }
    }
    Ok(out)
}

fn parse(args: &[OsString]) -> std::result::Result<Cli, i32> {
    Cli::try_parse_from(args).map_err(|e| {
        let _ = e.print();
        if e.use_stderr() {
            EXIT_INVALID
        } else {
            EXIT_OK
        }
    })
}

fn execute(cli: &Cli) -> Result<i32> {
    let o = &cli.opts;
    let format = match o.format.unwrap_or(FormatArg::Csv) {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let report = match &cli.command {
        Command::Report { inputs } => {
            let paths = expand_inputs(inputs)?;
            match merge(&paths)? {
                Some(r) => r,
                None => {
                    eprintln!("qdl: no input reports; nothing written");
                    return Ok(EXIT_EMPTY_REPORT);
                }
            }
        }
        cmd => build_report(cmd, o)?,
    };
    let text = report.render(format)?;
    match &o.out {
        Some(path) => {
            std::fs::write(path, text)?;
            if o.plot {
                if format != Format::Csv {
                    return Err(QdlError::InvalidArgument("--plot needs --format csv".into()));
                }
                let gp = emit_plot_script(path)?;
                eprintln!("qdl: wrote {}", gp.display());
            }
        }
        None => {
            if o.plot {
                return Err(QdlError::InvalidArgument("--plot needs --out".into()));
            }
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let mut cli = match parse(&args) {
        Ok(c) => c,
        Err(code) => return code,
    };
    if let Some(path) = cli.opts.config.clone() {
        let extra = std::fs::read_to_string(&path)
            .map_err(QdlError::from)
            .and_then(|t| config_args(&t));
        let extra = match extra {
            Ok(x) => x,
            Err(e) => {
                eprintln!("qdl: config {}: {e}", path.display());
                return EXIT_INVALID;
            }
        };
        let mut merged = vec![args[0].clone()];
        merged.extend(extra);
        merged.extend(args[1..].iter().cloned());
        cli = match parse(&merged) {
            Ok(c) => c,
            Err(code) => return code,
        };
    }
    let result = match cli.opts.threads {
        Some(0) => Err(QdlError::InvalidArgument("--threads must be >= 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(QdlError::Numerical(format!("thread pool: {e}"))),
        },
        None => execute(&cli),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qdl: error: {e}");
            exit_code(&e)
        }
    }
}
