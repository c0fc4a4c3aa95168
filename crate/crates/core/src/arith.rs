//! Integer substrate: prime and square-free sieves, Jacobi symbols, the
//! quadratic characters `χ^(8d)` and the small multiplicative functions the
//! rest of the crate leans on.

use crate::error::{QdlError, Result};

/// Segment length for the segmented sieves.
pub const SEGMENT_LEN: u64 = 1 << 20;

/// Default bound on `8d` below which a full character period may be cached.
pub const DEFAULT_PERIOD_CACHE_BOUND: u64 = 1 << 20;

/// Jacobi symbol `(a/n)` for odd `n ≥ 1`, by the binary reciprocity algorithm.
pub fn jacobi_symbol(a: i64, n: u64) -> Result<i8> {
    if n == 0 || n % 2 == 0 {
        return Err(QdlError::InvalidArgument(format!(
            "Jacobi symbol needs an odd positive modulus, got n = {n}"
        )));
    }
    let a = (a as i128).rem_euclid(n as i128) as u64;
    Ok(jacobi_unchecked(a, n))
}

/// Jacobi symbol for `n` odd; `a` is reduced internally. No validation.
#[inline]
pub fn jacobi_unchecked(a: u64, n: u64) -> i8 {
    debug_assert!(n & 1 == 1);
    let mut a = a % n;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        // (2/n) = -1 iff n ≡ 3, 5 (mod 8)
        if z & 1 == 1 && matches!(n & 7, 3 | 5) {
            t = -t;
        }
        // reciprocity for two odd numbers
        if a & 3 == 3 && n & 3 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Whether `d` is odd, positive and square-free (trial division).
pub fn is_odd_squarefree(d: u64) -> bool {
    if d == 0 || d % 2 == 0 {
        return false;
    }
    let mut m = d;
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 2;
    }
    true
}

/// Distinct prime factors of `n` by trial division, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n % 2 == 0 {
        out.push(2);
        while n % 2 == 0 {
            n /= 2;
        }
    }
    let mut p = 3u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 2;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A quadratic character `χ^(8d)(n) = (8d/n)` for odd square-free `d ≥ 1`.
///
/// The character is real, even and primitive modulo `8d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadChar {
    d: u64,
}

impl QuadChar {
    pub fn new(d: u64) -> Result<Self> {
        if d > (u64::MAX >> 4) || !is_odd_squarefree(d) {
            return Err(QdlError::NotOddSquarefree(d));
        }
        Ok(Self { d })
    }

    /// Skips the square-free check; callers must pass sieve output.
    pub(crate) fn from_sieved(d: u64) -> Self {
        debug_assert!(is_odd_squarefree(d));
        Self { d }
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn modulus(&self) -> u64 {
        8 * self.d
    }

    /// `χ^(8d)(n)`; zero for even `n` and for `gcd(n, d) > 1`.
    #[inline]
    pub fn chi(&self, n: u64) -> i8 {
        if n & 1 == 0 {
            return 0;
        }
        // (8d/n) with n odd: reduce 8d mod n, avoiding overflow of 8d.
        jacobi_unchecked((8 % n) * (self.d % n) % n, n)
    }

    /// A cached period, if the modulus is at most `cache_bound`.
    pub fn period(&self, cache_bound: u64) -> Option<CharPeriod> {
        (self.modulus() <= cache_bound).then(|| CharPeriod::build(*self))
    }
}

/// One full period `χ(1..=8d)` with prefix sums.
#[derive(Debug, Clone)]
pub struct CharPeriod {
    modulus: u64,
    prefix: Vec<i32>,
}

impl CharPeriod {
    fn build(ch: QuadChar) -> Self {
        let q = ch.modulus();
        let mut prefix = Vec::with_capacity(q as usize + 1);
        let mut acc = 0i32;
        prefix.push(0);
        for n in 1..=q {
            acc += ch.chi(n) as i32;
            prefix.push(acc);
        }
        Self { modulus: q, prefix }
    }

    #[inline]
    pub fn value(&self, n: u64) -> i8 {
        let r = (n % self.modulus) as usize;
        if r == 0 {
            0
        } else {
            (self.prefix[r] - self.prefix[r - 1]) as i8
        }
    }

    /// `Σ_{n ≤ y} χ(n)`; full periods contribute zero.
    #[inline]
    pub fn partial_sum(&self, y: u64) -> i64 {
        self.prefix[(y % self.modulus) as usize] as i64
    }
}

/// Sieved primes with Möbius, big-Omega and smallest-prime-factor tables.
///
/// `primes` covers `[2, limit]`. The multiplicative tables cover
/// `[1, arith_limit]` with `arith_limit ≤ limit`; a table built with
/// [`PrimeTable::primes_only`] has `arith_limit = 1`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u32>,
    arith_limit: u64,
    spf: Vec<u32>,
    mobius: Vec<i8>,
    omega_big: Vec<u8>,
}

impl PrimeTable {
    /// Full table: primes and multiplicative functions up to `limit`.
    pub fn new(limit: u64) -> Result<Self> {
        Self::with_arith_limit(limit, limit)
    }

    /// Primes up to `limit` only (segmented sieve); multiplicative lookups fail.
    pub fn primes_only(limit: u64) -> Result<Self> {
        Self::with_arith_limit(limit, 1)
    }

    pub fn with_arith_limit(limit: u64, arith_limit: u64) -> Result<Self> {
        if limit < 2 || limit > u32::MAX as u64 {
            return Err(QdlError::InvalidArgument(format!(
                "prime table limit must lie in [2, 2^32), got {limit}"
            )));
        }
        let arith_limit = arith_limit.clamp(1, limit);
        let (spf, mobius, omega_big, small_primes) = linear_sieve(arith_limit);
        let primes = if arith_limit == limit {
            small_primes
        } else {
            segmented_primes(limit)
        };
        Ok(Self {
            limit,
            primes,
            arith_limit,
            spf,
            mobius,
            omega_big,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn arith_limit(&self) -> u64 {
        self.arith_limit
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Primes `p ≤ x`.
    pub fn primes_upto(&self, x: f64) -> Result<&[u32]> {
        self.check_real(x)?;
        let end = self.primes.partition_point(|&p| (p as f64) <= x);
        Ok(&self.primes[..end])
    }

    /// Primes in the half-open real range `(lo, hi]`.
    pub fn primes_in(&self, lo: f64, hi: f64) -> Result<&[u32]> {
        self.check_real(hi)?;
        let start = self.primes.partition_point(|&p| (p as f64) <= lo);
        let end = self.primes.partition_point(|&p| (p as f64) <= hi);
        Ok(&self.primes[start..end.max(start)])
    }

    pub fn check_real(&self, x: f64) -> Result<()> {
        if x.floor() > self.limit as f64 {
            return Err(QdlError::TableLimit {
                what: "x",
                requested: x.floor() as u64,
                limit: self.limit,
            });
        }
        Ok(())
    }

    fn check_arith(&self, n: u64) -> Result<usize> {
        if n == 0 {
            return Err(QdlError::InvalidArgument("n must be positive".into()));
        }
        if n > self.arith_limit {
            return Err(QdlError::TableLimit {
                what: "n",
                requested: n,
                limit: self.arith_limit,
            });
        }
        Ok(n as usize)
    }

    pub fn mobius(&self, n: u64) -> Result<i8> {
        Ok(self.mobius[self.check_arith(n)?])
    }

    /// Ω(n): prime factors counted with multiplicity.
    pub fn omega_big(&self, n: u64) -> Result<u8> {
        Ok(self.omega_big[self.check_arith(n)?])
    }

    /// Von Mangoldt Λ(n).
    pub fn lambda_vm(&self, n: u64) -> Result<f64> {
        let i = self.check_arith(n)?;
        if i == 1 {
            return Ok(0.0);
        }
        let p = self.spf[i] as u64;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        Ok(if m == 1 { (p as f64).ln() } else { 0.0 })
    }

    /// Prime factorization as `(p, α)` pairs.
    pub fn factor(&self, n: u64) -> Result<Vec<(u64, u32)>> {
        self.check_arith(n)?;
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        Ok(out)
    }

    /// The multiplicative function with `w(p^α) = α!`.
    pub fn w_factorial(&self, n: u64) -> Result<u64> {
        self.factor(n)?.into_iter().try_fold(1u64, |acc, (_, e)| {
            let f: u64 = (1..=e as u64).product();
            acc.checked_mul(f)
                .ok_or_else(|| QdlError::Numerical(format!("w({n}) overflows u64")))
        })
    }
}

/// Free-function form of [`PrimeTable::w_factorial`].
pub fn w_factorial(n: u64, table: &PrimeTable) -> Result<u64> {
    table.w_factorial(n)
}

type SieveTables = (Vec<u32>, Vec<i8>, Vec<u8>, Vec<u32>);

fn linear_sieve(n: u64) -> SieveTables {
    let n = n as usize;
    let mut spf = vec![0u32; n + 1];
    let mut mobius = vec![0i8; n + 1];
    let mut omega = vec![0u8; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    if n >= 1 {
        mobius[1] = 1;
    }
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            mobius[i] = -1;
            omega[i] = 1;
            primes.push(i as u32);
        }
        for &p in &primes {
            let p = p as usize;
            let ip = i * p;
            if p > spf[i] as usize || ip > n {
                break;
            }
            spf[ip] = p as u32;
            omega[ip] = omega[i] + 1;
            mobius[ip] = if p == spf[i] as usize { 0 } else { -mobius[i] };
        }
    }
    (spf, mobius, omega, primes)
}

fn simple_primes(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn segmented_primes(limit: u64) -> Vec<u32> {
    let base = simple_primes(isqrt(limit));
    let mut out: Vec<u32> = Vec::with_capacity((limit as f64 / (limit as f64).ln() * 1.2) as usize);
    let mut lo = 2u64;
    let mut seg = vec![true; SEGMENT_LEN as usize];
    while lo <= limit {
        let hi = (lo + SEGMENT_LEN - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        seg[..len].fill(true);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let start = (p * p).max(lo.div_ceil(p) * p);
            let mut m = start;
            while m <= hi {
                seg[(m - lo) as usize] = false;
                m += p;
            }
        }
        out.extend(
            (0..len)
                .filter(|&i| seg[i])
                .map(|i| (lo + i as u64) as u32),
        );
        lo = hi + 1;
    }
    out
}

/// Odd square-free integers in `[lo, hi]`, by a segmented square sieve.
pub fn squarefree_odd_range(lo: u64, hi: u64) -> Vec<u64> {
    let lo = lo.max(1);
    if hi < lo {
        return Vec::new();
    }
    let base = simple_primes(isqrt(hi));
    let mut out = Vec::with_capacity(((hi - lo + 1) as f64 * 0.41) as usize + 16);
    let mut seg = vec![true; SEGMENT_LEN as usize];
    let mut start = lo;
    while start <= hi {
        let end = (start.saturating_add(SEGMENT_LEN - 1)).min(hi);
        let len = (end - start + 1) as usize;
        seg[..len].fill(true);
        for &p in base.iter().skip(1) {
            let sq = p * p;
            if sq > end {
                break;
            }
            let mut m = start.div_ceil(sq) * sq;
            while m <= end {
                seg[(m - start) as usize] = false;
                m += sq;
            }
        }
        out.extend(
            (0..len)
                .filter(|&i| seg[i] && (start + i as u64) & 1 == 1)
                .map(|i| start + i as u64),
        );
        if end == u64::MAX {
            break;
        }
        start = end + 1;
    }
    out
}

/// All odd square-free `d` with `1 ≤ d ≤ x`.
pub fn sieve_squarefree_odd(x: u64) -> Vec<u64> {
    squarefree_odd_range(1, x)
}

/// Odd square-free `d` with `lo < d ≤ hi` for real endpoints.
pub fn squarefree_odd_real_range(lo: f64, hi: f64) -> Vec<u64> {
    if !(hi >= 1.0) || hi <= lo {
        return Vec::new();
    }
    let first = if lo < 1.0 { 1 } else { lo.floor() as u64 + 1 };
    squarefree_odd_range(first, hi.floor() as u64)
}

/// `A(d)` for every integer in `[lo, hi]` (index `d − lo`), sieved.
/// Entries for even or non-square-free `d` are the product over odd `p | d`.
pub fn weight_a_range(lo: u64, hi: u64) -> Vec<f64> {
    if hi < lo {
        return Vec::new();
    }
    let mut out = vec![1.0f64; (hi - lo + 1) as usize];
    let mut composite = vec![false; hi as usize / 2 + 1];
    // odd primes p ≤ hi by an odd-only sieve; index i ↔ 2i+1
    let mut i = 1usize;
    while 2 * i + 1 <= hi as usize {
        if !composite[i] {
            let p = (2 * i + 1) as u64;
            let mut j = p * p;
            while j <= hi {
                composite[(j / 2) as usize] = true;
                j += 2 * p;
            }
            let factor = 1.0 - 0.5 / p as f64;
            let mut m = lo.div_ceil(p) * p;
            while m <= hi {
                out[(m - lo) as usize] *= factor;
                m += p;
            }
        }
        i += 1;
    }
    out
}

/// `A(d) = Π_{p | d} (1 - 1/(2p))` for odd square-free `d`.
pub fn weight_a(d: u64) -> Result<f64> {
    if !is_odd_squarefree(d) {
        return Err(QdlError::NotOddSquarefree(d));
    }
    Ok(prime_factors(d)
        .into_iter()
        .map(|p| 1.0 - 0.5 / p as f64)
        .product())
}
