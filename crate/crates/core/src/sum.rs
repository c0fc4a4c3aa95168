//! Compensated summation and thread-count-independent parallel reduction.
//!
//! Every parallel scan in the crate splits its input into fixed blocks of
//! [`BLOCK`] items, sums each block sequentially with Neumaier compensation,
//! then folds the block partials pairwise in index order. The block layout
//! depends only on the input length, so results are bit-identical for any
//! rayon pool size.

use num_complex::Complex64;
use rayon::prelude::*;

pub const BLOCK: usize = 1024;

/// Neumaier (improved Kahan–Babuška) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexNeumaier {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexNeumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn total(&self) -> Complex64 {
        Complex64::new(self.re.total(), self.im.total())
    }
}

pub fn neumaier_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<Neumaier>().total()
}

/// Sum of a slice by recursive halving, fixed by length alone.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Deterministic parallel `Σ f(item)`.
pub fn det_sum<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync,
{
    let partials: Vec<f64> = items
        .par_chunks(BLOCK)
        .map(|chunk| neumaier_sum(chunk.iter().map(&f)))
        .collect();
    pairwise_sum(&partials)
}

/// Fallible variant of [`det_sum`]; the first error in index order wins.
pub fn try_det_sum<T, F, E>(items: &[T], f: F) -> Result<f64, E>
where
    T: Sync,
    E: Send,
    F: Fn(&T) -> Result<f64, E> + Sync,
{
    let partials: Vec<Result<f64, E>> = items
        .par_chunks(BLOCK)
        .map(|chunk| {
            let mut acc = Neumaier::new();
            for item in chunk {
                acc.add(f(item)?);
            }
            Ok(acc.total())
        })
        .collect();
    let partials = partials.into_iter().collect::<Result<Vec<_>, E>>()?;
    Ok(pairwise_sum(&partials))
}

/// Order-preserving parallel map.
pub fn det_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}
