//! Element-parallel loops, sequential without the `parallel` feature.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Runs `f(index, chunk)` over consecutive `size`-long chunks of `out`.
pub(crate) fn for_each_chunk<F>(out: &mut [f64], size: usize, f: F)
where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    out.par_chunks_mut(size).enumerate().for_each(|(i, c)| f(i, c));
    #[cfg(not(feature = "parallel"))]
    out.chunks_mut(size).enumerate().for_each(|(i, c)| f(i, c));
}

/// Maximum of `f(i)` over `0..n`, componentwise.
pub(crate) fn max_over<F>(n: usize, f: F) -> [f64; 2]
where
    F: Fn(usize) -> [f64; 2] + Sync + Send,
{
    let merge = |a: [f64; 2], b: [f64; 2]| [a[0].max(b[0]), a[1].max(b[1])];
    #[cfg(feature = "parallel")]
    return (0..n).into_par_iter().map(f).reduce(|| [0.0; 2], merge);
    #[cfg(not(feature = "parallel"))]
    return (0..n).map(f).fold([0.0; 2], merge);
}

/// `(0..n).map(f).collect()`, in parallel when enabled.
pub(crate) fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    return (0..n).into_par_iter().map(f).collect();
    #[cfg(not(feature = "parallel"))]
    return (0..n).map(f).collect();
}
