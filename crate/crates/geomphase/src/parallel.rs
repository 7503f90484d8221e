//! Thin dispatch layer between the rayon-backed and sequential code paths.
//!
//! Every data-parallel loop in the crate goes through one of these helpers so
//! that disabling the `parallel` feature swaps in a sequential fallback with
//! bit-identical results. Reductions collect per-index partial results and
//! fold them in index order, so the floating-point output does not depend on
//! the feature flag or on rayon's work splitting.

/// Map `f` over `0..n`, collecting results in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Map `f` over `0..n` and sum the (re, im) results in index order.
pub fn sum_indexed<F>(n: usize, f: F) -> (f64, f64)
where
    F: Fn(usize) -> (f64, f64) + Sync + Send,
{
    map_indexed(n, f)
        .into_iter()
        .fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1))
}

/// Sequential variant of [`sum_indexed`], available regardless of features.
/// Used by the benches to compare against the parallel path.
pub fn sum_indexed_seq<F>(n: usize, f: F) -> (f64, f64)
where
    F: Fn(usize) -> (f64, f64),
{
    let mut acc = (0.0, 0.0);
    for i in 0..n {
        let (re, im) = f(i);
        acc.0 += re;
        acc.1 += im;
    }
    acc
}
