//! Data-parallel map over an index range with a sequential fallback.
//!
//! All parallel loops in this crate (optimizer restarts, partition
//! evaluations, search samples, sweep points) go through `run_indexed`, so
//! the `parallel` feature is the single switch between rayon and plain
//! iteration. Results are collected in index order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub(crate) fn run_indexed<T, F>(n: usize, parallel: bool, f: F) -> Vec<T>
where
    F: Fn(usize) -> T + Sync + Send,
    T: Send,
{
    if parallel {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn run_indexed<T, F>(n: usize, _parallel: bool, f: F) -> Vec<T>
where
    F: Fn(usize) -> T + Sync + Send,
    T: Send,
{
    (0..n).map(f).collect()
}
