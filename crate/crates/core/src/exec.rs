//! Execution strategy for the enumeration loops.
//!
//! Work is split into indexed chunks whose results are collected in index
//! order, so the merged result does not depend on scheduling.

/// How enumeration-heavy loops run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled; otherwise the same
    /// as [`Exec::Sequential`].
    #[default]
    Parallel,
}

impl Exec {
    /// Evaluates `f(0), …, f(n-1)` and returns the results in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..n).map(f).collect(),
            Exec::Parallel => par_map(n, f),
        }
    }

    /// Splits `0..n` into at most `max_parts` contiguous ranges of nearly
    /// equal length, so that per-chunk buffers stay bounded.
    pub fn ranges(n: u64, max_parts: u64) -> Vec<std::ops::Range<u64>> {
        let parts = max_parts.clamp(1, n.max(1));
        (0..parts).map(|i| i * n / parts..(i + 1) * n / parts).collect()
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

#[cfg(feature = "parallel")]
fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}
