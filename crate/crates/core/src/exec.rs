/// Execution policy for batch operations.
///
/// `Parallel` uses rayon when the crate is built with the `parallel` feature and
/// silently degrades to sequential iteration otherwise. Results are identical
/// under both policies: parallel maps collect in input order and every
/// reduction is summed sequentially afterwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

/// Below this many cheap items the thread pool costs more than it saves.
pub(crate) const PARALLEL_MIN_ITEMS: usize = 256;

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub(crate) fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }

    /// `map_range` for per-item work too small to amortize the thread pool on
    /// short inputs.
    pub(crate) fn map_cheap<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        let exec = if n < PARALLEL_MIN_ITEMS { Exec::Sequential } else { self };
        exec.map_range(n, f)
    }

    pub(crate) fn map_slice<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }
}
