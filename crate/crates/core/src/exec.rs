//! Trial scheduling. With the `parallel` feature, trials can fan out over
//! rayon's pool; without it everything runs on the calling thread. Every
//! trial derives its own generator from its index, so both modes produce
//! identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Evaluate `f` at `0..count`, results in index order.
    pub fn map<T, F>(self, count: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..count).into_par_iter().map(f).collect(),
            _ => (0..count).map(f).collect(),
        }
    }

    /// Number of indices in `0..count` where `f` holds.
    pub fn count<F>(self, count: u64, f: F) -> u64
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..count).into_par_iter().filter(|&i| f(i)).count() as u64,
            _ => (0..count).filter(|&i| f(i)).count() as u64,
        }
    }

    /// Element-wise sum of fixed-length integer vectors produced per index.
    pub fn sum_vectors<F>(self, count: u64, len: usize, f: F) -> Vec<u64>
    where
        F: Fn(u64, &mut [u64]) + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..count)
                .into_par_iter()
                .fold(
                    || vec![0u64; len],
                    |mut acc, i| {
                        f(i, &mut acc);
                        acc
                    },
                )
                .reduce(
                    || vec![0u64; len],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        a
                    },
                ),
            _ => (0..count).fold(vec![0u64; len], |mut acc, i| {
                f(i, &mut acc);
                acc
            }),
        }
    }
}
