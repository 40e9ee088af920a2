//! Work distribution for the data-parallel loops.
//!
//! Every parallel routine in the crate splits its work into a fixed list of
//! indexed chunks, evaluates the chunks (possibly concurrently), and folds
//! the results in index order. The chunking never depends on the worker
//! count, so outputs are identical for any [`Executor`].

/// Environment variable holding the worker count. Absent means sequential.
pub const WORKERS_ENV: &str = "BELLWIG_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Executor {
    threads: usize,
}

impl Default for Executor {
    fn default() -> Self {
        Self::sequential()
    }
}

impl Executor {
    pub fn sequential() -> Self {
        Self { threads: 1 }
    }

    /// Zero is treated as one. Without the `parallel` feature the count is
    /// recorded but work still runs on the calling thread.
    pub fn with_threads(threads: usize) -> Self {
        Self { threads: threads.max(1) }
    }

    /// Reads [`WORKERS_ENV`]; missing or unparsable values give a sequential executor.
    pub fn from_env() -> Self {
        std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(Self::with_threads)
            .unwrap_or_default()
    }

    /// One thread per available core.
    pub fn all_cores() -> Self {
        Self::with_threads(std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && self.threads > 1
    }

    /// Evaluates `f(0..n)` and returns the results in index order.
    pub fn map_indexed<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(self.threads)
                .build()
                .expect("failed to build rayon thread pool");
            return pool.install(|| (0..n).into_par_iter().map(&f).collect());
        }
        (0..n).map(f).collect()
    }

    /// [`map_indexed`](Self::map_indexed) followed by an in-order fold.
    pub fn map_fold<T, A, F, G>(&self, n: usize, f: F, init: A, fold: G) -> A
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
        G: FnMut(A, T) -> A,
    {
        self.map_indexed(n, f).into_iter().fold(init, fold)
    }
}
