//! Sequential or thread-pool execution of independent work items.
//!
//! With the `parallel` feature disabled every strategy runs sequentially.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// `threads == 0` lets the pool pick the number of threads.
    Parallel { threads: usize },
}

impl Default for Execution {
    fn default() -> Self {
        Execution::Parallel { threads: 0 }
    }
}

impl Execution {
    /// `--jobs` style: 1 means sequential, 0 means automatic.
    pub fn from_jobs(jobs: usize) -> Self {
        if jobs == 1 {
            Execution::Sequential
        } else {
            Execution::Parallel { threads: jobs }
        }
    }

    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && matches!(self, Execution::Parallel { .. })
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel { threads } => {
                use rayon::prelude::*;
                self::pool(*threads).install(|| items.par_iter().map(f).collect())
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Smallest `i` in `range` with `f(i)` returning `Some`, with its value.
    pub fn find_first<R, F>(&self, range: Range<u64>, f: F) -> Option<(u64, R)>
    where
        R: Send,
        F: Fn(u64) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel { threads } => {
                use rayon::prelude::*;
                self::pool(*threads).install(|| {
                    range
                        .into_par_iter()
                        .map(|i| f(i).map(|r| (i, r)))
                        .find_first(Option::is_some)
                        .flatten()
                })
            }
            _ => range.into_iter().find_map(|i| f(i).map(|r| (i, r))),
        }
    }
}

#[cfg(feature = "parallel")]
fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}
