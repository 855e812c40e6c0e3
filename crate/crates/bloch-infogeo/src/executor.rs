use std::sync::Arc;

use bloch_infogeo_core::Executor;
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::error::{CliError, Result};

/// Caps the number of worker threads.
pub const THREADS_ENV: &str = "BLOCH_INFOGEO_THREADS";

/// Fans work items out over a dedicated rayon pool. Results come back in
/// index order, so output never depends on the thread count.
#[derive(Clone)]
pub struct RayonExecutor {
    pool: Arc<ThreadPool>,
}

impl RayonExecutor {
    pub fn with_threads(threads: usize) -> Result<Self> {
        if threads == 0 {
            return Err(CliError::Usage("thread count must be at least 1".into()));
        }
        let pool = ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::Failed(format!("thread pool: {e}")))?;
        Ok(Self {
            pool: Arc::new(pool),
        })
    }

    /// `explicit`, else `BLOCH_INFOGEO_THREADS`, else all available cores.
    pub fn from_env(explicit: Option<usize>) -> Result<Self> {
        let threads = match explicit {
            Some(n) => n,
            None => match std::env::var(THREADS_ENV) {
                Ok(v) => v.trim().parse().map_err(|_| {
                    CliError::Usage(format!("{THREADS_ENV}={v:?} is not a positive integer"))
                })?,
                Err(_) => std::thread::available_parallelism().map_or(1, |n| n.get()),
            },
        };
        Self::with_threads(threads)
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl std::fmt::Debug for RayonExecutor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RayonExecutor")
            .field("threads", &self.threads())
            .finish()
    }
}

impl Executor for RayonExecutor {
    fn map_indexed<T, F>(&self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.pool
            .install(|| (0..len).into_par_iter().map(f).collect())
    }
}
