//! Replicate-level execution: rayon when the `parallel` feature is on,
//! a plain loop otherwise. Output order is always index order.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// `(0..count).map(f).collect()`, possibly in parallel.
pub fn map_indexed<T, F>(exec: Execution, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..count).map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(f).collect()
        }
    }
}

/// Size the global worker pool. Only the first call in a process takes
/// effect; a no-op without the `parallel` feature.
pub fn init_workers(workers: usize) -> anyhow::Result<()> {
    #[cfg(feature = "parallel")]
    {
        static DONE: std::sync::atomic::AtomicBool = std::sync::atomic::AtomicBool::new(false);
        if DONE.swap(true, std::sync::atomic::Ordering::SeqCst) {
            return Ok(());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build_global()
            .map_err(|e| anyhow::anyhow!("worker pool: {e}"))?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = workers;
    Ok(())
}
