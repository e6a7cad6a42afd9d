//! Batch runner for Majorana propagation experiments: figure CSVs, bound
//! verification and single propagation runs.

pub mod config;
pub mod error;
pub mod experiments;
pub mod verify;

pub use config::ExperimentConfig;
pub use error::{CliError, CliResult};

/// Run `f` on a dedicated pool; `None` or `0` uses every core.
pub fn with_threads<T, F>(threads: Option<usize>, f: F) -> CliResult<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}
