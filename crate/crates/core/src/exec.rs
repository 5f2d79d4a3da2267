//! Order-preserving map over independent work items.
//!
//! With the `parallel` feature (default) [`map`] fans out over the rayon pool;
//! without it every call runs on the caller's thread. Results always come back
//! in input order, so reports are identical either way.

use crate::error::{HurzetaError, Result};

/// Environment variable capping the worker count.
pub const MAX_THREADS_ENV: &str = "HURZETA_MAX_THREADS";

/// Sequential map, available in every build.
pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Parallel map when the `parallel` feature is on, sequential otherwise.
#[cfg(feature = "parallel")]
pub fn map_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_sequential(items, f)
}

/// Default map used by sweeps and suites.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map_parallel(items, f)
}

/// Parses the thread cap from a raw environment value.
pub fn parse_thread_cap(raw: Option<&str>) -> Result<Option<usize>> {
    match raw {
        None => Ok(None),
        Some(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(HurzetaError::Usage(format!(
                "{MAX_THREADS_ENV} must be a positive integer, got {s:?}"
            ))),
        },
    }
}

/// Reads [`MAX_THREADS_ENV`] and sizes the global pool accordingly.
pub fn configure_threads_from_env() -> Result<Option<usize>> {
    let raw = std::env::var(MAX_THREADS_ENV).ok();
    let cap = parse_thread_cap(raw.as_deref())?;
    #[cfg(feature = "parallel")]
    if let Some(n) = cap {
        // Fails only if the pool was already initialised; the first size wins.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(cap)
}
