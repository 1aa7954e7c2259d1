//! Data-parallel helpers. With the `parallel` feature (on by default) work is
//! spread over a rayon pool; without it, or under [`Strategy::Sequential`],
//! everything runs on the calling thread. Output order always matches input
//! order.

use crate::error::{Error, Result};

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "MASSFORGE_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Strategy {
    /// Parallel when compiled in, sequential otherwise.
    pub fn default_for_build() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Applies `f` to every item, preserving order.
pub fn map_with<T, U, F>(strategy: Strategy, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            items.into_par_iter().map(f).collect()
        }
        _ => items.into_iter().map(f).collect(),
    }
}

pub fn map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    map_with(Strategy::default_for_build(), items, f)
}

/// Reads `MASSFORGE_THREADS` and sizes the global pool accordingly. Returns
/// the requested count, if any. Calling it twice is harmless.
pub fn init_from_env() -> Result<Option<usize>> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(None) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Schema(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    #[cfg(feature = "parallel")]
    {
        // a second initialization fails; the first one wins
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(Some(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let items: Vec<u64> = (0..500).collect();
        let seq = map_with(Strategy::Sequential, items.clone(), |x| x * x % 97);
        let par = map_with(Strategy::Parallel, items, |x| x * x % 97);
        assert_eq!(seq, par);
    }
}
