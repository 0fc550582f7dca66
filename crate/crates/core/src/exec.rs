//! Execution strategy for the exhaustive sweeps and matrix assembly.
//!
//! With the `parallel` feature (on by default) work is spread over the rayon
//! pool. Without it, or with [`Strategy::Sequential`], everything runs on the
//! calling thread. Results are identical either way: ordered maps collect in
//! input order and searches return the first hit in input order.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

static DEFAULT: AtomicU8 = AtomicU8::new(1);

impl Strategy {
    /// Process-wide default used by operations that take no explicit strategy.
    pub fn current() -> Strategy {
        if DEFAULT.load(Ordering::Relaxed) == 0 {
            Strategy::Sequential
        } else {
            Strategy::Parallel
        }
    }

    pub fn set_current(s: Strategy) {
        DEFAULT.store(matches!(s, Strategy::Parallel) as u8, Ordering::Relaxed);
    }

    /// Whether this build can actually run in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// First `Some` produced by `f`, in input order.
pub fn find_map_first<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            items.par_iter().find_map_first(f)
        }
        _ => items.iter().find_map(f),
    }
}

/// Like [`find_map_first`] for fallible work: the first error or hit wins.
pub fn try_find_map_first<T, R, E, F>(strategy: Strategy, items: &[T], f: F) -> Result<Option<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<Option<R>, E> + Sync + Send,
{
    let hit = find_map_first(strategy, items, |t| match f(t) {
        Ok(None) => None,
        Ok(Some(r)) => Some(Ok(r)),
        Err(e) => Some(Err(e)),
    });
    hit.transpose()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let xs: Vec<u32> = (0..1000).collect();
        let seq = map(Strategy::Sequential, &xs, |x| x * x);
        let par = map(Strategy::Parallel, &xs, |x| x * x);
        assert_eq!(seq, par);
        let f = |x: &u32| (x % 97 == 13 && *x > 100).then_some(*x);
        assert_eq!(
            find_map_first(Strategy::Sequential, &xs, f),
            find_map_first(Strategy::Parallel, &xs, f)
        );
    }
}
