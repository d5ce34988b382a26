//! Range-partitioned sweeps that run on rayon when the `parallel` feature is
//! on and fall back to plain iteration otherwise. Every reduction here is
//! associative (max-merge, concatenation, first-by-index), so the
//! result does not depend on the execution mode or thread count.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a sweep is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    /// Rayon data parallelism; identical to `Sequential` without the
    /// `parallel` feature.
    Parallel,
}

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
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Combines per-index results with an associative, commutative `combine`.
pub(crate) fn fold_map<T, F, C>(exec: Exec, range: Range<u64>, identity: T, f: F, combine: C) -> T
where
    T: Clone + Send + Sync,
    F: Fn(u64) -> T + Sync + Send,
    C: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().map(f).reduce(|| identity.clone(), &combine);
    }
    let _ = exec;
    range.map(f).fold(identity, combine)
}

/// The result for the smallest index in `range` for which `f` is `Some`.
pub(crate) fn find_first<T, F>(exec: Exec, range: Range<u64>, f: F) -> Option<T>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return range.into_par_iter().find_map_first(f);
    }
    let _ = exec;
    range.into_iter().find_map(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(find_first(exec, 0..100, |i| (i % 7 == 6).then_some(i)), Some(6));
            assert_eq!(fold_map(exec, 0..10, 0u64, |i| i, |a, b| a + b), 45);
        }
    }
}
