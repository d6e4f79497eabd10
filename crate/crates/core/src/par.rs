//! Execution mode for data-parallel loops.
//!
//! With the `parallel` feature disabled every mode runs sequentially, so
//! results never depend on the mode.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

impl ExecMode {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == ExecMode::Parallel
    }
}

/// Σ f(i) over a range.
pub fn sum_range<F>(mode: ExecMode, range: Range<u64>, f: F) -> u64
where
    F: Fn(u64) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).sum();
    }
    let _ = mode;
    range.map(f).sum()
}

/// Whether f(i) holds for any i in the range.
pub fn any_range<F>(mode: ExecMode, range: Range<u64>, f: F) -> bool
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().any(f);
    }
    let _ = mode;
    range.into_iter().any(f)
}

/// Order-preserving map.
pub fn map_vec<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let f = |i: u64| i * i % 7;
        assert_eq!(sum_range(ExecMode::Sequential, 0..1000, f), sum_range(ExecMode::Parallel, 0..1000, f));
        let v: Vec<u64> = (0..100).collect();
        assert_eq!(map_vec(ExecMode::Parallel, &v, |x| x + 1), map_vec(ExecMode::Sequential, &v, |x| x + 1));
        assert!(any_range(ExecMode::Parallel, 0..50, |i| i == 49));
        assert!(!any_range(ExecMode::Sequential, 0..50, |i| i == 50));
    }
}
