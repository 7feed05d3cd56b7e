//! Parallel/sequential execution facade.
//!
//! Batch verification fans out over independent index ranges. With the
//! `parallel` feature (default) the work runs on the rayon pool; without it,
//! or when a caller asks for [`Exec::Sequential`], the same closures run on
//! one thread. Every entry point collects in index order or reduces by
//! minimum index, so results are identical for any worker count.

/// Execution strategy for batch work.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    /// Parallel when the `parallel` feature is enabled, sequential otherwise.
    #[default]
    Auto,
    /// Force single-threaded execution (used by the benchmark suite).
    Sequential,
}

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to `0..n`, collecting results in index order.
pub fn map_collect<T, F>(exec: Exec, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Auto {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Returns the output of `f` at the smallest index where it is `Some`.
pub fn find_first<T, F>(exec: Exec, n: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Auto {
        return (0..n).into_par_iter().find_map_first(f);
    }
    let _ = exec;
    (0..n).find_map(f)
}

/// Sums `f` over `0..n`.
pub fn sum_u64<F>(exec: Exec, n: usize, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Auto {
        return (0..n).into_par_iter().map(f).sum();
    }
    let _ = exec;
    (0..n).map(f).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_collect_preserves_order() {
        let v = map_collect(Exec::Auto, 1000, |i| i * i);
        let w = map_collect(Exec::Sequential, 1000, |i| i * i);
        assert_eq!(v, w);
    }

    #[test]
    fn find_first_returns_smallest_index() {
        let hit = find_first(Exec::Auto, 10_000, |i| if i % 97 == 13 { Some(i) } else { None });
        assert_eq!(hit, Some(13));
        assert_eq!(find_first(Exec::Sequential, 100, |_| None::<usize>), None);
    }

    #[test]
    fn sums_agree() {
        assert_eq!(
            sum_u64(Exec::Auto, 501, |i| i as u64),
            sum_u64(Exec::Sequential, 501, |i| i as u64)
        );
    }
}
