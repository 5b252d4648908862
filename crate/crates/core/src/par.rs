//! Data-parallel helpers. With the `parallel` feature the work is spread
//! over a rayon pool; without it, or under [`Execution::Sequential`], the
//! same closures run in order on the calling thread. Results always come
//! back in input order.

use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this build can actually run work in parallel.
    pub fn available() -> bool {
        cfg!(feature = "parallel")
    }
}

pub fn map_range<T, F>(exec: Execution, range: Range<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    let _ = exec;
    range.map(f).collect()
}

pub fn map_slice<S, T, F>(exec: Execution, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Sizes the global pool from `MOP_THREADS` if it holds a positive
/// integer. Returns the thread count in effect, or `None` when the pool
/// was already initialized or the build is sequential.
pub fn init_from_env() -> Option<usize> {
    let threads = std::env::var("MOP_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    init_threads(threads)
}

#[cfg(feature = "parallel")]
pub fn init_threads(threads: Option<usize>) -> Option<usize> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        b = b.num_threads(n);
    }
    b.build_global().ok().map(|_| rayon::current_num_threads())
}

#[cfg(not(feature = "parallel"))]
pub fn init_threads(_threads: Option<usize>) -> Option<usize> {
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let seq = map_range(Execution::Sequential, 0..50, |i| i * i);
        let par = map_range(Execution::Parallel, 0..50, |i| i * i);
        assert_eq!(seq, par);
        let words = ["a", "bb", "ccc"];
        assert_eq!(map_slice(Execution::Parallel, &words, |w| w.len()), vec![1, 2, 3]);
    }
}
