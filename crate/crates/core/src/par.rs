//! Sequential / data-parallel execution of independent work items.
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! without it every mode runs sequentially. Results are always returned
//! in input order so merged reports do not depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// `f` applied to every item, in order.
    pub fn map<T, R, M>(self, items: &[T], f: M) -> Vec<R>
    where
        T: Sync,
        R: Send,
        M: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// `f` applied to `0..n`, in order.
    pub fn map_range<R, M>(self, n: usize, f: M) -> Vec<R>
    where
        R: Send,
        M: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// The result for the smallest index in `0..n` where `f` returns `Some`.
    pub fn find_first<R, M>(self, n: usize, f: M) -> Option<(usize, R)>
    where
        R: Send,
        M: Fn(usize) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => (0..n).into_par_iter().find_map_first(|i| f(i).map(|r| (i, r))),
            _ => (0..n).find_map(|i| f(i).map(|r| (i, r))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let a = Execution::Sequential.map(&items, |v| v * v);
        let b = Execution::Parallel.map(&items, |v| v * v);
        assert_eq!(a, b);
        let f = |i: usize| (i % 97 == 96).then_some(i * 2);
        assert_eq!(Execution::Sequential.find_first(1000, f), Some((96, 192)));
        assert_eq!(Execution::Parallel.find_first(1000, f), Some((96, 192)));
        assert_eq!(Execution::Parallel.map_range(5, |i| i), vec![0, 1, 2, 3, 4]);
    }
}
