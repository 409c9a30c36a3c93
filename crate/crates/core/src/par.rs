//! Order-preserving map over a batch of independent work items.
//!
//! With the `parallel` feature (default) [`map_collect`] fans out through
//! rayon; without it the call is a plain iterator map. [`map_collect_seq`] is
//! always sequential, so benches can compare the two code paths directly.

/// Sequential map, always available.
pub fn map_collect_seq<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

/// Data-parallel map; preserves input order.
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

/// Sequential fallback used when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    map_collect_seq(items, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_in_order() {
        let items: Vec<u64> = (0..500).collect();
        let f = |x: u64| x * x + 1;
        assert_eq!(map_collect(items.clone(), f), map_collect_seq(items, f));
    }
}
