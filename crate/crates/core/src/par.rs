//! Data-parallel helpers. With the `parallel` feature the closures run on
//! the rayon pool; without it, or when sequential mode is forced at runtime
//! (used by the benchmarks for comparison), they run inline. Results are
//! collected in input order, so outputs are identical either way.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Force the sequential path even when the `parallel` feature is enabled.
pub fn set_sequential(force: bool) {
    FORCE_SEQUENTIAL.store(force, Ordering::SeqCst);
}

pub fn is_sequential() -> bool {
    if cfg!(not(feature = "parallel")) {
        return true;
    }
    FORCE_SEQUENTIAL.load(Ordering::SeqCst)
}

#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    if is_sequential() {
        items.into_iter().map(f).collect()
    } else {
        items.into_par_iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}
