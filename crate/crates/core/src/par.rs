//! Chunked map over index ranges, parallel with the `parallel` feature.
//!
//! Chunk boundaries depend only on the item count and chunk size, and the
//! per-chunk results come back in chunk order. Callers reduce them
//! sequentially, so sums never depend on the number of worker threads.

use std::cell::Cell;
use std::ops::Range;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with parallel execution disabled on the current thread.
pub fn run_sequential<R>(f: impl FnOnce() -> R) -> R {
    let prev = FORCE_SEQUENTIAL.with(|c| c.replace(true));
    let out = f();
    FORCE_SEQUENTIAL.with(|c| c.set(prev));
    out
}

/// True when chunk maps on this thread will fan out to worker threads.
pub fn is_parallel() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.with(|c| c.get())
}

pub(crate) fn map_chunks<T, F>(n: u64, chunk: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
{
    let chunk = chunk.max(1);
    let chunks = n.div_ceil(chunk);
    let range = move |c: u64| c * chunk..((c + 1) * chunk).min(n);

    #[cfg(feature = "parallel")]
    if is_parallel() {
        use rayon::prelude::*;
        return (0..chunks).into_par_iter().map(|c| f(range(c))).collect();
    }

    (0..chunks).map(|c| f(range(c))).collect()
}
