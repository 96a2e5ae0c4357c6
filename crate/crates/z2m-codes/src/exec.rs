//! Execution helpers: data-parallel folds with a deterministic merge order.
//!
//! With the `parallel` feature enabled the helpers run on rayon; without it
//! they degrade to plain loops. Results are identical in both modes because
//! work is split into fixed-size chunks and the per-chunk accumulators are
//! merged in chunk order, never in completion order. The benches use
//! [`run_sequential`] to time the sequential path inside a parallel build.

use std::cell::Cell;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with parallel execution disabled on the current thread.
pub fn run_sequential<R>(f: impl FnOnce() -> R) -> R {
    FORCE_SEQUENTIAL.with(|flag| {
        let prev = flag.replace(true);
        let out = f();
        flag.set(prev);
        out
    })
}

fn parallel_active() -> bool {
    cfg!(feature = "parallel") && !FORCE_SEQUENTIAL.with(Cell::get)
}

/// Chunk size for index-range folds. Small enough to spread desk-scale
/// workloads over all cores, large enough to amortize the merge.
pub(crate) const CHUNK: usize = 1 << 10;

/// Folds `0..len` into accumulators chunk by chunk and merges them in
/// chunk order.
pub(crate) fn fold_range<A, I, F, M>(len: usize, init: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, usize) + Sync,
    M: Fn(&mut A, A),
{
    let ranges: Vec<(usize, usize)> = (0..len)
        .step_by(CHUNK.max(1))
        .map(|s| (s, (s + CHUNK).min(len)))
        .collect();

    let fold_chunk = |&(start, end): &(usize, usize)| {
        let mut acc = init();
        for i in start..end {
            fold(&mut acc, i);
        }
        acc
    };

    #[cfg(feature = "parallel")]
    if parallel_active() && ranges.len() > 1 {
        let parts: Vec<A> = ranges.par_iter().map(fold_chunk).collect();
        let mut out = init();
        for part in parts {
            merge(&mut out, part);
        }
        return out;
    }

    let _ = parallel_active();
    let mut out = init();
    for r in &ranges {
        merge(&mut out, fold_chunk(r));
    }
    out
}

/// Maps `items` and merges the per-chunk results in chunk order.
pub(crate) fn fold_items<T, A, I, F, M>(items: &[T], init: I, fold: F, merge: M) -> A
where
    T: Sync,
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &T) + Sync,
    M: Fn(&mut A, A),
{
    fold_range(items.len(), init, |acc, i| fold(acc, &items[i]), merge)
}
