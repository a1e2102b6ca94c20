//! Thin switch between rayon data-parallel kernels and a sequential
//! fallback. With the default `parallel` feature the closures run on the
//! global rayon pool; without it the same code runs on one thread. Every
//! aggregation routed through here is either an indexed collect, a `max`, or
//! an integer-count merge, so results are identical in both modes and for
//! any thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `0..n` through `f`, preserving index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Fold `0..n` into per-chunk accumulators and merge them associatively.
/// `make` builds an identity accumulator, `fold` absorbs one index, `merge`
/// combines two accumulators. `merge` must be associative and commutative
/// (integer-count merges are), which keeps the result thread-count
/// independent.
pub fn fold_indexed<A, FM, FF, FR>(n: usize, make: FM, fold: FF, merge: FR) -> A
where
    A: Send,
    FM: Fn() -> A + Sync + Send,
    FF: Fn(A, usize) -> A + Sync + Send,
    FR: Fn(A, A) -> A + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().fold(&make, &fold).reduce(&make, &merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = &merge;
        (0..n).fold(make(), fold)
    }
}
