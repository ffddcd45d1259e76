//! Thin switch between rayon and plain iterators.
//!
//! Every helper returns results in input order, so callers get the same output
//! whether or not the `parallel` feature is enabled.

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential counterpart of [`map`], always available.
pub fn map_seq<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Maps `f` over index ranges `[lo, hi)` of `0..len` split into chunks, then
/// folds the chunk results in order with `merge`.
pub fn chunked_reduce<R, F, M>(len: usize, chunk: usize, f: F, merge: M) -> Option<R>
where
    R: Send,
    F: Fn(usize, usize) -> R + Sync + Send,
    M: Fn(R, R) -> R,
{
    let chunk = chunk.max(1);
    let bounds: Vec<(usize, usize)> = (0..len)
        .step_by(chunk)
        .map(|lo| (lo, (lo + chunk).min(len)))
        .collect();
    map(&bounds, |&(lo, hi)| f(lo, hi))
        .into_iter()
        .reduce(merge)
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// Runs `f` on consecutive `chunk_len`-sized chunks of `data`.
pub fn for_each_chunk_mut<T, F>(data: &mut [T], chunk_len: usize, f: F)
where
    T: Send,
    F: Fn(&mut [T]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        data.par_chunks_mut(chunk_len).for_each(f);
    }
    #[cfg(not(feature = "parallel"))]
    {
        data.chunks_mut(chunk_len).for_each(f);
    }
}
