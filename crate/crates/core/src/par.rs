//! Data-parallel helpers. With the `parallel` feature these run on the rayon
//! pool; without it they are plain sequential loops. Results are always
//! collected in input order, so output never depends on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..len`, collecting in index order.
pub fn map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

pub fn map_slice<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Applies `f` to every element in place.
pub fn for_each_mut<T, F>(items: &mut [T], f: F)
where
    T: Send,
    F: Fn(&mut T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter_mut().for_each(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter_mut().for_each(f)
    }
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
