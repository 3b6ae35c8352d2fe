//! Thin switch between rayon and plain iteration.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Apply `f` to every item, in parallel when requested and available.
pub(crate) fn for_each_mut<T, F>(items: &mut [T], parallel: bool, f: F)
where
    T: Send,
    F: Fn(&mut T) + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel && items.len() > 1 {
        items.par_iter_mut().for_each(f);
        return;
    }
    let _ = parallel;
    items.iter_mut().for_each(f);
}

