//! Order-preserving maps over independent work items.
//!
//! With the `parallel` feature the work is spread over the rayon pool when
//! requested; without it every call runs sequentially.

/// Applies `f` to every item, in parallel when `parallel` is set and the
/// feature is enabled. Output order always matches input order.
pub fn map<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = parallel;
    items.iter().map(f).collect()
}

/// Whether [`map`] can actually run in parallel in this build.
pub const fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let v: Vec<u64> = (0..500).collect();
        let seq = map(&v, false, |x| x * x);
        let par = map(&v, true, |x| x * x);
        assert_eq!(seq, par);
        assert_eq!(seq[499], 499 * 499);
        assert!(map(&Vec::<u8>::new(), true, |x| *x).is_empty());
    }
}
