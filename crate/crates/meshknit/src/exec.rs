//! Execution strategy. With the `parallel` feature, `Exec::Parallel` fans work out over
//! the rayon pool; without it every strategy runs sequentially.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Order-preserving map.
pub fn map<T, U, F>(exec: Exec, items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}

/// Caps the global worker pool. Returns false when the pool was already initialized or
/// the crate was built without the `parallel` feature.
pub fn set_thread_cap(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}

/// Applies `MESHKNIT_THREADS` if set to a positive integer.
pub fn apply_thread_env() {
    if let Some(n) = std::env::var("MESHKNIT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            set_thread_cap(n);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let v: Vec<u64> = (0..100).collect();
        let a = map(Exec::Sequential, v.clone(), |x| x * x);
        let b = map(Exec::Parallel, v, |x| x * x);
        assert_eq!(a, b);
    }
}
