/// How residue searches are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    /// Data-parallel over the residue space (rayon). Without the `parallel`
    /// feature this runs sequentially.
    #[default]
    Parallel,
    Sequential,
}

/// Caps on search size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_rank: usize,
    /// Maximal number of residue vectors visited by one search.
    pub budget: u64,
    pub exec: Exec,
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_rank: 8, budget: 100_000_000, exec: Exec::Parallel }
    }
}

impl Limits {
    pub fn sequential(self) -> Self {
        Self { exec: Exec::Sequential, ..self }
    }
}

/// Indices in `0..count` satisfying `keep`, in increasing order.
pub(crate) fn filter_range<F>(count: u64, exec: Exec, keep: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..count).into_par_iter().filter(|&i| keep(i)).collect()
        }
        _ => (0..count).filter(|&i| keep(i)).collect(),
    }
}

/// `f` applied to every item, order preserved.
pub(crate) fn map_slice<T, U, F>(items: &[T], exec: Exec, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}
