//! Trial execution: rayon when the `parallel` feature is on, a plain loop otherwise.
//!
//! Results always come back in trial order, so reports do not depend on scheduling.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

pub fn map_trials<R, F>(trials: usize, exec: Execution, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..trials).into_par_iter().map(f).collect(),
        _ => (0..trials).map(f).collect(),
    }
}
