//! Trial execution.
//!
//! Monte Carlo operations describe one trial as a pure function of its index and
//! hand the loop to an [`Executor`]. Aggregates are integer sums, so every
//! executor produces identical reports regardless of scheduling.

/// Runs independent trials `0..trials` and aggregates their integer outcomes.
pub trait Executor {
    /// Component-wise sums of `trial(i)` over `i in 0..trials`.
    fn sum_pair(&self, trials: u64, trial: &(dyn Fn(u64) -> (u64, u64) + Sync)) -> (u128, u128);

    fn sum(&self, trials: u64, trial: &(dyn Fn(u64) -> u64 + Sync)) -> u128 {
        self.sum_pair(trials, &|i| (trial(i), 0)).0
    }

    fn count(&self, trials: u64, trial: &(dyn Fn(u64) -> bool + Sync)) -> u64 {
        self.sum(trials, &|i| trial(i) as u64) as u64
    }
}

/// Runs trials one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn sum_pair(&self, trials: u64, trial: &(dyn Fn(u64) -> (u64, u64) + Sync)) -> (u128, u128) {
        (0..trials).fold((0, 0), |(a, b), i| {
            let (x, y) = trial(i);
            (a + x as u128, b + y as u128)
        })
    }
}
