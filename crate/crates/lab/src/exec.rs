use pa_core::exec::Executor;
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

/// Runs trials on a dedicated rayon pool.
///
/// Trial outcomes are summed as integers, so results do not depend on the
/// number of threads.
pub struct Parallel {
    pool: ThreadPool,
}

impl Parallel {
    /// `jobs = None` uses one thread per available core.
    pub fn new(jobs: Option<usize>) -> anyhow::Result<Self> {
        let mut builder = ThreadPoolBuilder::new();
        if let Some(j) = jobs {
            anyhow::ensure!(j >= 1, "--jobs must be at least 1");
            builder = builder.num_threads(j);
        }
        Ok(Parallel { pool: builder.build()? })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for Parallel {
    fn sum_pair(&self, trials: u64, trial: &(dyn Fn(u64) -> (u64, u64) + Sync)) -> (u128, u128) {
        self.pool.install(|| {
            (0..trials)
                .into_par_iter()
                .map(|i| {
                    let (a, b) = trial(i);
                    (a as u128, b as u128)
                })
                .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pa_core::exec::Sequential;

    #[test]
    fn matches_sequential() {
        let trial = |i: u64| (i * i % 7, i % 3);
        let seq = Sequential.sum_pair(10_000, &trial);
        for jobs in [1, 2, 5] {
            assert_eq!(Parallel::new(Some(jobs)).unwrap().sum_pair(10_000, &trial), seq);
        }
        assert!(Parallel::new(Some(0)).is_err());
    }
}
