//! Small statistics helpers for Monte Carlo reports.

/// Two-sided 99% standard normal quantile, Φ⁻¹(0.995).
pub const Z_99: f64 = 2.575_829_303_548_901;

/// Wilson score interval for `successes` out of `trials`.
///
/// Returns `(low, high)`; `(0, 1)` when there are no trials.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * libm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

/// Whether two closed intervals are disjoint.
pub fn disjoint(a: (f64, f64), b: (f64, f64)) -> bool {
    a.1 < b.0 || b.1 < a.0
}

/// Running mean and variance (Welford); order-sensitive only in the last bits.
#[derive(Debug, Clone, Copy, Default)]
pub struct MeanAccumulator {
    count: u64,
    mean: f64,
    m2: f64,
}

impl MeanAccumulator {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn standard_error(&self) -> f64 {
        libm::sqrt(self.variance() / self.count as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_matches_reference_values() {
        // 50/100 at z = 2.5758: center 0.5, half-width from the closed form.
        let (lo, hi) = wilson_interval(50, 100, Z_99);
        assert!((lo - 0.375_280).abs() < 1e-5, "{lo}");
        assert!((hi - 0.624_720).abs() < 1e-5, "{hi}");
        let (lo, hi) = wilson_interval(0, 10, Z_99);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.3 && hi < 0.5);
    }

    #[test]
    fn wilson_contains_estimate() {
        for s in 0..=40 {
            let (lo, hi) = wilson_interval(s, 40, Z_99);
            let p = s as f64 / 40.0;
            assert!(lo <= p && p <= hi);
        }
    }

    #[test]
    fn accumulator_moments() {
        let mut acc = MeanAccumulator::default();
        for x in [1.0, 2.0, 3.0, 4.0] {
            acc.push(x);
        }
        assert_eq!(acc.mean(), 2.5);
        assert!((acc.variance() - 5.0 / 3.0).abs() < 1e-12);
    }
}
