//! Exact and Monte Carlo checks of the degree tail and concentration bounds.
//!
//! Conditional statements ("given `D(t) = d0`") are checked by running the
//! degree chain directly from time `t`: between `s-1` and `s` the degree `x`
//! grows by one with probability `x/(2s-1)`. Monte Carlo verdicts are
//! one-sided and conservative: a bound holds when the measured frequency is
//! within the Wilson 99% half-width of it.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::Rng;

use crate::error::invalid;
use crate::exact_dist::vertex_dist;
use crate::exec::Executor;
use crate::math::BigQ;
use crate::pmf::{ArithmeticMode, Probability};
use crate::process::Process;
use crate::rng::{derive_seed, rng_from_seed, PaRng};
use crate::stats::{disjoint, wilson_interval, MeanAccumulator, Z_99};
use crate::Result;

/// How a measured value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Method {
    Exact,
    MonteCarlo,
}

/// Which side of the bound the measured value must fall on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Direction {
    /// `measured ≤ bound + ci_halfwidth`
    AtMost,
    /// `measured ≥ bound - ci_halfwidth`
    AtLeast,
}

/// One bound verification.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    pub name: String,
    pub parameters: BTreeMap<String, f64>,
    pub measured: f64,
    /// Exact measured value as `num/den`, when computed exactly.
    pub measured_exact: Option<String>,
    pub bound: f64,
    pub direction: Direction,
    pub holds: bool,
    pub method: Method,
    pub trials: u64,
    pub successes: u64,
    pub ci_halfwidth: f64,
    /// Wilson 99% interval of the measured frequency.
    pub interval: Option<(f64, f64)>,
    pub note: Option<String>,
}

impl BoundReport {
    fn new(name: &str, parameters: &[(&str, f64)], direction: Direction, method: Method) -> Self {
        BoundReport {
            name: name.to_string(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            measured: 0.0,
            measured_exact: None,
            bound: 0.0,
            direction,
            holds: false,
            method,
            trials: 0,
            successes: 0,
            ci_halfwidth: 0.0,
            interval: None,
            note: None,
        }
    }

    fn set_probability(&mut self, p: &Probability) {
        self.measured = p.to_f64();
        if let Probability::Exact(q) = p {
            self.measured_exact = Some(alloc::format!("{}/{}", q.numer(), q.denom()));
        }
    }

    fn set_frequency(&mut self, successes: u64, trials: u64) {
        let (lo, hi) = wilson_interval(successes, trials, Z_99);
        self.trials = trials;
        self.successes = successes;
        self.measured = successes as f64 / trials as f64;
        self.interval = Some((lo, hi));
        self.ci_halfwidth = (hi - lo) / 2.0;
    }

    fn decide(&mut self) {
        self.holds = match self.direction {
            Direction::AtMost => self.measured <= self.bound + self.ci_halfwidth,
            Direction::AtLeast => self.measured >= self.bound - self.ci_halfwidth,
        };
    }

    pub fn parameter(&self, key: &str) -> Option<f64> {
        self.parameters.get(key).copied()
    }
}

fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

// ---------------------------------------------------------------------------
// First vertex

/// `P[d_1^n(v_1) > c√n]` against `e^{-c²/4}`, one report per `c`, from one DP.
pub fn first_vertex_tails(cs: &[f64], n: u64, mode: ArithmeticMode) -> Result<Vec<BoundReport>> {
    if n == 0 {
        return Err(invalid!("n must be at least 1"));
    }
    if let Some(c) = cs.iter().find(|&&c| c.is_nan() || c <= 0.0) {
        return Err(invalid!("c must be positive (got {c})"));
    }
    let dist = vertex_dist(1, n, mode)?;
    Ok(cs
        .iter()
        .map(|&c| {
            let mut r = BoundReport::new("first_vertex_tail", &[("c", c), ("n", n as f64)], Direction::AtMost, Method::Exact);
            r.set_probability(&dist.pmf.tail(c * sqrt(n as f64)));
            r.bound = libm::exp(-c * c / 4.0);
            r.decide();
            if !mode.is_exact() {
                r.note = Some(alloc::format!("float DP, clamped mass {:e}", dist.clamped_mass));
            }
            r
        })
        .collect())
}

pub fn first_vertex_tail(c: f64, n: u64, mode: ArithmeticMode) -> Result<BoundReport> {
    Ok(first_vertex_tails(&[c], n, mode)?.remove(0))
}

/// `P[d_1^n(v_1) ≤ ε√n]` against `1/n` (lower bound).
pub fn small_degree_prob(n: u64, epsilon: f64, mode: ArithmeticMode) -> Result<BoundReport> {
    if n < 2 {
        return Err(invalid!("n must be at least 2"));
    }
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(invalid!("epsilon must be positive"));
    }
    let dist = vertex_dist(1, n, mode)?;
    let mut r = BoundReport::new("small_degree_prob", &[("epsilon", epsilon), ("n", n as f64)], Direction::AtLeast, Method::Exact);
    r.set_probability(&dist.pmf.cdf(epsilon * sqrt(n as f64)));
    r.bound = 1.0 / n as f64;
    r.decide();
    r.note = Some("asymptotic statement: only binding beyond some N_ε".to_string());
    Ok(r)
}

/// Reports for each `n` and the smallest `n` at which the bound holds.
pub fn small_degree_scan(ns: &[u64], epsilon: f64, mode: ArithmeticMode) -> Result<(Vec<BoundReport>, Option<u64>)> {
    let reports = ns.iter().map(|&n| small_degree_prob(n, epsilon, mode)).collect::<Result<Vec<_>>>()?;
    let first = ns.iter().zip(&reports).filter(|(_, r)| r.holds).map(|(&n, _)| n).min();
    Ok((reports, first))
}

/// `E[d_1^n(v_1)] = Π_{j<n} (2j+2)/(2j+1) = 4^n / C(2n, n)`, summed in log space.
pub fn mean_oracle(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(invalid!("n must be at least 1"));
    }
    let ln: f64 = (0..n).map(|j| libm::log1p(1.0 / (2 * j + 1) as f64)).sum();
    Ok(libm::exp(ln))
}

pub fn mean_oracle_exact(n: u64) -> Result<BigQ> {
    if n == 0 {
        return Err(invalid!("n must be at least 1"));
    }
    Ok((0..n as i64).fold(BigQ::from_integer(1.into()), |acc, j| acc * crate::math::q(2 * j + 2, 2 * j + 1)))
}

/// Monte Carlo estimate of a mean.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MeanEstimate {
    pub mean: f64,
    pub standard_error: f64,
    pub trials: u64,
}

/// Mean of `d_1^n(v_1)` over full process runs (not the degree chain).
pub fn first_vertex_mean_mc(n: u32, trials: u64, seed: u64, exec: &dyn Executor) -> Result<MeanEstimate> {
    if n == 0 || trials < 2 {
        return Err(invalid!("need n ≥ 1 and at least two trials"));
    }
    let (sum, sum_sq) = exec.sum_pair(trials, &|i| {
        let mut p = Process::new(derive_seed(seed, i));
        p.run_to(n);
        let d = p.graph().degree(1) as u64;
        (d, d * d)
    });
    let count = trials as f64;
    let mean = sum as f64 / count;
    let var = (sum_sq as f64 - count * mean * mean) / (count - 1.0);
    Ok(MeanEstimate { mean, standard_error: sqrt(var.max(0.0) / count), trials })
}

// ---------------------------------------------------------------------------
// Short-term bounds

/// Advances the degree chain from `D(from) = d` to time `to`.
pub fn run_chain(rng: &mut PaRng, from: u64, d: u64, to: u64) -> u64 {
    let mut x = d;
    for s in from + 1..=to {
        if rng.random_range(0..2 * s - 1) < x {
            x += 1;
        }
    }
    x
}

/// `⌊(1+δ)t⌋`.
pub fn short_term_horizon(t: u64, delta: f64) -> u64 {
    libm::floor((1.0 + delta) * t as f64 + 1e-9) as u64
}

fn check_short_term(t: u64, delta: f64, d0: u64, trials: u64, upper: bool) -> Result<()> {
    let max_delta = if upper { libm::exp(-2.0) } else { 1.0 };
    let ok = if upper { delta > 0.0 && delta <= max_delta } else { delta > 0.0 && delta < 1.0 };
    if !ok {
        return Err(invalid!("delta = {delta} outside its range"));
    }
    if (t as f64) < 2.0 / (delta * delta) {
        return Err(invalid!("need t ≥ 2/δ² (t = {t}, δ = {delta})"));
    }
    if d0 == 0 || d0 > 2 * t {
        return Err(invalid!("need 1 ≤ d0 ≤ 2t (d0 = {d0}, t = {t})"));
    }
    if trials == 0 {
        return Err(invalid!("trials must be positive"));
    }
    Ok(())
}

/// `P[D(⌊(1+δ)t⌋) ≤ (1 + δ/2 - 2δ²) d0 | D(t) = d0] ≤ e^{-δ³ d0 / 16}`.
pub fn short_term_lower(t: u64, delta: f64, d0: u64, trials: u64, seed: u64, exec: &dyn Executor) -> Result<BoundReport> {
    check_short_term(t, delta, d0, trials, false)?;
    let horizon = short_term_horizon(t, delta);
    let threshold = (1.0 + delta / 2.0 - 2.0 * delta * delta) * d0 as f64;
    let hits = exec.count(trials, &|i| {
        let mut rng = rng_from_seed(derive_seed(seed, i));
        (run_chain(&mut rng, t, d0, horizon) as f64) <= threshold
    });
    let params = [("t", t as f64), ("delta", delta), ("d0", d0 as f64), ("horizon", horizon as f64)];
    let mut r = BoundReport::new("short_term_lower", &params, Direction::AtMost, Method::MonteCarlo);
    r.set_frequency(hits, trials);
    r.bound = libm::exp(-delta * delta * delta * d0 as f64 / 16.0);
    r.decide();
    Ok(r)
}

/// `P[D(⌊(1+δ)t⌋) ≥ (1 + δ/2 + 2δ²) d0 | D(t) = d0] ≤ ln(e·2t) e^{-δ³ d0 / 8}`.
pub fn short_term_upper(t: u64, delta: f64, d0: u64, trials: u64, seed: u64, exec: &dyn Executor) -> Result<BoundReport> {
    check_short_term(t, delta, d0, trials, true)?;
    let horizon = short_term_horizon(t, delta);
    let threshold = (1.0 + delta / 2.0 + 2.0 * delta * delta) * d0 as f64;
    let hits = exec.count(trials, &|i| {
        let mut rng = rng_from_seed(derive_seed(seed, i));
        (run_chain(&mut rng, t, d0, horizon) as f64) >= threshold
    });
    let params = [("t", t as f64), ("delta", delta), ("d0", d0 as f64), ("horizon", horizon as f64)];
    let mut r = BoundReport::new("short_term_upper", &params, Direction::AtMost, Method::MonteCarlo);
    r.set_frequency(hits, trials);
    r.bound = (1.0 + libm::log(2.0 * t as f64)) * libm::exp(-delta * delta * delta * d0 as f64 / 8.0);
    r.decide();
    Ok(r)
}

// ---------------------------------------------------------------------------
// Band concentration

/// Parameters of a band check: `(1-ε)√(n/t) d0 < D(n) < (1+ε)√(n/t) d0` for
/// every integer `n` in `[t, horizon]`, given `D(t) = d0`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BandCheckSpec {
    pub t: u64,
    pub epsilon: f64,
    pub d0: u64,
    pub horizon: u64,
    pub trials: u64,
    pub seed: u64,
}

impl BandCheckSpec {
    pub fn validate(&self) -> Result<()> {
        if self.t == 0 || self.horizon < self.t {
            return Err(invalid!("need 1 ≤ t ≤ horizon"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(invalid!("epsilon must lie in (0, 1)"));
        }
        if self.d0 == 0 || self.d0 > 2 * self.t {
            return Err(invalid!("need 1 ≤ d0 ≤ 2t"));
        }
        if self.trials == 0 {
            return Err(invalid!("trials must be positive"));
        }
        Ok(())
    }

    /// Which of the theorem's preconditions (`ε ≤ 1/40`, `t > ε⁻⁶`) are relaxed.
    pub fn relaxations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.epsilon > 1.0 / 40.0 {
            out.push("epsilon > 1/40");
        }
        if (self.t as f64) <= libm::pow(self.epsilon, -6.0) {
            out.push("t ≤ 1/epsilon^6");
        }
        out
    }

    /// The theorem's failure bound `ln(15t) ε⁻⁶ exp(-ε¹⁵ 10⁻²⁴ d0)`.
    pub fn theorem_failure_bound(&self) -> f64 {
        let e = self.epsilon;
        libm::log(15.0 * self.t as f64) * libm::pow(e, -6.0) * libm::exp(-libm::pow(e, 15.0) * 1e-24 * self.d0 as f64)
    }
}

/// Whether one chain from `D(t) = d0` stays strictly inside the band up to `horizon`.
pub fn stays_in_band(rng: &mut PaRng, t: u64, d0: u64, epsilon: f64, horizon: u64) -> bool {
    let mut x = d0;
    let scale = d0 as f64 / sqrt(t as f64);
    for s in t..=horizon {
        if s > t && rng.random_range(0..2 * s - 1) < x {
            x += 1;
        }
        let centre = scale * sqrt(s as f64);
        let xf = x as f64;
        if xf <= (1.0 - epsilon) * centre || xf >= (1.0 + epsilon) * centre {
            return false;
        }
    }
    true
}

/// In-band frequency. The theorem's guarantee is reported but is vacuous at
/// these scales; compare frequencies across `d0` with [`band_trend`].
pub fn band_check(spec: &BandCheckSpec, exec: &dyn Executor) -> Result<BoundReport> {
    spec.validate()?;
    let s = *spec;
    let inside = exec.count(s.trials, &|i| {
        let mut rng = rng_from_seed(derive_seed(s.seed, i));
        stays_in_band(&mut rng, s.t, s.d0, s.epsilon, s.horizon)
    });
    let params = [("t", s.t as f64), ("epsilon", s.epsilon), ("d0", s.d0 as f64), ("horizon", s.horizon as f64)];
    let mut r = BoundReport::new("band_check", &params, Direction::AtLeast, Method::MonteCarlo);
    r.set_frequency(inside, s.trials);
    let failure = spec.theorem_failure_bound();
    r.bound = (1.0 - failure).max(0.0);
    r.decide();
    let relaxed = spec.relaxations();
    r.note = Some(if relaxed.is_empty() {
        alloc::format!("theorem failure bound {failure:e}")
    } else {
        alloc::format!("theorem failure bound {failure:e}; relaxed preconditions: {}", relaxed.join(", "))
    });
    Ok(r)
}

/// Band checks across increasing `d0` and whether their frequencies rise.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BandTrend {
    pub reports: Vec<BoundReport>,
    pub strictly_increasing: bool,
    /// Consecutive 99% intervals are disjoint.
    pub separated: bool,
}

pub fn band_trend(t: u64, epsilon: f64, d0s: &[u64], horizon: u64, trials: u64, seed: u64, exec: &dyn Executor) -> Result<BandTrend> {
    if d0s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid!("d0 values must be strictly increasing"));
    }
    let reports = d0s
        .iter()
        .enumerate()
        .map(|(j, &d0)| {
            let spec = BandCheckSpec { t, epsilon, d0, horizon, trials, seed: derive_seed(seed, j as u64) };
            band_check(&spec, exec)
        })
        .collect::<Result<Vec<_>>>()?;
    let strictly_increasing = reports.windows(2).all(|w| w[0].measured < w[1].measured);
    let separated = reports.windows(2).all(|w| disjoint(w[0].interval.unwrap(), w[1].interval.unwrap()));
    Ok(BandTrend { reports, strictly_increasing, separated })
}

/// Sample mean and standard error of `D(horizon)` from `D(t) = d0` (diagnostics).
pub fn chain_moments(t: u64, d0: u64, horizon: u64, trials: u64, seed: u64) -> MeanEstimate {
    let mut acc = MeanAccumulator::default();
    for i in 0..trials {
        let mut rng = rng_from_seed(derive_seed(seed, i));
        acc.push(run_chain(&mut rng, t, d0, horizon) as f64);
    }
    MeanEstimate { mean: acc.mean(), standard_error: acc.standard_error(), trials }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Sequential;
    use crate::math::q;

    #[test]
    fn tail_bound_values() {
        let r = first_vertex_tail(2.0, 100, ArithmeticMode::EXACT).unwrap();
        assert!((r.bound - 0.367_879_441_171_442_3).abs() < 1e-15);
        assert!(r.holds && r.measured < r.bound);
        assert!(r.measured_exact.is_some());
        let small = first_vertex_tail(1e-6, 50, ArithmeticMode::EXACT).unwrap();
        assert!(small.measured <= 1.0 && small.bound > 0.999_999);
        assert!(first_vertex_tail(0.0, 10, ArithmeticMode::EXACT).is_err());
    }

    #[test]
    fn float_tail_agrees_with_exact() {
        let e = first_vertex_tails(&[0.5, 1.0, 2.0, 3.0], 400, ArithmeticMode::EXACT).unwrap();
        let f = first_vertex_tails(&[0.5, 1.0, 2.0, 3.0], 400, ArithmeticMode::Float).unwrap();
        for (a, b) in e.iter().zip(&f) {
            assert!((a.measured - b.measured).abs() <= 1e-10 * a.measured.max(1e-300));
        }
    }

    #[test]
    fn small_degree_examples() {
        let big_eps = small_degree_prob(400, 2.0, ArithmeticMode::EXACT).unwrap();
        assert!(big_eps.measured >= 1.0 - (-1.0f64).exp());
        assert!(big_eps.holds);
        let tiny = small_degree_prob(100, 0.01, ArithmeticMode::EXACT).unwrap();
        assert_eq!(tiny.measured, 0.0);
        assert!(!tiny.holds);
        let (reports, first) = small_degree_scan(&[100, 400, 1600], 0.5, ArithmeticMode::EXACT).unwrap();
        assert_eq!(reports.len(), 3);
        assert_eq!(first, Some(100));
    }

    #[test]
    fn mean_oracle_values() {
        assert_eq!(mean_oracle(1).unwrap(), 2.0);
        assert!((mean_oracle(2).unwrap() - 8.0 / 3.0).abs() < 1e-15);
        assert_eq!(mean_oracle_exact(2).unwrap(), q(8, 3));
        // 4^n / C(2n, n) = √(πn) (1 + 1/(8n) + 1/(128n²) + O(n⁻³))
        let n = 10_000.0;
        let ratio = mean_oracle(10_000).unwrap() / libm::sqrt(core::f64::consts::PI * n);
        let expansion = 1.0 + 1.0 / (8.0 * n) + 1.0 / (128.0 * n * n);
        assert!((ratio - expansion).abs() < 1e-10, "{ratio}");
        let exact = crate::math::q_to_f64(&mean_oracle_exact(300).unwrap());
        assert!((mean_oracle(300).unwrap() / exact - 1.0).abs() < 1e-13);
    }

    #[test]
    fn short_term_preconditions() {
        let ex = Sequential;
        assert!(short_term_lower(100, 0.1, 10, 10, 0, &ex).is_err());
        assert!(short_term_lower(5000, 0.1, 0, 10, 0, &ex).is_err());
        assert!(short_term_lower(5000, 0.1, 10_001, 10, 0, &ex).is_err());
        assert!(short_term_upper(5000, 0.2, 100, 10, 0, &ex).is_err());
        let easy = short_term_lower(8, 0.99, 1, 200, 3, &ex).unwrap();
        assert!(easy.bound > 0.9 && easy.holds);
        assert_eq!(short_term_horizon(5000, 0.1), 5500);
    }

    #[test]
    fn band_edge_cases() {
        let ex = Sequential;
        let spec = BandCheckSpec { t: 50, epsilon: 0.3, d0: 40, horizon: 50, trials: 50, seed: 1 };
        assert_eq!(band_check(&spec, &ex).unwrap().measured, 1.0);
        let max = BandCheckSpec { t: 200, epsilon: 0.3, d0: 400, horizon: 2000, trials: 300, seed: 2 };
        assert!(band_check(&max, &ex).unwrap().measured > 0.98);
        let r = band_check(&max, &ex).unwrap();
        assert!(r.note.unwrap().contains("relaxed"));
        assert!(band_trend(200, 0.3, &[80, 20], 400, 5, 0, &ex).is_err());
    }

    #[test]
    fn chain_mean_follows_product() {
        let est = chain_moments(50, 30, 450, 20_000, 9);
        let mut expected = 30.0;
        for s in 51..=450u64 {
            expected *= 2.0 * s as f64 / (2.0 * s as f64 - 1.0);
        }
        assert!((est.mean - expected).abs() < 4.0 * est.standard_error);
    }
}
