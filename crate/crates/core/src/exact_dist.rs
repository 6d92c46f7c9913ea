//! Exact laws of `D(n)` by forward dynamic programming.
//!
//! Between times `t-1` and `t` the degree `x` of a fixed vertex (or vertex set)
//! grows by one with probability `x/(2t-1)` and stays put otherwise. Exact mode
//! multiplies every numerator by `2t-1` per step and keeps one shared
//! denominator. Float mode works in linear space with periodic renormalisation.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{invalid, unsupported};
use crate::pmf::{ArithmeticMode, Pmf, Probability};
use crate::{Error, Result};

/// Largest tolerated `|Σp - 1|` in float mode.
pub const FLOAT_MASS_TOLERANCE: f64 = 1e-9;
/// Float entries below this are set to zero.
pub const FLOAT_CLAMP: f64 = 1e-300;
const RENORMALIZE_EVERY: u64 = 256;

/// The law of a degree at a fixed process time.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    pub time: u64,
    pub pmf: Pmf,
    /// Float mode: total mass removed by clamping tiny entries.
    pub clamped_mass: f64,
}

impl DegreeDistribution {
    /// Unit mass at degree `d` at time `t`.
    pub fn point(t: u64, d: u64) -> Self {
        DegreeDistribution { time: t, pmf: Pmf::point(d), clamped_mass: 0.0 }
    }

    pub fn support_min(&self) -> u64 {
        self.pmf.support_min()
    }

    pub fn support_max(&self) -> u64 {
        self.pmf.support_max()
    }

    pub fn prob(&self, k: u64) -> Probability {
        self.pmf.prob(k)
    }
}

fn check_cap(mode: ArithmeticMode, n: u64) -> Result<()> {
    match mode {
        ArithmeticMode::Exact { cap } if n > cap => {
            Err(unsupported!("exact mode is capped at n ≤ {cap} (requested n = {n})"))
        }
        _ => Ok(()),
    }
}

/// Advances `initial` from its time to `n`.
pub fn forward_dp(initial: &DegreeDistribution, n: u64, mode: ArithmeticMode) -> Result<DegreeDistribution> {
    let t0 = initial.time;
    if t0 == 0 {
        return Err(invalid!("initial time must be at least 1"));
    }
    if n < t0 {
        return Err(invalid!("target time {n} precedes initial time {t0}"));
    }
    if initial.support_max() > 2 * t0 {
        return Err(invalid!("degree {} is impossible at time {t0}", initial.support_max()));
    }
    check_cap(mode, n)?;
    let mut out = initial.clone();
    out.time = n;
    match mode {
        ArithmeticMode::Exact { .. } => {
            if !out.pmf.is_exact() {
                return Err(unsupported!("exact propagation of a float distribution"));
            }
            exact_steps(&mut out.pmf, t0, n);
        }
        ArithmeticMode::Float => {
            if out.pmf.is_exact() {
                out.pmf = out.pmf.to_float();
            }
            out.clamped_mass += float_steps(&mut out.pmf, t0, n)?;
        }
    }
    Ok(out)
}

fn exact_steps(pmf: &mut Pmf, t0: u64, n: u64) {
    {
        let (offset, num, den) = pmf.exact_parts_mut().expect("exact pmf");
        for t in t0 + 1..=n {
            let s = 2 * t - 1;
            let lo = *offset;
            // Entry i holds degree lo + i; the top entry gains a new neighbour.
            let top = &num[num.len() - 1] * (lo + num.len() as u64 - 1);
            num.push(top);
            for i in (1..num.len() - 1).rev() {
                let x = lo + i as u64;
                let stay = &num[i] * (s - x);
                let moved = &num[i - 1] * (x - 1);
                num[i] = stay + moved;
            }
            num[0] *= s - lo;
            *den *= s;
            if num[0].is_zero() {
                num.remove(0);
                *offset += 1;
            }
            while num.last().is_some_and(Zero::is_zero) {
                num.pop();
            }
        }
    }
    pmf.retrim();
}

fn renormalize(p: &mut [f64], t: u64) -> Result<()> {
    let total: f64 = p.iter().sum();
    let drift = libm::fabs(total - 1.0);
    if drift > FLOAT_MASS_TOLERANCE {
        return Err(Error::NormalizationDrift { drift, limit: FLOAT_MASS_TOLERANCE });
    }
    if drift > 0.0 {
        log::trace!("degree DP mass drift {drift:e} at t = {t}");
    }
    for x in p.iter_mut() {
        *x /= total;
    }
    Ok(())
}

fn float_steps(pmf: &mut Pmf, t0: u64, n: u64) -> Result<f64> {
    let mut clamped = 0.0;
    {
        let (offset, p) = pmf.float_parts_mut().expect("float pmf");
        for t in t0 + 1..=n {
            let s = (2 * t - 1) as f64;
            let lo = *offset;
            let top = p[p.len() - 1] * (lo + p.len() as u64 - 1) as f64 / s;
            p.push(top);
            for i in (1..p.len() - 1).rev() {
                let x = (lo + i as u64) as f64;
                p[i] = p[i] * (1.0 - x / s) + p[i - 1] * (x - 1.0) / s;
            }
            p[0] *= 1.0 - lo as f64 / s;
            while p.len() > 1 && p[0] < FLOAT_CLAMP {
                clamped += p.remove(0);
                *offset += 1;
            }
            while p.len() > 1 && p[p.len() - 1] < FLOAT_CLAMP {
                clamped += p.pop().unwrap();
            }
            if (t - t0).is_multiple_of(RENORMALIZE_EVERY) {
                renormalize(p, t)?;
            }
        }
        for x in p.iter_mut() {
            if *x < FLOAT_CLAMP {
                clamped += *x;
                *x = 0.0;
            }
        }
        renormalize(p, n)?;
    }
    if clamped > 0.0 {
        log::debug!("clamped {clamped:e} of probability mass below {FLOAT_CLAMP:e}");
    }
    pmf.retrim();
    Ok(clamped)
}

/// The law of `v_t` at birth: degree 2 (self-loop) with probability `1/(2t-1)`.
fn birth(t: u64, mode: ArithmeticMode) -> DegreeDistribution {
    let s = 2 * t - 1;
    let pmf = if mode.is_exact() {
        Pmf::from_numerators(1, alloc::vec![BigUint::from(s - 1), BigUint::from(1u32)], BigUint::from(s))
    } else {
        Pmf::from_floats(1, alloc::vec![1.0 - 1.0 / s as f64, 1.0 / s as f64])
    };
    DegreeDistribution { time: t, pmf, clamped_mass: 0.0 }
}

/// Unconditional law of `d_1^n(v_t)`.
pub fn vertex_dist(t: u64, n: u64, mode: ArithmeticMode) -> Result<DegreeDistribution> {
    if t == 0 || t > n {
        return Err(invalid!("need 1 ≤ t ≤ n (t = {t}, n = {n})"));
    }
    check_cap(mode, n)?;
    forward_dp(&birth(t, mode), n, mode)
}

/// Law of `D(n)` given `D(t) = d`.
pub fn conditional_dist(t: u64, d: u64, n: u64, mode: ArithmeticMode) -> Result<DegreeDistribution> {
    if t == 0 || n < t {
        return Err(invalid!("need 1 ≤ t ≤ n (t = {t}, n = {n})"));
    }
    if d == 0 || d > 2 * t {
        return Err(invalid!("need 1 ≤ d ≤ 2t (d = {d}, t = {t})"));
    }
    forward_dp(&DegreeDistribution::point(t, d), n, mode)
}

/// `Σ_{k > threshold} p(k)`.
pub fn tail_prob(dist: &DegreeDistribution, threshold: f64) -> Probability {
    dist.pmf.tail(threshold)
}

/// Mean and variance.
pub fn moments(dist: &DegreeDistribution) -> (f64, f64) {
    dist.pmf.moments()
}

/// Laws of `d_1^n(v_t)` for every `n` in `t..=n_max`, computed in one sweep.
pub fn vertex_dist_sweep(t: u64, n_max: u64, mode: ArithmeticMode) -> Result<Vec<DegreeDistribution>> {
    let mut current = vertex_dist(t, t, mode)?;
    let mut out = alloc::vec![current.clone()];
    for n in t + 1..=n_max {
        current = forward_dp(&current, n, mode)?;
        out.push(current.clone());
    }
    Ok(out)
}
