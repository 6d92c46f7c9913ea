//! Probability mass functions over a contiguous integer support.
//!
//! Exact pmfs keep integer numerators over one shared denominator. Both the
//! degree recurrence and the balanced urns divide every state by the same
//! number at each step, so the forward DP never needs a gcd.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::math::{q_to_f64, ratio_to_f64, BigQ};

/// Default largest time for exact-rational degree distributions.
pub const DEFAULT_EXACT_CAP: u64 = 2000;

/// Arithmetic used by the distribution and closed-form routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithmeticMode {
    /// Exact rationals; degree DPs refuse horizons beyond `cap`.
    Exact { cap: u64 },
    /// `f64` (linear space for DPs, log-Γ space for closed forms).
    Float,
}

impl ArithmeticMode {
    pub const EXACT: ArithmeticMode = ArithmeticMode::Exact { cap: DEFAULT_EXACT_CAP };

    pub fn is_exact(self) -> bool {
        matches!(self, ArithmeticMode::Exact { .. })
    }
}

impl fmt::Display for ArithmeticMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithmeticMode::Exact { .. } => f.write_str("exact"),
            ArithmeticMode::Float => f.write_str("float"),
        }
    }
}

/// A probability value, tagged by representation.
#[derive(Debug, Clone, PartialEq)]
pub enum Probability {
    Exact(BigQ),
    Float(f64),
}

impl Probability {
    pub fn zero(mode: ArithmeticMode) -> Self {
        if mode.is_exact() {
            Probability::Exact(BigQ::zero())
        } else {
            Probability::Float(0.0)
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Probability::Exact(q) => q_to_f64(q),
            Probability::Float(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&BigQ> {
        match self {
            Probability::Exact(q) => Some(q),
            Probability::Float(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Probability::Exact(q) => q.is_zero(),
            Probability::Float(x) => *x == 0.0,
        }
    }
}

/// `num/den` for exact values, shortest round-trip decimal for floats.
impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Probability::Exact(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Probability::Float(x) => write!(f, "{x:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Weights {
    Exact { numerators: Vec<BigUint>, denominator: BigUint },
    Float(Vec<f64>),
}

/// A pmf on `offset, offset+1, …, offset+len-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    offset: u64,
    weights: Weights,
}

impl Pmf {
    /// Unit mass at `value`, exact.
    pub fn point(value: u64) -> Self {
        Pmf {
            offset: value,
            weights: Weights::Exact { numerators: alloc::vec![BigUint::one()], denominator: BigUint::one() },
        }
    }

    /// Exact pmf from numerators over a shared denominator.
    pub fn from_numerators(offset: u64, numerators: Vec<BigUint>, denominator: BigUint) -> Self {
        assert!(!denominator.is_zero());
        let mut pmf = Pmf { offset, weights: Weights::Exact { numerators, denominator } };
        pmf.trim();
        pmf
    }

    pub fn from_floats(offset: u64, values: Vec<f64>) -> Self {
        let mut pmf = Pmf { offset, weights: Weights::Float(values) };
        pmf.trim();
        pmf
    }

    /// Exact pmf from arbitrary rationals (brought to a common denominator).
    pub fn from_rationals(offset: u64, values: &[BigQ]) -> Self {
        let mut den = BigInt::one();
        for v in values {
            den = num_integer::lcm(den, v.denom().clone());
        }
        let numerators = values
            .iter()
            .map(|v| {
                let n = v.numer() * (&den / v.denom());
                n.to_biguint().expect("probabilities are non-negative")
            })
            .collect();
        Self::from_numerators(offset, numerators, den.to_biguint().expect("positive"))
    }

    fn trim(&mut self) {
        match &mut self.weights {
            Weights::Exact { numerators, .. } => {
                let lead = numerators.iter().take_while(|x| x.is_zero()).count();
                if lead == numerators.len() {
                    return;
                }
                numerators.drain(..lead);
                self.offset += lead as u64;
                while numerators.last().is_some_and(|x| x.is_zero()) {
                    numerators.pop();
                }
            }
            Weights::Float(values) => {
                let lead = values.iter().take_while(|&&x| x == 0.0).count();
                if lead == values.len() {
                    return;
                }
                values.drain(..lead);
                self.offset += lead as u64;
                while values.last().is_some_and(|&x| x == 0.0) {
                    values.pop();
                }
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.weights, Weights::Exact { .. })
    }

    pub fn mode_name(&self) -> &'static str {
        if self.is_exact() {
            "exact"
        } else {
            "float"
        }
    }

    pub fn len(&self) -> usize {
        match &self.weights {
            Weights::Exact { numerators, .. } => numerators.len(),
            Weights::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn support_min(&self) -> u64 {
        self.offset
    }

    pub fn support_max(&self) -> u64 {
        self.offset + self.len() as u64 - 1
    }

    /// `P[X = k]`; zero outside the support.
    pub fn prob(&self, k: u64) -> Probability {
        let idx = k.checked_sub(self.offset).map(|i| i as usize).filter(|&i| i < self.len());
        match (&self.weights, idx) {
            (Weights::Exact { numerators, denominator }, Some(i)) => Probability::Exact(BigQ::new(
                BigInt::from(numerators[i].clone()),
                BigInt::from(denominator.clone()),
            )),
            (Weights::Exact { .. }, None) => Probability::Exact(BigQ::zero()),
            (Weights::Float(v), Some(i)) => Probability::Float(v[i]),
            (Weights::Float(_), None) => Probability::Float(0.0),
        }
    }

    pub fn prob_f64(&self, k: u64) -> f64 {
        match (&self.weights, k.checked_sub(self.offset)) {
            (Weights::Exact { numerators, denominator }, Some(i)) if (i as usize) < numerators.len() => {
                ratio_to_f64(&numerators[i as usize], denominator)
            }
            (Weights::Float(v), Some(i)) if (i as usize) < v.len() => v[i as usize],
            _ => 0.0,
        }
    }

    /// `(k, P[X = k])` over the dense support.
    pub fn iter(&self) -> impl Iterator<Item = (u64, Probability)> + '_ {
        (0..self.len() as u64).map(move |i| (self.offset + i, self.prob(self.offset + i)))
    }

    /// Probabilities as `f64`, indexed from `support_min`.
    pub fn to_f64_vec(&self) -> Vec<f64> {
        match &self.weights {
            Weights::Exact { numerators, denominator } => {
                numerators.iter().map(|n| ratio_to_f64(n, denominator)).collect()
            }
            Weights::Float(v) => v.clone(),
        }
    }

    /// The same law in float representation.
    pub fn to_float(&self) -> Pmf {
        Pmf { offset: self.offset, weights: Weights::Float(self.to_f64_vec()) }
    }

    /// Total mass (exactly 1 for well-formed exact pmfs).
    pub fn total(&self) -> Probability {
        match &self.weights {
            Weights::Exact { numerators, denominator } => {
                let sum: BigUint = numerators.iter().sum();
                Probability::Exact(BigQ::new(sum.into(), denominator.clone().into()))
            }
            Weights::Float(v) => Probability::Float(v.iter().fold(0.0, |a, x| a + x)),
        }
    }

    pub fn mean_exact(&self) -> Option<BigQ> {
        match &self.weights {
            Weights::Exact { numerators, denominator } => {
                let mut acc = BigUint::zero();
                for (i, n) in numerators.iter().enumerate() {
                    acc += n * (self.offset + i as u64);
                }
                Some(BigQ::new(acc.into(), denominator.clone().into()))
            }
            Weights::Float(_) => None,
        }
    }

    /// Mean and variance (two-pass, in `f64`).
    pub fn moments(&self) -> (f64, f64) {
        let p = self.to_f64_vec();
        let total: f64 = p.iter().sum();
        let mean = p.iter().enumerate().map(|(i, w)| (self.offset as f64 + i as f64) * w).sum::<f64>() / total;
        let var = p
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let d = self.offset as f64 + i as f64 - mean;
                d * d * w
            })
            .sum::<f64>()
            / total;
        (mean, var)
    }

    /// `Σ_{k > threshold} P[X = k]`.
    pub fn tail(&self, threshold: f64) -> Probability {
        let first = if threshold < self.offset as f64 {
            0
        } else {
            // smallest k with k > threshold
            let k = libm::floor(threshold) as u64 + 1;
            (k - self.offset) as usize
        };
        match &self.weights {
            Weights::Exact { numerators, denominator } => {
                let sum: BigUint = numerators.iter().skip(first).sum();
                Probability::Exact(BigQ::new(sum.into(), denominator.clone().into()))
            }
            // Sum small terms first.
            Weights::Float(v) => Probability::Float(v.iter().skip(first).rev().fold(0.0, |a, x| a + x)),
        }
    }

    /// `P[X ≤ threshold]`, computed directly rather than as `1 - tail`.
    pub fn cdf(&self, threshold: f64) -> Probability {
        let count = if threshold < self.offset as f64 {
            0
        } else {
            ((libm::floor(threshold) as u64 + 1 - self.offset) as usize).min(self.len())
        };
        match &self.weights {
            Weights::Exact { numerators, denominator } => {
                let sum: BigUint = numerators.iter().take(count).sum();
                Probability::Exact(BigQ::new(sum.into(), denominator.clone().into()))
            }
            Weights::Float(v) => Probability::Float(v.iter().take(count).fold(0.0, |a, x| a + x)),
        }
    }

    /// Exact equality of two exact laws (cross-multiplied; supports compared).
    pub fn exact_eq(&self, other: &Pmf) -> bool {
        match (&self.weights, &other.weights) {
            (
                Weights::Exact { numerators: a, denominator: da },
                Weights::Exact { numerators: b, denominator: db },
            ) => {
                self.offset == other.offset
                    && a.len() == b.len()
                    && a.iter().zip(b).all(|(x, y)| x * db == y * da)
            }
            _ => false,
        }
    }

    /// Largest absolute pointwise difference, over the union of supports.
    pub fn max_abs_diff(&self, other: &Pmf) -> f64 {
        let lo = self.support_min().min(other.support_min());
        let hi = self.support_max().max(other.support_max());
        (lo..=hi).map(|k| libm::fabs(self.prob_f64(k) - other.prob_f64(k))).fold(0.0, f64::max)
    }

    pub(crate) fn exact_parts_mut(&mut self) -> Option<(&mut u64, &mut Vec<BigUint>, &mut BigUint)> {
        match &mut self.weights {
            Weights::Exact { numerators, denominator } => Some((&mut self.offset, numerators, denominator)),
            Weights::Float(_) => None,
        }
    }

    pub(crate) fn float_parts_mut(&mut self) -> Option<(&mut u64, &mut Vec<f64>)> {
        match &mut self.weights {
            Weights::Float(v) => Some((&mut self.offset, v)),
            Weights::Exact { .. } => None,
        }
    }

    pub(crate) fn retrim(&mut self) {
        self.trim();
    }

    /// Rows `k,probability` as used by the CSV exports.
    pub fn rows(&self) -> Vec<(u64, String)> {
        self.iter().map(|(k, p)| (k, alloc::format!("{p}"))).collect()
    }
}
