//! Two-color Pólya urns.
//!
//! An urn holds `a` balls of color A and `b` of color B. Each step draws a ball
//! uniformly; drawing A adds `α` A-balls and `β` B-balls, drawing B adds `γ` and
//! `δ`. The matrix `[1,1,0,2]` tracks the degree of a vertex (color A) against
//! the rest of the graph plus the pending stub (color B); `[2,0,0,2]` is the
//! classical Pólya urn, scaled by two.
//!
//! [`enumerate_exact`] is a dense DP over the number of A-draws. The closed
//! forms live in [`closed_form`] and the degree specialisations in [`degree`].

use core::fmt;

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;

use crate::error::{invalid, unsupported};
use crate::pmf::Pmf;
use crate::rng::rng_from_seed;
use crate::Result;

pub mod closed_form;
pub mod degree;

pub use closed_form::{
    arbitrary_a0_pmf, easy_case_pmf, general_triangular_pmf, nonalternating_pmf, polya_2002_pmf,
    split_urns_pmf, GeneralCase, Nonalternating,
};
pub use degree::{conditional_degree_law, conditional_degree_pmf, degree_law, degree_pmf};

/// Largest step count accepted by [`enumerate_exact`].
pub const ENUMERATION_CAP: u64 = 5000;

/// Replacement matrix `[α, β, γ, δ]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReplacementMatrix {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
}

impl ReplacementMatrix {
    /// `[1,1,0,2]`: the degree urn.
    pub const DEGREE: ReplacementMatrix = ReplacementMatrix::new(1, 1, 0, 2);
    /// `[2,0,0,2]`.
    pub const POLYA: ReplacementMatrix = ReplacementMatrix::new(2, 0, 0, 2);

    pub const fn new(alpha: i64, beta: i64, gamma: i64, delta: i64) -> Self {
        ReplacementMatrix { alpha, beta, gamma, delta }
    }

    /// The common row sum `σ`, if both rows agree.
    pub fn balance(&self) -> Option<i64> {
        let s = self.alpha + self.beta;
        (s == self.gamma + self.delta).then_some(s)
    }

    pub fn is_balanced(&self) -> bool {
        self.balance().is_some()
    }

    pub fn is_triangular(&self) -> bool {
        self.gamma == 0
    }

    pub fn is_additive(&self) -> bool {
        self.alpha >= 0 && self.beta >= 0 && self.gamma >= 0 && self.delta >= 0
    }
}

impl fmt::Display for ReplacementMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{},{}]", self.alpha, self.beta, self.gamma, self.delta)
    }
}

/// A matrix with its initial composition `(a0, b0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UrnSpec {
    pub matrix: ReplacementMatrix,
    pub a0: u64,
    pub b0: u64,
}

impl UrnSpec {
    pub fn new(matrix: ReplacementMatrix, a0: u64, b0: u64) -> Result<Self> {
        if a0 + b0 == 0 {
            return Err(invalid!("urn needs at least one ball (a0 + b0 ≥ 1)"));
        }
        Ok(UrnSpec { matrix, a0, b0 })
    }

    pub fn s0(&self) -> u64 {
        self.a0 + self.b0
    }
}

/// The law of `A_n`, indexed by the number of A-balls.
#[derive(Debug, Clone, PartialEq)]
pub struct UrnPmf {
    pub spec: UrnSpec,
    pub n: u64,
    pub pmf: Pmf,
}

/// One trajectory of `n` draws; returns `(a_n, b_n)`.
pub fn simulate(spec: &UrnSpec, n: u64, seed: u64) -> Result<(u64, u64)> {
    let m = spec.matrix;
    if !m.is_additive() {
        return Err(unsupported!("simulation of subtractive urn {m}"));
    }
    let mut rng = rng_from_seed(seed);
    let (mut a, mut b) = (spec.a0, spec.b0);
    for _ in 0..n {
        if rng.random_range(0..a + b) < a {
            a += m.alpha as u64;
            b += m.beta as u64;
        } else {
            a += m.gamma as u64;
            b += m.delta as u64;
        }
    }
    Ok((a, b))
}

/// Exact law of `A_n` for a balanced additive urn.
pub fn enumerate_exact(spec: &UrnSpec, n: u64) -> Result<UrnPmf> {
    let m = spec.matrix;
    let sigma = m.balance().ok_or_else(|| unsupported!("unbalanced urn {m}"))?;
    if !m.is_additive() {
        return Err(unsupported!("subtractive urn {m}"));
    }
    if n > ENUMERATION_CAP {
        return Err(unsupported!("enumeration is capped at n ≤ {ENUMERATION_CAP} (requested {n})"));
    }
    let (alpha, gamma) = (m.alpha as u64, m.gamma as u64);
    // State j = number of A-draws so far; A = a0 + jα + (i-j)γ after i draws.
    let mut num: Vec<BigUint> = alloc::vec![BigUint::from(1u32)];
    let mut den = BigUint::from(1u32);
    for i in 0..n {
        let total = spec.s0() + i * sigma as u64;
        let mut next = alloc::vec![BigUint::zero(); num.len() + 1];
        for (j, w) in num.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let a = spec.a0 + j as u64 * alpha + (i - j as u64) * gamma;
            if a > 0 {
                next[j + 1] += w * a;
            }
            if total > a {
                next[j] += w * (total - a);
            }
        }
        num = next;
        den *= total;
    }
    let value = |j: u64| spec.a0 + j * alpha + (n - j) * gamma;
    let (lo, hi) = (value(0).min(value(n)), value(0).max(value(n)));
    let mut dense = alloc::vec![BigUint::zero(); (hi - lo + 1) as usize];
    for (j, w) in num.into_iter().enumerate() {
        dense[(value(j as u64) - lo) as usize] += w;
    }
    Ok(UrnPmf { spec: *spec, n, pmf: Pmf::from_numerators(lo, dense, den) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::q;
    use crate::pmf::Probability;
    use proptest::prelude::*;

    fn spec(m: ReplacementMatrix, a0: u64, b0: u64) -> UrnSpec {
        UrnSpec::new(m, a0, b0).unwrap()
    }

    #[test]
    fn matrix_classification() {
        assert_eq!(ReplacementMatrix::DEGREE.balance(), Some(2));
        assert!(ReplacementMatrix::DEGREE.is_triangular());
        assert!(!ReplacementMatrix::new(1, 2, 0, 2).is_balanced());
        assert!(!ReplacementMatrix::new(-1, 3, 0, 2).is_additive());
        assert!(UrnSpec::new(ReplacementMatrix::POLYA, 0, 0).is_err());
        assert_eq!(ReplacementMatrix::DEGREE.to_string(), "[1,1,0,2]");
    }

    #[test]
    fn simulation_examples() {
        let s = spec(ReplacementMatrix::DEGREE, 1, 0);
        for seed in 0..20 {
            assert_eq!(simulate(&s, 1, seed).unwrap(), (2, 1));
        }
        let hits = (0..30_000).filter(|&seed| simulate(&s, 2, seed).unwrap().0 == 3).count();
        assert!((hits as f64 / 30_000.0 - 2.0 / 3.0).abs() < 0.014);
        let bad = spec(ReplacementMatrix::new(1, -1, 0, 0), 1, 1);
        assert!(matches!(simulate(&bad, 1, 0), Err(crate::Error::Unsupported(_))));
    }

    #[test]
    fn enumeration_examples() {
        let law = enumerate_exact(&spec(ReplacementMatrix::DEGREE, 1, 0), 2).unwrap();
        assert_eq!(law.pmf.prob(2), Probability::Exact(q(1, 3)));
        assert_eq!(law.pmf.prob(3), Probability::Exact(q(2, 3)));
        let zero = enumerate_exact(&spec(ReplacementMatrix::POLYA, 3, 4), 0).unwrap();
        assert!(zero.pmf.exact_eq(&Pmf::point(3)));
        let unbalanced = spec(ReplacementMatrix::new(1, 0, 0, 2), 1, 1);
        assert!(matches!(enumerate_exact(&unbalanced, 3), Err(crate::Error::Unsupported(_))));
        assert!(enumerate_exact(&spec(ReplacementMatrix::DEGREE, 1, 0), ENUMERATION_CAP + 1).is_err());
    }

    proptest! {
        #[test]
        fn polya_parity_is_preserved(a0 in 0u64..6, b0 in 0u64..6, n in 0u64..40, seed: u64) {
            prop_assume!(a0 + b0 > 0);
            let (a, b) = simulate(&spec(ReplacementMatrix::POLYA, a0, b0), n, seed).unwrap();
            prop_assert_eq!(a % 2, a0 % 2);
            prop_assert_eq!(a + b, a0 + b0 + 2 * n);
        }

        #[test]
        fn enumeration_normalizes(alpha in 0i64..4, gamma in 0i64..4, extra in 0i64..4, a0 in 0u64..5, b0 in 0u64..5, n in 0u64..25) {
            prop_assume!(a0 + b0 > 0);
            let sigma = alpha.max(gamma) + extra;
            let m = ReplacementMatrix::new(alpha, sigma - alpha, gamma, sigma - gamma);
            let law = enumerate_exact(&spec(m, a0, b0), n).unwrap();
            prop_assert_eq!(law.pmf.total(), Probability::Exact(q(1, 1)));
        }
    }
}
