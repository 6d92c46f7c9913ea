//! Degree laws read off the `[1,1,0,2]` urn.
//!
//! Color A is the degree of the tracked vertex (or vertex set), color B the
//! remaining degree plus the stub of the next arriving vertex. So
//! `d_1^n(v_t) ~ A(M, n-t+1, 1, 2t-2)` and, given `D(t) = d`,
//! `D(n) ~ A(M, n-t, d, 2t+1-d)`: after step `t` the urn holds `2t` degree
//! balls and one stub, and the next step moves A with probability `d/(2t+1)`.

use super::closed_form::Nonalternating;
use super::UrnPmf;
use crate::error::invalid;
use crate::pmf::{ArithmeticMode, Probability};
use crate::Result;

fn check_times(n: u64, t: u64) -> Result<()> {
    if t == 0 || t > n {
        return Err(invalid!("need 1 ≤ t ≤ n (t = {t}, n = {n})"));
    }
    Ok(())
}

/// `P[d_1^n(v_t) = k]`.
pub fn degree_pmf(n: u64, t: u64, k: u64, mode: ArithmeticMode) -> Result<Probability> {
    check_times(n, t)?;
    if k == 0 {
        return Ok(Probability::zero(mode));
    }
    Nonalternating::new(n - t + 1, 1, 2 * t - 2, mode)?.prob(k - 1)
}

/// The law of `d_1^n(v_t)`, indexed by degree.
pub fn degree_law(n: u64, t: u64, mode: ArithmeticMode) -> Result<UrnPmf> {
    check_times(n, t)?;
    Nonalternating::new(n - t + 1, 1, 2 * t - 2, mode)?.law()
}

fn check_condition(n: u64, t: u64, d: u64) -> Result<()> {
    check_times(n, t)?;
    if d == 0 || d > 2 * t {
        return Err(invalid!("need 1 ≤ d ≤ 2t (d = {d}, t = {t})"));
    }
    Ok(())
}

/// `P[D(n) = k | D(t) = d]`.
pub fn conditional_degree_pmf(n: u64, t: u64, d: u64, k: u64, mode: ArithmeticMode) -> Result<Probability> {
    check_condition(n, t, d)?;
    if k < d {
        return Ok(Probability::zero(mode));
    }
    Nonalternating::new(n - t, d, 2 * t + 1 - d, mode)?.prob(k - d)
}

/// The law of `D(n)` given `D(t) = d`, indexed by degree.
pub fn conditional_degree_law(n: u64, t: u64, d: u64, mode: ArithmeticMode) -> Result<UrnPmf> {
    check_condition(n, t, d)?;
    Nonalternating::new(n - t, d, 2 * t + 1 - d, mode)?.law()
}
