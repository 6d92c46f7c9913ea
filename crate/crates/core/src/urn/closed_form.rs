//! Closed-form laws of `A_n`.
//!
//! Exact mode expands every Γ ratio into rising factorials of rationals, so
//! the `√π` factors carried by half-integer arguments never appear. Float mode
//! assembles each value as `exp(Σ ln-terms)` from log-Γ evaluations.
//!
//! Generalized binomials follow [`crate::math::binom_q`]. In the split sum,
//! the factor `C(2i-k-1, i-1)` is read combinatorially (zero for `i < k`): a
//! `[1,1,0,2]` urn started without B-balls gains at most one A-ball per step.

use core::ops::{Div, Mul};

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::{ReplacementMatrix, UrnPmf, UrnSpec};
use crate::error::{invalid, unsupported};
use crate::math::{binom_f, binom_q, binom_u, ln_factorial, ln_factorial_table, ln_rising, q, BigQ, SignedLog};
use crate::pmf::{ArithmeticMode, Pmf, Probability};
use crate::{Error, Result};

/// Relative size of a negative summand tolerated before reporting an error.
pub const NEGATIVE_SUMMAND_TOLERANCE: f64 = 1e-12;

const LN_2: f64 = core::f64::consts::LN_2;

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn qb(num: BigInt, den: BigInt) -> BigQ {
    BigQ::new(num, den)
}

fn ln_binom_int(table: &[f64], n: u64, k: u64) -> f64 {
    table[n as usize] - table[k as usize] - table[(n - k) as usize]
}

fn ln_binom(n: u64, k: u64) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

fn law_from(spec: UrnSpec, n: u64, offset: u64, values: Vec<Probability>, mode: ArithmeticMode) -> UrnPmf {
    let pmf = if mode.is_exact() {
        let qs: Vec<BigQ> = values.into_iter().map(|p| p.exact().cloned().expect("exact value")).collect();
        Pmf::from_rationals(offset, &qs)
    } else {
        Pmf::from_floats(offset, values.iter().map(Probability::to_f64).collect())
    };
    UrnPmf { spec, n, pmf }
}

/// Spreads values `P[A_n = a0 + step·j]` over the dense support of `A_n`.
fn spaced(values: Vec<Probability>, step: u64, mode: ArithmeticMode) -> Vec<Probability> {
    let mut out = Vec::with_capacity(values.len() * step as usize);
    let last = values.len().saturating_sub(1);
    for (j, v) in values.into_iter().enumerate() {
        out.push(v);
        if j < last {
            for _ in 1..step {
                out.push(Probability::zero(mode));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// ([1,1,0,2], 1, 0)

/// `P[A_n = k]` for the urn `([1,1,0,2], 1, 0)`:
/// `(k-1)/n · 2^(k-1) · C(2n-k, n-1) / C(2n, n)`, zero outside `[2, n+1]`.
pub fn easy_case_pmf(n: u64, k: u64, mode: ArithmeticMode) -> Result<Probability> {
    if n == 0 {
        return Err(invalid!("n must be at least 1"));
    }
    if k < 2 || k > n + 1 {
        return Ok(Probability::zero(mode));
    }
    Ok(match mode {
        ArithmeticMode::Exact { .. } => {
            let num = big(k - 1) * (BigInt::one() << (k - 1) as usize) * BigInt::from(binom_u(2 * n - k, n - 1));
            let den = big(n) * BigInt::from(binom_u(2 * n, n));
            Probability::Exact(qb(num, den))
        }
        ArithmeticMode::Float => {
            let ln = libm::log((k - 1) as f64) + (k - 1) as f64 * LN_2 + ln_binom(2 * n - k, n - 1)
                - libm::log(n as f64)
                - ln_binom(2 * n, n);
            Probability::Float(libm::exp(ln))
        }
    })
}

pub fn easy_case_law(n: u64, mode: ArithmeticMode) -> Result<UrnPmf> {
    let values = (2..=n + 1).map(|k| easy_case_pmf(n, k, mode)).collect::<Result<Vec<_>>>()?;
    Ok(law_from(UrnSpec { matrix: ReplacementMatrix::DEGREE, a0: 1, b0: 0 }, n, 2, values, mode))
}

// ---------------------------------------------------------------------------
// ([1,1,0,2], a0, 0)

/// `P[A_n = a0 + k]` for `([1,1,0,2], a0, 0)`:
/// `(1/2)_n / (a0/2)_n · C(k+a0-1, k) · k/n · 2^k · C(2n-k-1, n-1) / C(2n, n)`.
pub fn arbitrary_a0_pmf(n: u64, a0: u64, k: u64, mode: ArithmeticMode) -> Result<Probability> {
    if a0 == 0 {
        return Err(invalid!("a0 must be at least 1"));
    }
    if n == 0 {
        return Ok(if k == 0 { unit(mode) } else { Probability::zero(mode) });
    }
    if k == 0 || k > n {
        return Ok(Probability::zero(mode));
    }
    Ok(match mode {
        ArithmeticMode::Exact { .. } => {
            // (1/2)_n / (a0/2)_n = Π (2j+1)/(a0+2j)
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            for j in 0..n {
                num *= 2 * j + 1;
                den *= a0 + 2 * j;
            }
            num *= BigInt::from(binom_u(k + a0 - 1, k)) * big(k) * (BigInt::one() << k as usize);
            num *= BigInt::from(binom_u(2 * n - k - 1, n - 1));
            den *= big(n) * BigInt::from(binom_u(2 * n, n));
            Probability::Exact(qb(num, den))
        }
        ArithmeticMode::Float => {
            let ln = ln_rising(0.5, n) - ln_rising(a0 as f64 / 2.0, n)
                + ln_binom(k + a0 - 1, k)
                + libm::log(k as f64)
                + k as f64 * LN_2
                + ln_binom(2 * n - k - 1, n - 1)
                - libm::log(n as f64)
                - ln_binom(2 * n, n);
            Probability::Float(libm::exp(ln))
        }
    })
}

pub fn arbitrary_a0_law(n: u64, a0: u64, mode: ArithmeticMode) -> Result<UrnPmf> {
    let lo = if n == 0 { 0 } else { 1 };
    let values = (lo..=n).map(|k| arbitrary_a0_pmf(n, a0, k, mode)).collect::<Result<Vec<_>>>()?;
    Ok(law_from(UrnSpec { matrix: ReplacementMatrix::DEGREE, a0, b0: 0 }, n, a0 + lo, values, mode))
}

fn unit(mode: ArithmeticMode) -> Probability {
    if mode.is_exact() {
        Probability::Exact(BigQ::one())
    } else {
        Probability::Float(1.0)
    }
}

// ---------------------------------------------------------------------------
// ([2,0,0,2], a0, b0)

/// `P[A_n = a0 + 2k]` for `([2,0,0,2], a0, b0)`:
/// `C(a0/2+k-1, a0/2-1) · C(n+b0/2-k-1, b0/2-1) / C((a0+b0)/2+n-1, (a0+b0)/2-1)`.
pub fn polya_2002_pmf(n: u64, a0: u64, b0: u64, k: u64, mode: ArithmeticMode) -> Result<Probability> {
    if a0 + b0 == 0 {
        return Err(invalid!("urn needs at least one ball (a0 + b0 ≥ 1)"));
    }
    if k > n {
        return Ok(Probability::zero(mode));
    }
    let (n, a0, b0, k) = (n as i64, a0 as i64, b0 as i64, k as i64);
    Ok(match mode {
        ArithmeticMode::Exact { .. } => {
            let ha = q(a0, 2);
            let hb = q(b0, 2);
            let h = q(a0 + b0, 2);
            let one = BigQ::one();
            let first = binom_q(&(&ha + q(k - 1, 1)), &(&ha - &one));
            let second = binom_q(&(&hb + q(n - k - 1, 1)), &(&hb - &one));
            let total = binom_q(&(&h + q(n - 1, 1)), &(&h - &one));
            Probability::Exact(first * second / total)
        }
        ArithmeticMode::Float => {
            let (ha, hb, h) = (a0 as f64 / 2.0, b0 as f64 / 2.0, (a0 + b0) as f64 / 2.0);
            let v = binom_f(ha + (k - 1) as f64, ha - 1.0)
                .mul(binom_f(hb + (n - k - 1) as f64, hb - 1.0))
                .div(binom_f(h + (n - 1) as f64, h - 1.0));
            Probability::Float(v.to_f64())
        }
    })
}

pub fn polya_2002_law(n: u64, a0: u64, b0: u64, mode: ArithmeticMode) -> Result<UrnPmf> {
    let values = (0..=n).map(|k| polya_2002_pmf(n, a0, b0, k, mode)).collect::<Result<Vec<_>>>()?;
    Ok(law_from(UrnSpec { matrix: ReplacementMatrix::POLYA, a0, b0 }, n, a0, spaced(values, 2, mode), mode))
}

// ---------------------------------------------------------------------------
// Balanced triangular urns, alternating sum

/// Exact evaluator for a balanced triangular urn `[α, σ-α, 0, σ]`:
///
/// `P[A_n = a0 + kα] = Γ(n+1)Γ(s0/σ)/Γ(s0/σ+n) · C(k + a0/α - 1, k)
///   · Σ_{i=0..k} (-1)^i C(k, i) C(n + (b0 - αi)/σ - 1, n)`.
///
/// With `Γ(n+1)Γ(x)/Γ(x+n) = n!/(x)_n` and `C(x+n-1, n) = (x)_n/n!` all three
/// factors become integer products over the common scale `σ^n n!`.
#[derive(Debug, Clone)]
pub struct GeneralCase {
    spec: UrnSpec,
    n: u64,
    /// `Π_{j<n} (b0 - αi + jσ)` for `i = 0..=n`.
    shifted: Vec<BigInt>,
    /// `Π_{j<n} (s0 + jσ)`.
    rising_s0: BigInt,
}

impl GeneralCase {
    pub fn new(spec: &UrnSpec, n: u64) -> Result<Self> {
        let m = spec.matrix;
        let sigma = m.balance().ok_or_else(|| unsupported!("unbalanced urn {m}"))?;
        if !m.is_triangular() || !m.is_additive() || m.alpha < 1 {
            return Err(unsupported!("alternating-sum form needs [α, σ-α, 0, σ] with α ≥ 1 (got {m})"));
        }
        let (alpha, b0) = (m.alpha, spec.b0 as i64);
        let shifted = (0..=n as i64)
            .map(|i| (0..n as i64).fold(BigInt::one(), |acc, j| acc * BigInt::from(b0 - alpha * i + j * sigma)))
            .collect();
        let rising_s0 = (0..n).fold(BigInt::one(), |acc, j| acc * big(spec.s0() + j * sigma as u64));
        Ok(GeneralCase { spec: *spec, n, shifted, rising_s0 })
    }

    /// `P[A_n = a0 + kα]`.
    pub fn prob(&self, k: u64) -> BigQ {
        if k > self.n {
            return BigQ::zero();
        }
        let alpha = self.spec.matrix.alpha as u64;
        let mut sum = BigInt::zero();
        let mut choose = BigInt::one();
        for i in 0..=k {
            let term = &choose * &self.shifted[i as usize];
            if i % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            choose = choose * big(k - i) / big(i + 1);
        }
        // C(k + a0/α - 1, k) = Π_{j<k} (a0 + jα) / (α^k k!)
        let mut num = sum;
        let mut den = self.rising_s0.clone();
        for j in 0..k {
            num *= self.spec.a0 + j * alpha;
            den *= alpha * (j + 1);
        }
        qb(num, den)
    }

    pub fn law(&self) -> UrnPmf {
        let values = (0..=self.n).map(|k| Probability::Exact(self.prob(k))).collect();
        let step = self.spec.matrix.alpha as u64;
        law_from(self.spec, self.n, self.spec.a0, spaced(values, step, ArithmeticMode::EXACT), ArithmeticMode::EXACT)
    }
}

/// `P[A_n = a0 + kα]` by the alternating sum. Exact arithmetic only: the
/// summands nearly cancel, so float evaluation is refused.
pub fn general_triangular_pmf(spec: &UrnSpec, n: u64, k: u64, mode: ArithmeticMode) -> Result<Probability> {
    if !mode.is_exact() {
        return Err(unsupported!("the alternating sum is evaluated in exact arithmetic only"));
    }
    Ok(Probability::Exact(GeneralCase::new(spec, n)?.prob(k)))
}

// ---------------------------------------------------------------------------
// ([1,1,0,2], a0, b0), non-negative sum

#[derive(Debug, Clone)]
enum Terms {
    /// `N_i / L`: the k-independent factor of summand `i`.
    Exact { scaled: Vec<BigInt>, scale: BigInt, total: BigQ },
    /// `ln |·|` and sign of the same factor, plus `ln C(h+n-1, h-1)`.
    Float { ln: Vec<Option<(f64, i8)>>, ln_total: f64, ln_fact: Vec<f64> },
}

/// Evaluator for `([1,1,0,2], a0, b0)` as a sum of non-negative terms:
///
/// `P[A_n = a0 + k] = Γ(a0/2) C(k+a0-1, k) 2^k k / (Γ(1/2) C(h+n-1, h-1))
///   · Σ_i Γ(1/2+i) C(2i-k-1, i-1) C(a0/2+i-1, a0/2-1) C(n+b0/2-i-1, b0/2-1)
///         / (Γ(a0/2+i) i C(2i, i))`
///
/// with `h = (a0+b0)/2`. Summand `i` is `P[A(M,i,a0,0) = a0+k] · P[A(I,n,a0,b0) = a0+2i]`;
/// the `i = 0` term (`k = 0` only) is added explicitly.
#[derive(Debug, Clone)]
pub struct Nonalternating {
    n: u64,
    a0: u64,
    b0: u64,
    mode: ArithmeticMode,
    terms: Terms,
    boundary: Probability,
}

impl Nonalternating {
    pub fn new(n: u64, a0: u64, b0: u64, mode: ArithmeticMode) -> Result<Self> {
        if a0 == 0 {
            return Err(invalid!("a0 must be at least 1"));
        }
        let boundary = polya_2002_pmf(n, a0, b0, 0, mode)?;
        let terms = match mode {
            ArithmeticMode::Exact { .. } => Self::exact_terms(n, a0, b0),
            ArithmeticMode::Float => Self::float_terms(n, a0, b0),
        };
        Ok(Nonalternating { n, a0, b0, mode, terms, boundary })
    }

    fn exact_terms(n: u64, a0: u64, b0: u64) -> Terms {
        let (n_i, a0_i, b0_i) = (n as i64, a0 as i64, b0 as i64);
        let one = BigQ::one();
        let ha = q(a0_i, 2);
        let hb = q(b0_i, 2);
        let mut gamma_ratio = BigQ::one(); // Γ(a0/2)Γ(1/2+i) / (Γ(1/2)Γ(a0/2+i)) = (1/2)_i/(a0/2)_i
        let mut factors = alloc::vec![BigQ::zero(); n as usize + 1];
        for i in 1..=n_i {
            gamma_ratio *= q(2 * i - 1, a0_i + 2 * i - 2);
            let first = binom_q(&(&ha + q(i - 1, 1)), &(&ha - &one));
            let second = binom_q(&(&hb + q(n_i - i - 1, 1)), &(&hb - &one));
            let central = BigQ::from_integer(BigInt::from(binom_u(2 * i as u64, i as u64)) * BigInt::from(i));
            factors[i as usize] = &gamma_ratio * first * second / central;
        }
        let mut scale = BigInt::one();
        for f in &factors {
            scale = num_integer::lcm(scale, f.denom().clone());
        }
        let scaled = factors.iter().map(|f| f.numer() * (&scale / f.denom())).collect();
        let h = q(a0_i + b0_i, 2);
        let total = binom_q(&(&h + q(n_i - 1, 1)), &(&h - &one));
        Terms::Exact { scaled, scale, total }
    }

    fn float_terms(n: u64, a0: u64, b0: u64) -> Terms {
        let ha = a0 as f64 / 2.0;
        let hb = b0 as f64 / 2.0;
        let ln_fact = ln_factorial_table((2 * n).max(n + a0) as usize + 1);
        let mut ln = alloc::vec![None; n as usize + 1];
        for i in 1..=n {
            let fi = i as f64;
            let v = SignedLog { sign: 1, ln_abs: ln_rising(0.5, i) - ln_rising(ha, i) }
                .mul(binom_f(ha + fi - 1.0, ha - 1.0))
                .mul(binom_f(n as f64 + hb - fi - 1.0, hb - 1.0))
                .div(SignedLog { sign: 1, ln_abs: libm::log(fi) + ln_binom_int(&ln_fact, 2 * i, i) });
            if !v.is_zero() {
                ln[i as usize] = Some((v.ln_abs, v.sign));
            }
        }
        let h = (a0 + b0) as f64 / 2.0;
        let total = binom_f(h + n as f64 - 1.0, h - 1.0);
        Terms::Float { ln, ln_total: total.ln_abs, ln_fact }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Summand `i` of `P[A_n = a0 + k]`, prefactor included.
    pub fn summand(&self, k: u64, i: u64) -> Probability {
        if i == 0 {
            return if k == 0 { self.boundary.clone() } else { Probability::zero(self.mode) };
        }
        if k == 0 || i < k || i > self.n {
            return Probability::zero(self.mode);
        }
        match &self.terms {
            Terms::Exact { scaled, scale, total } => {
                let c = BigInt::from(binom_u(2 * i - k - 1, i - 1));
                let term = qb(&scaled[i as usize] * c, scale.clone());
                Probability::Exact(self.exact_prefactor(k, total) * term)
            }
            Terms::Float { ln, ln_total, ln_fact } => match ln[i as usize] {
                None => Probability::Float(0.0),
                Some((l, sign)) => {
                    let v = libm::exp(self.ln_prefactor(k, *ln_total, ln_fact) + l + ln_binom_int(ln_fact, 2 * i - k - 1, i - 1));
                    Probability::Float(sign as f64 * v)
                }
            },
        }
    }

    /// `C(k+a0-1, k) 2^k k / C(h+n-1, h-1)`
    fn exact_prefactor(&self, k: u64, total: &BigQ) -> BigQ {
        let num = BigInt::from(binom_u(k + self.a0 - 1, k)) * (BigInt::one() << k as usize) * big(k);
        BigQ::from_integer(num) / total
    }

    fn ln_prefactor(&self, k: u64, ln_total: f64, ln_fact: &[f64]) -> f64 {
        ln_binom_int(ln_fact, k + self.a0 - 1, k) + k as f64 * LN_2 + libm::log(k as f64) - ln_total
    }

    /// `P[A_n = a0 + k]`.
    pub fn prob(&self, k: u64) -> Result<Probability> {
        if k == 0 {
            return Ok(self.boundary.clone());
        }
        if k > self.n {
            return Ok(Probability::zero(self.mode));
        }
        match &self.terms {
            Terms::Exact { scaled, scale, total } => {
                let mut sum = BigInt::zero();
                // C(2i-k-1, i-1) from i = k upwards.
                let mut c = BigUint::one();
                for i in k..=self.n {
                    if i > k {
                        let (m, j) = (2 * i - k - 3, i - 2);
                        c = c * ((m + 1) * (m + 2)) / ((j + 1) * (m + 1 - j));
                    }
                    let term = &scaled[i as usize] * BigInt::from(c.clone());
                    if term.is_negative() {
                        return Err(Error::Internal(alloc::format!(
                            "negative summand i = {i} at n = {}, a0 = {}, b0 = {}, k = {k}",
                            self.n,
                            self.a0,
                            self.b0
                        )));
                    }
                    sum += term;
                }
                Ok(Probability::Exact(self.exact_prefactor(k, total) * qb(sum, scale.clone())))
            }
            Terms::Float { ln, ln_total, ln_fact } => {
                let pre = self.ln_prefactor(k, *ln_total, ln_fact);
                let (mut pos, mut neg) = (0.0, 0.0);
                for i in k..=self.n {
                    if let Some((l, sign)) = ln[i as usize] {
                        let v = libm::exp(pre + l + ln_binom_int(ln_fact, 2 * i - k - 1, i - 1));
                        if sign > 0 {
                            pos += v;
                        } else {
                            neg += v;
                        }
                    }
                }
                if neg > NEGATIVE_SUMMAND_TOLERANCE * pos {
                    return Err(Error::Internal(alloc::format!(
                        "negative summands ({neg:e} against {pos:e}) at n = {}, a0 = {}, b0 = {}, k = {k}",
                        self.n,
                        self.a0,
                        self.b0
                    )));
                }
                Ok(Probability::Float(pos - neg))
            }
        }
    }

    pub fn law(&self) -> Result<UrnPmf> {
        let values = (0..=self.n).map(|k| self.prob(k)).collect::<Result<Vec<_>>>()?;
        let spec = UrnSpec { matrix: ReplacementMatrix::DEGREE, a0: self.a0, b0: self.b0 };
        Ok(law_from(spec, self.n, self.a0, values, self.mode))
    }
}

/// `P[A_n = a0 + k]` for `([1,1,0,2], a0, b0)` via the non-negative sum.
pub fn nonalternating_pmf(n: u64, a0: u64, b0: u64, k: u64, mode: ArithmeticMode) -> Result<Probability> {
    Nonalternating::new(n, a0, b0, mode)?.prob(k)
}

/// `Σ_{i=0..n} P[A(M,i,a0,0) = a0+k] · P[A(I,n,a0,b0) = a0+2i]`, evaluated
/// from [`arbitrary_a0_pmf`] and [`polya_2002_pmf`].
pub fn split_urns_pmf(n: u64, a0: u64, b0: u64, k: u64, mode: ArithmeticMode) -> Result<Probability> {
    let mut exact = BigQ::zero();
    let mut float = 0.0;
    for i in 0..=n {
        let left = arbitrary_a0_pmf(i, a0, k, mode)?;
        if left.is_zero() {
            continue;
        }
        let right = polya_2002_pmf(n, a0, b0, i, mode)?;
        match (left, right) {
            (Probability::Exact(l), Probability::Exact(r)) => exact += l * r,
            (l, r) => float += l.to_f64() * r.to_f64(),
        }
    }
    Ok(if mode.is_exact() { Probability::Exact(exact) } else { Probability::Float(float) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::urn::enumerate_exact;

    const EXACT: ArithmeticMode = ArithmeticMode::EXACT;
    const FLOAT: ArithmeticMode = ArithmeticMode::Float;

    fn ex(p: Result<Probability>) -> BigQ {
        p.unwrap().exact().unwrap().clone()
    }

    #[test]
    fn easy_case_examples() {
        assert_eq!(ex(easy_case_pmf(1, 2, EXACT)), q(1, 1));
        assert_eq!(ex(easy_case_pmf(2, 3, EXACT)), q(2, 3));
        assert_eq!(ex(easy_case_pmf(2, 2, EXACT)), q(1, 3));
        assert_eq!(ex(easy_case_pmf(7, 1, EXACT)), q(0, 1));
        assert!(easy_case_pmf(0, 1, EXACT).is_err());
        assert!((easy_case_pmf(2, 3, FLOAT).unwrap().to_f64() - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn easy_case_mean_is_central_binomial_ratio() {
        for n in 1..=30u64 {
            let mut mean = BigQ::zero();
            for k in 2..=n + 1 {
                mean += ex(easy_case_pmf(n, k, EXACT)) * q(k as i64, 1);
            }
            let four_n = BigInt::one() << (2 * n) as usize;
            assert_eq!(mean, qb(four_n, BigInt::from(binom_u(2 * n, n))));
        }
    }

    #[test]
    fn arbitrary_a0_generalizes_easy_case() {
        for n in 1..=25 {
            for k in 0..=n + 1 {
                assert_eq!(ex(arbitrary_a0_pmf(n, 1, k, EXACT)), ex(easy_case_pmf(n, k + 1, EXACT)));
            }
        }
        let law = enumerate_exact(&UrnSpec::new(ReplacementMatrix::DEGREE, 2, 0).unwrap(), 2).unwrap();
        for k in 0..=3 {
            assert_eq!(Probability::Exact(ex(arbitrary_a0_pmf(2, 2, k, EXACT))), law.pmf.prob(2 + k));
        }
        for n in [1u64, 10, 100] {
            for a0 in [1u64, 2, 5] {
                assert_eq!(arbitrary_a0_law(n, a0, EXACT).unwrap().pmf.total(), Probability::Exact(BigQ::one()));
            }
        }
    }

    #[test]
    fn polya_examples() {
        assert_eq!(ex(polya_2002_pmf(1, 1, 1, 1, EXACT)), q(1, 2));
        for (a0, b0) in [(1, 1), (2, 5), (3, 0), (0, 4), (7, 3)] {
            for n in [0u64, 1, 5, 30] {
                let law = polya_2002_law(n, a0, b0, EXACT).unwrap();
                assert_eq!(law.pmf.total(), Probability::Exact(BigQ::one()));
                let dp = enumerate_exact(&UrnSpec::new(ReplacementMatrix::POLYA, a0, b0).unwrap(), n).unwrap();
                assert!(law.pmf.exact_eq(&dp.pmf), "a0={a0} b0={b0} n={n}");
                let fl = polya_2002_law(n, a0, b0, FLOAT).unwrap();
                assert!(fl.pmf.max_abs_diff(&dp.pmf) < 1e-13);
            }
        }
    }

    #[test]
    fn general_case_matches_known_forms() {
        assert!(matches!(
            general_triangular_pmf(&UrnSpec::new(ReplacementMatrix::DEGREE, 1, 0).unwrap(), 3, 1, FLOAT),
            Err(Error::Unsupported(_))
        ));
        let easy = UrnSpec::new(ReplacementMatrix::DEGREE, 1, 0).unwrap();
        for n in 1..=30 {
            let g = GeneralCase::new(&easy, n).unwrap();
            for k in 0..=n {
                assert_eq!(g.prob(k), ex(easy_case_pmf(n, k + 1, EXACT)));
            }
        }
        for n in [0u64, 1, 7, 20] {
            for (a0, b0) in [(1, 1), (2, 3), (4, 0)] {
                let s = UrnSpec::new(ReplacementMatrix::POLYA, a0, b0).unwrap();
                let g = GeneralCase::new(&s, n).unwrap();
                for k in 0..=n {
                    assert_eq!(g.prob(k), ex(polya_2002_pmf(n, a0, b0, k, EXACT)));
                }
            }
        }
        let zero = GeneralCase::new(&UrnSpec::new(ReplacementMatrix::DEGREE, 3, 2).unwrap(), 0).unwrap();
        assert_eq!(zero.prob(0), q(1, 1));
        assert_eq!(zero.prob(1), q(0, 1));
    }

    #[test]
    fn nonalternating_matches_enumeration() {
        for (a0, b0) in [(1, 0), (1, 1), (2, 3), (5, 2), (3, 6)] {
            for n in [0u64, 1, 2, 9, 25] {
                let dp = enumerate_exact(&UrnSpec::new(ReplacementMatrix::DEGREE, a0, b0).unwrap(), n).unwrap();
                let law = Nonalternating::new(n, a0, b0, EXACT).unwrap().law().unwrap();
                assert!(law.pmf.exact_eq(&dp.pmf), "a0={a0} b0={b0} n={n}");
                let fl = Nonalternating::new(n, a0, b0, FLOAT).unwrap().law().unwrap();
                assert!(fl.pmf.max_abs_diff(&dp.pmf) < 1e-12);
            }
        }
    }

    #[test]
    fn nonalternating_reduces_to_arbitrary_a0() {
        for a0 in 1..5 {
            for n in 0..15 {
                for k in 0..=n + 1 {
                    assert_eq!(ex(nonalternating_pmf(n, a0, 0, k, EXACT)), ex(arbitrary_a0_pmf(n, a0, k, EXACT)));
                }
            }
        }
    }

    #[test]
    fn summands_are_split_products() {
        for (a0, b0) in [(1, 2), (3, 5), (2, 0)] {
            let n = 12;
            let eval = Nonalternating::new(n, a0, b0, EXACT).unwrap();
            let fl = Nonalternating::new(n, a0, b0, FLOAT).unwrap();
            for k in 0..=n {
                let mut total = BigQ::zero();
                for i in 0..=n {
                    let product = ex(arbitrary_a0_pmf(i, a0, k, EXACT)) * ex(polya_2002_pmf(n, a0, b0, i, EXACT));
                    let s = eval.summand(k, i);
                    assert_eq!(s.exact().unwrap(), &product, "k={k} i={i}");
                    assert!((fl.summand(k, i).to_f64() - s.to_f64()).abs() <= 1e-13);
                    total += product;
                }
                assert_eq!(Probability::Exact(total.clone()), eval.prob(k).unwrap());
                assert_eq!(ex(split_urns_pmf(n, a0, b0, k, EXACT)), total);
            }
        }
    }

    #[test]
    fn split_sum_needs_boundary_term() {
        // The sum over i ≥ 1 alone gives 0 at k = 0, but P[A_n = a0] > 0 once b0 > 0.
        let eval = Nonalternating::new(4, 1, 2, EXACT).unwrap();
        let interior: BigQ = (1..=4).map(|i| eval.summand(0, i).exact().unwrap().clone()).sum();
        assert_eq!(interior, q(0, 1));
        let dp = enumerate_exact(&UrnSpec::new(ReplacementMatrix::DEGREE, 1, 2).unwrap(), 4).unwrap();
        assert!(!dp.pmf.prob(1).is_zero());
        assert_eq!(eval.prob(0).unwrap(), dp.pmf.prob(1));
    }

    #[test]
    fn float_normalization_at_scale() {
        let law = Nonalternating::new(500, 5, 9, FLOAT).unwrap().law().unwrap();
        assert!((law.pmf.total().to_f64() - 1.0).abs() < 1e-8);
        let easy = easy_case_law(10_000, FLOAT).unwrap();
        assert!((easy.pmf.total().to_f64() - 1.0).abs() < 1e-9);
    }
}
