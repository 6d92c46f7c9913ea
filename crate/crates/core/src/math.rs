//! Special functions used by the closed-form urn laws.
//!
//! Every binomial in those formulas has the shape `C(x, y)` with `x - y` an
//! integer, or `y` a non-negative integer. Two rules cover them:
//!
//! * `y ∈ ℕ`: the falling factorial `x (x-1) ⋯ (x-y+1) / y!`, valid for any `x`;
//! * otherwise `Γ(x+1) / (Γ(y+1) Γ(x-y+1)) = (y+1)_{x-y} / (x-y)!`, which is `0`
//!   when `x - y < 0` (pole of `Γ(x-y+1)`).
//!
//! Γ ratios at half-integers always come in pairs `Γ(a+i)/Γ(a)`, so exact mode
//! works with rising factorials and never sees a factor of √π.

use core::ops::{Div, Mul};

use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number.
pub type BigQ = Ratio<BigInt>;

const INT_TOL: f64 = 1e-9;

fn as_integer(x: f64) -> Option<i64> {
    let r = libm::round(x);
    if libm::fabs(x - r) < INT_TOL {
        Some(r as i64)
    } else {
        None
    }
}

/// A real number stored as `sign · exp(ln_abs)`; `sign == 0` means zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub sign: i8,
    pub ln_abs: f64,
}

impl SignedLog {
    pub const ZERO: SignedLog = SignedLog { sign: 0, ln_abs: f64::NEG_INFINITY };
    pub const ONE: SignedLog = SignedLog { sign: 1, ln_abs: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            SignedLog { sign: if x > 0.0 { 1 } else { -1 }, ln_abs: libm::log(libm::fabs(x)) }
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => s as f64 * libm::exp(self.ln_abs),
        }
    }
}

impl Mul for SignedLog {
    type Output = SignedLog;

    fn mul(self, other: SignedLog) -> SignedLog {
        if self.sign == 0 || other.sign == 0 {
            return SignedLog::ZERO;
        }
        SignedLog { sign: self.sign * other.sign, ln_abs: self.ln_abs + other.ln_abs }
    }
}

impl Div for SignedLog {
    type Output = SignedLog;

    fn div(self, other: SignedLog) -> SignedLog {
        assert!(other.sign != 0, "division by zero in log space");
        if self.sign == 0 {
            return SignedLog::ZERO;
        }
        SignedLog { sign: self.sign * other.sign, ln_abs: self.ln_abs - other.ln_abs }
    }
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    libm::lgamma(x)
}

/// Γ(x) in signed log form; `None` at the poles `x ∈ {0, -1, -2, …}`.
pub fn gamma_signed(x: f64) -> Option<SignedLog> {
    if let Some(i) = as_integer(x) {
        if i <= 0 {
            return None;
        }
    }
    let (ln_abs, sign) = libm::lgamma_r(x);
    Some(SignedLog { sign: sign as i8, ln_abs })
}

/// `ln n!` for integer `n ≥ 0`.
pub fn ln_factorial(n: u64) -> f64 {
    libm::lgamma(n as f64 + 1.0)
}

/// Table of `ln j!` for `j = 0..=max`.
pub fn ln_factorial_table(max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(0.0);
    for j in 1..=max {
        // lgamma is accurate to an ulp; summing logs would drift at large j.
        out.push(ln_factorial(j as u64));
    }
    out
}

/// Generalized binomial `C(x, y)` in signed log form (see the module docs).
pub fn binom_f(x: f64, y: f64) -> SignedLog {
    if let Some(n) = as_integer(y).filter(|&n| n >= 0) {
        return falling_binom_f(x, n);
    }
    match as_integer(x - y) {
        Some(d) if d < 0 => SignedLog::ZERO,
        Some(d) => {
            let y1 = y + 1.0;
            if let Some(j) = as_integer(y1).filter(|&j| j <= 0) {
                // (-j)(-j+1)⋯(-j+d-1) / d! is zero once the product reaches 0.
                let j = -j;
                if d > j {
                    return SignedLog::ZERO;
                }
                let mag = binom_f(j as f64, d as f64);
                return SignedLog { sign: if d % 2 == 0 { mag.sign } else { -mag.sign }, ln_abs: mag.ln_abs };
            }
            let num = gamma_signed(y1 + d as f64).expect("x+1 is not a pole when y+1 is not");
            let den = gamma_signed(y1).expect("checked above");
            num.div(den).div(SignedLog { sign: 1, ln_abs: ln_factorial(d as u64) })
        }
        None => {
            let num = match gamma_signed(x + 1.0) {
                Some(v) => v,
                None => panic!("C({x}, {y}) has a pole in the numerator"),
            };
            match (gamma_signed(y + 1.0), gamma_signed(x - y + 1.0)) {
                (Some(a), Some(b)) => num.div(a).div(b),
                _ => SignedLog::ZERO,
            }
        }
    }
}

fn falling_binom_f(x: f64, n: i64) -> SignedLog {
    if n == 0 {
        return SignedLog::ONE;
    }
    match as_integer(x) {
        Some(xi) if xi >= n => SignedLog {
            sign: 1,
            ln_abs: ln_factorial(xi as u64) - ln_factorial(n as u64) - ln_factorial((xi - n) as u64),
        },
        Some(xi) if xi >= 0 => SignedLog::ZERO,
        Some(xi) => {
            // C(-a, n) = (-1)^n C(a+n-1, n)
            let mag = falling_binom_f((n - xi - 1) as f64, n);
            SignedLog { sign: if n % 2 == 0 { 1 } else { -1 }, ln_abs: mag.ln_abs }
        }
        None => {
            let num = gamma_signed(x + 1.0).expect("non-integer");
            let den = gamma_signed(x - n as f64 + 1.0).expect("non-integer");
            num.div(den).div(SignedLog { sign: 1, ln_abs: ln_factorial(n as u64) })
        }
    }
}

/// `ln (a)_j = ln Γ(a+j) - ln Γ(a)` for `a > 0`.
pub fn ln_rising(a: f64, j: u64) -> f64 {
    debug_assert!(a > 0.0);
    if j == 0 {
        0.0
    } else {
        ln_gamma(a + j as f64) - ln_gamma(a)
    }
}

// ---------------------------------------------------------------------------
// Exact arithmetic

/// `p / q` as an exact rational.
pub fn q(p: i64, q: i64) -> BigQ {
    BigQ::new(BigInt::from(p), BigInt::from(q))
}

pub fn q_int(p: i64) -> BigQ {
    BigQ::from_integer(BigInt::from(p))
}

fn is_nonneg_integer(x: &BigQ) -> Option<u64> {
    if x.is_integer() && !x.is_negative() {
        x.to_integer().to_u64()
    } else {
        None
    }
}

/// Rising factorial `(x)_j = x (x+1) ⋯ (x+j-1)`.
pub fn rising(x: &BigQ, j: u64) -> BigQ {
    let (p, d) = (x.numer(), x.denom());
    let mut num = BigInt::one();
    let mut term = p.clone();
    for _ in 0..j {
        num *= &term;
        term += d;
    }
    BigQ::new(num, num_traits::pow(d.clone(), j as usize))
}

/// Falling factorial `x (x-1) ⋯ (x-j+1)`.
pub fn falling(x: &BigQ, j: u64) -> BigQ {
    let (p, d) = (x.numer(), x.denom());
    let mut num = BigInt::one();
    let mut term = p.clone();
    for _ in 0..j {
        num *= &term;
        term -= d;
    }
    BigQ::new(num, num_traits::pow(d.clone(), j as usize))
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Generalized binomial `C(x, y)` in exact arithmetic (see the module docs).
///
/// # Panics
/// If `y` is not a non-negative integer and `x - y` is not an integer.
pub fn binom_q(x: &BigQ, y: &BigQ) -> BigQ {
    if let Some(n) = is_nonneg_integer(y) {
        return falling(x, n) / BigQ::from_integer(BigInt::from(factorial(n)));
    }
    let diff = x - y;
    assert!(diff.is_integer(), "C(x, y) needs y ∈ ℕ or x - y ∈ ℤ");
    if diff.is_negative() {
        return BigQ::zero();
    }
    let d = diff.to_integer().to_u64().expect("difference fits in u64");
    rising(&(y + BigQ::one()), d) / BigQ::from_integer(BigInt::from(factorial(d)))
}

/// Ordinary binomial for integers, `0` outside `0 ≤ k ≤ n`.
pub fn binom_u(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Cached factorials `0!..=max!`.
#[derive(Debug, Clone)]
pub struct Factorials {
    table: Vec<BigUint>,
}

impl Factorials {
    pub fn new(max: u64) -> Self {
        let mut table = Vec::with_capacity(max as usize + 1);
        table.push(BigUint::one());
        for i in 1..=max {
            let next = table.last().expect("nonempty") * i;
            table.push(next);
        }
        Factorials { table }
    }

    pub fn get(&self, n: u64) -> &BigUint {
        &self.table[n as usize]
    }

    /// `C(n, k)` for `0 ≤ k ≤ n ≤ max`; zero when `k > n`.
    pub fn binom(&self, n: u64, k: u64) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        self.get(n) / (self.get(k) * self.get(n - k))
    }
}

/// Nearest `f64` to `num / den`.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero());
    if num.is_zero() {
        return 0.0;
    }
    // Scale so the integer quotient lands in (2^62, 2^64).
    let shift = den.bits() as i64 - num.bits() as i64 + 63;
    let (quot, rem) = if shift >= 0 {
        (num << shift as u64).div_rem(den)
    } else {
        num.div_rem(&(den << (-shift) as u64))
    };
    let mut top = quot.to_u64().expect("64-bit quotient");
    // Sticky bit so the u64 → f64 rounding is correct.
    if !rem.is_zero() {
        top |= 1;
    }
    libm::ldexp(top as f64, -shift as i32)
}

/// Nearest `f64` to an exact rational.
pub fn q_to_f64(x: &BigQ) -> f64 {
    let neg = x.is_negative();
    let num = x.numer().magnitude();
    let v = ratio_to_f64(num, x.denom().magnitude());
    if neg {
        -v
    } else {
        v
    }
}
