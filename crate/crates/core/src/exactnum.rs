//! Exact arithmetic: big rationals, the factorial family, Γ at half-integers
//! and Bernoulli numbers.
//!
//! Every heat invariant of a round sphere is a rational multiple of a
//! half-integer power of π, so [`ExactValue`] carries a rational coefficient
//! and an integer exponent of √π. Nothing in this module rounds.

use std::fmt;
use std::ops::{Div, Mul, Neg};
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision reduced fraction.
pub type Rational = BigRational;

/// `n / d` as a reduced [`Rational`]. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `p`, `p/q` or a plain decimal such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: `{s}`"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole = if whole.is_empty() || whole == "-" || whole == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac = BigInt::from_str(frac).map_err(|_| bad())?;
        let magnitude = Rational::new(whole.abs() * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

/// m!
pub fn factorial(m: u64) -> BigInt {
    (2..=m).fold(BigInt::one(), |acc, i| acc * i)
}

/// 1/m!, with the reciprocal-gamma convention 1/m! = 0 for m < 0.
pub fn reciprocal_factorial(m: i64) -> Rational {
    if m < 0 {
        Rational::zero()
    } else {
        Rational::new(BigInt::one(), factorial(m as u64))
    }
}

/// C(a, b) for a ≥ 0; zero outside 0 ≤ b ≤ a.
pub fn binomial(a: i64, b: i64) -> Result<BigInt> {
    if a < 0 {
        return Err(Error::InvalidArgument(format!(
            "binomial needs a nonnegative upper index, got {a}"
        )));
    }
    if b < 0 || b > a {
        return Ok(BigInt::zero());
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    Ok(acc)
}

/// Rising factorial (t)_m = t (t+1) ... (t+m-1).
pub fn pochhammer(t: &Rational, m: u64) -> Rational {
    let mut acc = Rational::one();
    let mut factor = t.clone();
    for _ in 0..m {
        acc *= &factor;
        factor += Rational::one();
    }
    acc
}

/// Integer power of a rational, negative exponents allowed (base ≠ 0).
pub fn rational_pow(base: &Rational, exponent: i64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exponent.unsigned_abs() {
        acc *= base;
    }
    if exponent < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// A value `coeff · π^(pi_half / 2)`.
///
/// Zero is normalized to `pi_half = 0`, so structural equality is value
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactValue {
    coeff: Rational,
    pi_half: i64,
}

impl ExactValue {
    pub fn new(coeff: Rational, pi_half: i64) -> Self {
        let pi_half = if coeff.is_zero() { 0 } else { pi_half };
        ExactValue { coeff, pi_half }
    }

    pub fn rational(coeff: Rational) -> Self {
        Self::new(coeff, 0)
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// π^(pi_half / 2).
    pub fn pi_power(pi_half: i64) -> Self {
        Self::new(Rational::one(), pi_half)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn pi_half(&self) -> i64 {
        self.pi_half
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The value as a plain rational, if it carries no π.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.pi_half == 0).then_some(&self.coeff)
    }

    pub fn try_add(&self, other: &ExactValue) -> Result<ExactValue> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_half != other.pi_half {
            return Err(Error::PiPowerMismatch {
                lhs: self.pi_half,
                rhs: other.pi_half,
            });
        }
        Ok(ExactValue::new(&self.coeff + &other.coeff, self.pi_half))
    }

    pub fn try_sub(&self, other: &ExactValue) -> Result<ExactValue> {
        self.try_add(&-other.clone())
    }

    pub fn scale(&self, factor: &Rational) -> ExactValue {
        ExactValue::new(&self.coeff * factor, self.pi_half)
    }

    pub fn checked_div(&self, other: &ExactValue) -> Result<ExactValue> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactValue::new(
            &self.coeff / &other.coeff,
            self.pi_half - other.pi_half,
        ))
    }

    pub fn to_f64(&self) -> f64 {
        // Go through a 70-digit rational √π so the single rounding happens in
        // the final conversion.
        let pi_part = rational_pow(sqrt_pi_approx(), self.pi_half);
        (&self.coeff * pi_part).to_f64().unwrap_or(f64::NAN)
    }
}

fn sqrt_pi_approx() -> &'static Rational {
    static SQRT_PI: OnceLock<Rational> = OnceLock::new();
    SQRT_PI.get_or_init(|| {
        parse_rational("1.772453850905516027298167483341145182797549456122387128213807789852911")
            .expect("valid literal")
    })
}

impl Mul for ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: ExactValue) -> ExactValue {
        ExactValue::new(self.coeff * rhs.coeff, self.pi_half + rhs.pi_half)
    }
}

impl<'a> Mul<&'a ExactValue> for &'a ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: &ExactValue) -> ExactValue {
        ExactValue::new(&self.coeff * &rhs.coeff, self.pi_half + rhs.pi_half)
    }
}

/// Panics on division by zero; see [`ExactValue::checked_div`].
impl Div for ExactValue {
    type Output = ExactValue;
    fn div(self, rhs: ExactValue) -> ExactValue {
        self.checked_div(&rhs).expect("division by zero ExactValue")
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;
    fn neg(self) -> ExactValue {
        ExactValue::new(-self.coeff, self.pi_half)
    }
}

impl From<Rational> for ExactValue {
    fn from(r: Rational) -> Self {
        ExactValue::rational(r)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        match self.pi_half {
            0 => Ok(()),
            2 => write!(f, "*pi"),
            p if p % 2 == 0 => write!(f, "*pi^{}", p / 2),
            p => write!(f, "*pi^({p}/2)"),
        }
    }
}

/// Γ(m/2) for m ≥ 1.
pub fn gamma_half(m: i64) -> Result<ExactValue> {
    if m <= 0 {
        return Err(Error::InvalidArgument(format!(
            "gamma_half needs m >= 1, got {m}"
        )));
    }
    if m.is_even() {
        return Ok(ExactValue::rational(big(factorial((m / 2 - 1) as u64))));
    }
    // Γ(1/2) = √π, then Γ(z+1) = zΓ(z).
    let mut coeff = Rational::one();
    let mut k = 1;
    while k < m {
        coeff *= rat(k, 2);
        k += 2;
    }
    Ok(ExactValue::new(coeff, 1))
}

fn bernoulli_table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// Bernoulli number B_m with B_1 = -1/2, i.e. the coefficients of z/(e^z - 1).
pub fn bernoulli(m: usize) -> Rational {
    if let Some(b) = bernoulli_table().read().expect("bernoulli lock").get(m) {
        return b.clone();
    }
    let mut table = bernoulli_table().write().expect("bernoulli lock");
    // Σ_{k=0}^{n} C(n+1, k) B_k = 0
    while table.len() <= m {
        let n = table.len() as i64;
        let sum = table
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (k, b)| {
                acc + big(binomial(n + 1, k as i64).expect("n >= 0")) * b
            });
        table.push(-sum / int(n + 1));
    }
    table[m].clone()
}
