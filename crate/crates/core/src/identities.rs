//! Exact checks of the S¹ and S³ combinatorial identities and of the
//! alternating power sums Σ(-1)^p C(2j,p)(p-j)^s, swept over parameter boxes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    big, binomial, factorial, gamma_half, int, rat, rational_pow, reciprocal_factorial, ExactValue,
    Rational,
};

/// Named parameter values of one point in a sweep, e.g. `{n: 2, omega: 5}`.
pub type ParamPoint = BTreeMap<String, String>;

pub fn param_point<const N: usize>(pairs: [(&str, String); N]) -> ParamPoint {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub params: ParamPoint,
    pub computed: ExactValue,
    pub expected: ExactValue,
}

/// Outcome of sweeping one identity over a parameter box.
///
/// `passed` is maintained by [`VerificationReport::check`] and is true
/// exactly when `failures` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity_name: String,
    pub parameter_box: Vec<ParamPoint>,
    pub passed: bool,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(identity_name: impl Into<String>) -> Self {
        VerificationReport {
            identity_name: identity_name.into(),
            parameter_box: Vec::new(),
            passed: true,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records one point; a mismatch becomes a failing witness.
    pub fn check(&mut self, params: ParamPoint, computed: ExactValue, expected: ExactValue) {
        self.parameter_box.push(params.clone());
        if computed != expected {
            self.failures.push(Failure {
                params,
                computed,
                expected,
            });
            self.passed = false;
        }
    }

    /// Records a boolean check, with 1/0 standing in for true/false.
    pub fn check_holds(&mut self, params: ParamPoint, holds: bool) {
        let as_value = |b: bool| ExactValue::rational(int(b as i64));
        self.check(params, as_value(holds), as_value(true));
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn points_checked(&self) -> usize {
        self.parameter_box.len()
    }

    /// Folds another report's points into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.parameter_box.extend(other.parameter_box);
        self.passed &= other.passed;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{status} {} ({} points, {} failures)",
            self.identity_name,
            self.points_checked(),
            self.failures.len()
        )?;
        for failure in &self.failures {
            let params: Vec<String> = failure
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            writeln!(
                f,
                "  witness {}: computed {} expected {}",
                params.join(" "),
                failure.computed,
                failure.expected
            )?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}

fn sign(exponent: i64) -> Rational {
    if exponent.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// The S¹ identity sum with the inner index running over k = 0..=j.
pub fn theorem2_sum(n: u32, omega: i64) -> Rational {
    let n = n as i64;
    (0..=omega).fold(Rational::zero(), |acc, j| {
        let inner = (0..=j).fold(Rational::zero(), |inner, k| {
            let power = BigInt::from(k).pow((2 * j + 2 * n) as u32);
            inner + sign(k) * big(power) * reciprocal_factorial(j - k) * reciprocal_factorial(j + k)
        });
        acc + inner
            * reciprocal_factorial(omega - j)
            * reciprocal_factorial(j + n)
            * rat(1, 2 * j + 1)
    })
}

/// The generalized S¹ sum, inner index symmetrized to k = -j..=j and the
/// argument shifted by x. At x = 0 it is twice [`theorem2_sum`].
pub fn s1_sum(n: u32, omega: i64, x: &Rational) -> Rational {
    let n = n as i64;
    (0..=omega).fold(Rational::zero(), |acc, j| {
        let inner = (-j..=j).fold(Rational::zero(), |inner, k| {
            inner
                + sign(k)
                    * rational_pow(&(x + int(k)), 2 * j + 2 * n)
                    * reciprocal_factorial(j - k)
                    * reciprocal_factorial(j + k)
        });
        acc + inner
            * reciprocal_factorial(omega - j)
            * reciprocal_factorial(j + n)
            * rat(1, 2 * j + 1)
    })
}

/// Left side of the S³ identity, expected to equal (-1)^{n+1}√π/(8·n!).
pub fn s3_sum(n: u32, omega: i64) -> Result<ExactValue> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    if omega < 0 {
        return Err(Error::InvalidArgument(format!(
            "omega must be >= 0, got {omega}"
        )));
    }
    let n = n as i64;
    let total = (0..=omega).fold(Rational::zero(), |acc, j| {
        let inner = (0..=j + 1).fold(Rational::zero(), |inner, l| {
            let l2 = BigInt::from(l * l);
            let power = Pow::pow(&l2 - 1, (j + n) as u32);
            inner
                + sign(l)
                    * big(l2 * power)
                    * reciprocal_factorial(j + l + 1)
                    * reciprocal_factorial(j - l + 1)
        });
        acc + inner
            * reciprocal_factorial(omega - j)
            * reciprocal_factorial(j + n)
            * rat(1, 2 * j + 3)
    });
    Ok(gamma_half(2 * omega + 5)?.scale(&total))
}

/// (-1)^{n+1}√π / (8·n!)
pub fn s3_expected(n: u32) -> ExactValue {
    let n = n as i64;
    ExactValue::new(sign(n + 1) * reciprocal_factorial(n) * rat(1, 8), 1)
}

/// Σ_{p=0}^{2j} (-1)^p C(2j,p) (p-j)^s.
pub fn alternating_power_sum(j: u32, s: u32) -> BigInt {
    let j = j as i64;
    (0..=2 * j).fold(BigInt::zero(), |acc, p| {
        let term = binomial(2 * j, p).expect("2j >= 0") * BigInt::from(p - j).pow(s);
        if p % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    S1,
    S1g,
    S3,
    Vychet,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::S1 => "s1",
            Identity::S1g => "s1g",
            Identity::S3 => "s3",
            Identity::Vychet => "vychet",
        }
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s1" => Ok(Identity::S1),
            "s1g" => Ok(Identity::S1g),
            "s3" => Ok(Identity::S3),
            "vychet" => Ok(Identity::Vychet),
            other => Err(Error::UnknownIdentity(other.to_string())),
        }
    }
}

/// Range of ω for each n: either offsets from 2n or absolute values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaRange {
    AboveMinimum(RangeInclusive<i64>),
    Absolute(RangeInclusive<i64>),
}

impl OmegaRange {
    pub fn for_n(&self, n: u32) -> RangeInclusive<i64> {
        match self {
            OmegaRange::AboveMinimum(r) => {
                let base = 2 * n as i64;
                (base + r.start()).max(0)..=base + r.end()
            }
            OmegaRange::Absolute(r) => (*r.start()).max(0)..=*r.end(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterBox {
    pub n: RangeInclusive<u32>,
    pub omega: OmegaRange,
    /// Shifts for the generalized S¹ identity.
    pub x: Vec<Rational>,
    /// j range for the alternating power sums; s sweeps 0..=2j.
    pub j: RangeInclusive<u32>,
}

impl Default for ParameterBox {
    fn default() -> Self {
        ParameterBox {
            n: 1..=5,
            omega: OmegaRange::AboveMinimum(0..=4),
            x: vec![int(0), rat(1, 2), int(1), rat(7, 3)],
            j: 0..=10,
        }
    }
}

/// Sweeps one identity over the box in deterministic (n, ω, x) order.
pub fn verify_identity(identity: Identity, bx: &ParameterBox) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(identity.name());
    match identity {
        Identity::S1 => {
            for n in bx.n.clone().filter(|&n| n >= 1) {
                for omega in bx.omega.for_n(n) {
                    let value = ExactValue::rational(theorem2_sum(n, omega));
                    let params = param_point([("n", n.to_string()), ("omega", omega.to_string())]);
                    report.check(params, value, ExactValue::zero());
                }
            }
        }
        Identity::S1g => {
            for n in bx.n.clone().filter(|&n| n >= 1) {
                for omega in bx.omega.for_n(n) {
                    for x in &bx.x {
                        let value = ExactValue::rational(s1_sum(n, omega, x));
                        let params = param_point([
                            ("n", n.to_string()),
                            ("omega", omega.to_string()),
                            ("x", x.to_string()),
                        ]);
                        report.check(params, value, ExactValue::zero());
                    }
                }
            }
        }
        Identity::S3 => {
            for n in bx.n.clone().filter(|&n| n >= 1) {
                for omega in bx.omega.for_n(n) {
                    let params = param_point([("n", n.to_string()), ("omega", omega.to_string())]);
                    report.check(params, s3_sum(n, omega)?, s3_expected(n));
                }
            }
        }
        Identity::Vychet => {
            for j in bx.j.clone() {
                for s in 0..=2 * j {
                    let expected = if s == 2 * j {
                        factorial(2 * j as u64)
                    } else {
                        BigInt::zero()
                    };
                    let params = param_point([("j", j.to_string()), ("s", s.to_string())]);
                    report.check(
                        params,
                        ExactValue::rational(big(alternating_power_sum(j, s))),
                        ExactValue::rational(big(expected)),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Looks an identity up by name, then sweeps it.
pub fn verify_identity_named(name: &str, bx: &ParameterBox) -> Result<VerificationReport> {
    verify_identity(name.parse()?, bx)
}
