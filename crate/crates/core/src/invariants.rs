//! Heat invariants a_{n,d} of round spheres.
//!
//! Three independent routes are implemented: the general double sum valid
//! for every ω ≥ 2n, the single sum over K-coefficients for odd d, and the
//! Bernoulli-number formula for even d. Closed forms for d ∈ {1,2,3,5,7}
//! and the Weyl term complete the table.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{
    bernoulli, big, binomial, factorial, gamma_half, int, rat, rational_pow, reciprocal_factorial,
    ExactValue, Rational,
};
use crate::legendre::RationalPolynomial;
use crate::spectrum::{eigenvalue, multiplicity, weyl_leading_term};

/// K_s^α for s = 1..=α: Σ_s K_s^α z^{2s} = ∏_{β=0}^{α-1} (z² - β²).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTableOdd {
    alpha: u32,
    entries: Vec<Rational>,
}

impl KTableOdd {
    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    /// K_s^α; zero outside 1..=α.
    pub fn get(&self, s: u32) -> Rational {
        match s {
            1.. if s <= self.alpha => self.entries[s as usize - 1].clone(),
            _ => Rational::zero(),
        }
    }
}

/// K_t^ν for t = 0..ν: Σ_t K_t^ν z^{2ν-2-2t} = ∏_{β=1/2}^{ν-3/2} (z² - β²).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTableEven {
    nu: u32,
    entries: Vec<Rational>,
}

impl KTableEven {
    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn get(&self, t: u32) -> Rational {
        self.entries
            .get(t as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

/// ∏ (w - root) over the given roots, as a polynomial in w = z².
fn product_of_shifts(roots: impl IntoIterator<Item = Rational>) -> RationalPolynomial {
    roots
        .into_iter()
        .fold(RationalPolynomial::constant(int(1)), |acc, root| {
            &acc * &RationalPolynomial::new(vec![-root, int(1)])
        })
}

pub fn k_table_odd(alpha: u32) -> Result<KTableOdd> {
    if alpha == 0 {
        return Err(Error::InvalidArgument("alpha must be >= 1".into()));
    }
    let poly = product_of_shifts((0..alpha as i64).map(|b| int(b * b)));
    debug_assert!(poly.coeff(0).is_zero());
    let entries = (1..=alpha as usize).map(|s| poly.coeff(s)).collect();
    Ok(KTableOdd { alpha, entries })
}

pub fn k_table_even(nu: u32) -> Result<KTableEven> {
    if nu == 0 {
        return Err(Error::InvalidArgument("nu must be >= 1".into()));
    }
    let poly = product_of_shifts((0..nu as i64 - 1).map(|i| rat((2 * i + 1) * (2 * i + 1), 4)));
    let top = nu as usize - 1;
    let entries = (0..=top).map(|t| poly.coeff(top - t)).collect();
    Ok(KTableEven { nu, entries })
}

fn sign(exponent: i64) -> Rational {
    if exponent % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// General formula with ω ≥ 2n enforced.
pub fn heat_invariant_general(n: u32, d: u32, omega: i64) -> Result<ExactValue> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "the general formula starts at n = 1".into(),
        ));
    }
    let min = 2 * n as i64;
    if omega < min {
        return Err(Error::OmegaTooSmall { omega, min });
    }
    general_sum(n, d, omega)
}

/// The general double sum evaluated at any ω ≥ 0, without the ω ≥ 2n
/// precondition. Below 2n the value is generally *not* a_{n,d}; this entry
/// point exists to probe that.
pub fn general_sum(n: u32, d: u32, omega: i64) -> Result<ExactValue> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension d must be >= 1".into()));
    }
    if omega < 0 {
        return Err(Error::InvalidArgument(format!(
            "omega must be >= 0, got {omega}"
        )));
    }
    let (n, di) = (n as i64, d as i64);
    let data: Vec<(BigInt, BigInt)> = (1..=omega as u64)
        .map(|k| Ok((BigInt::from(eigenvalue(k, d)?), multiplicity(k, d)?)))
        .collect::<Result<_>>()?;

    let mut total = Rational::zero();
    for j in 1..=omega {
        let mut inner = BigInt::zero();
        for k in 1..=j {
            let (lambda, mu) = &data[k as usize - 1];
            let term = binomial(2 * j + di - 1, j - k)? * mu * lambda.pow((j + n) as u32);
            if k % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        total += big(inner)
            * reciprocal_factorial(omega - j)
            * reciprocal_factorial(j + n)
            * reciprocal_factorial(2 * j + di);
    }
    let prefactor = sign(n) * int(2);
    Ok(gamma_half(2 * omega + di + 2)?.scale(&(prefactor * total)))
}

/// Odd dimensions d = 2α+1:
/// Σ_{s=1}^{α} α^{2n-2α+2s} Γ(s+1/2) K_s^α / ((n-α+s)! (2α)!).
pub fn heat_invariant_odd(n: u32, alpha: u32) -> Result<ExactValue> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let table = k_table_odd(alpha)?;
    let (n, a) = (n as i64, alpha as i64);
    let alpha_r = int(a);
    let mut total = Rational::zero();
    for s in 1..=a {
        let shifted = n - a + s;
        if shifted < 0 {
            continue;
        }
        // Γ(s+1/2) = Γ(1/2)·(rational); the √π is common to every term.
        let gamma = gamma_half(2 * s + 1)?;
        total += rational_pow(&alpha_r, 2 * shifted)
            * gamma.coeff()
            * table.get(s as u32)
            * reciprocal_factorial(shifted);
    }
    total *= reciprocal_factorial(2 * a);
    Ok(ExactValue::new(total, 1))
}

/// Even dimensions d = 2ν, with the Bernoulli correction term; the second
/// sum is empty when ν > n.
pub fn heat_invariant_even(n: u32, nu: u32) -> Result<ExactValue> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let table = k_table_even(nu)?;
    let (n, nu) = (n as i64, nu as i64);
    let half = rat(2 * nu - 1, 2);

    let mut first = Rational::zero();
    for t in 0..nu {
        if n - t < 0 {
            continue;
        }
        first += big(factorial((nu - 1 - t) as u64))
            * reciprocal_factorial(n - t)
            * rational_pow(&half, 2 * n - 2 * t)
            * table.get(t as u32);
    }

    let mut second = Rational::zero();
    for t in 0..nu {
        for p in (nu - t)..=(n - t) {
            let b = bernoulli(2 * p as usize);
            let bracket = rational_pow(&rat(1, 2), 2 * p - 1) - int(1);
            second += table.get(t as u32)
                * sign(p + nu - t - 1)
                * rational_pow(&half, 2 * n - 2 * t - 2 * p)
                * b
                * bracket
                * rat(1, p)
                * reciprocal_factorial(n - t - p)
                * reciprocal_factorial(p - nu + t);
        }
    }
    Ok(ExactValue::rational(
        (first + second) * reciprocal_factorial(2 * nu - 1),
    ))
}

/// a_{n,2} = 1/(n! 4^n) Σ_{r=0}^{n} (-1)^r C(n,r) (2 - 4^r) B_{2r}.
pub fn s2_bernoulli_sum(n: u32) -> Rational {
    let n = n as i64;
    let sum = (0..=n).fold(Rational::zero(), |acc, r| {
        let four_r = BigInt::from(4).pow(r as u32);
        acc + sign(r)
            * big(binomial(n, r).expect("n >= 0"))
            * big(BigInt::from(2) - four_r)
            * bernoulli(2 * r as usize)
    });
    sum * reciprocal_factorial(n) / big(BigInt::from(4).pow(n as u32))
}

/// Closed forms for d ∈ {1, 2, 3, 5, 7}, n ≥ 1.
pub fn heat_invariant_closed(n: u32, d: u32) -> Result<ExactValue> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "closed forms start at n = 1; n = 0 is the Weyl term".into(),
        ));
    }
    let ni = n as i64;
    let inv_fact = reciprocal_factorial(ni);
    match d {
        1 => Ok(ExactValue::zero()),
        2 => Ok(ExactValue::rational(s2_bernoulli_sum(n))),
        3 => Ok(ExactValue::new(inv_fact * rat(1, 4), 1)),
        5 => {
            let c = rational_pow(&int(4), ni - 3) * int(6 - ni) * inv_fact * rat(1, 3);
            Ok(ExactValue::new(c, 1))
        }
        7 => {
            let poly = 16 * ni * ni - 286 * ni + 1215;
            let c = rational_pow(&int(3), 2 * ni - 6) * int(poly) * inv_fact * rat(1, 640);
            Ok(ExactValue::new(c, 1))
        }
        _ => Err(Error::UnsupportedDimension(d)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    General,
    Odd,
    Even,
    Closed,
    Weyl,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::General => "general",
            Route::Odd => "odd",
            Route::Even => "even",
            Route::Closed => "closed",
            Route::Weyl => "weyl",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Route::General),
            "odd" => Ok(Route::Odd),
            "even" => Ok(Route::Even),
            "closed" => Ok(Route::Closed),
            "weyl" => Ok(Route::Weyl),
            other => Err(Error::InvalidArgument(format!("unknown route `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeatInvariantResult {
    pub n: u32,
    pub d: u32,
    pub omega_used: Option<i64>,
    pub route: Route,
    pub value: ExactValue,
}

/// Default dispatch: n = 0 → Weyl term; an explicit ω forces the general
/// formula; otherwise odd d ≥ 3 → odd route, even d → even route, and the
/// circle (d = 1) → its closed form.
pub fn heat_invariant(n: u32, d: u32, omega: Option<i64>) -> Result<HeatInvariantResult> {
    let route = match (n, omega) {
        (0, _) => Route::Weyl,
        (_, Some(_)) => Route::General,
        _ if d == 1 => Route::Closed,
        _ if d % 2 == 1 => Route::Odd,
        _ => Route::Even,
    };
    heat_invariant_via(n, d, route, omega)
}

/// Evaluates a_{n,d} along a specific route. For the general route ω
/// defaults to 2n.
pub fn heat_invariant_via(
    n: u32,
    d: u32,
    route: Route,
    omega: Option<i64>,
) -> Result<HeatInvariantResult> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension d must be >= 1".into()));
    }
    if n == 0 {
        if omega.is_some() {
            return Err(Error::InvalidArgument(
                "omega only applies to n >= 1".into(),
            ));
        }
        return Ok(HeatInvariantResult {
            n,
            d,
            omega_used: None,
            route: Route::Weyl,
            value: weyl_leading_term(d)?,
        });
    }
    if omega.is_some() && route != Route::General {
        return Err(Error::InvalidArgument(format!(
            "omega only applies to the general route, not `{route}`"
        )));
    }
    let mut omega_used = None;
    let value = match route {
        Route::Weyl => {
            return Err(Error::InvalidArgument(
                "the weyl route only applies to n = 0".into(),
            ))
        }
        Route::General => {
            let omega = omega.unwrap_or(2 * n as i64);
            omega_used = Some(omega);
            heat_invariant_general(n, d, omega)?
        }
        Route::Odd => {
            if d.is_multiple_of(2) || d < 3 {
                return Err(Error::InvalidArgument(format!(
                    "the odd route needs odd d >= 3, got {d}"
                )));
            }
            heat_invariant_odd(n, (d - 1) / 2)?
        }
        Route::Even => {
            if d % 2 == 1 {
                return Err(Error::InvalidArgument(format!(
                    "the even route needs even d, got {d}"
                )));
            }
            heat_invariant_even(n, d / 2)?
        }
        Route::Closed => heat_invariant_closed(n, d)?,
    };
    Ok(HeatInvariantResult {
        n,
        d,
        omega_used,
        route,
        value,
    })
}

impl HeatInvariantResult {
    /// Odd-dimensional values carry √π, even-dimensional ones are rational.
    pub fn has_expected_pi_power(&self) -> bool {
        self.value.is_zero() || self.value.pi_half() == (self.d % 2) as i64
    }
}
