//! Legendre (Gegenbauer) polynomials L_{k,d} on [-1, 1] with weight
//! (1-t²)^{(d-2)/2}, normalized by L_{k,d}(1) = 1, built exactly by
//! Gram–Schmidt against the weighted moments.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    big, factorial, gamma_half, int, reciprocal_factorial, ExactValue, Rational,
};
use crate::spectrum::{multiplicity, sphere_volume};

/// Polynomial in t with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// t^k
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Self::new(coeffs)
    }

    /// (1 - t)^j
    pub fn one_minus_t_pow(j: usize) -> Self {
        let base = Self::new(vec![int(1), int(-1)]);
        (0..j).fold(Self::constant(int(1)), |acc, _| &acc * &base)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl Neg for RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{i}")?,
            }
        }
        Ok(())
    }
}

fn check_dimension(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "Legendre polynomials need d >= 2, got {d}"
        )));
    }
    Ok(())
}

/// ∫_{-1}^{1} t^m (1-t²)^{(d-2)/2} dt = B((m+1)/2, d/2), zero for odd m.
pub fn weighted_moment(m: u32, d: u32) -> Result<ExactValue> {
    check_dimension(d)?;
    if m % 2 == 1 {
        return Ok(ExactValue::zero());
    }
    let (m, d) = (m as i64, d as i64);
    Ok(gamma_half(m + 1)? * gamma_half(d)? / gamma_half(m + d + 1)?)
}

/// Weighted inner products on [-1, 1] for a fixed dimension. All nonzero
/// moments share one power of π, so the products are kept as rationals.
struct WeightedInner {
    moments: Vec<Rational>,
    pi_half: i64,
    d: u32,
}

impl WeightedInner {
    fn new(d: u32, max_degree: usize) -> Result<Self> {
        let pi_half = weighted_moment(0, d)?.pi_half();
        let mut inner = WeightedInner {
            moments: Vec::new(),
            pi_half,
            d,
        };
        inner.extend(max_degree)?;
        Ok(inner)
    }

    fn extend(&mut self, max_degree: usize) -> Result<()> {
        for m in self.moments.len()..=max_degree {
            let moment = weighted_moment(m as u32, self.d)?;
            debug_assert!(moment.is_zero() || moment.pi_half() == self.pi_half);
            self.moments.push(moment.coeff().clone());
        }
        Ok(())
    }

    fn rational_product(
        &mut self,
        p: &RationalPolynomial,
        q: &RationalPolynomial,
    ) -> Result<Rational> {
        let degree = p.degree().unwrap_or(0) + q.degree().unwrap_or(0);
        self.extend(degree)?;
        let mut acc = Rational::zero();
        for (i, a) in p.coeffs().iter().enumerate() {
            for (j, b) in q.coeffs().iter().enumerate() {
                acc += a * b * &self.moments[i + j];
            }
        }
        Ok(acc)
    }

    fn product(&mut self, p: &RationalPolynomial, q: &RationalPolynomial) -> Result<ExactValue> {
        Ok(ExactValue::new(self.rational_product(p, q)?, self.pi_half))
    }
}

/// Exact weighted inner product ∫ p q (1-t²)^{(d-2)/2} dt.
pub fn weighted_inner_product(
    p: &RationalPolynomial,
    q: &RationalPolynomial,
    d: u32,
) -> Result<ExactValue> {
    check_dimension(d)?;
    let degree = p.degree().unwrap_or(0) + q.degree().unwrap_or(0);
    WeightedInner::new(d, degree)?.product(p, q)
}

/// L_{0,d}, ..., L_{k_max,d}.
pub fn gegenbauer_family(k_max: usize, d: u32) -> Result<Vec<RationalPolynomial>> {
    check_dimension(d)?;
    let mut inner = WeightedInner::new(d, 2 * k_max)?;
    let mut family: Vec<RationalPolynomial> = Vec::with_capacity(k_max + 1);
    let mut norms: Vec<Rational> = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let monomial = RationalPolynomial::monomial(k);
        let mut p = monomial.clone();
        for (l, norm) in family.iter().zip(&norms) {
            let projection = inner.rational_product(&monomial, l)? / norm;
            p = &p - &l.scale(&projection);
        }
        let at_one = p.eval(&Rational::one());
        let p = p.scale(&at_one.recip());
        norms.push(inner.rational_product(&p, &p)?);
        family.push(p);
    }
    Ok(family)
}

pub fn gegenbauer_poly(k: usize, d: u32) -> Result<RationalPolynomial> {
    Ok(gegenbauer_family(k, d)?.pop().expect("family is nonempty"))
}

/// Coefficient of L_{k,d} in the expansion of (1-t)^j, as a ratio of
/// weighted integrals. Zero for k > j.
pub fn expansion_coeff(j: usize, k: usize, d: u32) -> Result<Rational> {
    check_dimension(d)?;
    if k > j {
        return Ok(Rational::zero());
    }
    let family = gegenbauer_family(k, d)?;
    let l = &family[k];
    let mut inner = WeightedInner::new(d, j + k)?;
    let numerator = inner.product(&RationalPolynomial::one_minus_t_pow(j), l)?;
    let denominator = inner.product(l, l)?;
    ratio_as_rational(numerator.checked_div(&denominator)?)
}

/// The closed form
/// (-1)^k 2^j Γ(j+d/2) j! / ((j-k)!(j+k+d-1)!) · (4π)^{d/2} μ_{k,d} / vol(S^d).
///
/// This is the coefficient of L_{k,d} in (1-t)^j itself: the 2^j is part of
/// the value, not a rescaling of it.
pub fn expansion_coeff_closed(j: usize, k: usize, d: u32) -> Result<Rational> {
    check_dimension(d)?;
    if k > j {
        return Ok(Rational::zero());
    }
    let (ji, ki, di) = (j as i64, k as i64, d as i64);
    let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
    let rational_part = sign
        * big(num_bigint::BigInt::from(2).pow(j as u32))
        * big(factorial(j as u64))
        * reciprocal_factorial(ji - ki)
        * reciprocal_factorial(ji + ki + di - 1)
        * big(multiplicity(k as u64, d)?);
    let four_pi = ExactValue::new(big(num_bigint::BigInt::from(2).pow(d)), di);
    let value = (gamma_half(2 * ji + di)? * four_pi).scale(&rational_part);
    ratio_as_rational(value.checked_div(&sphere_volume(d)?)?)
}

fn ratio_as_rational(value: ExactValue) -> Result<Rational> {
    value
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::Precondition(format!("expected a rational value, got {value}")))
}

/// Σ_k c_{jk} L_{k,d}, which must reproduce (1-t)^j.
pub fn reconstruct_power(j: usize, d: u32) -> Result<RationalPolynomial> {
    let family = gegenbauer_family(j, d)?;
    (0..=j).try_fold(RationalPolynomial::zero(), |acc, k| {
        Ok(&acc + &family[k].scale(&expansion_coeff(j, k, d)?))
    })
}
