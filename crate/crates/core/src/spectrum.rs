//! Spectrum of the Laplace–Beltrami operator on the round unit sphere S^d.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactnum::{big, factorial, gamma_half, ExactValue};

/// One eigenvalue of S^d with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralDatum {
    pub k: u64,
    pub d: u32,
    pub lambda: u64,
    pub mu: BigInt,
}

impl SpectralDatum {
    pub fn new(k: u64, d: u32) -> Result<Self> {
        Ok(SpectralDatum {
            k,
            d,
            lambda: eigenvalue(k, d)?,
            mu: multiplicity(k, d)?,
        })
    }
}

fn check_dimension(d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension d must be >= 1".into()));
    }
    Ok(())
}

/// λ_{k,d} = k(k+d-1).
pub fn eigenvalue(k: u64, d: u32) -> Result<u64> {
    check_dimension(d)?;
    Ok(k * (k + d as u64 - 1))
}

/// μ_{k,d} = (2k+d-1)(k+d-2)! / (k!(d-1)!), and μ_{0,d} = 1.
pub fn multiplicity(k: u64, d: u32) -> Result<BigInt> {
    check_dimension(d)?;
    if k == 0 {
        return Ok(BigInt::one());
    }
    let d = d as u64;
    Ok(BigInt::from(2 * k + d - 1) * factorial(k + d - 2) / (factorial(k) * factorial(d - 1)))
}

/// vol(S^d) = 2π^{(d+1)/2} / Γ((d+1)/2).
pub fn sphere_volume(d: u32) -> Result<ExactValue> {
    check_dimension(d)?;
    let numerator = ExactValue::new(big(2), d as i64 + 1);
    Ok(numerator / gamma_half(d as i64 + 1)?)
}

/// The n = 0 heat coefficient vol(S^d) / (4π)^{d/2}.
pub fn weyl_leading_term(d: u32) -> Result<ExactValue> {
    let four_pi = ExactValue::new(big(BigInt::from(2).pow(d)), d as i64);
    Ok(sphere_volume(d)? / four_pi)
}
