//! Verification suites that are not plain identity sweeps.

use std::ops::RangeInclusive;

use heatsphere::exactnum::ExactValue;
use heatsphere::identities::param_point;
use heatsphere::invariants::{general_sum, heat_invariant, heat_invariant_general};
use heatsphere::legendre::{
    expansion_coeff, expansion_coeff_closed, reconstruct_power, RationalPolynomial,
};
use heatsphere::opercalc::{check_lemma, Lemma};
use heatsphere::{Result, VerificationReport};

/// Both operator lemmas on t ∈ `t`, s ∈ `s`, ω' ∈ [2t+s, 2t+s+3]. Values of
/// t below a lemma's own minimum are skipped for that lemma.
pub fn lemmas(t: RangeInclusive<i64>, s: RangeInclusive<u32>) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("lemmas");
    for (lemma, t_min) in [(Lemma::Ff1Bb, 1), (Lemma::Ff2E2, 0)] {
        for t in t.clone().filter(|&t| t >= t_min) {
            for s in s.clone() {
                let lo = 2 * t + s as i64;
                for w in lo..=lo + 3 {
                    let params = param_point([
                        ("lemma", lemma.name().to_string()),
                        ("t", t.to_string()),
                        ("s", s.to_string()),
                        ("omega'", w.to_string()),
                    ]);
                    report.check_holds(params, check_lemma(lemma, t, s, w)?);
                }
            }
        }
    }
    Ok(report)
}

/// Reconstruction of (1-t)^j and closed vs brute-force coefficients.
pub fn legendre(j: RangeInclusive<u32>, d: RangeInclusive<u32>) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("legendre");
    for d in d {
        for j in j.clone() {
            let j = j as usize;
            let rebuilt = reconstruct_power(j, d)?;
            let params = param_point([("j", j.to_string()), ("d", d.to_string())]);
            report.check_holds(params, rebuilt == RationalPolynomial::one_minus_t_pow(j));
            for k in 0..=j {
                let params = param_point([
                    ("j", j.to_string()),
                    ("k", k.to_string()),
                    ("d", d.to_string()),
                ]);
                report.check(
                    params,
                    ExactValue::rational(expansion_coeff_closed(j, k, d)?),
                    ExactValue::rational(expansion_coeff(j, k, d)?),
                );
            }
        }
    }
    Ok(report)
}

/// General formula at ω = 2n against the default route for each cell.
pub fn crosscheck(n: RangeInclusive<u32>, d: RangeInclusive<u32>) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("crosscheck");
    for d in d {
        for n in n.clone().filter(|&n| n >= 1) {
            let routed = heat_invariant(n, d, None)?;
            let params = param_point([
                ("n", n.to_string()),
                ("d", d.to_string()),
                ("route", routed.route.to_string()),
            ]);
            report.check(
                params,
                heat_invariant_general(n, d, 2 * n as i64)?,
                routed.value,
            );
        }
    }
    Ok(report)
}

/// The general formula must not depend on ω over `omega_for(n)`, which is
/// clipped to ω ≥ 2n.
pub fn omega_stability(
    n: RangeInclusive<u32>,
    d: RangeInclusive<u32>,
    omega_for: impl Fn(u32) -> RangeInclusive<i64>,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("omega-stability");
    for d in d {
        for n in n.clone().filter(|&n| n >= 1) {
            let lo = 2 * n as i64;
            let base = heat_invariant_general(n, d, lo)?;
            let range = omega_for(n);
            for omega in (*range.start()).max(lo)..=*range.end() {
                let params = param_point([
                    ("n", n.to_string()),
                    ("d", d.to_string()),
                    ("omega", omega.to_string()),
                ]);
                report.check(params, heat_invariant_general(n, d, omega)?, base.clone());
            }
        }
    }
    Ok(report)
}

/// Default cells where ω = 2n-1 is known to give a wrong value.
pub const SHARPNESS_CELLS: [(u32, u32); 3] = [(1, 1), (2, 1), (2, 3)];

/// Passes when evaluating at ω = 2n-1 differs from the true value in every
/// cell, i.e. the bound ω ≥ 2n cannot be lowered there.
pub fn sharpness(cells: &[(u32, u32)]) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("sharpness");
    for &(n, d) in cells.iter().filter(|&&(n, _)| n >= 1) {
        let below = general_sum(n, d, 2 * n as i64 - 1)?;
        let valid = heat_invariant_general(n, d, 2 * n as i64)?;
        let params = param_point([
            ("n", n.to_string()),
            ("d", d.to_string()),
            ("value_at_2n-1", below.to_string()),
            ("value", valid.to_string()),
        ]);
        report.check_holds(params, below != valid);
    }
    report.note("a cell passes when the omega = 2n-1 evaluation differs from a_{n,d}");
    Ok(report)
}
