//! Floating-point sanity check of the small-t expansion
//! Σ_k μ_{k,d} e^{-tλ_{k,d}} ~ Σ_n a_{n,d} t^{n-d/2}.

use crate::error::{Error, Result};
use crate::invariants::heat_invariant;

/// Default cap on the summation index.
pub const DEFAULT_MAX_K: u64 = 1_000_000;

/// Environment variable overriding [`DEFAULT_MAX_K`].
pub const MAX_K_ENV: &str = "HEATSPHERE_MAX_K";

/// Relative accuracy used for the numeric trace inside [`remainder_order`].
const TRACE_REL_TOL: f64 = 1e-15;

/// Remainders below this fraction of the trace are treated as rounding noise.
const NOISE_FLOOR: f64 = 1e-11;

/// How far past `n_terms` to look for the next nonzero coefficient.
const NEXT_TERM_SEARCH: u32 = 40;

pub fn max_k_from_env() -> u64 {
    std::env::var(MAX_K_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_K)
}

fn multiplicity_f64(k: u64, d: u32) -> f64 {
    match (k, d) {
        (0, _) => 1.0,
        (_, 1) => 2.0,
        _ => {
            let k = k as f64;
            let d = d as f64;
            let binom = (1..(d as u32 - 1)).fold(1.0, |acc, i| acc * (k + i as f64) / i as f64);
            (2.0 * k + d - 1.0) / (d - 1.0) * binom
        }
    }
}

/// Σ_k μ_{k,d} e^{-tλ_{k,d}} with the cap taken from `HEATSPHERE_MAX_K`.
pub fn heat_trace_numeric(d: u32, t: f64, rel_tol: f64) -> Result<f64> {
    heat_trace_numeric_capped(d, t, rel_tol, max_k_from_env())
}

/// Partial sum over k = 0..=K, with K the first index where the tail bound
/// Σ_{k>K} (2k+d)^d e^{-tλ_k} ≤ 2(2K+2+d)^d e^{-tλ_{K+1}} drops below
/// `rel_tol` times the partial sum. The bound uses μ_{k,d} ≤ (2k+d)^d and
/// the fact that successive ratios of the bound terms decrease in k.
pub fn heat_trace_numeric_capped(d: u32, t: f64, rel_tol: f64, max_k: u64) -> Result<f64> {
    if d == 0 {
        return Err(Error::InvalidArgument("dimension d must be >= 1".into()));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "t must be positive, got {t}"
        )));
    }
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "rel_tol must lie in (0, 1), got {rel_tol}"
        )));
    }
    let df = d as f64;
    let lambda = |k: u64| k as f64 * (k as f64 + df - 1.0);
    let log_bound = |k: u64| df * (2.0 * k as f64 + df).ln() - t * lambda(k);

    let mut terms = Vec::new();
    let mut partial = 0.0;
    let mut k = 0u64;
    loop {
        let term = multiplicity_f64(k, d) * (-t * lambda(k)).exp();
        partial += term;
        terms.push(term);

        let next = k + 1;
        let ratio = (log_bound(next + 1) - log_bound(next)).exp();
        if ratio <= 0.5 && 2.0 * log_bound(next).exp() <= rel_tol * partial {
            break;
        }
        if next > max_k {
            return Err(Error::SummationCap { cap: max_k });
        }
        k = next;
    }
    // Smallest terms first.
    Ok(terms.iter().rev().sum())
}

/// Σ_{n < n_terms} a_{n,d} t^{n-d/2}, each exact coefficient rounded once.
pub fn asymptotic_sum(d: u32, t: f64, n_terms: u32) -> Result<f64> {
    if n_terms == 0 {
        return Err(Error::InvalidArgument("n_terms must be >= 1".into()));
    }
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "t must be positive, got {t}"
        )));
    }
    let half_d = d as f64 / 2.0;
    (0..n_terms).try_fold(0.0, |acc, n| {
        let a = heat_invariant(n, d, None)?.value.to_f64();
        Ok(acc + a * t.powf(n as f64 - half_d))
    })
}

/// Log-log slope of the remainder after `n_terms` terms.
#[derive(Clone, Debug, PartialEq)]
pub struct RemainderEstimate {
    pub d: u32,
    pub n_terms: u32,
    /// Strictly decreasing sample points in (0, 1).
    pub t_values: Vec<f64>,
    pub remainders: Vec<f64>,
    pub observed_order: f64,
    /// Exponent n - d/2 of the first omitted nonzero term.
    pub expected_order: f64,
    pub relative_deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RemainderOutcome {
    Measured(RemainderEstimate),
    /// Every coefficient after the truncation vanishes (the circle); the
    /// remainder is smaller than any power of t.
    BeyondAllOrders {
        d: u32,
        n_terms: u32,
    },
    /// The remainder is lost in rounding noise at these t.
    Inconclusive {
        d: u32,
        n_terms: u32,
        t_values: Vec<f64>,
        remainders: Vec<f64>,
    },
}

impl RemainderOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            RemainderOutcome::Measured(_) => "measured",
            RemainderOutcome::BeyondAllOrders { .. } => "beyond-all-orders",
            RemainderOutcome::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// Measures log₂(R(t0)/R(t0/2)) where R is the gap between the numeric trace
/// and the first `n_terms` terms of the expansion, and compares it with the
/// exponent of the first omitted nonzero coefficient.
pub fn remainder_order(d: u32, n_terms: u32, t0: f64) -> Result<RemainderOutcome> {
    if n_terms == 0 {
        return Err(Error::InvalidArgument("n_terms must be >= 1".into()));
    }
    if !(t0 > 0.0 && t0 < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "t0 must lie in (0, 1), got {t0}"
        )));
    }
    let next_nonzero = (n_terms..n_terms + NEXT_TERM_SEARCH)
        .map(|n| heat_invariant(n, d, None).map(|r| (n, r.value.is_zero())))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .find(|&(_, zero)| !zero)
        .map(|(n, _)| n);
    let Some(next) = next_nonzero else {
        return Ok(RemainderOutcome::BeyondAllOrders { d, n_terms });
    };

    let t_values = vec![t0, t0 / 2.0];
    let mut remainders = Vec::with_capacity(2);
    let mut noisy = false;
    for &t in &t_values {
        let trace = heat_trace_numeric(d, t, TRACE_REL_TOL)?;
        let remainder = (trace - asymptotic_sum(d, t, n_terms)?).abs();
        noisy |= remainder <= NOISE_FLOOR * trace;
        remainders.push(remainder);
    }
    if noisy {
        return Ok(RemainderOutcome::Inconclusive {
            d,
            n_terms,
            t_values,
            remainders,
        });
    }
    let observed_order = (remainders[0] / remainders[1]).log2();
    let expected_order = next as f64 - d as f64 / 2.0;
    let relative_deviation =
        (observed_order - expected_order).abs() / expected_order.abs().max(0.5);
    Ok(RemainderOutcome::Measured(RemainderEstimate {
        d,
        n_terms,
        t_values,
        remainders,
        observed_order,
        expected_order,
        relative_deviation,
    }))
}
