//! Exact heat-trace coefficients of round spheres.
//!
//! The coefficients a_{n,d} of the small-t expansion
//! Σ_k μ_{k,d} e^{-tλ_{k,d}} ~ Σ_n a_{n,d} t^{n-d/2} on S^d are computed in
//! exact arithmetic by three independent formulas (see [`invariants`]), the
//! combinatorial identities behind them are swept over parameter boxes
//! ([`identities`], [`opercalc`], [`legendre`]), and the expansion is
//! cross-checked numerically against the spectral sum ([`asymptotics`]).

pub mod asymptotics;
pub mod error;
pub mod exactnum;
pub mod identities;
pub mod invariants;
pub mod legendre;
pub mod opercalc;
pub mod spectrum;

pub use error::{Error, Result};
pub use exactnum::{ExactValue, Rational};
pub use identities::{Identity, OmegaRange, ParameterBox, VerificationReport};
pub use invariants::{heat_invariant, HeatInvariantResult, Route};
pub use legendre::RationalPolynomial;
pub use opercalc::{Lemma, TruncatedSeries};
