//! Power-bandwidth tradeoff analysis for fading multiuser relay channels
//! under opportunistic (max-rate) scheduling.
//!
//! The library models a cell with a base station, a fixed relay station and
//! `K` users. In every slot the scheduler serves the user with the highest
//! instantaneous rate, either over the direct base-to-user link or over a
//! half-duplex two-hop route through the relay. For large user populations
//! the scheduled rate is governed by the maximum of `K` i.i.d. fading powers,
//! and extreme-value theory turns the average spectral efficiency into a
//! closed form built from the Gumbel normalizing constants of the fading law.
//!
//! Three independent evaluation routes are provided and cross-validated:
//!
//! * closed-form spectral efficiencies and tradeoff measures ([`capacity`],
//!   [`tradeoff`]),
//! * exact quadrature of the underlying order-statistics expectations
//!   ([`capacity::quadrature_oracle_direct`] and friends),
//! * seeded, reproducible Monte Carlo simulation of the scheduler
//!   ([`montecarlo`]).
//!
//! Everything numeric is generic over the scalar type through
//! [`scalar::Real`] (implemented for `f32` and `f64`); the `*64` aliases at
//! the crate root pin the `f64` instantiations that the CLI uses.
//!
//! Internally all spectral efficiencies are in nats/s/Hz. Conversion to
//! b/s/Hz and to dB happens at the output boundary, see [`tradeoff`] for the
//! exact Eb/N0 convention.

// Validation guards are written `!(x > 0)` so NaN fails them; tabulated
// constants keep their full published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod capacity;
pub mod error;
pub mod evt;
pub mod montecarlo;
pub mod scalar;
pub mod specfun;
pub mod tradeoff;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` fading-power model.
pub type FadingModel64 = evt::FadingModel<f64>;
/// `f64` Gumbel normalizing constants.
pub type GumbelConstants64 = evt::GumbelConstants<f64>;
/// `f64` scenario description.
pub type SystemConfig64 = capacity::SystemConfig<f64>;
/// `f64` half-duplex time share.
pub type TimeShare64 = capacity::TimeShare<f64>;
/// `f64` tradeoff measure quadruple.
pub type TradeoffMeasures64 = tradeoff::TradeoffMeasures<f64>;
/// `f64` sampled tradeoff curve.
pub type TradeoffCurve64 = tradeoff::TradeoffCurve<f64>;
/// `f64` Monte Carlo estimate.
pub type SimEstimate64 = montecarlo::SimEstimate<f64>;
