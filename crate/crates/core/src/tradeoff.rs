//! The power-bandwidth tradeoff measures and Eb/N0 curve generation.
//!
//! Four scalars summarize how a spectral-efficiency function `C(snr)` (in
//! nats/s/Hz) trades energy for bandwidth:
//!
//! * `ebno_min` - minimum energy per bit over noise density, `ln 2 / Ċ(0⁺)`;
//! * `wideband_slope` (S0) - b/s/Hz gained per 3 dB near `ebno_min`,
//!   `2·Ċ² / (-C̈)` at vanishing SNR;
//! * `high_snr_slope` (S∞) - asymptotic b/s/Hz per 3 dB, `lim snr·Ċ(snr)`;
//! * `ebno_improvement` - high-SNR Eb/N0 gain over the unfaded single-user
//!   AWGN reference, `lim snr·exp(-C(snr)/S∞)`.
//!
//! Each measure is available twice: in closed form from the extreme-value
//! expressions ([`measures_direct_closed`], [`measures_relay_closed`]) and as
//! numeric limits of an arbitrary rate function ([`measures_numeric`]), which
//! serves as the independent cross-check.
//!
//! Eb/N0 convention: energy is per information *bit*, so at a curve point
//! `Eb/N0 (linear) = snr·ln2 / C_nats(snr) = snr / C_bits(snr)`; the dB view
//! is `10·log10`. This reproduces the AWGN reference values
//! `(ebno_min, S0, ebno_imp, S∞) = (ln 2 ≈ -1.59 dB, 2, 1, 1)`.

use crate::capacity::{DirectCapacity, RelayCapacity, SystemConfig};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::{derivative, e1_of_exponent, DerivativeOrder};

/// The four tradeoff measures. Linear units; dB views via the accessors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffMeasures<T> {
    /// Minimum Eb/N0 (linear).
    pub ebno_min: T,
    /// Wideband slope S0 (b/s/Hz per 3 dB).
    pub wideband_slope: T,
    /// Eb/N0 improvement factor over the AWGN reference (linear).
    pub ebno_improvement: T,
    /// High-SNR slope S∞ (b/s/Hz per 3 dB).
    pub high_snr_slope: T,
}

impl<T: Real> TradeoffMeasures<T> {
    /// Exact measures of the unfaded single-user AWGN reference channel.
    pub fn awgn() -> Self {
        Self {
            ebno_min: T::LN_2,
            wideband_slope: T::of(2.0),
            ebno_improvement: T::one(),
            high_snr_slope: T::one(),
        }
    }

    pub fn ebno_min_db(&self) -> T {
        db10(self.ebno_min)
    }

    pub fn ebno_improvement_db(&self) -> T {
        db10(self.ebno_improvement)
    }

    fn validate(self, context: &str) -> Result<Self> {
        for (name, v) in [
            ("ebno_min", self.ebno_min),
            ("wideband_slope", self.wideband_slope),
            ("ebno_improvement", self.ebno_improvement),
            ("high_snr_slope", self.high_snr_slope),
        ] {
            if !v.is_finite() || !(v > T::zero()) {
                return Err(Error::Degenerate(format!(
                    "{context}: {name} = {v} is not a positive finite number"
                )));
            }
        }
        Ok(self)
    }
}

fn db10<T: Real>(linear: T) -> T {
    T::of(10.0) * linear.log10()
}

/// Closed-form measures for direct transmission with opportunistic
/// scheduling, in terms of the Gumbel constants `(a, b)` of the base-link
/// fading and the SNR ratio `α`.
pub fn measures_direct_closed<T: Real>(cfg: &SystemConfig<T>) -> Result<TradeoffMeasures<T>> {
    let direct = DirectCapacity::new(cfg)?;
    let a = direct.constants().scale;
    let b = direct.constants().location;
    if !(b > T::zero()) {
        return Err(Error::Domain(format!(
            "direct closed form needs a positive location constant, got {b}"
        )));
    }
    let alpha = cfg.alpha_base();
    let kappa = T::EULER_GAMMA;
    let two = T::of(2.0);
    let slope0 = kappa * a + b; // Ċ(0) / α
    TradeoffMeasures {
        ebno_min: T::LN_2 / (alpha * slope0),
        wideband_slope: two * slope0 * slope0 / (b * (two * kappa * a + b)),
        ebno_improvement: (-(kappa * a) / b).exp() / (alpha * b),
        high_snr_slope: T::one(),
    }
    .validate("direct closed form")
}

/// Closed-form measures for two-hop relaying with opportunistic scheduling.
///
/// With `(a, b)` the Gumbel constants of the access-link fading, `α` the
/// access SNR ratio and `ζ = exp((β_R·α·b - β_B)/(β_R·α·a))`:
///
/// * `ebno_min = ln2 / (β_B - β_R·α·a·E1(ζ))`;
/// * `S0 = 2·(β_B - β_R·α·a·E1(ζ))² / (β_B - 2·β_R·a·α·(b·α·E1(ζ) + e^(-ζ)·e₁))`
///   where `e₁ = (β_B·(1/2 - α·b) + β_R·(α·b)²/2) / (β_R·α·a)` is the
///   first-order coefficient of the exponent of `z(snr)` at zero SNR;
/// * `S∞ = min(β_B, β_R)`;
/// * the Eb/N0 improvement is piecewise in the time share: the backhaul
///   phase limits the rate at high SNR when `β_B < β_R`, giving the AWGN
///   value 1; the opposite split is access-limited with the
///   multiuser-diversity value `exp(-κ·a/b)/(α·b)`; the even split keeps
///   both phases active and gives `exp((a/b)·E1((α·b)^(b/a)))`.
pub fn measures_relay_closed<T: Real>(cfg: &SystemConfig<T>) -> Result<TradeoffMeasures<T>> {
    let relay = RelayCapacity::new(cfg)?;
    let a = relay.constants().scale;
    let b = relay.constants().location;
    let alpha = cfg.alpha_relay();
    let share = cfg.timeshare();
    let (beta_b, beta_r) = (share.backhaul(), share.access());
    let kappa = T::EULER_GAMMA;
    let two = T::of(2.0);
    let half = T::of(0.5);

    let ln_zeta = relay.limit_exponent();
    let e1_zeta = e1_of_exponent(ln_zeta);
    // exp(-ζ), safe for the whole range of ln ζ (saturates to 0 or 1).
    let exp_neg_zeta = (-ln_zeta.exp()).exp();

    let slope0 = beta_b - beta_r * alpha * a * e1_zeta; // Ċ(0)
    if !(slope0 > T::zero()) {
        return Err(Error::Degenerate(format!(
            "relay ebno_min denominator beta_b - beta_r*alpha*a*E1(zeta) = {slope0} <= 0"
        )));
    }

    // Second-order coefficient of the closed form at zero SNR. The argument
    // of E1 moves with SNR as z = ζ·(1 + e1_coeff·snr + ...), which feeds the
    // chain-rule term e^(-ζ)·e1_coeff of the curvature.
    let alpha_b_prod = alpha * b;
    let e1_coeff = (beta_b * (half - alpha_b_prod)
        + beta_r * alpha_b_prod * alpha_b_prod * half)
        / (beta_r * alpha * a);
    let curvature = beta_b
        - two * beta_r * a * alpha * (alpha_b_prod * e1_zeta + exp_neg_zeta * e1_coeff);
    if !(curvature > T::zero()) {
        return Err(Error::Degenerate(format!(
            "relay wideband-slope denominator -C''(0) = {curvature} <= 0"
        )));
    }

    let improvement = if (beta_b - beta_r).abs() <= T::of(1e-12) {
        // Even split: both phases stay active at high SNR.
        let arg_exponent = (b / a) * alpha_b_prod.ln();
        ((a / b) * e1_of_exponent(arg_exponent)).exp()
    } else if beta_b < beta_r {
        // Backhaul-limited: the clean base-relay link sets the high-SNR
        // behavior, no gain over the AWGN reference.
        T::one()
    } else {
        // Access-limited: the best-of-K fading link dominates.
        (-(kappa * a) / b).exp() / alpha_b_prod
    };

    TradeoffMeasures {
        ebno_min: T::LN_2 / slope0,
        wideband_slope: two * slope0 * slope0 / curvature,
        ebno_improvement: improvement,
        high_snr_slope: beta_b.min(beta_r),
    }
    .validate("relay closed form")
}

/// Numeric-limit measures of an arbitrary smooth, nondecreasing rate
/// function with `c(0) = 0` and logarithmic growth.
///
/// Low-SNR quantities are finite-difference values on the ladder
/// `snr ∈ {1e-4, 1e-5, 1e-6}` extrapolated to zero; high-SNR quantities are
/// evaluated on `snr ∈ {1e4, 1e6, 1e8}` and accepted once the last two rungs
/// agree within 0.1%.
pub fn measures_numeric<T, F>(rate: F) -> Result<TradeoffMeasures<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    // --- power-limited end -------------------------------------------------
    let low_ladder = [T::of(1e-4), T::of(1e-5), T::of(1e-6)];
    let mut ebno = [T::zero(); 3];
    let mut slope = [T::zero(); 3];
    for (i, &snr) in low_ladder.iter().enumerate() {
        let first = derivative(&rate, snr, DerivativeOrder::First)?;
        if !(first.value > T::zero()) {
            return Err(Error::Degenerate(format!(
                "rate slope at snr = {snr} is {v}, expected positive",
                v = first.value
            )));
        }
        let second = derivative(&rate, snr, DerivativeOrder::Second)?;
        if !(second.value < T::zero()) {
            return Err(Error::Degenerate(format!(
                "rate curvature at snr = {snr} is {v}, expected negative",
                v = second.value
            )));
        }
        ebno[i] = T::LN_2 / first.value;
        slope[i] = T::of(2.0) * first.value * first.value / -second.value;
    }
    let ebno_min = extrapolate_ratio10(ebno);
    let wideband_slope = extrapolate_ratio10(slope);

    // --- bandwidth-limited end ---------------------------------------------
    let high_ladder = [T::of(1e4), T::of(1e6), T::of(1e8)];
    let mut high_slope = [T::zero(); 3];
    let mut improvement = [T::zero(); 3];
    for (i, &snr) in high_ladder.iter().enumerate() {
        let first = derivative(&rate, snr, DerivativeOrder::First)?;
        let s_inf = snr * first.value;
        if !(s_inf > T::zero()) {
            return Err(Error::Degenerate(format!(
                "snr·Ċ(snr) at snr = {snr} is {s_inf}, expected positive"
            )));
        }
        high_slope[i] = s_inf;
        improvement[i] = snr * (-rate(snr) / s_inf).exp();
    }
    let high_snr_slope = ladder_limit(high_slope)?;
    let ebno_improvement = ladder_limit(improvement)?;

    TradeoffMeasures {
        ebno_min,
        wideband_slope,
        ebno_improvement,
        high_snr_slope,
    }
    .validate("numeric limits")
}

/// Two-level Richardson extrapolation to zero for values sampled at steps
/// h, h/10, h/100 with an analytic error expansion.
fn extrapolate_ratio10<T: Real>(values: [T; 3]) -> T {
    let ten = T::of(10.0);
    let nine = T::of(9.0);
    let first = (ten * values[1] - values[0]) / nine;
    let second = (ten * values[2] - values[1]) / nine;
    (T::of(100.0) * second - first) / T::of(99.0)
}

/// Accept the top rung of an increasing-SNR ladder once the last two rungs
/// agree within 0.1%.
fn ladder_limit<T: Real>(rungs: [T; 3]) -> Result<T> {
    let last = rungs[2];
    let previous = rungs[1];
    if (last - previous).abs() <= T::of(1e-3) * last.abs() {
        Ok(last)
    } else {
        Err(Error::LimitFailure {
            previous: previous.as_f64(),
            last: last.as_f64(),
        })
    }
}

/// Both routes to the even-split relay Eb/N0 improvement: the closed-form
/// branch and the numeric high-SNR limit of the relay rate function, with
/// their relative gap. Produced for diagnostics; the numeric limit is the
/// validation reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualSplitImprovementReport<T> {
    pub closed_form: T,
    pub numeric_limit: T,
    pub relative_gap: T,
}

/// Compare the even-split improvement branch against the numeric limit.
/// Requires `β_B = β_R` (within 1e-12).
pub fn relay_equal_split_improvement_report<T: Real>(
    cfg: &SystemConfig<T>,
) -> Result<EqualSplitImprovementReport<T>> {
    let share = cfg.timeshare();
    if (share.backhaul() - share.access()).abs() > T::of(1e-12) {
        return Err(Error::Domain(format!(
            "equal-split report needs beta_b = beta_r, got beta_b = {}",
            share.backhaul()
        )));
    }
    let closed_form = measures_relay_closed(cfg)?.ebno_improvement;
    let relay = RelayCapacity::new(cfg)?;
    let numeric_limit = measures_numeric(|snr| relay.spectral_efficiency(snr))?.ebno_improvement;
    Ok(EqualSplitImprovementReport {
        closed_form,
        numeric_limit,
        relative_gap: ((closed_form - numeric_limit) / numeric_limit).abs(),
    })
}

/// Which rate function a curve was sampled from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveMode {
    Direct,
    Relay,
    Awgn,
}

impl CurveMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveMode::Direct => "direct",
            CurveMode::Relay => "relay",
            CurveMode::Awgn => "awgn",
        }
    }
}

/// One sampled operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint<T> {
    /// Reference SNR (linear).
    pub snr: T,
    /// Spectral efficiency in nats/s/Hz.
    pub se_nats: T,
    /// Spectral efficiency in b/s/Hz.
    pub se_bits: T,
    /// Eb/N0 in dB.
    pub ebno_db: T,
}

impl<T: Real> CurvePoint<T> {
    /// Build a point from a positive rate; fixes the bit conversion and the
    /// Eb/N0 convention in one place.
    pub(crate) fn from_rate(snr: T, se_nats: T) -> Self {
        let se_bits = se_nats / T::LN_2;
        CurvePoint {
            snr,
            se_nats,
            se_bits,
            ebno_db: db10(snr * T::LN_2 / se_nats),
        }
    }

    /// Eb/N0 in linear units.
    pub fn ebno_linear(&self) -> T {
        self.snr * T::LN_2 / self.se_nats
    }

    /// Reference SNR in dB.
    pub fn snr_db(&self) -> T {
        db10(self.snr)
    }
}

/// Sampled (SNR, spectral efficiency, Eb/N0) tradeoff curve.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffCurve<T> {
    pub mode: CurveMode,
    pub points: Vec<CurvePoint<T>>,
}

/// A log-spaced SNR grid described in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrGridDb<T> {
    pub min_db: T,
    pub max_db: T,
    pub points: usize,
}

impl<T: Real> SnrGridDb<T> {
    pub fn new(min_db: T, max_db: T, points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::Config("snr grid needs at least one point".into()));
        }
        if points >= 2 && !(min_db < max_db) {
            return Err(Error::Config(format!(
                "snr grid needs min_db < max_db, got [{min_db}, {max_db}]"
            )));
        }
        if !min_db.is_finite() || !max_db.is_finite() {
            return Err(Error::Config("snr grid bounds must be finite".into()));
        }
        Ok(Self {
            min_db,
            max_db,
            points,
        })
    }

    /// Linear SNR values, ascending.
    pub fn snrs(&self) -> Vec<T> {
        let ten = T::of(10.0);
        (0..self.points)
            .map(|i| {
                let db = if self.points == 1 {
                    self.min_db
                } else {
                    self.min_db
                        + (self.max_db - self.min_db) * T::of_count(i)
                            / T::of_count(self.points - 1)
                };
                ten.powf(db / ten)
            })
            .collect()
    }
}

/// Sample a rate function over a dB grid. Points with zero rate are dropped;
/// an all-zero curve is an error.
pub fn curve<T, F>(rate: F, mode: CurveMode, grid: &SnrGridDb<T>) -> Result<TradeoffCurve<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    let points: Vec<CurvePoint<T>> = grid
        .snrs()
        .into_iter()
        .filter_map(|snr| {
            let se = rate(snr);
            (se > T::zero()).then(|| CurvePoint::from_rate(snr, se))
        })
        .collect();
    if points.is_empty() {
        return Err(Error::EmptyCurve);
    }
    Ok(TradeoffCurve { mode, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capacity::{awgn_reference, SystemConfig, TimeShare};
    use crate::evt::FadingModel;
    use approx::assert_relative_eq;

    fn rayleigh_cfg(users: usize, alpha_b: f64, alpha_r: f64, beta_b: f64) -> SystemConfig<f64> {
        SystemConfig::new(
            users,
            alpha_b,
            alpha_r,
            TimeShare::new(beta_b).unwrap(),
            FadingModel::rayleigh(),
            FadingModel::rayleigh(),
        )
        .unwrap()
    }

    fn rel_gap(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn awgn_numeric_measures() {
        let m = measures_numeric(|snr: f64| awgn_reference(snr)).unwrap();
        assert!(rel_gap(m.ebno_min, 2f64.ln()) < 1e-3);
        assert!(rel_gap(m.wideband_slope, 2.0) < 1e-3);
        assert!(rel_gap(m.ebno_improvement, 1.0) < 1e-3);
        assert!(rel_gap(m.high_snr_slope, 1.0) < 1e-3);
        assert_relative_eq!(m.ebno_min_db(), -1.59, epsilon = 0.01);
    }

    #[test]
    fn direct_closed_reference_values() {
        let cfg = rayleigh_cfg(20, 0.01, 1.0, 0.5);
        let m = measures_direct_closed(&cfg).unwrap();
        // ln2 / (0.01·(γ + ln 20)), recomputed independently.
        let slope = 0.01 * (f64::EULER_GAMMA + 20f64.ln());
        assert_relative_eq!(m.ebno_min, 2f64.ln() / slope, max_relative = 1e-14);
        assert_relative_eq!(m.ebno_min, 19.40, max_relative = 1e-3);
        assert_relative_eq!(m.ebno_min_db(), 12.88, epsilon = 5e-3);
        assert_relative_eq!(m.wideband_slope, 2.054, max_relative = 1e-3);
        assert_eq!(m.high_snr_slope, 1.0);
    }

    #[test]
    fn direct_closed_matches_numeric_limits() {
        for users in [5usize, 20, 100] {
            for alpha in [0.01, 1.0] {
                let cfg = rayleigh_cfg(users, alpha, 1.0, 0.5);
                let closed = measures_direct_closed(&cfg).unwrap();
                let direct = DirectCapacity::new(&cfg).unwrap();
                let numeric = measures_numeric(|s| direct.spectral_efficiency(s)).unwrap();
                assert!(
                    rel_gap(closed.ebno_min, numeric.ebno_min) < 5e-3,
                    "ebno_min K={users} alpha={alpha}"
                );
                assert!(
                    rel_gap(closed.wideband_slope, numeric.wideband_slope) < 5e-3,
                    "s0 K={users} alpha={alpha}: {} vs {}",
                    closed.wideband_slope,
                    numeric.wideband_slope
                );
                assert!(
                    rel_gap(closed.ebno_improvement, numeric.ebno_improvement) < 5e-3,
                    "ebno_imp K={users} alpha={alpha}: {} vs {}",
                    closed.ebno_improvement,
                    numeric.ebno_improvement
                );
                assert!(
                    rel_gap(closed.high_snr_slope, numeric.high_snr_slope) < 5e-3,
                    "s_inf K={users} alpha={alpha}"
                );
            }
        }
    }

    #[test]
    fn relay_closed_reference_values() {
        let cfg = rayleigh_cfg(20, 0.01, 1.0, 0.5);
        let m = measures_relay_closed(&cfg).unwrap();
        assert_relative_eq!(m.ebno_min, 1.386, max_relative = 1e-3);
        assert_relative_eq!(m.ebno_min_db(), 1.42, epsilon = 5e-3);
        assert_eq!(m.high_snr_slope, 0.5);

        let third = rayleigh_cfg(20, 0.01, 1.0, 1.0 / 3.0);
        assert_eq!(
            measures_relay_closed(&third).unwrap().high_snr_slope,
            1.0 / 3.0
        );
        // Backhaul-limited at high SNR: no improvement over AWGN.
        assert_eq!(measures_relay_closed(&third).unwrap().ebno_improvement, 1.0);

        let two_thirds = rayleigh_cfg(20, 0.01, 1.0, 2.0 / 3.0);
        let m = measures_relay_closed(&two_thirds).unwrap();
        // Access-limited: the multiuser-diversity improvement factor.
        let b = 20f64.ln();
        assert_relative_eq!(
            m.ebno_improvement,
            (-f64::EULER_GAMMA / b).exp() / b,
            max_relative = 1e-14
        );
    }

    #[test]
    fn relay_closed_matches_numeric_limits() {
        for beta_b in [1.0 / 3.0, 0.5, 2.0 / 3.0] {
            let cfg = rayleigh_cfg(20, 0.01, 1.0, beta_b);
            let closed = measures_relay_closed(&cfg).unwrap();
            let relay = RelayCapacity::new(&cfg).unwrap();
            let numeric = measures_numeric(|s| relay.spectral_efficiency(s)).unwrap();
            assert!(
                rel_gap(closed.ebno_min, numeric.ebno_min) < 5e-3,
                "ebno_min beta_b={beta_b}: {} vs {}",
                closed.ebno_min,
                numeric.ebno_min
            );
            assert!(
                rel_gap(closed.wideband_slope, numeric.wideband_slope) < 5e-3,
                "s0 beta_b={beta_b}: {} vs {}",
                closed.wideband_slope,
                numeric.wideband_slope
            );
            assert!(
                rel_gap(closed.high_snr_slope, numeric.high_snr_slope) < 5e-3,
                "s_inf beta_b={beta_b}"
            );
            if (beta_b - 0.5).abs() > 1e-9 {
                assert!(
                    rel_gap(closed.ebno_improvement, numeric.ebno_improvement) < 2e-2,
                    "ebno_imp beta_b={beta_b}: {} vs {}",
                    closed.ebno_improvement,
                    numeric.ebno_improvement
                );
            }
        }
    }

    #[test]
    fn equal_split_report_produced() {
        let cfg = rayleigh_cfg(20, 0.01, 1.0, 0.5);
        let report = relay_equal_split_improvement_report(&cfg).unwrap();
        assert!(report.closed_form > 0.0 && report.numeric_limit > 0.0);
        assert!(report.relative_gap.is_finite());

        let uneven = rayleigh_cfg(20, 0.01, 1.0, 1.0 / 3.0);
        assert!(relay_equal_split_improvement_report(&uneven).is_err());
    }

    #[test]
    fn degenerate_rate_functions_are_reported() {
        // A flat rate has no positive slope anywhere.
        let err = measures_numeric(|_snr: f64| 1.0).unwrap_err();
        match err {
            Error::Degenerate(msg) => assert!(msg.contains("slope")),
            other => panic!("expected degenerate error, got {other:?}"),
        }
    }

    #[test]
    fn relay_survives_vanishing_access_ratio() {
        // As alpha_r → 0 the E1 correction eats almost the whole backhaul
        // slope; the measures stay finite (and enormous) rather than
        // degenerate, since C'(0) → beta_r·alpha·(a·γ + b) > 0.
        let cfg = rayleigh_cfg(20, 0.01, 1e-9, 0.5);
        let m = measures_relay_closed(&cfg).unwrap();
        let expected_slope = 0.5 * 1e-9 * (f64::EULER_GAMMA + 20f64.ln());
        assert_relative_eq!(m.ebno_min, 2f64.ln() / expected_slope, max_relative = 1e-6);
    }

    #[test]
    fn numeric_rejects_non_logarithmic_growth() {
        // sqrt grows too fast for the high-SNR slope to converge.
        let err = measures_numeric(|snr: f64| snr.sqrt()).unwrap_err();
        assert!(matches!(err, Error::LimitFailure { .. }));
        if let Error::LimitFailure { previous, last } = err {
            assert!(last > previous);
        }
    }

    #[test]
    fn ebno_min_scaling_identity() {
        // ebno_min·(γ + ln K) is constant in K for Rayleigh.
        let reference = {
            let cfg = rayleigh_cfg(2, 0.01, 1.0, 0.5);
            let m = measures_direct_closed(&cfg).unwrap();
            m.ebno_min * (f64::EULER_GAMMA + 2f64.ln())
        };
        for users in [4usize, 20, 100, 400, 1000, 20_000] {
            let cfg = rayleigh_cfg(users, 0.01, 1.0, 0.5);
            let m = measures_direct_closed(&cfg).unwrap();
            let product = m.ebno_min * (f64::EULER_GAMMA + (users as f64).ln());
            assert!(
                rel_gap(product, reference) < 1e-9,
                "K={users}: {product} vs {reference}"
            );
        }
    }

    #[test]
    fn curve_basics() {
        let grid = SnrGridDb::new(-10.0, 40.0, 50).unwrap();
        let curve = curve(|s: f64| awgn_reference(s), CurveMode::Awgn, &grid).unwrap();
        assert_eq!(curve.points.len(), 50);
        for pair in curve.points.windows(2) {
            assert!(pair[0].snr < pair[1].snr);
        }
        for p in &curve.points {
            assert!(p.se_nats > 0.0);
            assert_relative_eq!(p.se_bits, p.se_nats / 2f64.ln(), max_relative = 1e-12);
            // Eb/N0 never dips below the AWGN floor.
            assert!(p.ebno_linear() >= 2f64.ln() - 1e-12);
        }
    }

    #[test]
    fn curve_approaches_awgn_floor() {
        let grid = SnrGridDb::new(-60.0, 0.0, 30).unwrap();
        let curve = curve(|s: f64| awgn_reference(s), CurveMode::Awgn, &grid).unwrap();
        let min_db = curve
            .points
            .iter()
            .map(|p| p.ebno_db)
            .fold(f64::INFINITY, f64::min);
        assert_relative_eq!(min_db, db10(2f64.ln()), epsilon = 1e-3);
        assert_relative_eq!(db10(2f64.ln()), -1.59, epsilon = 0.01);
    }

    #[test]
    fn curve_single_point_and_empty() {
        let grid = SnrGridDb::new(0.0, 0.0, 1).unwrap();
        let one = curve(|s: f64| awgn_reference(s), CurveMode::Awgn, &grid).unwrap();
        assert_eq!(one.points.len(), 1);

        let err = curve(|_s: f64| 0.0, CurveMode::Awgn, &grid).unwrap_err();
        assert!(matches!(err, Error::EmptyCurve));

        assert!(SnrGridDb::<f64>::new(0.0, 0.0, 2).is_err());
        assert!(SnrGridDb::<f64>::new(0.0, 10.0, 0).is_err());
    }

    #[test]
    fn curve_respects_closed_form_floor() {
        let cfg = rayleigh_cfg(20, 0.01, 1.0, 0.5);
        let direct = DirectCapacity::new(&cfg).unwrap();
        let grid = SnrGridDb::new(-10.0, 40.0, 50).unwrap();
        let curve = curve(|s| direct.spectral_efficiency(s), CurveMode::Direct, &grid).unwrap();
        let floor = measures_direct_closed(&cfg).unwrap().ebno_min;
        for p in &curve.points {
            assert!(
                p.ebno_linear() >= floor * (1.0 - 1e-2),
                "snr {}: ebno {} below floor {floor}",
                p.snr,
                p.ebno_linear()
            );
        }
    }
}
