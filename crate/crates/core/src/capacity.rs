//! Spectral-efficiency functions for the two transmission protocols.
//!
//! Direct mode serves the best of `K` users over the base-to-user link; its
//! average scheduled rate has the extreme-value closed form
//! `c·γ + d` where, at reference SNR `s` and SNR ratio `α`,
//!
//! ```text
//! c(s) = s·α·a / (1 + s·α·b),      d(s) = ln(1 + s·α·b),
//! ```
//!
//! with `(a, b)` the Gumbel normalizing constants of the fading power.
//!
//! Relay mode splits each slot into a backhaul phase (fraction `β_B`, clean
//! link at SNR `s`) and an access phase (fraction `β_R`, best-of-`K` fading
//! link); the end-to-end rate is the minimum of the two phase rates and its
//! average admits the closed form `β_B·ln(1+s) - β_R·c·E1(z)` with
//! `z = exp((β_R·d - β_B·ln(1+s)) / (β_R·c))`.
//!
//! Both closed forms are asymptotic in `K`. The exact expectations they
//! approximate are available as slow-but-sure quadrature oracles,
//! [`quadrature_oracle_direct`] and [`quadrature_oracle_relay`].

use crate::error::{Error, Result};
use crate::evt::{gumbel_constants, FadingModel, GumbelConstants};
use crate::scalar::Real;
use crate::specfun::e1_of_exponent;

/// Half-duplex time-share pair `(β_B, β_R)` with `β_B + β_R = 1`.
///
/// Boundary values are representable because the Monte Carlo path accepts
/// them; the closed-form relay expressions require an interior split and
/// reject boundaries at construction of [`RelayCapacity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeShare<T> {
    backhaul: T,
    access: T,
}

impl<T: Real> TimeShare<T> {
    /// Build from the backhaul fraction; the access fraction is `1 - β_B`
    /// by construction, so the unit-sum constraint cannot be violated.
    pub fn new(backhaul: T) -> Result<Self> {
        if !(backhaul >= T::zero() && backhaul <= T::one()) {
            return Err(Error::Config(format!(
                "backhaul time share must lie in [0, 1], got {backhaul}"
            )));
        }
        Ok(Self {
            backhaul,
            access: T::one() - backhaul,
        })
    }

    /// Even split.
    pub fn even() -> Self {
        let half = T::of(0.5);
        Self {
            backhaul: half,
            access: half,
        }
    }

    /// Backhaul fraction β_B.
    pub fn backhaul(&self) -> T {
        self.backhaul
    }

    /// Access fraction β_R.
    pub fn access(&self) -> T {
        self.access
    }

    /// True when both fractions are strictly inside (0, 1).
    pub fn is_interior(&self) -> bool {
        self.backhaul > T::zero() && self.backhaul < T::one()
    }
}

/// Full scenario description: user count, per-link SNR ratios, time share
/// and the fading laws of the two user-facing links.
#[derive(Debug, Clone)]
pub struct SystemConfig<T> {
    users: usize,
    alpha_base: T,
    alpha_relay: T,
    timeshare: TimeShare<T>,
    fading_base: FadingModel<T>,
    fading_relay: FadingModel<T>,
}

impl<T: Real> SystemConfig<T> {
    pub fn new(
        users: usize,
        alpha_base: T,
        alpha_relay: T,
        timeshare: TimeShare<T>,
        fading_base: FadingModel<T>,
        fading_relay: FadingModel<T>,
    ) -> Result<Self> {
        if users < 2 {
            return Err(Error::Config(format!(
                "scenario needs at least 2 users, got {users}"
            )));
        }
        for (name, alpha) in [("alpha_b", alpha_base), ("alpha_r", alpha_relay)] {
            if !(alpha > T::zero()) || !alpha.is_finite() {
                return Err(Error::Config(format!(
                    "{name} must be positive and finite, got {alpha}"
                )));
            }
        }
        Ok(Self {
            users,
            alpha_base,
            alpha_relay,
            timeshare,
            fading_base,
            fading_relay,
        })
    }

    pub fn users(&self) -> usize {
        self.users
    }

    /// Ratio of the base-to-user link average SNR to the reference SNR.
    pub fn alpha_base(&self) -> T {
        self.alpha_base
    }

    /// Ratio of the relay-to-user link average SNR to the reference SNR.
    pub fn alpha_relay(&self) -> T {
        self.alpha_relay
    }

    pub fn timeshare(&self) -> TimeShare<T> {
        self.timeshare
    }

    pub fn fading_base(&self) -> &FadingModel<T> {
        &self.fading_base
    }

    pub fn fading_relay(&self) -> &FadingModel<T> {
        &self.fading_relay
    }
}

/// SNR-dependent coefficients of the extreme-value rate expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvtCoefficients<T> {
    /// Sensitivity of the scheduled rate to fluctuations of the maximum
    /// power around its typical value (nats/s/Hz).
    pub scale: T,
    /// Rate at the typical maximum power (nats/s/Hz).
    pub offset: T,
}

/// Coefficients `c = s·α·a/(1 + s·α·b)` and `d = ln(1 + s·α·b)`.
pub fn evt_coeffs<T: Real>(
    snr: T,
    alpha: T,
    constants: &GumbelConstants<T>,
) -> Result<EvtCoefficients<T>> {
    if !(snr >= T::zero()) || !snr.is_finite() {
        return Err(Error::Domain(format!("snr must be >= 0, got {snr}")));
    }
    if !(alpha > T::zero()) {
        return Err(Error::Domain(format!("alpha must be > 0, got {alpha}")));
    }
    Ok(coeffs_unchecked(snr, alpha, constants))
}

fn coeffs_unchecked<T: Real>(snr: T, alpha: T, constants: &GumbelConstants<T>) -> EvtCoefficients<T> {
    let scaled = snr * alpha;
    EvtCoefficients {
        scale: scaled * constants.scale / (T::one() + scaled * constants.location),
        offset: (scaled * constants.location).ln_1p(),
    }
}

/// Prepared direct-mode spectral efficiency: validates the fading law and
/// caches the Gumbel constants once.
#[derive(Debug, Clone)]
pub struct DirectCapacity<T> {
    alpha: T,
    constants: GumbelConstants<T>,
}

impl<T: Real> DirectCapacity<T> {
    pub fn new(cfg: &SystemConfig<T>) -> Result<Self> {
        if !cfg.fading_base().gumbel_domain() {
            return Err(Error::UnsupportedDomain(format!(
                "direct-mode fading `{}` is outside the Gumbel domain",
                cfg.fading_base().name()
            )));
        }
        Ok(Self {
            alpha: cfg.alpha_base(),
            constants: gumbel_constants(cfg.fading_base(), cfg.users())?,
        })
    }

    pub fn constants(&self) -> &GumbelConstants<T> {
        &self.constants
    }

    /// Average scheduled rate in nats/s/Hz at reference SNR `snr ≥ 0`.
    pub fn spectral_efficiency(&self, snr: T) -> T {
        debug_assert!(snr >= T::zero());
        let coeffs = coeffs_unchecked(snr, self.alpha, &self.constants);
        coeffs.scale * T::EULER_GAMMA + coeffs.offset
    }
}

/// Closed-form direct-mode spectral efficiency (nats/s/Hz).
pub fn spectral_eff_direct<T: Real>(snr: T, cfg: &SystemConfig<T>) -> Result<T> {
    if !(snr >= T::zero()) || !snr.is_finite() {
        return Err(Error::Domain(format!("snr must be >= 0, got {snr}")));
    }
    Ok(DirectCapacity::new(cfg)?.spectral_efficiency(snr))
}

/// Arguments of the exponential-integral correction in the relay closed
/// form: at the requested SNR and in the zero-SNR limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelayTerms<T> {
    /// `z` at the requested SNR.
    pub e1_arg: T,
    /// Zero-SNR limit `ζ` of the same argument (SNR independent).
    pub e1_arg_limit: T,
}

/// Prepared relay-mode spectral efficiency.
#[derive(Debug, Clone)]
pub struct RelayCapacity<T> {
    alpha: T,
    share: TimeShare<T>,
    constants: GumbelConstants<T>,
}

impl<T: Real> RelayCapacity<T> {
    pub fn new(cfg: &SystemConfig<T>) -> Result<Self> {
        let share = cfg.timeshare();
        if !share.is_interior() {
            return Err(Error::Domain(format!(
                "relay closed form needs an interior time share, got beta_b = {}; \
                 use the simulator for boundary splits",
                share.backhaul()
            )));
        }
        if !cfg.fading_relay().gumbel_domain() {
            return Err(Error::UnsupportedDomain(format!(
                "relay-mode fading `{}` is outside the Gumbel domain",
                cfg.fading_relay().name()
            )));
        }
        Ok(Self {
            alpha: cfg.alpha_relay(),
            share,
            constants: gumbel_constants(cfg.fading_relay(), cfg.users())?,
        })
    }

    pub fn constants(&self) -> &GumbelConstants<T> {
        &self.constants
    }

    /// Exponent of `z` at SNR `snr > 0`; `E1(exp(...))` of this is the
    /// correction term.
    fn exponent(&self, snr: T, coeffs: &EvtCoefficients<T>) -> T {
        let backhaul_rate = snr.ln_1p();
        (self.share.access() * coeffs.offset - self.share.backhaul() * backhaul_rate)
            / (self.share.access() * coeffs.scale)
    }

    /// Zero-SNR limit of the exponent, `ln ζ`.
    pub(crate) fn limit_exponent(&self) -> T {
        let share = self.share;
        (share.access() * self.alpha * self.constants.location - share.backhaul())
            / (share.access() * self.alpha * self.constants.scale)
    }

    /// End-to-end average rate in nats/s/Hz at reference SNR `snr ≥ 0`; the
    /// value at zero is the continuity limit 0.
    pub fn spectral_efficiency(&self, snr: T) -> T {
        debug_assert!(snr >= T::zero());
        if snr <= T::zero() {
            return T::zero();
        }
        let coeffs = coeffs_unchecked(snr, self.alpha, &self.constants);
        let correction = coeffs.scale * e1_of_exponent(self.exponent(snr, &coeffs));
        self.share.backhaul() * snr.ln_1p() - self.share.access() * correction
    }

    pub fn terms(&self, snr: T) -> Result<RelayTerms<T>> {
        if !(snr > T::zero()) {
            return Err(Error::Domain(format!(
                "relay terms are defined for snr > 0, got {snr}"
            )));
        }
        let coeffs = coeffs_unchecked(snr, self.alpha, &self.constants);
        Ok(RelayTerms {
            e1_arg: self.exponent(snr, &coeffs).exp(),
            e1_arg_limit: self.limit_exponent().exp(),
        })
    }
}

/// Closed-form two-hop relay spectral efficiency (nats/s/Hz).
pub fn spectral_eff_relay<T: Real>(snr: T, cfg: &SystemConfig<T>) -> Result<T> {
    if !(snr >= T::zero()) || !snr.is_finite() {
        return Err(Error::Domain(format!("snr must be >= 0, got {snr}")));
    }
    Ok(RelayCapacity::new(cfg)?.spectral_efficiency(snr))
}

/// `z` and `ζ` diagnostics for the relay correction term.
pub fn relay_terms<T: Real>(snr: T, cfg: &SystemConfig<T>) -> Result<RelayTerms<T>> {
    RelayCapacity::new(cfg)?.terms(snr)
}

/// Unfaded single-user AWGN reference, `ln(1 + snr)` nats/s/Hz.
pub fn awgn_reference<T: Real>(snr: T) -> T {
    debug_assert!(snr >= T::zero());
    snr.ln_1p()
}

/// Exact direct-mode expectation `E[ln(1 + s·α·max_k X_k)]` by quadrature
/// over the order-statistics tail: `∫₀^∞ s·α/(1 + s·α·x)·(1 - F(x)^K) dx`.
pub fn quadrature_oracle_direct<T: Real>(snr: T, cfg: &SystemConfig<T>) -> Result<T> {
    if !(snr >= T::zero()) || !snr.is_finite() {
        return Err(Error::Domain(format!("snr must be >= 0, got {snr}")));
    }
    if snr == T::zero() {
        return Ok(T::zero());
    }
    let users = cfg.users() as i32;
    let scaled = snr * cfg.alpha_base();
    let model = cfg.fading_base().clone();
    // Beyond this point the maximum exceeds x with probability < K·1e-18.
    let tail = T::of(1e-18) / T::of_count(cfg.users());
    let upper = model.upper_quantile(tail)?;
    let integrand = move |x: T| {
        let tail_prob = T::one() - model.cdf(x).powi(users);
        scaled / (T::one() + scaled * x) * tail_prob
    };
    quad::integrate(&integrand, T::zero(), upper, oracle_tolerance::<T>())
}

/// Exact relay-mode expectation `E[min(β_B·ln(1+s), β_R·ln(1+s·α·max_k X_k))]`
/// by the layer-cake integral `∫₀^A P(access rate > t) dt`, `A` the backhaul
/// rate.
pub fn quadrature_oracle_relay<T: Real>(snr: T, cfg: &SystemConfig<T>) -> Result<T> {
    if !(snr >= T::zero()) || !snr.is_finite() {
        return Err(Error::Domain(format!("snr must be >= 0, got {snr}")));
    }
    let share = cfg.timeshare();
    let cap = share.backhaul() * snr.ln_1p();
    if snr == T::zero() || cap == T::zero() || share.access() == T::zero() {
        return Ok(T::zero());
    }
    let users = cfg.users() as i32;
    let scaled = snr * cfg.alpha_relay();
    let access = share.access();
    let model = cfg.fading_relay().clone();
    let integrand = move |t: T| {
        let power_needed = (t / access).exp_m1() / scaled;
        T::one() - model.cdf(power_needed).powi(users)
    };
    quad::integrate(&integrand, T::zero(), cap, oracle_tolerance::<T>())
}

/// Relative tolerance of the quadrature oracles: 1e-8, loosened only when the
/// scalar type cannot represent that (f32).
fn oracle_tolerance<T: Real>() -> T {
    T::of(1e-8).max(T::epsilon() * T::of(100.0))
}

/// Adaptive Gauss-Kronrod (G7, K15) integration on a finite interval.
mod quad {
    use crate::error::{Error, Result};
    use crate::scalar::Real;

    const XGK: [f64; 8] = [
        0.991_455_371_120_813,
        0.949_107_912_342_759,
        0.864_864_423_359_769,
        0.741_531_185_599_394,
        0.586_087_235_467_691,
        0.405_845_151_377_397,
        0.207_784_955_007_898,
        0.0,
    ];
    const WGK: [f64; 8] = [
        0.022_935_322_010_529,
        0.063_092_092_629_979,
        0.104_790_010_322_250,
        0.140_653_259_715_525,
        0.169_004_726_639_267,
        0.190_350_578_064_785,
        0.204_432_940_075_298,
        0.209_482_141_084_728,
    ];
    const WG: [f64; 4] = [
        0.129_484_966_168_870,
        0.279_705_391_489_277,
        0.381_830_050_505_119,
        0.417_959_183_673_469,
    ];

    /// 15-point Kronrod estimate and the |K15 - G7| error indicator.
    fn kronrod15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
        let half = (b - a) * T::of(0.5);
        let center = (a + b) * T::of(0.5);
        let fc = f(center);
        let mut kronrod = fc * T::of(WGK[7]);
        let mut gauss = fc * T::of(WG[3]);
        for (i, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
            let dx = half * T::of(x);
            let pair = f(center - dx) + f(center + dx);
            kronrod += pair * T::of(w);
            if i % 2 == 1 {
                gauss += pair * T::of(WG[i / 2]);
            }
        }
        ((kronrod * half), ((kronrod - gauss) * half).abs())
    }

    struct Segment<T> {
        a: T,
        b: T,
        value: T,
        error: T,
    }

    /// Integrate `f` over `[a, b]` to the requested relative tolerance by
    /// bisecting the segment with the largest error indicator.
    pub(crate) fn integrate<T: Real, F: Fn(T) -> T>(
        f: &F,
        a: T,
        b: T,
        rel_tol: T,
    ) -> Result<T> {
        if !(b >= a) {
            return Err(Error::Domain(format!(
                "integration bounds must satisfy a <= b, got [{a}, {b}]"
            )));
        }
        if a == b {
            return Ok(T::zero());
        }
        let (value, error) = kronrod15(f, a, b);
        let mut segments = vec![Segment {
            a,
            b,
            value,
            error,
        }];
        for _ in 0..2000 {
            let total: T = segments
                .iter()
                .fold(T::zero(), |acc, s| acc + s.value);
            let total_error: T = segments
                .iter()
                .fold(T::zero(), |acc, s| acc + s.error);
            if !total.is_finite() {
                return Err(Error::Numeric(
                    "quadrature produced a non-finite estimate".into(),
                ));
            }
            if total_error <= rel_tol * total.abs() + T::min_positive_value() {
                return Ok(total);
            }
            let worst = segments
                .iter()
                .enumerate()
                .max_by(|(_, s), (_, t)| {
                    s.error.partial_cmp(&t.error).expect("finite errors")
                })
                .map(|(i, _)| i)
                .expect("at least one segment");
            let Segment { a, b, .. } = segments.swap_remove(worst);
            let mid = (a + b) * T::of(0.5);
            if mid <= a || mid >= b {
                // Interval no longer splittable at this precision; accept.
                let (value, error) = kronrod15(f, a, b);
                segments.push(Segment { a, b, value, error });
                let total = segments
                    .iter()
                    .fold(T::zero(), |acc, s| acc + s.value);
                return Ok(total);
            }
            for (lo, hi) in [(a, mid), (mid, b)] {
                let (value, error) = kronrod15(f, lo, hi);
                segments.push(Segment {
                    a: lo,
                    b: hi,
                    value,
                    error,
                });
            }
        }
        let total: T = segments.iter().fold(T::zero(), |acc, s| acc + s.value);
        let total_error: T = segments.iter().fold(T::zero(), |acc, s| acc + s.error);
        Err(Error::Numeric(format!(
            "quadrature did not converge: estimate {total}, error {total_error}, {} segments",
            segments.len()
        )))
    }

    #[cfg(test)]
    mod tests {
        use super::*;
        use approx::assert_relative_eq;

        #[test]
        fn integrates_polynomial_exactly() {
            let value = integrate(&|x: f64| x * x, 0.0, 1.0, 1e-12).unwrap();
            assert_relative_eq!(value, 1.0 / 3.0, max_relative = 1e-13);
        }

        #[test]
        fn integrates_exponential_tail() {
            let value = integrate(&|x: f64| (-x).exp(), 0.0, 60.0, 1e-10).unwrap();
            assert_relative_eq!(value, 1.0, max_relative = 1e-10);
        }

        #[test]
        fn integrates_sharp_transition() {
            // CDF^K style integrand with a sharp knee.
            let value =
                integrate(&|x: f64| 1.0 - (1.0 - (-x).exp()).powi(2000), 0.0, 50.0, 1e-10)
                    .unwrap();
            // E[max of 2000 exponentials] = H_2000.
            let harmonic: f64 = (1..=2000).map(|i| 1.0 / i as f64).sum();
            assert_relative_eq!(value, harmonic, max_relative = 1e-9);
        }

        #[test]
        fn rejects_reversed_bounds() {
            assert!(integrate(&|x: f64| x, 1.0, 0.0, 1e-8).is_err());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

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

    #[test]
    fn config_validation() {
        assert!(matches!(
            SystemConfig::new(
                1,
                0.01,
                1.0,
                TimeShare::even(),
                FadingModel::<f64>::rayleigh(),
                FadingModel::rayleigh()
            ),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            SystemConfig::new(
                20,
                0.0,
                1.0,
                TimeShare::even(),
                FadingModel::<f64>::rayleigh(),
                FadingModel::rayleigh()
            ),
            Err(Error::Config(_))
        ));
        assert!(TimeShare::new(1.5_f64).is_err());
        assert!(TimeShare::new(-0.1_f64).is_err());
        let boundary = TimeShare::new(0.0_f64).unwrap();
        assert!(!boundary.is_interior());
        assert_eq!(boundary.access(), 1.0);
    }

    #[test]
    fn evt_coeffs_reference_point() {
        // s = 100, α = 0.01, (a, b) = (1, ln 20): c = 1/(1 + ln 20),
        // d = ln(1 + ln 20), recomputed here independently.
        let constants = GumbelConstants {
            scale: 1.0,
            location: 20f64.ln(),
            users: 20,
        };
        let coeffs = evt_coeffs(100.0, 0.01, &constants).unwrap();
        let expected_scale = 1.0 / (1.0 + 20f64.ln());
        let expected_offset = (1.0 + 20f64.ln()).ln();
        assert_relative_eq!(coeffs.scale, expected_scale, max_relative = 1e-14);
        assert_relative_eq!(coeffs.offset, expected_offset, max_relative = 1e-14);
        assert_relative_eq!(coeffs.scale, 0.250267, max_relative = 1e-6);
        assert_relative_eq!(coeffs.offset, 1.385228, max_relative = 1e-6);
    }

    #[test]
    fn evt_coeffs_edges() {
        let constants = GumbelConstants {
            scale: 1.0,
            location: 20f64.ln(),
            users: 20,
        };
        let at_zero = evt_coeffs(0.0, 0.01, &constants).unwrap();
        assert_eq!(at_zero.scale, 0.0);
        assert_eq!(at_zero.offset, 0.0);

        // Degenerate location 0: linear scale, zero offset.
        let flat = GumbelConstants {
            scale: 2.0,
            location: 0.0,
            users: 5,
        };
        let coeffs = evt_coeffs(3.0, 0.5, &flat).unwrap();
        assert_relative_eq!(coeffs.scale, 3.0 * 0.5 * 2.0, max_relative = 1e-15);
        assert_eq!(coeffs.offset, 0.0);

        assert!(evt_coeffs(-1.0, 0.01, &constants).is_err());
    }

    #[test]
    fn direct_spectral_efficiency_values() {
        let cfg = rayleigh_cfg(20, 0.01, 1.0, 0.5);
        assert_eq!(spectral_eff_direct(0.0, &cfg).unwrap(), 0.0);

        let kappa = f64::EULER_GAMMA;
        let b = 20f64.ln();
        let expected = kappa / (1.0 + b) + (1.0 + b).ln();
        let value = spectral_eff_direct(100.0, &cfg).unwrap();
        assert_relative_eq!(value, expected, max_relative = 1e-14);
        assert_relative_eq!(value, 1.5297, max_relative = 1e-4);
    }

    #[test]
    fn direct_close_to_quadrature_oracle() {
        let cfg = rayleigh_cfg(20, 0.01, 1.0, 0.5);
        let closed = spectral_eff_direct(100.0, &cfg).unwrap();
        let oracle = quadrature_oracle_direct(100.0, &cfg).unwrap();
        assert!(
            ((closed - oracle) / oracle).abs() < 0.03,
            "closed {closed} vs oracle {oracle}"
        );
    }

    #[test]
    fn closed_form_sharpens_with_more_users() {
        // Relay uses the access-limited split; for backhaul-limited splits
        // both routes collapse onto beta_b·ln(1+snr) and the gap hits
        // machine noise instead of the finite-K error.
        for (mode, snr, beta_b) in [("direct", 10.0, 0.5), ("relay", 10.0, 2.0 / 3.0)] {
            let mut previous_gap = f64::INFINITY;
            for users in [20usize, 200, 2000] {
                let cfg = rayleigh_cfg(users, 0.01, 1.0, beta_b);
                let (closed, oracle) = if mode == "direct" {
                    (
                        spectral_eff_direct(snr, &cfg).unwrap(),
                        quadrature_oracle_direct(snr, &cfg).unwrap(),
                    )
                } else {
                    (
                        spectral_eff_relay(snr, &cfg).unwrap(),
                        quadrature_oracle_relay(snr, &cfg).unwrap(),
                    )
                };
                let gap = ((closed - oracle) / oracle).abs();
                assert!(
                    gap < previous_gap,
                    "{mode}: gap {gap} at K={users} did not shrink (was {previous_gap})"
                );
                previous_gap = gap;
            }
        }
    }

    #[test]
    fn relay_spectral_efficiency_values() {
        let cfg = rayleigh_cfg(20, 0.01, 1.0, 0.5);
        assert_eq!(spectral_eff_relay(0.0, &cfg).unwrap(), 0.0);

        // Backhaul-limited point: correction is ~1e-9.
        let value = spectral_eff_relay(1.0, &cfg).unwrap();
        let backhaul = 0.5 * 2f64.ln();
        assert!(value < backhaul);
        assert!((value - backhaul).abs() < 2e-9, "value {value}");

        let terms = relay_terms(1.0, &cfg).unwrap();
        assert_relative_eq!(terms.e1_arg, 15.9, max_relative = 1e-2);
        assert!(terms.e1_arg > 0.0 && terms.e1_arg_limit > 0.0);
    }

    #[test]
    fn relay_term_limit_is_snr_independent() {
        let cfg = rayleigh_cfg(20, 0.01, 1.0, 1.0 / 3.0);
        let a = relay_terms(0.5, &cfg).unwrap();
        let b = relay_terms(50.0, &cfg).unwrap();
        assert_eq!(a.e1_arg_limit, b.e1_arg_limit);
    }

    #[test]
    fn relay_rejects_boundary_time_share() {
        for beta in [0.0, 1.0] {
            let cfg = rayleigh_cfg(20, 0.01, 1.0, beta);
            assert!(matches!(
                spectral_eff_relay(1.0, &cfg),
                Err(Error::Domain(_))
            ));
        }
    }

    #[test]
    fn relay_bounded_by_backhaul() {
        let cfg = rayleigh_cfg(20, 0.01, 1.0, 1.0 / 3.0);
        for i in 0..60 {
            let snr = 10f64.powf(-2.0 + 5.0 * i as f64 / 59.0);
            let value = spectral_eff_relay(snr, &cfg).unwrap();
            let cap = cfg.timeshare().backhaul() * snr.ln_1p();
            assert!(value <= cap + 1e-15, "snr {snr}: {value} > {cap}");
            assert!(value >= 0.0);
        }
    }

    #[test]
    fn awgn_reference_values() {
        assert_eq!(awgn_reference(0.0_f64), 0.0);
        assert_relative_eq!(awgn_reference(1.0_f64), 2f64.ln(), max_relative = 1e-15);
        assert_relative_eq!(
            awgn_reference(std::f64::consts::E - 1.0),
            1.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn oracles_vanish_at_zero_snr() {
        let cfg = rayleigh_cfg(20, 0.01, 1.0, 0.5);
        assert_eq!(quadrature_oracle_direct(0.0, &cfg).unwrap(), 0.0);
        assert_eq!(quadrature_oracle_relay(0.0, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn relay_oracle_bounded_by_backhaul_cap() {
        let cfg = rayleigh_cfg(20, 0.01, 1.0, 0.05);
        let snr = 4.0_f64;
        let cap = cfg.timeshare().backhaul() * snr.ln_1p();
        let value = quadrature_oracle_relay(snr, &cfg).unwrap();
        assert!(value <= cap && value > 0.0, "{value} vs cap {cap}");
    }

    #[test]
    fn relay_oracle_nakagami_runs() {
        let cfg = SystemConfig::new(
            10,
            0.01,
            1.0,
            TimeShare::even(),
            FadingModel::nakagami(2.0_f64).unwrap(),
            FadingModel::nakagami(2.0_f64).unwrap(),
        )
        .unwrap();
        let v = quadrature_oracle_relay(2.0, &cfg).unwrap();
        assert!(v > 0.0 && v < 0.5 * 3f64.ln());
    }

    proptest! {
        #[test]
        fn direct_nondecreasing_in_snr(lo in 0.0f64..50.0, step in 0.0f64..50.0) {
            let cfg = rayleigh_cfg(20, 0.01, 1.0, 0.5);
            let direct = DirectCapacity::new(&cfg).unwrap();
            let a = direct.spectral_efficiency(lo);
            let b = direct.spectral_efficiency(lo + step);
            prop_assert!(b >= a - 1e-12);
        }

        #[test]
        fn relay_nondecreasing_in_snr(lo in 0.0f64..50.0, step in 0.0f64..50.0) {
            let cfg = rayleigh_cfg(20, 1.0, 1.0, 1.0 / 3.0);
            let relay = RelayCapacity::new(&cfg).unwrap();
            let a = relay.spectral_efficiency(lo);
            let b = relay.spectral_efficiency(lo + step);
            prop_assert!(b >= a - 1e-12);
        }

        #[test]
        fn direct_nondecreasing_in_users(users in 2usize..200, extra in 1usize..200) {
            let small = rayleigh_cfg(users, 0.01, 1.0, 0.5);
            let large = rayleigh_cfg(users + extra, 0.01, 1.0, 0.5);
            let snr = 10.0;
            let a = spectral_eff_direct(snr, &small).unwrap();
            let b = spectral_eff_direct(snr, &large).unwrap();
            prop_assert!(b >= a);
        }
    }
}
