//! Fading-power distributions and their Gumbel normalizing constants.
//!
//! Channel power gains are unit-mean nonnegative random variables. The
//! scheduler always serves the instantaneously best of `K` users, so the
//! quantity that matters everywhere is the maximum of `K` i.i.d. draws. For
//! the supported families that maximum, normalized as
//! `(max - location) / scale`, converges in distribution to the standard
//! Gumbel law `exp(-exp(-x))`; the normalizing sequences are produced by
//! [`gumbel_constants`].
//!
//! Supported families (all normalized to unit mean power, all inside the
//! Gumbel domain of attraction):
//!
//! * `rayleigh` - power is unit exponential,
//! * `nakagami-m` - power is Gamma(m, rate m), `m ≥ 0.5`,
//! * `weibull` - power is Weibull with the given shape.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Normalizing sequences for the maximum of `users` i.i.d. power draws.
///
/// Built by the upper-quantile rule `location = Q(1 - 1/K)`,
/// `scale = Q(1 - 1/(K·e)) - location`, which for the unit exponential gives
/// exactly `(1, ln K)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GumbelConstants<T> {
    /// Scale sequence (positive).
    pub scale: T,
    /// Location sequence.
    pub location: T,
    /// Number of users the constants were built for.
    pub users: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Family<T> {
    Rayleigh,
    Nakagami { m: T },
    Weibull { shape: T, scale: T },
}

/// A unit-mean continuous fading-power law with CDF, quantile and sampler.
#[derive(Debug, Clone, PartialEq)]
pub struct FadingModel<T> {
    family: Family<T>,
}

impl<T: Real> FadingModel<T> {
    /// Rayleigh fading: the power gain is unit exponential.
    pub fn rayleigh() -> Self {
        Self {
            family: Family::Rayleigh,
        }
    }

    /// Nakagami-m fading: the power gain is Gamma(m, rate m).
    pub fn nakagami(m: T) -> Result<Self> {
        if !(m >= T::of(0.5)) || !m.is_finite() {
            return Err(Error::Config(format!(
                "nakagami-m requires shape m >= 0.5, got {m}"
            )));
        }
        Ok(Self {
            family: Family::Nakagami { m },
        })
    }

    /// Weibull-distributed power gain with the given shape, scaled to unit
    /// mean.
    pub fn weibull(shape: T) -> Result<Self> {
        if !(shape > T::zero()) || !shape.is_finite() {
            return Err(Error::Config(format!(
                "weibull requires shape > 0, got {shape}"
            )));
        }
        // mean = scale·Γ(1 + 1/shape), so unit mean pins the scale.
        let scale = (-ln_gamma(T::one() + shape.recip())).exp();
        Ok(Self {
            family: Family::Weibull { shape, scale },
        })
    }

    /// Family identifier.
    pub fn name(&self) -> &'static str {
        match self.family {
            Family::Rayleigh => "rayleigh",
            Family::Nakagami { .. } => "nakagami-m",
            Family::Weibull { .. } => "weibull",
        }
    }

    /// Shape parameters, in the order accepted by [`make_fading`].
    pub fn parameters(&self) -> Vec<T> {
        match self.family {
            Family::Rayleigh => vec![],
            Family::Nakagami { m } => vec![m],
            Family::Weibull { shape, .. } => vec![shape],
        }
    }

    /// Whether the law lies in the Gumbel (Type I) domain of attraction.
    /// True for every supported family.
    pub fn gumbel_domain(&self) -> bool {
        true
    }

    /// P(power ≤ x).
    pub fn cdf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        match self.family {
            Family::Rayleigh => -(-x).exp_m1(),
            Family::Nakagami { m } => reg_lower_gamma(m, m * x),
            Family::Weibull { shape, scale } => -(-(x / scale).powf(shape)).exp_m1(),
        }
    }

    /// P(power > x), accurate in the upper tail.
    pub fn survival(&self, x: T) -> T {
        if x <= T::zero() {
            return T::one();
        }
        match self.family {
            Family::Rayleigh => (-x).exp(),
            Family::Nakagami { m } => reg_upper_gamma(m, m * x),
            Family::Weibull { shape, scale } => (-(x / scale).powf(shape)).exp(),
        }
    }

    /// Inverse CDF on `p ∈ (0, 1)`.
    pub fn quantile(&self, p: T) -> Result<T> {
        if !(p > T::zero() && p < T::one()) {
            return Err(Error::Domain(format!(
                "quantile requires p in (0, 1), got {p}"
            )));
        }
        Ok(match self.family {
            Family::Rayleigh => -(-p).ln_1p(),
            Family::Weibull { shape, scale } => scale * (-(-p).ln_1p()).powf(shape.recip()),
            Family::Nakagami { .. } => self.invert_monotone(|x| self.cdf(x) - p),
        })
    }

    /// Upper-tail quantile: the `x` with `P(power > x) = tail`. Equivalent to
    /// `quantile(1 - tail)` but without the cancellation for small tails.
    pub fn upper_quantile(&self, tail: T) -> Result<T> {
        if !(tail > T::zero() && tail < T::one()) {
            return Err(Error::Domain(format!(
                "upper_quantile requires tail in (0, 1), got {tail}"
            )));
        }
        Ok(match self.family {
            Family::Rayleigh => -tail.ln(),
            Family::Weibull { shape, scale } => scale * (-tail.ln()).powf(shape.recip()),
            Family::Nakagami { .. } => self.invert_monotone(|x| tail - self.survival(x)),
        })
    }

    /// Draw one power gain by quantile transform of a uniform variate, so the
    /// sampler is consistent with the CDF by construction and consumes exactly
    /// one 64-bit word per draw.
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> T {
        let u: T = unit_open(rng);
        match self.family {
            // Inlined exponential quantile; this is the hot path.
            Family::Rayleigh => -(-u).ln_1p(),
            _ => self.quantile(u).expect("u is interior"),
        }
    }

    /// Bisection for a monotonically increasing `g` with `g(0⁺) < 0`.
    fn invert_monotone(&self, g: impl Fn(T) -> T) -> T {
        let mut lo = T::zero();
        let mut hi = T::one();
        let mut guard = 0;
        while g(hi) < T::zero() {
            hi *= T::of(2.0);
            guard += 1;
            if guard > 300 {
                break;
            }
        }
        for _ in 0..300 {
            let mid = (lo + hi) * T::of(0.5);
            if g(mid) < T::zero() {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= hi * T::epsilon() * T::of(2.0) {
                break;
            }
        }
        (lo + hi) * T::of(0.5)
    }
}

/// Construct a fading model by family name.
///
/// Accepted names are `rayleigh` (no parameters), `nakagami-m` (one shape
/// parameter) and `weibull` (one shape parameter). Anything else is rejected
/// rather than classified heuristically.
pub fn make_fading<T: Real>(name: &str, params: &[T]) -> Result<FadingModel<T>> {
    let expect_params = |n: usize| -> Result<()> {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "fading family `{name}` takes {n} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match name {
        "rayleigh" => {
            expect_params(0)?;
            Ok(FadingModel::rayleigh())
        }
        "nakagami-m" => {
            expect_params(1)?;
            FadingModel::nakagami(params[0])
        }
        "weibull" => {
            expect_params(1)?;
            FadingModel::weibull(params[0])
        }
        other => Err(Error::Config(format!(
            "unknown fading family `{other}` (supported: rayleigh, nakagami-m, weibull)"
        ))),
    }
}

/// Gumbel normalizing constants for the maximum of `users ≥ 2` draws.
pub fn gumbel_constants<T: Real>(
    model: &FadingModel<T>,
    users: usize,
) -> Result<GumbelConstants<T>> {
    if users < 2 {
        return Err(Error::Domain(format!(
            "gumbel constants need at least 2 users, got {users}"
        )));
    }
    if !model.gumbel_domain() {
        return Err(Error::UnsupportedDomain(format!(
            "fading family `{}` is outside the Gumbel domain",
            model.name()
        )));
    }
    let ln_k = T::of_count(users).ln();
    let (scale, location) = match model.family {
        // The quantile rule in closed form: location = ln K, scale = 1.
        Family::Rayleigh => (T::one(), ln_k),
        // Q̄(t) = s·(-ln t)^(1/c) at tails 1/K and 1/(K·e).
        Family::Weibull { shape, scale } => {
            let location = scale * ln_k.powf(shape.recip());
            let upper = scale * (ln_k + T::one()).powf(shape.recip());
            (upper - location, location)
        }
        Family::Nakagami { .. } => {
            let location = model.upper_quantile(T::of_count(users).recip())?;
            let kf = T::of_count(users);
            let upper = model.upper_quantile((kf * T::one().exp()).recip())?;
            (upper - location, location)
        }
    };
    if !(scale > T::zero()) {
        return Err(Error::Numeric(format!(
            "gumbel scale must be positive, got {scale}"
        )));
    }
    Ok(GumbelConstants {
        scale,
        location,
        users,
    })
}

/// Kolmogorov-Smirnov distance between `samples` simulated normalized maxima
/// of `users` draws and the standard Gumbel CDF. Deterministic for a given
/// seed.
pub fn max_convergence_diagnostic<T: Real>(
    model: &FadingModel<T>,
    users: usize,
    samples: usize,
    seed: u64,
) -> Result<T> {
    if users < 2 {
        return Err(Error::Domain(format!(
            "diagnostic needs at least 2 users, got {users}"
        )));
    }
    if samples < 100 {
        return Err(Error::Domain(format!(
            "diagnostic needs at least 100 samples, got {samples}"
        )));
    }
    let constants = gumbel_constants(model, users)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut normalized: Vec<T> = (0..samples)
        .map(|_| {
            let mut max = T::neg_infinity();
            for _ in 0..users {
                max = max.max(model.sample(&mut rng));
            }
            (max - constants.location) / constants.scale
        })
        .collect();
    normalized.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));

    let gumbel_cdf = |x: T| (-(-x).exp()).exp();
    let n = T::of_count(samples);
    let mut distance = T::zero();
    for (i, &x) in normalized.iter().enumerate() {
        let cdf = gumbel_cdf(x);
        let hi = T::of_count(i + 1) / n - cdf;
        let lo = cdf - T::of_count(i) / n;
        distance = distance.max(hi).max(lo);
    }
    Ok(distance)
}

/// Uniform variate in the open interval (0, 1), from one 64-bit word.
pub(crate) fn unit_open<T: Real, R: RngCore + ?Sized>(rng: &mut R) -> T {
    let bits = rng.next_u64() >> 11;
    T::of((bits as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0))
}

// --- regularized incomplete gamma (needed for the Nakagami-m family) -------

/// Natural log of the gamma function, Lanczos approximation (g = 7).
fn ln_gamma<T: Real>(x: T) -> T {
    const COEFFS: [f64; 8] = [
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    let half = T::of(0.5);
    if x < half {
        // Reflection for small arguments.
        let pi = T::of(std::f64::consts::PI);
        return (pi / (pi * x).sin()).ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let mut acc = T::of(0.999_999_999_999_809_93);
    for (i, &c) in COEFFS.iter().enumerate() {
        acc += T::of(c) / (x + T::of_count(i + 1));
    }
    let t = x + T::of(7.5);
    T::of(0.5 * (2.0 * std::f64::consts::PI).ln()) + (x + half) * t.ln() - t + acc.ln()
}

/// Regularized lower incomplete gamma P(a, x).
fn reg_lower_gamma<T: Real>(a: T, x: T) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    if x < a + T::one() {
        lower_gamma_series(a, x)
    } else {
        T::one() - upper_gamma_cf(a, x)
    }
}

/// Regularized upper incomplete gamma Q(a, x).
fn reg_upper_gamma<T: Real>(a: T, x: T) -> T {
    if x <= T::zero() {
        return T::one();
    }
    if x < a + T::one() {
        T::one() - lower_gamma_series(a, x)
    } else {
        upper_gamma_cf(a, x)
    }
}

fn gamma_prefactor<T: Real>(a: T, x: T) -> T {
    (a * x.ln() - x - ln_gamma(a)).exp()
}

fn lower_gamma_series<T: Real>(a: T, x: T) -> T {
    let mut term = a.recip();
    let mut sum = term;
    let mut denom = a;
    for _ in 0..500 {
        denom += T::one();
        term = term * x / denom;
        sum += term;
        if term < sum.abs() * T::epsilon() {
            break;
        }
    }
    sum * gamma_prefactor(a, x)
}

fn upper_gamma_cf<T: Real>(a: T, x: T) -> T {
    let tiny = T::min_positive_value() / T::epsilon();
    let one = T::one();
    let mut b = x + one - a;
    let mut c = one / tiny;
    let mut d = one / b;
    let mut h = d;
    for i in 1..500 {
        let fi = T::of_count(i);
        let an = -fi * (fi - a);
        b += T::of(2.0);
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = one / d;
        let delta = d * c;
        h *= delta;
        if (delta - one).abs() <= T::epsilon() {
            break;
        }
    }
    h * gamma_prefactor(a, x)
}
