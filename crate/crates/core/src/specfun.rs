//! Special functions and numeric-limit primitives.
//!
//! Two things live here: the exponential integral `E1` that appears in the
//! two-hop relay closed forms, and a finite-difference differentiator with
//! Richardson extrapolation used to evaluate the low- and high-SNR limit
//! expressions numerically.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Order of the derivative requested from [`derivative`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeOrder {
    First,
    Second,
}

/// A numerically estimated limit together with an error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEstimate<T> {
    /// Extrapolated value.
    pub value: T,
    /// Bound on the extrapolation residual (nonnegative, finite).
    pub est_error: T,
    /// Number of function evaluations spent.
    pub evaluations: u32,
}

/// Exponential integral `E1(x) = ∫ₓ^∞ e^(-t)/t dt` for `x > 0`.
///
/// Some texts write this integral `Ei`; here the name follows the common
/// `E1` convention for the integral from `x` to infinity.
///
/// Power series for `x ≤ 1`, continued fraction for `x > 1`. Relative error
/// is a few ulp at `f64` over `[1e-8, 700]`; once `e^(-x)` underflows the
/// result is exactly zero.
pub fn exp_integral_e1<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(Error::Domain(format!(
            "exp_integral_e1 requires x > 0, got {x}"
        )));
    }
    let one = T::one();
    if x <= one {
        // E1(x) = -γ - ln x + Σ_{k≥1} (-1)^{k+1} x^k / (k·k!)
        let mut sum = T::zero();
        let mut power_over_factorial = one; // x^k / k!, starts at k = 0
        for k in 1..200 {
            let kf = T::of_count(k);
            power_over_factorial = power_over_factorial * x / kf;
            let term = power_over_factorial / kf;
            sum = if k % 2 == 1 { sum + term } else { sum - term };
            if term < sum.abs() * T::epsilon() {
                break;
            }
        }
        Ok(-T::EULER_GAMMA - x.ln() + sum)
    } else {
        // e^(-x) underflows: the value is below the representable range.
        if x > T::max_value().ln() {
            return Ok(T::zero());
        }
        // Modified Lentz on E1(x) = e^(-x) / (x + 1 - 1²/(x + 3 - 2²/(x + 5 - ...)))
        let tiny = T::min_positive_value() / T::epsilon();
        let mut b = x + one;
        let mut c = one / tiny;
        let mut d = one / b;
        let mut h = d;
        for i in 1..400 {
            let a = -T::of_count(i * i);
            b += T::of(2.0);
            d = a * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + a / c;
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
        Ok(h * (-x).exp())
    }
}

/// `E1(e^t)` with guards for exponents outside the representable range of
/// `exp`. For `t → -∞` the series limit `E1(z) ≈ -γ - ln z = -γ - t` is
/// used; for `t` past the overflow threshold the tail is zero.
pub(crate) fn e1_of_exponent<T: Real>(t: T) -> T {
    let ln_max = T::max_value().ln();
    if t < -ln_max {
        -T::EULER_GAMMA - t
    } else if t > ln_max {
        T::zero()
    } else {
        exp_integral_e1(t.exp()).expect("exp(t) is positive")
    }
}

/// First or second derivative of `f` at `x0 ≥ 0` by finite differences with
/// two levels of Richardson extrapolation.
///
/// Central stencils are used where the whole stencil stays at nonnegative
/// abscissae, one-sided forward stencils otherwise (negative SNR is
/// meaningless for every function differentiated here). The step is relative:
/// `h = max(x0, 1e-3) · δ` with `δ ≈ ε^(1/3)` for the first and `ε^(1/4)`
/// for the second derivative.
pub fn derivative<T, F>(f: F, x0: T, order: DerivativeOrder) -> Result<LimitEstimate<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    if !(x0 >= T::zero()) || !x0.is_finite() {
        return Err(Error::Domain(format!(
            "derivative requires a finite x0 >= 0, got {x0}"
        )));
    }

    let delta = match order {
        DerivativeOrder::First => T::epsilon().powf(T::of(1.0 / 3.0)),
        DerivativeOrder::Second => T::epsilon().powf(T::of(0.25)),
    };
    let base_step = x0.max(T::of(1e-3)) * delta;

    let mut evaluations = 0u32;
    let mut eval = |x: T| -> Result<T> {
        evaluations += 1;
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite {
                context: "derivative stencil",
                abscissa: x.as_f64(),
            })
        }
    };

    // Largest abscissa offset needed on the low side decides the stencil.
    let one_sided = x0 - base_step < T::zero();
    let two = T::of(2.0);

    let mut approximations = [T::zero(); 3];
    for (level, slot) in approximations.iter_mut().enumerate() {
        // Snap the step to one exactly representable around x0.
        let mut h = base_step / T::of_count(1 << level);
        h = (x0 + h) - x0;
        *slot = match (order, one_sided) {
            (DerivativeOrder::First, false) => {
                (eval(x0 + h)? - eval(x0 - h)?) / (two * h)
            }
            (DerivativeOrder::First, true) => {
                // (-3f(x) + 4f(x+h) - f(x+2h)) / 2h, O(h²)
                let f0 = eval(x0)?;
                let f1 = eval(x0 + h)?;
                let f2 = eval(x0 + two * h)?;
                (-T::of(3.0) * f0 + T::of(4.0) * f1 - f2) / (two * h)
            }
            (DerivativeOrder::Second, false) => {
                (eval(x0 + h)? - two * eval(x0)? + eval(x0 - h)?) / (h * h)
            }
            (DerivativeOrder::Second, true) => {
                // (2f(x) - 5f(x+h) + 4f(x+2h) - f(x+3h)) / h², O(h²)
                let f0 = eval(x0)?;
                let f1 = eval(x0 + h)?;
                let f2 = eval(x0 + two * h)?;
                let f3 = eval(x0 + two * h + h)?;
                (two * f0 - T::of(5.0) * f1 + T::of(4.0) * f2 - f3) / (h * h)
            }
        };
    }

    // All stencils above have a leading h² error term. Halving the step
    // between levels, the first extrapolation cancels h²; the next term is
    // h⁴ for the symmetric stencils and h³ for the one-sided ones.
    let refine = |coarse: T, fine: T, order_pow: i32| -> T {
        let factor = T::of(f64::from(1 << order_pow));
        (factor * fine - coarse) / (factor - T::one())
    };
    let r1a = refine(approximations[0], approximations[1], 2);
    let r1b = refine(approximations[1], approximations[2], 2);
    let second_order = if one_sided { 3 } else { 4 };
    let value = refine(r1a, r1b, second_order);

    let est_error = (value - r1b).abs() + value.abs() * T::epsilon() * T::of(4.0);
    if !value.is_finite() || !est_error.is_finite() {
        return Err(Error::NonFinite {
            context: "derivative extrapolation",
            abscissa: x0.as_f64(),
        });
    }
    Ok(LimitEstimate {
        value,
        est_error,
        evaluations,
    })
}
