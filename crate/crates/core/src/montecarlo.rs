//! Seeded Monte Carlo estimation of the scheduled spectral efficiencies.
//!
//! Each realization draws `K` i.i.d. fading powers, applies the max-rate
//! scheduler and records the resulting rate; means and standard errors come
//! from a fixed number of independent sample chunks. Chunk `c` owns ChaCha
//! stream `c` of the per-point seed and chunk partials are reduced in chunk
//! order, so results are bit-identical for a given seed regardless of how
//! many worker threads rayon uses.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::capacity::SystemConfig;
use crate::error::{Error, Result};
use crate::evt::FadingModel;
use crate::scalar::Real;
use crate::tradeoff::{CurveMode, CurvePoint, SnrGridDb, TradeoffCurve};

/// Samples per ChaCha stream; fixed so that chunk boundaries do not depend
/// on the worker count.
const CHUNK: usize = 4096;

/// Mean and uncertainty of a simulated spectral efficiency (nats/s/Hz).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimEstimate<T> {
    /// Sample mean.
    pub mean: T,
    /// Sample standard deviation over √n.
    pub std_err: T,
    /// Number of realizations.
    pub n_samples: usize,
    /// Seed the estimate was produced from.
    pub seed: u64,
}

/// Empirical tradeoff curve with one estimate per retained grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCurve<T> {
    pub curve: TradeoffCurve<T>,
    /// Aligned with `curve.points`.
    pub estimates: Vec<SimEstimate<T>>,
}

/// Chunked, order-independent-parallel mean/variance accumulation.
fn estimate<T, F>(n: usize, seed: u64, per_sample: F) -> SimEstimate<T>
where
    T: Real,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
{
    let chunks = n.div_ceil(CHUNK);
    let partials: Vec<(T, T)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk as u64);
            let len = CHUNK.min(n - chunk * CHUNK);
            let mut sum = T::zero();
            let mut sum_sq = T::zero();
            for _ in 0..len {
                let x = per_sample(&mut rng);
                sum += x;
                sum_sq += x * x;
            }
            (sum, sum_sq)
        })
        .collect();
    // `collect` preserves chunk order; this fold is the only reduction.
    let (sum, sum_sq) = partials
        .into_iter()
        .fold((T::zero(), T::zero()), |(s, q), (ps, pq)| (s + ps, q + pq));
    let count = T::of_count(n);
    let mean = sum / count;
    let std_err = if n > 1 {
        let variance = ((sum_sq - sum * sum / count) / (count - T::one())).max(T::zero());
        (variance / count).sqrt()
    } else {
        T::zero()
    };
    SimEstimate {
        mean,
        std_err,
        n_samples: n,
        seed,
    }
}

/// Mean of `ln(1 + scaled_snr·max of users draws)`; `users = 1` degenerates
/// to the single-user link without scheduling.
pub(crate) fn simulate_best_of<T: Real>(
    users: usize,
    model: &FadingModel<T>,
    scaled_snr: T,
    n: usize,
    seed: u64,
) -> SimEstimate<T> {
    estimate(n, seed, |rng| {
        let mut best = T::zero();
        for _ in 0..users {
            best = best.max(model.sample(rng));
        }
        (scaled_snr * best).ln_1p()
    })
}

fn validate_sim_inputs<T: Real>(snr: T, n: usize) -> Result<()> {
    if !(snr >= T::zero()) || !snr.is_finite() {
        return Err(Error::Domain(format!("snr must be >= 0, got {snr}")));
    }
    if n == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    Ok(())
}

/// Simulate direct transmission: the scheduler serves the user with the
/// largest base-link power, the recorded rate is `ln(1 + snr·α_b·max)`.
pub fn simulate_direct<T: Real>(
    snr: T,
    cfg: &SystemConfig<T>,
    n: usize,
    seed: u64,
) -> Result<SimEstimate<T>> {
    validate_sim_inputs(snr, n)?;
    Ok(simulate_best_of(
        cfg.users(),
        cfg.fading_base(),
        snr * cfg.alpha_base(),
        n,
        seed,
    ))
}

/// Simulate two-hop relaying: the recorded rate is the minimum of the
/// backhaul-phase rate and the scheduled access-phase rate. Boundary time
/// shares are allowed here.
pub fn simulate_relay<T: Real>(
    snr: T,
    cfg: &SystemConfig<T>,
    n: usize,
    seed: u64,
) -> Result<SimEstimate<T>> {
    validate_sim_inputs(snr, n)?;
    let share = cfg.timeshare();
    let backhaul_rate = share.backhaul() * snr.ln_1p();
    let scaled = snr * cfg.alpha_relay();
    let users = cfg.users();
    let model = cfg.fading_relay();
    Ok(estimate(n, seed, |rng| {
        let mut best = T::zero();
        for _ in 0..users {
            best = best.max(model.sample(rng));
        }
        backhaul_rate.min(share.access() * (scaled * best).ln_1p())
    }))
}

/// Simulate a whole curve; point `i` derives its seed from `(seed, i)` by a
/// counter-based split, so any subset of points can be reproduced
/// independently.
type PointSimulator<T> = fn(T, &SystemConfig<T>, usize, u64) -> Result<SimEstimate<T>>;

pub fn empirical_curve<T: Real>(
    mode: CurveMode,
    cfg: &SystemConfig<T>,
    grid: &SnrGridDb<T>,
    n: usize,
    seed: u64,
) -> Result<EmpiricalCurve<T>> {
    let simulate: PointSimulator<T> = match mode {
        CurveMode::Direct => simulate_direct,
        CurveMode::Relay => simulate_relay,
        CurveMode::Awgn => {
            return Err(Error::Config(
                "the awgn reference has no empirical simulator; use mode direct or relay".into(),
            ))
        }
    };
    let mut points = Vec::new();
    let mut estimates = Vec::new();
    for (index, snr) in grid.snrs().into_iter().enumerate() {
        let est = simulate(snr, cfg, n, point_seed(seed, index))?;
        if est.mean > T::zero() {
            points.push(CurvePoint::from_rate(snr, est.mean));
            estimates.push(est);
        }
    }
    if points.is_empty() {
        return Err(Error::EmptyCurve);
    }
    Ok(EmpiricalCurve {
        curve: TradeoffCurve { mode, points },
        estimates,
    })
}

/// Deterministic per-point seed: a splitmix64 hash of the master seed and
/// the point index.
pub(crate) fn point_seed(master: u64, index: usize) -> u64 {
    splitmix64(master.wrapping_add((index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
