//! The four subcommands. Every number printed here comes straight from a
//! library call on the resolved scenario; the CLI only formats.

use std::f64::consts::LN_2;

use serde::Serialize;
use serde_json::json;

use powerband::capacity::{awgn_reference, DirectCapacity, RelayCapacity};
use powerband::montecarlo::empirical_curve;
use powerband::tradeoff::{
    self, measures_direct_closed, measures_numeric, measures_relay_closed,
    relay_equal_split_improvement_report, CurveMode, SnrGridDb, TradeoffCurve,
    TradeoffMeasures,
};

use crate::output::{json_meta, sci, sink, write_io};
use crate::spec::{Mode, OutputFormat, ScenarioSpec};
use crate::CliError;

fn curve_mode(mode: Mode) -> CurveMode {
    match mode {
        Mode::Direct => CurveMode::Direct,
        Mode::Relay => CurveMode::Relay,
        Mode::Awgn => CurveMode::Awgn,
    }
}

/// Closed-form spectral efficiency of the scenario as a plain function of
/// linear SNR (nats/s/Hz).
fn make_rate(spec: &ScenarioSpec) -> Result<Box<dyn Fn(f64) -> f64 + Sync>, CliError> {
    Ok(match spec.mode {
        Mode::Awgn => Box::new(awgn_reference::<f64>),
        Mode::Direct => {
            let direct = DirectCapacity::new(&spec.to_system_config()?)?;
            Box::new(move |snr| direct.spectral_efficiency(snr))
        }
        Mode::Relay => {
            let relay = RelayCapacity::new(&spec.to_system_config()?)?;
            Box::new(move |snr| relay.spectral_efficiency(snr))
        }
    })
}

fn grid(spec: &ScenarioSpec) -> Result<SnrGridDb<f64>, CliError> {
    Ok(SnrGridDb::new(
        spec.snr_min_db,
        spec.snr_max_db,
        spec.points,
    )?)
}

#[derive(Serialize)]
struct MeasuresView {
    ebno_min: f64,
    ebno_min_db: f64,
    s0: f64,
    ebno_imp: f64,
    ebno_imp_db: f64,
    s_inf: f64,
}

impl From<TradeoffMeasures<f64>> for MeasuresView {
    fn from(m: TradeoffMeasures<f64>) -> Self {
        MeasuresView {
            ebno_min: m.ebno_min,
            ebno_min_db: m.ebno_min_db(),
            s0: m.wideband_slope,
            ebno_imp: m.ebno_improvement,
            ebno_imp_db: m.ebno_improvement_db(),
            s_inf: m.high_snr_slope,
        }
    }
}

fn rel_gap(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// `measures`: closed-form and numeric-limit tradeoff quadruples plus their
/// relative gaps; for the even relay split also both routes to the Eb/N0
/// improvement.
pub fn measures(spec: &ScenarioSpec) -> Result<(), CliError> {
    let closed = match spec.mode {
        Mode::Awgn => TradeoffMeasures::awgn(),
        Mode::Direct => measures_direct_closed(&spec.to_system_config()?)?,
        Mode::Relay => measures_relay_closed(&spec.to_system_config()?)?,
    };
    let rate = make_rate(spec)?;
    let numeric = measures_numeric(&*rate)?;
    let equal_split = if spec.mode == Mode::Relay
        && (spec.beta_b - spec.beta_r()).abs() <= 1e-12
    {
        Some(relay_equal_split_improvement_report(
            &spec.to_system_config()?,
        )?)
    } else {
        None
    };

    let mut out = sink(&spec.out)?;
    match spec.format {
        OutputFormat::Json => {
            let mut doc = json!({
                "meta": json_meta(spec),
                "closed": MeasuresView::from(closed),
                "numeric": MeasuresView::from(numeric),
                "rel_gap": {
                    "ebno_min": rel_gap(closed.ebno_min, numeric.ebno_min),
                    "s0": rel_gap(closed.wideband_slope, numeric.wideband_slope),
                    "ebno_imp": rel_gap(closed.ebno_improvement, numeric.ebno_improvement),
                    "s_inf": rel_gap(closed.high_snr_slope, numeric.high_snr_slope),
                },
            });
            if let Some(report) = equal_split {
                doc["equal_split_improvement"] = json!({
                    "closed_form": report.closed_form,
                    "numeric_limit": report.numeric_limit,
                    "relative_gap": report.relative_gap,
                });
            }
            write_io(&mut out, &format!("{:#}\n", doc))?;
        }
        OutputFormat::Csv => {
            // Echo the scenario in config-file form; the block can be fed
            // back through --config to reproduce the report.
            let mut text = spec.to_config_string();
            text.push('\n');
            text.push_str(&format!(
                "{:<22} {:>22} {:>22} {:>12}\n",
                "measure", "closed-form", "numeric-limit", "rel-gap"
            ));
            // Relative gaps are reported for the linear quantities; dB rows
            // are views of the same numbers.
            let rows = [
                ("ebno_min (linear)", closed.ebno_min, numeric.ebno_min, true),
                (
                    "ebno_min (dB)",
                    closed.ebno_min_db(),
                    numeric.ebno_min_db(),
                    false,
                ),
                (
                    "S0 (b/s/Hz/3dB)",
                    closed.wideband_slope,
                    numeric.wideband_slope,
                    true,
                ),
                (
                    "ebno_imp (linear)",
                    closed.ebno_improvement,
                    numeric.ebno_improvement,
                    true,
                ),
                (
                    "ebno_imp (dB)",
                    closed.ebno_improvement_db(),
                    numeric.ebno_improvement_db(),
                    false,
                ),
                (
                    "S_inf (b/s/Hz/3dB)",
                    closed.high_snr_slope,
                    numeric.high_snr_slope,
                    true,
                ),
            ];
            for (name, c, n, with_gap) in rows {
                let gap = if with_gap {
                    format!("{:>12.3e}", rel_gap(c, n))
                } else {
                    format!("{:>12}", "-")
                };
                text.push_str(&format!("{name:<22} {:>22} {:>22} {gap}\n", sci(c), sci(n)));
            }
            if let Some(report) = equal_split {
                text.push_str(&format!(
                    "\nequal-split ebno_imp: closed {} numeric {} rel-gap {:.3e}\n",
                    sci(report.closed_form),
                    sci(report.numeric_limit),
                    report.relative_gap
                ));
            }
            write_io(&mut out, &text)?;
        }
    }
    Ok(())
}

fn write_curve_csv(curve: &TradeoffCurve<f64>) -> String {
    let mut text = String::from("snr_db,se_bps_hz,ebno_db\n");
    for p in &curve.points {
        text.push_str(&format!(
            "{},{},{}\n",
            sci(p.snr_db()),
            sci(p.se_bits),
            sci(p.ebno_db)
        ));
    }
    text
}

/// `curve`: the analytic tradeoff curve of the scenario.
pub fn curve(spec: &ScenarioSpec) -> Result<(), CliError> {
    let rate = make_rate(spec)?;
    let curve = tradeoff::curve(&*rate, curve_mode(spec.mode), &grid(spec)?)?;
    let mut out = sink(&spec.out)?;
    match spec.format {
        OutputFormat::Csv => write_io(&mut out, &write_curve_csv(&curve))?,
        OutputFormat::Json => {
            let points: Vec<_> = curve
                .points
                .iter()
                .map(|p| {
                    json!({
                        "snr_db": p.snr_db(),
                        "se_bps_hz": p.se_bits,
                        "ebno_db": p.ebno_db,
                    })
                })
                .collect();
            let doc = json!({
                "meta": json_meta(spec),
                "mode": curve.mode.as_str(),
                "points": points,
            });
            write_io(&mut out, &format!("{:#}\n", doc))?;
        }
    }
    Ok(())
}

fn empirical(spec: &ScenarioSpec) -> Result<powerband::montecarlo::EmpiricalCurve<f64>, CliError> {
    if spec.mode == Mode::Awgn {
        return Err(CliError::Usage(
            "mode awgn has no simulator; use mode direct or relay".into(),
        ));
    }
    if spec.samples == 0 {
        return Err(CliError::Usage("samples must be at least 1".into()));
    }
    let cfg = spec.to_system_config()?;
    Ok(empirical_curve(
        curve_mode(spec.mode),
        &cfg,
        &grid(spec)?,
        spec.samples,
        spec.seed,
    )?)
}

/// `simulate`: the Monte Carlo tradeoff curve with per-point uncertainty.
pub fn simulate(spec: &ScenarioSpec) -> Result<(), CliError> {
    let emp = empirical(spec)?;
    let mut out = sink(&spec.out)?;
    match spec.format {
        OutputFormat::Csv => {
            let mut text = String::from("snr_db,se_bps_hz,ebno_db,std_err_bps_hz\n");
            for (p, est) in emp.curve.points.iter().zip(&emp.estimates) {
                text.push_str(&format!(
                    "{},{},{},{}\n",
                    sci(p.snr_db()),
                    sci(p.se_bits),
                    sci(p.ebno_db),
                    sci(est.std_err / LN_2)
                ));
            }
            write_io(&mut out, &text)?;
        }
        OutputFormat::Json => {
            let points: Vec<_> = emp
                .curve
                .points
                .iter()
                .zip(&emp.estimates)
                .map(|(p, est)| {
                    json!({
                        "snr_db": p.snr_db(),
                        "se_bps_hz": p.se_bits,
                        "ebno_db": p.ebno_db,
                        "std_err_bps_hz": est.std_err / LN_2,
                        "n_samples": est.n_samples,
                        "point_seed": est.seed,
                    })
                })
                .collect();
            let doc = json!({
                "meta": json_meta(spec),
                "mode": emp.curve.mode.as_str(),
                "points": points,
            });
            write_io(&mut out, &format!("{:#}\n", doc))?;
        }
    }
    Ok(())
}

/// `compare`: analytic vs simulated spectral efficiency per grid point, a
/// summary line with the maximum relative gap, and a nonzero exit when the
/// gap exceeds the tolerance.
pub fn compare(spec: &ScenarioSpec) -> Result<(), CliError> {
    if spec.samples < 1000 {
        return Err(CliError::Usage(format!(
            "compare needs at least 1000 samples per point, got {}",
            spec.samples
        )));
    }
    let rate = make_rate(spec)?;
    let emp = empirical(spec)?;

    struct Row {
        snr_db: f64,
        closed_bits: f64,
        empirical_bits: f64,
        std_err_bits: f64,
        rel_gap: f64,
    }
    let rows: Vec<Row> = emp
        .curve
        .points
        .iter()
        .zip(&emp.estimates)
        .map(|(p, est)| Row {
            snr_db: p.snr_db(),
            closed_bits: rate(p.snr) / LN_2,
            empirical_bits: p.se_bits,
            std_err_bits: est.std_err / LN_2,
            rel_gap: rel_gap(rate(p.snr), est.mean),
        })
        .collect();
    let max_gap = rows.iter().map(|r| r.rel_gap).fold(0.0, f64::max);

    let mut out = sink(&spec.out)?;
    match spec.format {
        OutputFormat::Csv => {
            let mut text =
                String::from("snr_db,se_closed_bps_hz,se_empirical_bps_hz,std_err_bps_hz,rel_gap\n");
            for r in &rows {
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    sci(r.snr_db),
                    sci(r.closed_bits),
                    sci(r.empirical_bits),
                    sci(r.std_err_bits),
                    sci(r.rel_gap)
                ));
            }
            write_io(&mut out, &text)?;
        }
        OutputFormat::Json => {
            let points: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "snr_db": r.snr_db,
                        "se_closed_bps_hz": r.closed_bits,
                        "se_empirical_bps_hz": r.empirical_bits,
                        "std_err_bps_hz": r.std_err_bits,
                        "rel_gap": r.rel_gap,
                    })
                })
                .collect();
            let doc = json!({
                "meta": json_meta(spec),
                "mode": spec.mode.as_str(),
                "points": points,
                "summary": {
                    "max_rel_gap": max_gap,
                    "tolerance": spec.tolerance,
                    "points_compared": rows.len(),
                },
            });
            write_io(&mut out, &format!("{:#}\n", doc))?;
        }
    }
    drop(out);

    println!(
        "compare: max relative gap {:.6e} over {} points (tolerance {:.6e})",
        max_gap,
        rows.len(),
        spec.tolerance
    );
    if max_gap > spec.tolerance {
        return Err(CliError::Tolerance {
            max_gap,
            tolerance: spec.tolerance,
        });
    }
    Ok(())
}
