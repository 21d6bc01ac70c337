//! Scenario description: defaults, config-file parsing and flag merging.
//!
//! A scenario is described by line-oriented `key=value` pairs (UTF-8, `#`
//! comments) or by CLI flags; flags override presets, presets override the
//! config file, the file overrides built-in defaults. Unknown keys are hard
//! errors.

// Validation guards use `!(x > y)` so NaN inputs fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use powerband::capacity::{SystemConfig, TimeShare};
use powerband::evt::make_fading;
use powerband::{FadingModel64, SystemConfig64};

use crate::CliError;

/// Transmission protocol (or the AWGN reference channel).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Direct,
    Relay,
    Awgn,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Direct => "direct",
            Mode::Relay => "relay",
            Mode::Awgn => "awgn",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "direct" => Ok(Mode::Direct),
            "relay" => Ok(Mode::Relay),
            "awgn" => Ok(Mode::Awgn),
            other => Err(format!(
                "unknown mode `{other}` (expected direct, relay or awgn)"
            )),
        }
    }
}

/// Output encoding of tables and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// Fading family plus parameters, written `family` or `family:p1,p2`.
#[derive(Debug, Clone, PartialEq)]
pub struct FadingSpec {
    pub family: String,
    pub params: Vec<f64>,
}

impl FadingSpec {
    pub fn rayleigh() -> Self {
        FadingSpec {
            family: "rayleigh".into(),
            params: vec![],
        }
    }

    pub fn to_model(&self) -> Result<FadingModel64, CliError> {
        make_fading(&self.family, &self.params).map_err(CliError::from)
    }
}

impl fmt::Display for FadingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family)?;
        for (i, p) in self.params.iter().enumerate() {
            write!(f, "{}{p}", if i == 0 { ':' } else { ',' })?;
        }
        Ok(())
    }
}

impl Serialize for FadingSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl FromStr for FadingSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (family, params) = match s.split_once(':') {
            None => (s.to_string(), vec![]),
            Some((family, rest)) => {
                let params = rest
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<f64>()
                            .map_err(|_| format!("invalid fading parameter `{p}`"))
                    })
                    .collect::<Result<Vec<f64>, String>>()?;
                (family.to_string(), params)
            }
        };
        if family.is_empty() {
            return Err("empty fading family".into());
        }
        Ok(FadingSpec { family, params })
    }
}

/// Full scenario: what to compute and where to put it.
///
/// Defaults describe a 20-user cell-edge scenario: `alpha_b = 0.01`,
/// `alpha_r = 1`, Rayleigh fading, 30 grid points over SNR -10..40 dB and
/// 100000 samples per Monte Carlo point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioSpec {
    pub mode: Mode,
    pub k: usize,
    pub alpha_b: f64,
    pub alpha_r: f64,
    pub beta_b: f64,
    pub fading: FadingSpec,
    pub snr_min_db: f64,
    pub snr_max_db: f64,
    pub points: usize,
    pub samples: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub tolerance: f64,
}

impl Default for ScenarioSpec {
    fn default() -> Self {
        ScenarioSpec {
            mode: Mode::Direct,
            k: 20,
            alpha_b: 0.01,
            alpha_r: 1.0,
            beta_b: 0.5,
            fading: FadingSpec::rayleigh(),
            snr_min_db: -10.0,
            snr_max_db: 40.0,
            points: 30,
            samples: 100_000,
            seed: 12345,
            out: None,
            format: OutputFormat::Csv,
            tolerance: 0.05,
        }
    }
}

impl ScenarioSpec {
    /// Derived access-phase share; never an input.
    pub fn beta_r(&self) -> f64 {
        1.0 - self.beta_b
    }

    /// Build the core scenario object. Both user-facing links share the
    /// configured fading family.
    pub fn to_system_config(&self) -> Result<SystemConfig64, CliError> {
        let model = self.fading.to_model()?;
        let share = TimeShare::new(self.beta_b)?;
        Ok(SystemConfig::new(
            self.k,
            self.alpha_b,
            self.alpha_r,
            share,
            model.clone(),
            model,
        )?)
    }

    /// Apply one `key=value` assignment.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError>
        where
            T::Err: fmt::Display,
        {
            value.parse::<T>().map_err(|e| {
                CliError::Usage(format!("invalid value `{value}` for `{key}`: {e}"))
            })
        }
        match key {
            "mode" => self.mode = parse(key, value)?,
            "k" => self.k = parse(key, value)?,
            "alpha_b" => self.alpha_b = parse(key, value)?,
            "alpha_r" => self.alpha_r = parse(key, value)?,
            "beta_b" => self.beta_b = parse(key, value)?,
            "fading" => self.fading = parse(key, value)?,
            "snr_min_db" => self.snr_min_db = parse(key, value)?,
            "snr_max_db" => self.snr_max_db = parse(key, value)?,
            "points" => self.points = parse(key, value)?,
            "samples" => self.samples = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => self.format = parse(key, value)?,
            "tolerance" => self.tolerance = parse(key, value)?,
            other => {
                return Err(CliError::Usage(format!(
                    "unknown config key `{other}`"
                )))
            }
        }
        Ok(())
    }

    /// Parse a whole config file on top of the current values.
    pub fn apply_config_text(&mut self, text: &str) -> Result<(), CliError> {
        for (number, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!(
                    "config line {} is not `key=value`: `{raw}`",
                    number + 1
                )));
            };
            self.apply(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Serialize as a config file; `apply_config_text` of the result
    /// reproduces the spec exactly.
    pub fn to_config_string(&self) -> String {
        let mut text = String::from("# powerband scenario\n");
        let mut push = |key: &str, value: String| {
            text.push_str(key);
            text.push('=');
            text.push_str(&value);
            text.push('\n');
        };
        push("mode", self.mode.as_str().into());
        push("k", self.k.to_string());
        push("alpha_b", format_f64(self.alpha_b));
        push("alpha_r", format_f64(self.alpha_r));
        push("beta_b", format_f64(self.beta_b));
        push("fading", self.fading.to_string());
        push("snr_min_db", format_f64(self.snr_min_db));
        push("snr_max_db", format_f64(self.snr_max_db));
        push("points", self.points.to_string());
        push("samples", self.samples.to_string());
        push("seed", self.seed.to_string());
        if let Some(out) = &self.out {
            push("out", out.display().to_string());
        }
        push("format", self.format.as_str().into());
        push("tolerance", format_f64(self.tolerance));
        text
    }

    /// Checks shared by every subcommand.
    pub fn validate_common(&self) -> Result<(), CliError> {
        if !(self.beta_b >= 0.0 && self.beta_b <= 1.0) {
            return Err(CliError::Usage(format!(
                "beta_b must lie in [0, 1], got {}",
                self.beta_b
            )));
        }
        if self.points == 0 {
            return Err(CliError::Usage("points must be at least 1".into()));
        }
        if self.points >= 2 && !(self.snr_min_db < self.snr_max_db) {
            return Err(CliError::Usage(format!(
                "snr_min_db must be below snr_max_db, got [{}, {}]",
                self.snr_min_db, self.snr_max_db
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(CliError::Usage(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// Shortest representation that round-trips through `f64::from_str`.
fn format_f64(x: f64) -> String {
    let plain = format!("{x}");
    debug_assert_eq!(plain.parse::<f64>().ok(), Some(x));
    plain
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_describe_cell_edge_scenario() {
        let spec = ScenarioSpec::default();
        assert_eq!(spec.k, 20);
        assert_eq!(spec.alpha_b, 0.01);
        assert_eq!(spec.alpha_r, 1.0);
        assert_eq!(spec.fading.family, "rayleigh");
        assert_eq!(spec.samples, 100_000);
    }

    #[test]
    fn config_round_trip_is_identity() {
        let mut spec = ScenarioSpec {
            mode: Mode::Relay,
            beta_b: 1.0 / 3.0,
            fading: "nakagami-m:1.5".parse().unwrap(),
            out: Some(PathBuf::from("/tmp/x.csv")),
            seed: 987,
            tolerance: 0.015,
            ..ScenarioSpec::default()
        };
        spec.alpha_b = 0.017;
        let text = spec.to_config_string();
        let mut parsed = ScenarioSpec::default();
        parsed.apply_config_text(&text).unwrap();
        assert_eq!(parsed, spec);
    }

    #[test]
    fn unknown_keys_are_hard_errors() {
        let mut spec = ScenarioSpec::default();
        let err = spec.apply_config_text("mode=direct\nsnr_mindb=1\n").unwrap_err();
        match err {
            CliError::Usage(msg) => assert!(msg.contains("snr_mindb"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let mut spec = ScenarioSpec::default();
        spec.apply_config_text("# a comment\n\n  k = 50 \n")
            .unwrap();
        assert_eq!(spec.k, 50);
    }

    #[test]
    fn invalid_values_name_the_key() {
        let mut spec = ScenarioSpec::default();
        let err = spec.apply("k", "twenty").unwrap_err();
        match err {
            CliError::Usage(msg) => assert!(msg.contains('k') && msg.contains("twenty")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn beta_r_is_derived() {
        let mut spec = ScenarioSpec::default();
        spec.apply("beta_b", "0.25").unwrap();
        assert_eq!(spec.beta_r(), 0.75);
    }

    #[test]
    fn fading_spec_round_trip() {
        for text in ["rayleigh", "nakagami-m:2.5", "weibull:1.5"] {
            let spec: FadingSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
            assert!(spec.to_model().is_ok());
        }
        assert!("weibull:abc".parse::<FadingSpec>().is_err());
        let unknown: FadingSpec = "lognormal".parse().unwrap();
        assert!(unknown.to_model().is_err());
    }
}
