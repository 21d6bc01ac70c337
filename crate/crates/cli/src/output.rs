//! Output sinks and number formatting shared by the subcommands.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use crate::spec::ScenarioSpec;
use crate::CliError;

/// Where a report goes: the requested file, or stdout.
pub fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    match out {
        None => Ok(Box::new(io::stdout())),
        Some(path) => {
            let file = File::create(path).map_err(|e| {
                CliError::Usage(format!("cannot write `{}`: {e}", path.display()))
            })?;
            Ok(Box::new(io::BufWriter::new(file)))
        }
    }
}

/// Scientific notation with 13 significant digits; CSV cells use this so
/// values survive a parse round-trip.
pub fn sci(x: f64) -> String {
    format!("{x:.12e}")
}

pub fn write_io<W: Write>(w: &mut W, text: &str) -> Result<(), CliError> {
    w.write_all(text.as_bytes())
        .map_err(|e| CliError::Usage(format!("write failed: {e}")))
}

/// Provenance header shared by every JSON report: the resolved scenario,
/// the derived access share and the tool version.
pub fn json_meta(spec: &ScenarioSpec) -> serde_json::Value {
    serde_json::json!({
        "spec": spec,
        "beta_r": spec.beta_r(),
        "version": env!("CARGO_PKG_VERSION"),
    })
}
