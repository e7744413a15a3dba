//! Flat key=value run configuration.
//!
//! Every knob of every subcommand lives in one flat namespace so a run can be
//! reproduced from a single small file: defaults, then `--config FILE`, then
//! repeated `--set key=value`, then dedicated flags — later sources win.
//! `--show-config` prints the effective configuration in the same format it
//! reads, and the round trip is lossless (floats are printed with enough
//! digits to reparse bit-identically).

use pfbind::{Error, Result};

/// How a report is rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    TextTable,
    Csv,
    Json,
}

impl OutputFormat {
    pub fn as_str(self) -> &'static str {
        match self {
            OutputFormat::TextTable => "text-table",
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "text-table" => Ok(OutputFormat::TextTable),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::validation(
                "format",
                format!("unknown output format {other:?} (expected text-table, csv, or json)"),
            )),
        }
    }
}

/// The flat configuration shared by all subcommands. Grid sizes of 0 mean
/// "derive from the potential scale" (60 ground-state Bohr radii, 4000
/// points, for a Coulomb potential).
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Photon coupling strength for trial-state quantities.
    pub alpha: f64,
    /// Coulomb coupling β of the external potential −βZ/r.
    pub beta: f64,
    /// Charge factor Z of the external potential.
    pub z: f64,
    /// Sharp photon momentum cutoff Λ.
    pub lambda_cut: f64,
    /// Cutoff in electron-mass units for the mass comparison.
    pub lambda_over_m: f64,
    /// Splitting parameter a ∈ (0,1) of the error budget.
    pub a_split: f64,
    /// Coupling tested against the binding threshold.
    pub probe_alpha: f64,
    /// Radial box size; 0 = automatic (120/(βZ)).
    pub r_max: f64,
    /// Interior radial grid points; 0 = automatic (4000).
    pub n_points: usize,
    /// Photon-momentum Gauss–Legendre order.
    pub quad_order: usize,
    /// Polar order of the angular cross-term averages.
    pub sphere_order: usize,
    /// Gaussian envelope width; 0 = translation-invariant limit.
    pub envelope_width: f64,
    /// Photon integral evaluation: closed-form or quadrature.
    pub integral_method: String,
    /// Cutoff sweep "start:stop:count"; empty = no sweep.
    pub sweep_lambda: String,
    /// Two-column (r, V) potential file; empty = Coulomb −βZ/r.
    pub potential_file: String,
    /// Report rendering.
    pub format: OutputFormat,
    /// Report destination; empty = stdout.
    pub output: String,
    /// Restrict verification to the closed-form subset.
    pub quick: bool,
    /// Keys the user actually supplied (file, --set, or flag), as opposed to
    /// defaults. Lets `verify` keep its own reference workload for keys the
    /// user never touched.
    pub explicit: std::collections::BTreeSet<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            alpha: 1.0 / 137.0,
            beta: 1.0 / 137.0,
            z: 1.0,
            lambda_cut: 1.0,
            lambda_over_m: 1.0,
            a_split: 0.25,
            probe_alpha: 1.0 / 137.0,
            r_max: 0.0,
            n_points: 0,
            quad_order: 64,
            sphere_order: 24,
            envelope_width: 0.0,
            integral_method: "closed-form".to_string(),
            sweep_lambda: String::new(),
            potential_file: String::new(),
            format: OutputFormat::TextTable,
            output: String::new(),
            quick: false,
            explicit: std::collections::BTreeSet::new(),
        }
    }
}

fn parse_f64(key: &'static str, value: &str) -> Result<f64> {
    let v: f64 = value
        .parse()
        .map_err(|_| Error::validation("config", format!("key {key}: not a number: {value:?}")))?;
    if !v.is_finite() {
        return Err(Error::validation("config", format!("key {key}: must be finite, got {value}")));
    }
    Ok(v)
}

fn parse_usize(key: &'static str, value: &str) -> Result<usize> {
    value.parse().map_err(|_| {
        Error::validation("config", format!("key {key}: not a nonnegative integer: {value:?}"))
    })
}

fn parse_bool(key: &'static str, value: &str) -> Result<bool> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::validation(
            "config",
            format!("key {key}: expected true or false, got {value:?}"),
        )),
    }
}

impl RunConfig {
    /// Set one key from its textual value. Unknown keys are validation errors.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "alpha" => self.alpha = parse_f64("alpha", value)?,
            "beta" => self.beta = parse_f64("beta", value)?,
            "z" => self.z = parse_f64("z", value)?,
            "lambda_cut" => self.lambda_cut = parse_f64("lambda_cut", value)?,
            "lambda_over_m" => self.lambda_over_m = parse_f64("lambda_over_m", value)?,
            "a_split" => self.a_split = parse_f64("a_split", value)?,
            "probe_alpha" => self.probe_alpha = parse_f64("probe_alpha", value)?,
            "r_max" => self.r_max = parse_f64("r_max", value)?,
            "n_points" => self.n_points = parse_usize("n_points", value)?,
            "quad_order" => self.quad_order = parse_usize("quad_order", value)?,
            "sphere_order" => self.sphere_order = parse_usize("sphere_order", value)?,
            "envelope_width" => self.envelope_width = parse_f64("envelope_width", value)?,
            "integral_method" => match value {
                "closed-form" | "quadrature" => self.integral_method = value.to_string(),
                _ => {
                    return Err(Error::validation(
                        "config",
                        format!(
                            "key integral_method: expected closed-form or quadrature, got {value:?}"
                        ),
                    ))
                }
            },
            "sweep_lambda" => self.sweep_lambda = value.to_string(),
            "potential_file" => self.potential_file = value.to_string(),
            "format" => self.format = OutputFormat::parse(value)?,
            "output" => self.output = value.to_string(),
            "quick" => self.quick = parse_bool("quick", value)?,
            _ => {
                return Err(Error::validation("config", format!("unknown key {key:?}")));
            }
        }
        self.mark(key);
        Ok(())
    }

    /// Record that `key` was supplied by the user rather than defaulted.
    pub fn mark(&mut self, key: &str) {
        self.explicit.insert(key.to_string());
    }

    pub fn is_explicit(&self, key: &str) -> bool {
        self.explicit.contains(key)
    }

    /// Apply one `--set key=value` override.
    pub fn apply_set(&mut self, spec: &str) -> Result<()> {
        let (key, value) = spec.split_once('=').ok_or_else(|| {
            Error::validation("set", format!("expected key=value, got {spec:?}"))
        })?;
        self.set(key.trim(), value.trim())
    }

    /// Load key=value lines from a config file. Blank lines and lines
    /// starting with '#' are skipped; errors carry the line number.
    pub fn apply_file(&mut self, path: &str) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::validation("config", format!("cannot read {path:?}: {e}"))
        })?;
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::validation(
                    "config",
                    format!("{path}:{}: expected key=value, got {line:?}", idx + 1),
                )
            })?;
            self.set(key.trim(), value.trim()).map_err(|e| match e {
                Error::Validation { field, message } => Error::Validation {
                    field,
                    message: format!("{path}:{}: {message}", idx + 1),
                },
                other => other,
            })?;
        }
        Ok(())
    }

    /// Render the effective configuration as key=value lines. Feeding the
    /// output back through [`RunConfig::apply_file`] reproduces this exact
    /// configuration.
    pub fn show(&self) -> String {
        let mut s = String::new();
        use std::fmt::Write;
        // {:?} prints floats with the shortest digits that reparse exactly
        writeln!(s, "alpha={:?}", self.alpha).unwrap();
        writeln!(s, "beta={:?}", self.beta).unwrap();
        writeln!(s, "z={:?}", self.z).unwrap();
        writeln!(s, "lambda_cut={:?}", self.lambda_cut).unwrap();
        writeln!(s, "lambda_over_m={:?}", self.lambda_over_m).unwrap();
        writeln!(s, "a_split={:?}", self.a_split).unwrap();
        writeln!(s, "probe_alpha={:?}", self.probe_alpha).unwrap();
        writeln!(s, "r_max={:?}", self.r_max).unwrap();
        writeln!(s, "n_points={}", self.n_points).unwrap();
        writeln!(s, "quad_order={}", self.quad_order).unwrap();
        writeln!(s, "sphere_order={}", self.sphere_order).unwrap();
        writeln!(s, "envelope_width={:?}", self.envelope_width).unwrap();
        writeln!(s, "integral_method={}", self.integral_method).unwrap();
        writeln!(s, "sweep_lambda={}", self.sweep_lambda).unwrap();
        writeln!(s, "potential_file={}", self.potential_file).unwrap();
        writeln!(s, "format={}", self.format.as_str()).unwrap();
        writeln!(s, "output={}", self.output).unwrap();
        writeln!(s, "quick={}", self.quick).unwrap();
        s
    }
}
