use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use simons_core::Precision;
use thiserror::Error;

pub const MAX_DEGREE: i64 = 6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}` (expected json, csv or text)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("config line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("config line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("bad value `{value}` for `{key}`: {reason}")]
    Value { key: String, value: String, reason: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub degree: Vec<i64>,
    pub samples: usize,
    pub quad_order: usize,
    pub tol_pointwise: f64,
    pub tol_integral: f64,
    pub seed: u64,
    pub format: Format,
    pub precision: Precision,
    pub pinch_samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            degree: vec![1, 2, 3, 4],
            samples: 200,
            quad_order: simons_core::quadrature::DEFAULT_ORDER,
            tol_pointwise: 1e-8,
            tol_integral: 1e-6,
            seed: 42,
            format: Format::Json,
            precision: Precision::Double,
            pinch_samples: 100_000,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.degree.is_empty() {
            return Err(ConfigError::Invalid("at least one degree is required".into()));
        }
        if let Some(d) = self.degree.iter().find(|d| !(1..=MAX_DEGREE).contains(*d)) {
            return Err(ConfigError::Invalid(format!("degree {d} is outside 1..={MAX_DEGREE}")));
        }
        if self.samples == 0 {
            return Err(ConfigError::Invalid("samples must be at least 1".into()));
        }
        if self.quad_order < 2 {
            return Err(ConfigError::Invalid(format!("quad_order must be at least 2, got {}", self.quad_order)));
        }
        for (name, t) in [("tol", self.tol_pointwise), ("tol_integral", self.tol_integral)] {
            if !(t > 0.0 && t.is_finite()) {
                return Err(ConfigError::Invalid(format!("{name} must be a positive number, got {t}")));
            }
        }
        Ok(())
    }
}

/// Settings that may be left unset; applied on top of a base config.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub degree: Option<Vec<i64>>,
    pub samples: Option<usize>,
    pub quad_order: Option<usize>,
    pub tol_pointwise: Option<f64>,
    pub tol_integral: Option<f64>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub precision: Option<Precision>,
    pub pinch_samples: Option<usize>,
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value.parse().map_err(|e: T::Err| ConfigError::Value {
        key: key.to_string(),
        value: value.to_string(),
        reason: e.to_string(),
    })
}

impl Overrides {
    /// Parses `key = value` lines; `#` starts a comment. Keys mirror the
    /// long flags, with `-` or `_`.
    pub fn parse_config(text: &str) -> Result<Self, ConfigError> {
        let mut out = Overrides::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: n + 1,
                text: raw.to_string(),
            })?;
            let (key, value) = (key.trim().replace('-', "_"), value.trim());
            match key.as_str() {
                "degree" => {
                    out.degree = Some(
                        value
                            .split(',')
                            .map(|d| parse(&key, d.trim()))
                            .collect::<Result<_, _>>()?,
                    )
                }
                "samples" => out.samples = Some(parse(&key, value)?),
                "quad_order" => out.quad_order = Some(parse(&key, value)?),
                "tol" | "tol_pointwise" => out.tol_pointwise = Some(parse(&key, value)?),
                "tol_integral" => out.tol_integral = Some(parse(&key, value)?),
                "seed" => out.seed = Some(parse(&key, value)?),
                "format" => out.format = Some(parse(&key, value)?),
                "precision" => out.precision = Some(parse(&key, value)?),
                "pinch_samples" => out.pinch_samples = Some(parse(&key, value)?),
                _ => return Err(ConfigError::UnknownKey { line: n + 1, key }),
            }
        }
        Ok(out)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::parse_config(&text)
    }

    pub fn apply(self, mut base: RunConfig) -> RunConfig {
        if let Some(v) = self.degree {
            base.degree = v;
        }
        base.samples = self.samples.unwrap_or(base.samples);
        base.quad_order = self.quad_order.unwrap_or(base.quad_order);
        base.tol_pointwise = self.tol_pointwise.unwrap_or(base.tol_pointwise);
        base.tol_integral = self.tol_integral.unwrap_or(base.tol_integral);
        base.seed = self.seed.unwrap_or(base.seed);
        base.format = self.format.unwrap_or(base.format);
        base.precision = self.precision.unwrap_or(base.precision);
        base.pinch_samples = self.pinch_samples.unwrap_or(base.pinch_samples);
        base
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let text = "# run\ndegree = 2, 3\nsamples=10\nquad-order = 8\ntol = 1e-9\ntol_integral=1e-5\n\
                    seed = 7 # trailing\nformat = csv\nprecision = extended\npinch_samples = 5\n";
        let o = Overrides::parse_config(text).unwrap();
        let cfg = o.apply(RunConfig::default());
        assert_eq!(cfg.degree, vec![2, 3]);
        assert_eq!((cfg.samples, cfg.quad_order, cfg.seed, cfg.pinch_samples), (10, 8, 7, 5));
        assert_eq!((cfg.tol_pointwise, cfg.tol_integral), (1e-9, 1e-5));
        assert_eq!((cfg.format, cfg.precision), (Format::Csv, Precision::Extended));
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn later_layer_wins() {
        let file = Overrides::parse_config("samples = 10\nseed = 3").unwrap();
        let flags = Overrides { samples: Some(99), ..Default::default() };
        let cfg = flags.apply(file.apply(RunConfig::default()));
        assert_eq!((cfg.samples, cfg.seed), (99, 3));
    }

    #[test]
    fn errors() {
        assert!(matches!(Overrides::parse_config("samples 10"), Err(ConfigError::Syntax { line: 1, .. })));
        assert!(matches!(Overrides::parse_config("\nbogus = 1"), Err(ConfigError::UnknownKey { line: 2, .. })));
        assert!(matches!(Overrides::parse_config("samples = x"), Err(ConfigError::Value { .. })));
        assert!(matches!(Overrides::parse_config("format = xml"), Err(ConfigError::Value { .. })));
        let bad = |f: fn(&mut RunConfig)| {
            let mut c = RunConfig::default();
            f(&mut c);
            c.validate().is_err()
        };
        assert!(bad(|c| c.degree = vec![7]));
        assert!(bad(|c| c.degree = vec![0]));
        assert!(bad(|c| c.degree.clear()));
        assert!(bad(|c| c.samples = 0));
        assert!(bad(|c| c.quad_order = 1));
        assert!(bad(|c| c.tol_pointwise = 0.0));
        assert!(bad(|c| c.tol_integral = f64::NAN));
        assert!(RunConfig::default().validate().is_ok());
    }
}
