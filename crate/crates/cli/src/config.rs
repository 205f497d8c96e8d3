//! Experiment configuration: `key=value` arguments, config files and the
//! content hash used to tag outputs.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(CliError::Usage(format!("unknown format {s:?}, expected csv or json"))),
        }
    }
}

/// A parameter value; integers and reals are kept apart so that hashing and
/// echoing are exact.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    Str(String),
}

impl Value {
    pub fn parse(s: &str) -> Value {
        let s = s.trim();
        if let Ok(i) = s.parse::<i64>() {
            Value::Int(i)
        } else if let Ok(x) = s.parse::<f64>() {
            Value::Real(x)
        } else {
            Value::Str(s.to_string())
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Real(x) => write!(f, "{x:?}"),
            Value::Str(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentConfig {
    pub experiment: String,
    pub params: BTreeMap<String, Value>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    /// `None` uses the experiment's own default.
    pub format: Option<Format>,
}

impl ExperimentConfig {
    pub fn new(experiment: impl Into<String>) -> Self {
        Self { experiment: experiment.into(), ..Self::default() }
    }

    /// Adds `key=value` pairs; a repeated key keeps the last value.
    pub fn with_args<S: AsRef<str>>(mut self, args: &[S]) -> Result<Self, CliError> {
        for a in args {
            let (k, v) = split_pair(a.as_ref(), '=')?;
            self.params.insert(k, Value::parse(&v));
        }
        Ok(self)
    }

    /// Merges a config file: one `key = value` per line, `#` comments. Keys
    /// already set on the command line win. `seed` is recognized here too.
    pub fn with_file_contents(mut self, text: &str) -> Result<Self, CliError> {
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = split_pair(line, '=')?;
            if k == "seed" {
                self.seed = v
                    .parse()
                    .map_err(|_| CliError::Usage(format!("seed {v:?} is not an integer")))?;
                continue;
            }
            self.params.entry(k).or_insert_with(|| Value::parse(&v));
        }
        Ok(self)
    }

    /// SHA-256 of `config <len>\0<canonical text>`, in the manner of git
    /// object ids. The canonical text lists the id, the sorted parameters
    /// and the seed; output path and format do not affect it.
    pub fn content_hash(&self) -> String {
        let mut body = format!("experiment={}\n", self.experiment);
        for (k, v) in &self.params {
            body.push_str(&format!("{k}={v}\n"));
        }
        body.push_str(&format!("seed={}\n", self.seed));
        let mut h = Sha256::new();
        h.update(format!("config {}\0", body.len()).as_bytes());
        h.update(body.as_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn split_pair(s: &str, sep: char) -> Result<(String, String), CliError> {
    match s.split_once(sep) {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_string(), v.trim().to_string())),
        _ => Err(CliError::Usage(format!("expected key{sep}value, got {s:?}"))),
    }
}

/// Parameters of one run after defaults are filled in and unknown keys
/// rejected.
#[derive(Debug, Clone)]
pub struct Params {
    values: BTreeMap<String, Value>,
}

impl Params {
    pub fn resolve(given: &BTreeMap<String, Value>, defaults: &[(&str, &str)]) -> Result<Self, CliError> {
        for k in given.keys() {
            if !defaults.iter().any(|(d, _)| d == k) {
                let known: Vec<&str> = defaults.iter().map(|(d, _)| *d).collect();
                return Err(CliError::Usage(format!("unknown key {k:?}; accepted: {}", known.join(", "))));
            }
        }
        let mut values: BTreeMap<String, Value> =
            defaults.iter().map(|(k, v)| (k.to_string(), Value::parse(v))).collect();
        values.extend(given.iter().map(|(k, v)| (k.clone(), v.clone())));
        Ok(Self { values })
    }

    fn get(&self, key: &str) -> &Value {
        self.values.get(key).expect("key declared with a default")
    }

    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        match self.get(key) {
            Value::Int(i) if *i >= 0 => Ok(*i as usize),
            v => Err(CliError::Usage(format!("{key} = {v} is not a nonnegative integer"))),
        }
    }

    pub fn f64(&self, key: &str) -> Result<f64, CliError> {
        match self.get(key) {
            Value::Int(i) => Ok(*i as f64),
            Value::Real(x) => Ok(*x),
            Value::Str(s) if s == "inf" => Ok(f64::INFINITY),
            v => Err(CliError::Usage(format!("{key} = {v} is not a number"))),
        }
    }

    pub fn str(&self, key: &str) -> String {
        self.get(key).to_string()
    }

    /// Comma-separated list of numbers.
    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        self.str(key)
            .split(',')
            .map(|s| match Value::parse(s) {
                Value::Int(i) => Ok(i as f64),
                Value::Real(x) => Ok(x),
                _ => Err(CliError::Usage(format!("{key}: {s:?} is not a number"))),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_keep_their_type() {
        assert_eq!(Value::parse("12"), Value::Int(12));
        assert_eq!(Value::parse("0.5"), Value::Real(0.5));
        assert_eq!(Value::parse("disc"), Value::Str("disc".into()));
        assert_eq!(Value::Real(1.0).to_string(), "1.0");
    }

    #[test]
    fn command_line_wins_over_file() {
        let c = ExperimentConfig::new("x")
            .with_args(&["p=3"])
            .unwrap()
            .with_file_contents("# comment\np = 5\nq = 1.5 # trailing\nseed = 9\n")
            .unwrap();
        assert_eq!(c.params["p"], Value::Int(3));
        assert_eq!(c.params["q"], Value::Real(1.5));
        assert_eq!(c.seed, 9);
        assert!(ExperimentConfig::new("x").with_args(&["novalue"]).is_err());
    }

    #[test]
    fn hash_depends_on_content_only() {
        let a = ExperimentConfig::new("x").with_args(&["a=1", "b=2"]).unwrap();
        let mut b = ExperimentConfig::new("x").with_args(&["b=2", "a=1"]).unwrap();
        b.format = Some(Format::Json);
        assert_eq!(a.content_hash(), b.content_hash());
        assert_eq!(a.content_hash().len(), 64);
        b.seed = 1;
        assert_ne!(a.content_hash(), b.content_hash());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let given = ExperimentConfig::new("x").with_args(&["zz=1"]).unwrap().params;
        assert!(Params::resolve(&given, &[("n", "4")]).is_err());
        let p = Params::resolve(&BTreeMap::new(), &[("n", "4"), ("p", "inf"), ("xs", "1,2.5")]).unwrap();
        assert_eq!(p.usize("n").unwrap(), 4);
        assert_eq!(p.f64("p").unwrap(), f64::INFINITY);
        assert_eq!(p.f64_list("xs").unwrap(), vec![1.0, 2.5]);
        assert!(p.usize("p").is_err());
    }
}
