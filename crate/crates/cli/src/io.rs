//! Reading forms, matrices and configuration; error reporting.

use std::fmt;
use std::path::Path;

use serde::Deserialize;
use serde_json::json;

use ternforms::elimination::{install_normalization_constant, NormalizationConstant};
use ternforms::poly::{parse_poly, Poly, PolyJson};
use ternforms::{Domain, Error, Mat3};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    UnknownSuite(String),
    InvalidArgument(String),
    Math(Error),
}

impl CliError {
    pub fn kind(&self) -> &str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::UnknownSuite(_) => "unknown_suite",
            CliError::InvalidArgument(_) => "invalid_argument",
            CliError::Math(e) => e.kind(),
        }
    }

    /// 2 for anything wrong with the input itself, 1 for mathematical
    /// precondition failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(Error::Parse(_)) | CliError::Math(Error::NotPrime(_)) => 2,
            CliError::Math(_) => 1,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::InvalidArgument(m) => f.write_str(m),
            CliError::UnknownSuite(s) => write!(f, "unknown suite '{s}'"),
            CliError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// A polynomial from a text or JSON file (JSON if it starts with `{`),
/// optionally reduced mod p.
pub fn read_form(path: &Path, modulus: Option<u64>) -> CliResult<Poly> {
    let text = read_text(path)?;
    let f = if text.trim_start().starts_with('{') {
        let j: PolyJson =
            serde_json::from_str(&text).map_err(|e| CliError::Math(Error::Parse(format!("polynomial JSON: {e}"))))?;
        Poly::from_json(&j, None)?
    } else {
        parse_poly(text.trim(), None, None)?
    };
    match modulus {
        Some(p) => Ok(f.reduce_mod_p(p)?),
        None => Ok(f),
    }
}

pub fn read_matrix(path: &Path, domain: Domain) -> CliResult<Mat3> {
    let text = read_text(path)?;
    let m = Mat3::from_json_str(&text, None)?;
    if m.domain() == domain {
        Ok(m)
    } else {
        Ok(m.to_domain(domain)?)
    }
}

pub fn parse_domain(text: &str) -> CliResult<Domain> {
    let t = text.trim();
    let bad = || CliError::InvalidArgument(format!("invalid domain '{t}' (use ZZ, QQ or GF(p))"));
    match t {
        "ZZ" | "Z" | "int" => Ok(Domain::Integer),
        "QQ" | "Q" | "rat" => Ok(Domain::Rational),
        _ => {
            let inner = t
                .strip_prefix("GF(")
                .and_then(|s| s.strip_suffix(')'))
                .or_else(|| t.strip_prefix("F"))
                .unwrap_or(t);
            let p: u64 = inner.parse().map_err(|_| bad())?;
            Domain::prime(p).map_err(|_| bad())
        }
    }
}

pub fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> CliResult<Vec<T>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| CliError::InvalidArgument(format!("bad {what} entry '{s}'"))))
        .collect()
}

pub fn parse_primes(text: &str) -> CliResult<Vec<u64>> {
    let ps: Vec<u64> = parse_list(text, "prime")?;
    for &p in &ps {
        Domain::prime(p)?;
    }
    Ok(ps)
}

#[derive(Deserialize)]
struct ConfigFile {
    #[serde(default)]
    normalization_constants: Vec<NormalizationConstant>,
}

/// Installs the normalization constants listed in a config file.
pub fn load_config(path: &Path) -> CliResult<()> {
    let text = read_text(path)?;
    let cfg: ConfigFile =
        serde_json::from_str(&text).map_err(|e| CliError::Math(Error::Config(format!("{}: {e}", path.display()))))?;
    for c in cfg.normalization_constants {
        install_normalization_constant(c)?;
    }
    Ok(())
}
