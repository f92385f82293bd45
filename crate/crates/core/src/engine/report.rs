use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rel_model::Mutation;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParamValue {
    Int(usize),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(n) => write!(f, "{n}"),
            ParamValue::Text(s) => f.write_str(s),
        }
    }
}

/// Named parameters of a check, in the order they were given.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Params(pub Vec<(String, ParamValue)>);

impl Params {
    pub fn none() -> Self {
        Params(Vec::new())
    }

    pub fn ints(pairs: &[(&str, usize)]) -> Self {
        Params(pairs.iter().map(|(k, v)| (k.to_string(), ParamValue::Int(*v))).collect())
    }

    pub fn with_text(mut self, key: &str, value: impl Into<String>) -> Self {
        self.0.push((key.to_string(), ParamValue::Text(value.into())));
        self
    }

    pub fn get(&self, key: &str) -> Option<&ParamValue> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for Params {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            match v {
                ParamValue::Int(n) => map.serialize_entry(k, n)?,
                ParamValue::Text(s) => map.serialize_entry(k, s)?,
            }
        }
        map.end()
    }
}

/// Where the two sides of a failed check differ: a domain basis element,
/// the codomain element whose rows were compared, and both entries.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Counterexample {
    pub domain: String,
    pub codomain: String,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub params: Params,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.status, self.name)?;
        if !self.params.0.is_empty() {
            write!(f, " {}", self.params)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Rel,
    Poly,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Rel => "rel",
            ModelKind::Poly => "poly",
        })
    }
}

/// Everything that determines a suite run.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RunConfig {
    pub model: ModelKind,
    /// Base-set size for `rel`, number of variables for `poly`.
    pub size: u32,
    /// Field characteristic for `poly`; ignored by `rel`.
    pub characteristic: u64,
    pub max_degree: usize,
    pub max_n: usize,
    /// Seed of the random naturality samples of `poly`.
    pub seed: u64,
    /// A single flipped structure entry, for mutation testing of `rel`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<Mutation>,
}

impl RunConfig {
    pub fn rel(size: u32, max_degree: usize, max_n: usize) -> Self {
        RunConfig {
            model: ModelKind::Rel,
            size,
            characteristic: 0,
            max_degree,
            max_n,
            seed: crate::poly_model::SAMPLE_SEED,
            mutation: None,
        }
    }

    pub fn poly(vars: u32, characteristic: u64, max_degree: usize, max_n: usize) -> Self {
        RunConfig {
            model: ModelKind::Poly,
            size: vars,
            characteristic,
            max_degree,
            max_n,
            seed: crate::poly_model::SAMPLE_SEED,
            mutation: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.model == ModelKind::Poly {
            crate::linalg::ScalarDomain::field_of_characteristic(self.characteristic)
                .map_err(|_| Error::Usage(format!("characteristic {} is neither 0 nor prime", self.characteristic)))?;
            if self.mutation.is_some() {
                return Err(Error::Usage("mutations apply to the relational model only".into()));
            }
        }
        if self.size > 26 {
            return Err(Error::Usage(format!("size {} is larger than supported", self.size)));
        }
        Ok(())
    }
}

/// The ordered outcome of a suite run.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
    pub status: Status,
}

impl Report {
    pub fn new(config: RunConfig, checks: Vec<CheckResult>) -> Self {
        let status = if checks.iter().all(CheckResult::passed) { Status::Pass } else { Status::Fail };
        Report { config, checks, status }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}
