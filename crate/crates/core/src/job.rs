//! Job documents: a quiver together with the truncation degree and the
//! cocycle data.
//!
//! ```json
//! { "vertices": [...], "arrows": [...], "n": 3,
//!   "mode": "cocycle", "gamma": ["x1", "x2", "x3", "x4"], "k": "1" }
//! ```
//!
//! `mode` defaults to `cocycle` when `gamma` is present and `trivial`
//! otherwise; `k` defaults to `"1"`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraSpec, InvalidAlgebra, TruncatedAlgebra};
use crate::hochschild::{Cocycle, CocycleError, HochschildExtension};
use crate::quiver::{parse_quiver, Problem};
use crate::quiver::{Quiver, QuiverError};
use crate::scalar::{int, parse_scalar, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Trivial,
    Cocycle,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Trivial => "trivial",
            Mode::Cocycle => "cocycle",
        })
    }
}

#[derive(Deserialize)]
struct Settings {
    n: usize,
    #[serde(default)]
    mode: Option<Mode>,
    #[serde(default)]
    gamma: Option<Vec<String>>,
    #[serde(default)]
    k: Option<String>,
}

#[derive(Debug, Error)]
pub enum JobError {
    #[error("{}", join_problems(.0))]
    Parse(Vec<Problem>),
    #[error("{0}")]
    Algebra(#[from] InvalidAlgebra),
    #[error("invalid cocycle: {0}")]
    Cocycle(#[from] CocycleError),
    #[error("cocycle mode needs `gamma`")]
    MissingGamma,
    #[error("trivial mode takes no `gamma`")]
    UnexpectedGamma,
    #[error("gamma: {0}")]
    Gamma(QuiverError),
    #[error("k: {0}")]
    Scalar(String),
}

fn join_problems(problems: &[Problem]) -> String {
    problems.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n")
}

/// A parsed, not yet validated, job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    pub quiver: Quiver,
    pub n: usize,
    pub mode: Mode,
    pub gamma: Option<Vec<String>>,
    pub k: Scalar,
}

impl Job {
    pub fn parse(text: &str) -> Result<Job, JobError> {
        let quiver = parse_quiver(text).map_err(JobError::Parse)?;
        let settings: Settings = serde_json::from_str(text).map_err(|e| {
            JobError::Parse(vec![Problem {
                position: None,
                location: "$".into(),
                message: e.to_string(),
            }])
        })?;
        let k = match settings.k {
            Some(k) => parse_scalar(&k).map_err(|e| JobError::Scalar(e.to_string()))?,
            None => int(1),
        };
        let mode = settings.mode.unwrap_or(if settings.gamma.is_some() { Mode::Cocycle } else { Mode::Trivial });
        Ok(Job { quiver, n: settings.n, mode, gamma: settings.gamma, k })
    }

    /// Switches mode; leaving cocycle mode drops `gamma`.
    pub fn with_mode(mut self, mode: Mode) -> Self {
        if mode == Mode::Trivial {
            self.gamma = None;
        }
        self.mode = mode;
        self
    }

    pub fn algebra(&self) -> Result<TruncatedAlgebra, JobError> {
        Ok(TruncatedAlgebra::new(AlgebraSpec::new(self.quiver.clone(), self.n))?)
    }

    pub fn cocycle(&self, alg: &TruncatedAlgebra) -> Result<Cocycle, JobError> {
        match (self.mode, &self.gamma) {
            (Mode::Trivial, None) => Ok(Cocycle::trivial()),
            (Mode::Trivial, Some(_)) => Err(JobError::UnexpectedGamma),
            (Mode::Cocycle, None) => Err(JobError::MissingGamma),
            (Mode::Cocycle, Some(names)) => {
                let gamma = alg.quiver().path_from_names(names).map_err(JobError::Gamma)?;
                Ok(Cocycle::from_gamma(alg, &gamma, self.k.clone())?)
            }
        }
    }

    pub fn build(&self) -> Result<HochschildExtension, JobError> {
        let alg = self.algebra()?;
        let cocycle = self.cocycle(&alg)?;
        Ok(HochschildExtension::new(alg, cocycle))
    }

    /// The job as a document that [`Job::parse`] reads back.
    pub fn to_document(&self) -> JobDocument {
        JobDocument {
            vertices: self.quiver.vertices().map(|v| self.quiver.vertex_name(v).to_string()).collect(),
            arrows: self
                .quiver
                .arrows()
                .iter()
                .map(|a| ArrowDocument {
                    name: a.name.clone(),
                    src: self.quiver.vertex_name(a.src).to_string(),
                    tgt: self.quiver.vertex_name(a.tgt).to_string(),
                })
                .collect(),
            n: self.n,
            mode: self.mode,
            gamma: self.gamma.clone(),
            k: self.k.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDocument {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobDocument {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDocument>,
    pub n: usize,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<String>>,
    pub k: String,
}
