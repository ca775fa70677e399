//! Machine-readable output. Field order is declaration order, so documents
//! are byte-identical across runs for the same input.

use serde::Serialize;

use hext::brenner::BrennerReport;
use hext::cycles::CycleClass;
use hext::job::{ArrowDocument, Job, Mode};
use hext::suite::SuiteReport;
use hext::{Cycle, HochschildExtension};

#[derive(Serialize)]
pub struct ConfigEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub n: usize,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<String>>,
    pub k: String,
}

impl ConfigEcho {
    pub fn new(input: Option<&str>, job: &Job) -> Self {
        ConfigEcho {
            input: input.map(str::to_string),
            n: job.n,
            mode: job.mode,
            gamma: job.gamma.clone(),
            k: job.k.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct Validation {
    pub valid: bool,
    pub problems: Vec<String>,
}

impl Validation {
    pub fn ok() -> Self {
        Validation { valid: true, problems: vec![] }
    }

    pub fn failed(problems: Vec<String>) -> Self {
        Validation { valid: false, problems }
    }
}

#[derive(Serialize)]
pub struct ExtQuiverDoc {
    pub vertices: usize,
    pub arrows: Vec<ArrowDocument>,
    pub y_arrows: Vec<String>,
}

impl ExtQuiverDoc {
    pub fn new(ext: &HochschildExtension) -> Self {
        let q = ext.quiver();
        ExtQuiverDoc {
            vertices: q.vertex_count(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowDocument {
                    name: a.name.clone(),
                    src: q.vertex_name(a.src).to_string(),
                    tgt: q.vertex_name(a.tgt).to_string(),
                })
                .collect(),
            y_arrows: ext.ext_quiver().y_arrows().map(|a| q.arrow_name(a).to_string()).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct CycleDoc {
    pub cycle: String,
    pub class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<String>,
}

impl CycleDoc {
    pub fn new(ext: &HochschildExtension, c: &Cycle, class: &CycleClass) -> Self {
        CycleDoc {
            cycle: ext.quiver().path_display(c.path()),
            class: class.label().to_string(),
            weight: class.weight().ok().map(ToString::to_string),
        }
    }
}

#[derive(Serialize)]
pub struct VertexCycles {
    pub vertex: String,
    pub cycles: Vec<CycleDoc>,
}

#[derive(Serialize)]
pub struct ResultDocument {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<ConfigEcho>,
    pub validation: Validation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub socle: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension_quiver: Option<ExtQuiverDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycles: Option<Vec<VertexCycles>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brenner: Option<BrennerReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<SuiteReport>,
}

impl ResultDocument {
    pub fn new(command: &str, config: Option<ConfigEcho>, validation: Validation) -> Self {
        ResultDocument {
            command: command.to_string(),
            config,
            validation,
            socle: None,
            extension_quiver: None,
            cycles: None,
            brenner: None,
            verification: None,
        }
    }
}

pub fn socle_listing(ext: &HochschildExtension) -> Vec<String> {
    let alg = ext.algebra();
    alg.socle_basis().paths.iter().map(|&p| alg.quiver().path_display(alg.basis_path(p))).collect()
}
