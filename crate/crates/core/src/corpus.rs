//! Seeded random instances and a parallel runner that verifies each one.
//!
//! An instance is a simple cycle `γ` of length `s ∈ [n + 1, 2n − 2]` plus
//! decoration: a spanning attachment of the remaining vertices and random
//! extra arrows, each kept only if the girth stays at least `n`.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::job::{Job, JobDocument, Mode};
use crate::quiver::Quiver;
use crate::scalar::ratio;
use crate::suite::{run_suite, SuiteOptions};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusConfig {
    pub seed: u64,
    pub instances: usize,
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub truncations: Vec<usize>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig { seed: 42, instances: 100, max_vertices: 8, max_arrows: 14, truncations: vec![3, 4] }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("no truncation degree given")]
    NoTruncation,
    #[error("n = {0} leaves no room for a cycle of length in [n + 1, 2n − 2]")]
    NoCycleLength(usize),
    #[error("n = {n} needs at least {needed} vertices and arrows; limits are {vertices} and {arrows}")]
    LimitsTooSmall { n: usize, needed: usize, vertices: usize, arrows: usize },
}

impl CorpusConfig {
    pub fn check(&self) -> Result<(), CorpusError> {
        if self.truncations.is_empty() {
            return Err(CorpusError::NoTruncation);
        }
        for &n in &self.truncations {
            if n < 3 {
                return Err(CorpusError::NoCycleLength(n));
            }
            let needed = n + 1;
            if self.max_vertices < needed || self.max_arrows < needed {
                return Err(CorpusError::LimitsTooSmall {
                    n,
                    needed,
                    vertices: self.max_vertices,
                    arrows: self.max_arrows,
                });
            }
        }
        Ok(())
    }
}

fn girth_at_least(vertices: &[String], arrows: &[(String, String, String)], n: usize) -> bool {
    Quiver::from_parts(vertices.iter().map(String::as_str), arrows.iter().map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str())))
        .expect("generated names are unique")
        .girth()
        .at_least(n)
}

/// Instance `index` of the corpus; depends only on the seed and the index.
pub fn generate_instance(config: &CorpusConfig, index: usize) -> Job {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    let n = *config.truncations.choose(&mut rng).expect("checked nonempty");
    let s = rng.gen_range(n + 1..=2 * n - 2);
    let v = rng.gen_range(s..=config.max_vertices.min(config.max_arrows).max(s));
    let vertices: Vec<String> = (1..=v).map(|i| i.to_string()).collect();
    let mut order = vertices.clone();
    order.shuffle(&mut rng);

    let mut arrows: Vec<(String, String, String)> = Vec::new();
    for i in 0..s {
        arrows.push((format!("x{}", i + 1), order[i].clone(), order[(i + 1) % s].clone()));
    }
    let name = |arrows: &Vec<(String, String, String)>| format!("a{}", arrows.len() - s + 1);
    // attach each remaining vertex to an earlier one; trees add no cycles
    for i in s..v {
        let other = order[rng.gen_range(0..i)].clone();
        let (src, tgt) = if rng.gen_bool(0.5) { (order[i].clone(), other) } else { (other, order[i].clone()) };
        arrows.push((name(&arrows), src, tgt));
    }
    let target = rng.gen_range(arrows.len()..=config.max_arrows.max(arrows.len()));
    let mut attempts = 0;
    while arrows.len() < target && attempts < 200 {
        attempts += 1;
        let src = rng.gen_range(0..v);
        let tgt = rng.gen_range(0..v);
        if src == tgt {
            continue;
        }
        arrows.push((name(&arrows), vertices[src].clone(), vertices[tgt].clone()));
        if !girth_at_least(&vertices, &arrows, n) {
            arrows.pop();
        }
    }
    let k = loop {
        let num: i64 = rng.gen_range(-9..=9);
        if num != 0 {
            break ratio(num, rng.gen_range(1..=5));
        }
    };
    let quiver = Quiver::from_parts(vertices.iter().map(String::as_str), arrows.iter().map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str())))
        .expect("generated names are unique");
    Job { quiver, n, mode: Mode::Cocycle, gamma: Some((1..=s).map(|i| format!("x{i}")).collect()), k }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceOutcome {
    pub index: usize,
    pub n: usize,
    pub s: usize,
    pub vertices: usize,
    pub arrows: usize,
    pub extension_arrows: usize,
    pub passed: bool,
    pub failed_checks: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    /// The smallest failing sub-instance found by greedy arrow removal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimized: Option<JobDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub config: CorpusConfig,
    pub passed: usize,
    pub failed: usize,
    pub instances: Vec<InstanceOutcome>,
}

impl CorpusSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn fails(job: &Job, opts: SuiteOptions) -> bool {
    match job.build() {
        Ok(ext) => !run_suite(&ext, opts).passed(),
        Err(_) => false,
    }
}

/// Removes decoration arrows one at a time while the instance stays valid and
/// keeps failing.
pub fn minimize(job: &Job, opts: SuiteOptions) -> Job {
    let gamma: Vec<String> = job.gamma.clone().unwrap_or_default();
    let mut current = job.clone();
    loop {
        let q = &current.quiver;
        let candidate = q.arrows().iter().map(|a| a.name.clone()).filter(|a| !gamma.contains(a)).find_map(|drop| {
            let vertices: Vec<&str> = q.vertices().map(|v| q.vertex_name(v)).collect();
            let arrows = q
                .arrows()
                .iter()
                .filter(|a| a.name != drop)
                .map(|a| (a.name.as_str(), q.vertex_name(a.src), q.vertex_name(a.tgt)));
            let smaller = Job { quiver: Quiver::from_parts(vertices, arrows).ok()?, ..current.clone() };
            fails(&smaller, opts).then_some(smaller)
        });
        match candidate {
            Some(smaller) => current = smaller,
            None => return current,
        }
    }
}

pub fn run_instance(config: &CorpusConfig, index: usize, opts: SuiteOptions) -> InstanceOutcome {
    let job = generate_instance(config, index);
    let s = job.gamma.as_ref().map_or(0, Vec::len);
    let mut outcome = InstanceOutcome {
        index,
        n: job.n,
        s,
        vertices: job.quiver.vertex_count(),
        arrows: job.quiver.arrow_count(),
        extension_arrows: 0,
        passed: false,
        failed_checks: vec![],
        counterexample: None,
        minimized: None,
    };
    match job.build() {
        Ok(ext) => {
            outcome.extension_arrows = ext.quiver().arrow_count();
            let report = run_suite(&ext, opts);
            outcome.passed = report.passed();
            outcome.failed_checks = report.failures().map(|c| c.name.clone()).collect();
            outcome.counterexample = report.failures().find_map(|c| c.counterexample.clone());
            if !outcome.passed {
                outcome.minimized = Some(minimize(&job, opts).to_document());
            }
        }
        Err(e) => {
            outcome.failed_checks = vec!["generator-validity".into()];
            outcome.counterexample = Some(e.to_string());
            outcome.minimized = Some(job.to_document());
        }
    }
    outcome
}

/// Runs every instance on the current rayon pool; the summary is ordered by
/// instance index and independent of scheduling.
pub fn run_corpus(config: &CorpusConfig, opts: SuiteOptions) -> Result<CorpusSummary, CorpusError> {
    if config.instances > 0 {
        config.check()?;
    }
    let instances: Vec<InstanceOutcome> =
        (0..config.instances).into_par_iter().map(|i| run_instance(config, i, opts)).collect();
    let passed = instances.iter().filter(|o| o.passed).count();
    Ok(CorpusSummary { config: config.clone(), passed, failed: instances.len() - passed, instances })
}

/// A rayon pool sized by `HC_THREADS` when set, otherwise rayon's default.
pub fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var("HC_THREADS").ok().and_then(|t| t.parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}
