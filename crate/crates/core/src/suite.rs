//! The full battery of checks run by `verify`: cocycle identity,
//! multiplicativity of `Φ`, the non-zero cycle characterization, kernel
//! generators, and the per-vertex count identities.

use serde::{Deserialize, Serialize};

use crate::brenner::{vertex_report_with, BrennerReport};
use crate::cycles::{
    completeness_bound, nonzero_cycles_at, verify_kernel_generators, verify_nonzero_iff_classified_with,
    ClassifierOptions, Enumeration,
};
use crate::hochschild::{verify_cocycle_identity_with, DualElement, ExtensionElement, HochschildExtension, TripleCheck};
use crate::quiver::ArrowId;
use crate::sparse::SparseVec;

/// Deliberate defects for exercising the checks themselves.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Injection {
    #[default]
    None,
    /// Classify one-y candidates as elementary without the weight test.
    SkipWeightTest,
    /// Drop the full-cycle case from `α` in the cocycle identity check.
    DropFullCycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Longest cycle compared against `Φ`; defaults to the completeness bound + 2.
    pub cycle_bound: Option<usize>,
    pub enumeration: Enumeration,
    /// Longest path whose splits are checked for multiplicativity; defaults to `2n`.
    pub product_bound: Option<usize>,
    pub injection: Injection,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { cycle_bound: None, enumeration: Enumeration::ZeroPruned, product_bound: None, injection: Injection::None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    fn new(name: &str, checked: usize, counterexample: Option<String>) -> Self {
        CheckOutcome { name: name.to_string(), passed: counterexample.is_none(), checked, counterexample }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckOutcome>,
    pub brenner: BrennerReport,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    pub splits_checked: usize,
    pub violation: Option<String>,
}

/// `Φ(pq) = Φ(p)Φ(q)` for every path `r` of length at most `bound` and every
/// split `r = pq`, including the splits with a trivial factor.
///
/// Paths are walked depth first. Alongside the path the walk keeps `Φ` of each
/// of its suffixes and of each prefix, so every split costs one product.
///
/// With [`Enumeration::ZeroPruned`] a subtree is skipped once `Φ(r) = 0` and
/// every split of `r` has a zero side. Each split of an extension `rw` then
/// has a zero side too: a zero prefix stays zero, and a zero `Φ(r[i..])` makes
/// `Φ(r[i..]w)` zero because evaluation runs left to right.
pub fn verify_phi_multiplicative(ext: &HochschildExtension, bound: usize, enumeration: Enumeration) -> ProductCheck {
    struct Walk<'a> {
        ext: &'a HochschildExtension,
        images: Vec<ExtensionElement>,
        bound: usize,
        path: Vec<ArrowId>,
        /// `prefixes[i] = Φ(r[..i])`, starting with the trivial path.
        prefixes: Vec<ExtensionElement>,
        /// `suffixes[i] = Φ(r[i..])` for `i < len(r)`.
        suffixes: Vec<ExtensionElement>,
        saved: Vec<Vec<ExtensionElement>>,
        prune: bool,
        splits: usize,
        violation: Option<String>,
    }
    impl Walk<'_> {
        fn settled(&self) -> bool {
            self.prefixes.last().expect("trivial prefix").is_zero()
                && (1..self.path.len()).all(|i| self.prefixes[i].is_zero() || self.suffixes[i].is_zero())
        }

        fn go(&mut self) {
            if self.path.len() == self.bound || self.violation.is_some() || (self.prune && self.settled()) {
                return;
            }
            let q = self.ext.quiver();
            let at = q.target(*self.path.last().expect("walk starts at an arrow"));
            for &a in q.arrows_from(at) {
                self.push(a);
                self.go();
                self.pop();
                if self.violation.is_some() {
                    return;
                }
            }
        }

        fn push(&mut self, a: ArrowId) {
            let image = &self.images[a.0];
            self.saved.push(self.suffixes.clone());
            for f in &mut self.suffixes {
                *f = self.ext.ext_multiply(f, image);
            }
            self.suffixes.push(image.clone());
            let whole = self.ext.ext_multiply(self.prefixes.last().expect("trivial prefix"), image);
            self.path.push(a);
            let tgt = self.ext.phi_vertex(self.ext.quiver().target(a));
            self.splits += 2;
            if self.ext.ext_multiply(&self.prefixes[0], &whole) != whole || self.ext.ext_multiply(&whole, &tgt) != whole {
                self.violation = Some(format!("trivial factor of {}", path_text(self.ext, &self.path)));
            }
            for i in 1..self.path.len() {
                self.splits += 1;
                let product = self.ext.ext_multiply(&self.prefixes[i], &self.suffixes[i]);
                if product != whole && self.violation.is_none() {
                    self.violation = Some(format!(
                        "Φ({}) = {} but the split after {i} arrows gives {}",
                        path_text(self.ext, &self.path),
                        self.ext.display_element(&whole),
                        self.ext.display_element(&product)
                    ));
                }
            }
            self.prefixes.push(whole);
        }

        fn pop(&mut self) {
            self.path.pop();
            self.prefixes.pop();
            self.suffixes = self.saved.pop().expect("pushed before");
        }
    }
    let q = ext.quiver();
    let images = q.arrow_ids().map(|a| ext.phi_arrow(a)).collect();
    let mut walk = Walk {
        ext,
        images,
        bound,
        path: vec![],
        prefixes: vec![],
        suffixes: vec![],
        saved: vec![],
        prune: enumeration == Enumeration::ZeroPruned,
        splits: 0,
        violation: None,
    };
    if bound > 0 {
        for a in q.arrow_ids() {
            walk.prefixes.push(ext.phi_vertex(q.source(a)));
            walk.push(a);
            walk.go();
            walk.pop();
            walk.prefixes.clear();
            if walk.violation.is_some() {
                break;
            }
        }
    }
    ProductCheck { splits_checked: walk.splits, violation: walk.violation }
}

fn path_text(ext: &HochschildExtension, arrows: &[ArrowId]) -> String {
    arrows.iter().map(|&a| ext.quiver().arrow_name(a)).collect::<Vec<_>>().join("·")
}

fn cocycle_check(ext: &HochschildExtension, injection: Injection) -> TripleCheck {
    let alg = ext.algebra();
    if injection != Injection::DropFullCycle {
        return ext.verify_cocycle_identity();
    }
    verify_cocycle_identity_with(alg, |i, j| match ext.cocycle().alpha_basis(alg, i, j) {
        Some((p, c)) if !alg.basis_path(p).is_trivial() => DualElement(SparseVec::term(p, c)),
        _ => DualElement::zero(),
    })
}

pub fn run_suite(ext: &HochschildExtension, opts: SuiteOptions) -> SuiteReport {
    let q = ext.quiver();
    let base = ext.algebra().quiver();
    let n = ext.algebra().n();
    let mut checks = Vec::new();

    let cocycle = cocycle_check(ext, opts.injection);
    let witness = cocycle.violation.as_ref().map(|(a, b, c, defect)| {
        let alg = ext.algebra();
        let show = |i: usize| base.path_display(alg.basis_path(i));
        format!("({}, {}, {}) gives {defect}", show(*a), show(*b), show(*c))
    });
    checks.push(CheckOutcome::new("cocycle-identity", cocycle.triples_checked, witness));

    let product = verify_phi_multiplicative(ext, opts.product_bound.unwrap_or(2 * n), opts.enumeration);
    checks.push(CheckOutcome::new("phi-multiplicative", product.splits_checked, product.violation));

    let classifier = ClassifierOptions { check_weight: opts.injection != Injection::SkipWeightTest };
    let bound = opts.cycle_bound.unwrap_or(completeness_bound(ext) + 2);
    let classified = verify_nonzero_iff_classified_with(ext, bound, opts.enumeration, classifier);
    let witness = classified
        .mismatches
        .first()
        .map(ToString::to_string)
        .or_else(|| (classified.nonzero_beyond_bound > 0).then(|| "non-zero cycle beyond the completeness bound".into()));
    checks.push(CheckOutcome::new("nonzero-iff-classified", classified.cycles_checked, witness));

    let mut kernel_checked = 0;
    let mut kernel_witness = None;
    let mut rows = Vec::new();
    for h in q.vertices() {
        let k = verify_kernel_generators(ext, h);
        kernel_checked += k.pairs_checked + k.zero_cycles_checked;
        if kernel_witness.is_none() {
            kernel_witness = k.violations.first().cloned();
        }
        rows.push(vertex_report_with(ext, h, &nonzero_cycles_at(ext, h)));
    }
    checks.push(CheckOutcome::new("kernel-generators", kernel_checked, kernel_witness));

    let first_row = |pred: &dyn Fn(&crate::brenner::VertexReport) -> bool, what: &dyn Fn(&crate::brenner::VertexReport) -> String| {
        rows.iter().find(|r| !pred(r)).map(what)
    };
    let count = rows.len();
    checks.push(CheckOutcome::new(
        "class-counts-equal",
        count,
        first_row(&|r| r.counts_agree, &|r| format!("vertex {}: {} cycle classes, {} arrow classes", r.vertex, r.card_c, r.card_a)),
    ));
    checks.push(CheckOutcome::new(
        "oracle-agrees",
        count,
        first_row(&|r| r.oracle_agrees && r.middle_term_projective_summands == 0, &|r| {
            format!("vertex {}: oracle (N, n) = ({}, {}), classes {}", r.vertex, r.oracle_max_total, r.oracle_min_blocks, r.card_c)
        }),
    ));
    checks.push(CheckOutcome::new(
        "arrow-partners",
        count,
        first_row(&|r| r.partners_exist && r.diagnostic.is_none(), &|r| {
            r.diagnostic.clone().unwrap_or_else(|| format!("vertex {}: an in-arrow has no nonzero product", r.vertex))
        }),
    ));
    checks.push(CheckOutcome::new(
        "single-class-interior",
        count,
        first_row(&|r| !r.single_class_expected || r.card_c == 1, &|r| {
            format!("vertex {} is neither sink nor source but has {} classes", r.vertex, r.card_c)
        }),
    ));

    SuiteReport { checks, brenner: BrennerReport { vertices: rows } }
}
