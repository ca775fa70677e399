//! Oriented cycles of the extension quiver: structural classification into
//! elementary, α-revived and zero cycles, supplements, and exhaustive checks
//! of the classification against `Φ`.
//!
//! The classifier never evaluates `Φ`. Agreement between the two is what the
//! verification routines test.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::hochschild::{ArrowKind, ExtensionElement, HochschildExtension};
use crate::quiver::{ArrowId, Cycle, Path, VertexId};
use crate::scalar::{Scalar, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleClass {
    /// `C = δ₂ · y_p · δ₁` with `p*(δ₁δ₂) ≠ 0`.
    Elementary {
        /// Basis index of `p`.
        socle_path: usize,
        delta1: Path,
        delta2: Path,
        weight: Scalar,
    },
    /// `C = x_i ⋯ x_{i+s−1}`, with `i` 1-based.
    AlphaRevived { rotation: usize, weight: Scalar },
    Zero,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("a zero cycle has no weight")]
pub struct ZeroClassWeight;

impl CycleClass {
    pub fn is_zero(&self) -> bool {
        matches!(self, CycleClass::Zero)
    }

    pub fn label(&self) -> char {
        match self {
            CycleClass::Elementary { .. } => 'E',
            CycleClass::AlphaRevived { .. } => 'R',
            CycleClass::Zero => 'Z',
        }
    }

    pub fn weight(&self) -> Result<&Scalar, ZeroClassWeight> {
        match self {
            CycleClass::Elementary { weight, .. } | CycleClass::AlphaRevived { weight, .. } => Ok(weight),
            CycleClass::Zero => Err(ZeroClassWeight),
        }
    }
}

/// Knobs for the classifier. The default is the faithful classifier; turning
/// the weight test off is a deliberate mutation used to exercise the
/// verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifierOptions {
    pub check_weight: bool,
}

impl Default for ClassifierOptions {
    fn default() -> Self {
        ClassifierOptions { check_weight: true }
    }
}

pub fn classify_cycle(ext: &HochschildExtension, c: &Cycle) -> CycleClass {
    classify_cycle_with(ext, c, ClassifierOptions::default())
}

pub fn classify_cycle_with(ext: &HochschildExtension, c: &Cycle, opts: ClassifierOptions) -> CycleClass {
    let eq = ext.ext_quiver();
    let q = ext.quiver();
    let arrows = c.arrows();
    let ys: Vec<usize> = (0..arrows.len()).filter(|&i| eq.is_y(arrows[i])).collect();
    match ys.as_slice() {
        [] => {
            let cocycle = ext.cocycle();
            match cocycle.s() {
                Some(s) if s == arrows.len() => match cocycle.segment_start(arrows) {
                    Some(i) => CycleClass::AlphaRevived {
                        rotation: i + 1,
                        weight: cocycle.k().expect("cocycle mode").clone(),
                    },
                    None => CycleClass::Zero,
                },
                _ => CycleClass::Zero,
            }
        }
        &[j] => {
            let ArrowKind::Socle(p) = eq.kind(arrows[j]) else { unreachable!() };
            let delta2 = c.path().subpath(q, 0, j);
            let delta1 = c.path().subpath(q, j + 1, arrows.len());
            let alg = ext.algebra();
            let product = alg.multiply(&alg.element_of(&delta1), &alg.element_of(&delta2));
            let weight = product.coeff(p);
            if weight.is_zero() && opts.check_weight {
                return CycleClass::Zero;
            }
            CycleClass::Elementary { socle_path: p, delta1, delta2, weight }
        }
        _ => CycleClass::Zero,
    }
}

/// Length beyond which every cycle is zero: elementary cycles have at most
/// `(n − 1) + 1 + (n − 1)` arrows and an α-revived cycle has `s`.
pub fn completeness_bound(ext: &HochschildExtension) -> usize {
    let n = ext.algebra().n();
    (2 * n - 1).max(ext.cocycle().s().unwrap_or(0))
}

/// Whether some extension of this prefix (a path from the origin) could be
/// classified non-zero by a classifier that refines the structural shape.
fn shape_alive(ext: &HochschildExtension, prefix: &[ArrowId]) -> bool {
    let eq = ext.ext_quiver();
    let n = ext.algebra().n();
    let mut ys = 0;
    let (mut before, mut after) = (0, 0);
    for &a in prefix {
        if eq.is_y(a) {
            ys += 1;
        } else if ys == 0 {
            before += 1;
        } else {
            after += 1;
        }
    }
    match ys {
        0 if before < n => true,
        0 => match ext.cocycle().s() {
            Some(s) => before <= s && ext.cocycle().segment_start(prefix).is_some(),
            None => false,
        },
        1 => before < n && after < n,
        _ => false,
    }
}

/// Depth-first walk over closed paths at `h`. `descend` sees every nonempty
/// prefix with its `Φ` image (when tracked) and decides whether that prefix,
/// and everything extending it, is explored.
fn walk_cycles<D, V>(ext: &HochschildExtension, h: VertexId, max_len: usize, track_phi: bool, descend: D, visit: V)
where
    D: Fn(&[ArrowId], Option<&ExtensionElement>) -> bool,
    V: FnMut(&[ArrowId], Option<&ExtensionElement>),
{
    struct Ctx<'a, D, V> {
        ext: &'a HochschildExtension,
        h: VertexId,
        max_len: usize,
        images: Option<Vec<ExtensionElement>>,
        descend: D,
        visit: V,
    }
    fn go<D, V>(ctx: &mut Ctx<'_, D, V>, at: VertexId, stack: &mut Vec<ArrowId>, phi: Option<&ExtensionElement>)
    where
        D: Fn(&[ArrowId], Option<&ExtensionElement>) -> bool,
        V: FnMut(&[ArrowId], Option<&ExtensionElement>),
    {
        if stack.len() == ctx.max_len {
            return;
        }
        let q = ctx.ext.quiver();
        for &a in q.arrows_from(at) {
            stack.push(a);
            let next = match (&ctx.images, phi) {
                (Some(images), Some(phi)) => Some(ctx.ext.ext_multiply(phi, &images[a.0])),
                _ => None,
            };
            if (ctx.descend)(stack, next.as_ref()) {
                let t = q.target(a);
                if t == ctx.h {
                    (ctx.visit)(stack, next.as_ref());
                }
                go(ctx, t, stack, next.as_ref());
            }
            stack.pop();
        }
    }
    let images = track_phi.then(|| ext.quiver().arrow_ids().map(|a| ext.phi_arrow(a)).collect());
    let start = track_phi.then(|| ext.phi_vertex(h));
    let mut ctx = Ctx { ext, h, max_len, images, descend, visit };
    go(&mut ctx, h, &mut Vec::new(), start.as_ref());
}

fn cycle_of(ext: &HochschildExtension, h: VertexId, arrows: &[ArrowId]) -> Cycle {
    let q = ext.quiver();
    let path = Path::from_arrows(q, arrows.to_vec()).expect("walk follows arrows");
    debug_assert_eq!(path.source(), h);
    Cycle::new(path).expect("walk returns to its origin")
}

/// `𝒞_h`: every non-zero cycle at `h`, in canonical path order.
pub fn nonzero_cycles_at(ext: &HochschildExtension, h: VertexId) -> Vec<(Cycle, CycleClass)> {
    nonzero_cycles_at_with(ext, h, ClassifierOptions::default())
}

pub fn nonzero_cycles_at_with(ext: &HochschildExtension, h: VertexId, opts: ClassifierOptions) -> Vec<(Cycle, CycleClass)> {
    let mut found = Vec::new();
    walk_cycles(
        ext,
        h,
        completeness_bound(ext),
        false,
        |prefix, _| shape_alive(ext, prefix),
        |arrows, _| {
            let c = cycle_of(ext, h, arrows);
            let class = classify_cycle_with(ext, &c, opts);
            if !class.is_zero() {
                found.push((c, class));
            }
        },
    );
    let q = ext.quiver();
    found.sort_by(|(a, _), (b, _)| q.canonical_cmp(a.path(), b.path()));
    found
}

/// How much of the cycle space the verifier walks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Enumeration {
    /// Every cycle up to the bound.
    Full,
    /// Skips subtrees whose prefix already has `Φ = 0` and cannot be completed
    /// to a non-zero cycle by shape. Both sides of the comparison are then
    /// zero on the whole subtree, so no mismatch can be missed.
    ZeroPruned,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub cycle: String,
    pub phi_nonzero: bool,
    pub class: char,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} classified {} but Φ is {}", self.cycle, self.class, if self.phi_nonzero { "nonzero" } else { "zero" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub bound: usize,
    pub cycles_checked: usize,
    pub nonzero: usize,
    /// Non-zero cycles longer than the completeness bound.
    pub nonzero_beyond_bound: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.nonzero_beyond_bound == 0
    }
}

/// Compares `Φ(C) ≠ 0` with the structural class for every cycle at every
/// vertex up to `bound` arrows.
pub fn verify_nonzero_iff_classified(ext: &HochschildExtension, bound: usize, mode: Enumeration) -> ClassificationReport {
    verify_nonzero_iff_classified_with(ext, bound, mode, ClassifierOptions::default())
}

pub fn verify_nonzero_iff_classified_with(
    ext: &HochschildExtension,
    bound: usize,
    mode: Enumeration,
    opts: ClassifierOptions,
) -> ClassificationReport {
    let q = ext.quiver();
    let limit = completeness_bound(ext);
    let mut report = ClassificationReport { bound, cycles_checked: 0, nonzero: 0, nonzero_beyond_bound: 0, mismatches: vec![] };
    for h in q.vertices() {
        walk_cycles(
            ext,
            h,
            bound,
            true,
            |prefix, phi| match mode {
                Enumeration::Full => true,
                Enumeration::ZeroPruned => !phi.expect("tracked").is_zero() || shape_alive(ext, prefix),
            },
            |arrows, phi| {
                report.cycles_checked += 1;
                let c = cycle_of(ext, h, arrows);
                let class = classify_cycle_with(ext, &c, opts);
                let phi_nonzero = !phi.expect("tracked").is_zero();
                if phi_nonzero {
                    report.nonzero += 1;
                    if arrows.len() > limit {
                        report.nonzero_beyond_bound += 1;
                    }
                }
                if phi_nonzero == class.is_zero() {
                    report.mismatches.push(Mismatch { cycle: q.path_display(c.path()), phi_nonzero, class: class.label() });
                }
            },
        );
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub pairs_checked: usize,
    pub zero_cycles_checked: usize,
    /// Offending elements, displayed as `w(C′)·C − w(C)·C′` or a single cycle.
    pub violations: Vec<String>,
}

impl KernelReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `Φ(w(C′)·C − w(C)·C′) = 0` for all pairs in `𝒞_h`, and `Φ(Z) = 0` for every
/// cycle `Z` at `h` of length at most the completeness bound classified zero.
pub fn verify_kernel_generators(ext: &HochschildExtension, h: VertexId) -> KernelReport {
    let q = ext.quiver();
    let cycles = nonzero_cycles_at(ext, h);
    let images: Vec<ExtensionElement> = cycles.iter().map(|(c, _)| ext.phi(c.path())).collect();
    let mut report = KernelReport { pairs_checked: 0, zero_cycles_checked: 0, violations: vec![] };
    for i in 0..cycles.len() {
        for j in i..cycles.len() {
            report.pairs_checked += 1;
            let wi = cycles[i].1.weight().expect("non-zero class");
            let wj = cycles[j].1.weight().expect("non-zero class");
            let combo = images[i].scale(wj).sub(&images[j].scale(wi));
            if !combo.is_zero() {
                report.violations.push(format!(
                    "({})·{} − ({})·{}",
                    wj,
                    q.path_display(cycles[i].0.path()),
                    wi,
                    q.path_display(cycles[j].0.path())
                ));
            }
        }
    }
    walk_cycles(
        ext,
        h,
        completeness_bound(ext),
        true,
        |prefix, phi| !phi.expect("tracked").is_zero() || shape_alive(ext, prefix),
        |arrows, phi| {
            let c = cycle_of(ext, h, arrows);
            if classify_cycle(ext, &c).is_zero() {
                report.zero_cycles_checked += 1;
                if !phi.expect("tracked").is_zero() {
                    report.violations.push(q.path_display(c.path()));
                }
            }
        },
    );
    report
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SupplementError {
    #[error("the trivial path has no supplement")]
    TrivialSubpath,
    #[error("{0} is not a contiguous sub-path of the cycle")]
    NotContained(String),
}

/// The arrows of `c` that remain after removing the sub-path `q`, read from
/// `t(q)` around to `s(q)`; the trivial path `e_{s(q)}` when `q` is closed.
/// `q` may wrap past the cycle's origin.
pub fn supplement(ext: &HochschildExtension, q: &Path, c: &Cycle) -> Result<Path, SupplementError> {
    let quiver = ext.quiver();
    if q.is_trivial() {
        return Err(SupplementError::TrivialSubpath);
    }
    let (qa, ca) = (q.arrows(), c.arrows());
    let len = ca.len();
    let start = (qa.len() <= len)
        .then(|| (0..len).find(|&j| qa.iter().enumerate().all(|(t, &a)| ca[(j + t) % len] == a)))
        .flatten()
        .ok_or_else(|| SupplementError::NotContained(quiver.path_display(q)))?;
    if q.is_closed() {
        return Ok(Path::trivial(q.source()));
    }
    let rest = (qa.len()..len).map(|t| ca[(start + t) % len]).collect();
    Ok(Path::from_arrows(quiver, rest).expect("segment of a cycle composes"))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContainError {
    #[error("Φ({0}) = 0, so no non-zero cycle contains it")]
    ZeroImage(String),
}

/// A non-zero cycle `γ₁ w γ₂` (anchored at `s(w)`) containing `w`.
pub fn containing_nonzero_cycle(ext: &HochschildExtension, w: &Path) -> Result<Cycle, ContainError> {
    let q = ext.quiver();
    let image = ext.phi(w);
    if image.is_zero() {
        return Err(ContainError::ZeroImage(q.path_display(w)));
    }
    let alg = ext.algebra();
    let eq = ext.ext_quiver();
    let closed = |p: Path| Cycle::new(p).expect("constructed closed");
    if eq.y_count(w) > 0 {
        // Φ(w) = (0, c·u*) and wu closes up.
        let (u, _) = image.f.terms().next().expect("nonzero dual part");
        debug_assert_eq!(image.f.terms().count(), 1);
        return Ok(closed(w.concat_unchecked(alg.basis_path(u))));
    }
    let n = alg.n();
    if w.len() < n {
        // extend w inside A to a socle path δ₁ w δ₂, then close with y
        let mut arrows = w.arrows().to_vec();
        let (mut src, mut tgt) = (w.source(), w.target());
        let mut prefix = Vec::new();
        while arrows.len() + prefix.len() < n - 1 {
            if let Some(&a) = alg.quiver().arrows_from(tgt).first() {
                arrows.push(a);
                tgt = alg.quiver().target(a);
            } else if let Some(&a) = alg.quiver().arrows_into(src).first() {
                prefix.push(a);
                src = alg.quiver().source(a);
            } else {
                break;
            }
        }
        prefix.reverse();
        let delta2 = Path::from_raw(w.source(), tgt, arrows);
        let delta1 = Path::from_raw(src, w.source(), prefix);
        let p = alg.index_of(&delta1.concat_unchecked(&delta2)).expect("length below n");
        let y = eq.y_arrow(p).expect("maximal path lies in the socle");
        let cycle = delta2.concat_unchecked(&Path::arrow(q, y)).concat_unchecked(&delta1);
        return Ok(closed(cycle));
    }
    // n ≤ len(w) ≤ s: a segment of γ, completed to a rotation
    let cocycle = ext.cocycle();
    let gamma = cocycle.gamma().expect("long Δ-path with nonzero image needs α");
    let s = gamma.len();
    let i = cocycle.segment_start(w.arrows()).expect("nonzero long path is a γ-segment");
    let rest: Vec<ArrowId> = (w.len()..s).map(|t| gamma[(i + t) % s]).collect();
    let tail = if rest.is_empty() { Path::trivial(w.target()) } else { Path::from_arrows(q, rest).expect("γ composes") };
    Ok(closed(w.concat_unchecked(&tail)))
}
