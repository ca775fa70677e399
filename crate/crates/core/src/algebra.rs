//! The truncated quiver algebra `A = KΔ/R^n` over the rationals.
//!
//! The basis is the set of paths of length `< n` in canonical order, and
//! elements are sparse coefficient vectors over basis indices. Products of
//! basis paths are precomputed.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::quiver::{Path, Quiver, VertexId};
use crate::scalar::Scalar;
use crate::sparse::SparseVec;

/// A quiver together with the truncation length `n`.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub quiver: Quiver,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TruncationTooSmall { n: usize },
    EmptyQuiver,
    Disconnected,
    IsolatedVertex { vertex: String },
    /// An oriented cycle of length `< n` survives in `A`.
    NonzeroCycle { cycle: String, length: usize, n: usize },
    DimensionTooSmall { dim: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TruncationTooSmall { n } => write!(f, "truncation length n = {n} must be at least 2"),
            Violation::EmptyQuiver => f.write_str("quiver has no vertices"),
            Violation::Disconnected => f.write_str("quiver is not connected"),
            Violation::IsolatedVertex { vertex } => write!(f, "vertex {vertex} has no incident arrow"),
            Violation::NonzeroCycle { cycle, length, n } => {
                write!(f, "cycle {cycle} has length {length} < n = {n}, so it is nonzero in A")
            }
            Violation::DimensionTooSmall { dim } => write!(f, "dim A = {dim}, must be greater than 1"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error)]
#[error("invalid algebra: {}", .0.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InvalidAlgebra(pub ValidationReport);

impl AlgebraSpec {
    pub fn new(quiver: Quiver, n: usize) -> Self {
        AlgebraSpec { quiver, n }
    }

    /// Checks every standing hypothesis; problems are returned as data.
    pub fn validate(&self) -> ValidationReport {
        let q = &self.quiver;
        let mut violations = Vec::new();
        if self.n < 2 {
            violations.push(Violation::TruncationTooSmall { n: self.n });
        }
        if q.vertex_count() == 0 {
            violations.push(Violation::EmptyQuiver);
        } else if !q.is_connected() {
            violations.push(Violation::Disconnected);
        }
        for v in q.vertices() {
            if q.arrows_from(v).is_empty() && q.arrows_into(v).is_empty() {
                violations.push(Violation::IsolatedVertex { vertex: q.vertex_name(v).to_string() });
            }
        }
        if let Some(c) = q.shortest_cycle() {
            if c.len() < self.n {
                violations.push(Violation::NonzeroCycle { cycle: q.path_display(c.path()), length: c.len(), n: self.n });
            }
        }
        let dim = self.dimension_estimate();
        if dim <= 1 {
            violations.push(Violation::DimensionTooSmall { dim });
        }
        ValidationReport { violations }
    }

    /// Lower bound on `dim A` that is exact whenever it is at most 1.
    fn dimension_estimate(&self) -> usize {
        match self.n {
            0 => 0,
            1 => self.quiver.vertex_count(),
            _ => self.quiver.vertex_count() + self.quiver.arrow_count(),
        }
    }
}

/// An element of `A`: coefficients over basis indices of [`TruncatedAlgebra::basis`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement(pub(crate) SparseVec);

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(index: usize) -> Self {
        AlgebraElement(SparseVec::unit(index))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn coeff(&self, index: usize) -> Scalar {
        self.0.coeff(index)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.0.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraElement(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        AlgebraElement(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        AlgebraElement(self.0.scale(c))
    }

    pub fn add_term(&mut self, index: usize, c: Scalar) {
        self.0.add_term(index, c)
    }
}

/// Basis indices `p_1, …, p_t` of the bimodule socle, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleBasis {
    pub paths: Vec<usize>,
}

impl SocleBasis {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

/// A validated truncated quiver algebra with its path basis and product table.
#[derive(Clone, Debug)]
pub struct TruncatedAlgebra {
    quiver: Quiver,
    n: usize,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    /// `mul[i * d + j]`: index of `p_i p_j`, if composable and of length `< n`.
    mul: Vec<Option<usize>>,
    /// `strip_prefix[p * d + v]`: the `x` with `p = v x`.
    strip_prefix: Vec<Option<usize>>,
    /// `strip_suffix[p * d + u]`: the `x` with `p = x u`.
    strip_suffix: Vec<Option<usize>>,
}

impl TruncatedAlgebra {
    pub fn new(spec: AlgebraSpec) -> Result<Self, InvalidAlgebra> {
        let report = spec.validate();
        if !report.is_valid() {
            return Err(InvalidAlgebra(report));
        }
        Ok(Self::build(spec.quiver, spec.n))
    }

    fn build(quiver: Quiver, n: usize) -> Self {
        let basis = quiver.enumerate_paths(n - 1, None, None);
        let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let d = basis.len();
        let mut mul = vec![None; d * d];
        let mut strip_prefix = vec![None; d * d];
        let mut strip_suffix = vec![None; d * d];
        for (i, p) in basis.iter().enumerate() {
            for (j, q) in basis.iter().enumerate() {
                if p.target() == q.source() && p.len() + q.len() < n {
                    mul[i * d + j] = index.get(&p.concat_unchecked(q)).copied();
                }
                // p = q x ?
                if q.len() <= p.len() && p.arrows().starts_with(q.arrows()) && p.source() == q.source() {
                    let x = p.subpath(&quiver, q.len(), p.len());
                    if x.source() == q.target() {
                        strip_prefix[i * d + j] = index.get(&x).copied();
                    }
                }
                // p = x q ?
                if q.len() <= p.len() && p.arrows().ends_with(q.arrows()) && p.target() == q.target() {
                    let x = p.subpath(&quiver, 0, p.len() - q.len());
                    if x.target() == q.source() {
                        strip_suffix[i * d + j] = index.get(&x).copied();
                    }
                }
            }
        }
        TruncatedAlgebra { quiver, n, basis, index, mul, strip_prefix, strip_suffix }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn trivial_index(&self, v: VertexId) -> usize {
        self.index[&Path::trivial(v)]
    }

    /// The class of a path: a basis vector, or zero when its length is `>= n`.
    pub fn element_of(&self, p: &Path) -> AlgebraElement {
        match self.index_of(p) {
            Some(i) => AlgebraElement::basis(i),
            None => AlgebraElement::zero(),
        }
    }

    pub fn one(&self) -> AlgebraElement {
        let mut e = AlgebraElement::zero();
        for v in self.quiver.vertices() {
            e.add_term(self.trivial_index(v), num_traits::One::one());
        }
        e
    }

    /// Product of basis elements.
    pub fn mul_basis(&self, i: usize, j: usize) -> Option<usize> {
        self.mul[i * self.dim() + j]
    }

    pub(crate) fn strip_prefix(&self, p: usize, v: usize) -> Option<usize> {
        self.strip_prefix[p * self.dim() + v]
    }

    pub(crate) fn strip_suffix(&self, p: usize, u: usize) -> Option<usize> {
        self.strip_suffix[p * self.dim() + u]
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                if let Some(k) = self.mul_basis(i, j) {
                    out.add_term(k, a * b);
                }
            }
        }
        out
    }

    /// Socle of `A` as a bimodule: the nontrivial basis paths annihilated by
    /// every arrow on both sides, i.e. of length `n - 1`, or with no arrow
    /// into their source and none out of their target.
    pub fn socle_basis(&self) -> SocleBasis {
        let q = &self.quiver;
        let paths = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                !p.is_trivial()
                    && (p.len() == self.n - 1 || (q.arrows_into(p.source()).is_empty() && q.arrows_from(p.target()).is_empty()))
            })
            .map(|(i, _)| i)
            .collect();
        SocleBasis { paths }
    }

    pub fn display_element(&self, x: &AlgebraElement) -> String {
        display_terms(x.terms().map(|(i, c)| (self.quiver.path_display(&self.basis[i]), c)), "")
    }
}

pub(crate) fn display_terms<'a>(terms: impl Iterator<Item = (String, &'a Scalar)>, suffix: &str) -> String {
    let parts: Vec<String> = terms
        .map(|(name, c)| if num_traits::One::is_one(c) { format!("{name}{suffix}") } else { format!("({c})·{name}{suffix}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::quiver::fixtures::example_one;

    pub fn example_one_algebra() -> TruncatedAlgebra {
        TruncatedAlgebra::new(AlgebraSpec::new(example_one(), 3)).unwrap()
    }

    /// 1→2→3→4→1 plus `m` arrows `z_j: 5 → 1`.
    pub fn example_two_quiver(m: usize) -> Quiver {
        let mut q = Quiver::from_parts(
            ["1", "2", "3", "4", "5"],
            [("x1", "1", "2"), ("x2", "2", "3"), ("x3", "3", "4"), ("x4", "4", "1")],
        )
        .unwrap();
        for j in 1..=m {
            q.add_arrow(&format!("z{j}"), "5", "1").unwrap();
        }
        q
    }

    pub fn line_algebra(n: usize) -> TruncatedAlgebra {
        TruncatedAlgebra::new(AlgebraSpec::new(Quiver::from_parts(["1", "2"], [("a", "1", "2")]).unwrap(), n)).unwrap()
    }
}
