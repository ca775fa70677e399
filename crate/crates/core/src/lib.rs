//! Hochschild extensions of truncated quiver algebras: the extension quiver,
//! classification of the cycles that survive in the extension, and the
//! Brenner-style counts that bound the degree of the admissible ideal.

pub mod algebra;
pub mod brenner;
pub mod corpus;
pub mod cycles;
pub mod hochschild;
pub mod job;
pub mod partition;
pub mod quiver;
pub mod scalar;
pub mod sparse;
pub mod suite;

pub use algebra::{AlgebraElement, AlgebraSpec, InvalidAlgebra, SocleBasis, TruncatedAlgebra, ValidationReport, Violation};
pub use hochschild::{Cocycle, CocycleError, DualElement, ExtQuiver, ExtensionElement, HochschildExtension};
pub use quiver::{ArrowId, Cycle, Path, Quiver, QuiverError, VertexId};
pub use scalar::Scalar;
