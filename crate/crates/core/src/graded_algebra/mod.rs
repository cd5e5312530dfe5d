//! Graded modules and presented graded-commutative rings, including the
//! algebraic cohomology of spheres, products, connected sums and wedges.

mod cps;
mod dual;
mod invariants;
mod module;
mod ring;

use thiserror::Error;

use crate::coefficients::CoefficientRing;

pub use cps::{
    connsum_ring, cps_cohomology, gcps_cohomology, sphere_ring, tensor_ring, wedge_rings, GcpsExpr,
    ManifoldExpr,
};
pub use dual::{dual_basis_functional, dual_of_class, DualFunctional};
pub use invariants::{
    adjoint_pairing_matrix, all_pairing_invariants, compare_invariants, compare_over,
    pairing_invariants, pairing_matrix, PairingInvariant, Verdict, Witness,
};
pub use module::GradedModule;
pub use ring::{BasisElement, PresentedGradedRing, ProductEntry, Provenance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedAlgebraError {
    #[error("sphere of dimension 0 is not allowed here")]
    ZeroSphere,
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(CoefficientRing, CoefficientRing),
    #[error("connected sum needs equal top degrees, got {0} and {1}")]
    TopDegreeMismatch(usize, usize),
    #[error("connected sum needs a free rank-one top piece, got rank {0}")]
    TopNotRankOne(usize),
    #[error("degrees ({p}, {q}) out of range for top degree {top}")]
    DegreeOutOfRange { p: usize, q: usize, top: usize },
    #[error("generator {index} in degree {degree} is torsion and has no dual")]
    TorsionElement { degree: usize, index: usize },
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("ring structure is inconsistent: {}", .0.join("; "))]
    InvalidStructure(Vec<String>),
}
