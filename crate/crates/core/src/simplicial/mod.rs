//! Ordered simplicial complexes, simplicial maps, integral chain complexes,
//! homology and Alexander-Whitney cup products.

mod chain;
mod complex;
mod constructions;
mod cup;
mod maps;
mod mv;

use thiserror::Error;

pub use chain::{sparse_cochain, ChainComplex, CohomologyBasis};
pub use complex::{Simplex, SimplicialComplex};
pub use constructions::{
    barycentric_subdivision, connected_sum_at, connected_sum_complex, glue_along, mapping_cylinder,
    product_complex, product_vertex, simplex_complex, sphere_complex, stellar_subdivide,
    suspension, wedge_complex, Combined,
};
pub use cup::{cup_cochains, cup_ring_of_complex, homology_of_complex, CupRing};
pub use maps::{
    degree_map, fundamental_cycle, multiple_of, push_chain, sphere_to_wedge_map, SimplicialMap,
    SphereMap,
};
pub use mv::{mayer_vietoris, MayerVietoris, MvDegree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),
    #[error("no matching facet pair for a connected sum")]
    NoMatchingFacet,
    #[error("dimension mismatch: expected {expected}, got {left} and {right}")]
    DimensionMismatch {
        expected: usize,
        left: usize,
        right: usize,
    },
    #[error("subcomplexes are not isomorphic: {0}")]
    NotIsomorphic(String),
    #[error("boundary of boundary is nonzero at degree {degree}, generator {generator}")]
    NotAChainComplex { degree: usize, generator: usize },
    #[error("degree check failed: expected {expected:?}, got {got:?}")]
    DegreeCheckFailed { expected: Vec<i64>, got: Vec<i64> },
    #[error("integral cohomology has torsion in degree {degree}; use field coefficients")]
    TorsionUseField { degree: usize },
}
