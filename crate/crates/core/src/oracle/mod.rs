//! Independent verification of the calculus. Tier 1 assembles an algebraic
//! mapping-cone chain complex for any descriptor; Tier 2 builds an explicit
//! simplicial complex (single-target coefficients, or pinch maps when enabled)
//! whose Alexander-Whitney cup products give ground truth for the ring.
//!
//! Tier 1 shares the homotopy model (wedge, products, cones) with the
//! calculus but computes through kernels and cokernels of assembled matrices
//! rather than direct-sum bookkeeping. Tier 2 is purely geometric.

mod base;
mod chain_model;
mod simplicial_model;
mod verify;

use thiserror::Error;

pub use base::{base_model, BaseModel, NuRep};
pub use chain_model::{chain_model, chain_model_homology};
pub use simplicial_model::{simplicial_model, tier2_obstruction, SimplicialModel, Tier2Options};
pub use verify::{
    verify_descriptor, verify_descriptor_with, MismatchWitness, RingVerdict, Tier2Status,
    TierChoice, VerificationReport, VerifyOptions,
};

use crate::reeb_descriptor::Violation;
use crate::simplicial::SimplicialError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("invalid descriptor: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("{0}")]
    Tier1Only(String),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}
