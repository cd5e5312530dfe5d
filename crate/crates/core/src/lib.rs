//! Reeb spaces of fold maps built by bubbling operations: a closed-form
//! (co)homology calculus and an independent chain-level oracle that checks it.

pub mod calculus;
pub mod cli;
pub mod coefficients;
pub mod graded_algebra;
pub mod oracle;
pub mod reeb_descriptor;
pub mod simplicial;
