//! Closed-form (co)homology of bubbled Reeb spaces: group ranks, the full
//! cup-product presentation, realizability planners and manifold inference.

mod inference;
mod planner;

use serde::Serialize;
use thiserror::Error;

pub use inference::{manifold_inference, InferenceReport};
pub use planner::{
    random_plan, realize_plan, realize_plan_general, ExpectedConstant, GeneralPlan, GeneralSphere,
    Plan, PlanCoefficient, PlanMode, RandomPlanConfig, RealizedPlan,
};

use crate::coefficients::CoefficientRing;
use crate::graded_algebra::{
    cps_cohomology, BasisElement, GradedAlgebraError, GradedModule, PresentedGradedRing, Provenance,
};
use crate::reeb_descriptor::{
    base_cohomology, base_sphere_classes, validate, ReebDescriptor, Violation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalculusError {
    #[error("invalid descriptor: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("plan constraints violated:\n{}", .0.iter().map(|v| format!("  - {v}")).collect::<Vec<_>>().join("\n"))]
    Plan(Vec<String>),
    #[error("class `{0}` is not sphere-representable and cannot be targeted")]
    NonRepresentable(String),
    #[error("unknown base class `{0}`")]
    UnknownClass(String),
    #[error("the general planner needs rank G_n = 1, got {0}")]
    TopRank(usize),
    #[error("source dimension m = {m} must exceed n = {n}")]
    SourceDimension { m: usize, n: usize },
    #[error("base classes dual to spheres multiply nontrivially: {0}")]
    SphereClassProducts(String),
    #[error(transparent)]
    Algebra(#[from] GradedAlgebraError),
}

fn checked(d: &ReebDescriptor) -> Result<(), CalculusError> {
    let v = validate(d);
    if v.is_empty() {
        Ok(())
    } else {
        Err(CalculusError::Invalid(v))
    }
}

/// Homology of the Reeb space. The base is homotopy equivalent to the wedge
/// of its cores; each generating sphere of dimension `l >= 1` adds a free
/// summand in degree `n - l` and each record one in degree `n`.
pub fn homology_of_descriptor(
    d: &ReebDescriptor,
    ring: CoefficientRing,
) -> Result<GradedModule, CalculusError> {
    checked(d)?;
    let n = d.n;
    let mut ranks = vec![0usize; n + 1];
    ranks[0] = 1;
    for core in &d.base.handles {
        // cores are closed CPS manifolds, free over the integers, so cohomology
        // ranks are homology ranks over any coefficient ring
        let r = cps_cohomology(core, ring)?.ranks();
        for (k, x) in r.iter().enumerate().skip(1) {
            ranks[k] += x;
        }
    }
    for rec in &d.records {
        for (_, s) in rec.positive_spheres() {
            ranks[n - s.dim] += 1;
        }
        ranks[n] += 1;
    }
    Ok(GradedModule::from_free_ranks(&ranks))
}

/// Classes contributed by one bubbling record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecordClasses {
    pub record: usize,
    /// `(sphere index in the record, class id)` for spheres of positive dimension.
    pub beta: Vec<(usize, String)>,
    pub tau: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingPresentationReport {
    pub homology: GradedModule,
    pub ring: PresentedGradedRing,
    pub records: Vec<RecordClasses>,
}

impl RingPresentationReport {
    pub fn index(&self, id: &str) -> usize {
        self.ring
            .index_of(id)
            .unwrap_or_else(|| panic!("no class {id}"))
    }
}

/// Full cup-product presentation. Basis: inclusion images of the base ring,
/// then per record its classes `beta<r>.<j>` (degree `n - dim`) and `tau<r>`
/// (degree `n`). Products: the base table, `nu* . beta = c tau` for every
/// coefficient `c`, everything else zero.
pub fn cohomology_ring_of_descriptor(
    d: &ReebDescriptor,
    ring: CoefficientRing,
) -> Result<RingPresentationReport, CalculusError> {
    checked(d)?;
    let n = d.n;
    let base = base_cohomology(d, ring).expect("validated base");
    if d.base
        .handles
        .iter()
        .all(|h| matches!(h, crate::graded_algebra::ManifoldExpr::Sphere(_)))
        && base.products().next().is_some()
    {
        return Err(CalculusError::SphereClassProducts(format!(
            "{:?}",
            base.table()
        )));
    }
    let mut basis: Vec<BasisElement> = base
        .basis()
        .iter()
        .map(|e| BasisElement {
            provenance: Provenance::Inclusion,
            ..e.clone()
        })
        .collect();
    let mut records = Vec::new();
    for (r, rec) in d.records.iter().enumerate() {
        let mut beta = Vec::new();
        for (j, s) in rec.positive_spheres() {
            let id = format!("beta{}.{}", r + 1, j + 1);
            basis.push(BasisElement {
                id: id.clone(),
                degree: n - s.dim,
                provenance: Provenance::Bubbled {
                    record: r,
                    sphere: j,
                },
                sphere_representable: false,
            });
            beta.push((j, id));
        }
        let tau = format!("tau{}", r + 1);
        basis.push(BasisElement {
            id: tau.clone(),
            degree: n,
            provenance: Provenance::Top { record: r },
            sphere_representable: false,
        });
        records.push(RecordClasses {
            record: r,
            beta,
            tau,
        });
    }
    let mut out = PresentedGradedRing::new(ring, n, basis);
    for ((a, b), coords) in base.products() {
        if a <= b {
            out.set_product(*a, *b, coords.clone());
        }
    }
    let classes = base_sphere_classes(d);
    for (r, rec) in d.records.iter().enumerate() {
        let tau = out.element(&records[r].tau)?;
        for (j, s) in rec.positive_spheres() {
            let beta = out.element(&format!("beta{}.{}", r + 1, j + 1))?;
            for (id, c) in s.targets() {
                let nu = classes[id.index()].ring_index;
                out.set_product(nu, beta, vec![(tau, ring.from_i64(c))]);
            }
        }
    }
    Ok(RingPresentationReport {
        homology: homology_of_descriptor(d, ring)?,
        ring: out,
        records,
    })
}
