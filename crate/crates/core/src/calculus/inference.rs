use serde::Serialize;

use super::{cohomology_ring_of_descriptor, CalculusError};
use crate::coefficients::CoefficientRing;
use crate::graded_algebra::{BasisElement, GradedModule, PresentedGradedRing};
use crate::reeb_descriptor::ReebDescriptor;

/// What the Reeb space says about an `m`-dimensional source manifold whose
/// fold map has fibres that are disjoint unions of almost-spheres.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InferenceReport {
    pub m: usize,
    pub n: usize,
    /// Every record is S-type or a point record; the base map is special generic.
    pub qualifies: bool,
    pub assumptions: Vec<String>,
    /// The quotient map induces isomorphisms on homotopy, homology and
    /// cohomology groups in degrees `j <= iso_range`.
    pub iso_range: usize,
    pub truncated: GradedModule,
    pub truncated_ring: PresentedGradedRing,
    pub rank_w: usize,
    /// Total rank of the source when `m = 2n`.
    pub rank_m: Option<usize>,
    pub statements: Vec<String>,
}

pub fn manifold_inference(
    d: &ReebDescriptor,
    m: usize,
    ring: CoefficientRing,
) -> Result<InferenceReport, CalculusError> {
    let n = d.n;
    if m <= n {
        return Err(CalculusError::SourceDimension { m, n });
    }
    let rep = cohomology_ring_of_descriptor(d, ring)?;
    let qualifies = d.records.iter().all(|r| r.kind.is_s_type());
    let iso_range = m - n - 1;
    let truncated_ring = truncate(&rep.ring, iso_range);
    let truncated = truncated_ring.module();
    let rank_w: usize = rep.homology.free_ranks().iter().sum();
    // H_{n-1} is free for every descriptor in this family
    let rank_m = (m == 2 * n).then_some(2 * rank_w);
    let mut statements = vec![format!(
        "pi_j, H_j and H^j of the source agree with those of the Reeb space for j <= {iso_range}"
    )];
    statements.push(format!(
        "cohomology ring of the source truncated at degree {iso_range}: {truncated}"
    ));
    if let Some(r) = rank_m {
        statements.push(format!("total rank of H_*(M) = 2 x {rank_w} = {r}"));
    }
    if !qualifies {
        statements
            .push("schedule contains M-type records; the statements above are not licensed".into());
    }
    Ok(InferenceReport {
        m,
        n,
        qualifies,
        assumptions: vec![
            "S-type and point records are taken to create only singular points of index 0 or 1"
                .into(),
            "the base map is special generic, so its singular points have index 0".into(),
        ],
        iso_range,
        truncated,
        truncated_ring,
        rank_w,
        rank_m,
        statements,
    })
}

/// The subring of degrees `<= top`, with products landing above dropped.
fn truncate(r: &PresentedGradedRing, top: usize) -> PresentedGradedRing {
    let keep: Vec<usize> = (0..r.len()).filter(|&i| r.degree(i) <= top).collect();
    let mut pos = vec![usize::MAX; r.len()];
    for (new, &old) in keep.iter().enumerate() {
        pos[old] = new;
    }
    let basis: Vec<BasisElement> = keep.iter().map(|&i| r.basis()[i].clone()).collect();
    let mut out = PresentedGradedRing::new(r.ring(), top, basis);
    for ((a, b), coords) in r.products() {
        if a > b || pos[*a] == usize::MAX || pos[*b] == usize::MAX {
            continue;
        }
        let c = coords
            .iter()
            .filter(|(k, _)| pos[*k] != usize::MAX)
            .map(|(k, v)| (pos[*k], v.clone()))
            .collect();
        out.set_product(pos[*a], pos[*b], c);
    }
    out
}
