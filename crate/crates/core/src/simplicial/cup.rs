use super::chain::{ChainComplex, CohomologyBasis};
use super::{SimplicialComplex, SimplicialError};
use crate::coefficients::{CoefficientRing, Scalar};
use crate::graded_algebra::{BasisElement, GradedModule, PresentedGradedRing};

pub fn homology_of_complex(k: &SimplicialComplex, ring: CoefficientRing) -> GradedModule {
    ChainComplex::of_complex(k).homology(ring)
}

/// Cohomology ring with the chosen cocycle representatives.
#[derive(Clone, Debug)]
pub struct CupRing {
    pub ring: PresentedGradedRing,
    pub bases: Vec<CohomologyBasis>,
}

/// Alexander-Whitney cup product of cochains on an ordered complex:
/// `(a ∪ b)(σ) = a(front p-face) * b(back q-face)`.
pub fn cup_cochains(
    k: &SimplicialComplex,
    p: usize,
    a: &[Scalar],
    q: usize,
    b: &[Scalar],
    ring: CoefficientRing,
) -> Vec<Scalar> {
    k.simplices(p + q)
        .iter()
        .map(|s| {
            let fa = &a[k.index_of(&s[..=p]).expect("front face")];
            if fa.is_zero() {
                return ring.zero();
            }
            let fb = &b[k.index_of(&s[p..]).expect("back face")];
            fa * fb
        })
        .collect()
}

/// Cohomology ring of `k` from simplicial cochains. Over the integers every
/// cohomology group up to the dimension must be free.
pub fn cup_ring_of_complex(
    k: &SimplicialComplex,
    ring: CoefficientRing,
) -> Result<CupRing, SimplicialError> {
    let chains = ChainComplex::of_complex(k);
    let top = k.dim();
    let bases: Vec<CohomologyBasis> = (0..=top)
        .map(|d| chains.cohomology_basis(d, ring))
        .collect();
    for b in &bases {
        if !b.torsion.is_empty() {
            return Err(SimplicialError::TorsionUseField { degree: b.degree });
        }
    }
    let mut basis = Vec::new();
    let mut offset = vec![0usize; top + 2];
    for d in 1..=top {
        offset[d] = basis.len();
        for i in 0..bases[d].rank() {
            basis.push(BasisElement::new(format!("h{d}.{i}"), d, false));
        }
    }
    offset[top + 1] = basis.len();
    let mut out = PresentedGradedRing::new(ring, top, basis);
    let reps: Vec<Vec<Vec<Scalar>>> = bases
        .iter()
        .map(|b| (0..b.rank()).map(|i| b.rep_dense(i)).collect())
        .collect();
    for p in 1..=top {
        for q in p..=top - p {
            if p + q > top {
                continue;
            }
            for i in 0..bases[p].rank() {
                for j in 0..bases[q].rank() {
                    if p == q && j < i {
                        continue;
                    }
                    let c = cup_cochains(k, p, &reps[p][i], q, &reps[q][j], ring);
                    let coords = bases[p + q].coordinates(&c);
                    let entries = coords
                        .into_iter()
                        .enumerate()
                        .map(|(t, v)| (offset[p + q] + t, v))
                        .collect();
                    out.set_product(offset[p] + i, offset[q] + j, entries);
                }
            }
        }
    }
    Ok(CupRing { ring: out, bases })
}
