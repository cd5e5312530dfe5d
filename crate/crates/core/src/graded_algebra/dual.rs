use serde::Serialize;

use super::{GradedAlgebraError, GradedModule, PresentedGradedRing};
use crate::coefficients::{CoefficientRing, Scalar};

/// Coordinate functional dual to a basis element of a free degree piece:
/// one on that element, zero on every other basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualFunctional {
    pub degree: usize,
    pub index: usize,
    pub rank: usize,
}

impl DualFunctional {
    pub fn evaluate(&self, coords: &[Scalar], ring: CoefficientRing) -> Scalar {
        assert_eq!(
            coords.len(),
            self.rank,
            "vector from the wrong degree piece"
        );
        coords
            .get(self.index)
            .cloned()
            .unwrap_or_else(|| ring.zero())
    }
}

/// `index` counts free generators first, then torsion generators.
pub fn dual_basis_functional(
    m: &GradedModule,
    degree: usize,
    index: usize,
) -> Result<DualFunctional, GradedAlgebraError> {
    let piece = m.piece(degree);
    if index >= piece.free_rank + piece.torsion.len() {
        return Err(GradedAlgebraError::UnknownClass(format!(
            "generator {index} in degree {degree}"
        )));
    }
    if index >= piece.free_rank {
        return Err(GradedAlgebraError::TorsionElement { degree, index });
    }
    Ok(DualFunctional {
        degree,
        index,
        rank: piece.free_rank,
    })
}

/// Dual of a named basis class of a presented ring.
pub fn dual_of_class(
    r: &PresentedGradedRing,
    id: &str,
) -> Result<DualFunctional, GradedAlgebraError> {
    let i = r.element(id)?;
    let degree = r.degree(i);
    let same = r.indices_in_degree(degree);
    let index = same
        .iter()
        .position(|&k| k == i)
        .expect("class lies in its own degree");
    dual_basis_functional(&r.module(), degree, index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::ModulePiece;
    use num_bigint::BigInt;

    #[test]
    fn coordinate_projection() {
        let z = CoefficientRing::Integers;
        let m = GradedModule::from_free_ranks(&[1, 2]);
        let f = dual_basis_functional(&m, 1, 0).unwrap();
        assert!(f.evaluate(&[z.one(), z.zero()], z).is_one());
        assert!(f.evaluate(&[z.zero(), z.one()], z).is_zero());
    }

    #[test]
    fn torsion_has_no_dual() {
        let m = GradedModule {
            pieces: vec![
                ModulePiece::free(1),
                ModulePiece {
                    free_rank: 1,
                    torsion: vec![BigInt::from(2)],
                },
            ],
        };
        assert!(dual_basis_functional(&m, 1, 0).is_ok());
        assert!(matches!(
            dual_basis_functional(&m, 1, 1),
            Err(GradedAlgebraError::TorsionElement { .. })
        ));
    }
}
