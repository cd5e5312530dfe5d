//! Exact coefficient rings and the linear algebra built on them.

mod field;
pub(crate) mod matrix;
mod scalar;
pub(crate) mod smith;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

pub use field::{field_reduce, FieldReduction};
pub use matrix::ExactMatrix;
pub use scalar::{CoefficientRing, Prime, Scalar};
pub use smith::{elementary_divisors, rank, smith_normal_form, SmithForm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoefficientError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown coefficient ring `{0}`")]
    UnknownRing(String),
    #[error("operation requires a field, got {0}")]
    NotAField(CoefficientRing),
}

/// A finitely generated module over the coefficient ring: `R^free ⊕ ⊕ R/(t)`.
/// Torsion is only ever nonempty over the integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ModulePiece {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

impl ModulePiece {
    pub fn free(rank: usize) -> Self {
        ModulePiece {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        // torsion orders are small in practice; fall back to strings if not
        match i64::try_from(x) {
            Ok(n) => seq.serialize_element(&n)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

/// Decomposes `coker(A) = R^rows / im(A)`.
pub fn cokernel_decomposition(a: &ExactMatrix) -> ModulePiece {
    let divisors = elementary_divisors(a);
    let torsion = divisors
        .iter()
        .filter(|d| !d.is_unit())
        .filter_map(|d| d.as_bigint().cloned())
        .collect();
    ModulePiece {
        free_rank: a.rows() - divisors.len(),
        torsion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[Scalar]) -> Vec<i64> {
        v.iter()
            .map(|s| i64::try_from(s.as_bigint().unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn snf_small_examples() {
        let z = CoefficientRing::Integers;
        let a = ExactMatrix::from_i64_rows(z, &[vec![2, 4], vec![-2, 6]]);
        assert_eq!(ints(&smith_normal_form(&a).divisors), vec![2, 10]);
        let id = ExactMatrix::identity(z, 3);
        assert_eq!(ints(&smith_normal_form(&id).divisors), vec![1, 1, 1]);
        let zero = ExactMatrix::from_i64_rows(z, &[vec![0]]);
        assert!(smith_normal_form(&zero).divisors.is_empty());
    }

    #[test]
    fn snf_transforms_multiply_out() {
        let z = CoefficientRing::Integers;
        let a = ExactMatrix::from_i64_rows(z, &[vec![6, 4, 0], vec![4, 0, 10], vec![0, 15, 9]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), ExactMatrix::identity(z, 3));
        assert_eq!(s.v.mul(&s.v_inv), ExactMatrix::identity(z, 3));
    }

    #[test]
    fn cokernel_examples() {
        let z = CoefficientRing::Integers;
        let a = ExactMatrix::from_i64_rows(z, &[vec![2]]);
        let c = cokernel_decomposition(&a);
        assert_eq!(
            c,
            ModulePiece {
                free_rank: 0,
                torsion: vec![BigInt::from(2)]
            }
        );
        let q = CoefficientRing::Rationals;
        let c = cokernel_decomposition(&a.change_ring(q));
        assert!(c.is_zero());
        let wide = ExactMatrix::from_i64_rows(z, &[vec![0, 0], vec![3, 0]]);
        let c = cokernel_decomposition(&wide);
        assert_eq!(c.free_rank, 1);
        assert_eq!(c.torsion, vec![BigInt::from(3)]);
    }

    #[test]
    fn field_snf_is_all_ones() {
        let f3 = CoefficientRing::prime_field(3).unwrap();
        let a = ExactMatrix::from_i64_rows(f3, &[vec![1, 2], vec![2, 1]]);
        let s = smith_normal_form(&a);
        // det = -3 = 0 mod 3
        assert_eq!(s.rank(), 1);
        assert!(s.divisors.iter().all(Scalar::is_one));
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
            (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
            })
        }

        proptest! {
            #[test]
            fn smith_round_trip(rows in small_matrix()) {
                let z = CoefficientRing::Integers;
                let a = ExactMatrix::from_i64_rows(z, &rows);
                let s = smith_normal_form(&a);
                prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
                prop_assert_eq!(s.u.mul(&s.u_inv), ExactMatrix::identity(z, a.rows()));
                prop_assert_eq!(s.v_inv.mul(&s.v), ExactMatrix::identity(z, a.cols()));
                for w in s.divisors.windows(2) {
                    let (x, y) = (w[0].as_bigint().unwrap(), w[1].as_bigint().unwrap());
                    prop_assert!(x > &BigInt::from(0));
                    prop_assert!((y % x) == BigInt::from(0));
                }
                let q = field_reduce(&a.change_ring(CoefficientRing::Rationals)).unwrap();
                prop_assert_eq!(q.rank, s.rank());
                let f3 = CoefficientRing::prime_field(3).unwrap();
                let r3 = field_reduce(&a.change_ring(f3)).unwrap().rank;
                prop_assert_eq!(r3, rank(&a.change_ring(f3)));
                let expected3 = s.divisors.iter()
                    .filter(|d| (d.as_bigint().unwrap() % BigInt::from(3)) != BigInt::from(0))
                    .count();
                prop_assert_eq!(r3, expected3);
            }

            #[test]
            fn field_smith_round_trip(rows in small_matrix()) {
                let f5 = CoefficientRing::prime_field(5).unwrap();
                let a = ExactMatrix::from_i64_rows(f5, &rows);
                let s = smith_normal_form(&a);
                prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
                prop_assert_eq!(s.u_inv.mul(&s.u), ExactMatrix::identity(f5, a.rows()));
                prop_assert_eq!(s.v.mul(&s.v_inv), ExactMatrix::identity(f5, a.cols()));
                let red = field_reduce(&a).unwrap();
                for k in &red.kernel_basis {
                    prop_assert!(a.apply(k).iter().all(Scalar::is_zero));
                }
                prop_assert_eq!(red.rank + red.kernel_basis.len(), a.cols());
            }
        }
    }
}
