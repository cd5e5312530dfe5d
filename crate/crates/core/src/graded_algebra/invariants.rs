//! Basis-independent comparison of presented rings. Sound but incomplete:
//! a difference proves the rings non-isomorphic, agreement proves nothing.

use num_bigint::BigInt;
use serde::Serialize;

use super::{GradedAlgebraError, PresentedGradedRing};
use crate::coefficients::{elementary_divisors, CoefficientRing, ExactMatrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PairingInvariant {
    pub p: usize,
    pub q: usize,
    pub rank: usize,
    /// Elementary divisors of the multiplication map. Over a field these are all one.
    #[serde(serialize_with = "ser_divisors")]
    pub divisors: Vec<BigInt>,
    /// Rank and divisors of the adjoint `H^p -> Hom(H^q, H^{p+q})`, i.e. of
    /// the bilinear form when the target has rank one.
    pub form_rank: usize,
    #[serde(serialize_with = "ser_divisors")]
    pub form_divisors: Vec<BigInt>,
}

fn ser_divisors<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|d| d.to_string()))
}

/// The multiplication `H^p ⊗ H^q -> H^{p+q}` as a matrix: rows index the
/// target basis, columns the pairs of source classes.
pub fn pairing_matrix(
    a: &PresentedGradedRing,
    p: usize,
    q: usize,
) -> Result<ExactMatrix, GradedAlgebraError> {
    if p == 0 || q == 0 || p + q > a.top_degree() {
        return Err(GradedAlgebraError::DegreeOutOfRange {
            p,
            q,
            top: a.top_degree(),
        });
    }
    let (left, right, target) = (
        a.indices_in_degree(p),
        a.indices_in_degree(q),
        a.indices_in_degree(p + q),
    );
    let mut m = ExactMatrix::zeros(a.ring(), target.len(), left.len() * right.len());
    for (i, &x) in left.iter().enumerate() {
        for (j, &y) in right.iter().enumerate() {
            for (k, v) in a.product(x, y) {
                let row = target
                    .iter()
                    .position(|t| t == k)
                    .expect("degree additivity");
                m.set(row, i * right.len() + j, v.clone());
            }
        }
    }
    Ok(m)
}

/// The adjoint `H^p -> Hom(H^q, H^{p+q})`: columns index degree-`p` classes,
/// rows index pairs (degree-`q` class, target class).
pub fn adjoint_pairing_matrix(
    a: &PresentedGradedRing,
    p: usize,
    q: usize,
) -> Result<ExactMatrix, GradedAlgebraError> {
    if p == 0 || q == 0 || p + q > a.top_degree() {
        return Err(GradedAlgebraError::DegreeOutOfRange {
            p,
            q,
            top: a.top_degree(),
        });
    }
    let (left, right, target) = (
        a.indices_in_degree(p),
        a.indices_in_degree(q),
        a.indices_in_degree(p + q),
    );
    let mut m = ExactMatrix::zeros(a.ring(), right.len() * target.len(), left.len());
    for (i, &x) in left.iter().enumerate() {
        for (j, &y) in right.iter().enumerate() {
            for (k, v) in a.product(x, y) {
                let t = target
                    .iter()
                    .position(|t| t == k)
                    .expect("degree additivity");
                m.set(j * target.len() + t, i, v.clone());
            }
        }
    }
    Ok(m)
}

fn as_integers(divs: &[Scalar]) -> Vec<BigInt> {
    divs.iter()
        .map(|d| match d {
            Scalar::Int(n) => n.clone(),
            _ => BigInt::from(1),
        })
        .collect()
}

pub fn pairing_invariants(
    a: &PresentedGradedRing,
    p: usize,
    q: usize,
) -> Result<PairingInvariant, GradedAlgebraError> {
    let divs = elementary_divisors(&pairing_matrix(a, p, q)?);
    let form = elementary_divisors(&adjoint_pairing_matrix(a, p, q)?);
    Ok(PairingInvariant {
        p,
        q,
        rank: divs.len(),
        divisors: as_integers(&divs),
        form_rank: form.len(),
        form_divisors: as_integers(&form),
    })
}

/// Pairing invariants for every `1 <= p <= q` with `p + q <= top`.
pub fn all_pairing_invariants(a: &PresentedGradedRing) -> Vec<PairingInvariant> {
    let top = a.top_degree();
    let mut out = Vec::new();
    for p in 1..top {
        for q in p..=top - p {
            out.push(pairing_invariants(a, p, q).expect("degrees in range"));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    Distinguished { witness: Witness },
}

impl Verdict {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Verdict::Consistent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Ranks {
        left: Vec<usize>,
        right: Vec<usize>,
    },
    Pairing {
        left: PairingInvariant,
        right: PairingInvariant,
    },
}

pub fn compare_invariants(
    a: &PresentedGradedRing,
    b: &PresentedGradedRing,
) -> Result<Verdict, GradedAlgebraError> {
    if a.ring() != b.ring() {
        return Err(GradedAlgebraError::RingMismatch(a.ring(), b.ring()));
    }
    let (ra, rb) = (trimmed(a.ranks()), trimmed(b.ranks()));
    if ra != rb {
        return Ok(Verdict::Distinguished {
            witness: Witness::Ranks {
                left: ra,
                right: rb,
            },
        });
    }
    let top = a.top_degree().max(b.top_degree());
    for p in 1..top {
        for q in p..=top - p {
            let inv = |r: &PresentedGradedRing| {
                if p + q <= r.top_degree() {
                    pairing_invariants(r, p, q).expect("degrees in range")
                } else {
                    PairingInvariant {
                        p,
                        q,
                        rank: 0,
                        divisors: Vec::new(),
                        form_rank: 0,
                        form_divisors: Vec::new(),
                    }
                }
            };
            let (x, y) = (inv(a), inv(b));
            if x != y {
                return Ok(Verdict::Distinguished {
                    witness: Witness::Pairing { left: x, right: y },
                });
            }
        }
    }
    Ok(Verdict::Consistent)
}

fn trimmed(mut r: Vec<usize>) -> Vec<usize> {
    while r.len() > 1 && r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Convenience for callers comparing over several rings at once.
pub fn compare_over(
    a: &PresentedGradedRing,
    b: &PresentedGradedRing,
    ring: CoefficientRing,
) -> Result<Verdict, GradedAlgebraError> {
    compare_invariants(&a.change_ring(ring)?, &b.change_ring(ring)?)
}
