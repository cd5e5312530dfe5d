//! Mayer-Vietoris bookkeeping for a gluing `K ∪_A L`, over a field.
//!
//! For `H(A) -i-> H(K) + H(L) -j-> H(K ∪ L) -d-> H(A)[-1]` the ranks of `i`
//! and `j` are computed independently from explicit cycles, and exactness is
//! checked at all three positions.

use serde::Serialize;

use super::{glue_along, push_chain, ChainComplex, SimplicialComplex, SimplicialError};
use crate::coefficients::matrix::SparseVec;
use crate::coefficients::smith::{sparse_smith, Track};
use crate::coefficients::CoefficientRing;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MvDegree {
    pub k: usize,
    pub intersection: usize,
    /// `dim H_k(K) + dim H_k(L)`.
    pub sum: usize,
    pub union: usize,
    pub rank_i: usize,
    pub rank_j: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MayerVietoris {
    pub ring: CoefficientRing,
    pub degrees: Vec<MvDegree>,
}

impl MayerVietoris {
    /// Positions where the sequence fails to be exact.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (idx, d) in self.degrees.iter().enumerate() {
            if d.rank_j + d.rank_i != d.sum {
                out.push(format!(
                    "H_{}(K)+H_{}(L): ker j has rank {} but im i has rank {}",
                    d.k,
                    d.k,
                    d.sum - d.rank_j,
                    d.rank_i
                ));
            }
            let rank_d = d.union.checked_sub(d.rank_j);
            let ker_i_below = match idx {
                0 => 0,
                _ => self.degrees[idx - 1].intersection - self.degrees[idx - 1].rank_i,
            };
            if rank_d != Some(ker_i_below) {
                out.push(format!(
                    "H_{}(K u L): cokernel of j has rank {:?} but H_{}(A) -> H(K)+H(L) has kernel of rank {ker_i_below}",
                    d.k,
                    rank_d,
                    d.k as i64 - 1
                ));
            }
        }
        out
    }

    pub fn is_exact(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Rank of the span of `vectors` modulo the span of `modulo`.
fn rank_modulo(
    ring: CoefficientRing,
    dim: usize,
    vectors: Vec<SparseVec>,
    modulo: Vec<SparseVec>,
) -> usize {
    let base = sparse_smith(ring, modulo.clone(), dim, Track::NONE)
        .divisors
        .len();
    let mut all = modulo;
    all.extend(vectors);
    sparse_smith(ring, all, dim, Track::NONE).divisors.len() - base
}

fn shift(v: &SparseVec, by: usize) -> SparseVec {
    v.iter().map(|(i, s)| (i + by, s.clone())).collect()
}

/// Glues `l` to `k` along `pairs` (as [`glue_along`]) and tabulates the
/// Mayer-Vietoris sequence of the result over the field `ring`.
pub fn mayer_vietoris(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    pairs: &[(u32, u32)],
    ring: CoefficientRing,
) -> Result<MayerVietoris, SimplicialError> {
    if !ring.is_field() {
        return Err(SimplicialError::Malformed(
            "Mayer-Vietoris ranks need field coefficients".into(),
        ));
    }
    let glued = glue_along(k, l, pairs)?;
    let g = &glued.complex;
    let mut pairs = pairs.to_vec();
    pairs.sort_unstable();
    let pos = |v: u32| pairs.iter().position(|p| p.0 == v).expect("paired vertex") as u32;
    let kv: Vec<u32> = pairs.iter().map(|p| p.0).collect();
    let to_k = kv.clone();
    let to_l: Vec<u32> = pairs.iter().map(|p| p.1).collect();
    let a = SimplicialComplex::from_facets(
        pairs.len(),
        k.induced(&kv)
            .into_iter()
            .map(|s| s.iter().map(|&v| pos(v)).collect()),
    )?;

    let (ca, ck, cl, cg) = (
        ChainComplex::of_complex(&a),
        ChainComplex::of_complex(k),
        ChainComplex::of_complex(l),
        ChainComplex::of_complex(g),
    );
    let (ha, hk, hl, hg) = (
        ca.homology(ring),
        ck.homology(ring),
        cl.homology(ring),
        cg.homology(ring),
    );
    let top = g.dim().max(k.dim()).max(l.dim());
    let minus_one = -ring.one();
    let mut degrees = Vec::new();
    for d in 0..=top {
        let nk = ck.rank(d);
        let i_img: Vec<SparseVec> = if d <= a.dim() && !pairs.is_empty() {
            ca.cycle_basis(d, ring)
                .iter()
                .map(|z| {
                    let mut v = push_chain(&a, k, &to_k, d, z);
                    let mut w = push_chain(&a, l, &to_l, d, z);
                    for (_, s) in w.iter_mut() {
                        *s = &*s * &minus_one;
                    }
                    v.extend(shift(&w, nk));
                    v
                })
                .collect()
        } else {
            Vec::new()
        };
        let mut b_sum = ck.boundaries(d, ring);
        b_sum.extend(cl.boundaries(d, ring).iter().map(|b| shift(b, nk)));
        let rank_i = rank_modulo(ring, nk + cl.rank(d), i_img, b_sum);

        let mut j_img: Vec<SparseVec> = Vec::new();
        if d <= k.dim() {
            j_img.extend(
                ck.cycle_basis(d, ring)
                    .iter()
                    .map(|z| push_chain(k, g, &glued.vertex_maps[0], d, z)),
            );
        }
        if d <= l.dim() {
            j_img.extend(
                cl.cycle_basis(d, ring)
                    .iter()
                    .map(|z| push_chain(l, g, &glued.vertex_maps[1], d, z)),
            );
        }
        let rank_j = rank_modulo(ring, cg.rank(d), j_img, cg.boundaries(d, ring));

        let r = |m: &crate::graded_algebra::GradedModule| m.piece(d).free_rank;
        degrees.push(MvDegree {
            k: d,
            intersection: if pairs.is_empty() { 0 } else { r(&ha) },
            sum: r(&hk) + r(&hl),
            union: r(&hg),
            rank_i,
            rank_j,
        });
    }
    Ok(MayerVietoris { ring, degrees })
}
