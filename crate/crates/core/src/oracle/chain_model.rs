//! Tier 1: the Reeb space as an iterated algebraic mapping cone.
//!
//! For each record the bouquet `A` of generating spheres maps to the current
//! space `W` (by the coefficient cycles) and to the record space `E` (as the
//! sections). The homotopy pushout has chains
//! `C_k = W_k + E_k + A_{k-1}` with `d(w, e, a) = (dw + f_W a, de - f_E a, -da)`.
//! `W` comes first, so base generators keep their indices from one record to
//! the next.

use super::base::{base_model, BaseModel};
use super::OracleError;
use crate::coefficients::matrix::{axpy, SparseVec};
use crate::coefficients::CoefficientRing;
use crate::graded_algebra::GradedModule;
use crate::reeb_descriptor::{validate, BubblingRecord, ReebDescriptor};
use crate::simplicial::ChainComplex;

/// Minimal cell structure on `#_j (S^{l_j} x S^{n - l_j})` (or `S^n` when
/// there are no spheres): a 0-cell, cells `a_j`, `b_j` and a top cell, all
/// with zero boundary.
struct RecordCells {
    ranks: Vec<usize>,
    /// Index of the section cell `a_j` in its degree.
    section: Vec<usize>,
}

fn record_cells(n: usize, dims: &[usize]) -> RecordCells {
    let mut ranks = vec![0usize; n + 1];
    ranks[0] = 1;
    let mut section = Vec::new();
    for &l in dims {
        section.push(ranks[l]);
        ranks[l] += 1;
    }
    for &l in dims {
        ranks[n - l] += 1;
    }
    ranks[n] += 1;
    RecordCells { ranks, section }
}

fn pad(mut c: ChainComplex, top: usize) -> ChainComplex {
    while c.ranks.len() <= top {
        c.ranks.push(0);
        c.boundary.push(Vec::new());
    }
    c
}

fn attach(
    w: &ChainComplex,
    n: usize,
    base: &BaseModel,
    base_point: usize,
    rec: &BubblingRecord,
) -> ChainComplex {
    let z = CoefficientRing::Integers;
    let spheres: Vec<_> = rec.positive_spheres().map(|(_, s)| s).collect();
    let dims: Vec<usize> = spheres.iter().map(|s| s.dim).collect();
    let e = record_cells(n, &dims);
    // A: one 0-cell plus one cell per sphere
    let mut a_ranks = vec![0usize; n + 1];
    a_ranks[0] = 1;
    let mut a_index = Vec::new();
    for &l in &dims {
        a_index.push(a_ranks[l]);
        a_ranks[l] += 1;
    }
    let top = w.top().max(n);
    let mut out = ChainComplex::new(
        (0..=top)
            .map(|k| {
                w.rank(k)
                    + e.ranks.get(k).copied().unwrap_or(0)
                    + if k > 0 { a_ranks[k - 1] } else { 0 }
            })
            .collect(),
    );
    for k in 1..=top {
        let (wk, ek) = (w.rank(k), e.ranks.get(k).copied().unwrap_or(0));
        let w_prev = w.rank(k - 1);
        for j in 0..wk {
            out.boundary[k][j] = w.boundary[k][j].clone();
        }
        // E cells are cycles; the cone cells in degree k come from A_{k-1}
        let mut cone_cols: Vec<SparseVec> = vec![Vec::new(); a_ranks[k - 1]];
        if k == 1 {
            cone_cols[0] = vec![(base_point, z.one()), (w_prev, -z.one())];
        }
        for (j, s) in spheres.iter().enumerate() {
            if s.dim != k - 1 {
                continue;
            }
            let mut col: SparseVec = Vec::new();
            for (id, c) in s.targets() {
                col = axpy(&col, &z.from_i64(c), &base.nus[id.index()].cycle);
            }
            col.push((w_prev + e.section[j], -z.one()));
            cone_cols[a_index[j]] = col;
        }
        for (i, col) in cone_cols.into_iter().enumerate() {
            out.boundary[k][wk + ek + i] = col;
        }
    }
    out
}

/// The assembled integral chain complex.
pub fn chain_model(d: &ReebDescriptor) -> Result<ChainComplex, OracleError> {
    let v = validate(d);
    if !v.is_empty() {
        return Err(OracleError::Invalid(v));
    }
    let base = base_model(d)?;
    let base_point = base.complex.index_of(&[0]).expect("vertex 0");
    let mut c = pad(ChainComplex::of_complex(&base.complex), d.n);
    for rec in &d.records {
        c = attach(&c, d.n, &base, base_point, rec);
    }
    Ok(c)
}

pub fn chain_model_homology(
    d: &ReebDescriptor,
    ring: CoefficientRing,
) -> Result<GradedModule, OracleError> {
    Ok(chain_model(d)?.homology(ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_algebra::ManifoldExpr;
    use crate::reeb_descriptor::{RecordKind, SphereSpec};

    const Z: CoefficientRing = CoefficientRing::Integers;

    #[test]
    fn point_record_gives_sphere() {
        for n in 2..6 {
            let d = ReebDescriptor::new(n).with_record(BubblingRecord::point());
            let c = chain_model(&d).unwrap();
            c.check_d_squared().unwrap();
            let mut expect = vec![0; n + 1];
            expect[0] = 1;
            expect[n] = 1;
            assert_eq!(c.homology(Z).free_ranks(), expect);
        }
    }

    #[test]
    fn empty_descriptor_is_a_point() {
        let h = chain_model_homology(&ReebDescriptor::new(3), Z).unwrap();
        assert_eq!(h.trimmed().free_ranks(), vec![1]);
    }

    #[test]
    fn coefficient_two_is_torsion_free() {
        let d = ReebDescriptor::new(3)
            .with_handle(ManifoldExpr::sphere(1))
            .with_record(BubblingRecord::new(
                RecordKind::M,
                vec![SphereSpec::new(1).with(1, 2)],
            ));
        let c = chain_model(&d).unwrap();
        c.check_d_squared().unwrap();
        let h = c.homology(Z);
        assert!(h.is_free());
        assert_eq!(h.free_ranks(), vec![1, 1, 1, 1]);
    }
}
