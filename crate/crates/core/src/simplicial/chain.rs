//! Integral chain complexes of free modules, homology, and cohomology bases
//! with explicit cocycle representatives.

use num_bigint::BigInt;

use super::{SimplicialComplex, SimplicialError};
use crate::coefficients::matrix::{axpy, sparse_from_dense, SparseVec};
use crate::coefficients::smith::{sparse_smith, Track};
use crate::coefficients::{CoefficientRing, ModulePiece, Scalar};
use crate::graded_algebra::GradedModule;

/// A finite chain complex of free integral modules. `boundary[k][j]` is the
/// boundary of the `j`-th generator in degree `k`, as sparse coordinates in
/// degree `k - 1`; `boundary[0]` is all empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundary: Vec<Vec<SparseVec>>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>) -> Self {
        let boundary = ranks.iter().map(|&r| vec![Vec::new(); r]).collect();
        ChainComplex { ranks, boundary }
    }

    pub fn of_complex(k: &SimplicialComplex) -> Self {
        let z = CoefficientRing::Integers;
        let ranks: Vec<usize> = (0..=k.dim()).map(|d| k.count(d)).collect();
        let mut c = ChainComplex::new(ranks);
        for d in 1..=k.dim() {
            for (j, s) in k.simplices(d).iter().enumerate() {
                let mut col: SparseVec = (0..s.len())
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        let idx = k.index_of(&f).expect("closed under faces");
                        (idx, z.from_i64(if i % 2 == 0 { 1 } else { -1 }))
                    })
                    .collect();
                col.sort_by_key(|(i, _)| *i);
                c.boundary[d][j] = col;
            }
        }
        c
    }

    pub fn top(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    fn columns(&self, k: usize, ring: CoefficientRing) -> Vec<SparseVec> {
        match self.boundary.get(k) {
            Some(cols) if k > 0 => cols.iter().map(|c| embed_vec(c, ring)).collect(),
            _ => Vec::new(),
        }
    }

    /// Boundary of an arbitrary chain.
    pub fn apply_boundary(&self, k: usize, chain: &SparseVec) -> SparseVec {
        let mut out: SparseVec = Vec::new();
        if k == 0 {
            return out;
        }
        for (j, v) in chain {
            let col = embed_vec(&self.boundary[k][*j], v.ring());
            out = axpy(&out, v, &col);
        }
        out
    }

    /// Basis of the `k`-cycles over `ring`.
    pub fn cycle_basis(&self, k: usize, ring: CoefficientRing) -> Vec<SparseVec> {
        let n = self.rank(k);
        if k == 0 {
            return (0..n).map(|i| vec![(i, ring.one())]).collect();
        }
        // rows of U beyond the rank annihilate the boundary matrix from the left
        let s = sparse_smith(ring, self.columns(k, ring), self.rank(k - 1), Track::U);
        let r = s.divisors.len();
        s.transforms.expect("tracked").u_rows[r..].to_vec()
    }

    /// Boundaries of the `(k+1)`-generators, as chains in degree `k`.
    pub fn boundaries(&self, k: usize, ring: CoefficientRing) -> Vec<SparseVec> {
        self.columns(k + 1, ring)
    }

    /// Verifies that consecutive boundaries compose to zero.
    pub fn check_d_squared(&self) -> Result<(), SimplicialError> {
        for k in 2..=self.top() {
            for (j, col) in self.boundary[k].iter().enumerate() {
                if !self.apply_boundary(k - 1, col).is_empty() {
                    return Err(SimplicialError::NotAChainComplex {
                        degree: k,
                        generator: j,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }

    fn boundary_divisors(&self, k: usize, ring: CoefficientRing) -> Vec<Scalar> {
        if k == 0 || k > self.top() {
            return Vec::new();
        }
        // divisors of a matrix and of its transpose agree
        sparse_smith(ring, self.columns(k, ring), self.rank(k - 1), Track::NONE).divisors
    }

    pub fn homology(&self, ring: CoefficientRing) -> GradedModule {
        let divs: Vec<Vec<Scalar>> = (0..=self.top() + 1)
            .map(|k| self.boundary_divisors(k, ring))
            .collect();
        let pieces = (0..=self.top())
            .map(|k| {
                let free_rank = self.rank(k) - divs[k].len() - divs[k + 1].len();
                let torsion = divs[k + 1]
                    .iter()
                    .filter(|d| !d.is_unit())
                    .filter_map(|d| d.as_bigint().cloned())
                    .collect();
                ModulePiece { free_rank, torsion }
            })
            .collect();
        GradedModule { pieces }
    }

    /// Basis of the free part of `H^k` with cocycle representatives and a
    /// coordinate map for arbitrary cocycles.
    pub fn cohomology_basis(&self, k: usize, ring: CoefficientRing) -> CohomologyBasis {
        let n = self.rank(k);
        // rows of the coboundary C^k -> C^{k+1} are the boundaries of (k+1)-generators
        let delta_rows = self.columns(k + 1, ring);
        let s1 = sparse_smith(ring, delta_rows, n, Track::V);
        let r_k = s1.divisors.len();
        let t1 = s1.transforms.expect("tracked");
        let kernel: Vec<SparseVec> = t1.v_cols[r_k..].to_vec();
        let coord_rows: Vec<SparseVec> = t1.v_inv_rows[r_k..].to_vec();
        // coboundaries of (k-1)-generators in kernel coordinates, transposed:
        // row i is the boundary of the chain given by coord_rows[i]
        let m_rows: Vec<SparseVec> = coord_rows
            .iter()
            .map(|w| {
                if k == 0 {
                    Vec::new()
                } else {
                    self.apply_boundary(k, w)
                }
            })
            .collect();
        let s2 = sparse_smith(ring, m_rows, self.rank(k.saturating_sub(1)), Track::U);
        let s = s2.divisors.len();
        let torsion: Vec<BigInt> = s2
            .divisors
            .iter()
            .filter(|d| !d.is_unit())
            .filter_map(|d| d.as_bigint().cloned())
            .collect();
        let t2 = s2.transforms.expect("tracked");
        let dim_ker = kernel.len();
        let mut reps = Vec::new();
        for i in s..dim_ker {
            // kernel combination given by column i of U_M^{-1}
            let mut cocycle: SparseVec = Vec::new();
            for (t, v) in &t2.u_inv_cols[i] {
                cocycle = axpy(&cocycle, v, &kernel[*t]);
            }
            reps.push(cocycle);
        }
        let coord_functionals: Vec<SparseVec> = (s..dim_ker)
            .map(|i| {
                let mut f: SparseVec = Vec::new();
                for (t, v) in &t2.u_rows[i] {
                    f = axpy(&f, v, &coord_rows[*t]);
                }
                f
            })
            .collect();
        CohomologyBasis {
            ring,
            degree: k,
            cochain_rank: n,
            reps,
            coord_functionals,
            torsion,
        }
    }
}

fn embed_vec(v: &SparseVec, ring: CoefficientRing) -> SparseVec {
    if ring == CoefficientRing::Integers {
        return v.clone();
    }
    v.iter()
        .map(|(i, s)| (*i, ring.embed(s)))
        .filter(|(_, s)| !s.is_zero())
        .collect()
}

#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    pub ring: CoefficientRing,
    pub degree: usize,
    pub cochain_rank: usize,
    /// One cocycle per free generator.
    pub reps: Vec<SparseVec>,
    coord_functionals: Vec<SparseVec>,
    pub torsion: Vec<BigInt>,
}

impl CohomologyBasis {
    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    pub fn rep_dense(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.ring.zero(); self.cochain_rank];
        for (j, s) in &self.reps[i] {
            v[*j] = s.clone();
        }
        v
    }

    /// Coordinates of a cocycle's class in the free basis. Meaningful only for
    /// cocycles; torsion components are dropped.
    pub fn coordinates(&self, cocycle: &[Scalar]) -> Vec<Scalar> {
        self.coord_functionals
            .iter()
            .map(|f| {
                let mut acc = self.ring.zero();
                for (j, v) in f {
                    if !cocycle[*j].is_zero() {
                        acc = &acc + &(v * &cocycle[*j]);
                    }
                }
                acc
            })
            .collect()
    }
}

/// Dense cochain helper.
pub fn sparse_cochain(v: &[Scalar]) -> SparseVec {
    sparse_from_dense(v)
}
