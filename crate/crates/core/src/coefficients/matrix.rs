use std::fmt;

use super::{CoefficientRing, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub(crate) type SparseVec = Vec<(usize, Scalar)>;

/// `y + a * x` for sparse vectors.
pub(crate) fn axpy(y: &SparseVec, a: &Scalar, x: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j >= x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i >= y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i].clone());
            i += 1;
        } else if take_x {
            let v = a * &x[j].1;
            if !v.is_zero() {
                out.push((x[j].0, v));
            }
            j += 1;
        } else {
            let v = &y[i].1 + &(a * &x[j].1);
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn scale(x: &mut SparseVec, a: &Scalar) {
    for (_, v) in x.iter_mut() {
        *v = &*v * a;
    }
    x.retain(|(_, v)| !v.is_zero());
}

pub(crate) fn lookup(x: &SparseVec, idx: usize) -> Option<&Scalar> {
    x.binary_search_by_key(&idx, |(i, _)| *i)
        .ok()
        .map(|k| &x[k].1)
}

pub(crate) fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (i, s.clone()))
        .collect()
}

/// Dense matrix over a single coefficient ring, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    ring: CoefficientRing,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(ring: CoefficientRing, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            ring,
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: CoefficientRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_i64_rows(ring: CoefficientRing, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(ring, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, ring.from_i64(*v));
            }
        }
        m
    }

    pub(crate) fn from_sparse_rows(ring: CoefficientRing, cols: usize, rows: &[SparseVec]) -> Self {
        let mut m = Self::zeros(ring, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    pub(crate) fn from_sparse_cols(ring: CoefficientRing, rows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Self::zeros(ring, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub(crate) fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows)
            .map(|i| sparse_from_dense(self.row(i)))
            .collect()
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.ring(), self.ring, "entry from the wrong ring");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        assert_eq!(self.ring, other.ring, "ring mismatch in product");
        let mut out = Self::zeros(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduces an integer matrix into another ring.
    pub fn change_ring(&self, ring: CoefficientRing) -> ExactMatrix {
        ExactMatrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|s| ring.embed(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axpy_merges_and_drops_zeros() {
        let z = CoefficientRing::Integers;
        let y = vec![(0, z.from_i64(2)), (3, z.from_i64(1))];
        let x = vec![(0, z.from_i64(1)), (2, z.from_i64(5))];
        let out = axpy(&y, &z.from_i64(-2), &x);
        assert_eq!(out, vec![(2, z.from_i64(-10)), (3, z.from_i64(1))]);
    }

    #[test]
    fn product_and_transpose() {
        let z = CoefficientRing::Integers;
        let a = ExactMatrix::from_i64_rows(z, &[vec![1, 2], vec![3, 4]]);
        let b = ExactMatrix::from_i64_rows(z, &[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            a.mul(&b),
            ExactMatrix::from_i64_rows(z, &[vec![2, 1], vec![4, 3]])
        );
        assert_eq!(a.transpose().get(0, 1), &z.from_i64(3));
    }

    #[test]
    fn change_ring_reduces() {
        let z = CoefficientRing::Integers;
        let a = ExactMatrix::from_i64_rows(z, &[vec![2, 3]]);
        let f2 = CoefficientRing::prime_field(2).unwrap();
        let b = a.change_ring(f2);
        assert!(b.get(0, 0).is_zero());
        assert!(b.get(0, 1).is_one());
    }
}
