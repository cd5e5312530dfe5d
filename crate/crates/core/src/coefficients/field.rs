//! Gauss-Jordan elimination over a field. Deliberately independent of the
//! Smith engine so the two can cross-check each other.

use super::matrix::ExactMatrix;
use super::{CoefficientError, Scalar};

#[derive(Clone, Debug)]
pub struct FieldReduction {
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    /// Reduced row echelon form of the input.
    pub rref: ExactMatrix,
    /// Invertible `E` with `E * A = rref`.
    pub transform: ExactMatrix,
    /// Basis of the null space, one vector per free column.
    pub kernel_basis: Vec<Vec<Scalar>>,
}

impl FieldReduction {
    /// Expresses `y` as a combination of the pivot columns of the original
    /// matrix. Returns `None` when `y` is outside the column space.
    pub fn solve_in_pivot_columns(&self, y: &[Scalar]) -> Option<Vec<Scalar>> {
        let ey = self.transform.apply(y);
        if ey[self.rank..].iter().any(|s| !s.is_zero()) {
            return None;
        }
        Some(ey[..self.rank].to_vec())
    }
}

pub fn field_reduce(a: &ExactMatrix) -> Result<FieldReduction, CoefficientError> {
    let ring = a.ring();
    if !ring.is_field() {
        return Err(CoefficientError::NotAField(ring));
    }
    let (m, n) = (a.rows(), a.cols());
    let mut r = a.clone();
    let mut e = ExactMatrix::identity(ring, m);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&i| !r.get(i, col).is_zero()) else {
            continue;
        };
        swap_rows(&mut r, row, p);
        swap_rows(&mut e, row, p);
        let inv = r.get(row, col).inverse().expect("nonzero field element");
        scale_row(&mut r, row, &inv);
        scale_row(&mut e, row, &inv);
        for i in 0..m {
            if i != row && !r.get(i, col).is_zero() {
                let f = -r.get(i, col);
                add_row(&mut r, i, row, &f);
                add_row(&mut e, i, row, &f);
            }
        }
        pivots.push(col);
        row += 1;
    }

    let mut kernel_basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![ring.zero(); n];
        v[free] = ring.one();
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = -r.get(k, free);
        }
        kernel_basis.push(v);
    }

    Ok(FieldReduction {
        rank: pivots.len(),
        pivot_columns: pivots,
        rref: r,
        transform: e,
        kernel_basis,
    })
}

fn swap_rows(m: &mut ExactMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..m.cols() {
        let a = m.get(i, c).clone();
        let b = m.get(j, c).clone();
        m.set(i, c, b);
        m.set(j, c, a);
    }
}

fn scale_row(m: &mut ExactMatrix, i: usize, f: &Scalar) {
    for c in 0..m.cols() {
        let v = m.get(i, c) * f;
        m.set(i, c, v);
    }
}

fn add_row(m: &mut ExactMatrix, target: usize, src: usize, f: &Scalar) {
    for c in 0..m.cols() {
        let s = m.get(src, c);
        if !s.is_zero() {
            let v = m.get(target, c) + &(s * f);
            m.set(target, c, v);
        }
    }
}
