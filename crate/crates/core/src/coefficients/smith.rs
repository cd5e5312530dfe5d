//! Sparse Smith normal form over any supported ring.
//!
//! Pivots are chosen in place (no physical swaps) and the final diagonal is
//! brought to the front by a permutation at the end. Transforms are optional
//! because most callers only need ranks or divisors.

use num_integer::Integer;
use num_traits::Zero;

use super::matrix::{axpy, lookup, scale, ExactMatrix, SparseVec};
use super::{CoefficientRing, Scalar};

/// Result of the elimination. When transforms are tracked,
/// `U * A * V = D` with `D` diagonal, `d_1 | d_2 | ...`.
pub(crate) struct SparseSmith {
    pub divisors: Vec<Scalar>,
    pub transforms: Option<Transforms>,
}

/// Which sides of the decomposition to record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Track {
    pub u: bool,
    pub v: bool,
}

impl Track {
    pub const NONE: Track = Track { u: false, v: false };
    pub const ALL: Track = Track { u: true, v: true };
    pub const U: Track = Track { u: true, v: false };
    pub const V: Track = Track { u: false, v: true };
}

/// Untracked sides are left empty.
pub(crate) struct Transforms {
    track: Track,
    pub u_rows: Vec<SparseVec>,
    pub u_inv_cols: Vec<SparseVec>,
    pub v_cols: Vec<SparseVec>,
    pub v_inv_rows: Vec<SparseVec>,
}

impl Transforms {
    fn identity(ring: CoefficientRing, rows: usize, cols: usize, track: Track) -> Self {
        let unit = |n: usize, on: bool| -> Vec<SparseVec> {
            if on {
                (0..n).map(|i| vec![(i, ring.one())]).collect()
            } else {
                Vec::new()
            }
        };
        Transforms {
            track,
            u_rows: unit(rows, track.u),
            u_inv_cols: unit(rows, track.u),
            v_cols: unit(cols, track.v),
            v_inv_rows: unit(cols, track.v),
        }
    }

    /// Records `row_i += a * row_r`.
    fn row_op(&mut self, i: usize, r: usize, a: &Scalar) {
        if !self.track.u {
            return;
        }
        self.u_rows[i] = axpy(&self.u_rows[i], a, &self.u_rows[r]);
        self.u_inv_cols[r] = axpy(&self.u_inv_cols[r], &-a, &self.u_inv_cols[i]);
    }

    /// Records `col_j += a * col_c`.
    fn col_op(&mut self, j: usize, c: usize, a: &Scalar) {
        if !self.track.v {
            return;
        }
        self.v_cols[j] = axpy(&self.v_cols[j], a, &self.v_cols[c]);
        self.v_inv_rows[c] = axpy(&self.v_inv_rows[c], &-a, &self.v_inv_rows[j]);
    }

    fn scale_row(&mut self, r: usize, u: &Scalar) {
        if !self.track.u {
            return;
        }
        let inv = u.inverse().expect("row scaling by a unit");
        scale(&mut self.u_rows[r], u);
        scale(&mut self.u_inv_cols[r], &inv);
    }
}

fn better_pivot(cand: &Scalar, cand_len: usize, best: &Scalar, best_len: usize) -> bool {
    if cand.norm_lt(best) {
        return true;
    }
    if best.norm_lt(cand) {
        return false;
    }
    cand_len < best_len
}

pub(crate) fn sparse_smith(
    ring: CoefficientRing,
    mut a: Vec<SparseVec>,
    cols: usize,
    track: Track,
) -> SparseSmith {
    let rows = a.len();
    let mut tr = (track != Track::NONE).then(|| Transforms::identity(ring, rows, cols, track));
    let mut active: Vec<usize> = (0..rows).filter(|&i| !a[i].is_empty()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut diag: Vec<Scalar> = Vec::new();

    loop {
        active.retain(|&i| !a[i].is_empty());
        // Pick the entry of least norm, preferring short rows.
        let mut best: Option<(usize, usize)> = None;
        'scan: for &i in &active {
            for (j, v) in &a[i] {
                let take = match best {
                    None => true,
                    Some((bi, bj)) => {
                        better_pivot(v, a[i].len(), lookup(&a[bi], bj).unwrap(), a[bi].len())
                    }
                };
                if take {
                    best = Some((i, *j));
                    if v.is_unit() && a[i].len() == 1 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((mut r, mut c)) = best else { break };

        loop {
            let p = lookup(&a[r], c).unwrap().clone();
            let pivot_row = a[r].clone();
            let mut moved = false;
            // Clear column c using row r.
            for &i in &active {
                if i == r {
                    continue;
                }
                let Some(v) = lookup(&a[i], c) else { continue };
                let (q, rem) = v.div_rem(&p);
                let m = -q;
                a[i] = axpy(&a[i], &m, &pivot_row);
                if let Some(t) = tr.as_mut() {
                    t.row_op(i, r, &m);
                }
                if !rem.is_zero() {
                    r = i;
                    moved = true;
                    break;
                }
            }
            if moved {
                continue;
            }
            // Column c is now zero off the pivot, so clearing row r by column
            // operations only changes entries of row r itself.
            let mut new_row: SparseVec = Vec::with_capacity(1);
            for (j, v) in std::mem::take(&mut a[r]) {
                if j == c || moved {
                    new_row.push((j, v));
                    continue;
                }
                let (q, rem) = v.div_rem(&p);
                if let Some(t) = tr.as_mut() {
                    t.col_op(j, c, &-q);
                }
                if !rem.is_zero() {
                    new_row.push((j, rem));
                    c = j;
                    moved = true;
                }
            }
            a[r] = new_row;
            if !moved {
                break;
            }
        }

        // Normalize the pivot and retire its row.
        let p = lookup(&a[r], c).unwrap().clone();
        let u = p.normalizing_unit();
        if !u.is_one() {
            scale(&mut a[r], &u);
            if let Some(t) = tr.as_mut() {
                t.scale_row(r, &u);
            }
        }
        pivots.push((r, c));
        diag.push(a[r][0].1.clone());
        active.retain(|&i| i != r);
        a[r].clear();
    }

    if let Some(t) = tr.as_mut() {
        // Reordering rows of U (and columns of V) leaves the entry indices
        // alone: those refer to the fixed bases of the domain and codomain.
        let perm_r = complete_perm(pivots.iter().map(|p| p.0), rows);
        let perm_c = complete_perm(pivots.iter().map(|p| p.1), cols);
        if t.track.u {
            t.u_rows = perm_r
                .iter()
                .map(|&k| std::mem::take(&mut t.u_rows[k]))
                .collect();
            t.u_inv_cols = perm_r
                .iter()
                .map(|&k| std::mem::take(&mut t.u_inv_cols[k]))
                .collect();
        }
        if t.track.v {
            t.v_cols = perm_c
                .iter()
                .map(|&k| std::mem::take(&mut t.v_cols[k]))
                .collect();
            t.v_inv_rows = perm_c
                .iter()
                .map(|&k| std::mem::take(&mut t.v_inv_rows[k]))
                .collect();
        }
    }

    fix_divisibility(&mut diag, tr.as_mut());

    SparseSmith {
        divisors: diag,
        transforms: tr,
    }
}

fn complete_perm(first: impl Iterator<Item = usize>, n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    for k in first {
        seen[k] = true;
        perm.push(k);
    }
    perm.extend((0..n).filter(|&k| !seen[k]));
    perm
}

/// Enforces `d_i | d_{i+1}` with unimodular 2x2 moves on diagonal positions.
fn fix_divisibility(diag: &mut [Scalar], mut tr: Option<&mut Transforms>) {
    if diag.first().is_none_or(|d| d.ring().is_field()) {
        return;
    }
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = match (&diag[i], &diag[j]) {
                (Scalar::Int(a), Scalar::Int(b)) => (a.clone(), b.clone()),
                _ => unreachable!(),
            };
            if (&b % &a).is_zero() {
                continue;
            }
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let ag = &a / &g;
            let bg = &b / &g;
            diag[i] = Scalar::Int(g.clone());
            diag[j] = Scalar::Int(&ag * &b);
            if let Some(t) = tr.as_deref_mut() {
                let s = |v: &num_bigint::BigInt| Scalar::Int(v.clone());
                let zero: SparseVec = Vec::new();
                if t.track.u {
                    // U <- U2 * U on rows i, j
                    let (ui, uj) = (t.u_rows[i].clone(), t.u_rows[j].clone());
                    t.u_rows[i] = axpy(&axpy(&zero, &s(&x), &ui), &s(&y), &uj);
                    t.u_rows[j] = axpy(&axpy(&zero, &s(&-&bg), &ui), &s(&ag), &uj);
                    // U^{-1} <- U^{-1} * U2^{-1}, U2^{-1} = [[a/g, -y], [b/g, x]]
                    let (ci, cj) = (t.u_inv_cols[i].clone(), t.u_inv_cols[j].clone());
                    t.u_inv_cols[i] = axpy(&axpy(&zero, &s(&ag), &ci), &s(&bg), &cj);
                    t.u_inv_cols[j] = axpy(&axpy(&zero, &s(&-&y), &ci), &s(&x), &cj);
                }
                if t.track.v {
                    // V <- V * V2, V2 = [[1, -y b/g], [1, x a/g]]
                    let (vi, vj) = (t.v_cols[i].clone(), t.v_cols[j].clone());
                    let ybg = &y * &bg;
                    let xag = &x * &ag;
                    t.v_cols[i] = axpy(&vi, &s(&1.into()), &vj);
                    t.v_cols[j] = axpy(&axpy(&zero, &s(&-&ybg), &vi), &s(&xag), &vj);
                    // V^{-1} <- V2^{-1} * V^{-1}, V2^{-1} = [[x a/g, y b/g], [-1, 1]]
                    let (wi, wj) = (t.v_inv_rows[i].clone(), t.v_inv_rows[j].clone());
                    t.v_inv_rows[i] = axpy(&axpy(&zero, &s(&xag), &wi), &s(&ybg), &wj);
                    t.v_inv_rows[j] = axpy(&wj, &s(&(-1).into()), &wi);
                }
            }
        }
    }
}

/// Dense view of a Smith decomposition: `U * A * V = D`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: ExactMatrix,
    pub u: ExactMatrix,
    pub v: ExactMatrix,
    pub u_inv: ExactMatrix,
    pub v_inv: ExactMatrix,
    /// Nonzero diagonal entries, each dividing the next.
    pub divisors: Vec<Scalar>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

pub fn smith_normal_form(a: &ExactMatrix) -> SmithForm {
    let ring = a.ring();
    let s = sparse_smith(ring, a.sparse_rows(), a.cols(), Track::ALL);
    let t = s.transforms.expect("transforms were requested");
    let mut d = ExactMatrix::zeros(ring, a.rows(), a.cols());
    for (k, v) in s.divisors.iter().enumerate() {
        d.set(k, k, v.clone());
    }
    SmithForm {
        d,
        u: ExactMatrix::from_sparse_rows(ring, a.rows(), &t.u_rows),
        u_inv: ExactMatrix::from_sparse_cols(ring, a.rows(), &t.u_inv_cols),
        v: ExactMatrix::from_sparse_cols(ring, a.cols(), &t.v_cols),
        v_inv: ExactMatrix::from_sparse_rows(ring, a.cols(), &t.v_inv_rows),
        divisors: s.divisors,
    }
}

/// Invariant factors without building transforms.
pub fn elementary_divisors(a: &ExactMatrix) -> Vec<Scalar> {
    sparse_smith(a.ring(), a.sparse_rows(), a.cols(), Track::NONE).divisors
}

pub fn rank(a: &ExactMatrix) -> usize {
    elementary_divisors(a).len()
}
