//! Dense exact linear algebra over the rationals, plus a sparse incremental echelon
//! basis for the large homology computations.

use crate::scalar::{weight, Scalar};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::ops::{Index, IndexMut};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("inconsistent linear system")]
    Inconsistent,
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Mat { rows, cols, data: entries.iter().map(|&x| crate::scalar::q(x)).collect() }
    }

    /// Rows must share a length; an empty list gives a `0 x cols` matrix.
    pub fn from_rows(rows: &[Vec<Scalar>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Mat { rows: rows.len(), cols, data }
    }

    pub fn from_columns(columns: &[Vec<Scalar>], rows: usize) -> Self {
        Mat::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).fold(Scalar::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "mul: shape mismatch");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "mul_vec: shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Commutator `self*o - o*self`.
    pub fn commutator(&self, o: &Mat) -> Mat {
        self.mul(o).sub(&o.mul(self))
    }

    /// Reduced row echelon form and pivot columns. Pivot rows are chosen by smallest
    /// coefficient size within each column.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut best: Option<(usize, u64)> = None;
            for i in r..m.rows {
                let x = &m[(i, c)];
                if !x.is_zero() {
                    let w = weight(x);
                    if best.map_or(true, |(_, bw)| w < bw) {
                        best = Some((i, w));
                    }
                }
            }
            let Some((p, _)) = best else { continue };
            m.swap_rows(p, r);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m[(r, j)] = &m[(r, j)] * &inv;
                }
            }
            let prow: Vec<(usize, Scalar)> =
                (c..m.cols).filter(|&j| !m[(r, j)].is_zero()).map(|j| (j, m[(r, j)].clone())).collect();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &prow {
                    m[(i, *j)] -= &f * v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank by a second, independent elimination order: columns right to left, first
    /// nonzero row as pivot, no back-substitution.
    pub fn rank_alt(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in (0..m.cols).rev() {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(p, r);
            let piv = m[(r, c)].clone();
            for i in r + 1..m.rows {
                let f = &m[(i, c)] / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in 0..=c {
                    let v = m[(r, j)].clone();
                    if !v.is_zero() {
                        m[(i, j)] -= &f * &v;
                    }
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[f] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self * x = b`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!("rhs {} vs rows {}", b.len(), self.rows)));
        }
        let aug = Mat::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                b[r].clone()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(LinalgError::Inconsistent);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red[(i, self.cols)].clone();
        }
        debug_assert_eq!(self.mul_vec(&x), b, "back-substitution failed");
        Ok(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Mat::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Mat::from_fn(n, n, |r, c| red[(r, n + c)].clone()))
    }
}

fn check_lengths(vs: &[Vec<Scalar>]) -> Result<usize, LinalgError> {
    let len = vs.first().map_or(0, |v| v.len());
    if vs.iter().any(|v| v.len() != len) {
        return Err(LinalgError::DimensionMismatch("vectors of unequal length".into()));
    }
    Ok(len)
}

/// Canonical basis (nonzero rows of the rref) of the span.
pub fn span_basis(vs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let Ok(len) = check_lengths(vs) else { panic!("span_basis: vectors of unequal length") };
    if vs.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = Mat::from_rows(vs, len).rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

pub fn rank_of(vs: &[Vec<Scalar>]) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert_dense(v);
    }
    e.rank()
}

pub fn subspace_sum(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, LinalgError> {
    let all: Vec<Vec<Scalar>> = a.iter().chain(b).cloned().collect();
    check_lengths(&all)?;
    Ok(span_basis(&all))
}

/// Basis of `span(a) ∩ span(b)`.
pub fn subspace_intersection(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>, LinalgError> {
    let all: Vec<Vec<Scalar>> = a.iter().chain(b).cloned().collect();
    let len = check_lengths(&all)?;
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    // columns [a_1 .. a_p | -b_1 .. -b_q]
    let mut cols: Vec<Vec<Scalar>> = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
    let m = Mat::from_columns(&cols, len);
    let ker = m.kernel();
    let vecs: Vec<Vec<Scalar>> = ker
        .iter()
        .map(|k| {
            let mut v = vec![Scalar::zero(); len];
            for (i, ai) in a.iter().enumerate() {
                if !k[i].is_zero() {
                    for (x, y) in v.iter_mut().zip(ai) {
                        *x += &k[i] * y;
                    }
                }
            }
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    Ok(span_basis(&vecs))
}

pub fn in_span(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    let mut e = Echelon::new();
    for b in basis {
        e.insert_dense(b);
    }
    !e.insert_dense(v)
}

/// Signature `(positive, negative, zero)` of a symmetric matrix, by congruence diagonalization.
pub fn signature(m: &Mat) -> (usize, usize, usize) {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    let mut diag = Vec::new();
    let mut k = 0;
    while k < n {
        let piv = (k..n).find(|&i| !a[(i, i)].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                let off = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[(i, j)].is_zero());
                let Some((i, j)) = off else { break };
                // row_i += row_j, col_i += col_j
                for c in 0..n {
                    let v = a[(j, c)].clone();
                    a[(i, c)] += v;
                }
                for r in 0..n {
                    let v = a[(r, j)].clone();
                    a[(r, i)] += v;
                }
                i
            }
        };
        a.swap_rows(p, k);
        for r in 0..n {
            a.data.swap(r * n + p, r * n + k);
        }
        let d = a[(k, k)].clone();
        for i in k + 1..n {
            let f = &a[(i, k)] / &d;
            if f.is_zero() {
                continue;
            }
            for c in 0..n {
                let v = a[(k, c)].clone();
                a[(i, c)] -= &f * &v;
            }
            for r in 0..n {
                let v = a[(r, k)].clone();
                a[(r, i)] -= &f * &v;
            }
        }
        diag.push(d);
        k += 1;
    }
    let pos = diag.iter().filter(|d| d.is_positive()).count();
    let neg = diag.iter().filter(|d| d.is_negative()).count();
    (pos, neg, n - pos - neg)
}

pub type SparseVec = Vec<(usize, Scalar)>;

pub fn to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// `a - f*b` for sorted sparse vectors.
fn sparse_axpy(a: &SparseVec, f: &Scalar, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built row-echelon basis keyed by leading column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` against the basis; returns its leading-reduced remainder.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        loop {
            let Some((c, a)) = v.first().cloned() else { return v };
            match self.pivots.get(&c) {
                Some(row) => v = sparse_axpy(&v, &a, row),
                None => return v,
            }
        }
    }

    /// Adds `v`; returns whether it was independent of the current basis.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((c, a)) = r.first().cloned() else { return false };
        let inv = a.recip();
        let row: SparseVec = r.into_iter().map(|(j, x)| (j, x * &inv)).collect();
        self.pivots.insert(c, row);
        true
    }

    pub fn insert_dense(&mut self, v: &[Scalar]) -> bool {
        self.insert(to_sparse(v))
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect()
    }

    #[test]
    fn kernel_identity_is_empty() {
        assert!(Mat::identity(3).kernel().is_empty());
    }

    #[test]
    fn kernel_zero_is_everything() {
        assert_eq!(Mat::zeros(2, 3).kernel().len(), 3);
    }

    #[test]
    fn intersection_trivial_cases() {
        let a = vec![e(3, 0)];
        assert_eq!(subspace_intersection(&a, &a).unwrap(), vec![e(3, 0)]);
        assert!(subspace_intersection(&a, &[e(3, 1)]).unwrap().is_empty());
        assert!(subspace_intersection(&a, &[vec![q(1)]]).is_err());
    }

    #[test]
    fn solve_and_inconsistent() {
        let m = Mat::from_i64(2, 2, &[1, 2, 2, 4]);
        assert_eq!(m.solve(&[q(1), q(3)]), Err(LinalgError::Inconsistent));
        let x = m.solve(&[q(1), q(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(1), q(2)]);
    }

    #[test]
    fn signature_of_split_forms() {
        let h = Mat::from_i64(2, 2, &[0, 1, 1, 0]);
        assert_eq!(signature(&h), (1, 1, 0));
        let g = Mat::from_i64(3, 3, &[0, 0, 1, 0, 1, 0, 1, 0, 0]);
        assert_eq!(signature(&g), (2, 1, 0));
        assert_eq!(signature(&Mat::zeros(2, 2)), (0, 0, 2));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat::from_i64(3, 3, &[2, 1, 0, 0, 1, 3, 1, 0, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(3));
        assert!(Mat::from_i64(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }
}
