//! Dense exact matrices, row reduction, kernels and subspaces over a [`Field`].
//!
//! Vectors are plain `Vec<Felt>` and are treated as columns when multiplied
//! by a matrix. Row reduction pivots on the first nonzero entry of each
//! column, which keeps every output deterministic.

use std::fmt;

use thiserror::Error;

use crate::field::{Felt, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: expected length {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Felt>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.fmt_elem(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Result of [`Mat::rref`].
#[derive(Debug, Clone)]
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat { field: field.clone(), rows, cols, data: vec![Felt::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Felt::ONE);
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Felt>]) -> Result<Mat, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::ShapeMismatch { expected: cols, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Mat { field: field.clone(), rows: rows.len(), cols, data })
    }

    /// Builds a matrix from integer rows (reduced into the prime subfield).
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        let vecs: Vec<Vec<Felt>> = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Mat::from_rows(field, cols, &vecs).expect("ragged integer matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, len: usize, cols: &[Vec<Felt>]) -> Result<Mat, LinalgError> {
        Ok(Mat::from_rows(field, len, cols)?.transpose())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Felt {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Felt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Felt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Felt] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Felt> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Felt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Entrywise σ.
    pub fn frobenius(&self) -> Mat {
        let mut m = self.clone();
        for x in m.data.iter_mut() {
            *x = self.field.frobenius(*x);
        }
        m
    }

    pub fn scale(&self, a: Felt) -> Mat {
        let mut m = self.clone();
        self.field.scale_in_place(&mut m.data, a);
        m
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix add shape");
        let mut m = self.clone();
        for (x, &y) in m.data.iter_mut().zip(&other.data) {
            *x = self.field.add(*x, y);
        }
        m
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sub shape");
        let mut m = self.clone();
        for (x, &y) in m.data.iter_mut().zip(&other.data) {
            *x = self.field.sub(*x, y);
        }
        m
    }

    pub fn neg(&self) -> Mat {
        let mut m = self.clone();
        for x in m.data.iter_mut() {
            *x = self.field.neg(*x);
        }
        m
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Mat::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                let (src, dst) = (other.row(k), r * other.cols);
                self.field.axpy(&mut out.data[dst..dst + other.cols], a, src);
            }
        }
        out
    }

    /// Matrix-vector product, `v` read as a column.
    pub fn mul_vec(&self, v: &[Felt]) -> Vec<Felt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for c in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(found) = (prow..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            if found != prow {
                for j in 0..m.cols {
                    m.data.swap(found * m.cols + j, prow * m.cols + j);
                }
            }
            let inv = f.inv(m.get(prow, c)).expect("pivot is nonzero");
            f.scale_in_place(&mut m.data[prow * m.cols + c..(prow + 1) * m.cols], inv);
            let pivot_row: Vec<Felt> = m.data[prow * m.cols + c..(prow + 1) * m.cols].to_vec();
            for r in 0..m.rows {
                if r == prow {
                    continue;
                }
                let a = m.get(r, c);
                if a.is_zero() {
                    continue;
                }
                let start = r * m.cols + c;
                let end = (r + 1) * m.cols;
                f.axpy(&mut m.data[start..end], f.neg(a), &pivot_row);
            }
            pivots.push(c);
            prow += 1;
        }
        let rank = pivots.len();
        Rref { mat: m, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// The nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space_basis(&self) -> Mat {
        let rr = self.rref();
        let mut m = rr.mat;
        m.data.truncate(rr.rank * m.cols);
        m.rows = rr.rank;
        m
    }

    /// Basis of the right null space `{ v : M v = 0 }`.
    pub fn kernel_basis(&self) -> Vec<Vec<Felt>> {
        let rr = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &rr.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Felt::ZERO; self.cols];
            v[free] = Felt::ONE;
            for (i, &p) in rr.pivots.iter().enumerate() {
                v[p] = f.neg(rr.mat.get(i, free));
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Result<Mat, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = Mat::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, Felt::ONE);
        }
        let rr = aug.rref();
        if rr.pivots.len() < n || rr.pivots[n - 1] != n - 1 {
            return Err(LinalgError::SingularMatrix);
        }
        let mut inv = Mat::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, rr.mat.get(r, n + c));
            }
        }
        Ok(inv)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "vstack shape");
        let mut m = self.clone();
        m.data.extend_from_slice(&other.data);
        m.rows += other.rows;
        m
    }

    /// Solves `M x = b`, returning one solution if any exists.
    pub fn solve(&self, b: &[Felt]) -> Option<Vec<Felt>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Mat::zeros(&self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            aug.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            aug.set(r, self.cols, b[r]);
        }
        let rr = aug.rref();
        if rr.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Felt::ZERO; self.cols];
        for (i, &p) in rr.pivots.iter().enumerate() {
            x[p] = rr.mat.get(i, self.cols);
        }
        Some(x)
    }
}

/// Dimension of the span of `vectors`.
pub fn span_dim(field: &Field, vectors: &[Vec<Felt>]) -> Result<usize, LinalgError> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    Ok(Mat::from_rows(field, first.len(), vectors)?.rank())
}

/// Scales `v` so its first nonzero entry is one. Returns `None` for zero.
pub fn normalize(field: &Field, v: &[Felt]) -> Option<Vec<Felt>> {
    let lead = v.iter().copied().find(|x| !x.is_zero())?;
    let inv = field.inv(lead)?;
    let mut out = v.to_vec();
    field.scale_in_place(&mut out, inv);
    Some(out)
}

/// Whether two nonzero vectors are proportional.
pub fn proportional(field: &Field, a: &[Felt], b: &[Felt]) -> bool {
    normalize(field, a) == normalize(field, b)
}

pub fn vec_add(field: &Field, a: &[Felt], b: &[Felt]) -> Vec<Felt> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

pub fn vec_scale(field: &Field, a: &[Felt], s: Felt) -> Vec<Felt> {
    a.iter().map(|&x| field.mul(x, s)).collect()
}

/// Linear combination `Σ c_i v_i`.
pub fn combine(field: &Field, len: usize, terms: &[(Felt, &[Felt])]) -> Vec<Felt> {
    let mut out = vec![Felt::ZERO; len];
    for (c, v) in terms {
        field.axpy(&mut out, *c, v);
    }
    out
}

pub fn unit_vector(len: usize, i: usize) -> Vec<Felt> {
    let mut v = vec![Felt::ZERO; len];
    v[i] = Felt::ONE;
    v
}

/// A linear subspace of `F^ambient`, stored by its canonical RREF basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Mat,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient())?;
        self.basis.fmt(f)
    }
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace { basis: Mat::zeros(field, 0, ambient) }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace { basis: Mat::identity(field, ambient) }
    }

    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<Felt>]) -> Result<Subspace, LinalgError> {
        Ok(Subspace { basis: Mat::from_rows(field, ambient, vectors)?.row_space_basis() })
    }

    pub fn from_mat_rows(m: &Mat) -> Subspace {
        Subspace { basis: m.row_space_basis() }
    }

    /// `{ v : M v = 0 }`.
    pub fn kernel_of(m: &Mat) -> Subspace {
        let k = m.kernel_basis();
        Subspace::span(m.field(), m.cols(), &k).expect("kernel vectors have matching length")
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    /// Canonical RREF basis, one vector per row.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }
    pub fn basis_vecs(&self) -> Vec<Vec<Felt>> {
        self.basis.row_vecs()
    }

    pub fn contains(&self, v: &[Felt]) -> bool {
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let row = Mat::from_rows(self.field(), self.ambient(), &[v.to_vec()]).expect("vector length");
        self.basis.vstack(&row).rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_mat_rows(&self.basis.vstack(&other.basis))
    }

    /// Rows spanning the annihilator: functionals vanishing on the subspace.
    /// As a matrix it is a linear map whose kernel is exactly `self`.
    pub fn annihilator(&self) -> Mat {
        let k = self.basis.kernel_basis();
        if k.is_empty() {
            return Mat::zeros(self.field(), 0, self.ambient());
        }
        Mat::from_rows(self.field(), self.ambient(), &k).expect("kernel vectors")
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let eqs = self.annihilator().vstack(&other.annihilator());
        Subspace::kernel_of(&eqs)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Felt]) -> Option<Vec<Felt>> {
        self.basis.transpose().solve(v)
    }
}
