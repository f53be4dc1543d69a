//! The exterior square V∧V, written as anti-symmetric matrices, and the
//! Plücker embedding of the lines of PG(V).
//!
//! Plücker coordinates are stored in lexicographic order of pairs `(i, j)`
//! with `i < j`. Indices are 0-based in the API and 1-based in text
//! (`x_1_2` is position 0).

use std::fmt;

use thiserror::Error;

use crate::field::{Felt, Field};
use crate::linalg::{normalize, LinalgError, Mat, Subspace};
use crate::projective::ProjLine;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WedgeError {
    #[error("matrix is not anti-symmetric with zero diagonal")]
    NotAntiSymmetric,
    #[error("vector of length {0} is not a Plücker vector")]
    BadLength(usize),
    #[error("zero vector is not a projective point")]
    ZeroVector,
    #[error("point does not satisfy the Grassmann relations")]
    NotDecomposable,
    #[error("point is not on the Grassmann variety")]
    NotOnGrassmannian,
    #[error("matrix does not have rank 2")]
    RankNotTwo,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Bijection between pairs `i < j` of `0..n` and positions `0..C(n,2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WedgeIndex {
    n: usize,
}

impl WedgeIndex {
    pub fn new(n: usize) -> WedgeIndex {
        WedgeIndex { n }
    }

    /// Recovers `n` from a Plücker vector length.
    pub fn for_len(len: usize) -> Option<WedgeIndex> {
        (2..64).find(|n| n * (n - 1) / 2 == len).map(WedgeIndex::new)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Position of the pair `(i, j)`, `i < j`.
    pub fn pos(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        // pairs before row i: sum_{r<i} (n-1-r)
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    pub fn pair(&self, pos: usize) -> (usize, usize) {
        let mut p = pos;
        for i in 0..self.n {
            let row = self.n - 1 - i;
            if p < row {
                return (i, i + 1 + p);
            }
            p -= row;
        }
        panic!("wedge position {pos} out of range")
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    /// Signed coordinate `x_{i,j}` with `x_{j,i} = -x_{i,j}` and `x_{i,i} = 0`.
    pub fn signed(&self, field: &Field, v: &[Felt], i: usize, j: usize) -> Felt {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => v[self.pos(i, j)],
            std::cmp::Ordering::Greater => field.neg(v[self.pos(j, i)]),
            std::cmp::Ordering::Equal => Felt::ZERO,
        }
    }

    /// Variable name `x_i_j` (1-based).
    pub fn name(&self, pos: usize) -> String {
        let (i, j) = self.pair(pos);
        format!("x_{}_{}", i + 1, j + 1)
    }
}

/// A point of PG(V∧V): a nonzero Plücker vector scaled so that its first
/// nonzero coordinate is one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WedgePoint {
    coords: Vec<Felt>,
}

impl WedgePoint {
    pub fn new(field: &Field, coords: &[Felt]) -> Result<WedgePoint, WedgeError> {
        WedgeIndex::for_len(coords.len()).ok_or(WedgeError::BadLength(coords.len()))?;
        let coords = normalize(field, coords).ok_or(WedgeError::ZeroVector)?;
        Ok(WedgePoint { coords })
    }

    pub fn coords(&self) -> &[Felt] {
        &self.coords
    }

    pub fn index(&self) -> WedgeIndex {
        WedgeIndex::for_len(self.coords.len()).expect("validated length")
    }

    pub fn n(&self) -> usize {
        self.index().n()
    }

    /// The anti-symmetric matrix of the point.
    pub fn matrix(&self, field: &Field) -> Mat {
        alpha(field, &self.coords).expect("validated length")
    }

    /// Comma-separated field-element literals in lex order.
    pub fn to_text(&self, field: &Field) -> String {
        self.coords.iter().map(|&x| field.fmt_elem(x)).collect::<Vec<_>>().join(",")
    }

    pub fn parse(field: &Field, text: &str) -> Result<WedgePoint, WedgeError> {
        let coords = text
            .split(',')
            .map(|t| field.parse_elem(t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| WedgeError::BadLength(0))?;
        WedgePoint::new(field, &coords)
    }
}

impl fmt::Display for WedgePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.index().to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The map α: Plücker vector → anti-symmetric matrix.
pub fn alpha(field: &Field, v: &[Felt]) -> Result<Mat, WedgeError> {
    let idx = WedgeIndex::for_len(v.len()).ok_or(WedgeError::BadLength(v.len()))?;
    let n = idx.n();
    let mut m = Mat::zeros(field, n, n);
    for (p, (i, j)) in idx.pairs().enumerate() {
        m.set(i, j, v[p]);
        m.set(j, i, field.neg(v[p]));
    }
    Ok(m)
}

/// Inverse of [`alpha`].
pub fn alpha_inv(a: &Mat) -> Result<Vec<Felt>, WedgeError> {
    let f = a.field();
    if !a.is_square() {
        return Err(WedgeError::NotAntiSymmetric);
    }
    let n = a.rows();
    for i in 0..n {
        if !a.get(i, i).is_zero() {
            return Err(WedgeError::NotAntiSymmetric);
        }
        for j in i + 1..n {
            if a.get(j, i) != f.neg(a.get(i, j)) {
                return Err(WedgeError::NotAntiSymmetric);
            }
        }
    }
    let idx = WedgeIndex::new(n);
    Ok(idx.pairs().map(|(i, j)| a.get(i, j)).collect())
}

/// `x yᵀ − y xᵀ`.
pub fn wedge_product(field: &Field, x: &[Felt], y: &[Felt]) -> Mat {
    let n = x.len();
    let mut m = Mat::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, field.sub(field.mul(x[i], y[j]), field.mul(y[i], x[j])));
        }
    }
    m
}

/// Plücker coordinates `x_i y_j − x_j y_i`, `i < j`.
pub fn wedge_coords(field: &Field, x: &[Felt], y: &[Felt]) -> Vec<Felt> {
    let idx = WedgeIndex::new(x.len());
    idx.pairs().map(|(i, j)| field.sub(field.mul(x[i], y[j]), field.mul(x[j], y[i]))).collect()
}

/// The Plücker image of a line.
pub fn plucker(field: &Field, line: &ProjLine) -> WedgePoint {
    let (a, b) = line.basis();
    WedgePoint::new(field, &wedge_coords(field, a, b)).expect("line rows are independent")
}

/// The line whose Plücker image is `w`: the column space of its matrix.
pub fn line_of(field: &Field, w: &WedgePoint) -> Result<ProjLine, WedgeError> {
    if !grassmann_membership(field, w.coords()) {
        return Err(WedgeError::NotDecomposable);
    }
    let m = w.matrix(field);
    let cols = m.transpose().row_space_basis();
    if cols.rows() != 2 {
        return Err(WedgeError::NotDecomposable);
    }
    Ok(ProjLine::through(field, cols.row(0), cols.row(1)).expect("rank 2"))
}

/// Values of the quadratic Grassmann relations
/// `x_ij x_kh − x_ik x_jh + x_ih x_jk` for all `i<j<k<h`.
pub fn grassmann_residuals(field: &Field, v: &[Felt]) -> Vec<Felt> {
    let idx = WedgeIndex::for_len(v.len()).expect("Plücker vector length");
    let n = idx.n();
    let x = |i, j| v[idx.pos(i, j)];
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for h in k + 1..n {
                    let t = field.sub(field.mul(x(i, j), x(k, h)), field.mul(x(i, k), x(j, h)));
                    out.push(field.add(t, field.mul(x(i, h), x(j, k))));
                }
            }
        }
    }
    out
}

pub fn grassmann_membership(field: &Field, v: &[Felt]) -> bool {
    grassmann_residuals(field, v).iter().all(|r| r.is_zero())
}

/// Coefficient matrix of the linear system `a_i x_jk − a_j x_ik + a_k x_ij = 0`,
/// one row per `i<j<k`, cutting out the star of lines through `[a]`.
pub fn star_system(field: &Field, a: &[Felt]) -> Mat {
    let n = a.len();
    let idx = WedgeIndex::new(n);
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut r = vec![Felt::ZERO; idx.len()];
                r[idx.pos(j, k)] = a[i];
                r[idx.pos(i, k)] = field.neg(a[j]);
                r[idx.pos(i, j)] = a[k];
                rows.push(r);
            }
        }
    }
    Mat::from_rows(field, idx.len(), &rows).expect("row length")
}

/// The subspace of V∧V spanned by the Plücker images of lines through `[a]`.
pub fn star_subspace(field: &Field, a: &[Felt]) -> Subspace {
    Subspace::kernel_of(&star_system(field, a))
}

/// Coefficient matrix of the Grassmann relations linearized at `c`,
/// one row per `i<j<k<h`.
pub fn grassmann_tangent_system(field: &Field, c: &[Felt]) -> Result<Mat, WedgeError> {
    if !grassmann_membership(field, c) {
        return Err(WedgeError::NotOnGrassmannian);
    }
    let idx = WedgeIndex::for_len(c.len()).ok_or(WedgeError::BadLength(c.len()))?;
    let n = idx.n();
    let cv = |i, j| c[idx.pos(i, j)];
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for h in k + 1..n {
                    let mut r = vec![Felt::ZERO; idx.len()];
                    let mut put = |p: usize, v: Felt| r[p] = field.add(r[p], v);
                    put(idx.pos(i, j), cv(k, h));
                    put(idx.pos(k, h), cv(i, j));
                    put(idx.pos(i, k), field.neg(cv(j, h)));
                    put(idx.pos(j, h), field.neg(cv(i, k)));
                    put(idx.pos(i, h), cv(j, k));
                    put(idx.pos(j, k), cv(i, h));
                    rows.push(r);
                }
            }
        }
    }
    Ok(Mat::from_rows(field, idx.len(), &rows)?)
}

/// Tangent space of the Grassmann variety at `c`, as a vector subspace.
pub fn grassmann_tangent(field: &Field, c: &[Felt]) -> Result<Subspace, WedgeError> {
    Ok(Subspace::kernel_of(&grassmann_tangent_system(field, c)?))
}

/// Matrix of the action induced on Plücker coordinates by a linear map
/// `M` of V, i.e. `A ↦ M A Mᵀ`. Column `p` holds the image of the `p`-th
/// basis bivector.
pub fn lift_map(m: &Mat) -> Result<Mat, WedgeError> {
    m.inverse()?;
    Ok(lift_unchecked(m))
}

/// Action on dual Plücker coordinates, `A* ↦ M^{-T} A* M^{-1}`.
pub fn dual_lift_map(m: &Mat) -> Result<Mat, WedgeError> {
    let inv_t = m.inverse()?.transpose();
    Ok(lift_unchecked(&inv_t))
}

fn lift_unchecked(m: &Mat) -> Mat {
    let f = m.field();
    let n = m.rows();
    let idx = WedgeIndex::new(n);
    let cols: Vec<Vec<Felt>> = idx.pairs().map(|(i, j)| wedge_coords(f, &m.column(i), &m.column(j))).collect();
    Mat::from_columns(f, idx.len(), &cols).expect("column length")
}

/// `M A Mᵀ`.
pub fn lift_apply(m: &Mat, a: &Mat) -> Mat {
    m.mul(a).mul(&m.transpose())
}

/// Whether the line with matrix `x` lies inside the dual line with matrix
/// `theta` (both rank-2 anti-symmetric), decided by `Θ X = O`.
pub fn dual_incidence(theta: &Mat, x: &Mat) -> Result<bool, WedgeError> {
    if theta.rank() != 2 || x.rank() != 2 {
        return Err(WedgeError::RankNotTwo);
    }
    alpha_inv(theta)?;
    alpha_inv(x)?;
    Ok(theta.mul(x).is_zero())
}
