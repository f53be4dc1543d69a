//! Reflexive (σ, ε)-sesquilinear forms `φ(x, y) = (x^σ)ᵀ Φ y` and
//! characteristic-2 quadratic forms `χ(x) = xᵀ U x` with `U` upper
//! triangular.
//!
//! Line predicates are decided through the anti-symmetric matrix `X` of the
//! line: `Φ^σ X^σ Φ X = O` for total isotropy away from the radical,
//! `Φ X Φ^σ = O` for meeting the radical, and `Φ X Φ X = O` together with
//! the column conditions `χ(X e_k) = 0` for total singularity.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::field::{Felt, Field, FieldError};
use crate::linalg::{LinalgError, Mat, Subspace};
use crate::projective::{all_vectors, ProjLine};
use crate::wedge::wedge_product;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("Gram matrix must be square (got {rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("epsilon does not satisfy eps^sigma * eps = 1")]
    BadEpsilon,
    #[error("form is not reflexive: transpose(Phi) != eps * Phi^sigma")]
    NotReflexive,
    #[error("quadratic forms need characteristic 2 and sigma = id")]
    NotCharTwo,
    #[error("quadratic form matrix must be upper triangular")]
    NotUpperTriangular,
    #[error("the line meets the radical of the form")]
    LineMeetsRadical,
    #[error("vector length {got} does not match form dimension {expected}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("cannot parse form: {0}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A reflexive (σ, ε)-sesquilinear form; σ is the field's involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SesquiForm {
    gram: Mat,
    eps: Felt,
}

impl SesquiForm {
    pub fn new(gram: Mat, eps: Felt) -> Result<SesquiForm, FormError> {
        if !gram.is_square() {
            return Err(FormError::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        let f = gram.field().clone();
        if f.mul(f.frobenius(eps), eps) != Felt::ONE {
            return Err(FormError::BadEpsilon);
        }
        if gram.transpose() != gram.frobenius().scale(eps) {
            return Err(FormError::NotReflexive);
        }
        Ok(SesquiForm { gram, eps })
    }

    /// The bilinearization `U + Uᵀ` of `xᵀ U x`, as a symmetric form.
    pub fn polar_of(upper: &Mat) -> Result<SesquiForm, FormError> {
        let f = upper.field();
        if !f.sigma_is_identity() {
            return Err(FormError::NotReflexive);
        }
        SesquiForm::new(upper.add(&upper.transpose()), Felt::ONE)
    }

    pub fn field(&self) -> &Field {
        self.gram.field()
    }
    pub fn gram(&self) -> &Mat {
        &self.gram
    }
    pub fn eps(&self) -> Felt {
        self.eps
    }
    pub fn n(&self) -> usize {
        self.gram.rows()
    }

    /// `(x^σ)ᵀ Φ y`.
    pub fn eval(&self, x: &[Felt], y: &[Felt]) -> Felt {
        let f = self.field();
        let xs: Vec<Felt> = x.iter().map(|&t| f.frobenius(t)).collect();
        f.dot(&xs, &self.gram.mul_vec(y))
    }

    /// The covector `λ(x) = ε Φ^σ x^σ`, so that `λ(x)·y = φ(x, y)`.
    pub fn lambda(&self, x: &[Felt]) -> Vec<Felt> {
        let f = self.field();
        let xs: Vec<Felt> = x.iter().map(|&t| f.frobenius(t)).collect();
        self.gram.frobenius().scale(self.eps).mul_vec(&xs)
    }

    /// `Rad(φ) = Ker Φ`.
    pub fn radical(&self) -> Subspace {
        Subspace::kernel_of(&self.gram)
    }

    pub fn is_degenerate(&self) -> bool {
        self.gram.rank() < self.n()
    }

    pub fn is_null(&self) -> bool {
        self.gram.is_zero()
    }

    /// `φ(x, x) = 0` for all `x`: σ = id, Φ anti-symmetric with zero diagonal.
    pub fn is_alternating(&self) -> bool {
        let f = self.field();
        if !f.sigma_is_identity() {
            return self.is_null();
        }
        let n = self.n();
        (0..n).all(|i| {
            self.gram.get(i, i).is_zero() && (0..n).all(|j| self.gram.get(j, i) == f.neg(self.gram.get(i, j)))
        })
    }

    /// Whether `φ(x, x)` lies in `{t + ε t^σ}` for every `x`.
    ///
    /// The cross terms of `φ(x, x)` are already of the form `t + ε t^σ`, and
    /// that set is an additive group closed under multiplication by σ-fixed
    /// scalars, so it suffices to check the diagonal of Φ.
    pub fn is_trace_valued(&self) -> bool {
        let traces = self.field().trace_value_set(self.eps).expect("validated epsilon");
        (0..self.n()).all(|i| traces.contains(&self.gram.get(i, i)))
    }

    /// Anti-symmetric matrix `X = A_{x∧y}` of a line.
    pub fn line_matrix(&self, line: &ProjLine) -> Mat {
        let (a, b) = line.basis();
        wedge_product(self.field(), a, b)
    }

    /// `Φ^σ X^σ Φ X`.
    pub fn isotropy_matrix(&self, x: &Mat) -> Mat {
        self.gram.frobenius().mul(&x.frobenius()).mul(&self.gram).mul(x)
    }

    /// `X^σ Φ X`.
    pub fn reduced_isotropy_matrix(&self, x: &Mat) -> Mat {
        x.frobenius().mul(&self.gram).mul(x)
    }

    /// `Φ X Φ^σ`.
    pub fn radical_matrix(&self, x: &Mat) -> Mat {
        self.gram.mul(x).mul(&self.gram.frobenius())
    }

    pub fn meets_radical(&self, line: &ProjLine) -> bool {
        self.radical_matrix(&self.line_matrix(line)).is_zero()
    }

    /// Whether the line is totally isotropic.
    pub fn totally_isotropic(&self, line: &ProjLine) -> bool {
        let x = self.line_matrix(line);
        if self.radical_matrix(&x).is_zero() {
            let (a, b) = line.basis();
            return [(a, a), (a, b), (b, a), (b, b)].iter().all(|(u, v)| self.eval(u, v).is_zero());
        }
        if self.is_degenerate() {
            self.isotropy_matrix(&x).is_zero()
        } else {
            self.reduced_isotropy_matrix(&x).is_zero()
        }
    }

    /// Whether `s2 ⊆ s^⊥`, decided by `Φ^σ X^σ Φ Y = O`. Requires that `s`
    /// avoids the radical.
    pub fn perp_relation(&self, s: &ProjLine, s2: &ProjLine) -> Result<bool, FormError> {
        let x = self.line_matrix(s);
        if self.radical_matrix(&x).is_zero() {
            return Err(FormError::LineMeetsRadical);
        }
        let y = self.line_matrix(s2);
        Ok(self.gram.frobenius().mul(&x.frobenius()).mul(&self.gram).mul(&y).is_zero())
    }

    pub fn is_isotropic_vector(&self, x: &[Felt]) -> bool {
        self.eval(x, x).is_zero()
    }

    /// Maximal dimension of a totally isotropic subspace, found by greedy
    /// extension (all maximal totally isotropic subspaces have equal
    /// dimension).
    pub fn witt_index(&self) -> usize {
        let f = self.field().clone();
        let n = self.n();
        let mut basis: Vec<Vec<Felt>> = Vec::new();
        loop {
            let span = Subspace::span(&f, n, &basis).expect("lengths");
            let next = all_vectors(&f, n).find(|v| {
                !span.contains(v)
                    && self.is_isotropic_vector(v)
                    && basis.iter().all(|b| self.eval(b, v).is_zero())
            });
            match next {
                Some(v) => basis.push(v),
                None => return basis.len(),
            }
        }
    }
}

/// A quadratic form `χ(x) = xᵀ U x` over a field of characteristic 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadForm {
    upper: Mat,
    polar: SesquiForm,
}

impl QuadForm {
    pub fn new(upper: Mat) -> Result<QuadForm, FormError> {
        if !upper.is_square() {
            return Err(FormError::NotSquare { rows: upper.rows(), cols: upper.cols() });
        }
        let f = upper.field();
        if f.characteristic() != 2 || !f.sigma_is_identity() {
            return Err(FormError::NotCharTwo);
        }
        for i in 0..upper.rows() {
            for j in 0..i {
                if !upper.get(i, j).is_zero() {
                    return Err(FormError::NotUpperTriangular);
                }
            }
        }
        let polar = SesquiForm::polar_of(&upper)?;
        Ok(QuadForm { upper, polar })
    }

    pub fn field(&self) -> &Field {
        self.upper.field()
    }
    pub fn upper(&self) -> &Mat {
        &self.upper
    }
    pub fn n(&self) -> usize {
        self.upper.rows()
    }

    /// The alternating bilinearization `φ(x, y) = χ(x+y) − χ(x) − χ(y)`.
    pub fn polar(&self) -> &SesquiForm {
        &self.polar
    }

    /// `xᵀ U x`.
    pub fn eval(&self, x: &[Felt]) -> Felt {
        self.field().dot(x, &self.upper.mul_vec(x))
    }

    /// No nonzero vector of the polar radical is singular.
    pub fn is_nonsingular(&self) -> bool {
        quadric_nonsingular(&self.upper)
    }

    /// Whether the line is totally singular: `Φ X Φ X = O` and `χ` vanishes
    /// on every column of `X`.
    pub fn totally_singular(&self, line: &ProjLine) -> bool {
        let x = self.polar.line_matrix(line);
        let phi = self.polar.gram();
        if !phi.mul(&x).mul(phi).mul(&x).is_zero() {
            return false;
        }
        (0..self.n()).all(|k| self.eval(&x.column(k)).is_zero())
    }

    /// Maximal dimension of a totally singular subspace (greedy).
    pub fn witt_index(&self) -> usize {
        let f = self.field().clone();
        let n = self.n();
        let mut basis: Vec<Vec<Felt>> = Vec::new();
        loop {
            let span = Subspace::span(&f, n, &basis).expect("lengths");
            let next = all_vectors(&f, n).find(|v| {
                !span.contains(v) && self.eval(v).is_zero() && basis.iter().all(|b| self.polar.eval(b, v).is_zero())
            });
            match next {
                Some(v) => basis.push(v),
                None => return basis.len(),
            }
        }
    }
}

/// Non-singularity of the quadric `xᵀ U x = 0` in any characteristic: no
/// nonzero vector of the radical of `U + Uᵀ` is singular.
pub fn quadric_nonsingular(upper: &Mat) -> bool {
    let f = upper.field().clone();
    let rad = Subspace::kernel_of(&upper.add(&upper.transpose()));
    let basis = rad.basis_vecs();
    let n = upper.rows();
    let nonsingular = all_vectors(&f, basis.len()).skip(1).all(|coeffs| {
        let mut v = vec![Felt::ZERO; n];
        for (c, b) in coeffs.iter().zip(&basis) {
            f.axpy(&mut v, *c, b);
        }
        !f.dot(&v, &upper.mul_vec(&v)).is_zero()
    });
    nonsingular
}

/// A polar form: either sesquilinear or a characteristic-2 quadratic form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolarForm {
    Sesqui(SesquiForm),
    Quad(QuadForm),
}

impl PolarForm {
    pub fn field(&self) -> &Field {
        match self {
            PolarForm::Sesqui(s) => s.field(),
            PolarForm::Quad(q) => q.field(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            PolarForm::Sesqui(s) => s.n(),
            PolarForm::Quad(q) => q.n(),
        }
    }

    /// The sesquilinear form itself, or the bilinearization of χ.
    pub fn sesqui(&self) -> &SesquiForm {
        match self {
            PolarForm::Sesqui(s) => s,
            PolarForm::Quad(q) => q.polar(),
        }
    }

    /// Totally isotropic (sesquilinear) or totally singular (quadratic).
    pub fn line_in_polar_space(&self, line: &ProjLine) -> bool {
        match self {
            PolarForm::Sesqui(s) => s.totally_isotropic(line),
            PolarForm::Quad(q) => q.totally_singular(line),
        }
    }

    /// Isotropic (sesquilinear) or singular (quadratic) point.
    pub fn point_in_polar_space(&self, x: &[Felt]) -> bool {
        match self {
            PolarForm::Sesqui(s) => s.is_isotropic_vector(x),
            PolarForm::Quad(q) => q.eval(x).is_zero(),
        }
    }

    pub fn witt_index(&self) -> usize {
        match self {
            PolarForm::Sesqui(s) => s.witt_index(),
            PolarForm::Quad(q) => q.witt_index(),
        }
    }

    pub fn is_null(&self) -> bool {
        match self {
            PolarForm::Sesqui(s) => s.is_null(),
            PolarForm::Quad(q) => q.upper().is_zero(),
        }
    }

    /// Textual form description (see [`parse_form`]).
    pub fn to_text(&self) -> String {
        let f = self.field();
        let rows = |m: &Mat| -> String {
            (0..m.rows())
                .map(|r| m.row(r).iter().map(|&x| f.fmt_elem(x)).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join(";")
        };
        match self {
            PolarForm::Sesqui(s) => format!(
                "kind = sesqui\neps = {}\nmatrix = {}\n",
                f.fmt_elem(s.eps()),
                rows(s.gram())
            ),
            PolarForm::Quad(q) => format!("kind = quadratic\nmatrix = {}\n", rows(q.upper())),
        }
    }
}

/// Parses a form description of `key = value` lines:
///
/// ```text
/// kind = sesqui          # or: quadratic
/// eps = 1                # sesquilinear only, defaults to 1
/// matrix = 0,1;1,0       # rows separated by ';', entries by ','
/// ```
///
/// `#` starts a comment. The σ of the form is the field's σ. A `quadratic`
/// matrix over an odd-characteristic field is read as `xᵀ U x` and replaced
/// by its symmetric bilinearization.
pub fn parse_form(field: &Field, text: &str) -> Result<PolarForm, FormError> {
    let mut kind = None;
    let mut eps = Felt::ONE;
    let mut matrix = None;
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| FormError::Parse(format!("expected key = value: `{line}`")))?;
        let value = value.trim();
        match key.trim() {
            "kind" => kind = Some(value.to_string()),
            "eps" => eps = field.parse_elem(value)?,
            "matrix" => {
                let rows = value
                    .split(';')
                    .map(|r| r.split(',').map(|e| field.parse_elem(e)).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                let cols = rows.first().map_or(0, |r| r.len());
                matrix = Some(Mat::from_rows(field, cols, &rows)?);
            }
            other => return Err(FormError::Parse(format!("unknown key `{other}`"))),
        }
    }
    let m = matrix.ok_or_else(|| FormError::Parse("missing `matrix`".into()))?;
    match kind.as_deref().unwrap_or("sesqui") {
        "sesqui" | "sesquilinear" | "bilinear" => Ok(PolarForm::Sesqui(SesquiForm::new(m, eps)?)),
        "quadratic" | "quad" => {
            if field.characteristic() == 2 {
                Ok(PolarForm::Quad(QuadForm::new(m)?))
            } else {
                Ok(PolarForm::Sesqui(SesquiForm::polar_of(&m)?))
            }
        }
        other => Err(FormError::Parse(format!("unknown kind `{other}`"))),
    }
}

/// All values `φ(x, x)`; exhaustive, used to cross-check the trace test.
pub fn diagonal_values(form: &SesquiForm) -> BTreeSet<Felt> {
    all_vectors(form.field(), form.n()).map(|x| form.eval(&x, &x)).collect()
}
