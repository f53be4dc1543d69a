//! Point sets on the Grassmann variety defined by a polar form: the images
//! of totally isotropic lines (`G_phi`), totally singular lines (`G_chi`),
//! and lines meeting the radical (`R_phi`). Spans, tangent spaces,
//! dimensions and exhaustive checks of the matrix descriptions live here.

pub mod emit;
pub mod poly;
pub mod residue;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::field::{Felt, Field};
use crate::forms::{FormError, PolarForm, SesquiForm};
use crate::linalg::{Mat, Subspace};
use crate::projective::{lines, ProjLine};
use crate::wedge::{alpha, grassmann_tangent_system, line_of, plucker, WedgeError, WedgeIndex, WedgePoint};

pub use emit::{emit_equations, EquationKind};
pub use poly::{EqnGroup, EqnSystem, Monomial, Poly, PolyError, Var, VarNaming};
pub use residue::{residue_section, ResidueSection, Shape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("the form has no totally isotropic (singular) line")]
    WittIndexTooSmall,
    #[error("the form is identically zero")]
    NullForm,
    #[error("point is not on the variety")]
    PointNotOnVariety,
    #[error("tangent dimensions vary over the variety: {0:?}")]
    NonConstantTangentDimension(BTreeMap<usize, usize>),
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
    #[error("point is not isotropic (singular) for the form")]
    PointNotIsotropic,
    #[error(transparent)]
    Wedge(#[from] WedgeError),
    #[error(transparent)]
    Form(#[from] FormError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VarietyKind {
    Grassmann,
    GPhi,
    GChi,
    RPhi,
}

/// A canonical set of Plücker points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietySet {
    pub kind: VarietyKind,
    pub field: Field,
    pub n: usize,
    pub form: Option<PolarForm>,
    pub points: BTreeSet<WedgePoint>,
}

impl VarietySet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, w: &WedgePoint) -> bool {
        self.points.contains(w)
    }

    pub fn point_vecs(&self) -> Vec<Vec<Felt>> {
        self.points.iter().map(|w| w.coords().to_vec()).collect()
    }

    /// Linear span inside V∧V.
    pub fn span(&self) -> Subspace {
        Subspace::span(&self.field, WedgeIndex::new(self.n).len(), &self.point_vecs()).expect("uniform lengths")
    }

    pub fn span_dimension(&self) -> usize {
        self.span().dim()
    }

    /// Tangent space at `w` (see [`tangent_space`]); `Grassmann` and `RPhi`
    /// sets are handled here as well.
    pub fn tangent_space(&self, w: &WedgePoint) -> Result<Tangent, VarietyError> {
        if !self.contains(w) {
            return Err(VarietyError::PointNotOnVariety);
        }
        match (self.kind, &self.form) {
            (VarietyKind::Grassmann, _) => Tangent::from_system(grassmann_tangent_system(&self.field, w.coords())?),
            (VarietyKind::RPhi, Some(form)) => {
                let s = form.sesqui().clone();
                let lin = linear_map_system(&self.field, self.n, |a| s.radical_matrix(a));
                Tangent::from_system(grassmann_tangent_system(&self.field, w.coords())?.vstack(&lin))
            }
            (_, Some(form)) => tangent_space(form, w),
            _ => Err(VarietyError::UnsupportedCombination("variety without a form".into())),
        }
    }

    /// Tangent vector dimension at every point, as a multiset.
    pub fn tangent_dimensions(&self) -> Result<BTreeMap<usize, usize>, VarietyError> {
        let mut dims = BTreeMap::new();
        for w in &self.points {
            *dims.entry(self.tangent_space(w)?.dim()).or_insert(0) += 1;
        }
        Ok(dims)
    }

    /// Projective dimension, defined when all tangent spaces agree.
    pub fn dimension(&self) -> Result<usize, VarietyError> {
        let dims = self.tangent_dimensions()?;
        if dims.len() == 1 {
            Ok(*dims.keys().next().expect("one entry") - 1)
        } else {
            Err(VarietyError::NonConstantTangentDimension(dims))
        }
    }
}

/// The full Grassmann variety of lines of PG(n-1, q).
pub fn grassmann_variety(field: &Field, n: usize) -> VarietySet {
    VarietySet {
        kind: VarietyKind::Grassmann,
        field: field.clone(),
        n,
        form: None,
        points: lines(field, n).iter().map(|l| plucker(field, l)).collect(),
    }
}

/// Plücker images of the totally isotropic (resp. totally singular) lines.
pub fn build_variety(form: &PolarForm) -> Result<VarietySet, VarietyError> {
    if form.is_null() {
        return Err(VarietyError::NullForm);
    }
    let field = form.field().clone();
    let points: BTreeSet<WedgePoint> =
        lines(&field, form.n()).iter().filter(|l| form.line_in_polar_space(l)).map(|l| plucker(&field, l)).collect();
    if points.is_empty() {
        return Err(VarietyError::WittIndexTooSmall);
    }
    let kind = match form {
        PolarForm::Sesqui(_) => VarietyKind::GPhi,
        PolarForm::Quad(_) => VarietyKind::GChi,
    };
    Ok(VarietySet { kind, field, n: form.n(), form: Some(form.clone()), points })
}

/// `R_phi` (images of lines meeting the radical) and its span dimension.
pub fn radical_star(form: &SesquiForm) -> (VarietySet, usize) {
    let field = form.field().clone();
    let points: BTreeSet<WedgePoint> =
        lines(&field, form.n()).iter().filter(|l| form.meets_radical(l)).map(|l| plucker(&field, l)).collect();
    let set = VarietySet {
        kind: VarietyKind::RPhi,
        field,
        n: form.n(),
        form: Some(PolarForm::Sesqui(form.clone())),
        points,
    };
    let dim = set.span_dimension();
    (set, dim)
}

/// Predicted span dimension of `R_phi`: `(n−r)r + C(r,2)`, `r = dim Rad`.
pub fn radical_star_span_formula(n: usize, r: usize) -> usize {
    (n - r) * r + r * r.saturating_sub(1) / 2
}

/// A tangent space together with the linear system that defines it.
#[derive(Debug, Clone)]
pub struct Tangent {
    pub system: Mat,
    pub rank: usize,
    pub subspace: Subspace,
}

impl Tangent {
    fn from_system(system: Mat) -> Result<Tangent, VarietyError> {
        let rank = system.rank();
        let subspace = Subspace::kernel_of(&system);
        Ok(Tangent { system, rank, subspace })
    }

    /// Vector dimension.
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// Canonical basis of the row space of the system.
    pub fn equations(&self) -> Mat {
        self.system.row_space_basis()
    }
}

/// Coefficient matrix of the linear map `A ↦ L(A)` on anti-symmetric
/// matrices, one row per entry of `L(A)`, one column per Plücker position.
pub fn linear_map_system(field: &Field, n: usize, map: impl Fn(&Mat) -> Mat) -> Mat {
    let idx = WedgeIndex::new(n);
    let mut cols = Vec::with_capacity(idx.len());
    for p in 0..idx.len() {
        let mut e = vec![Felt::ZERO; idx.len()];
        e[p] = Felt::ONE;
        let img = map(&alpha(field, &e).expect("length"));
        let mut flat = Vec::with_capacity(img.rows() * img.cols());
        for r in 0..img.rows() {
            flat.extend_from_slice(img.row(r));
        }
        cols.push(flat);
    }
    let rows = cols.first().map_or(0, |c| c.len());
    Mat::from_columns(field, rows, &cols).expect("uniform lengths")
}

/// Linear conditions from differentiating the form equations at `w`.
///
/// - σ = id, Φ nondegenerate: `XΦA + AΦX = O`;
/// - σ ≠ id, Φ nondegenerate: `X^σ Φ A = O` (twisted variables have zero
///   derivative);
/// - σ = id, Φ degenerate: `ΦXΦA + ΦAΦX = O`;
/// - σ ≠ id, Φ degenerate: `Φ^σ X^σ Φ A = O`;
/// - quadratic χ: `ΦXΦA + ΦAΦX = O` and, for each column `k`,
///   `Σ_j (Φ c_k)_j a_{j,k} = 0` where `c_k` is column `k` of `X`.
///
/// Here `X` is the matrix of `w` and `A` the unknown.
pub fn form_tangent_system(form: &PolarForm, w: &WedgePoint) -> Mat {
    let field = form.field().clone();
    let n = form.n();
    let x = w.matrix(&field);
    match form {
        PolarForm::Sesqui(s) => {
            let phi = s.gram().clone();
            let sigma_id = field.sigma_is_identity();
            let degenerate = s.is_degenerate();
            match (sigma_id, degenerate) {
                (true, false) => linear_map_system(&field, n, |a| x.mul(&phi).mul(a).add(&a.mul(&phi).mul(&x))),
                (false, false) => {
                    let xs_phi = x.frobenius().mul(&phi);
                    linear_map_system(&field, n, |a| xs_phi.mul(a))
                }
                (true, true) => {
                    let pxp = phi.mul(&x).mul(&phi);
                    let px = phi.mul(&x);
                    linear_map_system(&field, n, |a| pxp.mul(a).add(&phi.mul(a).mul(&px)))
                }
                (false, true) => {
                    let left = phi.frobenius().mul(&x.frobenius()).mul(&phi);
                    linear_map_system(&field, n, |a| left.mul(a))
                }
            }
        }
        PolarForm::Quad(q) => {
            let phi = q.polar().gram().clone();
            let pxp = phi.mul(&x).mul(&phi);
            let px = phi.mul(&x);
            let sys = linear_map_system(&field, n, |a| pxp.mul(a).add(&phi.mul(a).mul(&px)));
            let idx = WedgeIndex::new(n);
            let mut rows = Vec::new();
            for k in 0..n {
                let grad = phi.mul_vec(&x.column(k));
                let mut r = vec![Felt::ZERO; idx.len()];
                for (j, &g) in grad.iter().enumerate() {
                    match j.cmp(&k) {
                        std::cmp::Ordering::Less => r[idx.pos(j, k)] = field.add(r[idx.pos(j, k)], g),
                        std::cmp::Ordering::Greater => r[idx.pos(k, j)] = field.sub(r[idx.pos(k, j)], g),
                        std::cmp::Ordering::Equal => {}
                    }
                }
                rows.push(r);
            }
            sys.vstack(&Mat::from_rows(&field, idx.len(), &rows).expect("row length"))
        }
    }
}

/// Tangent space of `G_phi` / `G_chi` at `w`: the Grassmann tangent
/// conditions stacked with [`form_tangent_system`].
pub fn tangent_space(form: &PolarForm, w: &WedgePoint) -> Result<Tangent, VarietyError> {
    let field = form.field();
    let line = line_of(field, w).map_err(|_| VarietyError::PointNotOnVariety)?;
    if !form.line_in_polar_space(&line) {
        return Err(VarietyError::PointNotOnVariety);
    }
    let g = grassmann_tangent_system(field, w.coords())?;
    Tangent::from_system(g.vstack(&form_tangent_system(form, w)))
}

/// Projective dimension of the variety of `form`, scanning every point.
pub fn variety_dimension(form: &PolarForm) -> Result<usize, VarietyError> {
    build_variety(form)?.dimension()
}

/// One comparison of a solution set against its expected description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionCheck {
    pub name: String,
    pub expected: usize,
    pub observed: usize,
    pub pass: bool,
    /// A line (as a Plücker vector) in the symmetric difference, if any.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionReport {
    pub checks: Vec<SolutionCheck>,
}

impl SolutionReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&SolutionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn compare(field: &Field, name: &str, expected: &BTreeSet<ProjLine>, observed: &BTreeSet<ProjLine>) -> SolutionCheck {
    let witness = expected.symmetric_difference(observed).next().map(|l| plucker(field, l).to_text(field));
    SolutionCheck {
        name: name.to_string(),
        expected: expected.len(),
        observed: observed.len(),
        pass: witness.is_none(),
        witness,
    }
}

/// Checks the matrix descriptions against the definitions, over every line
/// of PG(n-1, q) (so the Grassmann relations hold throughout):
///
/// - `{Φ^σ X^σ Φ X = O}` gives `G_phi ∪ R_phi`;
/// - `{Φ X Φ^σ = O}` gives `R_phi`;
/// - for nondegenerate forms `{X^σ Φ X = O}` gives `G_phi`;
/// - for quadratic forms `{Φ X Φ X = O, χ(X e_k) = 0}` gives `G_chi`.
///
/// The reference sets are computed from the definitions: spanning vectors
/// pairwise orthogonal, and a nonzero intersection with `Rad`.
pub fn verify_solution_set(form: &PolarForm) -> SolutionReport {
    let field = form.field().clone();
    let s = form.sesqui();
    let rad = s.radical();
    let all = lines(&field, form.n());
    let mut g_phi = BTreeSet::new();
    let mut r_phi = BTreeSet::new();
    let mut g_chi = BTreeSet::new();
    let mut sol12 = BTreeSet::new();
    let mut sol14 = BTreeSet::new();
    let mut sol15 = BTreeSet::new();
    let mut sol_quad = BTreeSet::new();
    for l in &all {
        let (a, b) = l.basis();
        let ti = [(a, a), (a, b), (b, a), (b, b)].iter().all(|(u, v)| s.eval(u, v).is_zero());
        let span = Subspace::span(&field, form.n(), &[a.to_vec(), b.to_vec()]).expect("lengths");
        let meets = span.intersect(&rad).dim() > 0;
        if ti {
            g_phi.insert(l.clone());
        }
        if meets {
            r_phi.insert(l.clone());
        }
        let x = s.line_matrix(l);
        if s.isotropy_matrix(&x).is_zero() {
            sol12.insert(l.clone());
        }
        if s.reduced_isotropy_matrix(&x).is_zero() {
            sol14.insert(l.clone());
        }
        if s.radical_matrix(&x).is_zero() {
            sol15.insert(l.clone());
        }
        if let PolarForm::Quad(q) = form {
            if ti && q.eval(a).is_zero() && q.eval(b).is_zero() {
                g_chi.insert(l.clone());
            }
            if q.totally_singular(l) {
                sol_quad.insert(l.clone());
            }
        }
    }
    let union: BTreeSet<ProjLine> = g_phi.union(&r_phi).cloned().collect();
    let mut checks = vec![
        compare(&field, "isotropy_or_radical", &union, &sol12),
        compare(&field, "radical", &r_phi, &sol15),
    ];
    if !s.is_degenerate() {
        checks.push(compare(&field, "isotropy_nondegenerate", &g_phi, &sol14));
    }
    if matches!(form, PolarForm::Quad(_)) {
        checks.push(compare(&field, "singular", &g_chi, &sol_quad));
    }
    SolutionReport { checks }
}

/// Counts the points of PG(V∧V) satisfying `system` and reports those
/// violating the Grassmann relations. Exhaustive; only sensible for small
/// `q^{C(n,2)}`.
pub fn solutions_off_grassmannian(system: &EqnSystem) -> (usize, Option<Vec<Felt>>) {
    let field = &system.field;
    let len = system.naming.nvars();
    let mut count = 0;
    let mut witness = None;
    for v in crate::projective::points(field, len) {
        if system.satisfied_by(&v) {
            count += 1;
            if witness.is_none() && !crate::wedge::grassmann_membership(field, &v) {
                witness = Some(v);
            }
        }
    }
    (count, witness)
}
