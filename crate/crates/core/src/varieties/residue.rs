//! Residues at a point: the Plücker images of the lines of the polar space
//! through a fixed point, and recognition of the shape they form.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::field::{Felt, Field};
use crate::forms::{quadric_nonsingular, PolarForm};
use crate::linalg::{normalize, Mat, Subspace};
use crate::projective::{lines, points, ProjLine};
use crate::wedge::{plucker, star_subspace, WedgePoint};

use super::VarietyError;

/// Recognized configurations of a point set inside its span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape {
    /// Every point of a projective subspace of vector dimension `dim`.
    FullSubspace { dim: usize },
    /// `q+1` points of a plane forming a nonsingular conic.
    Conic,
    /// `√q+1` points of a line over GF(q) forming a subline over GF(√q).
    BaerSubline,
    /// `q√q+1` points of a plane over GF(q) meeting every line in 1 or
    /// `√q+1` points.
    Unital,
    /// `q²+1` points of a solid forming the zero set of a nonsingular quadric.
    EllipticQuadric,
    /// None of the above.
    Other,
}

#[derive(Debug, Clone)]
pub struct ResidueSection {
    pub point: Vec<Felt>,
    pub points: BTreeSet<WedgePoint>,
    pub span_dim: usize,
    /// Whether every point satisfies the star equations of the point.
    pub in_star: bool,
    pub shape: Shape,
}

/// The residue of the variety of `form` at the point `[a]`.
pub fn residue_section(form: &PolarForm, a: &[Felt]) -> Result<ResidueSection, VarietyError> {
    let field = form.field().clone();
    let a = normalize(&field, a).ok_or(VarietyError::PointNotIsotropic)?;
    if !form.point_in_polar_space(&a) {
        return Err(VarietyError::PointNotIsotropic);
    }
    let mut set = BTreeSet::new();
    for b in points(&field, form.n()) {
        if let Some(l) = ProjLine::through(&field, &a, &b) {
            if form.line_in_polar_space(&l) {
                set.insert(plucker(&field, &l));
            }
        }
    }
    let star = star_subspace(&field, &a);
    let in_star = set.iter().all(|w| star.contains(w.coords()));
    let vecs: Vec<Vec<Felt>> = set.iter().map(|w| w.coords().to_vec()).collect();
    let span_dim = if vecs.is_empty() { 0 } else { Subspace::span(&field, vecs[0].len(), &vecs).expect("lengths").dim() };
    let shape = classify(&field, &vecs);
    Ok(ResidueSection { point: a, points: set, span_dim, in_star, shape })
}

/// Coordinates of the points in a basis of their span, normalized.
pub fn span_coordinates(field: &Field, vecs: &[Vec<Felt>]) -> Vec<Vec<Felt>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let span = Subspace::span(field, vecs[0].len(), vecs).expect("lengths");
    vecs.iter().map(|v| normalize(field, &span.coordinates(v).expect("in span")).expect("nonzero")).collect()
}

fn sqrt_order(field: &Field) -> Option<u32> {
    let q = field.q();
    let r = (q as f64).sqrt().round() as u32;
    (r * r == q).then_some(r)
}

/// Classifies a set of projective points (given by representatives).
pub fn classify(field: &Field, vecs: &[Vec<Felt>]) -> Shape {
    if vecs.is_empty() {
        return Shape::Other;
    }
    let coords: BTreeSet<Vec<Felt>> = span_coordinates(field, vecs).into_iter().collect();
    let d = coords.iter().next().map_or(0, |c| c.len());
    let q = field.q() as usize;
    let full = (0..d).map(|i| q.pow(i as u32)).sum::<usize>();
    if coords.len() == full {
        return Shape::FullSubspace { dim: d };
    }
    let list: Vec<Vec<Felt>> = coords.iter().cloned().collect();
    match d {
        2 if is_baer_subline(field, &list) => Shape::BaerSubline,
        3 if list.len() == q + 1 && fit_quadric(field, &list).is_some() => Shape::Conic,
        3 if is_unital(field, &coords) => Shape::Unital,
        4 if list.len() == q * q + 1 && fit_quadric(field, &list).is_some() => Shape::EllipticQuadric,
        _ => Shape::Other,
    }
}

fn is_baer_subline(field: &Field, pts: &[Vec<Felt>]) -> bool {
    let Some(r) = sqrt_order(field) else { return false };
    if pts.len() != r as usize + 1 || pts.len() < 3 {
        return false;
    }
    let in_sub = |x: Felt| field.pow(x, r as u64) == x;
    let basis = Mat::from_columns(field, 2, &[pts[0].clone(), pts[1].clone()]).expect("lengths");
    let Some(lm) = basis.solve(&pts[2]) else { return false };
    // rescale the first two points so the third is their sum
    let v0: Vec<Felt> = pts[0].iter().map(|&c| field.mul(c, lm[0])).collect();
    let v1: Vec<Felt> = pts[1].iter().map(|&c| field.mul(c, lm[1])).collect();
    let frame = Mat::from_columns(field, 2, &[v0, v1]).expect("lengths");
    pts.iter().all(|p| match frame.solve(p) {
        Some(c) if c[0].is_zero() => true,
        Some(c) => in_sub(field.div(c[1], c[0])),
        None => false,
    })
}

fn is_unital(field: &Field, coords: &BTreeSet<Vec<Felt>>) -> bool {
    let Some(r) = sqrt_order(field) else { return false };
    let r = r as usize;
    if coords.len() != r * r * r + 1 {
        return false;
    }
    lines(field, 3).iter().all(|l| {
        let k = l.points(field).iter().filter(|p| coords.contains(*p)).count();
        k == 1 || k == r + 1
    })
}

/// Searches for a nonsingular quadratic form (upper-triangular matrix)
/// whose zero set in PG(d-1, q) is exactly `pts`. Gives up when the space
/// of quadrics through the points is too large to scan.
pub fn fit_quadric(field: &Field, pts: &[Vec<Felt>]) -> Option<Mat> {
    let d = pts.first()?.len();
    let monos: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let rows: Vec<Vec<Felt>> = pts.iter().map(|p| monos.iter().map(|&(i, j)| field.mul(p[i], p[j])).collect()).collect();
    let kernel = Mat::from_rows(field, monos.len(), &rows).ok()?.kernel_basis();
    if kernel.is_empty() || (field.q() as u64).saturating_pow(kernel.len() as u32) > 1 << 14 {
        return None;
    }
    let target: BTreeSet<Vec<Felt>> = pts.iter().cloned().collect();
    let space = points(field, d);
    for combo in points(field, kernel.len()) {
        let mut coeffs = vec![Felt::ZERO; monos.len()];
        for (c, v) in combo.iter().zip(&kernel) {
            field.axpy(&mut coeffs, *c, v);
        }
        let mut u = Mat::zeros(field, d, d);
        for (k, &(i, j)) in monos.iter().enumerate() {
            u.set(i, j, coeffs[k]);
        }
        if !quadric_nonsingular(&u) {
            continue;
        }
        let zeros = space
            .iter()
            .filter(|p| {
                let mut s = Felt::ZERO;
                for (k, &(i, j)) in monos.iter().enumerate() {
                    s = field.add(s, field.mul(coeffs[k], field.mul(p[i], p[j])));
                }
                s.is_zero()
            })
            .count();
        if zeros == target.len() {
            return Some(u);
        }
    }
    None
}
