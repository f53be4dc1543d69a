//! Nucleus of a conic in characteristic 2: the common point of its
//! tangent lines.

use std::collections::BTreeSet;

use crate::field::{Felt, Field};
use crate::linalg::{normalize, Subspace};
use crate::projective::{points, ProjLine};
use crate::varieties::residue::{classify, span_coordinates};
use crate::varieties::Shape;

use super::EmbeddingError;

/// Returns the normalized nucleus of the conic formed by `pts`, computed as
/// the intersection of two tangents and checked against all of them.
pub fn conic_nucleus(field: &Field, pts: &[Vec<Felt>]) -> Result<Vec<Felt>, EmbeddingError> {
    if field.characteristic() != 2 {
        return Err(EmbeddingError::NotAConic("tangents are not concurrent in odd characteristic".into()));
    }
    if pts.is_empty() {
        return Err(EmbeddingError::NotAConic("empty point set".into()));
    }
    let shape = classify(field, pts);
    if shape != Shape::Conic {
        return Err(EmbeddingError::NotAConic(format!("point set classified as {shape:?}")));
    }
    let span = Subspace::span(field, pts[0].len(), pts).expect("lengths");
    let coords: BTreeSet<Vec<Felt>> = span_coordinates(field, pts).into_iter().collect();
    let plane = points(field, 3);
    let tangent = |p: &Vec<Felt>| -> Subspace {
        let t = plane
            .iter()
            .filter_map(|r| ProjLine::through(field, p, r))
            .find(|l| l.points(field).iter().filter(|x| coords.contains(*x)).count() == 1)
            .expect("a conic has a tangent at each point");
        let (a, b) = t.basis();
        Subspace::span(field, 3, &[a.to_vec(), b.to_vec()]).expect("lengths")
    };
    let tangents: Vec<Subspace> = coords.iter().map(tangent).collect();
    let meet = tangents[0].intersect(&tangents[1]);
    let n = meet.basis_vecs().pop().ok_or_else(|| EmbeddingError::NotAConic("tangents coincide".into()))?;
    if !tangents.iter().all(|t| t.contains(&n)) {
        return Err(EmbeddingError::NotAConic("tangents are not concurrent".into()));
    }
    let basis = span.basis_vecs();
    let mut v = vec![Felt::ZERO; pts[0].len()];
    for (c, b) in n.iter().zip(&basis) {
        field.axpy(&mut v, *c, b);
    }
    Ok(normalize(field, &v).expect("nonzero"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nucleus_of_x0x1_eq_x2_squared() {
        for q in [2, 4, 8] {
            let f = Field::gf(q).unwrap();
            let conic: Vec<Vec<Felt>> =
                points(&f, 3).into_iter().filter(|p| f.mul(p[0], p[1]) == f.mul(p[2], p[2])).collect();
            // embed in a 4-space to exercise the change of coordinates
            let lifted: Vec<Vec<Felt>> = conic.iter().map(|p| vec![p[0], Felt::ZERO, p[1], p[2]]).collect();
            let n = conic_nucleus(&f, &lifted).unwrap();
            assert_eq!(n, vec![Felt::ZERO, Felt::ZERO, Felt::ZERO, Felt::ONE], "q={q}");
        }
    }

    #[test]
    fn odd_characteristic_is_rejected() {
        let f = Field::gf(3).unwrap();
        let conic: Vec<Vec<Felt>> =
            points(&f, 3).into_iter().filter(|p| f.mul(p[0], p[1]) == f.mul(p[2], p[2])).collect();
        assert!(matches!(conic_nucleus(&f, &conic), Err(EmbeddingError::NotAConic(_))));
    }
}
