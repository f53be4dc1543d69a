//! Grassmann embeddings: a line of PG(V) goes to its Plücker point.

use std::collections::HashMap;

use crate::field::{Felt, Field};
use crate::forms::PolarForm;
use crate::projective::{lines, points, ProjLine};
use crate::wedge::{plucker, wedge_coords};

use super::{EmbeddingError, Geometry, PointEmbedding};

/// Plücker vectors of the given lines.
pub fn grassmann_embed(field: &Field, lines: &[ProjLine]) -> Vec<Vec<Felt>> {
    lines.iter().map(|l| plucker(field, l).coords().to_vec()).collect()
}

/// The polar space of a form as a point-line geometry: isotropic
/// (singular) points and totally isotropic (singular) lines, with the
/// inclusion in PG(V) as embedding. Also returns the lines themselves, in
/// the same order as the geometry's lines.
pub fn polar_geometry(form: &PolarForm) -> Result<(Geometry, PointEmbedding, Vec<ProjLine>), EmbeddingError> {
    let field = form.field();
    let pts: Vec<Vec<Felt>> = points(field, form.n()).into_iter().filter(|p| form.point_in_polar_space(p)).collect();
    let index: HashMap<&Vec<Felt>, usize> = pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let ls: Vec<ProjLine> = lines(field, form.n()).into_iter().filter(|l| form.line_in_polar_space(l)).collect();
    let incid = ls.iter().map(|l| l.points(field).iter().map(|p| index[p]).collect()).collect();
    let geom = Geometry::new(pts.len(), incid)?;
    let emb = PointEmbedding::new(field, form.n(), pts)?;
    Ok((geom, emb, ls))
}

/// Given an embedding `ε` of a geometry, the dual geometry embedded by
/// sending each line `l` to the Plücker point of the projective line
/// `⟨ε(l)⟩`. Every line image must span a projective line.
pub fn grassmann_dual_embedding(geom: &Geometry, emb: &PointEmbedding) -> Result<(Geometry, PointEmbedding), EmbeddingError> {
    let field = emb.field();
    let dual = geom.dual()?;
    let mut images = Vec::with_capacity(geom.num_lines());
    for l in 0..geom.num_lines() {
        let pts = geom.line(l);
        let w = wedge_coords(field, emb.image(pts[0]), emb.image(pts[1]));
        if w.iter().all(|c| c.is_zero()) {
            return Err(EmbeddingError::ZeroImage(l));
        }
        images.push(w);
    }
    let d = emb.dim();
    let emb = PointEmbedding::new(field, d * (d - 1) / 2, images)?;
    Ok((dual, emb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embeddings::check_embedding;
    use crate::forms::SesquiForm;
    use crate::linalg::Mat;

    #[test]
    fn symplectic_w32_dual_grassmann_is_projective() {
        let f = Field::gf(2).unwrap();
        let m = Mat::from_ints(&f, &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        let form = PolarForm::Sesqui(SesquiForm::new(m, Felt::ONE).unwrap());
        let (g, e, ls) = polar_geometry(&form).unwrap();
        assert_eq!((g.num_points(), g.num_lines(), ls.len()), (15, 15, 15));
        assert!(check_embedding(&g, &e).projective());
        let (dual, gr) = grassmann_dual_embedding(&g, &e).unwrap();
        assert_eq!(dual.num_points(), 15);
        // the image spans a hyperplane of V∧V, so restrict before checking
        let c = check_embedding(&dual, &gr.restricted_to_span());
        assert!(c.projective(), "{c:?}");
        assert_eq!(c.span_dim, 5);
    }
}
