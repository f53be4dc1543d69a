//! Suites around the symplectic quadrangle W(3,q) and the parabolic
//! quadric Q(4,2): the projection of the Veronese embedding onto the
//! Grassmann embedding, conic nuclei and their spans, and hulls.

use std::collections::BTreeSet;

use crate::embeddings::{
    check_embedding, check_quotient, conic_nucleus, fit_projection, grassmann_dual_embedding, hull, polar_geometry,
    veronese_map, veronese_vector, Geometry, PointEmbedding, DEFAULT_HULL_CAP,
};
use crate::field::{Felt, Field};
use crate::forms::{PolarForm, QuadForm, SesquiForm};
use crate::linalg::{normalize, proportional, Mat, Subspace};
use crate::projective::{gaussian_binomial, lines};
use crate::varieties::VarNaming;
use crate::wedge::plucker;

use super::{CaseError, Report};

/// W(3,q) from the alternating form `x1y2 − x2y1 + x3y4 − x4y3`, with its
/// natural embedding in PG(3,q).
pub fn symplectic_quadrangle(field: &Field) -> Result<(Geometry, PointEmbedding, Vec<crate::projective::ProjLine>), CaseError> {
    let alpha = Mat::from_ints(field, &[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
    let form = PolarForm::Sesqui(SesquiForm::new(alpha, field.neg(Felt::ONE))?);
    Ok(polar_geometry(&form)?)
}

/// The projection of the Veronese embedding of W(3,q) onto its Grassmann
/// embedding, the latter induced by the Klein image of the line set.
pub fn klein_projection_suite(q: u32) -> Result<Report, CaseError> {
    let field = Field::gf(q)?;
    let char2 = field.characteristic() == 2;
    let mut r = Report::new("klein_projection", q, field.spec());
    let (w, nat, wlines) = symplectic_quadrangle(&field)?;
    let klein = PointEmbedding::new(&field, 6, wlines.iter().map(|l| plucker(&field, l).coords().to_vec()).collect())?
        .restricted_to_span();
    r.eq("klein_span_dim", 5, klein.dim());
    let star = w.dual()?;
    let (_, gr) = grassmann_dual_embedding(&star, &klein)?;
    let gr_check = check_embedding(&w, &gr.restricted_to_span());
    r.eq("grassmann_embedding_degree", "2".to_string(), gr_check.degree.map_or("-".into(), |d| d.to_string()));
    r.eq("grassmann_span_dim", if char2 { 9 } else { 10 }, gr_check.span_dim);
    let ver = veronese_map(&nat)?;
    let Some(proj) = fit_projection(&field, ver.images(), gr.images()) else {
        r.claim("projection_found", true, false, false);
        return Ok(r);
    };
    r.eq("projection_found", true, true);
    r.eq("projection_solution_dim", 1, proj.solution_dim);
    r.eq("projection_kernel_dim", if char2 { 1 } else { 0 }, proj.kernel_dim());
    if !char2 {
        return Ok(r);
    }

    // nuclei of the conics ε₀^ver(l)
    let nuclei: Vec<Vec<Felt>> = (0..w.num_lines())
        .map(|l| conic_nucleus(&field, &ver.line_images(&w, l)))
        .collect::<Result<_, _>>()?;
    let n_span = Subspace::span(&field, 10, &nuclei).expect("lengths");
    r.eq("nuclei_span_dim", 5, n_span.dim());
    let kernel = proj.map.kernel_basis();
    let kernel_vecs: Vec<Vec<Felt>> = kernel
        .iter()
        .map(|c| {
            let mut v = vec![Felt::ZERO; 10];
            for (a, b) in c.iter().zip(proj.span.basis_vecs()) {
                field.axpy(&mut v, *a, &b);
            }
            v
        })
        .collect();
    r.eq("kernel_inside_nuclei_span", true, kernel_vecs.iter().all(|v| n_span.contains(v)));
    let images: Vec<Vec<Felt>> = nuclei.iter().map(|n| proj.apply(n).expect("in span")).collect();
    let mut agree = true;
    for (l, img) in images.iter().enumerate() {
        let gn = conic_nucleus(&field, &gr.line_images(&w, l))?;
        agree &= !img.iter().all(|c| c.is_zero()) && proportional(&field, img, &gn);
    }
    r.eq("projected_nuclei_are_grassmann_nuclei", true, agree);
    let k = Subspace::span(&field, 10, &images).expect("lengths");
    r.eq("projected_nuclei_span_dim", 4, k.dim());
    r.eq("projected_nuclei_form_w3q", true, is_w3q(&field, &w, &images, &k, q));
    let qc = check_quotient(&w, &gr, &k);
    r.eq("quotient_valid", true, qc.valid());
    r.eq("quotient_line_meet_dim", "1".to_string(), qc.k.map_or("-".into(), |v| v.to_string()));
    r.eq("quotient_degree", "1".to_string(), qc.induced.degree.map_or("-".into(), |v| v.to_string()));
    r.eq("quotient_span_dim", 5, qc.induced.span_dim);
    r.eq("quotient_embedding_valid", true, qc.induced.valid());
    Ok(r)
}

/// Whether the points `images[l]` (indexed by lines of W(3,q)) fill PG(K)
/// and the pencils of W(3,q) become exactly the totally isotropic lines of
/// a nondegenerate alternating form on `K`.
fn is_w3q(field: &Field, w: &Geometry, images: &[Vec<Felt>], k: &Subspace, q: u32) -> bool {
    if k.dim() != 4 {
        return false;
    }
    let coords: Vec<Vec<Felt>> =
        images.iter().map(|v| normalize(field, &k.coordinates(v).expect("in span")).expect("nonzero")).collect();
    let distinct: BTreeSet<&Vec<Felt>> = coords.iter().collect();
    if distinct.len() != images.len() || distinct.len() as u64 != gaussian_binomial(4, 1, q as u64) {
        return false;
    }
    // pencil lines: for each point p, the images of the lines through p
    let mut pencils = Vec::new();
    for p in 0..w.num_points() {
        let vs: Vec<Vec<Felt>> = w.lines_through(p).iter().map(|&l| coords[l].clone()).collect();
        let s = Subspace::span(field, 4, &vs).expect("lengths");
        if s.dim() != 2 {
            return false;
        }
        pencils.push(s);
    }
    // alternating form B(u,v) = Σ_{i<j} b_ij (u_i v_j − u_j v_i) vanishing on each pencil
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
    let rows: Vec<Vec<Felt>> = pencils
        .iter()
        .map(|s| {
            let b = s.basis_vecs();
            let (u, v) = (&b[0], &b[1]);
            pairs.iter().map(|&(i, j)| field.sub(field.mul(u[i], v[j]), field.mul(u[j], v[i]))).collect()
        })
        .collect();
    let ker = Mat::from_rows(field, 6, &rows).expect("lengths").kernel_basis();
    if ker.len() != 1 {
        return false;
    }
    let mut b = Mat::zeros(field, 4, 4);
    for (c, &(i, j)) in ker[0].iter().zip(&pairs) {
        b.set(i, j, *c);
        b.set(j, i, field.neg(*c));
    }
    if b.rank() != 4 {
        return false;
    }
    let ti = lines(field, 4)
        .iter()
        .filter(|l| {
            let (u, v) = l.basis();
            field.dot(u, &b.mul_vec(v)).is_zero()
        })
        .count();
    let distinct_pencils: BTreeSet<Vec<Vec<Felt>>> = pencils.iter().map(|s| s.basis_vecs()).collect();
    ti == distinct_pencils.len() && distinct_pencils.len() == pencils.len()
}

/// Nuclei of the Veronese conics of PG(4,2) against the parabolic quadric
/// `x1x2 + x3x4 + x5²`.
pub fn nucleus_suite() -> Result<Report, CaseError> {
    let field = Field::gf(2)?;
    let mut r = Report::new("veronese_nuclei", 2, field.spec());
    let one = Felt::ONE;
    let mut u = Mat::zeros(&field, 5, 5);
    u.set(0, 1, one);
    u.set(2, 3, one);
    u.set(4, 4, one);
    let form = PolarForm::Quad(QuadForm::new(u)?);
    let (g, nat, glines) = polar_geometry(&form)?;
    r.eq("quadrangle_points_lines", "15,15".to_string(), format!("{},{}", g.num_points(), g.num_lines()));
    let ver = veronese_map(&nat)?;
    let h = ver.span();
    r.eq("veronese_span_dim", 14, h.dim());
    let naming = VarNaming::Sym(5);
    let mut functional = vec![Felt::ZERO; 15];
    for (i, j) in [(0, 1), (2, 3), (4, 4)] {
        functional[naming.index_of(i, j).expect("in range")] = one;
    }
    let hyper = Subspace::kernel_of(&Mat::from_rows(&field, 15, &[functional]).expect("lengths"));
    r.eq("veronese_span_is_x12_x34_x55", true, hyper == h);

    let all = lines(&field, 5);
    let nucleus_of = |l: &crate::projective::ProjLine| {
        let pts: Vec<Vec<Felt>> = l.points(&field).iter().map(|p| veronese_vector(&field, p)).collect();
        conic_nucleus(&field, &pts)
    };
    let nu: Vec<Vec<Felt>> = all.iter().map(nucleus_of).collect::<Result<_, _>>()?;
    r.eq("lines_of_pg4", 155, nu.len());
    let n = Subspace::span(&field, 15, &nu).expect("lengths");
    r.eq("nuclei_span_dim", 10, n.dim());
    let nh = n.intersect(&h);
    r.eq("nuclei_in_veronese_span_dim", 9, nh.dim());
    let ng: Vec<Vec<Felt>> = glines.iter().map(nucleus_of).collect::<Result<_, _>>()?;
    r.eq("quadrangle_nuclei_span_equals", true, Subspace::span(&field, 15, &ng).expect("lengths") == nh);
    let qc = check_quotient(&g, &ver, &nh);
    r.eq("quotient_valid", true, qc.valid());
    r.eq("quotient_projective_dim", 4, qc.induced.span_dim.saturating_sub(1));
    r.eq("quotient_embedding_valid", true, qc.induced.valid());
    let pl: Vec<Vec<Felt>> = all.iter().map(|l| plucker(&field, l).coords().to_vec()).collect();
    match fit_projection(&field, &nu, &pl) {
        Some(p) => {
            r.eq("nucleus_map_fits_plucker", true, true);
            r.eq("nucleus_map_rank", 10, p.rank);
            r.eq("nucleus_map_kernel_dim", 0, p.kernel_dim());
        }
        None => r.claim("nucleus_map_fits_plucker", true, false, false),
    }
    Ok(r)
}

/// Hull of the Veronese embedding of W(3,q), and idempotence of the hull.
/// `expected_dim` is checked exactly when given; otherwise the hull is only
/// required to exceed 10.
pub fn hull_suite(q: u32, expected_dim: Option<usize>) -> Result<Report, CaseError> {
    let field = Field::gf(q)?;
    let mut r = Report::new("hull", q, field.spec());
    let (w, nat, _) = symplectic_quadrangle(&field)?;
    let ver = veronese_map(&nat)?;
    let h = hull(&w, &ver, DEFAULT_HULL_CAP)?;
    match expected_dim {
        Some(d) => r.eq("veronese_hull_dim", d, h.dim),
        None => r.claim("veronese_hull_dim", "> 10", h.dim, h.dim > 10),
    }
    let hc = check_embedding(&w, &h.embedding);
    r.eq("hull_embedding_valid", true, hc.valid());
    r.eq("hull_degree", "2".to_string(), hc.degree.map_or("-".into(), |d| d.to_string()));
    let projects = fit_projection(&field, h.embedding.images(), ver.images()).is_some();
    r.eq("hull_projects_onto_embedding", true, projects);
    let hh = hull(&w, &h.embedding, DEFAULT_HULL_CAP)?;
    r.eq("hull_idempotent", h.dim, hh.dim);
    let hn = hull(&w, &nat, DEFAULT_HULL_CAP)?;
    let hnn = hull(&w, &hn.embedding, DEFAULT_HULL_CAP)?;
    r.eq("natural_hull_idempotent", hn.dim, hnn.dim);
    r.claim("natural_hull_dim", ">= 4", hn.dim, hn.dim >= 4);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nucleus_suite_holds() {
        let r = nucleus_suite().unwrap();
        assert!(r.pass, "{}", r.to_text());
    }

    #[test]
    fn projection_kernel_by_characteristic() {
        for (q, k) in [(2, "1"), (3, "0")] {
            let r = klein_projection_suite(q).unwrap();
            assert!(r.pass, "{}", r.to_text());
            assert_eq!(r.get("projection_kernel_dim").unwrap().observed, k);
        }
    }
}
