//! The six quadrangle cases.

use std::collections::{BTreeMap, BTreeSet};

use crate::embeddings::{check_embedding, grassmann_dual_embedding, polar_geometry};
use crate::field::{Felt, Field};
use crate::forms::{PolarForm, QuadForm, SesquiForm};
use crate::linalg::{Mat, Subspace};
use crate::projective::{gaussian_binomial, points};
use crate::varieties::residue::{classify, fit_quadric};
use crate::varieties::{
    build_variety, emit_equations, residue_section, verify_solution_set, EquationKind, Shape, VarietySet,
};
use crate::wedge::{grassmann_membership, line_of, wedge_coords, WedgeIndex, WedgePoint};

use super::{CaseError, CaseName, Report};

/// The form and tangent point of a case, plus the tangent system as
/// displayed (when it is written in prime-field coefficients).
#[derive(Debug, Clone)]
pub struct CaseSetup {
    pub name: CaseName,
    pub q: u32,
    pub field: Field,
    pub form: PolarForm,
    pub point: WedgePoint,
    pub displayed_tangent: Option<Mat>,
}

fn unit(n: usize, i: usize) -> Vec<Felt> {
    let mut v = vec![Felt::ZERO; n];
    v[i] = Felt::ONE;
    v
}

fn upper(field: &Field, n: usize, entries: &[(usize, usize, Felt)]) -> Mat {
    let mut u = Mat::zeros(field, n, n);
    for &(i, j, c) in entries {
        u.set(i, j, c);
    }
    u
}

/// Rows `Σ c x_{i,j}` from 1-based `(c, i, j)` triples.
fn linear_rows(field: &Field, n: usize, rows: &[&[(i64, usize, usize)]]) -> Mat {
    let idx = WedgeIndex::new(n);
    let vecs: Vec<Vec<Felt>> = rows
        .iter()
        .map(|terms| {
            let mut r = vec![Felt::ZERO; idx.len()];
            for &(c, i, j) in terms.iter() {
                r[idx.pos(i - 1, j - 1)] = field.from_int(c);
            }
            r
        })
        .collect();
    Mat::from_rows(field, idx.len(), &vecs).expect("row length")
}

fn first_nonsquare(field: &Field) -> Felt {
    field.nonzero_elements().find(|&x| !field.is_square(x)).expect("odd order has non-squares")
}

/// First `λ` with `t² + t + λ` irreducible (characteristic 2).
fn first_irreducible_lambda(field: &Field) -> Felt {
    let image: BTreeSet<Felt> = field.elements().map(|s| field.add(field.mul(s, s), s)).collect();
    field.elements().find(|l| !image.contains(l)).expect("the Artin-Schreier map is not onto")
}

/// First `t` with `t^{q+1} = −1`, excluding `t = 1`, in GF(q²).
fn norm_minus_one(field: &Field, q: u32) -> Felt {
    let m1 = field.neg(Felt::ONE);
    field.nonzero_elements().find(|&t| t != Felt::ONE && field.pow(t, q as u64 + 1) == m1).expect("norm is onto")
}

fn is_prime_power(q: u32) -> bool {
    crate::field::prime_power(q).is_some()
}

pub fn case_setup(name: CaseName, q: u32) -> Result<CaseSetup, CaseError> {
    let unsupported = || CaseError::UnsupportedField { case: name.to_string(), q };
    if !is_prime_power(q) {
        return Err(unsupported());
    }
    let one = Felt::ONE;
    let e13 = |field: &Field, n: usize| WedgePoint::new(field, &wedge_coords(field, &unit(n, 0), &unit(n, 2)));
    let setup = match name {
        CaseName::Symplectic => {
            let field = Field::gf(q)?;
            let form = if field.characteristic() == 2 {
                PolarForm::Quad(QuadForm::new(upper(&field, 5, &[(0, 1, one), (2, 3, one), (4, 4, one)]))?)
            } else {
                let phi = Mat::from_ints(
                    &field,
                    &[&[0, 1, 0, 0, 0], &[1, 0, 0, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 0, 1]],
                );
                PolarForm::Sesqui(SesquiForm::new(phi, one)?)
            };
            let shown = linear_rows(
                &field,
                5,
                &[&[(1, 1, 2), (-1, 3, 4)], &[(1, 1, 4)], &[(1, 2, 3)], &[(1, 2, 4)], &[(1, 2, 5)], &[(1, 4, 5)]],
            );
            CaseSetup { name, q, point: e13(&field, 5)?, displayed_tangent: Some(shown), field, form }
        }
        CaseName::Parabolic => {
            let field = Field::gf(q)?;
            let phi = Mat::from_ints(&field, &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
            let form = PolarForm::Sesqui(SesquiForm::new(phi, field.neg(one))?);
            // e1∧e3 is not isotropic here
            let point = WedgePoint::new(&field, &wedge_coords(&field, &unit(4, 0), &unit(4, 1)))?;
            CaseSetup { name, q, point, displayed_tangent: None, field, form }
        }
        CaseName::HermitianSurface => {
            let field = Field::gf(q)?;
            let form = if field.characteristic() == 2 {
                let lambda = first_irreducible_lambda(&field);
                PolarForm::Quad(QuadForm::new(upper(
                    &field,
                    6,
                    &[(0, 1, one), (2, 3, one), (4, 5, one), (4, 4, one), (5, 5, lambda)],
                ))?)
            } else {
                let eta = first_nonsquare(&field);
                let mut phi = Mat::from_ints(
                    &field,
                    &[
                        &[0, 1, 0, 0, 0, 0],
                        &[1, 0, 0, 0, 0, 0],
                        &[0, 0, 0, 1, 0, 0],
                        &[0, 0, 1, 0, 0, 0],
                        &[0, 0, 0, 0, 1, 0],
                        &[0, 0, 0, 0, 0, 0],
                    ],
                );
                phi.set(5, 5, field.neg(eta));
                PolarForm::Sesqui(SesquiForm::new(phi, one)?)
            };
            let shown = linear_rows(
                &field,
                6,
                &[
                    &[(1, 1, 2), (-1, 3, 4)],
                    &[(1, 1, 4)],
                    &[(1, 2, 3)],
                    &[(1, 2, 4)],
                    &[(1, 2, 5)],
                    &[(1, 2, 6)],
                    &[(1, 4, 5)],
                    &[(1, 4, 6)],
                    &[(1, 5, 6)],
                ],
            );
            CaseSetup { name, q, point: e13(&field, 6)?, displayed_tangent: Some(shown), field, form }
        }
        CaseName::Elliptic | CaseName::H4 => {
            let n = if name == CaseName::Elliptic { 4 } else { 5 };
            let q2 = q.checked_mul(q).filter(|&v| v <= 1 << 16).ok_or_else(unsupported)?;
            let field = Field::gf_hermitian(q2)?;
            let form = PolarForm::Sesqui(SesquiForm::new(Mat::identity(&field, n), one)?);
            let t = norm_minus_one(&field, q);
            let mut a = unit(n, 0);
            a[1] = t;
            let mut b = unit(n, 2);
            b[3] = t;
            let point = WedgePoint::new(&field, &wedge_coords(&field, &a, &b))?;
            CaseSetup { name, q, point, displayed_tangent: None, field, form }
        }
        CaseName::DualGrid => {
            let field = Field::gf(q)?;
            let u = upper(&field, 4, &[(0, 1, one), (2, 3, one)]);
            let form = if field.characteristic() == 2 {
                PolarForm::Quad(QuadForm::new(u)?)
            } else {
                PolarForm::Sesqui(SesquiForm::polar_of(&u)?)
            };
            CaseSetup { name, q, point: e13(&field, 4)?, displayed_tangent: None, field, form }
        }
    };
    Ok(setup)
}

fn fmt_dims(m: &BTreeMap<usize, usize>) -> String {
    m.iter().map(|(d, c)| format!("{d}x{c}")).collect::<Vec<_>>().join(",")
}

/// Expected values that differ between the cases.
struct Expect {
    lines: u64,
    span: usize,
    tangent_rank: Option<usize>,
    tangent_dim: Option<usize>,
    dimension: Option<usize>,
    residue_shape: Option<Shape>,
    residue_points: usize,
    residue_span: usize,
    degree: Option<usize>,
}

fn expectations(s: &CaseSetup) -> Expect {
    let q = s.q as u64;
    let char2 = s.field.characteristic() == 2;
    let qq = s.q as usize;
    match s.name {
        CaseName::Symplectic => Expect {
            lines: (q + 1) * (q * q + 1),
            span: if char2 { 9 } else { 10 },
            tangent_rank: Some(6),
            tangent_dim: Some(4),
            dimension: Some(3),
            residue_shape: Some(Shape::Conic),
            residue_points: qq + 1,
            residue_span: 3,
            degree: Some(2),
        },
        CaseName::Parabolic => Expect {
            lines: (q + 1) * (q * q + 1),
            span: 5,
            tangent_rank: Some(2),
            tangent_dim: Some(4),
            dimension: Some(3),
            residue_shape: Some(Shape::FullSubspace { dim: 2 }),
            residue_points: qq + 1,
            residue_span: 2,
            degree: Some(1),
        },
        CaseName::HermitianSurface => Expect {
            lines: (q * q + 1) * (q * q * q + 1),
            span: if char2 { 14 } else { 15 },
            tangent_rank: Some(9),
            tangent_dim: Some(6),
            dimension: Some(5),
            residue_shape: Some(Shape::EllipticQuadric),
            residue_points: qq * qq + 1,
            residue_span: 4,
            degree: Some(3),
        },
        CaseName::Elliptic => Expect {
            lines: (q + 1) * (q * q * q + 1),
            span: 6,
            tangent_rank: Some(5),
            tangent_dim: Some(1),
            dimension: Some(0),
            residue_shape: Some(Shape::BaerSubline),
            residue_points: qq + 1,
            residue_span: 2,
            degree: Some(1),
        },
        CaseName::H4 => Expect {
            lines: (q * q * q + 1) * (q.pow(5) + 1),
            span: 10,
            tangent_rank: Some(7),
            tangent_dim: Some(3),
            dimension: Some(2),
            residue_shape: Some(Shape::Unital),
            residue_points: qq * qq * qq + 1,
            residue_span: 3,
            degree: Some(2),
        },
        CaseName::DualGrid => Expect {
            lines: 2 * (q + 1),
            span: if char2 { 5 } else { 6 },
            tangent_rank: None,
            tangent_dim: None,
            dimension: None,
            residue_shape: None,
            residue_points: 2,
            residue_span: 2,
            degree: None,
        },
    }
}

/// Runs a case and returns its claims table.
pub fn run_case(name: CaseName, q: u32) -> Result<Report, CaseError> {
    let s = case_setup(name, q)?;
    let field = &s.field;
    let exp = expectations(&s);
    let mut r = Report::new(name.as_str(), q, field.spec());
    r.form = Some(s.form.to_text());
    r.point = Some(s.point.to_text(field));

    let variety = build_variety(&s.form)?;
    r.eq("variety_points", exp.lines, variety.len() as u64);
    r.eq("span_dim", exp.span, variety.span_dimension());
    r.eq("matrix_equations_match_definitions", true, verify_solution_set(&s.form).pass());

    if name == CaseName::DualGrid {
        dual_grid_claims(&mut r, &s, &variety);
        return Ok(r);
    }

    let tangent = variety.tangent_space(&s.point)?;
    if let Some(rank) = exp.tangent_rank {
        r.eq("tangent_rank", rank, tangent.rank);
    }
    if let Some(dim) = exp.tangent_dim {
        r.eq("tangent_dim", dim, tangent.dim());
    }
    r.eq("point_in_tangent_space", true, tangent.subspace.contains(s.point.coords()));
    if let Some(shown) = &s.displayed_tangent {
        let same = Subspace::from_mat_rows(shown) == Subspace::from_mat_rows(&tangent.system);
        r.eq("tangent_system_as_displayed", true, same);
    }
    if let Some(d) = exp.dimension {
        match variety.dimension() {
            Ok(v) => r.eq("variety_dim", d.to_string(), v.to_string()),
            Err(e) => r.claim("variety_dim", d, e, false),
        }
    }

    residue_claims(&mut r, &s, &exp)?;
    embedding_claims(&mut r, &s, &exp)?;

    match name {
        CaseName::Parabolic => parabolic_claims(&mut r, &s, &variety)?,
        CaseName::Elliptic => {
            let sys = emit_equations(&s.form, &EquationKind::Raw)?;
            let count = points(field, 6).iter().filter(|v| sys.satisfied_by(v)).count();
            r.eq("solutions_of_raw_system", variety.len(), count);
        }
        _ => {}
    }
    Ok(r)
}

fn residue_claims(r: &mut Report, s: &CaseSetup, exp: &Expect) -> Result<(), CaseError> {
    let Some(shape) = exp.residue_shape else { return Ok(()) };
    let pts: Vec<Vec<Felt>> = points(&s.field, s.form.n()).into_iter().filter(|p| s.form.point_in_polar_space(p)).collect();
    let mut shapes = BTreeMap::new();
    let mut sizes = BTreeSet::new();
    let mut spans = BTreeSet::new();
    let mut in_star = true;
    for p in &pts {
        let res = residue_section(&s.form, p)?;
        *shapes.entry(format!("{:?}", res.shape)).or_insert(0usize) += 1;
        sizes.insert(res.points.len());
        spans.insert(res.span_dim);
        in_star &= res.in_star;
    }
    let expected_shapes = format!("{{\"{shape:?}\": {}}}", pts.len());
    let observed_shapes = format!("{shapes:?}");
    let pass = shapes.len() == 1 && shapes.get(&format!("{shape:?}")) == Some(&pts.len());
    r.claim("residue_shapes", expected_shapes, observed_shapes, pass);
    r.eq("residue_points", format!("{{{}}}", exp.residue_points), format!("{sizes:?}"));
    r.eq("residue_span_dim", format!("{{{}}}", exp.residue_span), format!("{spans:?}"));
    r.eq("residues_in_star", true, in_star);
    Ok(())
}

fn embedding_claims(r: &mut Report, s: &CaseSetup, exp: &Expect) -> Result<(), CaseError> {
    let (star, eps, _) = polar_geometry(&s.form)?;
    let (dual, gr) = grassmann_dual_embedding(&star, &eps)?;
    let check = check_embedding(&dual, &gr.restricted_to_span());
    r.eq("grassmann_embedding_valid", true, check.valid());
    r.eq(
        "grassmann_embedding_degree",
        exp.degree.map_or("-".into(), |d| d.to_string()),
        check.degree.map_or("-".into(), |d| d.to_string()),
    );
    r.eq("grassmann_line_spans", format!("{}x{}", exp.degree.unwrap_or(0) + 1, dual.num_lines()), fmt_dims(&check.line_dims));
    match s.name {
        CaseName::Parabolic => r.eq("grassmann_embedding_projective", true, check.projective()),
        CaseName::Elliptic => r.eq("grassmann_embedding_lax", true, check.lax()),
        CaseName::H4 => {
            let conics = (0..dual.num_lines()).filter(|&l| classify(&s.field, &gr.line_images(&dual, l)) == Shape::Conic).count();
            r.eq("conic_line_images", 0, conics);
        }
        _ => {}
    }
    Ok(())
}

fn parabolic_claims(r: &mut Report, s: &CaseSetup, variety: &VarietySet) -> Result<(), CaseError> {
    let field = &s.field;
    let sys = emit_equations(&s.form, &EquationKind::Variety)?;
    let text: Vec<String> = sys.polys().map(|p| p.to_text(field, &sys.naming)).collect();
    r.eq("emitted_generators", "x_1_3 + x_2_4; x_1_2*x_3_4 + x_1_3^2 + x_1_4*x_2_3".to_string(), text.join("; "));
    let sols: Vec<Vec<Felt>> = points(field, 6).into_iter().filter(|v| sys.satisfied_by(v)).collect();
    r.eq("generator_solutions_on_grassmannian", true, sols.iter().all(|v| grassmann_membership(field, v)));
    r.eq("generator_solutions", variety.len(), sols.len());
    let printed = crate::varieties::EqnSystem::parse(
        "# vars x_i_j lex n=4\nx_1_3 + x_2_4\nx_1_4*x_2_3 + x_1_2*x_2_4 + x_1_3^2\n",
        Some(field),
    )
    .expect("valid system");
    let witness = variety.points.iter().find(|w| !printed.satisfied_by(w.coords()));
    r.claim(
        "displayed_quadric_generator",
        "refuted",
        witness.map_or("vanishes on the variety".to_string(), |w| format!("refuted at {}", w.to_text(field))),
        witness.is_some(),
    );
    let (star, eps, _) = polar_geometry(&s.form)?;
    let (_, gr) = grassmann_dual_embedding(&star, &eps)?;
    let restricted = gr.restricted_to_span();
    let quadric = fit_quadric(field, restricted.images());
    let expected = gaussian_binomial(4, 1, s.q as u64) as usize;
    r.eq("image_is_parabolic_quadric", format!("nonsingular quadric, {expected} points"), match quadric {
        Some(_) => format!("nonsingular quadric, {} points", restricted.len()),
        None => "no quadric".to_string(),
    });
    Ok(())
}

fn dual_grid_claims(r: &mut Report, s: &CaseSetup, variety: &VarietySet) {
    let field = &s.field;
    let lines: Vec<_> = variety.points.iter().map(|w| (w.clone(), line_of(field, w).expect("on the quadric"))).collect();
    let disjoint = |a: &crate::projective::ProjLine, b: &crate::projective::ProjLine| {
        let (a0, a1) = a.basis();
        let (b0, b1) = b.basis();
        crate::linalg::span_dim(field, &[a0.to_vec(), a1.to_vec(), b0.to_vec(), b1.to_vec()]).expect("lengths") == 4
    };
    let (first, rest) = lines.split_first().expect("nonempty variety");
    let mut c1 = vec![first.clone()];
    let mut c2 = Vec::new();
    for l in rest {
        if disjoint(&first.1, &l.1) {
            c1.push(l.clone());
        } else {
            c2.push(l.clone());
        }
    }
    let q = s.q as usize;
    r.eq("conic_sizes", format!("{},{}", q + 1, q + 1), format!("{},{}", c1.len(), c2.len()));
    let pairwise = |c: &[(WedgePoint, crate::projective::ProjLine)]| {
        c.iter().enumerate().all(|(i, a)| c[i + 1..].iter().all(|b| disjoint(&a.1, &b.1)))
    };
    r.eq("reguli_pairwise_disjoint", true, pairwise(&c1) && pairwise(&c2));
    let vecs = |c: &[(WedgePoint, crate::projective::ProjLine)]| c.iter().map(|(w, _)| w.coords().to_vec()).collect::<Vec<_>>();
    let (v1, v2) = (vecs(&c1), vecs(&c2));
    r.eq("both_conics", "Conic,Conic".to_string(), format!("{:?},{:?}", classify(field, &v1), classify(field, &v2)));
    let p1 = Subspace::span(field, 6, &v1).expect("lengths");
    let p2 = Subspace::span(field, 6, &v2).expect("lengths");
    r.eq("plane_dims", "3,3".to_string(), format!("{},{}", p1.dim(), p2.dim()));
    let meet = p1.intersect(&p2);
    if field.characteristic() == 2 {
        r.eq("plane_intersection_dim", 1, meet.dim());
        let n1 = crate::embeddings::conic_nucleus(field, &v1).ok();
        let n2 = crate::embeddings::conic_nucleus(field, &v2).ok();
        let shared = match (&n1, &n2) {
            (Some(a), Some(b)) => a == b && meet.contains(a),
            _ => false,
        };
        r.eq("planes_meet_in_common_nucleus", true, shared);
    } else {
        r.eq("plane_intersection_dim", 0, meet.dim());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn designated_points_lie_on_their_varieties() {
        for name in CaseName::ALL {
            for q in [2, 3] {
                if name == CaseName::H4 && q == 3 {
                    continue;
                }
                let s = case_setup(name, q).unwrap();
                let line = crate::wedge::line_of(&s.field, &s.point).unwrap();
                assert!(s.form.line_in_polar_space(&line), "{name} q={q}");
            }
        }
    }

    #[test]
    fn elliptic_needs_a_small_square() {
        assert!(matches!(case_setup(CaseName::Elliptic, 512), Err(CaseError::UnsupportedField { .. })));
    }
}
