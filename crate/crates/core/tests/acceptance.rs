//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Structural facts are checked against oracles written here from the
//! definitions (naive form evaluation, explicit bivector matrices, point
//! enumeration); the worked cases are checked through their claim tables.

use std::collections::BTreeSet;
use std::io::Write;

use grasspolar::casebook::{hull_suite, klein_projection_suite, nucleus_suite, run_case, CaseName, Report};
use grasspolar::forms::QuadForm;
use grasspolar::linalg::{normalize, Subspace};
use grasspolar::projective::{lines, points, ProjLine};
use grasspolar::varieties::{build_variety, emit_equations, EqnSystem, EquationKind};
use grasspolar::wedge::{dual_incidence, grassmann_tangent_system, star_system};
use grasspolar::{Felt, Field, Mat, PolarForm, SesquiForm};

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when the only failing check is a literal comparison with a
    /// displayed formula that the enumeration refutes.
    refuted_display: bool,
}

impl Outcome {
    fn from_checks(checks: Vec<(String, bool)>) -> Outcome {
        let failed: Vec<&String> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
        Outcome {
            pass: failed.is_empty(),
            detail: if failed.is_empty() {
                format!("{} checks", checks.len())
            } else {
                format!("failed: {}", failed.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("; "))
            },
            refuted_display: false,
        }
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `X = x yᵀ − y xᵀ`.
fn bivector(f: &Field, x: &[Felt], y: &[Felt]) -> Mat {
    let n = x.len();
    let mut m = Mat::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, f.sub(f.mul(x[i], y[j]), f.mul(x[j], y[i])));
        }
    }
    m
}

/// Normalized upper-triangle entries of the bivector, lex order.
fn plucker_vec(f: &Field, x: &[Felt], y: &[Felt]) -> Vec<Felt> {
    let n = x.len();
    let mut v = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            v.push(f.sub(f.mul(x[i], y[j]), f.mul(x[j], y[i])));
        }
    }
    normalize(f, &v).expect("independent vectors")
}

/// `Σ σ(x_i) g_ij y_j`.
fn form_value(f: &Field, g: &Mat, x: &[Felt], y: &[Felt]) -> Felt {
    let mut acc = Felt::ZERO;
    for i in 0..x.len() {
        for j in 0..y.len() {
            acc = f.add(acc, f.mul(f.frobenius(x[i]), f.mul(g.get(i, j), y[j])));
        }
    }
    acc
}

fn totally_isotropic(f: &Field, g: &Mat, l: &ProjLine) -> bool {
    let (a, b) = l.basis();
    [(a, a), (a, b), (b, b)].iter().all(|(u, v)| form_value(f, g, u, v).is_zero())
}

fn meets_radical(f: &Field, g: &Mat, l: &ProjLine) -> bool {
    l.points(f).iter().any(|p| g.mul_vec(p).iter().all(|c| c.is_zero()))
}

/// `Σ_{i≤j} u_ij x_i x_j`.
fn quad_value(f: &Field, u: &Mat, x: &[Felt]) -> Felt {
    let mut acc = Felt::ZERO;
    for i in 0..x.len() {
        for j in i..x.len() {
            acc = f.add(acc, f.mul(u.get(i, j), f.mul(x[i], x[j])));
        }
    }
    acc
}

fn gram(f: &Field, rows: &[&[i64]]) -> Mat {
    Mat::from_ints(f, rows)
}

fn sesqui(f: &Field, g: Mat, eps: i64) -> PolarForm {
    PolarForm::Sesqui(SesquiForm::new(g, f.from_int(eps)).expect("reflexive"))
}

fn report_checks(reports: &[Report], names: &[&str]) -> Vec<(String, bool)> {
    let mut checks = Vec::new();
    for r in reports {
        checks.push((format!("{} q={} all claims", r.title, r.q), r.pass));
        for n in names {
            let ok = r.get(n).is_some_and(|c| c.pass);
            checks.push((format!("{} q={} {n}", r.title, r.q), ok));
        }
    }
    checks
}

fn case_reports(name: CaseName, qs: &[u32]) -> Vec<Report> {
    qs.iter().map(|&q| run_case(name, q).expect("case runs")).collect()
}

fn grassmann_structure() -> Outcome {
    let mut checks = Vec::new();
    for q in [2, 3] {
        let f = Field::gf(q).unwrap();
        for n in [4, 5, 6] {
            let mut ok = true;
            for l in lines(&f, n) {
                let (a, b) = l.basis();
                let c = plucker_vec(&f, a, b);
                let t3 = grassmann_tangent_system(&f, &c).unwrap();
                let tan = Subspace::kernel_of(&t3);
                let sa = Subspace::kernel_of(&star_system(&f, a));
                let sb = Subspace::kernel_of(&star_system(&f, b));
                ok &= t3.rank() == binom(n - 2, 2)
                    && tan.dim() == 2 * n - 3
                    && star_system(&f, a).rank() == binom(n - 1, 2)
                    && sa.dim() == n - 1
                    && sa.sum(&sb) == tan;
            }
            checks.push((format!("q={q} n={n}"), ok));
        }
    }
    Outcome::from_checks(checks)
}

fn dual_line_incidence() -> Outcome {
    let mut checks = Vec::new();
    for q in [2, 3] {
        let f = Field::gf(q).unwrap();
        let ls = lines(&f, 4);
        let mut agree = true;
        let mut contained = 0;
        for m in &ls {
            let (xi, eta) = m.basis();
            let theta = bivector(&f, xi, eta);
            for l in &ls {
                let (x, y) = l.basis();
                let truth = [(xi, x), (xi, y), (eta, x), (eta, y)].iter().all(|(u, v)| f.dot(u, v).is_zero());
                contained += truth as usize;
                agree &= dual_incidence(&theta, &bivector(&f, x, y)).unwrap() == truth;
            }
        }
        checks.push((format!("q={q} {} lines", ls.len()), ls.len() == if q == 2 { 35 } else { 130 }));
        checks.push((format!("q={q} equivalence"), agree));
        checks.push((format!("q={q} one line per dual line"), contained == ls.len()));
    }
    Outcome::from_checks(checks)
}

/// Reflexive σ-sesquilinear forms, degenerate and nondegenerate.
fn trichotomy_family(f: &Field, n: usize) -> Vec<(String, Mat, i64)> {
    let mut out = Vec::new();
    let mut alt = Mat::zeros(f, n, n);
    alt.set(0, 1, f.one());
    alt.set(1, 0, f.neg(f.one()));
    out.push(("alternating rank 2".to_string(), alt.clone(), -1));
    alt.set(2, 3, f.one());
    alt.set(3, 2, f.neg(f.one()));
    out.push(("alternating rank 4".to_string(), alt, -1));
    out.push(("identity".to_string(), Mat::identity(f, n), 1));
    let mut d = Mat::identity(f, n);
    d.set(n - 1, n - 1, Felt::ZERO);
    out.push(("diagonal rank n-1".to_string(), d, 1));
    let mut h = Mat::zeros(f, n, n);
    for (i, j) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
        h.set(i, j, f.one());
    }
    if n == 5 {
        h.set(4, 4, f.one());
    }
    out.push(("hyperbolic pairs".to_string(), h, 1));
    let mut r2 = Mat::zeros(f, n, n);
    r2.set(0, 0, f.one());
    r2.set(1, 1, f.one());
    out.push(("diagonal rank 2".to_string(), r2, 1));
    out
}

fn trichotomy() -> Outcome {
    let mut checks = Vec::new();
    let fields = [Field::gf(2).unwrap(), Field::gf(3).unwrap(), Field::gf_hermitian(4).unwrap()];
    for f in &fields {
        for n in [4, 5] {
            for (name, g, eps) in trichotomy_family(f, n) {
                let form = SesquiForm::new(g.clone(), f.from_int(eps)).expect("reflexive");
                let gs = g.frobenius();
                let mut ok = true;
                for l in lines(f, n) {
                    let (x, y) = l.basis();
                    let xm = bivector(f, x, y);
                    let eq12 = gs.mul(&xm.frobenius()).mul(&g).mul(&xm).is_zero();
                    let ti = totally_isotropic(f, &g, &l);
                    let mr = meets_radical(f, &g, &l);
                    ok &= eq12 == (ti || mr) && form.totally_isotropic(&l) == ti && form.meets_radical(&l) == mr;
                }
                checks.push((format!("{} n={n} {name}", f.spec()), ok));
            }
        }
    }
    Outcome::from_checks(checks)
}

fn span_of_isotropic_lines(f: &Field, g: &Mat, n: usize) -> usize {
    let vecs: Vec<Vec<Felt>> = lines(f, n)
        .iter()
        .filter(|l| totally_isotropic(f, g, l))
        .map(|l| {
            let (a, b) = l.basis();
            plucker_vec(f, a, b)
        })
        .collect();
    Subspace::span(f, binom(n, 2), &vecs).unwrap().dim()
}

fn span_theorem() -> Outcome {
    let mut checks = Vec::new();
    let f2 = Field::gf(2).unwrap();
    let f3 = Field::gf(3).unwrap();
    let f4 = Field::gf(4).unwrap();
    let f5 = Field::gf(5).unwrap();
    let h4 = Field::gf_hermitian(4).unwrap();
    let w4 = |f: &Field| gram(f, &[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
    let w5_degenerate =
        |f: &Field| gram(f, &[&[0, 1, 0, 0, 0], &[-1, 0, 0, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, -1, 0, 0], &[0, 0, 0, 0, 0]]);
    let w6 = gram(
        &f2,
        &[&[0, 1, 0, 0, 0, 0], &[1, 0, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 0, 0, 1], &[0, 0, 0, 0, 1, 0]],
    );
    let parabolic =
        |f: &Field| gram(f, &[&[0, 1, 0, 0, 0], &[1, 0, 0, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 1, 0, 0], &[0, 0, 0, 0, 1]]);
    let hyperbolic4 = |f: &Field| gram(f, &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
    // x1x2 + x3x4 + x5² − η x6² with η = 2 a non-square of GF(3)
    let elliptic6 = gram(
        &f3,
        &[&[0, 1, 0, 0, 0, 0], &[1, 0, 0, 0, 0, 0], &[0, 0, 0, 1, 0, 0], &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 1]],
    );
    let family: Vec<(String, Field, Mat, i64)> = vec![
        ("W(3,2)".into(), f2.clone(), w4(&f2), -1),
        ("W(3,3)".into(), f3.clone(), w4(&f3), -1),
        ("W(3,5)".into(), f5.clone(), w4(&f5), -1),
        ("W(5,2)".into(), f2.clone(), w6, -1),
        ("degenerate alternating n=5 GF(3)".into(), f3.clone(), w5_degenerate(&f3), -1),
        ("degenerate alternating n=5 GF(4)".into(), f4.clone(), w5_degenerate(&f4), -1),
        ("Q(4,3)".into(), f3.clone(), parabolic(&f3), 1),
        ("Q(4,5)".into(), f5.clone(), parabolic(&f5), 1),
        ("Q+(3,3)".into(), f3.clone(), hyperbolic4(&f3), 1),
        ("Q+(3,5)".into(), f5.clone(), hyperbolic4(&f5), 1),
        ("Q-(5,3)".into(), f3.clone(), elliptic6, 1),
        ("H(3,4)".into(), h4.clone(), Mat::identity(&h4, 4), 1),
        ("H(4,4)".into(), h4.clone(), Mat::identity(&h4, 5), 1),
    ];
    for (name, f, g, eps) in family {
        let n = g.rows();
        let form = sesqui(&f, g.clone(), eps);
        let s = form.sesqui();
        let oracle = span_of_isotropic_lines(&f, &g, n);
        let alternating = (0..n).all(|i| g.get(i, i).is_zero()) && eps == -1;
        let expected = if alternating { binom(n, 2) - 1 } else { binom(n, 2) };
        let library = build_variety(&form).unwrap().span_dimension();
        let applies = s.is_alternating() || !s.is_degenerate();
        checks.push((
            format!("{name}: span {oracle} expected {expected}"),
            applies && oracle == expected && library == oracle && s.is_alternating() == alternating,
        ));
    }
    Outcome::from_checks(checks)
}

fn quadratic_span() -> Outcome {
    let mut checks = Vec::new();
    let f2 = Field::gf(2).unwrap();
    let f4 = Field::gf(4).unwrap();
    let upper = |f: &Field, n: usize, entries: &[(usize, usize)], extra: Option<(usize, usize, Felt)>| {
        let mut u = Mat::zeros(f, n, n);
        for &(i, j) in entries {
            u.set(i, j, f.one());
        }
        if let Some((i, j, v)) = extra {
            u.set(i, j, v);
        }
        u
    };
    // t² + t + 1 is irreducible over GF(2)
    let family: Vec<(String, Field, Mat)> = vec![
        ("Q+(3,2)".into(), f2.clone(), upper(&f2, 4, &[(0, 1), (2, 3)], None)),
        ("Q+(3,4)".into(), f4.clone(), upper(&f4, 4, &[(0, 1), (2, 3)], None)),
        ("Q(4,2)".into(), f2.clone(), upper(&f2, 5, &[(0, 1), (2, 3), (4, 4)], None)),
        ("Q(4,4)".into(), f4.clone(), upper(&f4, 5, &[(0, 1), (2, 3), (4, 4)], None)),
        ("Q+(5,2)".into(), f2.clone(), upper(&f2, 6, &[(0, 1), (2, 3), (4, 5)], None)),
        ("Q-(5,2)".into(), f2.clone(), upper(&f2, 6, &[(0, 1), (2, 3), (4, 4), (4, 5), (5, 5)], None)),
    ];
    for (name, f, u) in family {
        let n = u.rows();
        let mut g = Mat::zeros(&f, n, n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    g.set(i, j, f.add(u.get(i, j), u.get(j, i)));
                }
            }
        }
        let all = lines(&f, n);
        let wedge = |l: &ProjLine| {
            let (a, b) = l.basis();
            plucker_vec(&f, a, b)
        };
        let g_chi: Vec<Vec<Felt>> = all
            .iter()
            .filter(|l| l.points(&f).iter().all(|p| quad_value(&f, &u, p).is_zero()))
            .map(wedge)
            .collect();
        let g_phi: Vec<Vec<Felt>> = all.iter().filter(|l| totally_isotropic(&f, &g, l)).map(wedge).collect();
        let m = binom(n, 2);
        let s_chi = Subspace::span(&f, m, &g_chi).unwrap();
        let s_phi = Subspace::span(&f, m, &g_phi).unwrap();
        let form = PolarForm::Quad(QuadForm::new(u.clone()).unwrap());
        let library = build_variety(&form).unwrap();
        checks.push((
            format!("{name}: |G_chi| {} span {} / {}", g_chi.len(), s_chi.dim(), s_phi.dim()),
            !g_chi.is_empty() && s_chi == s_phi && library.span() == s_chi && library.len() == g_chi.len(),
        ));
    }
    Outcome::from_checks(checks)
}

fn symplectic() -> Outcome {
    let reports = case_reports(CaseName::Symplectic, &[2, 3, 4, 5]);
    Outcome::from_checks(report_checks(
        &reports,
        &["span_dim", "tangent_rank", "tangent_dim", "variety_dim", "residue_shapes", "residue_points", "grassmann_embedding_degree"],
    ))
}

const DISPLAYED_PARABOLIC: &str = "x_1_3 + x_2_4\nx_1_4*x_2_3 + x_1_2*x_2_4 + x_1_3^2\n";

fn parabolic() -> Outcome {
    let reports = case_reports(CaseName::Parabolic, &[2, 3]);
    let mut checks = report_checks(
        &reports,
        &["span_dim", "generator_solutions_on_grassmannian", "grassmann_embedding_projective", "image_is_parabolic_quadric"],
    );
    let mut literal = Vec::new();
    let mut refuted = true;
    for q in [2, 3] {
        let f = Field::gf(q).unwrap();
        let g = gram(&f, &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
        let form = sesqui(&f, g.clone(), -1);
        let shown = EqnSystem::parse(&format!("# vars x_i_j lex n=4\n{DISPLAYED_PARABOLIC}"), Some(&f)).unwrap();
        let emitted = emit_equations(&form, &EquationKind::Variety).unwrap();
        let text = |s: &EqnSystem| -> BTreeSet<String> { s.polys().map(|p| p.to_text(&f, &s.naming)).collect() };
        literal.push((format!("q={q} emitted system equals the displayed pair"), text(&emitted) == text(&shown)));
        // the displayed quadric must vanish on every totally isotropic line
        let quadric = EqnSystem::parse("# vars x_i_j lex n=4\nx_1_4*x_2_3 + x_1_2*x_2_4 + x_1_3^2\n", Some(&f)).unwrap();
        let off = lines(&f, 4)
            .iter()
            .filter(|l| totally_isotropic(&f, &g, l))
            .map(|l| {
                let (a, b) = l.basis();
                plucker_vec(&f, a, b)
            })
            .find(|v| !quadric.satisfied_by(v));
        refuted &= off.is_some();
    }
    let structural_ok = checks.iter().all(|(_, ok)| *ok);
    checks.extend(literal);
    let mut out = Outcome::from_checks(checks);
    if !out.pass {
        out.refuted_display = structural_ok && refuted;
        if out.refuted_display {
            out.detail.push_str(
                " (the displayed x_1_4*x_2_3 + x_1_2*x_2_4 + x_1_3^2 does not vanish on G_phi; \
                 the emitted x_1_2*x_3_4 + x_1_3^2 + x_1_4*x_2_3 does)",
            );
        }
    }
    out
}

fn hermitian_surface() -> Outcome {
    let reports = case_reports(CaseName::HermitianSurface, &[2, 3, 4]);
    Outcome::from_checks(report_checks(
        &reports,
        &["span_dim", "tangent_rank", "tangent_dim", "variety_dim", "residue_shapes", "grassmann_embedding_degree"],
    ))
}

fn elliptic() -> Outcome {
    let reports = case_reports(CaseName::Elliptic, &[2, 3]);
    Outcome::from_checks(report_checks(
        &reports,
        &["tangent_rank", "tangent_dim", "variety_dim", "residue_shapes", "grassmann_embedding_lax", "solutions_of_raw_system"],
    ))
}

fn h4() -> Outcome {
    let reports = case_reports(CaseName::H4, &[2]);
    Outcome::from_checks(report_checks(
        &reports,
        &["tangent_rank", "tangent_dim", "variety_dim", "residue_shapes", "residue_points", "residue_span_dim", "conic_line_images"],
    ))
}

fn dual_grid() -> Outcome {
    let reports = case_reports(CaseName::DualGrid, &[2, 3]);
    let mut checks = report_checks(&reports, &["both_conics", "reguli_pairwise_disjoint", "span_dim", "plane_intersection_dim"]);
    checks.push((
        "q=2 common nucleus".into(),
        reports[0].get("planes_meet_in_common_nucleus").is_some_and(|c| c.pass),
    ));
    Outcome::from_checks(checks)
}

fn example_quadric_equations() -> Outcome {
    let f = Field::gf(2).unwrap();
    let header = "# vars x_i_j lex n=4\n";
    let a = "x_1_2^2 + x_1_4*x_2_3 + x_1_3*x_2_4\nx_1_2 + x_3_4\n";
    let b = "x_1_3*x_1_4\nx_2_3*x_2_4\nx_1_3*x_2_3\nx_1_4*x_2_4\n";
    let c = "x_1_2*x_3_4 + x_1_3*x_2_4 + x_1_4*x_2_3\n";
    let parse = |body: String| EqnSystem::parse(&format!("{header}{body}"), Some(&f)).unwrap();
    let full = parse(format!("{a}{b}{c}"));
    let bc = parse(format!("{b}{c}"));
    let a2 = parse("x_1_2 + x_3_4\n".into());
    let witness = [Felt::ONE, Felt::ZERO, Felt::ZERO, Felt::ZERO, Felt::ZERO, Felt::ZERO];
    let u = {
        let mut u = Mat::zeros(&f, 4, 4);
        u.set(0, 1, f.one());
        u.set(2, 3, f.one());
        u
    };
    let g_chi: BTreeSet<Vec<Felt>> = lines(&f, 4)
        .iter()
        .filter(|l| l.points(&f).iter().all(|p| quad_value(&f, &u, p).is_zero()))
        .map(|l| {
            let (x, y) = l.basis();
            plucker_vec(&f, x, y)
        })
        .collect();
    let solutions: BTreeSet<Vec<Felt>> = points(&f, 6).into_iter().filter(|v| full.satisfied_by(v)).collect();
    Outcome::from_checks(vec![
        ("witness satisfies (B), (C)".into(), bc.satisfied_by(&witness)),
        ("witness violates (A.2)".into(), !a2.satisfied_by(&witness)),
        ("|G_chi| = 6".into(), g_chi.len() == 6),
        ("full system solutions = G_chi".into(), solutions == g_chi),
    ])
}

fn suite_outcome(reports: Vec<Report>) -> Outcome {
    Outcome::from_checks(reports.iter().flat_map(|r| report_checks(std::slice::from_ref(r), &[])).collect())
}

fn klein_projection() -> Outcome {
    let reports: Vec<Report> = [2, 3, 4, 5].iter().map(|&q| klein_projection_suite(q).unwrap()).collect();
    let mut checks = report_checks(&reports, &["projection_kernel_dim"]);
    for r in reports.iter().filter(|r| r.q % 2 == 0) {
        for n in ["projected_nuclei_form_w3q", "projected_nuclei_span_dim", "quotient_valid", "quotient_span_dim"] {
            checks.push((format!("q={} {n}", r.q), r.get(n).is_some_and(|c| c.pass)));
        }
    }
    Outcome::from_checks(checks)
}

fn nuclei() -> Outcome {
    let r = nucleus_suite().unwrap();
    Outcome::from_checks(report_checks(
        &[r],
        &["nuclei_span_dim", "nuclei_in_veronese_span_dim", "quotient_projective_dim", "nucleus_map_rank", "nucleus_map_kernel_dim"],
    ))
}

fn hulls() -> Outcome {
    suite_outcome(vec![hull_suite(5, Some(10)).unwrap(), hull_suite(4, None).unwrap()])
}

/// Finite-field stand-ins for statements about arbitrary fields: the
/// relative universality at a further odd q, and the projection at a
/// further even q.
fn finite_field_stand_ins() -> Outcome {
    suite_outcome(vec![hull_suite(7, Some(10)).unwrap(), klein_projection_suite(8).unwrap()])
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("grassmann ranks, star and tangent dimensions", grassmann_structure),
        ("dual line incidence by matrix product", dual_line_incidence),
        ("isotropy-or-radical trichotomy", trichotomy),
        ("span of G_phi", span_theorem),
        ("span of G_chi equals span of G_phi", quadratic_span),
        ("symplectic case", symplectic),
        ("parabolic case", parabolic),
        ("hermitian surface case", hermitian_surface),
        ("elliptic case", elliptic),
        ("h4 case", h4),
        ("dual grid case", dual_grid),
        ("quadric equations of the hyperbolic quadric in PG(3,2)", example_quadric_equations),
        ("veronese to grassmann projection", klein_projection),
        ("nuclei of veronese conics of PG(4,2)", nuclei),
        ("hulls", hulls),
        ("finite-field stand-ins for general-field statements", finite_field_stand_ins),
    ];
    let mut unexpected = Vec::new();
    std::io::stderr().write_all(b"\n").unwrap();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        // straight to the stream so the table shows without --nocapture
        let line = format!("{} {:>2}: {name} [{}]\n", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        std::io::stderr().write_all(line.as_bytes()).unwrap();
        if !o.pass && !o.refuted_display {
            unexpected.push(i + 1);
        }
    }
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
}
