use proptest::prelude::*;

use grasspolar::casebook::{run_case, CaseName};
use grasspolar::embeddings::fit_projection;
use grasspolar::forms::QuadForm;
use grasspolar::linalg::{proportional, Subspace};
use grasspolar::projective::{lines, points, ProjLine};
use grasspolar::varieties::{build_variety, emit_equations, EquationKind};
use grasspolar::wedge::{grassmann_membership, grassmann_tangent, lift_map, line_of, plucker, wedge_coords};
use grasspolar::{Felt, Field, Mat, PolarForm, SesquiForm, WedgePoint};

fn field_for(choice: usize) -> Field {
    match choice % 9 {
        0 => Field::gf(2),
        1 => Field::gf(3),
        2 => Field::gf(4),
        3 => Field::gf(5),
        4 => Field::gf(7),
        5 => Field::gf(8),
        6 => Field::gf_hermitian(4),
        7 => Field::gf_hermitian(9),
        _ => Field::gf_hermitian(16),
    }
    .unwrap()
}

fn elem(f: &Field, i: u32) -> Felt {
    f.elements().nth(i as usize % f.q() as usize).unwrap()
}

fn vector(f: &Field, raw: &[u32]) -> Vec<Felt> {
    raw.iter().map(|&i| elem(f, i)).collect()
}

fn matrix(f: &Field, n: usize, raw: &[u32]) -> Mat {
    let rows: Vec<Vec<Felt>> = raw.chunks(n).map(|r| vector(f, r)).collect();
    Mat::from_rows(f, n, &rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(c in 0usize..9, a in any::<u32>(), b in any::<u32>(), d in any::<u32>()) {
        let f = field_for(c);
        let (a, b, d) = (elem(&f, a), elem(&f, b), elem(&f, d));
        prop_assert_eq!(f.mul(a, f.add(b, d)), f.add(f.mul(a, b), f.mul(a, d)));
        prop_assert_eq!(f.mul(f.mul(a, b), d), f.mul(a, f.mul(b, d)));
        prop_assert_eq!(f.add(a, f.neg(a)), Felt::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Felt::ONE);
        }
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(f.frobenius(a)), a);
    }

    #[test]
    fn rank_nullity_and_transpose(c in 0usize..9, rows in 1usize..6, cols in 1usize..7, raw in prop::collection::vec(any::<u32>(), 42)) {
        let f = field_for(c);
        let m = matrix(&f, cols, &raw[..rows * cols]);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), cols);
        let r = m.rref();
        prop_assert_eq!(r.mat.rref().mat, r.mat.clone());
    }

    #[test]
    fn plucker_images_are_decomposable(c in 0usize..9, n in 3usize..7, raw in prop::collection::vec(any::<u32>(), 12)) {
        let f = field_for(c);
        let x = vector(&f, &raw[..n]);
        let y = vector(&f, &raw[6..6 + n]);
        let Some(l) = ProjLine::through(&f, &x, &y) else { return Ok(()) };
        let w = plucker(&f, &l);
        prop_assert!(grassmann_membership(&f, w.coords()));
        prop_assert_eq!(line_of(&f, &w).unwrap(), l.clone());
        // any other basis of the line gives a proportional bivector
        let (a, b) = l.basis();
        let s = elem(&f, raw[0].wrapping_add(1));
        let u: Vec<Felt> = a.iter().zip(b).map(|(&p, &q)| f.add(p, f.mul(s, q))).collect();
        prop_assert!(proportional(&f, &wedge_coords(&f, &u, b), w.coords()));
    }

    #[test]
    fn lift_is_multiplicative(c in 0usize..6, n in 3usize..5, raw in prop::collection::vec(any::<u32>(), 32)) {
        let f = field_for(c);
        let m = matrix(&f, n, &raw[..n * n]);
        let k = matrix(&f, n, &raw[16..16 + n * n]);
        if m.rank() < n || k.rank() < n {
            return Ok(());
        }
        prop_assert_eq!(lift_map(&m.mul(&k)).unwrap(), lift_map(&m).unwrap().mul(&lift_map(&k).unwrap()));
    }

    #[test]
    fn tangent_contains_meeting_lines(c in 0usize..4, raw in prop::collection::vec(any::<u32>(), 12)) {
        let f = field_for(c);
        let x = vector(&f, &raw[..4]);
        let y = vector(&f, &raw[4..8]);
        let z = vector(&f, &raw[8..12]);
        let Some(l) = ProjLine::through(&f, &x, &y) else { return Ok(()) };
        let Some(m) = ProjLine::through(&f, &x, &z) else { return Ok(()) };
        let t = grassmann_tangent(&f, plucker(&f, &l).coords()).unwrap();
        prop_assert!(t.contains(plucker(&f, &m).coords()));
    }

    #[test]
    fn quadratic_column_identity(k in 1u32..4, raw in prop::collection::vec(any::<u32>(), 30)) {
        // χ(X e_k) = y_k² χ(x) + x_k² χ(y) + x_k y_k φ(x, y) in characteristic 2
        let f = Field::gf(1 << k).unwrap();
        let n = 4;
        let mut u = Mat::zeros(&f, n, n);
        for (t, (i, j)) in (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).enumerate() {
            u.set(i, j, elem(&f, raw[t]));
        }
        let chi = QuadForm::new(u).unwrap();
        let x = vector(&f, &raw[10..14]);
        let y = vector(&f, &raw[20..24]);
        for col in 0..n {
            let xc: Vec<Felt> = (0..n).map(|i| f.add(f.mul(x[i], y[col]), f.mul(x[col], y[i]))).collect();
            let rhs = f.add(
                f.add(f.mul(f.mul(y[col], y[col]), chi.eval(&x)), f.mul(f.mul(x[col], x[col]), chi.eval(&y))),
                f.mul(f.mul(x[col], y[col]), chi.polar().eval(&x, &y)),
            );
            prop_assert_eq!(chi.eval(&xc), rhs);
        }
    }

    #[test]
    fn isometries_permute_the_variety(q in prop::sample::select(vec![2u32, 3, 4, 5]), raw in prop::collection::vec(any::<u32>(), 20)) {
        // compose symplectic transvections x ↦ x + c φ(a, x) a
        let f = Field::gf(q).unwrap();
        let g = Mat::from_ints(&f, &[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
        let form = SesquiForm::new(g.clone(), f.neg(Felt::ONE)).unwrap();
        let mut m = Mat::identity(&f, 4);
        for chunk in raw.chunks(5) {
            let a = vector(&f, &chunk[..4]);
            let c = elem(&f, chunk[4]);
            let mut t = Mat::identity(&f, 4);
            for j in 0..4 {
                let e: Vec<Felt> = (0..4).map(|i| if i == j { Felt::ONE } else { Felt::ZERO }).collect();
                let coef = f.mul(c, form.eval(&a, &e));
                for i in 0..4 {
                    t.set(i, j, f.add(t.get(i, j), f.mul(coef, a[i])));
                }
            }
            m = t.mul(&m);
        }
        prop_assert_eq!(m.transpose().mul(&g).mul(&m), g);
        let v = build_variety(&PolarForm::Sesqui(form)).unwrap();
        let lift = lift_map(&m).unwrap();
        for w in &v.points {
            let image = WedgePoint::new(&f, &lift.mul_vec(w.coords())).unwrap();
            prop_assert!(v.contains(&image));
        }
    }

    #[test]
    fn projections_compose(q in prop::sample::select(vec![3u32, 4, 5]), raw in prop::collection::vec(any::<u32>(), 18)) {
        let f = Field::gf(q).unwrap();
        let m = matrix(&f, 3, &raw[..9]);
        let k = matrix(&f, 3, &raw[9..]);
        if m.rank() < 3 || k.rank() < 3 {
            return Ok(());
        }
        let e1 = points(&f, 3);
        let e2: Vec<Vec<Felt>> = e1.iter().map(|v| m.mul_vec(v)).collect();
        let e3: Vec<Vec<Felt>> = e2.iter().map(|v| k.mul_vec(v)).collect();
        let p12 = fit_projection(&f, &e1, &e2).unwrap();
        let p23 = fit_projection(&f, &e2, &e3).unwrap();
        let p13 = fit_projection(&f, &e1, &e3).unwrap();
        for v in &e1 {
            let two_step = p23.apply(&p12.apply(v).unwrap()).unwrap();
            prop_assert!(proportional(&f, &two_step, &p13.apply(v).unwrap()));
        }
    }
}

#[test]
fn emitted_generators_vanish_on_enumerated_points() {
    for (name, qs) in [
        (CaseName::Symplectic, &[2u32, 3][..]),
        (CaseName::Parabolic, &[2, 3, 4]),
        (CaseName::HermitianSurface, &[2, 3]),
        (CaseName::Elliptic, &[2]),
        (CaseName::DualGrid, &[2, 3]),
    ] {
        for &q in qs {
            let s = grasspolar::casebook::case_setup(name, q).unwrap();
            let v = build_variety(&s.form).unwrap();
            for kind in [EquationKind::Variety, EquationKind::Raw] {
                let sys = emit_equations(&s.form, &kind).unwrap();
                for w in &v.points {
                    assert!(sys.satisfied_by(w.coords()), "{name} q={q} {kind:?} at {}", w.to_text(&s.field));
                }
            }
        }
    }
}

#[test]
fn reports_are_reproducible() {
    for name in [CaseName::Symplectic, CaseName::Elliptic] {
        let a = serde_json::to_string(&run_case(name, 2).unwrap()).unwrap();
        let b = serde_json::to_string(&run_case(name, 2).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn grassmann_relations_hold_on_every_line() {
    for q in [2, 3] {
        let f = Field::gf(q).unwrap();
        for n in [4, 5] {
            assert!(lines(&f, n).iter().all(|l| grassmann_membership(&f, plucker(&f, l).coords())));
        }
    }
}

#[test]
fn radical_lines_lie_in_every_tangent_space() {
    // degenerate alternating form with radical ⟨e5⟩
    let f = Field::gf(3).unwrap();
    let g = Mat::from_ints(&f, &[&[0, 1, 0, 0, 0], &[-1, 0, 0, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, -1, 0, 0], &[0, 0, 0, 0, 0]]);
    let form = PolarForm::Sesqui(SesquiForm::new(g.clone(), f.neg(Felt::ONE)).unwrap());
    let v = build_variety(&form).unwrap();
    let rad_lines: Vec<Vec<Felt>> = lines(&f, 5)
        .iter()
        .filter(|l| l.points(&f).iter().any(|p| g.mul_vec(p).iter().all(|c| c.is_zero())))
        .map(|l| plucker(&f, l).coords().to_vec())
        .collect();
    let rad_span = Subspace::span(&f, 10, &rad_lines).unwrap();
    for w in v.points.iter().filter(|w| rad_lines.contains(&w.coords().to_vec())) {
        assert!(v.tangent_space(w).unwrap().subspace.contains_subspace(&rad_span));
    }
}
