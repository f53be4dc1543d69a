//! Polynomial equation systems for the varieties, in Plücker variables.
//!
//! The matrix equations are expanded symbolically with `x_{j,i} = −x_{i,j}`
//! and `x_{i,i} = 0`. In reduced mode the linear equations of the span are
//! solved for their highest-index variable and substituted into the
//! remaining generators, which are then simplified (p-th roots in
//! characteristic p, monic) and deduplicated.

use std::collections::BTreeSet;

use crate::field::{Felt, Field};
use crate::forms::PolarForm;
use crate::linalg::Mat;
use crate::wedge::{WedgeIndex, WedgePoint};

use super::poly::{EqnSystem, Poly, Var, VarNaming};
use super::{build_variety, linear_map_system, tangent_space, VarietyError};

/// Which system to emit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquationKind {
    /// The Grassmann relations alone.
    Grassmann,
    /// Linear equations of the span, then the form equations and the
    /// Grassmann relations reduced modulo the span.
    Variety,
    /// The form equations and Grassmann relations as they come.
    Raw,
    /// Linear equations of the span of `R_phi`, then the Grassmann relations.
    RadicalStar,
    /// Linear equations of the tangent space at a point.
    Tangent(WedgePoint),
}

type PolyMat = Vec<Vec<Poly>>;

fn symbolic(n: usize, twisted: bool, field: &Field) -> PolyMat {
    let idx = WedgeIndex::new(n);
    let mk = |p: usize| if twisted { Var::twisted(p) } else { Var::plain(p) };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Less => Poly::var(mk(idx.pos(i, j))),
                    std::cmp::Ordering::Greater => Poly::var(mk(idx.pos(j, i))).scale(field, field.neg(Felt::ONE)),
                    std::cmp::Ordering::Equal => Poly::zero(),
                })
                .collect()
        })
        .collect()
}

fn const_times(field: &Field, m: &Mat, x: &PolyMat) -> PolyMat {
    let n = x.len();
    (0..m.rows())
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Poly::zero();
                    for k in 0..m.cols() {
                        let c = m.get(i, k);
                        if !c.is_zero() {
                            acc = acc.add(field, &x[k][j].scale(field, c));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn times_const(field: &Field, x: &PolyMat, m: &Mat) -> PolyMat {
    x.iter()
        .map(|row| {
            (0..m.cols())
                .map(|j| {
                    let mut acc = Poly::zero();
                    for (k, p) in row.iter().enumerate() {
                        let c = m.get(k, j);
                        if !c.is_zero() {
                            acc = acc.add(field, &p.scale(field, c));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn times(field: &Field, a: &PolyMat, b: &PolyMat) -> PolyMat {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    let mut acc = Poly::zero();
                    for (k, p) in row.iter().enumerate() {
                        if !p.is_zero() && !b[k][j].is_zero() {
                            acc = acc.add(field, &p.mul(field, &b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn entries(m: &PolyMat, upper_only: bool) -> Vec<Poly> {
    let mut out = Vec::new();
    for (k, row) in m.iter().enumerate() {
        for (h, p) in row.iter().enumerate() {
            if !upper_only || k <= h {
                out.push(p.clone());
            }
        }
    }
    out
}

/// The Grassmann relations `x_ij x_kh − x_ik x_jh + x_ih x_jk`,
/// `i < j < k < h`.
pub fn grassmann_polys(field: &Field, n: usize) -> Vec<Poly> {
    let idx = WedgeIndex::new(n);
    let v = |i: usize, j: usize| Poly::var(Var::plain(idx.pos(i, j)));
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for h in k + 1..n {
                    let p = v(i, j).mul(field, &v(k, h));
                    let p = p.sub(field, &v(i, k).mul(field, &v(j, h)));
                    out.push(p.add(field, &v(i, h).mul(field, &v(j, k))));
                }
            }
        }
    }
    out
}

/// Form equations before any reduction, as named groups.
///
/// Sesquilinear: entries of `X^σ Φ X` (only `k ≤ h` when σ = id), except
/// for degenerate alternating forms where the entries of `Φ X Φ X` are
/// used. Quadratic: entries of `Φ X Φ X` and, for every column `k`, the
/// quadratic form evaluated on column `k` of `X`.
pub fn form_polys(form: &PolarForm) -> Vec<(&'static str, Vec<Poly>)> {
    let field = form.field().clone();
    let n = form.n();
    let x = symbolic(n, false, &field);
    match form {
        PolarForm::Sesqui(s) => {
            let phi = s.gram();
            let sigma_id = field.sigma_is_identity();
            let m = if s.is_degenerate() && s.is_alternating() {
                let xs = symbolic(n, !sigma_id, &field);
                times(&field, &const_times(&field, &phi.frobenius(), &times_const(&field, &xs, phi)), &x)
            } else {
                let xs = symbolic(n, !sigma_id, &field);
                times(&field, &times_const(&field, &xs, phi), &x)
            };
            let upper = sigma_id && !(s.is_degenerate() && s.is_alternating());
            vec![("form", entries(&m, upper))]
        }
        PolarForm::Quad(q) => {
            let phi = q.polar().gram();
            let px = const_times(&field, phi, &x);
            let m = times(&field, &px, &px);
            let u = q.upper();
            let mut singular = Vec::new();
            for k in 0..n {
                let mut acc = Poly::zero();
                for i in 0..n {
                    for j in i..n {
                        let c = u.get(i, j);
                        if !c.is_zero() && !x[i][k].is_zero() && !x[j][k].is_zero() {
                            acc = acc.add(&field, &x[i][k].mul(&field, &x[j][k]).scale(&field, c));
                        }
                    }
                }
                singular.push(acc);
            }
            vec![("form", entries(&m, false)), ("singular", singular)]
        }
    }
}

fn dedup(field: &Field, seen: &mut BTreeSet<Poly>, polys: Vec<Poly>) -> Vec<Poly> {
    let mut out = Vec::new();
    for p in polys {
        let s = p.simplified(field);
        if !s.is_zero() && seen.insert(s.clone()) {
            out.push(s);
        }
    }
    out
}

/// Independent linear equations for the row space of `m`, each solved for
/// its highest-index variable: returns `(pivot, row)` with `row[pivot] = 1`
/// and zero at every other pivot.
fn solved_rows(m: &Mat) -> Vec<(usize, Vec<Felt>)> {
    let cols = m.cols();
    let field = m.field();
    let mut rev = Mat::zeros(field, m.rows(), cols);
    for r in 0..m.rows() {
        for c in 0..cols {
            rev.set(r, cols - 1 - c, m.get(r, c));
        }
    }
    let rr = rev.rref();
    (0..rr.rank)
        .map(|r| {
            let row: Vec<Felt> = (0..cols).map(|c| rr.mat.get(r, cols - 1 - c)).collect();
            (cols - 1 - rr.pivots[r], row)
        })
        .collect()
}

fn reduce(field: &Field, p: &Poly, subs: &[(usize, Poly)]) -> Poly {
    subs.iter().fold(p.clone(), |acc, (i, s)| acc.substitute(field, *i, s))
}

fn linear_group(field: &Field, m: &Mat) -> (Vec<Poly>, Vec<(usize, Poly)>) {
    let rows = solved_rows(m);
    let mut polys = Vec::new();
    let mut subs = Vec::new();
    for (pivot, row) in rows {
        let poly = Poly::linear(&row);
        let mut rest = row.clone();
        rest[pivot] = Felt::ZERO;
        let rest: Vec<Felt> = rest.iter().map(|&c| field.neg(c)).collect();
        subs.push((pivot, Poly::linear(&rest)));
        polys.push(poly.monic(field));
    }
    (polys, subs)
}

/// Emits the requested system for `form`.
pub fn emit_equations(form: &PolarForm, kind: &EquationKind) -> Result<EqnSystem, VarietyError> {
    let field = form.field().clone();
    let n = form.n();
    let mut sys = EqnSystem::new(&field, VarNaming::Wedge(n));
    let mut seen = BTreeSet::new();
    let mut push = |sys: &mut EqnSystem, name: &str, polys: Vec<Poly>| {
        let polys = dedup(&field, &mut seen, polys);
        if !polys.is_empty() {
            sys.push_group(name, polys);
        }
    };
    match kind {
        EquationKind::Grassmann => push(&mut sys, "grassmann", grassmann_polys(&field, n)),
        EquationKind::Raw => {
            for (name, polys) in form_polys(form) {
                push(&mut sys, name, polys);
            }
            push(&mut sys, "grassmann", grassmann_polys(&field, n));
        }
        EquationKind::Variety => {
            let variety = build_variety(form)?;
            let (hull, subs) = linear_group(&field, &variety.span().annihilator());
            push(&mut sys, "hull", hull);
            for (name, polys) in form_polys(form) {
                let reduced = polys.iter().map(|p| reduce(&field, p, &subs)).collect();
                push(&mut sys, name, reduced);
            }
            let g = grassmann_polys(&field, n).iter().map(|p| reduce(&field, p, &subs)).collect();
            push(&mut sys, "grassmann", g);
        }
        EquationKind::RadicalStar => {
            let s = form.sesqui().clone();
            let lin = linear_map_system(&field, n, |a| s.radical_matrix(a));
            let (radical, _) = linear_group(&field, &lin);
            push(&mut sys, "radical", radical);
            push(&mut sys, "grassmann", grassmann_polys(&field, n));
        }
        EquationKind::Tangent(w) => {
            let t = tangent_space(form, w)?;
            let (rows, _) = linear_group(&field, &t.system);
            push(&mut sys, "tangent", rows);
        }
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{QuadForm, SesquiForm};
    use crate::projective::points;

    fn alt4(q: u32) -> PolarForm {
        let f = Field::gf(q).unwrap();
        let m = Mat::from_ints(&f, &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]);
        PolarForm::Sesqui(SesquiForm::new(m, f.neg(Felt::ONE)).unwrap())
    }

    fn texts(sys: &EqnSystem, group: &str) -> Vec<String> {
        sys.group(group).unwrap().polys.iter().map(|p| p.to_text(&sys.field, &sys.naming)).collect()
    }

    #[test]
    fn grassmann_n4_single_relation() {
        let f = Field::gf(3).unwrap();
        let g = grassmann_polys(&f, 4);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].to_text(&f, &VarNaming::Wedge(4)), "x_1_2*x_3_4 + 2*x_1_3*x_2_4 + x_1_4*x_2_3");
        assert_eq!(grassmann_polys(&f, 5).len(), 5);
    }

    #[test]
    fn symplectic_n4_reduces_to_two_generators() {
        for q in [2, 3, 5] {
            let sys = emit_equations(&alt4(q), &EquationKind::Variety).unwrap();
            assert_eq!(texts(&sys, "hull"), vec!["x_1_3 + x_2_4"], "q={q}");
            assert_eq!(texts(&sys, "form"), vec!["x_1_2*x_3_4 + x_1_3^2 + x_1_4*x_2_3"], "q={q}");
            assert!(sys.group("grassmann").is_none());
            assert_eq!(sys.len(), 2);
        }
    }

    #[test]
    fn emitted_system_cuts_out_variety() {
        let form = alt4(3);
        let variety = build_variety(&form).unwrap();
        for kind in [EquationKind::Variety, EquationKind::Raw] {
            let sys = emit_equations(&form, &kind).unwrap();
            let sols: BTreeSet<Vec<Felt>> = points(&sys.field, 6).into_iter().filter(|v| sys.satisfied_by(v)).collect();
            let expected: BTreeSet<Vec<Felt>> = variety.point_vecs().into_iter().collect();
            assert_eq!(sols, expected);
        }
    }

    #[test]
    fn quadratic_raw_groups() {
        let f = Field::gf(2).unwrap();
        let u = Mat::from_ints(&f, &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]);
        let form = PolarForm::Quad(QuadForm::new(u).unwrap());
        let sys = emit_equations(&form, &EquationKind::Raw).unwrap();
        let singular: BTreeSet<String> = texts(&sys, "singular").into_iter().collect();
        let expected: BTreeSet<String> =
            ["x_1_3*x_1_4", "x_2_3*x_2_4", "x_1_3*x_2_3", "x_1_4*x_2_4"].iter().map(|s| s.to_string()).collect();
        assert_eq!(singular, expected);
        assert_eq!(texts(&sys, "grassmann"), vec!["x_1_2*x_3_4 + x_1_3*x_2_4 + x_1_4*x_2_3"]);
    }

    #[test]
    fn tangent_emission_matches_rank() {
        let form = alt4(3);
        let w = build_variety(&form).unwrap().points.iter().next().unwrap().clone();
        let sys = emit_equations(&form, &EquationKind::Tangent(w.clone())).unwrap();
        assert_eq!(sys.len(), tangent_space(&form, &w).unwrap().rank);
        assert!(sys.polys().all(|p| p.degree() == 1));
    }
}
