//! Fitting a linear map between two embeddings of the same point set.
//!
//! The unknowns are the entries of `f` together with one scalar `λ_p` per
//! point, subject to `f(u_p) = λ_p v_p`. The solutions form a linear space;
//! a solution is accepted only when every `λ_p` is nonzero.

use crate::field::{Felt, Field};
use crate::linalg::{Mat, Subspace};
use crate::projective::points;

/// A linear map from the span of the source images.
#[derive(Debug, Clone)]
pub struct Projection {
    /// Matrix of `f` in the canonical basis of `span` (rows: target).
    pub map: Mat,
    pub span: Subspace,
    pub scalars: Vec<Felt>,
    /// Dimension of the space of all `(f, λ)` solutions.
    pub solution_dim: usize,
    pub rank: usize,
}

impl Projection {
    pub fn apply(&self, v: &[Felt]) -> Option<Vec<Felt>> {
        self.span.coordinates(v).map(|c| self.map.mul_vec(&c))
    }

    /// Dimension of the kernel of `f` on the span of the sources.
    pub fn kernel_dim(&self) -> usize {
        self.span.dim() - self.rank
    }
}

const SEARCH_CAP: u64 = 1 << 12;

/// Finds `f` with `f(src[p]) ∝ dst[p]` (nonzero multiple) for all `p`.
pub fn fit_projection(field: &Field, src: &[Vec<Felt>], dst: &[Vec<Felt>]) -> Option<Projection> {
    if src.len() != dst.len() || src.is_empty() {
        return None;
    }
    let span = Subspace::span(field, src[0].len(), src).ok()?;
    let k1 = span.dim();
    let d2 = dst[0].len();
    let coords: Vec<Vec<Felt>> = src.iter().map(|v| span.coordinates(v).expect("in span")).collect();
    let np = src.len();
    let nf = d2 * k1;
    let mut rows = Vec::with_capacity(np * d2);
    for (p, (c, v)) in coords.iter().zip(dst).enumerate() {
        for i in 0..d2 {
            let mut row = vec![Felt::ZERO; nf + np];
            row[i * k1..(i + 1) * k1].copy_from_slice(c);
            row[nf + p] = field.neg(v[i]);
            rows.push(row);
        }
    }
    let kernel = Mat::from_rows(field, nf + np, &rows).ok()?.kernel_basis();
    if kernel.is_empty() {
        return None;
    }
    let combine = |combo: &[Felt]| {
        let mut s = vec![Felt::ZERO; nf + np];
        for (a, v) in combo.iter().zip(&kernel) {
            field.axpy(&mut s, *a, v);
        }
        s
    };
    let solution = if field.q() == 2 {
        // the only nonzero scalar is 1, so the condition on λ is linear
        all_ones_combination(field, &kernel, nf).map(|c| combine(&c))
    } else if (field.q() as u64).saturating_pow(kernel.len() as u32) <= SEARCH_CAP {
        points(field, kernel.len()).into_iter().map(|c| combine(&c)).find(|s| s[nf..].iter().all(|x| !x.is_zero()))
    } else {
        greedy_combination(field, &kernel, nf).map(|c| combine(&c))
    }?;
    let mut map = Mat::zeros(field, d2, k1);
    for i in 0..d2 {
        for j in 0..k1 {
            map.set(i, j, solution[i * k1 + j]);
        }
    }
    let rank = map.rank();
    Some(Projection { map, span, scalars: solution[nf..].to_vec(), solution_dim: kernel.len(), rank })
}

/// Coefficients `c` with `Σ c_i kernel[i][nf + p] = 1` for every `p`.
fn all_ones_combination(field: &Field, kernel: &[Vec<Felt>], nf: usize) -> Option<Vec<Felt>> {
    let k = kernel.len();
    let np = kernel[0].len() - nf;
    let rows: Vec<Vec<Felt>> = (0..np)
        .map(|p| {
            let mut row: Vec<Felt> = kernel.iter().map(|v| v[nf + p]).collect();
            row.push(field.neg(Felt::ONE));
            row
        })
        .collect();
    let sols = Mat::from_rows(field, k + 1, &rows).ok()?.kernel_basis();
    let v = sols.into_iter().find(|v| !v[k].is_zero())?;
    let t = field.inv(v[k]).expect("nonzero");
    Some(v[..k].iter().map(|&c| field.mul(c, t)).collect())
}

/// Adds the kernel vectors one at a time, each with the multiplier that
/// leaves the fewest vanishing `λ_p`. Can miss a solution.
fn greedy_combination(field: &Field, kernel: &[Vec<Felt>], nf: usize) -> Option<Vec<Felt>> {
    let mut combo = vec![Felt::ZERO; kernel.len()];
    let mut lambda = vec![Felt::ZERO; kernel[0].len() - nf];
    for (i, v) in kernel.iter().enumerate() {
        let zeros = |a: Felt| lambda.iter().zip(&v[nf..]).filter(|(l, x)| field.add(**l, field.mul(a, **x)).is_zero()).count();
        let a = field.elements().min_by_key(|&a| zeros(a)).expect("nonempty field");
        combo[i] = a;
        for (l, x) in lambda.iter_mut().zip(&v[nf..]) {
            *l = field.add(*l, field.mul(a, *x));
        }
    }
    lambda.iter().all(|l| !l.is_zero()).then_some(combo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{normalize, proportional};

    #[test]
    fn recovers_a_known_map() {
        let f = Field::gf(5).unwrap();
        let m = Mat::from_ints(&f, &[&[1, 2, 0], &[0, 1, 3], &[4, 0, 1], &[1, 1, 1]]);
        let src = points(&f, 3);
        let dst: Vec<Vec<Felt>> = src.iter().map(|v| normalize(&f, &m.mul_vec(v)).unwrap()).collect();
        let p = fit_projection(&f, &src, &dst).unwrap();
        assert_eq!(p.solution_dim, 1);
        assert_eq!(p.kernel_dim(), 0);
        for (s, d) in src.iter().zip(&dst) {
            assert!(proportional(&f, &p.apply(s).unwrap(), d));
        }
    }

    #[test]
    fn independent_sources_fit_over_gf2() {
        let f = Field::gf(2).unwrap();
        let src: Vec<Vec<Felt>> = (0..15).map(|i| (0..15).map(|j| if i == j { Felt::ONE } else { Felt::ZERO }).collect()).collect();
        let dst = points(&f, 4);
        let p = fit_projection(&f, &src, &dst).unwrap();
        assert_eq!(p.solution_dim, 15);
        assert_eq!(p.rank, 4);
    }

    #[test]
    fn rejects_unrelated_targets() {
        let f = Field::gf(3).unwrap();
        // swapping two points of PG(2,3) is not a collineation
        let src = points(&f, 3);
        let mut dst = src.clone();
        dst.swap(0, 1);
        assert!(fit_projection(&f, &src, &dst).is_none());
    }
}
