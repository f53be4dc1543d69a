//! The quadric Veronese map `x ↦ (x_i x_j)_{i ≤ j}` and its equations.

use crate::field::{Felt, Field};
use crate::varieties::{EqnSystem, Poly, Var, VarNaming};

use super::{EmbeddingError, PointEmbedding};

/// Products `x_i x_j`, `i ≤ j`, in lexicographic order.
pub fn veronese_vector(field: &Field, x: &[Felt]) -> Vec<Felt> {
    let n = x.len();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            out.push(field.mul(x[i], x[j]));
        }
    }
    out
}

/// Composes an embedding into PG(n-1, q) with the Veronese map.
pub fn veronese_map(emb: &PointEmbedding) -> Result<PointEmbedding, EmbeddingError> {
    let field = emb.field();
    let n = emb.dim();
    let images = emb.images().iter().map(|v| veronese_vector(field, v)).collect();
    PointEmbedding::new(field, n * (n + 1) / 2, images)
}

/// The 2×2 minors of the symmetric matrix `(y_{ij})`, which cut out the
/// image of the Veronese map.
pub fn veronese_equations(field: &Field, n: usize) -> EqnSystem {
    let naming = VarNaming::Sym(n);
    let y = |i: usize, j: usize| Poly::var(Var::plain(naming.index_of(i.min(j), i.max(j)).expect("in range")));
    let mut polys: Vec<Poly> = Vec::new();
    for i1 in 0..n {
        for i2 in i1 + 1..n {
            for j1 in 0..n {
                for j2 in j1 + 1..n {
                    let p = y(i1, j1).mul(field, &y(i2, j2)).sub(field, &y(i1, j2).mul(field, &y(i2, j1)));
                    if p.is_zero() {
                        continue;
                    }
                    let p = p.monic(field);
                    if !polys.contains(&p) {
                        polys.push(p);
                    }
                }
            }
        }
    }
    let mut sys = EqnSystem::new(field, naming);
    sys.push_group("veronese", polys);
    sys
}
