//! The hull of an embedding: the largest embedding that projects onto it
//! while agreeing on every line.
//!
//! Each point `p` contributes a coordinate `e_p` standing for `ε(p)`; each
//! line `l` contributes a block of coordinates for a basis of `⟨ε(l)⟩`
//! chosen among its points. For every flag `(p, l)` the relation
//! `e_p = (coordinates of ε(p) in the basis of l)` is imposed, and the hull
//! is the quotient of the free space by these relations.

use crate::field::{Felt, Field};
use crate::linalg::Mat;

use super::{EmbeddingError, Geometry, PointEmbedding};

/// Default limit on the number of free coordinates.
pub const DEFAULT_HULL_CAP: usize = 20_000;

#[derive(Debug, Clone)]
pub struct Hull {
    /// Vector dimension of the hull.
    pub dim: usize,
    pub embedding: PointEmbedding,
}

pub fn hull(geom: &Geometry, emb: &PointEmbedding, cap: usize) -> Result<Hull, EmbeddingError> {
    let field: &Field = emb.field();
    let np = geom.num_points();
    let mut bases: Vec<Vec<usize>> = Vec::with_capacity(geom.num_lines());
    let mut size = np;
    for l in 0..geom.num_lines() {
        let mut chosen: Vec<usize> = Vec::new();
        let mut rank = 0;
        for &p in geom.line(l) {
            let mut vecs: Vec<Vec<Felt>> = chosen.iter().map(|&c| emb.image(c).to_vec()).collect();
            vecs.push(emb.image(p).to_vec());
            let r = crate::linalg::span_dim(field, &vecs).expect("lengths");
            if r > rank {
                rank = r;
                chosen.push(p);
            }
        }
        size += chosen.len();
        bases.push(chosen);
    }
    if size > cap {
        return Err(EmbeddingError::GeometryTooLarge { size, cap });
    }
    let mut offsets = Vec::with_capacity(bases.len());
    let mut off = np;
    for b in &bases {
        offsets.push(off);
        off += b.len();
    }
    let mut rows: Vec<Vec<Felt>> = Vec::new();
    for (l, basis) in bases.iter().enumerate() {
        let bm = Mat::from_columns(field, emb.dim(), &basis.iter().map(|&p| emb.image(p).to_vec()).collect::<Vec<_>>())
            .expect("lengths");
        for &p in geom.line(l) {
            let c = bm.solve(emb.image(p)).expect("point lies in the span of its line");
            let mut row = vec![Felt::ZERO; size];
            row[p] = Felt::ONE;
            for (i, &ci) in c.iter().enumerate() {
                row[offsets[l] + i] = field.neg(ci);
            }
            rows.push(row);
        }
    }
    let rr = Mat::from_rows(field, size, &rows).expect("lengths").rref();
    let is_pivot = {
        let mut v = vec![None; size];
        for (r, &c) in rr.pivots.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    let free: Vec<usize> = (0..size).filter(|&c| is_pivot[c].is_none()).collect();
    let dim = free.len();
    let images = (0..np)
        .map(|p| match is_pivot[p] {
            Some(r) => free.iter().map(|&c| field.neg(rr.mat.get(r, c))).collect(),
            None => free.iter().map(|&c| if c == p { Felt::ONE } else { Felt::ZERO }).collect(),
        })
        .collect();
    let embedding = PointEmbedding::new(field, dim, images)?;
    Ok(Hull { dim, embedding })
}
