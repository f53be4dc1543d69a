//! Quotients of an embedding by a subspace of its ambient space.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::linalg::Subspace;

use super::{check_embedding, EmbeddingCheck, Geometry, PointEmbedding};

/// Outcome of [`check_quotient`].
#[derive(Debug, Clone, Serialize)]
pub struct QuotientCheck {
    /// `⟨ε(p), ε(q)⟩ ∩ K = 0` for all distinct points.
    pub points_separated: bool,
    /// `ε(p) ∉ ⟨ε(l), K⟩` whenever `p` is off `l`.
    pub lines_separated: bool,
    /// `dim(K ∩ ⟨ε(l)⟩)` over all lines.
    pub line_meets: BTreeSet<usize>,
    /// The common value of `dim(K ∩ ⟨ε(l)⟩)`, if constant and below the
    /// vector dimension of the line spans minus one.
    pub k: Option<usize>,
    /// Check of the induced embedding in `⟨ε⟩ / K`.
    pub induced: EmbeddingCheck,
    #[serde(skip)]
    pub induced_embedding: Option<PointEmbedding>,
}

impl QuotientCheck {
    pub fn valid(&self) -> bool {
        self.points_separated && self.lines_separated && self.k.is_some()
    }
}

/// Tests whether `K` defines a quotient of `emb` and returns the induced
/// embedding, written in coordinates of `⟨ε⟩ / K`.
pub fn check_quotient(geom: &Geometry, emb: &PointEmbedding, k: &Subspace) -> QuotientCheck {
    let field = emb.field();
    let span = emb.span();
    // kernel of `quot` restricted to the span is K ∩ ⟨ε⟩
    let k_in_span = k.intersect(&span);
    let quot_rows = {
        let ann = k_in_span.annihilator();
        // restrict to functionals independent on the span
        let on_span = ann.mul(&span.basis().transpose());
        let rr = on_span.transpose().rref();
        let rows: Vec<Vec<_>> = rr.pivots.iter().map(|&r| ann.row(r).to_vec()).collect();
        rows
    };
    let proj = |v: &[crate::field::Felt]| -> Vec<crate::field::Felt> {
        quot_rows.iter().map(|r| field.dot(r, v)).collect()
    };
    let images: Vec<Vec<_>> = emb.images().iter().map(|v| proj(v)).collect();
    let qdim = quot_rows.len();
    let points_separated = images.iter().all(|v| v.iter().any(|c| !c.is_zero())) && {
        let normed: BTreeSet<Vec<_>> =
            images.iter().filter_map(|v| crate::linalg::normalize(field, v)).collect();
        normed.len() == images.len()
    };
    let mut line_meets = BTreeSet::new();
    let mut line_dims = BTreeSet::new();
    let mut lines_separated = true;
    for l in 0..geom.num_lines() {
        let imgs = emb.line_images(geom, l);
        let lspan = Subspace::span(field, emb.dim(), &imgs).expect("lengths");
        line_meets.insert(lspan.intersect(k).dim());
        line_dims.insert(lspan.dim());
        if lines_separated {
            let qspan = Subspace::span(field, qdim, &geom.line(l).iter().map(|&p| images[p].clone()).collect::<Vec<_>>())
                .expect("lengths");
            let on: BTreeSet<usize> = geom.line(l).iter().copied().collect();
            lines_separated = (0..geom.num_points()).all(|p| on.contains(&p) || !qspan.contains(&images[p]));
        }
    }
    let kval = match (line_meets.len(), line_dims.len()) {
        (1, 1) => {
            let m = *line_meets.iter().next().expect("one");
            let d = *line_dims.iter().next().expect("one");
            (m + 1 < d).then_some(m)
        }
        _ => None,
    };
    let (induced, induced_embedding) = match PointEmbedding::new(field, qdim, images) {
        Ok(e) => (check_embedding(geom, &e), Some(e)),
        Err(_) => (
            EmbeddingCheck {
                injective: false,
                line_dims: Default::default(),
                degree: None,
                line_spans_exact: false,
                span_dim: 0,
                ambient_dim: qdim,
                full: false,
                violation: Some("a point is mapped into K".into()),
            },
            None,
        ),
    };
    QuotientCheck { points_separated, lines_separated, line_meets, k: kval, induced, induced_embedding }
}
