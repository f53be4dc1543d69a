//! Point-line geometries and their projective embeddings: validity checks,
//! Veronese and Grassmann embeddings, quotients, the hull, projections
//! between embeddings, and conic nuclei.

pub mod grassmann;
pub mod hull;
pub mod nucleus;
pub mod projection;
pub mod quotient;
pub mod veronese;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::field::{Felt, Field};
use crate::linalg::{normalize, Subspace};

pub use grassmann::{grassmann_dual_embedding, grassmann_embed, polar_geometry};
pub use hull::{hull, Hull, DEFAULT_HULL_CAP};
pub use nucleus::conic_nucleus;
pub use projection::{fit_projection, Projection};
pub use quotient::{check_quotient, QuotientCheck};
pub use veronese::{veronese_equations, veronese_map, veronese_vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("embedding has {got} images for {expected} points")]
    ImageCount { expected: usize, got: usize },
    #[error("image vectors must have length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point {0} is mapped to the zero vector")]
    ZeroImage(usize),
    #[error("geometry too large for the hull computation ({size} > {cap})")]
    GeometryTooLarge { size: usize, cap: usize },
    #[error("not a conic: {0}")]
    NotAConic(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A partial linear space: points `0..npoints`, lines as point lists, any
/// two points on at most one line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geometry {
    names: Vec<String>,
    lines: Vec<Vec<usize>>,
    point_lines: Vec<Vec<usize>>,
}

impl Geometry {
    pub fn new(npoints: usize, lines: Vec<Vec<usize>>) -> Result<Geometry, EmbeddingError> {
        Geometry::with_names((0..npoints).map(|i| i.to_string()).collect(), lines)
    }

    pub fn with_names(names: Vec<String>, lines: Vec<Vec<usize>>) -> Result<Geometry, EmbeddingError> {
        let n = names.len();
        let mut point_lines = vec![Vec::new(); n];
        let mut pairs = HashSet::new();
        for (li, l) in lines.iter().enumerate() {
            if l.len() < 2 {
                return Err(EmbeddingError::InvalidGeometry(format!("line {li} has fewer than two points")));
            }
            for (a, &p) in l.iter().enumerate() {
                if p >= n {
                    return Err(EmbeddingError::InvalidGeometry(format!("line {li} names unknown point {p}")));
                }
                point_lines[p].push(li);
                for &r in &l[a + 1..] {
                    let key = (p.min(r), p.max(r));
                    if p == r || !pairs.insert(key) {
                        return Err(EmbeddingError::InvalidGeometry(format!(
                            "points {} and {} share more than one line",
                            names[key.0], names[key.1]
                        )));
                    }
                }
            }
        }
        Ok(Geometry { names, lines, point_lines })
    }

    pub fn num_points(&self) -> usize {
        self.names.len()
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn line(&self, l: usize) -> &[usize] {
        &self.lines[l]
    }

    /// Lines through point `p`.
    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    pub fn name(&self, p: usize) -> &str {
        &self.names[p]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Points and lines swapped; point `i` of the dual is line `i`.
    pub fn dual(&self) -> Result<Geometry, EmbeddingError> {
        let names = (0..self.num_lines()).map(|i| format!("L{i}")).collect();
        Geometry::with_names(names, self.point_lines.clone())
    }

    /// Text form: `p <id>` per point, then `l <id> <id> ...` per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for n in &self.names {
            let _ = writeln!(out, "p {n}");
        }
        for l in &self.lines {
            let ids: Vec<&str> = l.iter().map(|&p| self.names[p].as_str()).collect();
            let _ = writeln!(out, "l {}", ids.join(" "));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Geometry, EmbeddingError> {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        let mut lines = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut toks = line.split_whitespace();
            let err = |msg: String| EmbeddingError::Parse { line: ln + 1, msg };
            match toks.next() {
                Some("p") => {
                    let id = toks.next().ok_or_else(|| err("missing point id".into()))?;
                    if index.insert(id.to_string(), names.len()).is_some() {
                        return Err(err(format!("duplicate point {id}")));
                    }
                    names.push(id.to_string());
                }
                Some("l") => {
                    let pts = toks
                        .map(|t| index.get(t).copied().ok_or_else(|| err(format!("unknown point {t}"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    lines.push(pts);
                }
                Some(other) => return Err(err(format!("expected `p` or `l`, got `{other}`"))),
                None => {}
            }
        }
        Geometry::with_names(names, lines)
    }
}

/// An assignment of a projective point (a normalized vector of length
/// `dim`) to every point of a geometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointEmbedding {
    field: Field,
    dim: usize,
    images: Vec<Vec<Felt>>,
}

impl PointEmbedding {
    pub fn new(field: &Field, dim: usize, images: Vec<Vec<Felt>>) -> Result<PointEmbedding, EmbeddingError> {
        let mut out = Vec::with_capacity(images.len());
        for (i, v) in images.iter().enumerate() {
            if v.len() != dim {
                return Err(EmbeddingError::DimensionMismatch { expected: dim, got: v.len() });
            }
            out.push(normalize(field, v).ok_or(EmbeddingError::ZeroImage(i))?);
        }
        Ok(PointEmbedding { field: field.clone(), dim, images: out })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, p: usize) -> &[Felt] {
        &self.images[p]
    }

    pub fn images(&self) -> &[Vec<Felt>] {
        &self.images
    }

    pub fn span(&self) -> Subspace {
        Subspace::span(&self.field, self.dim, &self.images).expect("uniform lengths")
    }

    /// Same embedding written in coordinates of a basis of its span.
    pub fn restricted_to_span(&self) -> PointEmbedding {
        let span = self.span();
        let images = self.images.iter().map(|v| span.coordinates(v).expect("in span")).collect();
        PointEmbedding::new(&self.field, span.dim(), images).expect("nonzero images")
    }

    /// Image vectors of the points of a line.
    pub fn line_images(&self, geom: &Geometry, l: usize) -> Vec<Vec<Felt>> {
        geom.line(l).iter().map(|&p| self.images[p].clone()).collect()
    }

    /// Text form: `<id> : c_1 c_2 ...` per point.
    pub fn to_text(&self, geom: &Geometry) -> String {
        let mut out = format!("# field {}\n", self.field.spec());
        for (p, v) in self.images.iter().enumerate() {
            let cs: Vec<String> = v.iter().map(|&c| self.field.fmt_elem(c)).collect();
            let _ = writeln!(out, "{} : {}", geom.name(p), cs.join(" "));
        }
        out
    }

    /// Parses the text form against `geom`; every point needs an image.
    pub fn parse(field: &Field, geom: &Geometry, text: &str) -> Result<PointEmbedding, EmbeddingError> {
        let index: HashMap<&str, usize> = geom.names().iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut images: Vec<Option<Vec<Felt>>> = vec![None; geom.num_points()];
        let mut dim = None;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| EmbeddingError::Parse { line: ln + 1, msg };
            let (id, coords) = line.split_once(':').ok_or_else(|| err("expected `<id> : coords`".into()))?;
            let p = *index.get(id.trim()).ok_or_else(|| err(format!("unknown point {}", id.trim())))?;
            let v = coords
                .split_whitespace()
                .map(|t| field.parse_elem(t).map_err(|e| err(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            if *dim.get_or_insert(v.len()) != v.len() {
                return Err(err("inconsistent vector length".into()));
            }
            images[p] = Some(v);
        }
        let got = images.iter().filter(|v| v.is_some()).count();
        if got != geom.num_points() {
            return Err(EmbeddingError::ImageCount { expected: geom.num_points(), got });
        }
        PointEmbedding::new(field, dim.unwrap_or(0), images.into_iter().map(Option::unwrap).collect())
    }
}

/// Outcome of [`check_embedding`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingCheck {
    pub injective: bool,
    /// Vector dimension of `⟨ε(l)⟩` → number of lines.
    pub line_dims: BTreeMap<usize, usize>,
    /// `d` when every line spans a `d`-dimensional projective subspace.
    pub degree: Option<usize>,
    /// No point off a line is mapped into the span of the line's image.
    pub line_spans_exact: bool,
    pub span_dim: usize,
    pub ambient_dim: usize,
    /// Every line image is the full point set of its span.
    pub full: bool,
    pub violation: Option<String>,
}

impl EmbeddingCheck {
    pub fn spanning(&self) -> bool {
        self.span_dim == self.ambient_dim
    }

    /// Injective, uniform degree, exact line spans and spanning.
    pub fn valid(&self) -> bool {
        self.injective && self.degree.is_some() && self.line_spans_exact && self.spanning()
    }

    /// A valid 1-embedding whose line images are full projective lines.
    pub fn projective(&self) -> bool {
        self.valid() && self.degree == Some(1) && self.full
    }

    /// A valid 1-embedding with some line image a proper subset of its line.
    pub fn lax(&self) -> bool {
        self.valid() && self.degree == Some(1) && !self.full
    }
}

fn count_points(q: usize, dim: usize) -> usize {
    (0..dim).map(|i| q.pow(i as u32)).sum()
}

/// Checks that `emb` is a `d`-embedding of `geom` for some `d`: injective,
/// each line spans a `d`-space, the span of a line's image contains no
/// other image point, and the images span the ambient space.
pub fn check_embedding(geom: &Geometry, emb: &PointEmbedding) -> EmbeddingCheck {
    let field = emb.field();
    let q = field.q() as usize;
    let mut violation = None;
    let mut seen = HashMap::new();
    let mut injective = true;
    for (p, v) in emb.images().iter().enumerate() {
        if let Some(prev) = seen.insert(v.clone(), p) {
            injective = false;
            violation.get_or_insert(format!("points {} and {} have the same image", geom.name(prev), geom.name(p)));
        }
    }
    let mut line_dims = BTreeMap::new();
    let mut exact = true;
    let mut full = true;
    for l in 0..geom.num_lines() {
        let span = Subspace::span(field, emb.dim(), &emb.line_images(geom, l)).expect("lengths");
        *line_dims.entry(span.dim()).or_insert(0) += 1;
        if count_points(q, span.dim()) != geom.line(l).len() {
            full = false;
        }
        let ann = span.annihilator();
        let on_line: HashSet<usize> = geom.line(l).iter().copied().collect();
        for (p, v) in emb.images().iter().enumerate() {
            if !on_line.contains(&p) && ann.mul_vec(v).iter().all(|c| c.is_zero()) {
                exact = false;
                if violation.is_none() {
                    violation = Some(format!("point {} lies in the span of line {l}", geom.name(p)));
                }
                break;
            }
        }
    }
    let degree = if line_dims.len() == 1 { line_dims.keys().next().map(|&d| d - 1) } else { None };
    EmbeddingCheck {
        injective,
        line_dims,
        degree,
        line_spans_exact: exact,
        span_dim: emb.span().dim(),
        ambient_dim: emb.dim(),
        full,
        violation,
    }
}
