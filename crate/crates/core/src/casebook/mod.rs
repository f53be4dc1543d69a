//! Worked generalized-quadrangle cases with their expected numbers.
//!
//! Each case builds a form, the variety of its lines, and the Grassmann
//! embedding of the dual quadrangle, then compares measured values with
//! expected ones in a claims table.

pub mod cases;
pub mod extras;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::embeddings::EmbeddingError;
use crate::field::FieldError;
use crate::forms::FormError;
use crate::varieties::VarietyError;
use crate::wedge::WedgeError;

pub use cases::{case_setup, run_case, CaseSetup};
pub use extras::{hull_suite, klein_projection_suite, nucleus_suite};

/// Version tag carried by every JSON report.
pub const REPORT_SCHEMA: &str = "grasspolar.report/1";

#[derive(Debug, Error)]
pub enum CaseError {
    #[error("case {case} is not defined over GF({q})")]
    UnsupportedField { case: String, q: u32 },
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Wedge(#[from] WedgeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseName {
    Symplectic,
    Parabolic,
    HermitianSurface,
    Elliptic,
    H4,
    DualGrid,
}

impl CaseName {
    pub const ALL: [CaseName; 6] = [
        CaseName::Symplectic,
        CaseName::Parabolic,
        CaseName::HermitianSurface,
        CaseName::Elliptic,
        CaseName::H4,
        CaseName::DualGrid,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseName::Symplectic => "symplectic",
            CaseName::Parabolic => "parabolic",
            CaseName::HermitianSurface => "hermitian_surface",
            CaseName::Elliptic => "elliptic",
            CaseName::H4 => "h4",
            CaseName::DualGrid => "dual_grid",
        }
    }
}

impl fmt::Display for CaseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseName {
    type Err = CaseError;

    fn from_str(s: &str) -> Result<CaseName, CaseError> {
        CaseName::ALL.iter().copied().find(|c| c.as_str() == s).ok_or_else(|| CaseError::UnknownCase(s.to_string()))
    }
}

/// One expected-versus-observed line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

/// A claims table with a title; serialized as the JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub title: String,
    pub q: u32,
    pub field: String,
    pub form: Option<String>,
    pub point: Option<String>,
    pub claims: Vec<Claim>,
    pub pass: bool,
}

impl Report {
    pub fn new(title: &str, q: u32, field: String) -> Report {
        Report {
            schema: REPORT_SCHEMA,
            title: title.to_string(),
            q,
            field,
            form: None,
            point: None,
            claims: Vec::new(),
            pass: true,
        }
    }

    pub fn claim(&mut self, name: &str, expected: impl fmt::Display, observed: impl fmt::Display, pass: bool) {
        self.pass &= pass;
        self.claims.push(Claim {
            name: name.to_string(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            pass,
        });
    }

    /// Claim that passes when the rendered values are equal.
    pub fn eq<T: fmt::Display + PartialEq>(&mut self, name: &str, expected: T, observed: T) {
        let pass = expected == observed;
        self.claim(name, expected, observed, pass);
    }

    pub fn get(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    /// Plain-text table, one claim per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} over {} (q = {})\n", self.title, self.field, self.q);
        if let Some(f) = &self.form {
            out.push_str(&format!("form: {}\n", f.trim().replace('\n', "; ")));
        }
        if let Some(p) = &self.point {
            out.push_str(&format!("point: {p}\n"));
        }
        let width = self.claims.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.claims {
            let tag = if c.pass { "ok  " } else { "FAIL" };
            out.push_str(&format!(
                "{tag} {:width$}  expected {}  observed {}\n",
                c.name,
                c.expected,
                c.observed,
                width = width
            ));
        }
        out.push_str(if self.pass { "all claims hold\n" } else { "some claims failed\n" });
        out
    }
}
