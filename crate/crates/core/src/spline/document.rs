//! JSON document form of a [`Spline`].
//!
//! ```json
//! { "degree": 2, "knots": ["0", "1/2"], "pieces": [[], ["1", "-3/2"], ["0", "0", "4"]] }
//! ```
//!
//! `pieces` has one more entry than `knots`; coefficients are ascending and
//! every rational is written in canonical `p/q` form. Reading rejects
//! non-canonical rationals and anything that fails spline validation,
//! smoothness included.

use serde::{Deserialize, Serialize};

use super::Spline;
use crate::arith::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplineDocument {
    pub degree: usize,
    pub knots: Vec<String>,
    pub pieces: Vec<Vec<String>>,
}

fn parse_canonical(text: &str) -> Result<Rational> {
    let r = parse_rational(text)?;
    if format_rational(&r) != text {
        return Err(Error::Parse(format!(
            "{text:?} is not in canonical form (expected {:?})",
            format_rational(&r)
        )));
    }
    Ok(r)
}

impl From<&Spline> for SplineDocument {
    fn from(s: &Spline) -> Self {
        Self {
            degree: s.degree(),
            knots: s.knots().iter().map(format_rational).collect(),
            pieces: s
                .pieces()
                .iter()
                .map(|p| p.coeffs().iter().map(format_rational).collect())
                .collect(),
        }
    }
}

impl TryFrom<&SplineDocument> for Spline {
    type Error = Error;

    fn try_from(doc: &SplineDocument) -> Result<Spline> {
        let knots = doc
            .knots
            .iter()
            .map(|k| parse_canonical(k))
            .collect::<Result<Vec<_>>>()?;
        let pieces = doc
            .pieces
            .iter()
            .map(|coeffs| {
                coeffs
                    .iter()
                    .map(|c| parse_canonical(c))
                    .collect::<Result<Vec<_>>>()
                    .map(Polynomial::new)
            })
            .collect::<Result<Vec<_>>>()?;
        Spline::new(doc.degree, knots, pieces)
    }
}

impl Spline {
    pub fn to_document(&self) -> SplineDocument {
        self.into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Spline> {
        let doc: SplineDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Spline::try_from(&doc)
    }
}
