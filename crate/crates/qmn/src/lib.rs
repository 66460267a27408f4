//! File formats for `qmn-core` values: posets, expressions, character tables
//! and identity reports, all as JSON.

use std::fs;
use std::path::Path;

use qmn_core::{Basis, Composition, LabeledPoset, QsymExpr, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("weight of element {element} must be positive, got {value}")]
    Weight { element: usize, value: i64 },
    #[error("bad coefficient {0:?}")]
    Coefficient(String),
    #[error("unknown basis {0:?}")]
    Basis(String),
    #[error(transparent)]
    Core(#[from] qmn_core::Error),
}

/// `{"n", "covers", "labels", "weights"}` with index-based arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    pub labels: Vec<u32>,
    pub weights: Vec<i64>,
}

impl PosetFile {
    pub fn from_poset(p: &LabeledPoset) -> Self {
        PosetFile {
            n: p.len(),
            covers: p.covers().iter().map(|&(a, b)| [a, b]).collect(),
            labels: p.labels().to_vec(),
            weights: p.weights().iter().map(|&w| w.into()).collect(),
        }
    }

    pub fn to_poset(&self) -> Result<LabeledPoset, FormatError> {
        let mut weights = Vec::with_capacity(self.weights.len());
        for (element, &value) in self.weights.iter().enumerate() {
            match u32::try_from(value) {
                Ok(w) if w > 0 => weights.push(w),
                _ => return Err(FormatError::Weight { element, value }),
            }
        }
        let covers: Vec<(usize, usize)> = self.covers.iter().map(|&[a, b]| (a, b)).collect();
        Ok(LabeledPoset::from_covers(
            self.n,
            &covers,
            &self.labels,
            &weights,
        )?)
    }
}

pub fn parse_poset(text: &str) -> Result<LabeledPoset, FormatError> {
    serde_json::from_str::<PosetFile>(text)?.to_poset()
}

pub fn read_poset(path: &Path) -> Result<LabeledPoset, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_poset(&text)
}

pub fn poset_to_json(p: &LabeledPoset) -> String {
    serde_json::to_string(&PosetFile::from_poset(p)).expect("plain data serializes")
}

/// Reduced `numerator/denominator`, denominator always written.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational, FormatError> {
    s.trim()
        .parse()
        .map_err(|_| FormatError::Coefficient(s.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub alpha: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExprJson {
    pub basis: String,
    pub terms: Vec<TermJson>,
}

impl ExprJson {
    pub fn from_expr(e: &QsymExpr) -> Self {
        ExprJson {
            basis: e.basis().tag().to_string(),
            terms: e
                .terms()
                .map(|(alpha, c)| TermJson {
                    alpha: alpha.to_string(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn to_expr(&self) -> Result<QsymExpr, FormatError> {
        let basis =
            Basis::from_tag(&self.basis).ok_or_else(|| FormatError::Basis(self.basis.clone()))?;
        let mut e = QsymExpr::zero(basis);
        for t in &self.terms {
            let alpha: Composition = t.alpha.parse()?;
            e.add_term(alpha, parse_rational(&t.coeff)?);
        }
        Ok(e)
    }
}

pub fn expr_to_json(e: &QsymExpr) -> String {
    serde_json::to_string(&ExprJson::from_expr(e)).expect("plain data serializes")
}

pub fn expr_from_json(text: &str) -> Result<QsymExpr, FormatError> {
    serde_json::from_str::<ExprJson>(text)?.to_expr()
}

/// One `alpha<TAB>coeff` line per term, in canonical order.
pub fn expr_to_text(e: &QsymExpr) -> String {
    e.terms()
        .map(|(alpha, c)| format!("{alpha}\t{}\n", format_rational(c)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiEntry {
    pub lambda: String,
    pub mu: String,
    pub chi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiTable {
    pub n: u32,
    pub table: Vec<ChiEntry>,
}

impl ChiTable {
    pub fn compute(n: u32) -> Self {
        let table = qmn_core::schur::character_table(n)
            .into_iter()
            .map(|(lambda, mu, chi)| ChiEntry {
                lambda: lambda.to_string(),
                mu: mu.to_string(),
                chi,
            })
            .collect();
        ChiTable { n, table }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub d: String,
    pub sum: String,
    pub q_identity: bool,
    pub linext_lhs: String,
    pub linext_rhs: String,
}

impl IdentityReport {
    pub fn compute(d: &Composition) -> Self {
        use qmn_core::identities::{linext_identity_check, probabilistic_sum, q_probabilistic_sum};
        let (lhs, rhs) = linext_identity_check(d);
        IdentityReport {
            d: d.to_string(),
            sum: format_rational(&probabilistic_sum(d)),
            q_identity: q_probabilistic_sum(d).is_some_and(|q| q.is_one()),
            linext_lhs: lhs.to_string(),
            linext_rhs: rhs.to_string(),
        }
    }

    pub fn holds(&self) -> bool {
        self.sum == "1/1" && self.q_identity && self.linext_lhs == self.linext_rhs
    }
}
