//! On-disk formats: structured JSON documents with exact `p/q` rationals
//! (never decimals), round-tripping bit-exactly.

use serde::{Deserialize, Serialize};

use crate::canonical::{MatrixPairE, PointConfig};
use crate::cox::CoxPolynomial;
use crate::matrix::RationalMatrix;
use crate::monad::{MonadData, PolyMatrix};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::variety::Variety;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("Json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("BadRational: {0}")]
    BadRational(#[from] crate::rational::ParseRationalError),
    #[error("BadDocument: {0}")]
    BadDocument(String),
}

/// One term of a Cox polynomial on `Y_{a,b}`: coefficient and the exponents
/// `[e_z0, e_z1, e_z2, e_w0, e_w1]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: String,
    pub exps: [u32; 5],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VarietyDoc {
    pub a: u32,
    pub b: u32,
}

/// The monad file: `variety{a,b}`, `r`, `n`, and the two matrices, each
/// entry a list of terms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonadDoc {
    pub format: u32,
    pub variety: VarietyDoc,
    pub r: u32,
    pub n: u32,
    pub a: Vec<Vec<Vec<TermDoc>>>,
    pub b: Vec<Vec<Vec<TermDoc>>>,
}

fn poly_to_terms(p: &CoxPolynomial) -> Vec<TermDoc> {
    p.terms()
        .map(|(exps, coeff)| TermDoc {
            coeff: format_rational(coeff),
            exps: [exps[0], exps[1], exps[2], exps[3], exps[4]],
        })
        .collect()
}

fn poly_from_terms(variety: Variety, terms: &[TermDoc]) -> Result<CoxPolynomial, FileError> {
    let mut pairs = Vec::with_capacity(terms.len());
    for t in terms {
        pairs.push((t.exps.to_vec(), parse_rational(&t.coeff)?));
    }
    CoxPolynomial::from_terms(variety, pairs).map_err(|e| FileError::BadDocument(e.to_string()))
}

fn matrix_to_doc(m: &PolyMatrix) -> Vec<Vec<Vec<TermDoc>>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| poly_to_terms(m.entry(i, j))).collect())
        .collect()
}

fn matrix_from_doc(
    variety: Variety,
    rows: usize,
    cols: usize,
    doc: &[Vec<Vec<TermDoc>>],
) -> Result<PolyMatrix, FileError> {
    if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
        return Err(FileError::BadDocument(format!("matrix is not {rows}x{cols}")));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in doc {
        for entry in row {
            entries.push(poly_from_terms(variety, entry)?);
        }
    }
    Ok(PolyMatrix::new(variety, rows, cols, entries))
}

pub fn monad_to_doc(m: &MonadData) -> MonadDoc {
    let (a, b) = match m.variety() {
        Variety::P2Bundle { a, b } => (a, b),
        _ => unreachable!("monads live on P2-bundles"),
    };
    MonadDoc {
        format: FORMAT_VERSION,
        variety: VarietyDoc { a, b },
        r: m.r(),
        n: m.n(),
        a: matrix_to_doc(m.a()),
        b: matrix_to_doc(m.b()),
    }
}

pub fn monad_from_doc(doc: &MonadDoc) -> Result<MonadData, FileError> {
    if doc.format != FORMAT_VERSION {
        return Err(FileError::BadDocument(format!("unsupported format {}", doc.format)));
    }
    if doc.variety.a > doc.variety.b {
        return Err(FileError::BadDocument("variety wants a <= b".into()));
    }
    let variety = Variety::p2_bundle(doc.variety.a, doc.variety.b);
    let mid = (doc.r + 2 * doc.n) as usize;
    let n = doc.n as usize;
    let a = matrix_from_doc(variety, mid, n, &doc.a)?;
    let b = matrix_from_doc(variety, n, mid, &doc.b)?;
    MonadData::new(variety, doc.r, doc.n, a, b).map_err(|e| FileError::BadDocument(e.to_string()))
}

pub fn monad_to_json(m: &MonadData) -> String {
    serde_json::to_string_pretty(&monad_to_doc(m)).expect("monad serializes")
}

pub fn monad_from_json(s: &str) -> Result<MonadData, FileError> {
    monad_from_doc(&serde_json::from_str(s)?)
}

/// The matrix-pair file for the canonical-form commands.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairDoc {
    pub format: u32,
    pub r: u32,
    pub n: u32,
    pub x: Vec<String>,
    pub left: Vec<Vec<String>>,
    pub right: Vec<Vec<String>>,
}

fn rmatrix_to_doc(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect())
        .collect()
}

fn rmatrix_from_doc(rows: usize, cols: usize, doc: &[Vec<String>]) -> Result<RationalMatrix, FileError> {
    if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
        return Err(FileError::BadDocument(format!("matrix is not {rows}x{cols}")));
    }
    let mut entries: Vec<Rational> = Vec::with_capacity(rows * cols);
    for row in doc {
        for s in row {
            entries.push(parse_rational(s)?);
        }
    }
    Ok(RationalMatrix::new(rows, cols, entries))
}

pub fn pair_to_doc(e: &MatrixPairE) -> PairDoc {
    PairDoc {
        format: FORMAT_VERSION,
        r: e.r() as u32,
        n: e.n() as u32,
        x: e.config().points().iter().map(format_rational).collect(),
        left: rmatrix_to_doc(e.left()),
        right: rmatrix_to_doc(e.right()),
    }
}

pub fn pair_from_doc(doc: &PairDoc) -> Result<MatrixPairE, FileError> {
    if doc.format != FORMAT_VERSION {
        return Err(FileError::BadDocument(format!("unsupported format {}", doc.format)));
    }
    if doc.x.len() != doc.n as usize {
        return Err(FileError::BadDocument("x must list n points".into()));
    }
    let mut points = Vec::with_capacity(doc.x.len());
    for s in &doc.x {
        points.push(parse_rational(s)?);
    }
    let config = PointConfig::new(points).map_err(|e| FileError::BadDocument(e.to_string()))?;
    let r = doc.r as usize;
    let n = doc.n as usize;
    let left = rmatrix_from_doc(r, n, &doc.left)?;
    let right = rmatrix_from_doc(r, n, &doc.right)?;
    MatrixPairE::new(r, left, right, config).map_err(|e| FileError::BadDocument(e.to_string()))
}

pub fn pair_to_json(e: &MatrixPairE) -> String {
    serde_json::to_string_pretty(&pair_to_doc(e)).expect("pair serializes")
}

pub fn pair_from_json(s: &str) -> Result<MatrixPairE, FileError> {
    pair_from_doc(&serde_json::from_str(s)?)
}
