//! Serialized matrices: JSON documents plus COO and dense text renderings.
//!
//! A JSON document is one object per line:
//!
//! ```json
//! {"schema_version":1,"kind":"basis_element","spec":{"mode":"layer","n":2,"k":2,"l":1,"group":"an","d_k":1,"d_l":1},
//!  "shape":[2,4],"index":0,"provenance":[{"rgs":"1,1,1","sign_class":"plus"}],"entries":[[0,0,1,1]]}
//! ```
//!
//! Entries are `[row, col, numerator, denominator]` with 0-based coordinates,
//! sorted by `(row, col)`, denominators positive and fractions reduced.
//! Numerators and denominators are JSON integers of any length. After
//! [`MatrixDocument::into_float`] entries become `[row, col, value]`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::basis::{LayerBasis, LayerSpec, LocalBasis};
use crate::error::{Error, Result};
use crate::orbits::SignClass;
use crate::sparse::{Rational, SparseMatrix};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocumentKind {
    BasisElement,
    WeightMatrix,
    LocalElement,
}

/// The space a document's matrix acts between.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum DocumentSpec {
    Layer(LayerSpec),
    Local { factors: Vec<LayerSpec> },
}

/// Where one basis element (or one factor of a Kronecker product) came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// Parameter index, for weight matrices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<usize>,
    /// Factor position, for local elements.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<usize>,
    /// Element index within the factor basis, for local elements.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    pub rgs: String,
    pub sign_class: SignClass,
    /// 1-based `(i, j)` feature channel.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feature: Option<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EntryValue {
    Exact(Rational),
    Float(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub value: EntryValue,
}

fn big_number(x: &BigInt) -> serde_json::Number {
    x.to_string()
        .parse()
        .expect("integers are valid JSON numbers under arbitrary_precision")
}

impl Serialize for Entry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        match &self.value {
            EntryValue::Exact(v) => {
                let mut seq = s.serialize_seq(Some(4))?;
                seq.serialize_element(&self.row)?;
                seq.serialize_element(&self.col)?;
                seq.serialize_element(&big_number(v.numer()))?;
                seq.serialize_element(&big_number(v.denom()))?;
                seq.end()
            }
            EntryValue::Float(x) => {
                let mut seq = s.serialize_seq(Some(3))?;
                seq.serialize_element(&self.row)?;
                seq.serialize_element(&self.col)?;
                seq.serialize_element(x)?;
                seq.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<serde_json::Number> = Vec::deserialize(d)?;
        let index = |n: &serde_json::Number| {
            n.as_u64()
                .and_then(|v| usize::try_from(v).ok())
                .ok_or_else(|| D::Error::custom(format!("bad coordinate {n}")))
        };
        let integer = |n: &serde_json::Number| {
            n.to_string()
                .parse::<BigInt>()
                .map_err(|_| D::Error::custom(format!("expected an integer, got {n}")))
        };
        match raw.as_slice() {
            [r, c, num, den] => {
                let (num, den) = (integer(num)?, integer(den)?);
                if !den.is_positive() {
                    return Err(D::Error::custom("denominator must be positive"));
                }
                if !num.gcd(&den).is_one() {
                    return Err(D::Error::custom(format!("fraction {num}/{den} is not reduced")));
                }
                Ok(Entry {
                    row: index(r)?,
                    col: index(c)?,
                    value: EntryValue::Exact(Rational::new_raw(num, den)),
                })
            }
            [r, c, x] => Ok(Entry {
                row: index(r)?,
                col: index(c)?,
                value: EntryValue::Float(
                    x.as_f64()
                        .ok_or_else(|| D::Error::custom(format!("bad value {x}")))?,
                ),
            }),
            _ => Err(D::Error::custom("entries have 3 or 4 components")),
        }
    }
}

/// One serialized matrix with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub schema_version: u32,
    pub kind: DocumentKind,
    pub spec: DocumentSpec,
    pub shape: [usize; 2],
    /// Position of the element in its basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub provenance: Vec<Provenance>,
    /// Parameters of a weight matrix, as `[numerator, denominator]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<Fraction>>,
    pub entries: Vec<Entry>,
}

/// A fraction serialized as `[numerator, denominator]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction(pub Rational);

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [big_number(self.0.numer()), big_number(self.0.denom())].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [num, den]: [serde_json::Number; 2] = Deserialize::deserialize(d)?;
        let parse = |n: serde_json::Number| {
            n.to_string()
                .parse::<BigInt>()
                .map_err(|_| D::Error::custom(format!("expected an integer, got {n}")))
        };
        let (num, den) = (parse(num)?, parse(den)?);
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Fraction(Rational::new(num, den)))
    }
}

fn exact_entries(m: &SparseMatrix) -> Vec<Entry> {
    m.iter()
        .map(|(row, col, v)| Entry {
            row,
            col,
            value: EntryValue::Exact(v.clone()),
        })
        .collect()
}

fn feature_pair(f: Option<(usize, usize)>) -> Option<[usize; 2]> {
    f.map(|(i, j)| [i, j])
}

impl MatrixDocument {
    pub fn basis_element(basis: &LayerBasis, index: usize) -> Self {
        let e = &basis.elements[index];
        MatrixDocument {
            schema_version: SCHEMA_VERSION,
            kind: DocumentKind::BasisElement,
            spec: DocumentSpec::Layer(basis.spec),
            shape: [e.matrix.rows(), e.matrix.cols()],
            index: Some(index),
            provenance: vec![Provenance {
                parameter: None,
                factor: None,
                component: None,
                rgs: e.partition.rgs_string(),
                sign_class: e.sign_class,
                feature: feature_pair(e.feature),
            }],
            params: None,
            entries: exact_entries(&e.matrix),
        }
    }

    /// A weight matrix, listing the provenance of every parameter.
    pub fn weight(basis: &LayerBasis, params: &[Rational], matrix: &SparseMatrix) -> Self {
        MatrixDocument {
            schema_version: SCHEMA_VERSION,
            kind: DocumentKind::WeightMatrix,
            spec: DocumentSpec::Layer(basis.spec),
            shape: [matrix.rows(), matrix.cols()],
            index: None,
            provenance: basis
                .elements
                .iter()
                .enumerate()
                .map(|(i, e)| Provenance {
                    parameter: Some(i),
                    factor: None,
                    component: None,
                    rgs: e.partition.rgs_string(),
                    sign_class: e.sign_class,
                    feature: feature_pair(e.feature),
                })
                .collect(),
            params: Some(params.iter().cloned().map(Fraction).collect()),
            entries: exact_entries(matrix),
        }
    }

    pub fn local_element(basis: &LocalBasis, index: usize) -> Self {
        let e = &basis.elements[index];
        MatrixDocument {
            schema_version: SCHEMA_VERSION,
            kind: DocumentKind::LocalElement,
            spec: DocumentSpec::Local {
                factors: basis.factors.clone(),
            },
            shape: [e.matrix.rows(), e.matrix.cols()],
            index: Some(index),
            provenance: e
                .provenance
                .iter()
                .zip(&e.components)
                .enumerate()
                .map(|(f, ((partition, sign_class), &component))| Provenance {
                    parameter: None,
                    factor: Some(f),
                    component: Some(component),
                    rgs: partition.rgs_string(),
                    sign_class: *sign_class,
                    feature: None,
                })
                .collect(),
            params: None,
            entries: exact_entries(&e.matrix),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.entries
            .iter()
            .all(|e| matches!(e.value, EntryValue::Exact(_)))
    }

    /// Replaces exact entries by their nearest `f64`.
    pub fn into_float(mut self) -> Self {
        for e in &mut self.entries {
            if let EntryValue::Exact(v) = &e.value {
                e.value = EntryValue::Float(v.to_f64().unwrap_or(f64::NAN));
            }
        }
        self
    }

    /// The exact matrix; fails for float documents.
    pub fn matrix(&self) -> Result<SparseMatrix> {
        let [rows, cols] = self.shape;
        let mut m = SparseMatrix::zeros(rows, cols);
        for e in &self.entries {
            match &e.value {
                EntryValue::Exact(v) => m.set(e.row, e.col, v.clone())?,
                EntryValue::Float(_) => {
                    return Err(Error::parse("float documents cannot be checked exactly"))
                }
            }
        }
        Ok(m)
    }

    /// Checks the schema version and the entry invariants.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::parse(format!(
                "unsupported schema_version {}",
                self.schema_version
            )));
        }
        let [rows, cols] = self.shape;
        for w in self.entries.windows(2) {
            if (w[0].row, w[0].col) >= (w[1].row, w[1].col) {
                return Err(Error::parse("entries are not strictly sorted by (row, col)"));
            }
        }
        for e in &self.entries {
            if e.row >= rows || e.col >= cols {
                return Err(Error::parse(format!(
                    "entry ({}, {}) outside the {rows}×{cols} shape",
                    e.row, e.col
                )));
            }
            if let EntryValue::Exact(v) = &e.value {
                if v.is_zero() {
                    return Err(Error::parse("explicit zero entry"));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MatrixDocument =
            serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
        doc.validate()?;
        Ok(doc)
    }

    /// Reads any number of whitespace-separated JSON documents.
    pub fn parse_stream(text: &str) -> Result<Vec<Self>> {
        serde_json::Deserializer::from_str(text)
            .into_iter::<MatrixDocument>()
            .map(|doc| {
                let doc = doc.map_err(|e| Error::parse(e.to_string()))?;
                doc.validate()?;
                Ok(doc)
            })
            .collect()
    }

    fn header(&self) -> String {
        let mut h = String::new();
        match &self.spec {
            DocumentSpec::Layer(s) => {
                let _ = writeln!(
                    h,
                    "% layer n={} k={} l={} group={} d_k={} d_l={}",
                    s.n, s.k, s.l, s.group, s.d_k, s.d_l
                );
            }
            DocumentSpec::Local { factors } => {
                for (i, s) in factors.iter().enumerate() {
                    let _ = writeln!(h, "% factor {i} n={} k={} l={} group={}", s.n, s.k, s.l, s.group);
                }
            }
        }
        if let Some(i) = self.index {
            let _ = writeln!(h, "% element {i}");
        }
        for p in &self.provenance {
            let mut line = String::from("%");
            if let Some(i) = p.parameter {
                let _ = write!(line, " parameter={i}");
            }
            if let Some(f) = p.factor {
                let _ = write!(line, " factor={f}");
            }
            let _ = write!(line, " rgs={} sign={}", p.rgs, p.sign_class);
            if let Some([i, j]) = p.feature {
                let _ = write!(line, " feature=({i},{j})");
            }
            h.push_str(&line);
            h.push('\n');
        }
        h
    }

    fn value_text(v: &EntryValue) -> String {
        match v {
            EntryValue::Exact(r) => r.to_string(),
            EntryValue::Float(x) => x.to_string(),
        }
    }

    /// `rows cols nnz` followed by one 0-based `row col value` line per entry.
    pub fn to_coo(&self) -> String {
        let mut out = self.header();
        let _ = writeln!(out, "{} {} {}", self.shape[0], self.shape[1], self.entries.len());
        for e in &self.entries {
            let _ = writeln!(out, "{} {} {}", e.row, e.col, Self::value_text(&e.value));
        }
        out
    }

    /// Every cell, one matrix row per line.
    pub fn to_dense(&self) -> String {
        let [rows, cols] = self.shape;
        let mut cells = vec![vec!["0".to_string(); cols]; rows];
        for e in &self.entries {
            cells[e.row][e.col] = Self::value_text(&e.value);
        }
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = self.header();
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Parses `"3"`, `"-2/5"` or a decimal such as `"0.25"` into an exact fraction.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::invalid(format!("cannot read {t:?} as a rational number"));
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mut frac_part = Rational::new(frac.parse().map_err(|_| bad())?, scale);
        if negative {
            frac_part = -frac_part;
        }
        return Ok(Rational::from_integer(whole) + frac_part);
    }
    Ok(Rational::from_integer(t.parse().map_err(|_| bad())?))
}

/// Reads whitespace- or comma-separated rationals; `#` starts a comment.
pub fn parse_params(text: &str) -> Result<Vec<Rational>> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(|line| line.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|tok| !tok.is_empty())
        .map(parse_rational)
        .collect()
}
