//! JSON file formats. Every number that is not a small integer is written as
//! an exact `"num/den"` string; nothing is ever serialized as a float.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use theta_kernel_core::bqf::BinaryFormClass;
use theta_kernel_core::lattice::{GramMatrix, IntMatrix};
use theta_kernel_core::qexp::{CuspTag, IndexKey, QExpansion};
use theta_kernel_core::thetaop::{KernelCertificate, KernelWitness};
use theta_kernel_core::exactmath::PadicValue;
use theta_kernel_core::{BigInt, BigRational};

use crate::error::{CliError, Result};

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_owned(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_owned(), source })
}

/// Pretty JSON with a trailing newline.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

pub fn rational_string(x: &BigRational) -> String {
    x.to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim().parse::<BigRational>().map_err(|_| CliError::Input(format!("not a rational number: {s:?}")))
}

/// A Gram matrix file: `{"size": m, "entries": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramFile {
    pub size: usize,
    pub entries: Vec<Vec<i64>>,
}

impl GramFile {
    pub fn load(path: &Path) -> Result<GramMatrix> {
        let file: GramFile = read_json(path)?;
        file.to_gram()
    }

    pub fn to_gram(&self) -> Result<GramMatrix> {
        if self.entries.len() != self.size || self.entries.iter().any(|r| r.len() != self.size) {
            return Err(CliError::Input(format!("Gram matrix is not {0}x{0}", self.size)));
        }
        Ok(GramMatrix::from_rows(&self.entries)?)
    }

    pub fn from_gram(g: &GramMatrix) -> Self {
        GramFile { size: g.size(), entries: rows(g.matrix()) }
    }
}

pub fn rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect()).collect()
}

/// An entry of `2T`: an integer for ordinary expansions, `"num/den"` at a cusp.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexEntry {
    Int(i64),
    Rational(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    #[serde(rename = "index_2T")]
    pub index_2t: Vec<Vec<IndexEntry>>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspFile {
    pub prime: u64,
    pub step: usize,
    pub det_unit: String,
    pub odd_det_exponent: bool,
}

/// Canonical expansion file; coefficients are listed in index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionFile {
    pub degree: usize,
    pub bound: u64,
    pub denominator: u64,
    pub prefactor_halves: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cusp: Option<CuspFile>,
    pub coeffs: Vec<CoefficientEntry>,
}

pub fn index_entries(key: &IndexKey, denominator: u64) -> Vec<Vec<IndexEntry>> {
    let d = BigInt::from(denominator);
    rows(key.scaled())
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| {
                    if denominator == 1 {
                        IndexEntry::Int(x)
                    } else {
                        IndexEntry::Rational(BigRational::new(BigInt::from(x), d.clone()).to_string())
                    }
                })
                .collect()
        })
        .collect()
}

fn parse_index(entries: &[Vec<IndexEntry>], degree: usize, denominator: u64) -> Result<IndexKey> {
    if entries.len() != degree || entries.iter().any(|r| r.len() != degree) {
        return Err(CliError::Input(format!("index is not {degree}x{degree}")));
    }
    let d = BigRational::from_integer(BigInt::from(denominator));
    let mut data = Vec::with_capacity(degree * degree);
    for e in entries.iter().flatten() {
        let v = match e {
            IndexEntry::Int(x) => BigRational::from_integer(BigInt::from(*x)),
            IndexEntry::Rational(s) => parse_rational(s)?,
        } * &d;
        let scaled = (v.is_integer())
            .then(|| i64::try_from(v.to_integer()).ok())
            .flatten()
            .ok_or_else(|| CliError::Input(format!("index entry {v} is not a multiple of 1/{denominator}")))?;
        data.push(scaled);
    }
    Ok(IndexKey::new(IntMatrix::new(degree, degree, data)?)?)
}

impl ExpansionFile {
    pub fn from_expansion(f: &QExpansion) -> Result<Self> {
        let prefactor_halves = f
            .prefactor()
            .halves()
            .ok_or_else(|| CliError::Serialize("infinite prefactor".into()))?;
        let coeffs = f
            .coefficients()
            .iter()
            .map(|(k, v)| CoefficientEntry { index_2t: index_entries(k, f.denominator()), value: rational_string(v) })
            .collect();
        Ok(ExpansionFile {
            degree: f.degree(),
            bound: f.bound(),
            denominator: f.denominator(),
            prefactor_halves,
            cusp: f.cusp().map(|c| CuspFile {
                prime: c.prime,
                step: c.step,
                det_unit: c.det_unit.to_string(),
                odd_det_exponent: c.odd_det_exponent,
            }),
            coeffs,
        })
    }

    pub fn to_expansion(&self) -> Result<QExpansion> {
        let mut coeffs = BTreeMap::new();
        for c in &self.coeffs {
            let key = parse_index(&c.index_2t, self.degree, self.denominator)?;
            if coeffs.insert(key, parse_rational(&c.value)?).is_some() {
                return Err(CliError::Input("repeated index in expansion".into()));
            }
        }
        let cusp = match &self.cusp {
            None => None,
            Some(c) => Some(CuspTag {
                prime: c.prime,
                step: c.step,
                det_unit: c
                    .det_unit
                    .parse()
                    .map_err(|_| CliError::Input(format!("bad det_unit {:?}", c.det_unit)))?,
                odd_det_exponent: c.odd_det_exponent,
            }),
        };
        Ok(QExpansion::new(self.degree, self.bound, self.denominator, coeffs)?
            .with_prefactor(PadicValue::from_halves(self.prefactor_halves))
            .with_cusp(cusp))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    #[serde(rename = "index_2T")]
    pub index_2t: Vec<Vec<IndexEntry>>,
    /// Position in the minor matrix `T^[r]`.
    pub entry: [usize; 2],
    pub value: String,
}

impl WitnessFile {
    pub fn new(w: &KernelWitness, denominator: u64) -> Self {
        WitnessFile {
            index_2t: index_entries(&w.index, denominator),
            entry: [w.entry.0, w.entry.1],
            value: rational_string(&w.value),
        }
    }
}

/// Kernel certificate file; `witness` is `null` on PASS.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub r: usize,
    pub p: u64,
    pub bound: u64,
    pub verdict: String,
    pub witness: Option<WitnessFile>,
    pub nonzero_mod_p: bool,
}

impl CertificateFile {
    pub fn new(c: &KernelCertificate, denominator: u64) -> Self {
        CertificateFile {
            r: c.r,
            p: c.p,
            bound: c.bound,
            verdict: c.verdict.as_str().to_ascii_lowercase(),
            witness: c.witness.as_ref().map(|w| WitnessFile::new(w, denominator)),
            nonzero_mod_p: c.nonzero_mod_p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub abc: [i64; 3],
    pub ambiguous: bool,
    /// Position of the `GL₂(Z)`-equivalent class `(a, −b, c)`, if distinct.
    pub gl_partner: Option<usize>,
}

/// Output of `classgroup`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassListFile {
    pub discriminant: i64,
    pub class_number: usize,
    pub forms: Vec<ClassEntry>,
    pub ambiguous: Vec<[i64; 3]>,
}

impl ClassListFile {
    pub fn new(discriminant: i64, classes: &[BinaryFormClass]) -> Self {
        let forms: Vec<ClassEntry> = classes
            .iter()
            .map(|c| ClassEntry { abc: [c.form.a, c.form.b, c.form.c], ambiguous: c.ambiguous, gl_partner: c.gl_partner })
            .collect();
        let ambiguous = forms.iter().filter(|f| f.ambiguous).map(|f| f.abc).collect();
        ClassListFile { discriminant, class_number: forms.len(), forms, ambiguous }
    }
}

/// A bundled class-group file: labelled representatives with their Gram matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundledClassFile {
    pub discriminant: i64,
    pub forms: Vec<BundledForm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundledForm {
    pub label: String,
    pub abc: [i64; 3],
    pub ambiguous: bool,
    pub gram: GramFile,
}

/// A bundled lattice with an isometry of prime order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeFile {
    pub name: String,
    pub order: u64,
    pub gram: GramFile,
    pub isometry: Vec<Vec<i64>>,
}
