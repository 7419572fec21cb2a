//! The bundled data directory: class representatives of `B_{−p}` and root
//! lattices with their cyclic isometries.
//!
//! Every file is checked against the value computed from scratch when it is
//! loaded, so a corrupted data directory is an error, never a silent input.

use std::env;
use std::path::{Path, PathBuf};

use theta_kernel_core::bqf::{class_representatives, BinaryForm};
use theta_kernel_core::lattice::{a_root_lattice, GramMatrix, IntMatrix, IsometryCertificate};

use crate::error::{CliError, Result};
use crate::format::{read_json, BundledClassFile, LatticeFile};

pub const DATA_ENV: &str = "THETA_KERNEL_DATA";

/// `$THETA_KERNEL_DATA` if set, otherwise the `data/` directory of this crate.
pub fn data_dir() -> PathBuf {
    match env::var_os(DATA_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => Path::new(env!("CARGO_MANIFEST_DIR")).join("data"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledForm {
    pub label: String,
    pub form: BinaryForm,
    pub gram: GramMatrix,
    pub ambiguous: bool,
    pub gl_partner: Option<usize>,
}

/// `SL₂(Z)` class representatives of discriminant `−p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSet {
    pub p: u64,
    pub forms: Vec<LabelledForm>,
    /// The bundled file the labels came from, if any.
    pub source: Option<PathBuf>,
}

impl ClassSet {
    /// Loads `classes/disc-{p}.json` from `dir` when present, otherwise
    /// labels the computed representatives `S_{p,0}, S_{p,1}, …` in order.
    pub fn load(p: u64, dir: &Path) -> Result<ClassSet> {
        let d = i64::try_from(p).map_err(|_| CliError::Input(format!("p = {p} is too large")))?;
        let computed = class_representatives(-d)?;
        let path = dir.join("classes").join(format!("disc-{p}.json"));
        if !path.exists() {
            let mut next = 0;
            let mut labels: Vec<String> = Vec::with_capacity(computed.len());
            for (i, c) in computed.iter().enumerate() {
                let label = match c.gl_partner {
                    Some(partner) if partner < i => format!("conj {}", labels[partner]),
                    _ => {
                        next += 1;
                        format!("S_{{{p},{}}}", next - 1)
                    }
                };
                labels.push(label);
            }
            let forms = computed
                .iter()
                .zip(labels)
                .map(|(c, label)| {
                    Ok(LabelledForm {
                        label,
                        form: c.form,
                        gram: c.form.gram()?,
                        ambiguous: c.ambiguous,
                        gl_partner: c.gl_partner,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(ClassSet { p, forms, source: None });
        }
        let file: BundledClassFile = read_json(&path)?;
        let mismatch = |detail: String| CliError::DataMismatch { path: path.clone(), detail };
        if file.discriminant != -d {
            return Err(mismatch(format!("discriminant {} in disc-{p}.json", file.discriminant)));
        }
        if file.forms.len() != computed.len() {
            return Err(mismatch(format!("{} forms listed, h(−{p}) = {}", file.forms.len(), computed.len())));
        }
        let mut forms = Vec::with_capacity(computed.len());
        for (entry, c) in file.forms.iter().zip(&computed) {
            let [a, b, cc] = entry.abc;
            if BinaryForm::new(a, b, cc) != c.form || entry.ambiguous != c.ambiguous {
                return Err(mismatch(format!("{} is listed as {:?}, expected {:?}", entry.label, entry.abc, c.form)));
            }
            let gram = entry.gram.to_gram()?;
            if gram != c.form.gram()? {
                return Err(mismatch(format!("Gram matrix of {} is not 2S", entry.label)));
            }
            forms.push(LabelledForm {
                label: entry.label.clone(),
                form: c.form,
                gram,
                ambiguous: c.ambiguous,
                gl_partner: c.gl_partner,
            });
        }
        Ok(ClassSet { p, forms, source: Some(path) })
    }

    /// One representative per `GL₂(Z)` class: the ambiguous classes and the
    /// first member of each pair `{S, S̄}`.
    pub fn gl_representatives(&self) -> Vec<&LabelledForm> {
        self.forms
            .iter()
            .enumerate()
            .filter(|(i, f)| f.gl_partner.is_none_or(|partner| partner > *i))
            .map(|(_, f)| f)
            .collect()
    }

    pub fn class_number(&self) -> usize {
        self.forms.len()
    }

    pub fn find(&self, label: &str) -> Option<&LabelledForm> {
        self.forms.iter().find(|f| f.label == label)
    }
}

/// `A_{p−1}` with an isometry of order `p`, from `lattices/A{p−1}.json` when
/// bundled. The isometry is re-verified either way.
pub fn root_lattice(p: u64, dir: &Path) -> Result<IsometryCertificate> {
    let (gram, computed) = a_root_lattice(p)?;
    let path = dir.join("lattices").join(format!("A{}.json", p - 1));
    if !path.exists() {
        return Ok(computed);
    }
    let file: LatticeFile = read_json(&path)?;
    let mismatch = |detail: String| CliError::DataMismatch { path: path.clone(), detail };
    if file.order != p {
        return Err(mismatch(format!("isometry order {} listed for p = {p}", file.order)));
    }
    let bundled = file.gram.to_gram()?;
    if bundled != gram {
        return Err(mismatch(format!("{} is not the A_{} Gram matrix", file.name, p - 1)));
    }
    let m = bundled.size();
    if file.isometry.len() != m || file.isometry.iter().any(|r| r.len() != m) {
        return Err(mismatch(format!("isometry is not {m}x{m}")));
    }
    let u = IntMatrix::new(m, m, file.isometry.concat())?;
    IsometryCertificate::verify(bundled, u, p).map_err(|e| mismatch(e.to_string()))
}
