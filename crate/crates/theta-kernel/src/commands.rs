//! The non-suite commands: `theta`, `classgroup` and `invariants`.

use serde::Serialize;
use theta_kernel_core::bqf::class_representatives;
use theta_kernel_core::exactmath::{require_odd_prime, Place};
use theta_kernel_core::lattice::{
    automorphisms, det_level, hasse_witt, is_p_maximal, rank_mod_p, relevant_places, GramMatrix,
    AUTOMORPHISM_RANK_GUARD,
};
use theta_kernel_core::qexp::{slash_cusp, theta_det_expansion, theta_expansion, Harmonic, QExpansion};

use crate::error::{CliError, Result};
use crate::format::{ClassListFile, ExpansionFile};

/// Output of `theta`, with a warning when `--det` meets an improper automorphism.
#[derive(Debug, Clone)]
pub struct ThetaOutput {
    pub expansion: QExpansion,
    pub warning: Option<String>,
}

pub fn cmd_theta(s: &GramMatrix, degree: usize, bound: u64, det: bool, cusp: Option<usize>) -> Result<ThetaOutput> {
    if degree == 0 {
        return Err(CliError::Input("--degree must be at least 1".into()));
    }
    if bound == 0 {
        return Err(CliError::Input("--bound must be at least 1".into()));
    }
    let harmonic = if det { Harmonic::Det } else { Harmonic::One };
    if det && degree != s.size() {
        return Err(CliError::Input(format!(
            "--det needs degree equal to the rank {}, got {degree}",
            s.size()
        )));
    }
    let expansion = match (cusp, harmonic) {
        (Some(j), _) => slash_cusp(s, degree, j, bound, harmonic)?,
        (None, Harmonic::Det) => theta_det_expansion(s, degree, bound)?,
        (None, Harmonic::One) => theta_expansion(s, degree, bound)?,
    };
    let mut warning = None;
    if det && s.size() <= AUTOMORPHISM_RANK_GUARD && automorphisms(s)?.has_improper() {
        warning = Some("S has an automorphism of determinant -1, so the det-weighted series vanishes".to_owned());
    }
    Ok(ThetaOutput { expansion, warning })
}

pub fn expansion_json(f: &QExpansion) -> Result<ExpansionFile> {
    ExpansionFile::from_expansion(f)
}

pub fn cmd_classgroup(disc: i64) -> Result<ClassListFile> {
    Ok(ClassListFile::new(disc, &class_representatives(disc)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaceInvariant {
    pub place: String,
    pub hasse_witt: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeInvariants {
    pub p: u64,
    pub rank_mod_p: usize,
    pub p_maximal: bool,
}

/// Output of `invariants`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub rank: usize,
    pub det: String,
    pub level: String,
    pub hasse_witt: Vec<PlaceInvariant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_p: Option<PrimeInvariants>,
}

pub fn cmd_invariants(s: &GramMatrix, p: Option<u64>) -> Result<Invariants> {
    let (det, level) = det_level(s)?;
    let mut places = relevant_places(s)?;
    if let Some(p) = p {
        require_odd_prime(p)?;
        if !places.contains(&Place::Prime(p)) {
            places.push(Place::Prime(p));
            places.sort();
        }
    }
    let hasse = places
        .into_iter()
        .map(|v| {
            Ok(PlaceInvariant {
                place: match v {
                    Place::Infinity => "inf".to_owned(),
                    Place::Prime(q) => q.to_string(),
                },
                hasse_witt: hasse_witt(s, v)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let at_p = match p {
        Some(p) => Some(PrimeInvariants { p, rank_mod_p: rank_mod_p(s, p)?, p_maximal: is_p_maximal(s, p)? }),
        None => None,
    };
    Ok(Invariants { rank: s.size(), det: det.to_string(), level: level.to_string(), hasse_witt: hasse, at_p })
}
