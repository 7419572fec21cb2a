use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;
use theta_kernel_core::thetaop::Verdict;

use crate::error::Result;
use crate::format::to_json_bytes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Outcome::Pass
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
        }
    }
}

impl From<Verdict> for Outcome {
    fn from(v: Verdict) -> Self {
        Outcome::from_bool(v.is_pass())
    }
}

/// One checked claim. `paper_ref` is a short descriptive tag of the statement
/// being reproduced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub claim: String,
    pub paper_ref: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdict: Outcome,
    pub bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(claim: impl Into<String>, paper_ref: impl Into<String>, verdict: impl Into<Outcome>) -> Self {
        Report {
            claim: claim.into(),
            paper_ref: paper_ref.into(),
            parameters: BTreeMap::new(),
            verdict: verdict.into(),
            bound: None,
            witness: None,
            elapsed_ms: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_owned(), value.into());
        self
    }

    pub fn bound(mut self, bound: u64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

impl From<bool> for Outcome {
    fn from(ok: bool) -> Self {
        Outcome::from_bool(ok)
    }
}

/// All reports of one `verify` run, in claim order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub verdict: Outcome,
    pub reports: Vec<Report>,
}

impl SuiteReport {
    pub fn new(suite: &str, reports: Vec<Report>) -> Self {
        let verdict = Outcome::from_bool(reports.iter().all(Report::passed));
        SuiteReport { suite: suite.to_owned(), verdict, reports }
    }

    pub fn to_json(&self) -> Result<Vec<u8>> {
        to_json_bytes(self)
    }

    /// One row per claim; parameters and witness are embedded as compact JSON.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "claim", "paper_ref", "verdict", "bound", "parameters", "witness", "elapsed_ms"])?;
        for r in &self.reports {
            let witness = match &r.witness {
                Some(v) => serde_json::to_string(v)?,
                None => String::new(),
            };
            w.write_record([
                self.suite.as_str(),
                r.claim.as_str(),
                r.paper_ref.as_str(),
                r.verdict.as_str(),
                &r.bound.map(|b| b.to_string()).unwrap_or_default(),
                &serde_json::to_string(&r.parameters)?,
                &witness,
                &r.elapsed_ms.map(|b| b.to_string()).unwrap_or_default(),
            ])?;
        }
        w.into_inner().map_err(|e| crate::error::CliError::Serialize(e.to_string()))
    }
}
