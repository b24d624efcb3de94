//! Versioned, serializable run reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::families::{FusionReport, SearchHit};
use crate::scheme::{DesignVerdict, PseudocyclicVerdict, SchemeVerdict, SrgOutcome};

/// Bumped whenever a field of [`RunReport`] changes meaning.
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorSummary {
    pub d: usize,
    pub valencies: Vec<u64>,
    pub representatives_checked: usize,
    pub well_defined: bool,
}

/// Checks run on a scheme read from a file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeChecks {
    pub q: u64,
    pub base_n: u32,
    pub d: usize,
    pub bm_fusion: bool,
    pub association_scheme: SchemeVerdict,
    pub pseudocyclic: PseudocyclicVerdict,
    pub tensor: TensorSummary,
    /// Absent above the design enumeration limit.
    pub design: Option<DesignVerdict>,
    pub group_ring_lambda: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: u32,
    pub tool_version: String,
    /// Subcommand and its normalized arguments.
    pub command: Vec<String>,
    pub family: Option<String>,
    pub scheme: Option<String>,
    /// Every verdict the command asserts, by name.
    pub verdicts: BTreeMap<String, bool>,
    pub passed: bool,
    /// Wall time, only when requested; it would break determinism otherwise.
    pub elapsed_ms: Option<u64>,
    pub fusion: Option<FusionReport>,
    pub scheme_checks: Option<SchemeChecks>,
    pub srg: Vec<SrgOutcome>,
    pub amorphic: Option<bool>,
    pub eigenmatrix: Option<Vec<Vec<String>>>,
    pub search: Option<Vec<SearchHit>>,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            version: REPORT_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            family: None,
            scheme: None,
            verdicts: BTreeMap::new(),
            passed: true,
            elapsed_ms: None,
            fusion: None,
            scheme_checks: None,
            srg: Vec::new(),
            amorphic: None,
            eigenmatrix: None,
            search: None,
        }
    }

    pub fn assert(&mut self, name: &str, holds: bool) {
        self.verdicts.insert(name.to_string(), holds);
        self.passed &= holds;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
