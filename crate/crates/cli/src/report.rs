//! JSON and text reports.

use std::fmt::Write as _;

use bfl_core::tensor::{write_tensor_text, CompareMode, Comparison, Witness};
use bfl_core::{Family, HopfAlgebra};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL: &str = "bfl";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ObservationalTrue,
    ObservationalFalse,
    Error,
}

impl Status {
    pub fn from_outcome(asserted: bool, holds: bool) -> Status {
        match (asserted, holds) {
            (true, true) => Status::Pass,
            (true, false) => Status::Fail,
            (false, true) => Status::ObservationalTrue,
            (false, false) => Status::ObservationalFalse,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ObservationalTrue => "OBS-TRUE",
            Status::ObservationalFalse => "OBS-FALSE",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimensions {
    pub in_dim: u64,
    pub out_dim: u64,
    pub mode: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub input: Vec<usize>,
    pub output: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

impl From<&Witness> for WitnessRecord {
    fn from(w: &Witness) -> WitnessRecord {
        WitnessRecord {
            input: w.input.0.clone(),
            output: w.output.0.clone(),
            lhs: w.lhs.to_string(),
            rhs: w.rhs.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub suite: String,
    pub status: Status,
    pub asserted: bool,
    pub wall_time_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimensions: Option<Dimensions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckRecord {
    pub fn from_comparison(cmp: &Comparison) -> (Option<Dimensions>, Option<Vec<WitnessRecord>>) {
        let dims = Dimensions {
            in_dim: cmp.in_dim,
            out_dim: cmp.out_dim,
            mode: match cmp.mode {
                CompareMode::Dense => "dense",
                CompareMode::Streaming => "streaming",
            }
            .into(),
        };
        let witnesses = (!cmp.equal).then(|| cmp.witnesses.iter().map(WitnessRecord::from).collect());
        (Some(dims), witnesses)
    }

    /// Whether this record counts against the exit status.
    pub fn is_failure(&self) -> bool {
        self.asserted && matches!(self.status, Status::Fail | Status::Error)
    }
}

/// Identifies the algebra a report is about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFingerprint {
    pub ring: String,
    pub family: String,
    pub params: serde_json::Map<String, serde_json::Value>,
    pub rank: usize,
    /// SHA-256 over the text form of μ, η, Δ, ε and S.
    pub digest: String,
}

impl AlgebraFingerprint {
    pub fn of(h: &HopfAlgebra) -> AlgebraFingerprint {
        let mut params = serde_json::Map::new();
        match h.family() {
            Family::Group { orders } | Family::DualGroup { orders } => {
                params.insert("orders".into(), serde_json::json!(orders));
            }
            Family::TruncatedPoly { p, k, vars } => {
                params.insert("p".into(), serde_json::json!(p));
                params.insert("k".into(), serde_json::json!(k));
                params.insert("vars".into(), serde_json::json!(vars));
            }
            Family::Explicit => {}
        }
        AlgebraFingerprint {
            ring: h.ring().to_string(),
            family: h.family().name().into(),
            params,
            rank: h.n(),
            digest: structure_digest(h),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn structure_digest(h: &HopfAlgebra) -> String {
    let mut text = String::new();
    for map in [h.mu(), h.unit(), h.delta(), h.counit(), h.antipode()] {
        text.push_str(&write_tensor_text(map));
        text.push('\n');
    }
    sha256_hex(text.as_bytes())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
    pub observational_true: usize,
    pub observational_false: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub algebra: AlgebraFingerprint,
    pub suites: Vec<String>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: &str, algebra: AlgebraFingerprint, suites: Vec<String>, checks: Vec<CheckRecord>) -> Report {
        let mut summary = Summary::default();
        for c in &checks {
            *match c.status {
                Status::Pass => &mut summary.pass,
                Status::Fail => &mut summary.fail,
                Status::Error => &mut summary.error,
                Status::ObservationalTrue => &mut summary.observational_true,
                Status::ObservationalFalse => &mut summary.observational_false,
            } += 1;
        }
        let exit_code = i32::from(checks.iter().any(CheckRecord::is_failure));
        Report {
            tool: TOOL.into(),
            version: VERSION.into(),
            command: command.into(),
            algebra,
            suites,
            checks,
            summary,
            exit_code,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The same report with every timing field zeroed.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.wall_time_ms = 0.0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn text_summary(&self) -> String {
        let mut out = String::new();
        let a = &self.algebra;
        let _ = writeln!(out, "{} {} over {} (rank {})", self.command, a.family, a.ring, a.rank);
        for c in &self.checks {
            let _ = write!(out, "{:<9} {}", c.status.label(), c.name);
            if let Some(d) = &c.dimensions {
                let _ = write!(out, "  [{} -> {}, {}]", d.in_dim, d.out_dim, d.mode);
            }
            let _ = writeln!(out, "  {:.1} ms", c.wall_time_ms);
            if let Some(detail) = &c.detail {
                let _ = writeln!(out, "          {detail}");
            }
            for w in c.witnesses.iter().flatten() {
                let _ = writeln!(out, "          at {:?} <- {:?}: lhs {} rhs {}", w.output, w.input, w.lhs, w.rhs);
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} errors, {} observational (true {}, false {})",
            s.pass,
            s.fail,
            s.error,
            s.observational_true + s.observational_false,
            s.observational_true,
            s.observational_false
        );
        out
    }
}
