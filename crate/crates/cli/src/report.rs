use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Identifier of the JSON report layout; bumped on breaking changes.
pub const SCHEMA_ID: &str = "homogeo.report/v1";

/// Notes on how two ambiguous points of the model are resolved. They are
/// attached to every report.
pub const MODEL_WARNINGS: [&str; 2] = [
    "metric reading: the z-part of the metric is taken as lambda^2 * sum_{k=0..n} dz_k^2 with \
     z_0 = -(z_1+...+z_n), i.e. the positive-definite block lambda^2 (I + J) on Z_1..Z_n; the \
     double sum lambda^2 * sum_{k,j} dz_k dz_j = lambda^2 (sum dz_k)^2 vanishes identically under \
     the constraint and is not a Riemannian metric",
    "closed-form conditions: the weight equations are a_i*b_i = 0 for i = 1..n, as derived from \
     <v,[v,Y]> = 0; the variant a_i*b_1 = 0 is not equivalent and admits non-geodesic solutions \
     such as a = (1,1,1,1), b = (0,1,-1) at n = 3",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    Certified,
    LowerBoundOnly,
    Verified,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub status: CertificateStatus,
    pub detail: String,
}

impl Certificate {
    pub fn check(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status: if ok {
                CertificateStatus::Verified
            } else {
                CertificateStatus::Failed
            },
            detail: detail.into(),
        }
    }
}

/// Machine-readable result of one command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub certificates: Vec<Certificate>,
    pub warnings: Vec<String>,
    /// All internal verifications passed.
    pub verified: bool,
    pub timing_ms: f64,
}

impl Report {
    pub fn new(command: &str, config: Value, results: Value) -> Self {
        Self {
            schema: SCHEMA_ID.into(),
            command: command.into(),
            config,
            results,
            certificates: Vec::new(),
            warnings: MODEL_WARNINGS.iter().map(|w| w.to_string()).collect(),
            verified: true,
            timing_ms: 0.0,
        }
    }

    pub fn certify(&mut self, cert: Certificate) {
        if cert.status == CertificateStatus::Failed {
            self.verified = false;
        }
        self.certificates.push(cert);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Everything a command produces: the report plus its text and CSV renderings.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub csv: String,
}
