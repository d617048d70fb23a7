//! JSON report schema. Golden-field values are exact strings in the form
//! `a+b*phi` with rational `a`, `b`; only diagnostic quantities such as
//! floating-point residuals are JSON numbers.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
    pub rustc: String,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo {
            name: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            rustc: env!("TRACELAB_RUSTC_VERSION").into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub command_line: Vec<String>,
    pub seed: u64,
    /// False when any asserted check in the report failed.
    pub passed: bool,
    pub result: Report,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "report", rename_all = "kebab-case")]
pub enum Report {
    Analyze(AnalysisReport),
    Enumerate(EnumerateReport),
    VerifyLemma2(Lemma2Report),
    Subgroup(SubgroupReport),
    Cover(CoverReport),
    JetsCheck(JetsReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    /// Coefficients from the constant term upwards.
    pub coefficients: Vec<String>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootJson {
    pub alpha: String,
    pub label: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootsJson {
    pub exceptional: Vec<RootJson>,
    pub residual: PolyJson,
    pub residual_degree: usize,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessJson {
    Residual { polynomial: PolyJson },
    MultipleRoot { root: String },
    SimpleRoots { roots: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub tag: String,
    pub witness: WitnessJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IcosianJson {
    /// Quaternion coordinates `(w, x, y, z)`.
    pub coords: [String; 4],
    pub trace: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub alpha: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<IcosianJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<IcosianJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_image: Option<IcosianJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusJson {
    pub from_x3: usize,
    pub from_y5: usize,
    pub from_w2_pair: usize,
    pub from_w2_square: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbelianJson {
    pub torsion: Vec<String>,
    pub free_rank: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelatorJson {
    pub provenance: String,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubgroupReport {
    pub word: String,
    pub alpha: String,
    pub subgroup: String,
    pub index: usize,
    pub generators: usize,
    pub census: CensusJson,
    pub euler_k: i64,
    pub euler_l: i64,
    pub abelianization: AbelianJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugator: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub square_roots: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relators: Vec<RelatorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JetJson {
    pub alpha: String,
    pub mode: String,
    pub tr_value: ComplexJson,
    pub tr_slope: ComplexJson,
    /// Exact `tau(alpha)` and `tau'(alpha)` in shifted mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_slope: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeepJson {
    pub representations: Vec<RepresentationJson>,
    pub subgroups: Vec<SubgroupReport>,
    pub jets: Vec<JetJson>,
    pub checks: Vec<CheckJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub input: String,
    pub word: String,
    pub k: usize,
    pub tau: PolyJson,
    pub roots: RootsJson,
    pub verdict: VerdictJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deep: Option<DeepJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerKJson {
    pub k: usize,
    pub root_outside_omega: usize,
    pub multiple_root: usize,
    pub deferred: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordLineJson {
    pub word: String,
    pub tau: String,
    pub tag: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRootJson {
    pub word: String,
    pub root: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub k_max: usize,
    pub total: usize,
    pub root_outside_omega: usize,
    pub multiple_root: usize,
    pub deferred: usize,
    pub per_k: Vec<PerKJson>,
    pub multiple_root_witnesses: Vec<WitnessRootJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub words: Vec<WordLineJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lemma2Report {
    pub checks: Vec<CheckJson>,
    /// Exact values that hold regardless of the asserted checks.
    pub observations: Vec<CheckJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomologyJson {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverRowJson {
    pub n: u64,
    pub k: HomologyJson,
    pub l: HomologyJson,
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentJson {
    pub generator: String,
    pub u: i64,
    pub v: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverReport {
    pub generators: usize,
    pub relators: usize,
    pub squared_relators: usize,
    pub assignment_source: String,
    pub assignment: Vec<AssignmentJson>,
    pub rows: Vec<CoverRowJson>,
    pub h1_grows: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JetsReport {
    pub word: String,
    pub samples: usize,
    pub jets: Vec<JetJson>,
    pub checks: Vec<CheckJson>,
}
