//! Machine-readable reports. Field order and list order are fixed, so equal
//! results serialize to identical bytes.

use serde::{Deserialize, Serialize};

use super::schema::AmalgamSpec;
use crate::budget::Budgets;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub budgets: Budgets,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "kebab-case")]
pub enum Payload {
    Validate(ValidateReport),
    Coeffs(CoeffsReport),
    H0(H0Report),
    H1(H1Report),
    Classify(H1Report),
    Normalize(NormalizeReport),
    IsoCheck(IsoCheckReport),
    Goldschmidt(GoldschmidtReport),
    Oracle(OracleReport),
}

impl Payload {
    pub fn command(&self) -> &'static str {
        match self {
            Payload::Validate(_) => "validate",
            Payload::Coeffs(_) => "coeffs",
            Payload::H0(_) => "h0",
            Payload::H1(_) => "h1",
            Payload::Classify(_) => "classify",
            Payload::Normalize(_) => "normalize",
            Payload::IsoCheck(_) => "iso-check",
            Payload::Goldschmidt(_) => "goldschmidt",
            Payload::Oracle(_) => "oracle",
        }
    }
}

/// One value per simplex: an automorphism, an element map, or a twist, each
/// written as the image list of the simplex group's elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Entry {
    pub simplex: String,
    pub map: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexInfo {
    pub simplex: String,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub vertices: u32,
    pub dimension: usize,
    pub simplices: Vec<SimplexInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaInfo {
    pub face: String,
    pub coface: String,
    pub injective: bool,
    pub surjective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffsReport {
    /// `|A_σ|` per simplex.
    pub automorphisms: Vec<SimplexInfo>,
    pub alphas: Vec<AlphaInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Report {
    pub order: usize,
    pub elements: Vec<Vec<Entry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub base_point: bool,
    /// Number of cocycles (normalized amalgams) in the class.
    pub orbit_size: usize,
    /// Automorphism per edge of the least cocycle by index.
    pub cocycle: Vec<Entry>,
    /// Least edge twists over the class, comparable with oracle reports.
    pub canonical_twists: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representative: Option<AmalgamSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotChecks {
    pub seed: u64,
    pub samples: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Report {
    pub cocycles: usize,
    pub count: usize,
    pub classes: Vec<ClassReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_checks: Option<SpotChecks>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizeReport {
    pub already_normalized: bool,
    pub normalized: AmalgamSpec,
    pub cocycle: Vec<Entry>,
    pub isomorphism: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCheckReport {
    pub isomorphic: bool,
    pub classes: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isomorphism: Option<Vec<Entry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCoset {
    pub size: usize,
    /// Least member, as an automorphism of the edge group.
    pub representative: Vec<u32>,
    pub class: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldschmidtReport {
    pub edge_automorphisms: usize,
    pub image1: usize,
    pub image2: usize,
    pub count: usize,
    pub h1: usize,
    pub cosets: Vec<DoubleCoset>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleClassReport {
    pub base_point: bool,
    /// Amalgams of the type in the class, normalized or not.
    pub members: usize,
    pub normalized: usize,
    pub canonical_twists: Vec<Entry>,
    pub representative: AmalgamSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub amalgams: usize,
    pub count: usize,
    pub classes: Vec<OracleClassReport>,
}
